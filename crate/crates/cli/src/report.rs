use std::io::{self, Write};

use hompoisson::residual::{for_each_index, Residual, ResidualSet};
use hompoisson::solver::SearchReport;
use serde_json::json;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Table,
    JsonLines,
}

fn witness_str(r: &Residual) -> String {
    r.witness.as_ref().map(|w| format!("{w:?}")).unwrap_or_default()
}

pub fn battery(out: &mut impl Write, fmt: Format, res: &[Residual]) -> io::Result<()> {
    match fmt {
        Format::Table => {
            let width = res.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
            writeln!(out, "{:width$}  status  nonzero  witness  value", "label")?;
            for r in res {
                let status = if r.is_zero() { "ok" } else { "FAIL" };
                let value = r.witness_value().map(ToString::to_string).unwrap_or_default();
                writeln!(out, "{:width$}  {status:6}  {:7}  {}  {value}", r.label, r.nonzero_count(), witness_str(r))?;
            }
            let failing = res.failing_labels();
            if failing.is_empty() {
                writeln!(out, "PASS: all {} residuals vanish", res.len())
            } else {
                writeln!(out, "FAIL: {} of {} residuals nonzero: {}", failing.len(), res.len(), failing.join(", "))
            }
        }
        Format::JsonLines => {
            for r in res {
                let line = json!({
                    "label": r.label,
                    "zero": r.is_zero(),
                    "nonzero": r.nonzero_count(),
                    "shape": r.shape,
                    "witness": r.witness,
                    "value": r.witness_value(),
                });
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{}", json!({ "pass": res.passes(), "failing": res.failing_labels() }))
        }
    }
}

/// Every nonzero entry of one residual tensor.
pub fn tensor(out: &mut impl Write, fmt: Format, r: &Residual) -> io::Result<()> {
    match fmt {
        Format::Table => {
            writeln!(out, "{} shape {:?}, {} nonzero", r.label, r.shape, r.nonzero_count())?;
            let mut flat = 0;
            let mut result = Ok(());
            for_each_index(&r.shape, |idx| {
                let v = &r.data[flat];
                flat += 1;
                if !v.is_zero() && result.is_ok() {
                    result = writeln!(out, "  {idx:?}  {v}");
                }
            });
            result
        }
        Format::JsonLines => writeln!(out, "{}", serde_json::to_string(r).expect("residuals serialize")),
    }
}

pub fn search(out: &mut impl Write, fmt: Format, rep: &SearchReport) -> io::Result<()> {
    match fmt {
        Format::Table => {
            writeln!(out, "target {}: {} of {} grid points solve", rep.target.name(), rep.solutions.len(), rep.points)?;
            for s in &rep.solutions {
                let rows: Vec<String> = s
                    .coefficients
                    .chunks(s.cols.max(1))
                    .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                writeln!(out, "{:?}  [{}]", s.grid_index, rows.join("; "))?;
            }
            Ok(())
        }
        Format::JsonLines => {
            for s in &rep.solutions {
                let certs: Vec<&str> = s.certificate.iter().map(|r| r.label.as_str()).collect();
                let line = json!({
                    "grid_index": s.grid_index,
                    "rows": s.rows,
                    "cols": s.cols,
                    "coefficients": s.coefficients,
                    "certificate": certs,
                });
                writeln!(out, "{line}")?;
            }
            let summary = json!({ "target": rep.target, "points": rep.points.to_string(), "solutions": rep.solutions.len() });
            writeln!(out, "{summary}")
        }
    }
}
