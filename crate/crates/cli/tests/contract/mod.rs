//! Driving the `hompoisson` binary from tests.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_hompoisson")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

pub fn fixture(dir: &Path, name: &str, file: &str) -> PathBuf {
    let p = dir.join(file);
    let r = run(&["fixture", name, "--out", path_str(&p)]);
    assert_eq!(r.code, 0, "exporting {name}: {}", r.stderr);
    p
}

/// A dim-2 bracket with `[e1,e2] = e2` and `[e2,e1] = e2`.
pub const BROKEN_LIE: &str = r#"{
  "schema": "hompoisson/1",
  "dim": 2,
  "alpha": [["1", "0"], ["0", "1"]],
  "tensors": {
    "bracket": [
      [["0", "0"], ["0", "1"]],
      [["0", "1"], ["0", "0"]]
    ]
  }
}
"#;

fn expect(what: &str, r: &Run, code: i32) -> Result<(), String> {
    if r.code != code {
        return Err(format!("{what}: exit {} (want {code}); stdout {:?}; stderr {:?}", r.code, r.stdout, r.stderr));
    }
    Ok(())
}

/// The documented exit codes, construct→check round trips and named shape errors.
pub fn contract(dir: &Path) -> Result<String, String> {
    let abelian = fixture(dir, "abelian2", "abelian2.json");
    expect("check abelian2 --as hom-poisson", &run(&["check", path_str(&abelian), "--as", "hom-poisson"]), 0)?;

    let mut doubles = 0;
    for name in ["line/trivial", "nonabelian-plane/trivial", "nonabelian-plane/skew", "unital3/trivial"] {
        let input = fixture(dir, name, &format!("{}.json", name.replace('/', "-")));
        let pd = dir.join(format!("pd-{}.json", name.replace('/', "-")));
        expect("construct double", &run(&["construct", "double", "--in", path_str(&input), "--out", path_str(&pd)]), 0)?;
        expect(&format!("check double of {name}"), &run(&["check", path_str(&pd), "--as", "bialgebra"]), 0)?;
        doubles += 1;
    }

    let broken = dir.join("broken.json");
    fs::write(&broken, BROKEN_LIE).map_err(|e| e.to_string())?;
    let r = run(&["check", path_str(&broken), "--as", "hom-lie"]);
    expect("check broken --as hom-lie", &r, 1)?;
    let line = r.stdout.lines().find(|l| l.starts_with("antisymmetry")).ok_or("no antisymmetry row in report")?;
    if !line.contains("FAIL") || !line.contains('[') {
        return Err(format!("antisymmetry row lacks failure witness: {line}"));
    }

    let plane = fixture(dir, "nonabelian-plane", "plane.json");
    let mut round_trips = 0;
    for (kind, species) in [("standard-manin", "manin-triple"), ("coboundary", "bialgebra")] {
        let src = if kind == "coboundary" { fixture(dir, "nonabelian-plane/skew", "skew.json") } else { fixture(dir, "line/trivial", "lt.json") };
        let out = dir.join(format!("{kind}.json"));
        expect(kind, &run(&["construct", kind, "--in", path_str(&src), "--out", path_str(&out)]), 0)?;
        expect(&format!("check {kind}"), &run(&["check", path_str(&out), "--as", species]), 0)?;
        round_trips += 1;
    }

    let text = fs::read_to_string(&plane).map_err(|e| e.to_string())?;
    let corruptions = [
        ("alpha", text.replacen("[\"1\", \"0\"]", "[\"1\", \"0\", \"0\"]", 1)),
        ("mul", text.replacen("\"mul\": [", "\"mul\": [[[\"0\"]], ", 1)),
        ("bracket", text.replacen("\"bracket\": [\n      [\n        [\"0\", \"0\"]", "\"bracket\": [\n      [\n        [\"0\", \"x/y\"]", 1)),
    ];
    for (role, bad) in &corruptions {
        if bad == &text {
            return Err(format!("corruption of {role} did not apply"));
        }
        let p = dir.join(format!("bad-{role}.json"));
        fs::write(&p, bad).map_err(|e| e.to_string())?;
        let r = run(&["check", path_str(&p), "--as", "hom-poisson"]);
        expect(&format!("corrupted {role}"), &r, 2)?;
        if !r.stderr.contains(&format!("`{role}`")) {
            return Err(format!("corrupted {role}: message does not name it: {}", r.stderr.trim()));
        }
    }
    Ok(format!(
        "3 documented examples, {doubles} double round trips, {round_trips} other construct→check round trips, {} corruptions exit 2 naming the tensor",
        corruptions.len()
    ))
}
