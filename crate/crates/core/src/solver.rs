//! Exhaustive grid search for Yang-Baxter solutions, Rota-Baxter and
//! O-operators, and coboundary matched pairs.
//!
//! The unknown is an `r` (or `R`) whose entries, in row-major order, each
//! range over a finite list of rationals. Every grid point is evaluated
//! exactly; points whose whole residual battery vanishes are reported in
//! lexicographic order of their grid coordinates.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_hom_poisson, HomPoissonAlgebra};
use crate::bialgebra::{chybe_residual, coboundary_bialgebra, haybe_residual, is_alpha_invariant, HaybeVariant};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::format::StructureFile;
use crate::linear::LinearMap;
use crate::matched::{check_matched_pair_poisson, MatchedPairPoisson};
use crate::post::{check_module_hom_poisson, check_o_operator, check_rota_baxter, ModuleHomPoisson, OOperator};
use crate::rational::Rational;
use crate::residual::{prefix_all, Residual, ResidualSet};
use crate::tensor::RTensor;

pub const SEARCH_SCHEMA: &str = "hompoisson-search/1";
pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Chybe,
    Haybe,
    Hpybe,
    RotaBaxter,
    OOperator,
    MatchedPair,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Chybe => "chybe",
            Target::Haybe => "haybe",
            Target::Hpybe => "hpybe",
            Target::RotaBaxter => "rota-baxter",
            Target::OOperator => "o-operator",
            Target::MatchedPair => "matched-pair",
        }
    }
}

/// Values each coefficient may take.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Grid {
    Shared(Vec<Rational>),
    PerCoefficient(Vec<Vec<Rational>>),
}

impl Grid {
    pub fn ints(values: &[i64]) -> Self {
        Grid::Shared(values.iter().map(|&v| Rational::from_int(v)).collect())
    }

    fn axes(&self, coeffs: usize) -> Result<Vec<Vec<Rational>>> {
        let axes = match self {
            Grid::Shared(v) => vec![v.clone(); coeffs],
            Grid::PerCoefficient(v) => {
                if v.len() != coeffs {
                    return Err(Error::InvalidSpec(format!("grid lists {} coefficients, expected {coeffs}", v.len())));
                }
                v.clone()
            }
        };
        if axes.iter().any(Vec::is_empty) {
            return Err(Error::InvalidSpec("grid has an empty value list".into()));
        }
        Ok(axes)
    }
}

/// What is being searched over.
#[derive(Clone, Debug)]
pub enum SearchFixture {
    Algebra(HomPoissonAlgebra),
    Module(ModuleHomPoisson),
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub target: Target,
    pub grid: Grid,
    pub fixture: SearchFixture,
    pub weight: Option<Rational>,
    pub cap: u128,
    pub haybe_variant: HaybeVariant,
}

impl SearchSpec {
    pub fn new(target: Target, fixture: HomPoissonAlgebra, grid: Grid) -> Self {
        SearchSpec {
            target,
            grid,
            fixture: SearchFixture::Algebra(fixture),
            weight: None,
            cap: DEFAULT_CAP,
            haybe_variant: HaybeVariant::Standard,
        }
    }

    /// Reads a JSON search spec. `fixture` is a structure file path relative
    /// to the spec's directory, or `builtin:<name>` for a bundled algebra.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        SearchSpec::from_json(&text, &base)
    }

    pub fn from_json(text: &str, base: &Path) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| match e.classify() {
            serde_json::error::Category::Data => Error::InvalidSpec(e.to_string()),
            _ => Error::Parse { line: e.line(), column: e.column(), message: e.to_string() },
        })?;
        if let Some(s) = &raw.schema {
            if s != SEARCH_SCHEMA {
                return Err(Error::SchemaMismatch(format!("unsupported schema `{s}`, expected `{SEARCH_SCHEMA}`")));
            }
        }
        let parse = |s: &str| -> Result<Rational> {
            s.parse().map_err(|e| Error::BadScalar { role: "grid".into(), message: format!("`{s}`: {e}") })
        };
        let grid = match raw.grid {
            RawGrid::Shared(v) => Grid::Shared(v.iter().map(|s| parse(s)).collect::<Result<_>>()?),
            RawGrid::Per(v) => Grid::PerCoefficient(
                v.iter().map(|axis| axis.iter().map(|s| parse(s)).collect::<Result<_>>()).collect::<Result<_>>()?,
            ),
        };
        let weight = raw
            .weight
            .map(|w| w.parse().map_err(|e| Error::BadScalar { role: "weight".into(), message: format!("`{w}`: {e}") }))
            .transpose()?;
        let fixture = if let Some(name) = raw.fixture.strip_prefix("builtin:") {
            let p = fixtures::algebra_by_name(name)
                .ok_or_else(|| Error::InvalidSpec(format!("no builtin fixture `{name}`")))?;
            SearchFixture::Algebra(p)
        } else {
            let path: PathBuf = base.join(&raw.fixture);
            let file = StructureFile::load(&path)?;
            if raw.target == Target::OOperator {
                SearchFixture::Module(file.module_hom_poisson()?)
            } else {
                SearchFixture::Algebra(file.hom_poisson()?)
            }
        };
        let fixture = match (raw.target, fixture) {
            (Target::OOperator, SearchFixture::Algebra(p)) => SearchFixture::Module(ModuleHomPoisson::adjoint(&p)),
            (_, f) => f,
        };
        Ok(SearchSpec {
            target: raw.target,
            grid,
            fixture,
            weight,
            cap: raw.cap.unwrap_or(DEFAULT_CAP),
            haybe_variant: raw.haybe_variant.unwrap_or_default(),
        })
    }

    fn algebra(&self) -> &HomPoissonAlgebra {
        match &self.fixture {
            SearchFixture::Algebra(p) => p,
            SearchFixture::Module(m) => &m.base,
        }
    }

    /// Shape of the unknown: `(rows, cols)`.
    pub fn unknown_shape(&self) -> (usize, usize) {
        match &self.fixture {
            SearchFixture::Module(m) if self.target == Target::OOperator => (m.base.dim(), m.vdim()),
            _ => {
                let n = self.algebra().dim();
                (n, n)
            }
        }
    }

    fn weight(&self) -> Rational {
        self.weight.clone().unwrap_or_else(Rational::zero)
    }

    fn check_fixture(&self) -> Result<()> {
        let res = match &self.fixture {
            SearchFixture::Algebra(p) => check_hom_poisson(p)?,
            SearchFixture::Module(m) => check_module_hom_poisson(m)?,
        };
        if res.passes() {
            Ok(())
        } else {
            Err(Error::FixtureInvalid(res.failing_labels().join(", ")))
        }
    }

    /// Full residual battery at one candidate, given row-major.
    pub fn evaluate(&self, coeffs: &[Rational]) -> Result<Vec<Residual>> {
        let (rows, cols) = self.unknown_shape();
        if coeffs.len() != rows * cols {
            return Err(Error::Shape(format!("{} coefficients, expected {}", coeffs.len(), rows * cols)));
        }
        let p = self.algebra();
        let as_r = || RTensor::from_flat(rows, coeffs.to_vec());
        let as_map = || LinearMap::from_fn(rows, cols, |i, j| coeffs[i * cols + j].clone());
        match self.target {
            Target::Chybe => Ok(vec![Residual::from_tensor3("chybe", &chybe_residual(&p.lie_part(), &as_r()?)?)]),
            Target::Haybe => Ok(haybe_residual(&p.assoc_part(), &as_r()?, self.haybe_variant)?.residuals()),
            Target::Hpybe => {
                let r = as_r()?;
                let mut out = vec![Residual::from_tensor3("chybe", &chybe_residual(&p.lie_part(), &r)?)];
                out.extend(haybe_residual(&p.assoc_part(), &r, self.haybe_variant)?.residuals());
                Ok(out)
            }
            Target::RotaBaxter => check_rota_baxter(p, &as_map(), &self.weight()),
            Target::OOperator => {
                let SearchFixture::Module(m) = &self.fixture else {
                    unreachable!("o-operator specs always carry a module")
                };
                check_o_operator(&OOperator { r: as_map(), weight: self.weight(), module: m.clone() })
            }
            Target::MatchedPair => {
                let r = as_r()?;
                if !is_alpha_invariant(&p.alpha, &r) {
                    return Ok(vec![Residual::flag("alpha-invariance", false)]);
                }
                let b = coboundary_bialgebra(p, &r)?;
                let pstar = b.dual_algebra();
                let mut out = vec![Residual::flag("alpha-invariance", true)];
                out.extend(prefix_all("Pstar", check_hom_poisson(&pstar)?));
                out.extend(check_matched_pair_poisson(&MatchedPairPoisson::coadjoint(p, &pstar)?)?);
                Ok(out)
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    schema: Option<String>,
    target: Target,
    grid: RawGrid,
    fixture: String,
    weight: Option<String>,
    cap: Option<u128>,
    haybe_variant: Option<HaybeVariant>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawGrid {
    Shared(Vec<String>),
    Per(Vec<Vec<String>>),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Solution {
    /// Position of each coefficient in its value list.
    pub grid_index: Vec<usize>,
    pub rows: usize,
    pub cols: usize,
    pub coefficients: Vec<Rational>,
    /// The battery recomputed at this point; all zero.
    pub certificate: Vec<Residual>,
}

impl Solution {
    pub fn as_r(&self) -> RTensor {
        RTensor::from_flat(self.rows, self.coefficients.clone()).expect("square unknown")
    }

    pub fn as_map(&self) -> LinearMap {
        LinearMap::from_fn(self.rows, self.cols, |i, j| self.coefficients[i * self.cols + j].clone())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SearchReport {
    pub target: Target,
    pub points: u128,
    pub solutions: Vec<Solution>,
}

/// Number of grid points, saturating rather than overflowing.
pub fn grid_points(axes: &[Vec<Rational>]) -> u128 {
    axes.iter().try_fold(1u128, |acc, a| acc.checked_mul(a.len() as u128)).unwrap_or(u128::MAX)
}

fn unrank(mut flat: u128, axes: &[Vec<Rational>]) -> Vec<usize> {
    let mut idx = vec![0; axes.len()];
    for (slot, axis) in idx.iter_mut().zip(axes).rev() {
        let len = axis.len() as u128;
        *slot = (flat % len) as usize;
        flat /= len;
    }
    idx
}

pub fn solve(spec: &SearchSpec) -> Result<SearchReport> {
    spec.check_fixture()?;
    let (rows, cols) = spec.unknown_shape();
    let axes = spec.grid.axes(rows * cols)?;
    let points = grid_points(&axes);
    if points > spec.cap {
        return Err(Error::GridTooLarge { points, cap: spec.cap });
    }
    // Indexed parallel iterators keep their order through `collect`.
    let found: Vec<Option<Solution>> = (0..points as u64)
        .into_par_iter()
        .map(|flat| {
            let grid_index = unrank(flat as u128, &axes);
            let coefficients: Vec<Rational> = grid_index.iter().zip(&axes).map(|(&i, a)| a[i].clone()).collect();
            let certificate = spec.evaluate(&coefficients)?;
            Ok(certificate.passes().then_some(Solution { grid_index, rows, cols, coefficients, certificate }))
        })
        .collect::<Result<_>>()?;
    Ok(SearchReport { target: spec.target, points, solutions: found.into_iter().flatten().collect() })
}
