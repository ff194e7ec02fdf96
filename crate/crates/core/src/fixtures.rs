//! Small named algebras used by the test suites, the solver examples and
//! the CLI `fixture` command.

use crate::algebra::HomPoissonAlgebra;
use crate::bialgebra::{coboundary_bialgebra, HomPoissonBialgebra};
use crate::linear::LinearMap;
use crate::rational::Rational;
use crate::tensor::{RTensor, StructureTensor};

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Bracket with `[e_i, e_j] = v` and `[e_j, e_i] = −v` for each listed `(i, j, k, c)`.
fn skew(n: usize, entries: &[(usize, usize, usize, i64)]) -> StructureTensor {
    let mut t = StructureTensor::zeros(n);
    for &(i, j, k, c) in entries {
        t.set(i, j, k, int(c));
        t.set(j, i, k, int(-c));
    }
    t
}

/// Product with `e_i∘e_j = e_j∘e_i = c e_k` for each listed `(i, j, k, c)`.
fn symmetric(n: usize, entries: &[(usize, usize, usize, i64)]) -> StructureTensor {
    let mut t = StructureTensor::zeros(n);
    for &(i, j, k, c) in entries {
        t.set(i, j, k, int(c));
        t.set(j, i, k, int(c));
    }
    t
}

/// Both operations zero.
pub fn abelian(n: usize) -> HomPoissonAlgebra {
    HomPoissonAlgebra::zero(n)
}

/// One dimension, `e∘e = e`.
pub fn line() -> HomPoissonAlgebra {
    HomPoissonAlgebra::new(LinearMap::identity(1), symmetric(1, &[(0, 0, 0, 1)]), StructureTensor::zeros(1))
}

/// `[e1, e2] = e2`, zero product.
pub fn nonabelian_plane() -> HomPoissonAlgebra {
    HomPoissonAlgebra::new(LinearMap::identity(2), StructureTensor::zeros(2), skew(2, &[(0, 1, 1, 1)]))
}

/// Unital: `e1` is the unit of `∘`, `[e2, e3] = e2`.
pub fn unital3() -> HomPoissonAlgebra {
    let mul = symmetric(3, &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1)]);
    HomPoissonAlgebra::new(LinearMap::identity(3), mul, skew(3, &[(1, 2, 1, 1)]))
}

/// Nilpotent: `e1∘e1 = e3`, `[e1, e2] = e3`.
pub fn nilpotent3() -> HomPoissonAlgebra {
    HomPoissonAlgebra::new(LinearMap::identity(3), symmetric(3, &[(0, 0, 2, 1)]), skew(3, &[(0, 1, 2, 1)]))
}

/// Yau twist of [`unital3`] by the involutive automorphism `diag(1, −1, 1)`.
pub fn twisted_unital3() -> HomPoissonAlgebra {
    let alpha = LinearMap::diag(&[int(1), int(-1), int(1)]);
    unital3().yau_twist(&alpha).expect("twist has matching dimension")
}

/// Yau twist of [`nonabelian_plane`] by `diag(1, 2)`, a non-involutive twist.
pub fn twisted_plane() -> HomPoissonAlgebra {
    nonabelian_plane().yau_twist(&LinearMap::diag(&[int(1), int(2)])).expect("twist has matching dimension")
}

/// Every Hom-Poisson algebra fixture, by name.
pub fn algebras() -> Vec<(&'static str, HomPoissonAlgebra)> {
    vec![
        ("abelian2", abelian(2)),
        ("line", line()),
        ("nonabelian-plane", nonabelian_plane()),
        ("unital3", unital3()),
        ("nilpotent3", nilpotent3()),
        ("twisted-unital3", twisted_unital3()),
        ("twisted-plane", twisted_plane()),
    ]
}

/// The algebra fixtures with `α = id`.
pub fn untwisted_algebras() -> Vec<(&'static str, HomPoissonAlgebra)> {
    algebras().into_iter().filter(|(_, p)| p.alpha == LinearMap::identity(p.dim())).collect()
}

/// `e1⊗e2 − e2⊗e1`.
pub fn skew_plane_r() -> RTensor {
    RTensor::from_ints(&[&[0, 1], &[-1, 0]])
}

/// Bialgebra fixtures with `α = id`: the zero coalgebra on every untwisted
/// algebra and the coboundary structure of [`skew_plane_r`].
pub fn bialgebras() -> Vec<(String, HomPoissonBialgebra)> {
    let mut out: Vec<(String, HomPoissonBialgebra)> = untwisted_algebras()
        .into_iter()
        .map(|(name, p)| (format!("{name}/trivial"), HomPoissonBialgebra::trivial(p)))
        .collect();
    let cob = coboundary_bialgebra(&nonabelian_plane(), &skew_plane_r()).expect("r is α-invariant");
    out.push(("nonabelian-plane/skew".to_string(), cob));
    out
}

pub fn algebra_by_name(name: &str) -> Option<HomPoissonAlgebra> {
    algebras().into_iter().find(|(n, _)| *n == name).map(|(_, p)| p)
}

pub fn bialgebra_by_name(name: &str) -> Option<HomPoissonBialgebra> {
    bialgebras().into_iter().find(|(n, _)| n == name).map(|(_, b)| b)
}
