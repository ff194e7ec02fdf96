//! Exact-arithmetic machinery for finite-dimensional Hom-Poisson algebras:
//! axiom checkers that return full residual tensors, the constructive
//! theorems (semidirect products, matched pairs, Manin triples, coboundary
//! bialgebras, Drinfeld doubles, post-Hom-Poisson splittings) and a grid
//! solver for Yang-Baxter and Rota-Baxter equations.

pub mod algebra;
pub mod bialgebra;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod legs;
pub mod linear;
pub mod matched;
pub mod modules;
pub mod post;
pub mod rational;
pub mod residual;
pub mod solver;
pub mod tensor;

pub use error::{Error, Result};
pub use rational::Rational;
