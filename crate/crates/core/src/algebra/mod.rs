//! Exact rational scalars, matrices, truncated series and polynomials.

pub mod chern;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod series;

pub use chern::{ChernVector, chern_from_character};
pub use matrix::{QMatrix, Rref, Solve, kernel_basis, mat_rref, solve_exact};
pub use poly::{Monomial, Sym, TruncatedPoly, mono};
pub use rational::Rational;
pub use series::{SeriesKind, TruncatedSeries, series_inverse, series_mul, series_named};
