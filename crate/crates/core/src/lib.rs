//! Exact-arithmetic verification of intersection-theoretic class computations
//! on moduli spaces of pointed curves.

pub mod algebra;
pub mod data;
pub mod enumerative;
pub mod error;
pub mod expr;
pub mod grr;
pub mod rings;
pub mod surfaces;
pub mod verify;

pub use error::{Error, Result};
