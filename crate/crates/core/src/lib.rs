//! Zeta functions of Artin-Schreier curves `y^2 + y = x R(x)` over finite
//! fields of characteristic two, where `R` is an additive polynomial.
//!
//! The L-polynomial is computed from the classification of the trace
//! quadratic forms `Tr(x R(x))` over a handful of extensions, without
//! enumerating points.

pub mod arith;
pub mod bitmatrix;
pub mod error;
pub mod fieldtower;
pub mod lfun;
pub mod linearized;
pub mod linsolve;
pub mod quadform;
pub mod suzuki;
pub mod zsqrt2;

pub use error::{Error, Result};
pub use zsqrt2::{Poly, Sqrt2Ext};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Z[√2].
pub type ZSqrt2 = Sqrt2Ext<BigInt>;
/// Q(√2).
pub type QSqrt2 = Sqrt2Ext<BigRational>;
pub type PolyZSqrt2 = Poly<ZSqrt2>;
pub type IntPoly = Poly<BigInt>;
