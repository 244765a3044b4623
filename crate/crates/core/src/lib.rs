//! Exact WKB analysis of `Φ″ − (z/ε²)Φ = F(z)Φ` near a simple turning point.
//!
//! The crate is organized bottom-up: an exact series kernel, the Airy
//! reference model, general transport equations, the singular PDE kernel
//! with its contour representation, reductions of Schrödinger potentials,
//! Stokes geometry and Hardy's higher turning-point family.

// `!(x > 0.0)` style checks are kept on purpose: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity, clippy::needless_range_loop)]

pub mod airy;
pub mod borel;
pub mod branch;
pub mod coeff;
pub mod contour;
pub mod error;
pub mod hardy;
pub mod json;
pub mod pade;
pub mod pde;
pub mod poly;
pub mod prec;
pub mod quad;
pub mod reduction;
pub mod series;
pub mod stokes;
pub mod symbol;
pub mod transport;

pub use branch::Branched;
pub use coeff::{Coeff, GaussRat, MPoly};
pub use error::{Result, WkbError};
pub use series::{ex, Exp, PuiseuxSeries, TaylorSeries};
