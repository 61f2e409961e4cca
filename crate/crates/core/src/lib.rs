//! Bipartite entanglement measures for small qubit registers and numerical
//! checks of the monogamy relations they obey.
//!
//! The numerical core ([`linalg`], [`states`], [`measures`], [`monogamy`]) is
//! generic over the real scalar type through [`Scalar`], which is implemented
//! for `f32` and `f64`. The aliases at the crate root fix the scalar to `f64`,
//! which is what the [`harness`] and the `entmono` binary use.
//!
//! Qubit ordering: the leftmost symbol of a ket is the most significant bit of
//! the computational-basis index, so `|100>` on three qubits is index 4.

// Input checks are written `!(x >= lo)` so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod linalg;
pub mod measures;
pub mod monogamy;
mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Complex64 = num_complex::Complex<f64>;

pub type Matrix = linalg::ComplexMatrix<f64>;
pub type Pure = states::PureState<f64>;
pub type Density = states::DensityMatrix<f64>;
pub type Schmidt = states::SchmidtParams<f64>;
pub type Profile = monogamy::PairwiseProfile<f64>;
pub type Bound = monogamy::BoundKind<f64>;
pub type Report = monogamy::BoundReport<f64>;
pub type Sweep = monogamy::AlphaSweep<f64>;

/// Largest register the Monte Carlo campaigns accept.
pub const MAX_CAMPAIGN_QUBITS: usize = 8;
