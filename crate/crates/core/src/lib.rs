//! Exact computations with varieties of complexes.
//!
//! A differential `D` on a finite graded vector space `V = V^0 + ... + V^m`
//! is a family of maps `D_i: V^i -> V^(i+1)` with `D_(i+1) D_i = 0`. This
//! crate computes rank vectors and the poset of strata they label, tangent
//! and homotopy spaces at a point, and the limit of a one-parameter family
//! `D(t)` as `t -> 0`, presented as a reduced spectral sequence together
//! with the chain of cumulative rank vectors that labels its boundary
//! stratum.

pub mod complexes;
pub mod degeneration;
mod error;
pub mod exactlin;
pub mod spectral;
pub mod strata;
pub mod verify;

pub use complexes::{Complex, GradedDims, GradedMap};
pub use error::Error;
pub use exactlin::{Field, Fp, LocalFn, Matrix, Poly, Ring, Valuation, Q};
pub use strata::{Chain, RankVector};

pub type Result<T, E = Error> = std::result::Result<T, E>;
