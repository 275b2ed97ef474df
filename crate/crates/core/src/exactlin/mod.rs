//! Exact scalars and dense matrix kernels.
//!
//! Three scalar kinds are supported: arbitrary precision rationals ([`Q`]),
//! small prime fields ([`Fp`]) and the local ring of rational functions
//! regular at `t = 0` ([`LocalFn`]). Field-only kernels (rank, kernels,
//! solving) are bounded on [`Field`], so asking for the rank of a matrix
//! over the local ring is a type error rather than a runtime one.

mod fp;
mod local;
mod matrix;
mod poly;

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use fp::Fp;
pub use local::{LocalFn, Valuation};
pub use matrix::{Echelon, Matrix};
pub use poly::Poly;

/// Arbitrary precision rational numbers, always kept reduced.
pub type Q = BigRational;

/// A commutative ring with exact equality.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
{
}

/// A field. Division by zero panics.
pub trait Field: Ring + Div<Output = Self> {}

impl Field for Q {}
impl<const P: u32> Field for Fp<P> {}

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}
