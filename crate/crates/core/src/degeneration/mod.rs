//! Limits of one-parameter families of complexes.
//!
//! A family `D(t)` with entries regular at `t = 0` is a complex of free
//! modules over the local ring `Q[t]_(t)`. Such a complex splits into
//! elementary two-term blocks `R --t^a--> R` plus free summands
//! ([`dvr_decompose`]); the multiplicities of the blocks determine the
//! spectral sequence of the `t`-adically filtered complex, which is the
//! limit of `D(t)` as `t -> 0` ([`limit_complete_complex`]).
//! [`filtered_oracle`] recomputes the same page data by brute force from
//! the filtration, independently of the block decomposition.

mod dvr;
mod limit;
mod oracle;

use num_traits::{One, Zero};

use crate::complexes::{Complex, GradedDims};
use crate::exactlin::{LocalFn, Matrix, Poly, Q};
use crate::strata::RankVector;
use crate::Error;

pub use dvr::{dvr_decompose, Block, DvrDecomposition};
pub use limit::{limit_complete_complex, Limit, PageRow, PageTable};
pub use oracle::{filtered_oracle, truncation_for};

/// A one-parameter family of differentials on a fixed graded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyComplex(Complex<LocalFn>);

impl PolyComplex {
    /// Checks `D(t)_(i+1) D(t)_i = 0` as an identity of rational functions.
    pub fn new(dims: GradedDims, diffs: Vec<Matrix<LocalFn>>) -> Result<Self, Error> {
        Complex::new(dims, diffs).map(PolyComplex)
    }

    /// Builds from raw `(numerator, denominator)` pairs given row by row,
    /// naming the first entry with a pole at `t = 0`.
    pub fn from_raw(dims: GradedDims, raw: Vec<Vec<Vec<RawEntry>>>) -> Result<Self, Error> {
        let mut diffs = Vec::with_capacity(raw.len());
        for (degree, rows) in raw.into_iter().enumerate() {
            let cols = dims.as_slice().get(degree).copied().unwrap_or(0);
            let mut out = Vec::with_capacity(rows.len());
            for (row, entries) in rows.into_iter().enumerate() {
                let mut r = Vec::with_capacity(entries.len());
                for (col, e) in entries.into_iter().enumerate() {
                    r.push(LocalFn::new(e.num, e.den).map_err(|_| Error::PoleAt {
                        degree,
                        row,
                        col,
                    })?);
                }
                out.push(r);
            }
            diffs.push(Matrix::from_rows(out, cols)?);
        }
        PolyComplex::new(dims, diffs)
    }

    /// The constant family.
    pub fn constant(c: &Complex<Q>) -> Self {
        PolyComplex(c.map_entries(|x| LocalFn::constant(x.clone())))
    }

    pub fn complex(&self) -> &Complex<LocalFn> {
        &self.0
    }

    pub fn dims(&self) -> &GradedDims {
        self.0.dims()
    }

    pub fn diffs(&self) -> &[Matrix<LocalFn>] {
        self.0.diffs()
    }

    /// `D(0)`.
    pub fn at_zero(&self) -> Complex<Q> {
        self.0.map_entries(|x| x.at_zero())
    }

    /// Rank vector over the fraction field `Q(t)`.
    pub fn generic_rank_vector(&self) -> RankVector {
        let r = self.diffs().iter().map(|d| d.generic_rank()).collect();
        RankVector::new(self.dims().clone(), r).expect("generic ranks of a complex lie in R")
    }

    /// The family `D(inner(t))`; `inner` must vanish at 0.
    pub fn reparametrize(&self, inner: &Poly) -> Self {
        PolyComplex(self.0.map_entries(|x| x.substitute(inner)))
    }

    /// `g0 D(t) g0^(-1)` for a constant automorphism given with its inverse.
    pub fn conjugate_constant(&self, g: &[Matrix<Q>], g_inv: &[Matrix<Q>]) -> Result<Self, Error> {
        let lift = |ms: &[Matrix<Q>]| {
            crate::complexes::GradedMap::new(0, ms.iter().map(Matrix::from_constant).collect())
        };
        self.0.conjugate(&lift(g), &lift(g_inv)).map(PolyComplex)
    }

    /// Upper bound for the exponents of the elementary blocks: after
    /// clearing denominators, every `r x r` minor of `D_i` has degree at
    /// most `r * deg`, and the exponents in degree `i` sum to the valuation
    /// of the gcd of those minors.
    pub fn exponent_bound(&self) -> usize {
        let ranks = self.generic_rank_vector();
        self.diffs()
            .iter()
            .zip(ranks.as_slice())
            .map(|(d, &r)| r * cleared_degree(d))
            .max()
            .unwrap_or(0)
    }

    /// A truncation order for [`filtered_oracle`] large enough for every
    /// family with this exponent bound.
    pub fn suggested_truncation(&self) -> usize {
        oracle::truncation_for(self.exponent_bound())
    }
}

/// One entry of a family before validation: `num(t)/den(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEntry {
    pub num: Poly,
    pub den: Poly,
}

fn cleared_degree(d: &Matrix<LocalFn>) -> usize {
    // Common denominator over the rational coefficients is irrelevant for
    // degrees; clear the polynomial denominators only.
    let mut common = Poly::one();
    for e in d.entries() {
        let g = Poly::gcd(&common, e.den());
        let (cofactor, _) = e.den().div_rem(&g);
        common = &common * &cofactor;
    }
    d.entries()
        .iter()
        .filter(|e| !e.is_zero())
        .map(|e| {
            let (mult, _) = common.div_rem(e.den());
            (e.num() * &mult).degree().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}
