//! Single-graded spectral sequences and complete complexes.
//!
//! Each page after the first is the cohomology of the previous one in the
//! canonical basis produced by [`Complex::cohomology`], so pages are literal
//! subquotients and two spectral sequences can be compared entry by entry.

use std::fmt;

use crate::complexes::{CohomologyData, Complex, GradedDims};
use crate::exactlin::{Field, Matrix};
use crate::strata::{Chain, RankVector};
use crate::Error;

/// One page `(E_v, D^v)`. For `v > 0`, `basis` expresses `E_v` as the
/// cohomology of the previous page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page<F> {
    pub complex: Complex<F>,
    pub basis: Option<CohomologyData<F>>,
}

impl<F: Field> Page<F> {
    pub fn dims(&self) -> &GradedDims {
        self.complex.dims()
    }
}

/// Pages `E_0 .. E_(k+1)`; the last page carries the zero differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequence<F> {
    pages: Vec<Page<F>>,
}

/// A condition of reducedness that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `D^v` vanishes for an interior page `v >= 1`.
    ZeroDifferential(usize),
    /// The last page admits a nonzero differential.
    FinalPageNotSparse,
    /// Strong reducedness needs `D^0 != 0`.
    ZeroInitialDifferential,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroDifferential(v) => write!(f, "D^{v} is zero"),
            Violation::FinalPageNotSparse => write!(f, "final page is not sparse"),
            Violation::ZeroInitialDifferential => write!(f, "D^0 is zero"),
        }
    }
}

impl<F: Field> SpectralSequence<F> {
    /// Builds the sequence from its differentials `D^0 .. D^k`. Each
    /// `D^(v+1)` must live on the canonical cohomology of `D^v`; the final
    /// page is appended with the zero differential.
    pub fn new(differentials: Vec<Complex<F>>) -> Result<Self, Error> {
        if differentials.is_empty() {
            return Err(Error::MalformedSpectralSequence("no pages".into()));
        }
        let mut pages: Vec<Page<F>> = Vec::with_capacity(differentials.len() + 1);
        let mut basis = None;
        for (v, d) in differentials.into_iter().enumerate() {
            if let Some(coh) = &basis {
                let want = CohomologyData::dims(coh);
                if d.dims() != &want {
                    return Err(Error::MalformedSpectralSequence(format!(
                        "page {v} has dims {}, cohomology of page {} has {}",
                        d.dims(),
                        v - 1,
                        want
                    )));
                }
            }
            let next = d.cohomology();
            pages.push(Page {
                complex: d,
                basis: basis.take(),
            });
            basis = Some(next);
        }
        let last = basis.expect("at least one page");
        pages.push(Page {
            complex: Complex::zero(last.dims()),
            basis: Some(last),
        });
        Ok(SpectralSequence { pages })
    }

    pub fn pages(&self) -> &[Page<F>] {
        &self.pages
    }

    /// Index `k` of the last page with a (possibly) nonzero differential.
    pub fn k(&self) -> usize {
        self.pages.len() - 2
    }

    pub fn differential(&self, v: usize) -> &Complex<F> {
        &self.pages[v].complex
    }

    /// The differentials `D^0 .. D^k` (without the final zero page).
    pub fn differentials(&self) -> impl Iterator<Item = &Complex<F>> {
        self.pages[..self.pages.len() - 1]
            .iter()
            .map(|p| &p.complex)
    }

    pub fn e0(&self) -> &GradedDims {
        self.pages[0].dims()
    }

    pub fn final_page(&self) -> &Page<F> {
        self.pages.last().unwrap()
    }

    pub fn violations(&self, strongly: bool) -> Vec<Violation> {
        let mut out = Vec::new();
        if strongly && self.pages[0].complex.is_zero() {
            out.push(Violation::ZeroInitialDifferential);
        }
        for v in 1..=self.k() {
            if self.pages[v].complex.is_zero() {
                out.push(Violation::ZeroDifferential(v));
            }
        }
        if !self.final_page().dims().is_sparse() {
            out.push(Violation::FinalPageNotSparse);
        }
        out
    }

    pub fn is_reduced(&self, strongly: bool) -> bool {
        self.violations(strongly).is_empty()
    }

    /// Cumulative rank vectors `s^(1) < ... < s^(k)` of `D^0, D^0 + D^1,
    /// ...`, with the total over all differentials as terminal element.
    pub fn stratum_label(&self) -> Result<Chain, Error> {
        let bad = self.violations(false);
        if !bad.is_empty() {
            let msg: Vec<String> = bad.iter().map(|v| v.to_string()).collect();
            return Err(Error::NotReduced(msg.join("; ")));
        }
        let e0 = self.e0().clone();
        let mut acc = vec![0; e0.m()];
        let mut cumulative = Vec::with_capacity(self.k() + 1);
        for d in self.differentials() {
            for (a, r) in acc.iter_mut().zip(d.rank_vector().as_slice()) {
                *a += r;
            }
            cumulative.push(RankVector::new(e0.clone(), acc.clone())?);
        }
        let terminal = cumulative.pop();
        Chain::new(cumulative, terminal)
    }

    /// Rescales the differentials so that each has first nonzero entry 1
    /// (scanning degrees upward, each matrix row-major). `D^0` is rescaled
    /// only in the projective variant.
    pub fn normalize(&self, variant: Variant) -> Result<CompleteComplex<F>, Error> {
        let strongly = variant == Variant::Projective;
        if strongly && self.pages[0].complex.is_zero() {
            return Err(Error::VariantMismatch);
        }
        let bad = self.violations(strongly);
        if !bad.is_empty() {
            let msg: Vec<String> = bad.iter().map(|v| v.to_string()).collect();
            return Err(Error::NotReduced(msg.join("; ")));
        }
        let first = if strongly { 0 } else { 1 };
        let mut pages = self.pages.clone();
        for page in pages.iter_mut().take(self.k() + 1).skip(first) {
            let lead = page
                .complex
                .diffs()
                .iter()
                .find_map(|d| d.first_nonzero().cloned());
            if let Some(lead) = lead {
                let inv = F::one() / lead;
                let diffs: Vec<Matrix<F>> =
                    page.complex.diffs().iter().map(|d| d.scale(&inv)).collect();
                page.complex = Complex::new(page.complex.dims().clone(), diffs)?;
            }
        }
        Ok(CompleteComplex {
            ss: SpectralSequence { pages },
            variant,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Affine,
    Projective,
}

/// A reduced spectral sequence with normalized differentials, standing for
/// its class modulo rescaling of each differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteComplex<F> {
    ss: SpectralSequence<F>,
    variant: Variant,
}

impl<F: Field> CompleteComplex<F> {
    pub fn spectral_sequence(&self) -> &SpectralSequence<F> {
        &self.ss
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn stratum_label(&self) -> Chain {
        self.ss
            .stratum_label()
            .expect("complete complexes are reduced")
    }

    /// Equality of classes; both sides are already normalized.
    pub fn equals(&self, other: &CompleteComplex<F>) -> bool {
        self == other
    }
}

/// The spectral sequence whose every page carries the canonical
/// representative of the successive difference of the chain's cumulative
/// rank vectors.
pub fn canonical_ss_from_chain<F: Field>(
    label: &Chain,
    variant: Variant,
) -> Result<CompleteComplex<F>, Error> {
    let Some(first) = label.first() else {
        return Err(Error::InvalidChain(
            "a label needs a terminal element".into(),
        ));
    };
    if label.terminal().is_none() {
        return Err(Error::InvalidChain(
            "a label needs a terminal element".into(),
        ));
    }
    let mut prev = RankVector::zero(first.dims().clone());
    let mut diffs = Vec::new();
    for s in label.cumulative() {
        let rel = s.relative_to(&prev)?;
        diffs.push(rel.canonical_representative::<F>());
        prev = s.clone();
    }
    SpectralSequence::new(diffs)?.normalize(variant)
}
