use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::dvr::{dvr_decompose, DvrDecomposition};
use super::PolyComplex;
use crate::complexes::{Complex, GradedDims};
use crate::exactlin::{Matrix, Q};
use crate::spectral::{CompleteComplex, SpectralSequence, Variant};
use crate::strata::Chain;
use crate::Error;

/// Dimensions of one page and ranks of its differential, per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageRow {
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
}

impl PageRow {
    fn is_final(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// Dimensions of the following page.
    fn next_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| {
                let out = self.ranks.get(i).copied().unwrap_or(0);
                let inc = if i > 0 { self.ranks[i - 1] } else { 0 };
                self.dims[i] - out - inc
            })
            .collect()
    }
}

/// Page data indexed by the filtration step `r = 0, 1, ...`, including
/// pages whose differential vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageTable {
    pub rows: Vec<PageRow>,
}

impl PageTable {
    /// Canonical form for comparison: ends with exactly one page whose
    /// differential is zero.
    pub fn normalized(&self) -> PageTable {
        let mut rows = self.rows.clone();
        if let Some(last) = rows.last() {
            if !last.is_final() {
                let dims = last.next_dims();
                let ranks = vec![0; last.ranks.len()];
                rows.push(PageRow { dims, ranks });
            }
        }
        while rows.len() >= 2 && rows[rows.len() - 1].is_final() && rows[rows.len() - 2].is_final()
        {
            rows.pop();
        }
        PageTable { rows }
    }

    pub fn agrees_with(&self, other: &PageTable) -> bool {
        self.normalized() == other.normalized()
    }
}

impl std::fmt::Display for PageTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            writeln!(f, "E{r}: dims {:?} ranks {:?}", row.dims, row.ranks)?;
        }
        Ok(())
    }
}

/// The limit of a family as `t -> 0`.
#[derive(Clone, Debug)]
pub struct Limit {
    /// Pages with nonzero differential only (besides `D^0`).
    pub ss: SpectralSequence<Q>,
    pub label: Option<Chain>,
    pub reduced: bool,
    /// Uncompressed page data, row `a` for every exponent `a`.
    pub table: PageTable,
    pub decomposition: DvrDecomposition,
}

impl Limit {
    /// The point of the compactification, when the limit is reduced.
    pub fn complete_complex(&self, variant: Variant) -> Result<CompleteComplex<Q>, Error> {
        self.ss.normalize(variant)
    }
}

pub fn limit_complete_complex(pc: &PolyComplex) -> Limit {
    let dec = dvr_decompose(pc);
    let n = pc.dims().as_slice().to_vec();
    let m = n.len() - 1;
    let g0: Vec<Matrix<Q>> = dec.g.iter().map(|x| x.at_zero()).collect();
    let g0_inv: Vec<Matrix<Q>> = dec.g_inv.iter().map(|x| x.at_zero()).collect();

    let d0 = pc.at_zero();
    let mut lifts = d0.cohomology().lifts;
    let target_col = |i: usize, j: usize| g0_inv[i].column(j);
    let mut killed: Vec<Vec<Vec<Q>>> = vec![Vec::new(); n.len()];
    for b in dec.blocks.iter().filter(|b| b.exponent == 0) {
        killed[b.degree + 1].push(target_col(b.degree + 1, b.target));
    }

    let exponents: BTreeSet<u32> = dec
        .blocks
        .iter()
        .map(|b| b.exponent)
        .filter(|&a| a > 0)
        .collect();
    let mut differentials = vec![d0];
    for &a in &exponents {
        let page_dims: Vec<usize> = lifts.iter().map(|l| l.cols()).collect();
        let mut mats = Vec::with_capacity(m);
        for i in 0..m {
            let basis = lifts[i + 1].hstack(&Matrix::from_columns(&killed[i + 1], n[i + 1]));
            let mut cols = Vec::with_capacity(page_dims[i]);
            for x in lifts[i].columns() {
                let y = g0[i].mul_vec(&x);
                let mut w = vec![Q::zero(); n[i + 1]];
                for b in dec
                    .blocks
                    .iter()
                    .filter(|b| b.degree == i && b.exponent == a)
                {
                    w[b.target] = y[b.source].clone();
                }
                let image = g0_inv[i + 1].mul_vec(&w);
                let z = basis
                    .solve(&image)
                    .expect("shapes agree")
                    .expect("page differential lands in the page");
                cols.push(z[..page_dims[i + 1]].to_vec());
            }
            mats.push(Matrix::from_columns(&cols, page_dims[i + 1]));
        }
        let dims = GradedDims::possibly_empty(page_dims).expect("page dims have the right length");
        let page = Complex::new(dims, mats).expect("page differential squares to zero");
        let coh = page.cohomology();
        for (l, c) in lifts.iter_mut().zip(&coh.lifts) {
            *l = l.mul(c);
        }
        for b in dec.blocks.iter().filter(|b| b.exponent == a) {
            killed[b.degree + 1].push(target_col(b.degree + 1, b.target));
        }
        differentials.push(page);
    }

    let ss = SpectralSequence::new(differentials).expect("pages are successive cohomologies");
    let reduced = ss.final_page().dims().is_sparse();
    let label = if reduced {
        ss.stratum_label().ok()
    } else {
        None
    };
    let table = page_table(&n, &dec);
    Limit {
        ss,
        label,
        reduced,
        table,
        decomposition: dec,
    }
}

fn page_table(n: &[usize], dec: &DvrDecomposition) -> PageTable {
    let m = n.len() - 1;
    let top = dec.max_exponent().unwrap_or(0);
    let mult = dec.multiplicities();
    let count = |i: usize, a: u32| mult.get(&(i, a)).copied().unwrap_or(0);
    let mut rows = Vec::new();
    let mut dims = n.to_vec();
    for a in 0..=top {
        let ranks: Vec<usize> = (0..m).map(|i| count(i, a)).collect();
        let row = PageRow {
            dims: dims.clone(),
            ranks,
        };
        dims = row.next_dims();
        rows.push(row);
    }
    PageTable { rows }.normalized()
}
