use std::collections::BTreeMap;

use num_traits::Zero;

use super::PolyComplex;
use crate::exactlin::{LocalFn, Matrix, Valuation};

/// An elementary summand `R --t^exponent--> R` from basis vector `source`
/// of `V^degree` to basis vector `target` of `V^(degree+1)`, in the basis
/// given by `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub degree: usize,
    pub exponent: u32,
    pub source: usize,
    pub target: usize,
}

/// Splitting of a family into elementary blocks over the local ring.
///
/// `g` is a degree 0 automorphism over the local ring with
/// `g_(i+1) D_i g_i^(-1)` equal to `t^a` at `(target, source)` for each
/// block and zero elsewhere; `free[i]` lists the basis vectors of `V^i`
/// in no block.
#[derive(Clone, Debug)]
pub struct DvrDecomposition {
    pub g: Vec<Matrix<LocalFn>>,
    pub g_inv: Vec<Matrix<LocalFn>>,
    pub blocks: Vec<Block>,
    pub free: Vec<Vec<usize>>,
}

impl DvrDecomposition {
    /// `(degree, exponent) -> number of blocks`.
    pub fn multiplicities(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            *out.entry((b.degree, b.exponent)).or_insert(0) += 1;
        }
        out
    }

    /// The multiset of `(degree, exponent)` pairs, sorted.
    pub fn block_multiset(&self) -> Vec<(usize, u32)> {
        let mut v: Vec<_> = self.blocks.iter().map(|b| (b.degree, b.exponent)).collect();
        v.sort();
        v
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.blocks.iter().map(|b| b.exponent).max()
    }

    /// The block diagonal family `g D g^(-1)` predicted by the blocks.
    pub fn block_form(&self, dims: &[usize]) -> Vec<Matrix<LocalFn>> {
        let mut out: Vec<Matrix<LocalFn>> = (0..dims.len() - 1)
            .map(|i| Matrix::zeros(dims[i + 1], dims[i]))
            .collect();
        for b in &self.blocks {
            out[b.degree][(b.target, b.source)] = LocalFn::t_pow(b.exponent as usize);
        }
        out
    }
}

/// Valuation-minimal pivoting: repeatedly take a nonzero entry of least
/// valuation (ties: lowest degree, then row-major), normalize its unit
/// part to 1, clear its row and column, and split the resulting block off.
/// `D^2 = 0` forces the adjacent column of `D_(i+1)` and row of `D_(i-1)`
/// to vanish once the pivot's row and column are cleared.
pub fn dvr_decompose(pc: &PolyComplex) -> DvrDecomposition {
    let n = pc.dims().as_slice().to_vec();
    let m = n.len() - 1;
    let mut d: Vec<Matrix<LocalFn>> = pc.diffs().to_vec();
    let mut g: Vec<Matrix<LocalFn>> = n.iter().map(|&k| Matrix::identity(k)).collect();
    let mut g_inv = g.clone();
    let mut active: Vec<Vec<bool>> = n.iter().map(|&k| vec![true; k]).collect();
    let mut blocks = Vec::new();

    loop {
        let mut best: Option<(Valuation, usize, usize, usize)> = None;
        for i in 0..m {
            for j in (0..n[i + 1]).filter(|&j| active[i + 1][j]) {
                for k in (0..n[i]).filter(|&k| active[i][k]) {
                    let v = d[i][(j, k)].valuation();
                    if v != Valuation::Infinite && best.is_none_or(|(bv, ..)| v < bv) {
                        best = Some((v, i, j, k));
                    }
                }
            }
        }
        let Some((_, i, j, k)) = best else { break };
        let (a, unit) = d[i][(j, k)].split_unit().expect("pivot is nonzero");
        let piv = d[i][(j, k)].clone();

        // Clear column k of D_i by row operations on V^(i+1):
        // row_l -= f row_j, compensated by col_j += f col_l in D_(i+1).
        for l in (0..n[i + 1]).filter(|&l| l != j && active[i + 1][l]) {
            if d[i][(l, k)].is_zero() {
                continue;
            }
            let f = d[i][(l, k)]
                .checked_div(&piv)
                .expect("minimal valuation pivot divides its column");
            row_axpy(&mut d[i], l, j, &f);
            row_axpy(&mut g[i + 1], l, j, &f);
            col_axpy(&mut g_inv[i + 1], j, l, &-&f);
            if i + 1 < m {
                col_axpy(&mut d[i + 1], j, l, &-&f);
            }
        }
        // Clear row j of D_i by column operations on V^i:
        // col_c -= f col_k, compensated by row_k += f row_c in D_(i-1).
        for c in (0..n[i]).filter(|&c| c != k && active[i][c]) {
            if d[i][(j, c)].is_zero() {
                continue;
            }
            let f = d[i][(j, c)]
                .checked_div(&piv)
                .expect("minimal valuation pivot divides its row");
            col_axpy(&mut d[i], c, k, &f);
            col_axpy(&mut g_inv[i], c, k, &f);
            row_axpy(&mut g[i], k, c, &-&f);
            if i > 0 {
                row_axpy(&mut d[i - 1], k, c, &-&f);
            }
        }
        // Rescale target vector j so the pivot becomes exactly t^a.
        let u_inv = unit.inverse().expect("unit part is invertible");
        row_scale(&mut d[i], j, &u_inv);
        row_scale(&mut g[i + 1], j, &u_inv);
        col_scale(&mut g_inv[i + 1], j, &unit);
        if i + 1 < m {
            col_scale(&mut d[i + 1], j, &unit);
        }
        debug_assert!(i + 1 >= m || (0..n[i + 2]).all(|x| d[i + 1][(x, j)].is_zero()));
        debug_assert!(i == 0 || (0..n[i - 1]).all(|y| d[i - 1][(k, y)].is_zero()));

        active[i][k] = false;
        active[i + 1][j] = false;
        blocks.push(Block {
            degree: i,
            exponent: a,
            source: k,
            target: j,
        });
    }

    let free = active
        .iter()
        .map(|row| (0..row.len()).filter(|&x| row[x]).collect())
        .collect();
    DvrDecomposition {
        g,
        g_inv,
        blocks,
        free,
    }
}

/// `row_dst -= f * row_src`.
fn row_axpy(m: &mut Matrix<LocalFn>, dst: usize, src: usize, f: &LocalFn) {
    for c in 0..m.cols() {
        if m[(src, c)].is_zero() {
            continue;
        }
        let v = &m[(dst, c)] - &(f * &m[(src, c)]);
        m[(dst, c)] = v;
    }
}

/// `col_dst -= f * col_src`.
fn col_axpy(m: &mut Matrix<LocalFn>, dst: usize, src: usize, f: &LocalFn) {
    for r in 0..m.rows() {
        if m[(r, src)].is_zero() {
            continue;
        }
        let v = &m[(r, dst)] - &(f * &m[(r, src)]);
        m[(r, dst)] = v;
    }
}

fn row_scale(m: &mut Matrix<LocalFn>, r: usize, f: &LocalFn) {
    for c in 0..m.cols() {
        let v = f * &m[(r, c)];
        m[(r, c)] = v;
    }
}

fn col_scale(m: &mut Matrix<LocalFn>, c: usize, f: &LocalFn) {
    for r in 0..m.rows() {
        let v = f * &m[(r, c)];
        m[(r, c)] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::GradedDims;
    use crate::exactlin::{q, Poly};
    use num_traits::One;

    fn check(pc: &PolyComplex) -> DvrDecomposition {
        let dec = dvr_decompose(pc);
        let dims = pc.dims().as_slice();
        for i in 0..dims.len() - 1 {
            let conj = dec.g[i + 1].mul(&pc.diffs()[i]).mul(&dec.g_inv[i]);
            assert_eq!(conj, dec.block_form(dims)[i]);
        }
        for (g, gi) in dec.g.iter().zip(&dec.g_inv) {
            assert_eq!(g.mul(gi), Matrix::identity(g.rows()));
        }
        dec
    }

    fn family(n: &[usize], diffs: Vec<Matrix<LocalFn>>) -> PolyComplex {
        PolyComplex::new(GradedDims::new(n.to_vec()).unwrap(), diffs).unwrap()
    }

    #[test]
    fn diagonal_families() {
        let d = Matrix::new(
            2,
            2,
            vec![
                LocalFn::one(),
                LocalFn::zero(),
                LocalFn::zero(),
                LocalFn::t_pow(1),
            ],
        );
        let dec = check(&family(&[2, 2], vec![d]));
        assert_eq!(dec.block_multiset(), vec![(0, 0), (0, 1)]);
        assert!(dec.free.iter().all(|f| f.is_empty()));

        let mut d = Matrix::zeros(4, 4);
        for k in 0..4 {
            d[(k, k)] = LocalFn::t_pow(k);
        }
        let dec = check(&family(&[4, 4], vec![d]));
        assert_eq!(dec.block_multiset(), vec![(0, 0), (0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn tilted_pair() {
        let t = LocalFn::t_pow(1);
        let z = LocalFn::zero();
        let d0 = Matrix::new(2, 1, vec![t.clone(), z.clone()]);
        let d1 = Matrix::new(1, 2, vec![z, t]);
        let dec = check(&family(&[1, 2, 1], vec![d0, d1]));
        assert_eq!(dec.block_multiset(), vec![(0, 1), (1, 1)]);
        assert!(dec.free.iter().all(|f| f.is_empty()));
    }

    #[test]
    fn units_are_normalized() {
        // (2 + t) t^2 and a rational entry sharing a column.
        let u = LocalFn::from_poly(Poly::new(vec![q(0), q(0), q(2), q(1)]));
        let w = LocalFn::new(Poly::new(vec![q(0), q(3)]), Poly::new(vec![q(1), q(-1)])).unwrap();
        let d = Matrix::new(2, 2, vec![u, LocalFn::zero(), w, LocalFn::t_pow(4)]);
        let dec = check(&family(&[2, 2], vec![d]));
        assert_eq!(dec.block_multiset(), vec![(0, 1), (0, 5)]);
    }

    #[test]
    fn zero_family_is_free() {
        let d0 = Matrix::zeros(1, 2);
        let d1 = Matrix::zeros(3, 1);
        let dec = check(&family(&[2, 1, 3], vec![d0, d1]));
        assert!(dec.blocks.is_empty());
        assert_eq!(dec.free, vec![vec![0, 1], vec![0], vec![0, 1, 2]]);
        assert_eq!(dec.max_exponent(), None);
    }
}
