use super::limit::{PageRow, PageTable};
use super::PolyComplex;
use crate::exactlin::{Matrix, Q};
use crate::Error;

/// Truncation order adequate for every family whose blocks have exponents
/// at most `a`: level `p = a + 1` sees every block whole, and so does
/// `p + 1`.
pub fn truncation_for(a: usize) -> usize {
    2 * a + 3
}

/// Page table of the `t`-adically filtered complex, by direct subquotient
/// computation on `V ⊗ Q[t]/t^n`.
///
/// Reads `E_r^p` at `p = n/2` for `r = 0 ..= n - p - 2` and checks it
/// against `p + 1`; a mismatch means `n` is too small for the family.
pub fn filtered_oracle(pc: &PolyComplex, n: usize) -> Result<PageTable, Error> {
    let unrolled = Unrolled::new(pc, n);
    let p = n / 2;
    if n < 3 || n < p + 2 {
        return Err(Error::TruncationTooSmall { n, p });
    }
    let r_max = n - p - 2;
    let here = unrolled.table(p, r_max);
    let next = unrolled.table(p + 1, r_max);
    if here != next {
        return Err(Error::TruncationTooSmall { n, p });
    }
    Ok(here)
}

/// Each `V^i ⊗ Q[t]/t^n` flattened with `t^q e_c` at index `q * n_i + c`,
/// so the filtration step `F^p` is the index range from `p * n_i` on.
struct Unrolled {
    n: usize,
    dims: Vec<usize>,
    maps: Vec<Matrix<Q>>,
}

impl Unrolled {
    fn new(pc: &PolyComplex, n: usize) -> Self {
        let dims = pc.dims().as_slice().to_vec();
        let maps = pc
            .diffs()
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let (rows, cols) = (dims[i + 1], dims[i]);
                let mut u = Matrix::zeros(n * rows, n * cols);
                for r in 0..rows {
                    for c in 0..cols {
                        for (s, coef) in d[(r, c)].series(n).into_iter().enumerate() {
                            for q in 0..n - s {
                                u[((q + s) * rows + r, q * cols + c)] = coef.clone();
                            }
                        }
                    }
                }
                u
            })
            .collect();
        Unrolled { n, dims, maps }
    }

    fn size(&self, i: usize) -> usize {
        self.n * self.dims[i]
    }

    /// `{x ∈ F^src : D x ∈ F^tgt}` in degree `i`, as columns.
    fn z(&self, i: usize, src: isize, tgt: isize) -> Matrix<Q> {
        let size = self.size(i);
        let start = (src.max(0) as usize).min(self.n) * self.dims[i];
        let cols: Vec<usize> = (start..size).collect();
        let embed = |k: Matrix<Q>| {
            let mut out = Matrix::zeros(size, k.cols());
            out.set_block(start, 0, &k);
            out
        };
        if i + 1 == self.dims.len() || tgt <= src.max(0) {
            return embed(Matrix::identity(cols.len()));
        }
        let cut = (tgt as usize).min(self.n) * self.dims[i + 1];
        let rows: Vec<usize> = (0..cut).collect();
        let block = self.maps[i].select_rows(&rows).select_columns(&cols);
        embed(block.kernel_basis())
    }

    fn dim_sum(a: &Matrix<Q>, b: &Matrix<Q>) -> usize {
        a.hstack(b).rank()
    }

    fn table(&self, p: usize, r_max: usize) -> PageTable {
        let p = p as isize;
        let degrees = self.dims.len();
        let rows = (0..=r_max as isize)
            .map(|r| {
                let mut dims = Vec::with_capacity(degrees);
                let mut ranks = Vec::with_capacity(degrees - 1);
                for i in 0..degrees {
                    let z = self.z(i, p, p + r);
                    let lower = self.z(i, p + 1, p + r);
                    let mut denom = lower.clone();
                    if i > 0 {
                        let src = self.z(i - 1, p - r + 1, p);
                        denom = denom.hstack(&self.maps[i - 1].mul(&src));
                    }
                    dims.push(z.cols() - denom.rank());
                    if i + 1 < degrees {
                        let upper = self.z(i, p, p + r + 1);
                        ranks.push(z.cols() - Self::dim_sum(&upper, &lower));
                    }
                }
                PageRow { dims, ranks }
            })
            .collect();
        PageTable { rows }
    }
}
