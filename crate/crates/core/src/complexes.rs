//! Complexes of finite dimensional graded vector spaces.
//!
//! Indexing: `V^0 .. V^m`, `D_i: V^i -> V^(i+1)` for `i = 0 .. m-1`, and the
//! rank vector stores `rank(D_i)` at position `i` (the `r_(i+1)` of the
//! usual one-based labelling). Cohomology in degree `i` then has dimension
//! `n_i - rank(D_(i-1)) - rank(D_i)`.

use std::fmt;

use crate::exactlin::{Field, Matrix, Ring};
use crate::strata::RankVector;
use crate::Error;

/// Dimensions `n_0 .. n_m` of a graded vector space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDims(Vec<usize>);

impl GradedDims {
    pub fn new(n: Vec<usize>) -> Result<Self, Error> {
        if n.is_empty() {
            return Err(Error::InvalidDims("need at least one degree".into()));
        }
        if n.iter().all(|&d| d == 0) {
            return Err(Error::InvalidDims("all dimensions are zero".into()));
        }
        Ok(GradedDims(n))
    }

    /// Like [`GradedDims::new`] but allows every dimension to be zero, as
    /// happens for the last page of a spectral sequence of an acyclic
    /// complex.
    pub fn possibly_empty(n: Vec<usize>) -> Result<Self, Error> {
        if n.is_empty() {
            return Err(Error::InvalidDims("need at least one degree".into()));
        }
        Ok(GradedDims(n))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Top degree `m`.
    pub fn m(&self) -> usize {
        self.0.len() - 1
    }

    pub fn degrees(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn euler(&self) -> i64 {
        euler(&self.0)
    }

    /// No two consecutive degrees are both nonzero.
    pub fn is_sparse(&self) -> bool {
        is_sparse(&self.0)
    }

    /// Dimension of the space of all degree 1 graded maps.
    pub fn hom_dim(&self) -> usize {
        self.0.windows(2).map(|w| w[0] * w[1]).sum()
    }

    /// Dimension of `GL(V^0) x ... x GL(V^m)`.
    pub fn group_dim(&self) -> usize {
        self.0.iter().map(|n| n * n).sum()
    }
}

impl std::ops::Index<usize> for GradedDims {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Debug for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in v.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

pub(crate) fn euler(n: &[usize]) -> i64 {
    n.iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

pub(crate) fn is_sparse(n: &[usize]) -> bool {
    n.windows(2).all(|w| w[0] * w[1] == 0)
}

/// `sum_i h_i h_(i+1)`, the dimension of the normal space to a stratum.
pub fn normal_dim(h: &[usize]) -> usize {
    h.windows(2).map(|w| w[0] * w[1]).sum()
}

/// A graded map of fixed degree: components `f_i: V^i -> V^(i+degree)`
/// for every `i` where both ends exist, in increasing `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMap<T> {
    pub degree: i32,
    pub components: Vec<Matrix<T>>,
}

impl<T: Ring> GradedMap<T> {
    pub fn new(degree: i32, components: Vec<Matrix<T>>) -> Self {
        GradedMap { degree, components }
    }

    /// The zero map of the given degree on `dims`.
    pub fn zero(dims: &GradedDims, degree: i32) -> Self {
        let comps = component_range(dims, degree)
            .map(|i| Matrix::zeros(dims[(i as i32 + degree) as usize], dims[i]))
            .collect();
        GradedMap::new(degree, comps)
    }

    pub fn identity(dims: &GradedDims) -> Self {
        GradedMap::new(
            0,
            dims.as_slice()
                .iter()
                .map(|&n| Matrix::identity(n))
                .collect(),
        )
    }

    pub fn check_shape(&self, dims: &GradedDims) -> Result<(), Error> {
        let range: Vec<usize> = component_range(dims, self.degree).collect();
        if range.len() != self.components.len() {
            return Err(Error::DimensionMismatch(format!(
                "degree {} map on {dims} needs {} components, got {}",
                self.degree,
                range.len(),
                self.components.len()
            )));
        }
        for (k, i) in range.into_iter().enumerate() {
            let want = (dims[(i as i32 + self.degree) as usize], dims[i]);
            if self.components[k].shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "component {i} has shape {:?}, expected {:?}",
                    self.components[k].shape(),
                    want
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

fn component_range(dims: &GradedDims, degree: i32) -> impl Iterator<Item = usize> {
    let m = dims.m() as i32;
    let lo = 0.max(-degree);
    let hi = m.min(m - degree);
    (lo..=hi).map(|i| i as usize)
}

/// A differential on a graded vector space.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex<T> {
    dims: GradedDims,
    diffs: Vec<Matrix<T>>,
}

impl<T: Ring> Complex<T> {
    /// Checks shapes and `D_(i+1) D_i = 0`, reporting the first failing `i`.
    pub fn new(dims: GradedDims, diffs: Vec<Matrix<T>>) -> Result<Self, Error> {
        if diffs.len() != dims.m() {
            return Err(Error::DimensionMismatch(format!(
                "{} differentials for {} degrees",
                diffs.len(),
                dims.degrees()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::DimensionMismatch(format!(
                    "D_{i} has shape {:?}, expected {:?}",
                    d.shape(),
                    (dims[i + 1], dims[i])
                )));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !diffs[i + 1].mul(&diffs[i]).is_zero() {
                return Err(Error::NotAComplex { index: i });
            }
        }
        Ok(Complex { dims, diffs })
    }

    pub fn zero(dims: GradedDims) -> Self {
        let diffs = (0..dims.m())
            .map(|i| Matrix::zeros(dims[i + 1], dims[i]))
            .collect();
        Complex { dims, diffs }
    }

    pub fn from_map(dims: GradedDims, f: GradedMap<T>) -> Result<Self, Error> {
        if f.degree != 1 {
            return Err(Error::DimensionMismatch(
                "a differential has degree 1".into(),
            ));
        }
        f.check_shape(&dims)?;
        Complex::new(dims, f.components)
    }

    pub fn dims(&self) -> &GradedDims {
        &self.dims
    }

    pub fn diffs(&self) -> &[Matrix<T>] {
        &self.diffs
    }

    pub fn diff(&self, i: usize) -> &Matrix<T> {
        &self.diffs[i]
    }

    pub fn as_map(&self) -> GradedMap<T> {
        GradedMap::new(1, self.diffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.diffs.iter().all(|d| d.is_zero())
    }

    /// `D_i` extended by zero maps outside `0..m`: `D_(-1): 0 -> V^0` and
    /// `D_m: V^m -> 0`.
    pub(crate) fn diff_ext(&self, i: isize) -> Matrix<T> {
        let m = self.dims.m() as isize;
        if i < 0 {
            Matrix::zeros(self.dims[0], 0)
        } else if i >= m {
            Matrix::zeros(0, self.dims[m as usize])
        } else {
            self.diffs[i as usize].clone()
        }
    }

    /// `(g . D)_i = g_(i+1) D_i g_i^(-1)`, given `g` and its inverse.
    pub fn conjugate(&self, g: &GradedMap<T>, g_inv: &GradedMap<T>) -> Result<Self, Error> {
        g.check_shape(&self.dims)?;
        g_inv.check_shape(&self.dims)?;
        if g.degree != 0 || g_inv.degree != 0 {
            return Err(Error::DimensionMismatch(
                "conjugation needs degree 0 maps".into(),
            ));
        }
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| g.components[i + 1].mul(d).mul(&g_inv.components[i]))
            .collect();
        Complex::new(self.dims.clone(), diffs)
    }

    pub fn map_entries<U: Ring>(&self, f: impl Fn(&T) -> U) -> Complex<U> {
        Complex {
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.map(&f)).collect(),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Complex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex{} [", self.dims)?;
        for (i, d) in self.diffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "D{i}={d:?}")?;
        }
        write!(f, "]")
    }
}

/// Cohomology with canonical bases.
///
/// `lifts[i]` has as columns cycles in `V^i` representing a basis of
/// `H^i`; `projections[i]` sends a cycle to its coordinates in that basis.
/// Both are fixed by the echelon conventions of [`Matrix::echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyData<T> {
    pub h: Vec<usize>,
    pub lifts: Vec<Matrix<T>>,
    pub projections: Vec<Matrix<T>>,
}

impl<T: Ring> CohomologyData<T> {
    pub fn dims(&self) -> GradedDims {
        GradedDims(self.h.clone())
    }
}

/// A degree 0 automorphism `g` taking a complex to the canonical
/// representative of its rank vector.
#[derive(Clone, Debug)]
pub struct Splitting<T> {
    pub g: GradedMap<T>,
    pub g_inv: GradedMap<T>,
    pub rank_vector: RankVector,
}

/// Result of embedding a differential on cohomology back into `V`.
#[derive(Clone, Debug)]
pub enum DeltaAssembly<T> {
    Complex(Complex<T>),
    /// `delta` did not square to zero; the raw degree 1 map and the first
    /// failing index.
    NotAComplex {
        raw: GradedMap<T>,
        index: usize,
    },
}

/// Column offsets of the components of a degree `d` map inside one flat
/// coordinate vector (row-major within each component).
struct Layout {
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(dims: &GradedDims, degree: i32) -> Self {
        let mut offsets = Vec::new();
        let mut shapes = Vec::new();
        let mut total = 0;
        for i in component_range(dims, degree) {
            let shape = (dims[(i as i32 + degree) as usize], dims[i]);
            offsets.push(total);
            shapes.push(shape);
            total += shape.0 * shape.1;
        }
        Layout {
            offsets,
            shapes,
            total,
        }
    }

    fn index(&self, comp: usize, row: usize, col: usize) -> usize {
        self.offsets[comp] + row * self.shapes[comp].1 + col
    }

    fn unflatten<T: Ring>(&self, degree: i32, v: &[T]) -> GradedMap<T> {
        let comps = self
            .shapes
            .iter()
            .enumerate()
            .map(|(k, &(r, c))| Matrix::from_fn(r, c, |i, j| v[self.index(k, i, j)].clone()))
            .collect();
        GradedMap::new(degree, comps)
    }
}

impl<F: Field> Complex<F> {
    pub fn rank_vector(&self) -> RankVector {
        let r = self.diffs.iter().map(|d| d.rank()).collect();
        RankVector::new(self.dims.clone(), r).expect("ranks of a complex always lie in R")
    }

    pub fn cohomology(&self) -> CohomologyData<F> {
        let mut h = Vec::new();
        let mut lifts = Vec::new();
        let mut projections = Vec::new();
        for i in 0..self.dims.degrees() {
            let n = self.dims[i];
            let out = self.diff_ext(i as isize);
            let incoming = self.diff_ext(i as isize - 1);
            let ech = out.echelon();
            let free: Vec<usize> = (0..n).filter(|j| !ech.pivots.contains(j)).collect();
            let cycles = out.kernel_basis();
            // Boundaries in cycle coordinates: a cycle is determined by its
            // entries in the free columns.
            let bd = incoming.select_rows(&free).column_space_basis();
            let comp = bd
                .complement_basis()
                .expect("column space basis is independent");
            let lift = cycles.mul(&comp);
            let full = bd.hstack(&comp);
            let inv = full
                .inverse()
                .expect("boundary basis plus complement is a basis");
            let b = bd.cols();
            let mut proj = Matrix::zeros(comp.cols(), n);
            for k in 0..comp.cols() {
                for (z, &fc) in free.iter().enumerate() {
                    proj[(k, fc)] = inv[(b + k, z)].clone();
                }
            }
            h.push(comp.cols());
            lifts.push(lift);
            projections.push(proj);
        }
        CohomologyData {
            h,
            lifts,
            projections,
        }
    }

    /// Constructive splitting `V = A + H` into an acyclic part and
    /// cohomology. In the new basis each `V^i` is ordered as
    /// `[image of D_(i-1) | sources of D_i | cohomology lifts]`.
    pub fn split_canonical(&self) -> Splitting<F> {
        let rv = self.rank_vector();
        let coh = self.cohomology();
        let m = self.dims.m();
        let sources: Vec<Matrix<F>> = (0..=m)
            .map(|i| {
                let d = self.diff_ext(i as isize);
                Matrix::identity(self.dims[i]).select_columns(&d.independent_columns())
            })
            .collect();
        let mut bases = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let img = if i == 0 {
                Matrix::zeros(self.dims[0], 0)
            } else {
                self.diffs[i - 1].mul(&sources[i - 1])
            };
            bases.push(img.hstack(&sources[i]).hstack(&coh.lifts[i]));
        }
        let g_inv = GradedMap::new(0, bases);
        let g = GradedMap::new(
            0,
            g_inv
                .components
                .iter()
                .map(|b| b.inverse().expect("adapted basis is a basis"))
                .collect(),
        );
        Splitting {
            g,
            g_inv,
            rank_vector: rv,
        }
    }

    /// Linear map `s -> (s_(i+1) D_i - D_i s_i)_i` from degree 0 maps to
    /// degree 1 maps, in flattened coordinates.
    fn homotopy_operator(&self) -> Matrix<F> {
        let src = Layout::new(&self.dims, 0);
        let dst = Layout::new(&self.dims, 1);
        let mut a: Matrix<F> = Matrix::zeros(dst.total, src.total);
        let n = self.dims.as_slice();
        for i in 0..=self.dims.m() {
            for p in 0..n[i] {
                for q in 0..n[i] {
                    let col = src.index(i, p, q);
                    // s_i D_(i-1): row p gets row q of D_(i-1).
                    if i >= 1 {
                        let d = &self.diffs[i - 1];
                        for y in 0..n[i - 1] {
                            let v = d[(q, y)].clone();
                            if !v.is_zero() {
                                let row = dst.index(i - 1, p, y);
                                a[(row, col)] = a[(row, col)].clone() + v;
                            }
                        }
                    }
                    // -D_i s_i: column q gets minus column p of D_i.
                    if i < self.dims.m() {
                        let d = &self.diffs[i];
                        for x in 0..n[i + 1] {
                            let v = d[(x, p)].clone();
                            if !v.is_zero() {
                                let row = dst.index(i, x, q);
                                a[(row, col)] = a[(row, col)].clone() - v;
                            }
                        }
                    }
                }
            }
        }
        a
    }

    /// Basis of the degree 1 maps `f` with `D_(i+1) f_i + f_(i+1) D_i = 0`,
    /// i.e. the tangent space to the variety of complexes at `D`.
    pub fn morphism_space(&self) -> Vec<GradedMap<F>> {
        let lay = Layout::new(&self.dims, 1);
        let n = self.dims.as_slice();
        let m = self.dims.m();
        let eq_count: usize = (0..m.saturating_sub(1)).map(|i| n[i + 2] * n[i]).sum();
        let mut sys: Matrix<F> = Matrix::zeros(eq_count, lay.total);
        let mut row0 = 0;
        for i in 0..m.saturating_sub(1) {
            let d_lo = &self.diffs[i];
            let d_hi = &self.diffs[i + 1];
            for x in 0..n[i + 2] {
                for y in 0..n[i] {
                    let row = row0 + x * n[i] + y;
                    // (D_(i+1) f_i)[x][y] = sum_k D_(i+1)[x][k] f_i[k][y]
                    for k in 0..n[i + 1] {
                        let v = d_hi[(x, k)].clone();
                        if !v.is_zero() {
                            let col = lay.index(i, k, y);
                            sys[(row, col)] = sys[(row, col)].clone() + v;
                        }
                    }
                    // (f_(i+1) D_i)[x][y] = sum_k f_(i+1)[x][k] D_i[k][y]
                    for k in 0..n[i + 1] {
                        let v = d_lo[(k, y)].clone();
                        if !v.is_zero() {
                            let col = lay.index(i + 1, x, k);
                            sys[(row, col)] = sys[(row, col)].clone() + v;
                        }
                    }
                }
            }
            row0 += n[i + 2] * n[i];
        }
        sys.kernel_basis()
            .columns()
            .iter()
            .map(|v| lay.unflatten(1, v))
            .collect()
    }

    /// Basis of the null-homotopic degree 1 maps `s_(i+1) D_i - D_i s_i`,
    /// i.e. the tangent space to the orbit of `D`.
    pub fn nullhomotopic_space(&self) -> Vec<GradedMap<F>> {
        let lay = Layout::new(&self.dims, 1);
        self.homotopy_operator()
            .column_space_basis()
            .columns()
            .iter()
            .map(|v| lay.unflatten(1, v))
            .collect()
    }

    /// Dimension of `{s of degree 0 : s_(i+1) D_i = D_i s_i}`.
    pub fn stabilizer_dim(&self) -> usize {
        self.homotopy_operator().kernel_basis().cols()
    }

    fn embed_on_cohomology(
        &self,
        split: &Splitting<F>,
        h: &[usize],
        delta: &GradedMap<F>,
    ) -> Vec<Matrix<F>> {
        let r = split.rank_vector.as_slice();
        let rank_in = |i: usize| if i == 0 { 0 } else { r[i - 1] };
        let rank_out = |i: usize| r.get(i).copied().unwrap_or(0);
        (0..self.dims.m())
            .map(|i| {
                let mut block = Matrix::zeros(self.dims[i + 1], self.dims[i]);
                block.set_block(
                    rank_in(i + 1) + rank_out(i + 1),
                    rank_in(i) + rank_out(i),
                    &delta.components[i],
                );
                debug_assert_eq!(delta.components[i].shape(), (h[i + 1], h[i]));
                split.g_inv.components[i + 1]
                    .mul(&block)
                    .mul(&split.g.components[i])
            })
            .collect()
    }

    /// `D_delta`: in the split basis, `delta` acts on the cohomology block
    /// and the acyclic part is kept; the result is conjugated back.
    pub fn assemble_d_delta(&self, delta: &GradedMap<F>) -> Result<DeltaAssembly<F>, Error> {
        let coh = self.cohomology();
        let hdims = GradedDims(coh.h.clone());
        if delta.degree != 1 {
            return Err(Error::DimensionMismatch("delta must have degree 1".into()));
        }
        delta.check_shape(&hdims)?;
        let split = self.split_canonical();
        let eta = self.embed_on_cohomology(&split, &coh.h, delta);
        let raw: Vec<Matrix<F>> = self.diffs.iter().zip(&eta).map(|(d, e)| d.add(e)).collect();
        match Complex::new(self.dims.clone(), raw.clone()) {
            Ok(c) => Ok(DeltaAssembly::Complex(c)),
            Err(Error::NotAComplex { index }) => Ok(DeltaAssembly::NotAComplex {
                raw: GradedMap::new(1, raw),
                index,
            }),
            Err(e) => Err(e),
        }
    }

    /// Rank at `(1, 0)` of the chart `(g, delta) -> g . D_delta`: the rank
    /// of `(s, delta) -> (s D - D s) + eta(delta)`.
    pub fn chart_jacobian_rank(&self) -> usize {
        let coh = self.cohomology();
        let hdims = GradedDims(coh.h.clone());
        let split = self.split_canonical();
        let lay = Layout::new(&self.dims, 1);
        let hlay = Layout::new(&hdims, 1);
        let mut cols: Vec<Vec<F>> = self.homotopy_operator().columns();
        for k in 0..hlay.total {
            let mut unit = vec![F::zero(); hlay.total];
            unit[k] = F::one();
            let delta = hlay.unflatten(1, &unit);
            let eta = self.embed_on_cohomology(&split, &coh.h, &delta);
            let mut flat = vec![F::zero(); lay.total];
            for (c, e) in eta.iter().enumerate() {
                for i in 0..e.rows() {
                    for j in 0..e.cols() {
                        flat[lay.index(c, i, j)] = e[(i, j)].clone();
                    }
                }
            }
            cols.push(flat);
        }
        Matrix::from_columns(&cols, lay.total).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, Q};

    fn dims(n: &[usize]) -> GradedDims {
        GradedDims::new(n.to_vec()).unwrap()
    }

    fn mat(rows: &[&[i64]], cols: usize) -> Matrix<Q> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    fn cx(n: &[usize], diffs: Vec<Matrix<Q>>) -> Complex<Q> {
        Complex::new(dims(n), diffs).unwrap()
    }

    fn pt121() -> Complex<Q> {
        cx(&[1, 2, 1], vec![mat(&[&[1], &[0]], 1), mat(&[&[0, 1]], 2)])
    }

    fn rank1_22() -> Complex<Q> {
        cx(&[2, 2], vec![mat(&[&[0, 1], &[0, 0]], 2)])
    }

    #[test]
    fn validate_examples() {
        assert!(Complex::new(dims(&[1, 1, 1]), vec![mat(&[&[1]], 1), mat(&[&[0]], 1)]).is_ok());
        assert_eq!(
            Complex::new(dims(&[1, 1, 1]), vec![mat(&[&[1]], 1), mat(&[&[1]], 1)]).unwrap_err(),
            Error::NotAComplex { index: 0 }
        );
        pt121();
    }

    #[test]
    fn shape_errors() {
        let e = Complex::new(dims(&[1, 2]), vec![mat(&[&[1, 0]], 2)]).unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch(_)));
        assert!(GradedDims::new(vec![0, 0]).is_err());
        assert!(GradedDims::new(vec![]).is_err());
    }

    #[test]
    fn rank_vector_examples() {
        assert_eq!(
            Complex::<Q>::zero(dims(&[2, 3, 1]))
                .rank_vector()
                .as_slice(),
            &[0, 0]
        );
        let full = cx(&[2, 2], vec![Matrix::identity(2)]);
        assert_eq!(full.rank_vector().as_slice(), &[2]);
        assert_eq!(pt121().rank_vector().as_slice(), &[1, 1]);
    }

    #[test]
    fn cohomology_examples() {
        let z = Complex::<Q>::zero(dims(&[3]));
        let c = z.cohomology();
        assert_eq!(c.h, vec![3]);
        assert_eq!(c.lifts[0], Matrix::identity(3));
        assert_eq!(
            cx(&[2, 2], vec![Matrix::identity(2)]).cohomology().h,
            vec![0, 0]
        );
        assert_eq!(pt121().cohomology().h, vec![0, 0, 0]);
    }

    #[test]
    fn cohomology_lifts_and_projections() {
        let c = rank1_22();
        let coh = c.cohomology();
        assert_eq!(coh.h, vec![1, 1]);
        for i in 0..2 {
            let lift = &coh.lifts[i];
            assert!(c.diff_ext(i as isize).mul(lift).is_zero());
            assert_eq!(coh.projections[i].mul(lift), Matrix::identity(coh.h[i]));
        }
    }

    #[test]
    fn split_canonical_examples() {
        let c = rank1_22();
        let s = c.split_canonical();
        assert_eq!(s.rank_vector.as_slice(), &[1]);
        let conj = c.conjugate(&s.g, &s.g_inv).unwrap();
        assert_eq!(conj.diff(0), &mat(&[&[1, 0], &[0, 0]], 2));

        let z = Complex::<Q>::zero(dims(&[2, 1]));
        let s = z.split_canonical();
        assert_eq!(s.g, GradedMap::identity(z.dims()));
    }

    #[test]
    fn tangent_and_orbit_dimensions() {
        let c = rank1_22();
        assert_eq!(c.morphism_space().len(), 4);
        assert_eq!(c.nullhomotopic_space().len(), 3);
        assert_eq!(c.stabilizer_dim(), 5);

        let full = cx(&[2, 2], vec![Matrix::identity(2)]);
        assert_eq!(full.nullhomotopic_space().len(), 4);

        let z = Complex::<Q>::zero(dims(&[1, 1, 1]));
        assert_eq!(z.morphism_space().len(), 2);
        assert_eq!(z.nullhomotopic_space().len(), 0);
        assert_eq!(z.stabilizer_dim(), 3);

        let d = cx(&[1, 1, 1], vec![mat(&[&[1]], 1), mat(&[&[0]], 1)]);
        assert_eq!(d.morphism_space().len(), 1);

        let unit = cx(&[1, 1], vec![mat(&[&[1]], 1)]);
        assert_eq!(unit.stabilizer_dim(), 1);
    }

    #[test]
    fn morphisms_satisfy_equation() {
        let c = pt121();
        for f in c.morphism_space() {
            let lhs = c
                .diff(1)
                .mul(&f.components[0])
                .add(&f.components[1].mul(c.diff(0)));
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn d_delta_examples() {
        let z = Complex::<Q>::zero(dims(&[1, 1, 1]));
        let delta = GradedMap::new(1, vec![mat(&[&[1]], 1), mat(&[&[0]], 1)]);
        match z.assemble_d_delta(&delta).unwrap() {
            DeltaAssembly::Complex(c) => assert_eq!(c.rank_vector().as_slice(), &[1, 0]),
            other => panic!("{other:?}"),
        }
        let bad = GradedMap::new(1, vec![mat(&[&[1]], 1), mat(&[&[1]], 1)]);
        assert!(matches!(
            z.assemble_d_delta(&bad).unwrap(),
            DeltaAssembly::NotAComplex { index: 0, .. }
        ));
        let c = rank1_22();
        let zero = GradedMap::zero(&dims(&[1, 1]), 1);
        match c.assemble_d_delta(&zero).unwrap() {
            DeltaAssembly::Complex(d) => assert_eq!(d, c),
            other => panic!("{other:?}"),
        }
        let wrong = GradedMap::zero(&dims(&[2, 2]), 1);
        assert!(c.assemble_d_delta(&wrong).is_err());
    }

    #[test]
    fn chart_rank_examples() {
        assert_eq!(rank1_22().chart_jacobian_rank(), 4);
        let z = Complex::<Q>::zero(dims(&[2, 3, 1]));
        assert_eq!(z.chart_jacobian_rank(), 2 * 3 + 3);
        assert_eq!(
            pt121().chart_jacobian_rank(),
            pt121().nullhomotopic_space().len()
        );
    }

    #[test]
    fn empty_degrees_are_legal() {
        let c = Complex::<Q>::zero(dims(&[0, 2]));
        assert_eq!(c.rank_vector().as_slice(), &[0]);
        assert_eq!(c.cohomology().h, vec![0, 2]);
        assert_eq!(c.morphism_space().len(), 0);
        assert_eq!(c.stabilizer_dim(), 4);
        assert_eq!(c.chart_jacobian_rank(), 0);
    }
}
