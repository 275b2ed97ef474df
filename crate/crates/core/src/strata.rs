//! The poset `R` of rank vectors labelling the strata of the variety of
//! complexes, and the chains in it that label boundary strata of its
//! compactification.

use std::fmt;

use crate::complexes::{is_sparse, write_tuple, Complex, GradedDims};
use crate::exactlin::{Field, Matrix, Q};
use crate::Error;

/// A rank vector `r` together with the graded dimensions it lives over.
/// Entry `k` is the rank of `D_k: V^k -> V^(k+1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankVector {
    dims: GradedDims,
    r: Vec<usize>,
}

impl RankVector {
    pub fn new(dims: GradedDims, r: Vec<usize>) -> Result<Self, Error> {
        if r.len() != dims.m() {
            return Err(Error::DimensionMismatch(format!(
                "rank vector of length {} over {} degrees",
                r.len(),
                dims.degrees()
            )));
        }
        let rv = RankVector { dims, r };
        if !rv.satisfies_bounds() {
            return Err(Error::NotInPoset(format!("{rv}")));
        }
        Ok(rv)
    }

    pub fn zero(dims: GradedDims) -> Self {
        let r = vec![0; dims.m()];
        RankVector { dims, r }
    }

    fn satisfies_bounds(&self) -> bool {
        (0..self.dims.degrees()).all(|i| self.incoming(i) + self.outgoing(i) <= self.dims[i])
    }

    fn incoming(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.r[i - 1]
        }
    }

    fn outgoing(&self, i: usize) -> usize {
        self.r.get(i).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &GradedDims {
        &self.dims
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.r
    }

    /// `|r|`, the rank function of the poset.
    pub fn len_sum(&self) -> usize {
        self.r.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|&x| x == 0)
    }

    fn same_context(&self, other: &RankVector) -> Result<(), Error> {
        if self.dims == other.dims {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn leq(&self, other: &RankVector) -> Result<bool, Error> {
        self.same_context(other)?;
        Ok(self.r.iter().zip(&other.r).all(|(a, b)| a <= b))
    }

    /// Strictly below in the coordinatewise order.
    pub fn lt(&self, other: &RankVector) -> Result<bool, Error> {
        Ok(self.leq(other)? && self != other)
    }

    /// Coordinatewise minimum; always in `R`.
    pub fn meet(&self, other: &RankVector) -> Result<RankVector, Error> {
        self.same_context(other)?;
        let r = self
            .r
            .iter()
            .zip(&other.r)
            .map(|(a, b)| *a.min(b))
            .collect();
        Ok(RankVector {
            dims: self.dims.clone(),
            r,
        })
    }

    /// `h_i = n_i - r_i - r_(i+1)`: cohomology dimensions of any point of
    /// the stratum.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..self.dims.degrees())
            .map(|i| self.dims[i] - self.incoming(i) - self.outgoing(i))
            .collect()
    }

    /// No two consecutive cohomology dimensions are both nonzero.
    pub fn sparse_criterion(&self) -> bool {
        is_sparse(&self.cohomology_dims())
    }

    /// Maximality by direct comparison against every element of `R`.
    pub fn is_maximal(&self) -> bool {
        enumerate_r(&self.dims)
            .iter()
            .all(|s| !self.lt(s).expect("same context"))
    }

    /// `r + e_k` if it stays in `R`.
    pub fn raised(&self, k: usize) -> Option<RankVector> {
        let mut r = self.r.clone();
        r[k] += 1;
        RankVector::new(self.dims.clone(), r).ok()
    }

    /// Coordinatewise `self - base`, viewed as a rank vector over the
    /// cohomology of `base`.
    pub fn relative_to(&self, base: &RankVector) -> Result<RankVector, Error> {
        if !base.leq(self)? {
            return Err(Error::InvalidChain(format!("{base} is not below {self}")));
        }
        let h = GradedDims::possibly_empty(base.cohomology_dims())?;
        RankVector::new(h, self.r.iter().zip(&base.r).map(|(a, b)| a - b).collect())
    }

    /// `base + rel`, where `rel` lives over the cohomology of `base`.
    pub fn offset_by(base: &RankVector, rel: &RankVector) -> Result<RankVector, Error> {
        if rel.dims.as_slice() != base.cohomology_dims().as_slice() {
            return Err(Error::ContextMismatch);
        }
        RankVector::new(
            base.dims.clone(),
            base.r.iter().zip(&rel.r).map(|(a, b)| a + b).collect(),
        )
    }

    /// The block complex whose `D_k` is an identity of size `r_k` sitting in
    /// rows `0..r_k` and in the columns just past the image of `D_(k-1)`.
    pub fn canonical_representative<F: Field>(&self) -> Complex<F> {
        let diffs = (0..self.dims.m())
            .map(|k| {
                let mut d = Matrix::zeros(self.dims[k + 1], self.dims[k]);
                let off = self.incoming(k);
                for j in 0..self.r[k] {
                    d[(j, off + j)] = F::one();
                }
                d
            })
            .collect();
        Complex::new(self.dims.clone(), diffs).expect("canonical blocks compose to zero")
    }

    /// Dimension of the stratum, computed as the dimension of the orbit of
    /// the canonical representative.
    pub fn stratum_dim(&self) -> usize {
        self.dims.group_dim() - self.canonical_representative::<Q>().stabilizer_dim()
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.r)
    }
}

impl fmt::Debug for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Every element of `R`, in lexicographic order.
pub fn enumerate_r(dims: &GradedDims) -> Vec<RankVector> {
    let m = dims.m();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(dims: &GradedDims, cur: &mut Vec<usize>, out: &mut Vec<RankVector>) {
        let k = cur.len();
        if k == dims.m() {
            out.push(RankVector {
                dims: dims.clone(),
                r: cur.clone(),
            });
            return;
        }
        // r_k is bounded by what is left of n_k after the incoming rank,
        // and by n_(k+1).
        let prev = if k == 0 { 0 } else { cur[k - 1] };
        let cap = (dims[k] - prev).min(dims[k + 1]);
        for v in 0..=cap {
            cur.push(v);
            rec(dims, cur, out);
            cur.pop();
        }
    }
    rec(dims, &mut cur, &mut out);
    out
}

pub fn maximal_elements(dims: &GradedDims) -> Vec<RankVector> {
    enumerate_r(dims)
        .into_iter()
        .filter(|r| r.is_maximal())
        .collect()
}

/// A strictly increasing chain of non-maximal rank vectors, optionally
/// followed by a maximal terminal element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    steps: Vec<RankVector>,
    terminal: Option<RankVector>,
}

impl Chain {
    pub fn new(steps: Vec<RankVector>, terminal: Option<RankVector>) -> Result<Self, Error> {
        for w in steps.windows(2) {
            if !w[0].lt(&w[1])? {
                return Err(Error::InvalidChain(format!(
                    "{} is not below {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(s) = steps.iter().find(|s| s.is_maximal()) {
            return Err(Error::InvalidChain(format!("{s} is maximal")));
        }
        if let Some(t) = &terminal {
            if !t.is_maximal() {
                return Err(Error::InvalidChain(format!("terminal {t} is not maximal")));
            }
            if let Some(last) = steps.last() {
                if !last.lt(t)? {
                    return Err(Error::InvalidChain(format!("{last} is not below {t}")));
                }
            }
        }
        Ok(Chain { steps, terminal })
    }

    pub fn steps(&self) -> &[RankVector] {
        &self.steps
    }

    pub fn terminal(&self) -> Option<&RankVector> {
        self.terminal.as_ref()
    }

    /// Steps followed by the terminal element.
    pub fn cumulative(&self) -> impl Iterator<Item = &RankVector> {
        self.steps.iter().chain(self.terminal.iter())
    }

    pub fn first(&self) -> Option<&RankVector> {
        self.cumulative().next()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.steps.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")?;
        if let Some(t) = &self.terminal {
            write!(f, " -> {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All chains `r1 < ... < rk` in `R \ R^max` completed by a maximal
/// terminal element above `rk`. In the projective variant the first
/// element of the chain (the terminal, when the chain is empty) must be
/// nonzero.
pub fn enumerate_chains(dims: &GradedDims, projective: bool) -> Vec<Chain> {
    let all = enumerate_r(dims);
    let (maxes, inner): (Vec<_>, Vec<_>) = all.into_iter().partition(|r| r.is_maximal());
    let mut out = Vec::new();
    let mut cur: Vec<RankVector> = Vec::new();
    fn rec(
        inner: &[RankVector],
        maxes: &[RankVector],
        cur: &mut Vec<RankVector>,
        out: &mut Vec<Chain>,
    ) {
        for t in maxes {
            if cur.last().is_none_or(|l| l.lt(t).unwrap()) {
                out.push(Chain {
                    steps: cur.clone(),
                    terminal: Some(t.clone()),
                });
            }
        }
        for s in inner {
            if cur.last().is_none_or(|l| l.lt(s).unwrap()) {
                cur.push(s.clone());
                rec(inner, maxes, cur, out);
                cur.pop();
            }
        }
    }
    rec(&inner, &maxes, &mut cur, &mut out);
    if projective {
        out.retain(|c| c.first().is_some_and(|f| !f.is_zero()));
    }
    out.sort();
    out
}

/// Graphviz digraph of the covering relations `r -> r + e_k` of `R`.
/// Maximal elements are drawn as double circles.
pub fn hasse_dot(dims: &GradedDims) -> String {
    let all = enumerate_r(dims);
    let id = |r: &RankVector| {
        let parts: Vec<String> = r.r.iter().map(|x| x.to_string()).collect();
        format!("\"r_{}\"", parts.join("_"))
    };
    let mut s = String::new();
    s.push_str("digraph R {\n  rankdir=BT;\n");
    for r in &all {
        let shape = if r.is_maximal() {
            "doublecircle"
        } else {
            "circle"
        };
        s.push_str(&format!(
            "  {} [label=\"{}\", shape={}];\n",
            id(r),
            r,
            shape
        ));
    }
    for r in &all {
        for k in 0..r.r.len() {
            if let Some(up) = r.raised(k) {
                s.push_str(&format!("  {} -> {};\n", id(r), id(&up)));
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(n: &[usize]) -> GradedDims {
        GradedDims::new(n.to_vec()).unwrap()
    }

    fn rv(n: &[usize], r: &[usize]) -> RankVector {
        RankVector::new(dims(n), r.to_vec()).unwrap()
    }

    fn slices(v: &[RankVector]) -> Vec<Vec<usize>> {
        v.iter().map(|r| r.as_slice().to_vec()).collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            slices(&enumerate_r(&dims(&[1, 1, 1]))),
            vec![vec![0, 0], vec![0, 1], vec![1, 0]]
        );
        assert_eq!(slices(&enumerate_r(&dims(&[1]))), vec![Vec::<usize>::new()]);
        assert_eq!(
            slices(&enumerate_r(&dims(&[1, 2, 1]))),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn rejects_out_of_poset() {
        assert!(matches!(
            RankVector::new(dims(&[1, 1, 1]), vec![1, 1]),
            Err(Error::NotInPoset(_))
        ));
        assert!(RankVector::new(dims(&[1, 1]), vec![0, 0]).is_err());
    }

    #[test]
    fn order_and_meet() {
        let n = [1, 2, 1];
        assert_eq!(
            rv(&n, &[1, 0]).meet(&rv(&n, &[0, 1])).unwrap(),
            rv(&n, &[0, 0])
        );
        assert!(rv(&n, &[0, 1]).leq(&rv(&n, &[1, 1])).unwrap());
        let r = rv(&n, &[1, 0]);
        assert_eq!(r.meet(&r).unwrap(), r);
        assert_eq!(r.leq(&rv(&[1, 1, 1], &[1, 0])), Err(Error::ContextMismatch));
    }

    #[test]
    fn maximal_and_sparse_examples() {
        let a = rv(&[1, 1, 1], &[1, 0]);
        assert_eq!(a.cohomology_dims(), vec![0, 0, 1]);
        assert!(a.sparse_criterion() && a.is_maximal());
        let z = rv(&[1, 1, 1], &[0, 0]);
        assert_eq!(z.cohomology_dims(), vec![1, 1, 1]);
        assert!(!z.sparse_criterion() && !z.is_maximal());
        let b = rv(&[1, 2, 1], &[1, 1]);
        assert_eq!(b.cohomology_dims(), vec![0, 0, 0]);
        assert!(b.sparse_criterion() && b.is_maximal());
        assert_eq!(rv(&[2, 2], &[1]).cohomology_dims(), vec![1, 1]);
        assert_eq!(rv(&[2, 2], &[2]).cohomology_dims(), vec![0, 0]);
        assert_eq!(rv(&[3], &[]).cohomology_dims(), vec![3]);
    }

    #[test]
    fn canonical_representatives() {
        let c = rv(&[2, 2], &[1]).canonical_representative::<Q>();
        assert_eq!(
            c.diff(0).to_rows(),
            vec![
                vec![Q::from_integer(1.into()), Q::from_integer(0.into())],
                vec![Q::from_integer(0.into()), Q::from_integer(0.into())]
            ]
        );
        let c = rv(&[1, 2, 1], &[1, 1]).canonical_representative::<Q>();
        assert_eq!(
            c.diff(0).column(0),
            vec![Q::from_integer(1.into()), Q::from_integer(0.into())]
        );
        assert_eq!(
            c.diff(1).row(0),
            &[Q::from_integer(0.into()), Q::from_integer(1.into())]
        );
        assert!(rv(&[2, 3], &[0]).canonical_representative::<Q>().is_zero());
    }

    #[test]
    fn stratum_dims() {
        assert_eq!(rv(&[2, 2], &[0]).stratum_dim(), 0);
        assert_eq!(rv(&[2, 2], &[1]).stratum_dim(), 3);
        assert_eq!(rv(&[2, 2], &[2]).stratum_dim(), 4);
    }

    #[test]
    fn chains_111() {
        let chains = enumerate_chains(&dims(&[1, 1, 1]), false);
        let shown: Vec<String> = chains.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            shown,
            vec![
                "{} -> (0,1)",
                "{} -> (1,0)",
                "{(0,0)} -> (0,1)",
                "{(0,0)} -> (1,0)"
            ]
        );
        let proj = enumerate_chains(&dims(&[1, 1, 1]), true);
        assert_eq!(proj.len(), 2);
        assert!(proj.iter().all(|c| c.steps().is_empty()));
    }

    #[test]
    fn chains_trivial() {
        let chains = enumerate_chains(&dims(&[1]), false);
        assert_eq!(chains.len(), 1);
        assert!(chains[0].steps().is_empty());
        assert!(enumerate_chains(&dims(&[1]), true).is_empty());
    }

    #[test]
    fn chain_validation() {
        let n = [2, 2];
        assert!(Chain::new(vec![rv(&n, &[1]), rv(&n, &[0])], None).is_err());
        assert!(Chain::new(vec![rv(&n, &[2])], None).is_err());
        assert!(Chain::new(vec![rv(&n, &[1])], Some(rv(&n, &[1]))).is_err());
        assert!(Chain::new(vec![rv(&n, &[0]), rv(&n, &[1])], Some(rv(&n, &[2]))).is_ok());
    }

    #[test]
    fn hasse_counts() {
        let count = |n: &[usize]| {
            let dot = hasse_dot(&dims(n));
            let edges = dot.lines().filter(|l| l.contains("->")).count();
            let nodes = dot.lines().filter(|l| l.contains("label=")).count();
            (nodes, edges)
        };
        assert_eq!(count(&[1, 1, 1]), (3, 2));
        assert_eq!(count(&[1]), (1, 0));
        assert_eq!(count(&[1, 2, 1]), (4, 4));
    }
}
