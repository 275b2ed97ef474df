//! Verification suites: exhaustive enumeration over small prime fields and
//! seeded random batteries over the rationals and over one-parameter
//! families. Every suite is a pure function of its parameters apart from
//! the recorded wall time.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{normal_dim, Complex, DeltaAssembly, GradedDims, GradedMap};
use crate::degeneration::{
    dvr_decompose, filtered_oracle, limit_complete_complex, truncation_for, PolyComplex,
};
use crate::exactlin::{q, Fp, LocalFn, Matrix, Poly, Q};
use crate::strata::{enumerate_r, RankVector};
use crate::Error;

/// Largest number of candidate differentials the census will enumerate.
pub const CENSUS_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: usize,
    /// Replays the case together with the suite parameters.
    pub seed: Option<u64>,
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// Per-suite summary lines (census counts and the like).
    pub notes: Vec<String>,
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &SuiteReport) -> bool {
        self.suite == other.suite
            && self.parameters == other.parameters
            && self.cases == other.cases
            && self.failures == other.failures
            && self.notes == other.notes
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        writeln!(
            f,
            "suite {} ({}): {} cases, {} failures, {} ms: {status}",
            self.suite,
            self.parameters,
            self.cases,
            self.failures.len(),
            self.wall_ms
        )?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for x in &self.failures {
            writeln!(f, "  case {}: {} [{}]", x.case, x.detail, x.instance)?;
        }
        Ok(())
    }
}

/// The generator for case `case` of a suite run with `seed`.
pub fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

// ---------------------------------------------------------------------------
// Finite-field census

/// Enumerates every differential on `dims` over `F_P`.
///
/// Checks that each rank vector lies in `R`, that every `r in R` occurs,
/// and that the differentials with rank vector `r` form exactly the orbit
/// of the canonical representative under `GL(V^0) x ... x GL(V^m)(F_P)`,
/// the orbit being computed as the closure under transvections and
/// scalings by a primitive root, which generate each `GL_n(F_P)`.
///
/// Orbit statements over a finite field need justification: over a field
/// every complex is a direct sum of shifted copies of `0 -> k -> 0` and
/// `k -> k`, and by Krull–Schmidt the multiplicities, hence the
/// isomorphism class, are determined by `(n, r)` whatever the field is.
/// So the rank-vector classes are single orbits over `F_P` as well, and
/// the census tests a true statement rather than one valid only over an
/// algebraically closed field.
pub fn exhaustive_field_census<const P: u32>(dims: &GradedDims) -> Result<SuiteReport, Error> {
    let start = Instant::now();
    let n = dims.as_slice();
    let entries = dims.hom_dim();
    let candidates = (P as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    if candidates > CENSUS_BUDGET {
        return Err(Error::BudgetExceeded {
            candidates,
            budget: CENSUS_BUDGET,
        });
    }
    let shapes: Vec<(usize, usize)> = (0..dims.m()).map(|i| (n[i + 1], n[i])).collect();
    let decode = |mut code: u128| -> Vec<u8> {
        (0..entries)
            .map(|_| {
                let v = (code % P as u128) as u8;
                code /= P as u128;
                v
            })
            .collect()
    };

    let mut classes: BTreeMap<RankVector, HashSet<Vec<u8>>> = BTreeMap::new();
    let mut failures = Vec::new();
    let poset = enumerate_r(dims);
    for code in 0..candidates {
        let flat = decode(code);
        let Ok(c) = Complex::new(dims.clone(), unflatten::<P>(&flat, &shapes)) else {
            continue;
        };
        let r = c.rank_vector();
        if !poset.contains(&r) {
            failures.push(Failure {
                case: code as usize,
                seed: None,
                instance: format!("{c:?}"),
                detail: format!("rank vector {r} outside R"),
            });
        }
        classes.entry(r).or_default().insert(flat);
    }
    let points: usize = classes.values().map(|s| s.len()).sum();

    let generators = group_generators::<P>(n);
    let orbit_checks: Vec<(RankVector, Result<usize, String>)> = poset
        .par_iter()
        .map(|r| {
            let Some(class) = classes.get(r) else {
                return (r.clone(), Err("stratum is empty".to_string()));
            };
            let rep = flatten(&r.canonical_representative::<Fp<P>>());
            let orbit = orbit_closure::<P>(&rep, &shapes, &generators);
            let res = if orbit.len() != class.len() {
                Err(format!(
                    "orbit has {} points, class has {}",
                    orbit.len(),
                    class.len()
                ))
            } else if let Some(x) = orbit.iter().find(|x| !class.contains(*x)) {
                Err(format!("orbit point {x:?} has a different rank vector"))
            } else {
                Ok(orbit.len())
            };
            (r.clone(), res)
        })
        .collect();

    let mut notes = vec![format!(
        "{points} differentials with D^2 = 0 out of {candidates}"
    )];
    for (k, (r, res)) in orbit_checks.into_iter().enumerate() {
        match res {
            Ok(size) => notes.push(format!("r = {r}: {size} points, one orbit")),
            Err(detail) => failures.push(Failure {
                case: k,
                seed: None,
                instance: format!("r = {r}"),
                detail,
            }),
        }
    }
    Ok(SuiteReport {
        suite: "census".into(),
        parameters: format!("dims={dims} p={P}"),
        cases: points,
        failures,
        notes,
        wall_ms: start.elapsed().as_millis(),
    })
}

fn unflatten<const P: u32>(flat: &[u8], shapes: &[(usize, usize)]) -> Vec<Matrix<Fp<P>>> {
    let mut it = flat.iter();
    shapes
        .iter()
        .map(|&(r, c)| Matrix::from_fn(r, c, |_, _| Fp::new(*it.next().unwrap() as i64)))
        .collect()
}

fn flatten<const P: u32>(c: &Complex<Fp<P>>) -> Vec<u8> {
    c.diffs()
        .iter()
        .flat_map(|d| d.entries().iter().map(|x| x.value() as u8))
        .collect()
}

/// `(degree, g, g^(-1))` for transvections and primitive-root scalings.
type Generator<const P: u32> = (usize, Matrix<Fp<P>>, Matrix<Fp<P>>);

fn group_generators<const P: u32>(n: &[usize]) -> Vec<Generator<P>> {
    let w = Fp::<P>::primitive_root();
    let mut out = Vec::new();
    for (i, &k) in n.iter().enumerate() {
        for a in 0..k {
            for b in (0..k).filter(|&b| b != a) {
                let mut g = Matrix::identity(k);
                g[(a, b)] = Fp::one();
                let mut g_inv = Matrix::identity(k);
                g_inv[(a, b)] = -Fp::<P>::one();
                out.push((i, g, g_inv));
            }
            let mut g = Matrix::identity(k);
            g[(a, a)] = w;
            let mut g_inv = Matrix::identity(k);
            g_inv[(a, a)] = w.inv().expect("primitive root is nonzero");
            out.push((i, g, g_inv));
        }
    }
    out
}

/// Closure of `start` under the generators acting by
/// `D_(i-1) -> g D_(i-1)`, `D_i -> D_i g^(-1)`. In a finite group the
/// forward closure is the whole orbit.
fn orbit_closure<const P: u32>(
    start: &[u8],
    shapes: &[(usize, usize)],
    generators: &[Generator<P>],
) -> HashSet<Vec<u8>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    let m = shapes.len();
    while let Some(flat) = queue.pop_front() {
        let diffs = unflatten::<P>(&flat, shapes);
        for (i, g, g_inv) in generators {
            let mut next = diffs.clone();
            if *i > 0 {
                next[i - 1] = g.mul(&next[i - 1]);
            }
            if *i < m {
                next[*i] = next[*i].mul(g_inv);
            }
            let code: Vec<u8> = next
                .iter()
                .flat_map(|d| d.entries().iter().map(|x| x.value() as u8))
                .collect();
            if seen.insert(code.clone()) {
                queue.push_back(code);
            }
        }
    }
    seen
}

// ---------------------------------------------------------------------------
// Random complexes over Q

/// Random graded dimensions with `n_i <= bound[i]` and between one and
/// `bound.len()` degrees; zero entries are allowed.
pub fn random_dims(rng: &mut impl Rng, bound: &[usize]) -> GradedDims {
    loop {
        let len = rng.gen_range(1..=bound.len());
        let n: Vec<usize> = bound[..len].iter().map(|&b| rng.gen_range(0..=b)).collect();
        if let Ok(d) = GradedDims::new(n) {
            return d;
        }
    }
}

/// An integral matrix of determinant 1 and its inverse.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> (Matrix<Q>, Matrix<Q>) {
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => q(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Equal => Q::one(),
        std::cmp::Ordering::Less => Q::zero(),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => q(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Equal => Q::one(),
        std::cmp::Ordering::Greater => Q::zero(),
    });
    let mut g = lower.mul(&upper);
    let mut rows: Vec<usize> = (0..n).collect();
    rows.shuffle(rng);
    g = g.select_rows(&rows);
    let g_inv = g.inverse().expect("unimodular");
    (g, g_inv)
}

/// A random point of the stratum `r`: the canonical representative moved
/// by a random integral automorphism.
pub fn random_point(rng: &mut impl Rng, r: &RankVector) -> Complex<Q> {
    let (g, g_inv): (Vec<_>, Vec<_>) = r
        .dims()
        .as_slice()
        .iter()
        .map(|&k| random_unimodular(rng, k))
        .unzip();
    r.canonical_representative::<Q>()
        .conjugate(&GradedMap::new(0, g), &GradedMap::new(0, g_inv))
        .expect("conjugate of a complex")
}

pub fn random_rank_vector(rng: &mut impl Rng, dims: &GradedDims) -> RankVector {
    enumerate_r(dims).choose(rng).expect("R contains 0").clone()
}

/// Every property of a single complex: poset membership, Euler
/// characteristic, homotopy and orbit identities, the canonical splitting,
/// additivity of `D_delta` and the chart rank. Returns the violated ones.
pub fn check_complex(c: &Complex<Q>, rng: &mut impl Rng) -> Vec<String> {
    let mut bad = Vec::new();
    let dims = c.dims();
    let r = c.rank_vector();
    if !enumerate_r(dims).contains(&r) {
        bad.push(format!("rank vector {r} outside R"));
    }
    let coh = c.cohomology();
    let h = coh.h.clone();
    let euler: i64 = h
        .iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum();
    if euler != dims.euler() {
        bad.push(format!("Euler characteristic of h = {h:?} differs from n"));
    }
    let tangent = c.morphism_space().len();
    let orbit = c.nullhomotopic_space().len();
    let normal = normal_dim(&h);
    if tangent != orbit + normal {
        bad.push(format!(
            "homotopy identity: {tangent} - {orbit} != {normal}"
        ));
    }
    let stab = c.stabilizer_dim();
    if orbit + stab != dims.group_dim() {
        bad.push(format!(
            "orbit identity: {orbit} + {stab} != {}",
            dims.group_dim()
        ));
    }
    let split = c.split_canonical();
    match c.conjugate(&split.g, &split.g_inv) {
        Ok(canon) if canon == r.canonical_representative() => {}
        _ => bad.push("split_canonical does not reach the canonical representative".into()),
    }
    for (g, gi) in split.g.components.iter().zip(&split.g_inv.components) {
        if g.mul(gi) != Matrix::identity(g.rows()) {
            bad.push("split_canonical returned a non-inverse pair".into());
        }
    }
    if let Ok(hdims) = GradedDims::new(h.clone()) {
        let r_delta = random_rank_vector(rng, &hdims);
        let delta = random_point(rng, &r_delta);
        match c.assemble_d_delta(&delta.as_map()) {
            Ok(DeltaAssembly::Complex(d)) => {
                let want: Vec<usize> = r
                    .as_slice()
                    .iter()
                    .zip(r_delta.as_slice())
                    .map(|(a, b)| a + b)
                    .collect();
                if d.rank_vector().as_slice() != want.as_slice() {
                    bad.push(format!(
                        "rank of D_delta is {}, expected {r} + {r_delta}",
                        d.rank_vector()
                    ));
                }
            }
            Ok(DeltaAssembly::NotAComplex { index, .. }) => bad.push(format!(
                "D_delta fails D^2 = 0 at {index} for a complex delta"
            )),
            Err(e) => bad.push(format!("assemble_d_delta: {e}")),
        }
    }
    let chart = c.chart_jacobian_rank();
    if chart != orbit + normal {
        bad.push(format!("chart rank {chart} != {orbit} + {normal}"));
    }
    bad
}

pub fn random_rational_suite(seed: u64, bound: &[usize], cases: usize) -> SuiteReport {
    let start = Instant::now();
    let mut failures: Vec<Failure> = (0..cases)
        .into_par_iter()
        .flat_map_iter(|case| {
            let mut rng = case_rng(seed, case);
            let dims = random_dims(&mut rng, bound);
            let r = random_rank_vector(&mut rng, &dims);
            let c = random_point(&mut rng, &r);
            let instance = format!("{c:?}");
            check_complex(&c, &mut rng)
                .into_iter()
                .map(move |detail| Failure {
                    case,
                    seed: Some(seed),
                    instance: instance.clone(),
                    detail,
                })
        })
        .collect();
    failures.sort_by_key(|f| f.case);
    SuiteReport {
        suite: "random".into(),
        parameters: format!("seed={seed} bound={bound:?}"),
        cases,
        failures,
        notes: Vec::new(),
        wall_ms: start.elapsed().as_millis(),
    }
}

// ---------------------------------------------------------------------------
// Families

/// A family with known block structure.
#[derive(Clone, Debug)]
pub struct PlantedFamily {
    pub family: PolyComplex,
    /// Sorted `(degree, exponent)` of the planted blocks.
    pub blocks: Vec<(usize, u32)>,
}

impl PlantedFamily {
    pub fn max_exponent(&self) -> usize {
        self.blocks.iter().map(|b| b.1 as usize).max().unwrap_or(0)
    }
}

/// The canonical representative of `r` with its `k`-th unit entry (in
/// degree-then-row order) replaced by `t^exponents[k]`.
pub fn block_family(r: &RankVector, exponents: &[u32]) -> PlantedFamily {
    let canon = r.canonical_representative::<Q>();
    let mut k = 0;
    let mut blocks = Vec::new();
    let diffs = canon
        .diffs()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            Matrix::from_fn(d.rows(), d.cols(), |x, y| {
                if d[(x, y)].is_zero() {
                    LocalFn::zero()
                } else {
                    let a = exponents[k];
                    k += 1;
                    blocks.push((i, a));
                    LocalFn::t_pow(a as usize)
                }
            })
        })
        .collect();
    blocks.sort();
    PlantedFamily {
        family: PolyComplex::new(r.dims().clone(), diffs).expect("block family is a complex"),
        blocks,
    }
}

/// `g(t) B(t) g(t)^(-1)` for a random block family `B` with at least one
/// block, exponents at most `max_exp`, and `g = M0 + t M1`, `M0`
/// unimodular. Needs `bound.len() >= 2` and positive bounds.
pub fn random_planted_family(rng: &mut impl Rng, bound: &[usize], max_exp: u32) -> PlantedFamily {
    let len = rng.gen_range(2..=bound.len());
    let n: Vec<usize> = bound[..len].iter().map(|&b| rng.gen_range(1..=b)).collect();
    let dims = GradedDims::new(n).expect("positive dims");
    let nonzero: Vec<RankVector> = enumerate_r(&dims)
        .into_iter()
        .filter(|r| !r.is_zero())
        .collect();
    let r = nonzero
        .choose(rng)
        .expect("positive dims admit a nonzero differential")
        .clone();
    let exps: Vec<u32> = (0..r.len_sum())
        .map(|_| rng.gen_range(0..=max_exp))
        .collect();
    let planted = block_family(&r, &exps);
    let (g, g_inv): (Vec<_>, Vec<_>) = dims
        .as_slice()
        .iter()
        .map(|&k| {
            let (m0, _) = random_unimodular(rng, k);
            let m1 = Matrix::from_fn(k, k, |_, _| {
                if rng.gen_bool(0.3) {
                    q(rng.gen_range(-1..=1))
                } else {
                    Q::zero()
                }
            });
            let g = Matrix::from_fn(k, k, |i, j| {
                LocalFn::from_poly(Poly::new(vec![m0[(i, j)].clone(), m1[(i, j)].clone()]))
            });
            let g_inv = g.inverse_local().expect("invertible at t = 0");
            (g, g_inv)
        })
        .unzip();
    let family = PolyComplex::new(
        dims,
        planted
            .family
            .complex()
            .conjugate(&GradedMap::new(0, g), &GradedMap::new(0, g_inv))
            .expect("conjugate of a complex")
            .diffs()
            .to_vec(),
    )
    .expect("conjugate of a complex");
    PlantedFamily {
        family,
        blocks: planted.blocks,
    }
}

/// Every property of a single family. `oracle_n` is the truncation order
/// handed to the filtered oracle.
pub fn check_family(planted: &PlantedFamily, oracle_n: usize, rng: &mut impl Rng) -> Vec<String> {
    let pc = &planted.family;
    let mut bad = Vec::new();
    let dims = pc.dims().as_slice();
    let dec = dvr_decompose(pc);

    let conj = pc
        .complex()
        .conjugate(
            &GradedMap::new(0, dec.g.clone()),
            &GradedMap::new(0, dec.g_inv.clone()),
        )
        .expect("shapes agree");
    if conj.diffs() != dec.block_form(dims).as_slice() {
        bad.push("g D g^-1 differs from the block form".into());
    }
    for (g, gi) in dec.g.iter().zip(&dec.g_inv) {
        if g.mul(gi) != Matrix::identity(g.rows()) {
            bad.push("g_inv is not the inverse of g".into());
        }
    }
    if dec.block_multiset() != planted.blocks {
        bad.push(format!(
            "recovered blocks {:?}, planted {:?}",
            dec.block_multiset(),
            planted.blocks
        ));
    }
    let generic = pc.generic_rank_vector();
    let mult = dec.multiplicities();
    for (i, &r) in generic.as_slice().iter().enumerate() {
        let total: usize = mult
            .iter()
            .filter(|((d, _), _)| *d == i)
            .map(|(_, c)| c)
            .sum();
        if total != r {
            bad.push(format!("degree {i}: {total} blocks but generic rank {r}"));
        }
    }
    let at_zero: Vec<usize> = (0..dims.len() - 1)
        .map(|i| mult.get(&(i, 0)).copied().unwrap_or(0))
        .collect();
    if pc.at_zero().rank_vector().as_slice() != at_zero.as_slice() {
        bad.push("rank vector of D(0) differs from the exponent 0 blocks".into());
    }

    let limit = limit_complete_complex(pc);
    if let Some(label) = &limit.label {
        if label.terminal() != Some(&generic) {
            bad.push(format!(
                "label {label} does not end at the generic rank {generic}"
            ));
        }
    }
    if limit.reduced != generic.is_maximal() {
        bad.push("reduced flag disagrees with maximality of the generic rank".into());
    }
    let nonzero: Vec<Vec<usize>> = limit
        .table
        .rows
        .iter()
        .enumerate()
        .filter(|(a, row)| *a == 0 || row.ranks.iter().any(|&x| x > 0))
        .map(|(_, row)| row.ranks.clone())
        .collect();
    let ss_ranks: Vec<Vec<usize>> = limit
        .ss
        .differentials()
        .map(|d| d.rank_vector().as_slice().to_vec())
        .collect();
    if nonzero != ss_ranks {
        bad.push(format!(
            "page differentials have ranks {ss_ranks:?}, table says {nonzero:?}"
        ));
    }

    match filtered_oracle(pc, oracle_n) {
        Ok(table) if table.agrees_with(&limit.table) => {}
        Ok(table) => bad.push(format!(
            "oracle table\n{table}differs from\n{}",
            limit.table
        )),
        Err(e) => bad.push(format!("oracle: {e}")),
    }

    let reparam = limit_complete_complex(&pc.reparametrize(&Poly::new(vec![q(0), q(1), q(1)])));
    if reparam.table != limit.table || reparam.label != limit.label {
        bad.push("reparametrization t -> t(1+t) changed the limit".into());
    }
    let (g0, g0_inv): (Vec<_>, Vec<_>) = dims.iter().map(|&k| random_unimodular(rng, k)).unzip();
    match pc.conjugate_constant(&g0, &g0_inv) {
        Ok(moved) => {
            let l = limit_complete_complex(&moved);
            if l.table != limit.table || l.label != limit.label || l.reduced != limit.reduced {
                bad.push("constant conjugation changed the limit".into());
            }
        }
        Err(e) => bad.push(format!("constant conjugation: {e}")),
    }
    bad
}

pub fn degeneration_suite(seed: u64, cases: usize) -> SuiteReport {
    degeneration_suite_with(seed, cases, &[3, 3, 3, 3], 4)
}

pub fn degeneration_suite_with(
    seed: u64,
    cases: usize,
    bound: &[usize],
    max_exp: u32,
) -> SuiteReport {
    let start = Instant::now();
    let mut failures: Vec<Failure> = (0..cases)
        .into_par_iter()
        .flat_map_iter(|case| {
            let mut rng = case_rng(seed, case);
            let planted = random_planted_family(&mut rng, bound, max_exp);
            let n = truncation_for(planted.max_exponent());
            let instance = format!("{:?}", planted.family.complex());
            check_family(&planted, n, &mut rng)
                .into_iter()
                .map(move |detail| Failure {
                    case,
                    seed: Some(seed),
                    instance: instance.clone(),
                    detail,
                })
        })
        .collect();
    failures.sort_by_key(|f| f.case);
    SuiteReport {
        suite: "degeneration".into(),
        parameters: format!("seed={seed} bound={bound:?} max_exponent={max_exp}"),
        cases,
        failures,
        notes: Vec::new(),
        wall_ms: start.elapsed().as_millis(),
    }
}
