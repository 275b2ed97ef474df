//! Property tests over randomly sampled complexes, poset elements, spectral
//! sequences and families.

use cocom_core::complexes::{normal_dim, DeltaAssembly};
use cocom_core::degeneration::{dvr_decompose, limit_complete_complex};
use cocom_core::spectral::{canonical_ss_from_chain, SpectralSequence, Variant};
use cocom_core::strata::{enumerate_chains, enumerate_r};
use cocom_core::verify::{
    case_rng, random_dims, random_planted_family, random_point, random_rank_vector,
};
use cocom_core::{Complex, GradedDims, RankVector, Q};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn euler(n: &[usize]) -> i64 {
    n.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

fn sample(seed: u64, bound: &[usize]) -> Complex<Q> {
    let mut rng = case_rng(seed, 0);
    let dims = random_dims(&mut rng, bound);
    let r = random_rank_vector(&mut rng, &dims);
    random_point(&mut rng, &r)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn complex_identities(seed in any::<u64>()) {
        let c = sample(seed, &[3, 3, 3, 3]);
        let n = c.dims().as_slice();
        let r = c.rank_vector();
        let rv = r.as_slice();
        for i in 0..n.len() {
            let inc = if i > 0 { rv[i - 1] } else { 0 };
            let out = rv.get(i).copied().unwrap_or(0);
            prop_assert!(inc + out <= n[i]);
        }
        let h = c.cohomology().h;
        prop_assert_eq!(euler(&h), euler(n));
        let tangent = c.morphism_space().len();
        let orbit = c.nullhomotopic_space().len();
        prop_assert_eq!(tangent - orbit, normal_dim(&h));
        prop_assert_eq!(orbit + c.stabilizer_dim(), c.dims().group_dim());
        prop_assert_eq!(c.chart_jacobian_rank(), orbit + normal_dim(&h));
    }

    #[test]
    fn splitting_reaches_the_canonical_representative(seed in any::<u64>()) {
        let c = sample(seed, &[3, 3, 3, 3]);
        let s = c.split_canonical();
        let moved = c.conjugate(&s.g, &s.g_inv).unwrap();
        prop_assert_eq!(moved, s.rank_vector.canonical_representative::<Q>());
        for (g, gi) in s.g.components.iter().zip(&s.g_inv.components) {
            prop_assert_eq!(g.mul(gi), cocom_core::Matrix::identity(g.rows()));
        }
    }

    #[test]
    fn d_delta_ranks_add(seed in any::<u64>()) {
        let c = sample(seed, &[3, 3, 3, 3]);
        let mut rng = case_rng(seed, 1);
        let h = GradedDims::possibly_empty(c.cohomology().h).unwrap();
        let rel = random_rank_vector(&mut rng, &h);
        let delta = random_point(&mut rng, &rel);
        match c.assemble_d_delta(&delta.as_map()).unwrap() {
            DeltaAssembly::Complex(d) => {
                let got = d.rank_vector();
                let want = RankVector::offset_by(&c.rank_vector(), &rel).unwrap();
                prop_assert_eq!(got, want);
            }
            DeltaAssembly::NotAComplex { index, .. } => {
                prop_assert!(false, "delta is a complex but D_delta fails at {}", index);
            }
        }
    }

    #[test]
    fn meet_is_the_greatest_lower_bound(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 0);
        let dims = random_dims(&mut rng, &[3, 3, 3, 3]);
        let all = enumerate_r(&dims);
        let a = all.choose(&mut rng).unwrap();
        let b = all.choose(&mut rng).unwrap();
        let m = a.meet(b).unwrap();
        prop_assert!(all.contains(&m));
        let lower: Vec<_> = all
            .iter()
            .filter(|x| x.leq(a).unwrap() && x.leq(b).unwrap())
            .collect();
        prop_assert!(lower.iter().all(|x| x.leq(&m).unwrap()));
        prop_assert!(lower.contains(&&m));
    }

    #[test]
    fn canonical_representatives_and_stratum_dims(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 0);
        let dims = random_dims(&mut rng, &[3, 3, 3, 3]);
        let r = random_rank_vector(&mut rng, &dims);
        prop_assert_eq!(r.canonical_representative::<Q>().rank_vector(), r.clone());
        prop_assert_eq!(r.stratum_dim() == 0, r.is_zero());
    }

    #[test]
    fn pages_shrink_and_keep_euler(seed in any::<u64>()) {
        // D^0 a random complex, D^1 a random complex on its cohomology.
        let c = sample(seed, &[3, 3, 3, 3]);
        let mut rng = case_rng(seed, 2);
        let h = GradedDims::possibly_empty(c.cohomology().h).unwrap();
        let rel = random_rank_vector(&mut rng, &h);
        let ss = SpectralSequence::new(vec![c.clone(), rel.canonical_representative::<Q>()]).unwrap();
        let pages = ss.pages();
        for w in pages.windows(2) {
            let (a, b) = (w[0].dims().as_slice(), w[1].dims().as_slice());
            prop_assert_eq!(euler(a), euler(b));
            if !w[0].complex.is_zero() {
                prop_assert!(w[1].dims().total() < w[0].dims().total());
            }
        }
        let nonzero = ss.differentials().filter(|d| !d.is_zero()).count();
        prop_assert!(nonzero <= c.dims().total());
    }

    #[test]
    fn label_round_trip_and_normalize_idempotent(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 0);
        let dims = random_dims(&mut rng, &[3, 3, 3]);
        let chains = enumerate_chains(&dims, false);
        let l = chains.choose(&mut rng).unwrap();
        let cc = canonical_ss_from_chain::<Q>(l, Variant::Affine).unwrap();
        prop_assert_eq!(&cc.stratum_label(), l);
        let again = cc.spectral_sequence().normalize(Variant::Affine).unwrap();
        prop_assert!(again.equals(&cc));
        prop_assert!(chains.contains(&cc.spectral_sequence().stratum_label().unwrap()));
    }

    #[test]
    fn families_split_and_tables_keep_euler(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 0);
        let planted = random_planted_family(&mut rng, &[3, 3, 3, 3], 3);
        let pc = &planted.family;
        let n = pc.dims().as_slice();
        let dec = dvr_decompose(pc);
        let form = dec.block_form(n);
        for (i, want) in form.iter().enumerate() {
            let conj = dec.g[i + 1].mul(&pc.diffs()[i]).mul(&dec.g_inv[i]);
            prop_assert_eq!(&conj, want);
        }
        prop_assert_eq!(dec.block_multiset(), planted.blocks.clone());
        let limit = limit_complete_complex(pc);
        for row in &limit.table.rows {
            prop_assert_eq!(euler(&row.dims), euler(n));
        }
        let total: usize = limit.ss.differentials().map(|d| d.rank_vector().len_sum()).sum();
        prop_assert_eq!(total, pc.generic_rank_vector().len_sum());
    }
}
