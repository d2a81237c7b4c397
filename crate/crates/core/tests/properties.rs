mod common;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use common::*;
use multbound_core::betti::{
    betti_a_stable, betti_hochster, betti_oracle, is_cohen_macaulay, stats,
};
use multbound_core::hilbert::{
    finite_length_colon, hilbert_function, hilbert_numerator, summarize, IntPoly,
};
use multbound_core::koszul::koszul_strands;
use multbound_core::linalg::ExactMatrix;
use multbound_core::simplicial::polarize;
use multbound_core::stability::{
    a_exchange_closed_up_to, a_stable_closure, is_a_bounded, is_a_stable,
    is_squarefree_strongly_stable, is_strongly_stable, squarefree_strongly_stable_closure,
    strongly_stable_closure,
};
use multbound_core::{Bound, BoundVector, Monomial, MonomialIdeal, SimplicialComplex};
use proptest::prelude::*;

fn exps(n: usize, max: u32) -> impl Strategy<Value = Exps> {
    prop::collection::vec(0..=max, n)
}

/// `(n, raw generators)` with no constant generator.
fn raw_ideal(max_n: usize, max_e: u32, max_g: usize) -> impl Strategy<Value = (usize, Vec<Exps>)> {
    (1..=max_n).prop_flat_map(move |n| {
        let g = prop::collection::vec(exps(n, max_e), 0..=max_g)
            .prop_map(|v| v.into_iter().filter(|e| e.iter().any(|&x| x > 0)).collect());
        (Just(n), g)
    })
}

fn build(n: usize, raw: &[Exps]) -> MonomialIdeal {
    MonomialIdeal::new(n, raw.iter().cloned().map(Monomial::new)).unwrap()
}

fn rows(i: &MonomialIdeal) -> Vec<Exps> {
    i.gens().iter().map(|g| g.exps().to_vec()).collect()
}

fn complex() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(0u64..(1 << n), 1..=4)))
}

fn bound_vector(n: usize) -> impl Strategy<Value = BoundVector> {
    prop::collection::vec(
        prop_oneof![Just(Bound::Infinite), (2u32..=4).prop_map(Bound::Finite)],
        n,
    )
    .prop_map(|b| BoundVector::new(b).unwrap())
}

fn alternating_sum(i: &MonomialIdeal) -> Vec<i64> {
    let t = betti_oracle(i).unwrap();
    let top = t.entries().keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
    let mut c = vec![0i64; top + 1];
    for (&(k, j), &b) in t.entries() {
        c[j as usize] += if k % 2 == 0 { b as i64 } else { -(b as i64) };
    }
    IntPoly::new(c).coeffs().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn minimal_generators_are_canonical((n, raw) in raw_ideal(4, 3, 10)) {
        let i = build(n, &raw);
        let oracle: Vec<Exps> = divisibility_filter(&raw).into_iter().collect();
        prop_assert_eq!(rows(&i).into_iter().collect::<BTreeSet<_>>(), oracle.into_iter().collect());
        prop_assert_eq!(&build(n, &rows(&i)), &i);
        for w in i.gens().windows(2) {
            prop_assert_eq!(w[0].canonical_cmp(&w[1]), Ordering::Less);
        }
        let shuffled: Vec<Exps> = raw.iter().rev().cloned().collect();
        prop_assert_eq!(build(n, &shuffled), i);
    }

    #[test]
    fn numerator_three_ways((n, raw) in raw_ideal(4, 3, 7)) {
        let i = build(n, &raw);
        let pivot = hilbert_numerator(&i).coeffs().to_vec();
        prop_assert_eq!(&pivot, &hilbert_inclusion_exclusion(n, &rows(&i)));
        prop_assert_eq!(&pivot, &alternating_sum(&i));
    }

    #[test]
    fn hilbert_function_counts_standard_monomials((n, raw) in raw_ideal(3, 3, 5)) {
        let i = build(n, &raw);
        let hf = hilbert_function(&i, 6);
        for d in 0..=6u32 {
            prop_assert_eq!(hf[d as usize], hilbert_function_by_count(n, &rows(&i), d));
        }
    }

    #[test]
    fn summary_factorization((n, raw) in raw_ideal(4, 3, 6)) {
        let i = build(n, &raw);
        let s = summarize(&i).unwrap();
        prop_assert_eq!(s.dim + s.codim, n);
        prop_assert!(s.multiplicity >= 1);
        let power = (0..s.codim).fold(IntPoly::one(), |acc, _| &acc * &IntPoly::one_minus_t_pow(1));
        prop_assert_eq!(&s.reduced_numerator * &power, s.numerator.clone());
        prop_assert_eq!(s.reduced_numerator.eval_at_one(), s.multiplicity);
    }

    #[test]
    fn oracle_matches_upper_koszul((n, raw) in raw_ideal(3, 2, 5)) {
        let i = build(n, &raw);
        let t = betti_oracle(&i).unwrap();
        prop_assert_eq!(t.entries(), &betti_upper_koszul(n, &rows(&i)));
    }

    #[test]
    fn views_round_trip((n, raw) in raw_ideal(4, 3, 6)) {
        let i = build(n, &raw);
        prop_assume!(!i.is_zero());
        let q = betti_oracle(&i).unwrap();
        prop_assert_eq!(q.to_ideal_view().to_quotient_view(), q.clone());
        let s = stats(&q).unwrap();
        prop_assert!(s.pdim <= n);
        prop_assert!(summarize(&i).unwrap().codim <= s.pdim);
    }

    #[test]
    fn colon_and_sum((n, raw) in raw_ideal(4, 3, 6), var in 1usize..=4) {
        let i = build(n, &raw);
        let v = (var - 1) % n + 1;
        let c = i.colon_by_variable(v).unwrap();
        prop_assert!(i.is_subideal_of(&c));
        for g in c.gens() {
            prop_assert!(i.contains(&g.times_var(v)));
        }
        let s = i.sum_with_variable(v).unwrap();
        prop_assert!(i.is_subideal_of(&s));
        // N(I) = N(I + x) + t N(I : x)
        let lhs = hilbert_numerator(&i);
        let rhs = hilbert_numerator(&s) + hilbert_numerator(&c).shift(1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_is_an_involution((n, facets) in complex()) {
        let cx = SimplicialComplex::from_masks(n, facets.clone()).unwrap();
        prop_assert_eq!(cx.alexander_dual().alexander_dual(), cx.clone());
        let dual: BTreeSet<u64> = maximal(&dual_faces_by_enumeration(n, &facets));
        if cx.is_full_simplex() {
            prop_assert!(cx.alexander_dual().is_void());
        } else {
            let lib: BTreeSet<u64> = cx.alexander_dual().facet_masks().iter().copied().collect();
            prop_assert_eq!(lib, dual);
        }
        let i = cx.stanley_reisner_ideal();
        prop_assert_eq!(SimplicialComplex::from_ideal(&i).unwrap(), cx);
    }

    #[test]
    fn hochster_matches_oracle((n, facets) in complex()) {
        let cx = SimplicialComplex::from_masks(n, facets).unwrap();
        let i = cx.stanley_reisner_ideal();
        prop_assume!(!i.is_unit());
        prop_assert_eq!(betti_hochster(&cx), betti_oracle(&i).unwrap());
    }

    #[test]
    fn stanley_reisner_multiplicity((n, facets) in complex()) {
        let cx = SimplicialComplex::from_masks(n, facets).unwrap();
        let i = cx.stanley_reisner_ideal();
        prop_assume!(!i.is_unit());
        let s = summarize(&i).unwrap();
        prop_assert_eq!(s.multiplicity as u64, cx.facet_count_top());
        prop_assert_eq!(s.dim as i64, cx.dimension().unwrap() + 1);
    }

    #[test]
    fn rank_is_exact(m in prop::collection::vec(prop::collection::vec(-4i64..=4, 1..=6), 1..=6)) {
        let cols = m.iter().map(Vec::len).min().unwrap();
        let m: Vec<Vec<i64>> = m.into_iter().map(|r| r[..cols].to_vec()).collect();
        let a = ExactMatrix::from_dense(&m).unwrap();
        let r = a.rank();
        prop_assert_eq!(r, rank_rational(&m));
        prop_assert_eq!(r, a.transpose().rank());
        prop_assert!(a.rank_mod_p(7) <= r);
    }

    #[test]
    fn rank_survives_overflow(k in 2usize..=5, seed in any::<u64>()) {
        // rows scaled near i64::MAX force the big-integer path
        let mut rng = Mix(seed);
        let base: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.below(5) as i64 - 2).collect()).collect();
        let big = i64::MAX / 4;
        let scaled: Vec<Vec<i64>> = base.iter().map(|r| r.iter().map(|v| v * big).collect()).collect();
        let expect = rank_rational(&base);
        prop_assert_eq!(ExactMatrix::from_dense(&scaled).unwrap().rank(), expect);
    }

    #[test]
    fn a_stable_closure_is_least(n in 1usize..=4, seed in any::<u64>(), a_seed in any::<u64>()) {
        let mut rng = Mix(a_seed);
        let a = BoundVector::new(
            (0..n).map(|_| match rng.below(4) { 0 => Bound::Infinite, k => Bound::Finite(k as u32 + 1) }).collect()
        ).unwrap();
        let mut rng = Mix(seed);
        let seeds: Vec<Monomial> = (0..1 + rng.below(2))
            .map(|_| {
                let e: Exps = (0..n).map(|i| {
                    let cap = match a.get(i + 1) { Bound::Finite(b) => b - 1, Bound::Infinite => 3 };
                    rng.below(cap.min(3) as u64 + 1) as u32
                }).collect();
                Monomial::new(e)
            })
            .filter(|m| !m.is_one())
            .collect();
        prop_assume!(!seeds.is_empty());
        let c = a_stable_closure(n, seeds.clone(), &a).unwrap();
        prop_assert!(is_a_stable(&c, &a));
        for s in &seeds {
            prop_assert!(c.contains(s));
        }
        prop_assert_eq!(a_stable_closure(n, c.gens().to_vec(), &a).unwrap(), c.clone());
        // generator test agrees with the all-monomial test
        let top = c.max_degree().unwrap() + 1;
        prop_assert!(a_exchange_closed_up_to(&c, &a, top));
        prop_assume!(c.num_gens() <= 18);
        prop_assert_eq!(betti_a_stable(&c, &a).unwrap().to_quotient_view(), betti_oracle(&c).unwrap());
    }

    #[test]
    fn generator_and_monomial_stability_agree((n, raw) in raw_ideal(3, 2, 4), a in bound_vector(3)) {
        let i = build(n, &raw);
        let a = BoundVector::new((1..=n).map(|k| a.get(k)).collect()).unwrap();
        prop_assume!(is_a_bounded(&i, &a));
        let top = i.max_degree().unwrap_or(0) + 1;
        prop_assert_eq!(is_a_stable(&i, &a), a_exchange_closed_up_to(&i, &a, top));
    }

    #[test]
    fn borel_closures((n, raw) in raw_ideal(4, 2, 3)) {
        let i = strongly_stable_closure(n, raw.iter().cloned().map(Monomial::new)).unwrap();
        prop_assert!(is_strongly_stable(&i));
        prop_assert!(is_a_stable(&i, &BoundVector::infinite(n)));
        let sq: Vec<Monomial> = raw.iter().map(|e| Monomial::new(e.iter().map(|&x| x.min(1)).collect())).collect();
        let j = squarefree_strongly_stable_closure(n, sq).unwrap();
        prop_assert!(is_squarefree_strongly_stable(&j));
        prop_assert!(is_a_stable(&j, &BoundVector::squarefree(n)));
    }

    #[test]
    fn polarization_preserves_invariants((n, raw) in raw_ideal(3, 3, 4)) {
        let i = build(n, &raw);
        prop_assume!(!i.is_zero());
        let (p, _) = polarize(&i);
        prop_assert!(p.is_squarefree());
        let (tp, ti) = (betti_oracle(&p).unwrap(), betti_oracle(&i).unwrap());
        prop_assert_eq!(tp.entries(), ti.entries());
        let (si, sp) = (summarize(&i).unwrap(), summarize(&p).unwrap());
        prop_assert_eq!((si.multiplicity, si.codim), (sp.multiplicity, sp.codim));
        prop_assert_eq!(is_cohen_macaulay(&i).unwrap(), is_cohen_macaulay(&p).unwrap());
    }

    #[test]
    fn koszul_full_sequence_is_tor((n, raw) in raw_ideal(3, 2, 4)) {
        let i = build(n, &raw);
        let t = betti_oracle(&i).unwrap();
        let top = t.entries().keys().map(|&(_, j)| j).max().unwrap_or(0);
        let k = koszul_strands(&i, n, top + 1).unwrap();
        for j in 0..=top + 1 {
            for r in 0..=n {
                prop_assert_eq!(k.get(r, j) as u64, t.get(r, j));
            }
        }
    }

    #[test]
    fn koszul_tables_extend((n, raw) in raw_ideal(3, 2, 4), k in 1usize..=3, d in 0u32..=4) {
        let i = build(n, &raw);
        let k = (k - 1) % n + 1;
        let small = koszul_strands(&i, k, d).unwrap();
        let large = koszul_strands(&i, k, d + 2).unwrap();
        for (&key, &v) in &small.dims {
            prop_assert_eq!(large.dims[&key], v);
        }
        // H_0 is the Hilbert function of R modulo the sequence
        let killed: Vec<usize> = (n - k + 1..=n).collect();
        let quotient = i.kill_variables(&killed).unwrap();
        let hf = hilbert_function(&quotient, d + 2);
        for j in 0..=d + 2 {
            prop_assert_eq!(large.get(0, j) as i64, hf[j as usize]);
        }
    }

    #[test]
    fn finite_colon_matches_growth((n, raw) in raw_ideal(3, 2, 4), var in 1usize..=3) {
        let i = build(n, &raw);
        let v = (var - 1) % n + 1;
        let c = rows(&i.colon_by_variable(v).unwrap());
        let g = rows(&i);
        // annihilator dimension in degrees far past every generator degree
        let far: Vec<i64> = (10..13)
            .map(|d| hilbert_function_by_count(n, &g, d) - hilbert_function_by_count(n, &c, d))
            .collect();
        prop_assert_eq!(finite_length_colon(&i, v).unwrap(), far.iter().all(|&x| x == 0));
    }
}
