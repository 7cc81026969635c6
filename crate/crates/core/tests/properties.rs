use lpsurf::laurent::{gcd, parse, LaurentPoly, VariableTable};
use lpsurf::lp::seeds_equal;
use lpsurf::quiver::{
    random_quiver, rank, repair_bad_paths, shortened_mutation_formula, RandomQuiverParams,
};
use lpsurf::surface::{mobius, once_punctured_disk, polygon, principal_state, QuasiTriState};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NV: usize = 3;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..3, NV), -4i64..5), 0..5)
        .prop_map(|terms| LaurentPoly::from_terms(NV, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn polynomial() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(0i32..3, NV), -4i64..5), 1..4)
        .prop_map(|terms| LaurentPoly::from_terms(NV, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn nonzero() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |f| !f.is_zero())
}

fn table() -> VariableTable {
    VariableTable::cluster(["a", "b", "c"]).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(f in laurent(), g in laurent(), h in laurent()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
        prop_assert_eq!(f.mul(&LaurentPoly::one(NV)), f.clone());
    }

    #[test]
    fn exact_division_recovers_factor(f in laurent(), g in nonzero()) {
        prop_assert_eq!(f.mul(&g).divide_exact(&g).unwrap(), Some(f));
    }

    #[test]
    fn gcd_is_a_common_divisor_containing_shared_factors(
        f in nonzero(), g in nonzero(), h in polynomial(),
    ) {
        prop_assume!(!h.is_zero());
        let (fh, gh) = (f.mul(&h), g.mul(&h));
        let d = gcd(&fh, &gh);
        prop_assert!(fh.divide_exact(&d).unwrap().is_some());
        prop_assert!(gh.divide_exact(&d).unwrap().is_some());
        prop_assert!(d.divide_exact(&h).unwrap().is_some(), "gcd {:?} misses {:?}", d, h);
    }

    #[test]
    fn max_power_counts_multiplicity(h in polynomial(), k in 0u32..4) {
        prop_assume!(!h.is_zero() && !h.is_unit());
        let g = parse("1 + a + b*c", &table()).unwrap();
        let hk = h.mul(&g.pow(k));
        prop_assert!(hk.max_power_dividing(&g).unwrap() >= k);
        prop_assert_eq!(hk.max_power_dividing(&hk).unwrap(), 1);
    }

    #[test]
    fn display_parses_back(f in laurent()) {
        let t = table();
        let text = f.display(&t).to_string();
        prop_assert_eq!(parse(&text, &t).unwrap(), f);
    }

    #[test]
    fn quiver_columns_give_binomials(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, RandomQuiverParams::default());
        for j in 0..q.mutable() {
            let c = q.exchange_poly_short(j).unwrap();
            prop_assert!(c.poly.len() <= 2);
            prop_assert!(c.poly.is_polynomial());
            if !c.degenerate {
                prop_assert!(c.poly.terms().all(|(_, k)| *k == BigInt::from(1)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn double_mutation_preserves_rank_and_matches_formula(seed in any::<u64>(), pick in any::<usize>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = RandomQuiverParams { max_mutable: 6, max_laminations: 2, max_boundary: 2, max_weight: 3 };
        let q = random_quiver(&mut rng, params);
        let i = pick % q.mutable();
        let Some(q) = repair_bad_paths(&q, i) else { return Ok(()) };
        let (d, ok) = q.double_mutate(i).unwrap();
        prop_assert!(ok);
        prop_assert_eq!(rank(&q.shortened().data), rank(&d.shortened().data));
        prop_assert_eq!(shortened_mutation_formula(&q.shortened(), i).unwrap(), d.shortened());
        prop_assert_eq!(&d.double_mutate(i).unwrap().0, &q);
    }
}

fn start(which: usize) -> QuasiTriState {
    let spec = match which % 4 {
        0 => polygon(6),
        1 => mobius(2),
        2 => mobius(3),
        _ => once_punctured_disk(3),
    }
    .unwrap();
    principal_state(&spec, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flips_are_involutions(which in 0usize..4, path in prop::collection::vec(0usize..8, 0..8), last in 0usize..8) {
        let mut s = start(which);
        for v in path {
            s = s.flip(v % s.rank()).unwrap();
        }
        let v = last % s.rank();
        prop_assert_eq!(&s.flip(v).unwrap().flip(v).unwrap(), &s);
    }

    #[test]
    fn lp_mutation_is_an_involution_on_surface_seeds(
        which in 0usize..4, path in prop::collection::vec(0usize..8, 0..6), last in 0usize..8,
    ) {
        let mut s = start(which);
        for v in path {
            s = s.flip(v % s.rank()).unwrap();
        }
        let seed = s.lp_seed().unwrap();
        let i = last % seed.rank();
        prop_assert!(seeds_equal(&seed.mutate(i).unwrap().mutate(i).unwrap(), &seed));
    }

    #[test]
    fn reachable_states_keep_full_rank_and_records(
        which in 0usize..4, path in prop::collection::vec(0usize..8, 0..10),
    ) {
        let mut s = start(which);
        for v in path {
            s = s.flip(v % s.rank()).unwrap();
            prop_assert!(s.check().is_empty(), "{:?}", s.check());
            prop_assert!(s.record_checks().iter().all(|r| r.bad_path && r.restriction));
            prop_assert_eq!(s.coincidence().unwrap(), None);
            if s.is_triangulation() {
                prop_assert_eq!(rank(&s.quiver().shortened().data), s.rank());
            }
        }
    }
}
