use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slocc::canonical::{
    build_flip_operators, build_mixture_eliminators, canonicalize, restore_b_form, BBlock, Exactness, Extension, MixDirection,
};
use slocc::classify::{descriptor_of, moebius_normalize, slocc_equivalent, Verdict};
use slocc::enumerate::{enumerate_classes, ClassFamily};
use slocc::io::{parse_state, state_to_json};
use slocc::linalg::{ExactMatrix, GaussianRational as Q, DEFAULT_TOL};
use slocc::moebius::{Mobius, ProjPoint};
use slocc::pencil::SingularPoint;
use slocc::state::{
    apply_ilo, grid_parse, grid_render, is_true_entangled, random_ilo, random_matrix, to_matrix_pair, MatrixPair, StateTensor,
};

fn atlas(n: usize) -> Vec<ClassFamily> {
    enumerate_classes(n, DEFAULT_TOL).unwrap()
}

/// A true entangled state from a random family with random rational
/// parameters, moved by a random operator.
fn random_state(seed: u64, n: usize, families: &[ClassFamily]) -> MatrixPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let f = &families[rng.random_range(0..families.len())];
        let values: Vec<Q> = (0..f.representative.params).map(|_| Q::from_ratio(rng.random_range(-7..=7), rng.random_range(1..=3))).collect();
        let sample = f.sample(&values);
        if is_true_entangled(&sample) {
            return apply_ilo(&sample, &random_ilo(n, rng.random()));
        }
    }
}

fn random_pair(seed: u64, n: usize) -> MatrixPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Ok(m) = MatrixPair::new(random_matrix(&mut rng, n, n), random_matrix(&mut rng, n, n)) {
            return m;
        }
    }
}

fn block_strategy() -> impl Strategy<Value = BBlock> {
    prop::collection::vec(any::<bool>(), 2..=7).prop_filter_map("needs both extension kinds", |bits| {
        BBlock::from_pattern(bits.into_iter().map(|b| if b { Extension::Row } else { Extension::Column }).collect()).ok()
    })
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=9).prop_filter_map("nonzero", |(p, q)| (p != 0).then(|| Q::from_ratio(p, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn operators_compose(seed in any::<u64>(), n in 2usize..=4) {
        let m = random_pair(seed, n);
        let (a, b) = (random_ilo(n, seed ^ 1), random_ilo(n, seed ^ 2));
        prop_assert_eq!(apply_ilo(&apply_ilo(&m, &a), &b), apply_ilo(&m, &a.then(&b)));
        prop_assert_eq!(apply_ilo(&apply_ilo(&m, &a), &a.inverse()), m);
    }

    #[test]
    fn entanglement_is_invariant(seed in any::<u64>(), n in 2usize..=4) {
        let m = random_pair(seed, n);
        let op = random_ilo(n, seed.wrapping_add(7));
        prop_assert_eq!(is_true_entangled(&apply_ilo(&m, &op)), is_true_entangled(&m));
    }

    #[test]
    fn state_forms_round_trip(seed in any::<u64>(), n in 2usize..=4) {
        let m = random_pair(seed, n);
        let tensor = StateTensor::from_pair(&m).unwrap();
        prop_assert_eq!(&to_matrix_pair(&tensor), &m);
        prop_assert_eq!(grid_parse(&grid_render(&m)).unwrap(), m);
        prop_assert_eq!(parse_state(&state_to_json(&tensor)).unwrap(), tensor);
    }

    #[test]
    fn mobius_inverse_and_compose(a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, d in -5i64..=5, z in -9i64..=9) {
        let t = ExactMatrix::from_ints(&[[a, b], [c, d]]);
        prop_assume!(t.det() != Q::from_int(0));
        let m = Mobius::from_t(&t);
        let p = ProjPoint::int(z);
        let back = m.inverse().apply(&m.apply(&p));
        prop_assert_eq!(back.order(&p), std::cmp::Ordering::Equal);
        // The map on points agrees with mixing the slices.
        let twice = Mobius::from_t(&(&t * &t));
        prop_assert_eq!(twice.apply(&p).order(&m.apply(&m.apply(&p))), std::cmp::Ordering::Equal);
    }

    #[test]
    fn normalization_is_invariant_and_idempotent(
        pts in prop::collection::btree_set(-8i64..=8, 1..=6),
        decorate in prop::collection::vec(0usize..3, 6),
        a in -4i64..=4, b in -4i64..=4, c in -4i64..=4, d in -4i64..=4,
    ) {
        let t = ExactMatrix::from_ints(&[[a, b], [c, d]]);
        prop_assume!(t.det() != Q::from_int(0));
        let segres = [vec![1], vec![2], vec![1, 1]];
        let config: Vec<SingularPoint> = pts
            .iter()
            .zip(&decorate)
            .map(|(&z, &k)| SingularPoint { location: ProjPoint::int(z), rank_at: 0, segre: segres[k].clone() })
            .collect();
        let m = Mobius::from_t(&t);
        let moved: Vec<SingularPoint> =
            config.iter().map(|p| SingularPoint { location: m.apply(&p.location), ..p.clone() }).collect();
        let key = moebius_normalize(&config).unwrap().key;
        prop_assert_eq!(&moebius_normalize(&moved).unwrap().key, &key);
        let again: Vec<SingularPoint> =
            key.entries().iter().map(|e| SingularPoint { location: e.point.clone(), rank_at: 0, segre: e.segre.clone() }).collect();
        prop_assert_eq!(moebius_normalize(&again).unwrap().key, key);
    }

    #[test]
    fn b_block_identities(block in block_strategy(), k in nonzero_rational()) {
        let (lam, b) = block.matrices();
        let (p, q) = build_mixture_eliminators(&block, &k, MixDirection::BIntoLambda);
        prop_assert_eq!(&(&p * &(&lam + &b.scale(&k))) * &q, lam.clone());
        prop_assert_eq!(&(&p * &b) * &q, b.clone());
        let (p, q) = build_mixture_eliminators(&block, &k, MixDirection::LambdaIntoB);
        prop_assert_eq!(&(&p * &lam) * &q, lam.clone());
        prop_assert_eq!(&(&p * &(&b + &lam.scale(&k))) * &q, b.clone());
        let (p, q, (s1, s2)) = build_flip_operators(&block, &k);
        prop_assert_eq!(&(&p * &lam) * &q, b.scale(&s1));
        prop_assert_eq!(&(&p * &b) * &q, lam.scale(&s2));
    }

    #[test]
    fn b_form_restores(block in block_strategy(), t in prop::array::uniform4(-4i64..=4)) {
        let t = ExactMatrix::from_ints(&[[t[0], t[1]], [t[2], t[3]]]);
        prop_assume!(t.det() != Q::from_int(0));
        let (lam, b) = block.matrices();
        let x = &lam.scale(&t[(0, 0)]) + &b.scale(&t[(0, 1)]);
        let y = &lam.scale(&t[(1, 0)]) + &b.scale(&t[(1, 1)]);
        let (p, q) = restore_b_form(&block, &t);
        prop_assert_eq!(&(&p * &x) * &q, lam);
        prop_assert_eq!(&(&p * &y) * &q, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn descriptor_is_invariant(seed in any::<u64>(), n in 2usize..=4) {
        let families = atlas(n);
        let m = random_state(seed, n, &families);
        let moved = apply_ilo(&m, &random_ilo(n, seed.wrapping_mul(31)));
        prop_assert_eq!(descriptor_of(&moved, DEFAULT_TOL).unwrap(), descriptor_of(&m, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn witnesses_are_sound_and_canonical_forms_fixed(seed in any::<u64>(), n in 2usize..=4) {
        let families = atlas(n);
        let m = random_state(seed, n, &families);
        let c = canonicalize(&m, DEFAULT_TOL).unwrap();
        prop_assert_eq!(c.witness.exactness, Exactness::Exact);
        prop_assert_eq!(apply_ilo(&m, &c.witness.ops), c.pair.to_pair());
        let again = canonicalize(&c.pair.to_pair(), DEFAULT_TOL).unwrap();
        prop_assert_eq!(&again.pair, &c.pair);
        prop_assert_eq!(apply_ilo(&c.pair.to_pair(), &again.witness.ops), c.pair.to_pair());
    }

    #[test]
    fn equivalence_witness_maps_a_to_b(seed in any::<u64>(), n in 2usize..=4) {
        let families = atlas(n);
        let a = random_state(seed, n, &families);
        let b = apply_ilo(&a, &random_ilo(n, seed.wrapping_add(99)));
        let eq = slocc_equivalent(&a, &b, DEFAULT_TOL).unwrap();
        prop_assert_eq!(eq.verdict, Verdict::Equivalent);
        let op = eq.witness.expect("exact inputs give a witness");
        prop_assert_eq!(apply_ilo(&a, &op), b);
    }
}
