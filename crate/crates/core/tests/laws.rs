use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;
use rota_core::exactalg::{int, rat};
use rota_core::hopfconv::{
    birkhoff_factorize, convolution_mul, matrix_coalgebra, rooted_tree_hopf, tree_character, ConvMap, Forest,
};
use rota_core::rbalg::{rb_check, star_assoc_check};
use rota_core::rbmod::{module_split, reconstruct_operator, seeded_modules};
use rota_core::urb::{sample_triples, urb_associativity_check, urb_relation_check};
use rota_core::{FreeVector, Key, RbAlgebra, RotaBaxter, RotaBaxterModule, RotaError};

fn coeff() -> impl Strategy<Value = rota_core::Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

fn laurent_vec(lo: i64, hi: i64) -> impl Strategy<Value = FreeVector> {
    prop::collection::vec((lo..=hi, coeff()), 0..5)
        .prop_map(|ts| FreeVector::from_terms(ts.into_iter().map(|(d, c)| (Key::Mono(d), c))))
}

fn divided_vec() -> impl Strategy<Value = FreeVector> {
    prop::collection::vec((0u32..=6, coeff()), 0..4)
        .prop_map(|ts| FreeVector::from_terms(ts.into_iter().map(|(d, c)| (Key::Div(d), c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pole_projection_and_its_complement_satisfy_the_identity(x in laurent_vec(-4, 4), y in laurent_vec(-4, 4)) {
        let a = RbAlgebra::laurent();
        let (x, y) = (a.embed(&x).unwrap(), a.embed(&y).unwrap());
        prop_assert!(rb_check(&a, &x, &y).unwrap());
        prop_assert!(rb_check(&a.tilde(), &x, &y).unwrap());
    }

    #[test]
    fn star_product_is_associative(x in laurent_vec(-3, 3), y in laurent_vec(-3, 3), z in laurent_vec(-3, 3)) {
        let a = RbAlgebra::laurent();
        let [x, y, z] = [x, y, z].map(|v| a.embed(&v).unwrap());
        prop_assert!(star_assoc_check(&a, &x, &y, &z).unwrap());
    }

    #[test]
    fn integration_on_divided_powers_has_weight_zero(x in divided_vec(), y in divided_vec()) {
        let a = RbAlgebra::divided();
        let (x, y) = (a.embed(&x).unwrap(), a.embed(&y).unwrap());
        prop_assert!(rb_check(&a, &x, &y).unwrap());
    }

    #[test]
    fn operator_ring_relation_holds_on_random_series(r in laurent_vec(-3, 3)) {
        prop_assert!(urb_relation_check(&RbAlgebra::laurent(), &r).unwrap());
    }

    #[test]
    fn operator_ring_is_associative(seed in any::<u64>()) {
        for alg in [RbAlgebra::dual_numbers(), RbAlgebra::laurent(), RbAlgebra::divided()] {
            let triples = sample_triples(&alg, seed, 4);
            prop_assert!(urb_associativity_check(&alg, &triples).unwrap(), "{}", alg.name());
        }
    }

    #[test]
    fn split_rebuilds_the_module_operator(seed in any::<u64>()) {
        for m in seeded_modules(seed, 3).unwrap() {
            if m.weight().is_zero() {
                prop_assert!(matches!(module_split(&m), Err(RotaError::ZeroWeight)));
                continue;
            }
            let s = module_split(&m).unwrap();
            prop_assert_eq!(reconstruct_operator(&m, &s).unwrap(), m.op_matrix().unwrap());
        }
    }

    #[test]
    fn convolution_is_associative(vals in prop::collection::vec(laurent_vec(-2, 2), 12)) {
        let h = matrix_coalgebra(2).unwrap();
        let a = RbAlgebra::laurent();
        let maps: Vec<ConvMap> = vals
            .chunks(4)
            .map(|c| {
                let values = h.basis().iter().cloned().zip(c.iter().map(|v| a.embed(v).unwrap())).collect();
                ConvMap::new(&h, &a, values).unwrap()
            })
            .collect();
        let fg_h = convolution_mul(&h, &convolution_mul(&h, &maps[0], &maps[1]).unwrap(), &maps[2]).unwrap();
        let f_gh = convolution_mul(&h, &maps[0], &convolution_mul(&h, &maps[1], &maps[2]).unwrap()).unwrap();
        for k in h.basis() {
            prop_assert!(a.same(&fg_h.value(k), &f_gh.value(k)).unwrap(), "{k}");
        }
    }

    #[test]
    fn birkhoff_factors_split_poles_from_regular_parts(vals in prop::collection::vec(laurent_vec(-3, 2), 4)) {
        let h = rooted_tree_hopf(3).unwrap();
        let a = RbAlgebra::laurent();
        let trees: BTreeMap<Key, _> = ["[]", "[[]]", "[[[]]]", "[[][]]"]
            .iter()
            .zip(&vals)
            .map(|(t, v)| (Forest::parse(t).unwrap().key(), a.embed(v).unwrap()))
            .collect();
        let phi = tree_character(&h, &a, &trees).unwrap();
        let b = birkhoff_factorize(&h, &phi).unwrap();
        prop_assert!(b.verified(), "{:?}", b.checks);
        for k in h.basis().iter().filter(|k| Some(*k) != h.unit()) {
            let minus = a.coords(&b.minus.value(k)).unwrap();
            let plus = a.coords(&b.plus.value(k)).unwrap();
            prop_assert!(minus.keys().all(|d| matches!(d, Key::Mono(n) if *n < 0)), "{k}: {minus}");
            prop_assert!(plus.keys().all(|d| matches!(d, Key::Mono(n) if *n >= 0)), "{k}: {plus}");
        }
    }
}

#[test]
fn character_without_poles_has_a_trivial_negative_part() {
    let h = rooted_tree_hopf(2).unwrap();
    let a = RbAlgebra::laurent();
    let regular = a.embed(&FreeVector::from_terms([(Key::Mono(0), int(3)), (Key::Mono(2), int(-1))])).unwrap();
    let trees = ["[]", "[[]]"].iter().map(|t| (Forest::parse(t).unwrap().key(), regular.clone())).collect();
    let phi = tree_character(&h, &a, &trees).unwrap();
    let b = birkhoff_factorize(&h, &phi).unwrap();
    for k in h.basis() {
        let expected = if Some(k) == h.unit() { a.one().unwrap() } else { a.zero() };
        assert!(a.same(&b.minus.value(k), &expected).unwrap(), "{k}");
        assert!(a.same(&b.plus.value(k), &phi.value(k)).unwrap(), "{k}");
    }
}
