use std::collections::BTreeMap;

use num_traits::Zero;

use super::*;
use crate::error::RotaError;
use crate::exactalg::{int, FreeVector, Key, LinearMap, Rational, TensorKey};
use crate::rbalg::{zero_id_product, OpForm, RbAlgebra, RbHom};
use crate::rbmod::{hom_dimension, is_module_hom, one_dim, scalar_projection_module, seeded_modules, RbModule};
use crate::sampling::{random_invertible, rng};

fn t(i: i64) -> FreeVector {
    FreeVector::basis(Key::Mono(i))
}

fn u(k: u32) -> FreeVector {
    FreeVector::basis(Key::Div(k))
}

fn tt(a: Key, b: Key) -> UrbElement {
    UrbElement::tensor_key(a, b)
}

/// The same carrier with `P = c·Id` at weight `λ`.
fn with_scalar_operator(alg: &RbAlgebra, c: i64, weight: i64) -> RbAlgebra {
    alg.clone().with_form(OpForm { id: int(c), base: Rational::zero() }).with_weight(int(weight))
}

fn instances() -> Vec<RbAlgebra> {
    let mut out = vec![
        RbAlgebra::laurent(),
        RbAlgebra::divided(),
        RbAlgebra::dual_numbers(),
        RbAlgebra::truncated_divided(2),
        RbAlgebra::split_matrix2(int(-1)).unwrap(),
        zero_id_product(),
        RbAlgebra::matrix(&RbAlgebra::scalar(int(1)), 2).unwrap(),
    ];
    out.extend([1, -1, 2].map(|w| RbAlgebra::scalar(int(w))));
    out
}

#[test]
fn laurent_products_follow_both_branches() {
    let alg = RbAlgebra::laurent();
    let lhs = urb_mul(&alg, &UrbElement::pure(&t(1), &t(-3)), &UrbElement::pure(&t(1), &t(2))).unwrap();
    assert_eq!(lhs, UrbElement::pure(&t(-1), &t(2)));
    let lhs = urb_mul(&alg, &UrbElement::pure(&t(1), &t(2)), &UrbElement::pure(&t(1), &t(3))).unwrap();
    assert_eq!(lhs, UrbElement::pure(&t(1), &t(6)));
}

#[test]
fn divided_power_product_by_hand() {
    let alg = RbAlgebra::divided();
    let lhs = urb_mul(&alg, &UrbElement::pure(&u(1), &u(1)), &UrbElement::pure(&u(1), &u(0))).unwrap();
    // u₁u₁ = 2u₂, P = 2u₃ and P̃ = −2u₃ at weight zero.
    let expected = tt(Key::Div(4), Key::Div(0)).scale(&int(8)).sub(&tt(Key::Div(1), Key::Div(3)).scale(&int(2)));
    assert_eq!(lhs, expected);
    assert_eq!(multinomial(&[1, 1, 1]), int(6));
    let (_, formula) =
        ClosedForm::DividedMultinomial.sides(&alg, &[Key::Div(1), Key::Div(1), Key::Div(1), Key::Div(0)]).unwrap();
    assert_eq!(formula, tt(Key::Div(3), Key::Div(0)).scale(&int(6)));
}

#[test]
fn one_sided_divided_forms_hold_and_the_multinomial_form_does_not() {
    let alg = RbAlgebra::divided();
    let keys: Vec<Key> = (0..=4).map(Key::Div).collect();
    assert!(closed_form_check(&alg, ClosedForm::DividedLeft, &keys).unwrap().passed());
    assert!(closed_form_check(&alg, ClosedForm::DividedRight, &keys).unwrap().passed());
    let report = closed_form_check(&alg, ClosedForm::DividedMultinomial, &keys).unwrap();
    assert!(!report.passed());
}

#[test]
fn operator_specializations() {
    let keys: Vec<Key> = (-3..=3).map(Key::Mono).collect();
    assert!(closed_form_check(&RbAlgebra::laurent(), ClosedForm::LaurentBranches, &keys).unwrap().passed());
    for base in [RbAlgebra::dual_numbers(), RbAlgebra::split_matrix2(int(-1)).unwrap()] {
        let keys = base.basis().unwrap();
        for w in [0, 1, -1, 2] {
            let zero = with_scalar_operator(&base, 0, w);
            assert!(closed_form_check(&zero, ClosedForm::ZeroOperator, &keys).unwrap().passed());
            let scalar = with_scalar_operator(&base, -w, w);
            assert!(closed_form_check(&scalar, ClosedForm::ScalarOperator, &keys).unwrap().passed());
        }
        let id = with_scalar_operator(&base, 1, -1);
        assert!(closed_form_check(&id, ClosedForm::IdentityOperator, &keys).unwrap().passed());
    }
    // P = 0 is not the identity form.
    let zero = with_scalar_operator(&RbAlgebra::dual_numbers(), 0, 1);
    let keys = zero.basis().unwrap();
    assert!(!closed_form_check(&zero, ClosedForm::IdentityOperator, &keys).unwrap().passed());
}

#[test]
fn zero_divisors_at_the_identity_operator() {
    for base in [RbAlgebra::dual_numbers(), RbAlgebra::truncated_divided(2), RbAlgebra::split_matrix2(int(-1)).unwrap()]
    {
        let alg = with_scalar_operator(&base, 1, -1);
        let b = alg.basis().unwrap();
        for r in &b {
            let r = FreeVector::basis(r.clone());
            let witness = UrbElement::pure(&alg.unit_vec(), &r).sub(&UrbElement::pure(&r, &alg.unit_vec()));
            for s1 in &b {
                for s2 in &b {
                    let (s1, s2) = (FreeVector::basis(s1.clone()), FreeVector::basis(s2.clone()));
                    assert!(zero_divisor_product(&alg, &r, &s1, &s2).unwrap().is_zero());
                    if r != alg.unit_vec() {
                        assert!(!witness.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn q_squares() {
    for w in [1, -1, 2] {
        let alg = RbAlgebra::scalar(int(w));
        let q = urb_q(&alg);
        assert_eq!(urb_mul(&alg, &q, &q).unwrap(), q.scale(&int(-w)));
    }
    let alg = RbAlgebra::scalar_with(Rational::zero(), Rational::zero());
    let q = urb_q(&alg);
    assert!(urb_mul(&alg, &q, &q).unwrap().is_zero());
    let alg = RbAlgebra::dual_numbers();
    let one = alg.unit_vec();
    for k in alg.basis().unwrap() {
        let r = FreeVector::basis(k);
        assert_eq!(urb_mul(&alg, &UrbElement::scalar(r.clone()), &urb_q(&alg)).unwrap(), UrbElement::pure(&r, &one));
        assert_eq!(urb_mul(&alg, &urb_q(&alg), &UrbElement::scalar(r.clone())).unwrap(), UrbElement::pure(&one, &r));
    }
}

#[test]
fn relation_examples() {
    let alg = RbAlgebra::laurent();
    let (lhs, rhs) = urb_relation_sides(&alg, &t(-1)).unwrap();
    assert_eq!(lhs, UrbElement::pure(&t(-1), &t(0)));
    assert_eq!(lhs, rhs);
    let alg = RbAlgebra::divided();
    let (lhs, rhs) = urb_relation_sides(&alg, &u(0)).unwrap();
    assert_eq!(lhs, UrbElement::pure(&u(1), &u(0)).sub(&UrbElement::pure(&u(0), &u(1))));
    assert_eq!(lhs, rhs);
}

#[test]
fn every_instance_passes_the_audit() {
    for alg in instances() {
        for report in urb_audit(&alg, 7, 500).unwrap() {
            assert!(report.passed(), "{}: {} at {:?}", alg.name(), report.law, report.counterexample);
            assert!(report.samples > 0);
        }
    }
}

#[test]
fn non_rota_baxter_operator_breaks_associativity() {
    let shifted = RbAlgebra::dual_numbers().with_form(OpForm { id: int(1), base: int(1) });
    // P = Id + P₀ is not Rota-Baxter of weight 0.
    let reports = urb_audit(&shifted, 3, 200).unwrap();
    assert!(reports.iter().any(|r| !r.passed()));
}

#[test]
fn dimension_counts() {
    assert_eq!(urb_dimension(&RbAlgebra::scalar(int(1))).unwrap(), 2);
    assert_eq!(urb_dimension(&RbAlgebra::dual_numbers()).unwrap(), 6);
    assert_eq!(urb_dimension(&RbAlgebra::truncated_divided(2)).unwrap(), 12);
    assert!(matches!(urb_dimension(&RbAlgebra::laurent()), Err(RotaError::NotFiniteBased(_))));
}

#[test]
fn precision_is_never_silently_lost() {
    let alg = RbAlgebra::laurent_unchecked(int(-1), 4, 2);
    let r = urb_mul(&alg, &UrbElement::pure(&t(0), &t(3)), &UrbElement::pure(&t(2), &t(0)));
    assert!(matches!(r, Err(RotaError::PrecisionExhausted(_))));
}

#[test]
fn q_acts_as_the_module_operator() {
    for m in seeded_modules(5, 10).unwrap() {
        let q = urb_q(m.algebra());
        assert_eq!(urb_action_matrix(&m, &q).unwrap(), m.op_matrix().unwrap());
        for x in m.sample_vectors().unwrap() {
            assert_eq!(urb_act(&m, &q, &x).unwrap(), crate::rbmod::RotaBaxterModule::op_p(&m, &x).unwrap());
        }
    }
    let reg = RbModule::regular(&RbAlgebra::laurent());
    let alg = reg.algebra().clone();
    let x = alg.embed(&t(-2).add(&t(1))).unwrap();
    let got = urb_act(&reg, &UrbElement::pure(&t(1), &t(-1)), &x).unwrap();
    // a·P(b·x) with b·x = t⁻³ + 1.
    assert_eq!(alg.coords(&got).unwrap(), t(-2));
}

#[test]
fn action_is_compatible_with_the_product() {
    let mut r = rng(11);
    for m in seeded_modules(3, 10).unwrap() {
        let alg = m.algebra().clone();
        let xs = m.sample_vectors().unwrap();
        for _ in 0..20 {
            let (a, b) = (random_element(&alg, &mut r), random_element(&alg, &mut r));
            let ab = urb_mul(&alg, &a, &b).unwrap();
            assert_eq!(
                urb_action_matrix(&m, &ab).unwrap(),
                urb_action_matrix(&m, &a).unwrap().compose(&urb_action_matrix(&m, &b).unwrap()).unwrap()
            );
            for x in &xs {
                assert_eq!(urb_act(&m, &ab, x).unwrap(), urb_act(&m, &a, &urb_act(&m, &b, x).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn zero_operator_kills_the_tensor_part() {
    let alg = RbAlgebra::dual_numbers();
    let m = crate::rbmod::trivial_regular(&alg).unwrap();
    for a in alg.basis().unwrap() {
        for b in alg.basis().unwrap() {
            assert!(urb_action_matrix(&m, &tt(a.clone(), b)).unwrap().is_zero());
        }
    }
}

#[test]
fn homomorphisms_intertwine_the_action() {
    let mut r = rng(2);
    for m in seeded_modules(9, 8).unwrap() {
        let g = random_invertible(&mut r, &m.basis().unwrap());
        let n = m.transport(&g).unwrap();
        assert!(is_module_hom(&g, &m, &n).unwrap());
        for _ in 0..10 {
            let w = random_element(m.algebra(), &mut r);
            let lhs = g.compose(&urb_action_matrix(&m, &w).unwrap()).unwrap();
            assert_eq!(lhs, urb_action_matrix(&n, &w).unwrap().compose(&g).unwrap());
        }
    }
}

#[test]
fn regular_action_is_not_faithful_but_free_ranks_are_right() {
    for alg in [RbAlgebra::scalar(int(1)), RbAlgebra::dual_numbers(), RbAlgebra::truncated_divided(2)] {
        let d = alg.dimension().unwrap();
        let rank = regular_action_rank(&alg).unwrap();
        assert!(rank <= d * d && rank < urb_dimension(&alg).unwrap());
        assert_eq!(free_rank(&alg, Side::Left).unwrap(), Some(d + 1));
        assert_eq!(free_rank(&alg, Side::Right).unwrap(), Some(d + 1));
    }
}

#[test]
fn opposite_twist_reverses_products() {
    let mut r = rng(4);
    for alg in [RbAlgebra::split_matrix2(int(-1)).unwrap(), RbAlgebra::dual_numbers(), RbAlgebra::laurent()] {
        for _ in 0..100 {
            let (a, b) = (random_element(&alg, &mut r), random_element(&alg, &mut r));
            assert!(opposite_antimultiplicative_check(&alg, &a, &b).unwrap(), "{}", alg.name());
        }
    }
    let alg = RbAlgebra::laurent();
    for (j, k) in [(-3, 1), (2, 1)] {
        let (a, b) = (UrbElement::pure(&t(1), &t(j)), UrbElement::pure(&t(k), &t(2)));
        assert!(opposite_antimultiplicative_check(&alg, &a, &b).unwrap());
    }
    // Without the dual operator the twist is not multiplicative.
    let alg = RbAlgebra::dual_numbers();
    let (a, b) = (urb_q(&alg), UrbElement::pure(&alg.unit_vec(), &FreeVector::basis(Key::name("x"))));
    let lhs = urb_opposite_iso(&urb_mul(&alg, &a, &b).unwrap());
    let rhs = urb_mul(&alg.opposite(), &urb_opposite_iso(&b), &urb_opposite_iso(&a)).unwrap();
    assert_ne!(lhs, rhs);
}

#[test]
fn product_projection_kernel() {
    let (r1, r2) = (RbAlgebra::scalar_with(int(-1), Rational::zero()), RbAlgebra::scalar_with(int(-1), int(1)));
    let audit = product_projection_audit(&r1, &r2).unwrap();
    assert_eq!((audit.source_dim, audit.target_dim, audit.kernel_dim), (6, 4, 2));
    assert!(audit.surjective() && audit.kernel_is_cross_span && audit.multiplicative);

    let r = zero_id_product();
    let (q1, q2) = urb_product_projection(&r1, &r2, &urb_q(&r)).unwrap();
    assert_eq!((q1, q2), (urb_q(&r1), urb_q(&r2)));
    let b = r.basis().unwrap();
    let cross = tt(b[0].clone(), b[1].clone());
    let (x, y) = urb_product_projection(&r1, &r2, &cross).unwrap();
    assert!(x.is_zero() && y.is_zero());
    let other = RbAlgebra::scalar(int(2));
    assert!(matches!(urb_product_projection(&r1, &other, &cross), Err(RotaError::WeightMismatch { .. })));
}

#[test]
fn coinduction_along_the_identity_returns_the_module() {
    for m in seeded_modules(21, 5).unwrap() {
        let f = RbHom::identity(m.algebra()).unwrap();
        let c = coinduce(&f, &m).unwrap();
        assert_eq!(c.module.dimension().unwrap(), m.dimension().unwrap());
        assert!(c.unit.inverse().is_some());
        assert!(is_module_hom(&c.unit, &m, &c.module).unwrap());
    }
}

#[test]
fn coinduction_of_zero_is_zero() {
    let alg = RbAlgebra::dual_numbers();
    let action = alg.basis().unwrap().into_iter().map(|k| (k, LinearMap::identity(vec![]))).collect::<BTreeMap<_, _>>();
    let zero = RbModule::finite(&alg, vec![], action, LinearMap::identity(vec![])).unwrap();
    let c = coinduce(&RbHom::identity(&alg).unwrap(), &zero).unwrap();
    assert_eq!(c.module.dimension().unwrap(), 0);
}

#[test]
fn coinduction_is_left_adjoint_to_restriction() {
    for target in [
        RbAlgebra::split_matrix2(int(-1)).unwrap(),
        RbAlgebra::product(&RbAlgebra::scalar(int(-1)), &RbAlgebra::scalar(int(-1))).unwrap(),
    ] {
        let f = RbHom::unit_map(&target).unwrap();
        let ms = [
            scalar_projection_module(&int(-1), 1, 0).unwrap(),
            scalar_projection_module(&int(-1), 2, 1).unwrap(),
            one_dim(f.source(), int(1)).unwrap(),
        ];
        let ns = [RbModule::regular(&target).to_finite().unwrap(), crate::rbmod::trivial_regular(&target).unwrap()];
        for m in &ms {
            let pushed = coinduce(&f, m).unwrap().module;
            for n in &ns {
                let left = hom_dimension(&pushed, n).unwrap();
                let right = hom_dimension(m, &restrict(&f, n).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn elements_round_trip_through_json() {
    let alg = RbAlgebra::laurent();
    let mut r = rng(8);
    for _ in 0..20 {
        let e = random_element(&alg, &mut r);
        assert_eq!(UrbElement::from_json(&e.to_json()).unwrap(), e);
    }
    let v = serde_json::json!({"scalar": {"t^-1": "2/1"}, "tensor": {"(t^1|t^-3)": "1/2"}});
    let e = UrbElement::from_json(&v).unwrap();
    assert_eq!(e.tensor.coeff(&TensorKey::new(Key::Mono(1), Key::Mono(-3))), crate::exactalg::rat(1, 2));
    assert_eq!(e.to_json(), v);
}
