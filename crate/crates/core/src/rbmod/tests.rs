use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::*;
use crate::error::RotaError;
use crate::exactalg::{int, rat, FreeVector, Key, LinearMap, Matrix, Rational};
use crate::rbalg::{rb_check, star_product, zero_id_product, Elem, RbAlgebra, RotaBaxter};
use crate::sampling::{random_invertible, rng};

fn basis(n: usize) -> Vec<Key> {
    (1..=n).map(|i| Key::name(format!("e{i}"))).collect()
}

fn e(i: usize) -> FreeVector {
    FreeVector::basis(Key::name(format!("e{i}")))
}

fn map(rows: Matrix) -> LinearMap {
    let b = basis(rows.len());
    LinearMap::new(b.clone(), b, rows).unwrap()
}

/// `(𝐤, P = −λ)` acting on `𝐤ⁿ` by scalars, with the given operator.
fn scalar_module(weight: Rational, op: Matrix) -> crate::Result<RbModule> {
    let alg = RbAlgebra::scalar(weight);
    let n = op.len();
    let mut action = BTreeMap::new();
    action.insert(alg.basis()?[0].clone(), LinearMap::identity(basis(n)));
    RbModule::finite(&alg, basis(n), action, map(op))
}

fn all_pairs_hold(m: &RbModule) -> bool {
    let gens = m.algebra().generators().unwrap();
    let xs = m.sample_vectors().unwrap();
    gens.iter().all(|a| xs.iter().all(|x| rbm_check(m, a, x).unwrap()))
}

#[test]
fn zero_operator_modules_pass() {
    for alg in [RbAlgebra::dual_numbers(), RbAlgebra::truncated_divided(2), zero_id_product()] {
        let m = trivial_regular(&alg).unwrap();
        assert!(all_pairs_hold(&m), "{}", alg.name());
    }
}

#[test]
fn regular_module_reduces_to_the_algebra_identity() {
    let alg = RbAlgebra::laurent();
    let m = RbModule::regular(&alg);
    let gens = alg.generators().unwrap();
    for a in &gens {
        for x in &gens {
            assert_eq!(rbm_check(&m, a, x).unwrap(), rb_check(&alg, a, x).unwrap());
            assert!(rbm_check(&m, a, x).unwrap());
        }
    }
}

#[test]
fn jordan_block_is_not_a_module() {
    let alg = RbAlgebra::scalar(int(-1));
    let j = vec![vec![int(0), int(1)], vec![int(0), int(0)]];
    let mut action = BTreeMap::new();
    action.insert(alg.basis().unwrap()[0].clone(), LinearMap::identity(basis(2)));
    let m = RbModule::finite_unchecked(&alg, basis(2), action.clone(), map(j.clone())).unwrap();
    let one = alg.one().unwrap();
    assert!(!rbm_check(&m, &one, &Elem::Vec(e(2))).unwrap());
    let err = RbModule::finite(&alg, basis(2), action, map(j)).unwrap_err();
    assert!(matches!(err, RotaError::AxiomViolation(ref s) if s.contains("rota-baxter module")), "{err}");
}

#[test]
fn finite_modules_need_one_matrix_per_algebra_basis_key() {
    let alg = RbAlgebra::dual_numbers();
    let mut action = BTreeMap::new();
    action.insert(Key::name("1"), LinearMap::identity(basis(1)));
    let r = RbModule::finite(&alg, basis(1), action, map(vec![vec![int(0)]]));
    assert!(matches!(r, Err(RotaError::DimensionMismatch(_))));
    assert!(matches!(RbModule::regular(&RbAlgebra::laurent()).to_finite(), Err(RotaError::NotFiniteBased(_))));
}

#[test]
fn split_of_the_two_irreducibles() {
    let lam = int(1);
    let m = scalar_module(lam.clone(), vec![vec![int(0), int(0)], vec![int(0), -lam]]).unwrap();
    let s = module_split(&m).unwrap();
    assert_eq!(s.regular, vec![e(2)]);
    assert_eq!(s.singular, vec![e(1)]);
}

#[test]
fn split_degenerate_operators() {
    let lam = int(2);
    let full = scalar_module(lam.clone(), vec![vec![-lam.clone(), int(0)], vec![int(0), -lam.clone()]]).unwrap();
    let s = module_split(&full).unwrap();
    assert_eq!((s.regular.len(), s.singular.len()), (2, 0));
    let zero = scalar_module(lam, vec![vec![int(0); 2]; 2]).unwrap();
    let s = module_split(&zero).unwrap();
    assert_eq!((s.regular.len(), s.singular.len()), (0, 2));
}

#[test]
fn split_needs_nonzero_weight() {
    let m = RbModule::regular(&RbAlgebra::dual_numbers());
    assert_eq!(module_split(&m).unwrap_err(), RotaError::ZeroWeight);
}

#[test]
fn split_reconstructs_seeded_modules() {
    for m in seeded_modules(3, 16).unwrap() {
        if m.weight().is_zero() || !is_quasi_idempotent(&m).unwrap() {
            continue;
        }
        let s = module_split(&m).unwrap();
        assert_eq!(s.regular.len() + s.singular.len(), m.dimension().unwrap());
        assert_eq!(reconstruct_operator(&m, &s).unwrap(), m.op_matrix().unwrap());
    }
}

#[test]
fn derived_action_special_cases() {
    let alg = RbAlgebra::dual_numbers();
    let m = trivial_regular(&alg).unwrap();
    for r in alg.generators().unwrap() {
        for x in m.sample_vectors().unwrap() {
            let want = m.act(&alg.op(&r).unwrap(), &x).unwrap();
            assert_eq!(derived_action(&m, &r, &x).unwrap(), want);
        }
    }
    let alg = RbAlgebra::laurent();
    let reg = RbModule::regular(&alg);
    let gens = alg.generators().unwrap();
    for r in &gens {
        for x in &gens {
            let got = derived_action(&reg, r, x).unwrap();
            assert!(alg.same(&got, &star_product(&alg, r, x).unwrap()).unwrap());
            assert!(semilinearity_check(&reg, r, x).unwrap());
            assert!(tilde_derived_check(&reg, r, x).unwrap());
        }
    }
}

#[test]
fn seeded_modules_satisfy_derived_laws() {
    for m in seeded_modules(11, 8).unwrap() {
        let gens = m.algebra().generators().unwrap();
        for r in &gens {
            for x in m.sample_vectors().unwrap() {
                assert!(semilinearity_check(&m, r, &x).unwrap());
                assert!(tilde_derived_check(&m, r, &x).unwrap());
                assert!(atkinson_module_check(&m, r, &x).unwrap());
                for b in &gens {
                    assert!(compatibility_chain_check(&m, r, b, &x).unwrap());
                }
            }
        }
    }
}

#[test]
fn dual_module_examples() {
    let m = scalar_module(int(1), vec![vec![int(0); 2]; 2]).unwrap();
    let d = dual_module(&m);
    assert_eq!(d.op_matrix().unwrap(), LinearMap::scalar(basis(2), &int(-1)));
    assert!(all_pairs_hold(&d));

    let m = scalar_module(int(1), vec![vec![int(0), int(0)], vec![int(0), int(-1)]]).unwrap();
    let (s, t) = (module_split(&m).unwrap(), module_split(&dual_module(&m)).unwrap());
    let b = basis(2);
    assert!(same_subspace(&b, &s.regular, &t.singular).unwrap());
    assert!(same_subspace(&b, &s.singular, &t.regular).unwrap());

    for m in seeded_modules(5, 8).unwrap() {
        let dd = dual_module(&dual_module(&m));
        assert_eq!(dd.op_matrix().unwrap(), m.op_matrix().unwrap());
        assert!(dual_module(&m).audit().unwrap().iter().all(|r| r.passed()));
    }
}

#[test]
fn scale_module_examples() {
    let m = glued_product_module().unwrap();
    let same = scale_module(&m, &int(1));
    assert_eq!(same.op_matrix().unwrap(), m.op_matrix().unwrap());
    assert_eq!(same.weight(), m.weight());

    let zero = scale_module(&m, &int(0));
    assert!(zero.op_matrix().unwrap().is_zero());
    assert!(zero.weight().is_zero());
    assert!(all_pairs_hold(&zero));

    let l = scale_module(&RbModule::regular(&RbAlgebra::laurent()), &int(-1));
    assert_eq!(l.weight(), &int(1));
    assert!(all_pairs_hold(&l));

    for m in seeded_modules(9, 8).unwrap() {
        let alpha = rat(3, 2);
        let back = scale_module(&scale_module(&m, &alpha), &(Rational::one() / &alpha));
        assert_eq!(back.op_matrix().unwrap(), m.op_matrix().unwrap());
        assert_eq!(back.weight(), m.weight());
        assert!(scale_module(&m, &alpha).audit().unwrap().iter().all(|r| r.passed()));
    }
}

fn witness(lam: Rational, mu: Rational, p: Rational) -> BimoduleWitness {
    let (l, r) = (RbAlgebra::scalar(lam), RbAlgebra::scalar(mu));
    let b = vec![Key::name("m")];
    let mut la = BTreeMap::new();
    la.insert(l.basis().unwrap()[0].clone(), LinearMap::identity(b.clone()));
    let mut ra = BTreeMap::new();
    ra.insert(r.basis().unwrap()[0].clone(), LinearMap::identity(b.clone()));
    let op = LinearMap::new(b.clone(), b.clone(), vec![vec![p]]).unwrap();
    BimoduleWitness::new(&l, &r, b, la, ra, op).unwrap()
}

fn verdict(w: &BimoduleWitness) -> BimoduleVerdict {
    let one_l = w.left().one().unwrap();
    let one_r = w.right().one().unwrap();
    strict_bimodule_check(w, &one_l, &FreeVector::basis(Key::name("m")), &one_r).unwrap()
}

#[test]
fn strict_bimodules() {
    let equal = verdict(&witness(int(1), int(1), int(-1)));
    assert!(equal.holds());
    let zero = verdict(&witness(int(1), int(2), int(0)));
    assert!(zero.holds());
    let bad = verdict(&witness(int(1), int(2), int(-1)));
    assert!(!bad.weights_agree);
    assert!(!bad.identities);
}

#[test]
fn product_conditions_block_diagonal() {
    let m1 = glued_product_module().unwrap();
    let m2 = trivial_regular(&RbAlgebra::dual_numbers()).unwrap();
    assert!(matches!(
        product_module_conditions(
            &m1,
            &m2,
            &LinearMap::zero(m2.basis().unwrap(), m1.basis().unwrap()),
            &LinearMap::zero(m1.basis().unwrap(), m2.basis().unwrap())
        ),
        Err(RotaError::WeightMismatch { .. })
    ));

    let m1 = scalar_projection_module(&int(1), 2, 1).unwrap();
    let m2 = scalar_projection_module(&int(1), 1, 0).unwrap();
    let p12 = LinearMap::zero(m2.basis().unwrap(), m1.basis().unwrap());
    let p21 = LinearMap::zero(m1.basis().unwrap(), m2.basis().unwrap());
    let out = product_module_conditions(&m1, &m2, &p12, &p21).unwrap();
    assert!(out.accepted() && out.star_condition && out.is_module());
    assert_eq!(out.module.dimension().unwrap(), 3);
    assert_eq!(out.module.algebra().dimension().unwrap(), 2);
}

#[test]
fn product_conditions_for_zero_and_identity() {
    let zero = RbAlgebra::scalar_with(int(-1), Rational::zero());
    let id = RbAlgebra::scalar_with(int(-1), Rational::one());
    let one = |c: i64| LinearMap::new(vec![Key::name("m")], vec![Key::name("m")], vec![vec![int(c)]]).unwrap();
    let outcome = |p1: i64, p2: i64, a: i64, b: i64| {
        let m1 = one_dim(&zero, int(p1)).unwrap();
        let m2 = one_dim(&id, int(p2)).unwrap();
        product_module_conditions(&m1, &m2, &one(a), &one(b)).unwrap()
    };
    // p12 must land in ker p1, p21 in the 1-eigenspace of p2.
    assert!(outcome(0, 0, 1, 0).accepted());
    assert!(!outcome(1, 0, 1, 0).accepted());
    assert!(outcome(1, 1, 0, -1).accepted());
    assert!(!outcome(0, 0, 0, 1).accepted());
    // p12 p21 ≠ 0.
    assert!(!outcome(0, 1, 1, 1).accepted());

    // (a) and (b) accept p12 out of M2(1), but the operator is not a module operator.
    let gap = outcome(0, 1, 1, 0);
    assert!(gap.accepted());
    assert!(!gap.star_condition);
    assert!(!gap.is_module());
    let m = &gap.module;
    let e2 = m.algebra().embed(&FreeVector::basis(Key::right(Key::name("1")))).unwrap();
    let x = Elem::Vec(FreeVector::basis(Key::right(Key::name("m"))));
    assert!(!rbm_check(m, &e2, &x).unwrap());
}

#[test]
fn corrected_product_conditions_match_the_audit() {
    let zero = RbAlgebra::scalar_with(int(-1), Rational::zero());
    let id = RbAlgebra::scalar_with(int(-1), Rational::one());
    let one = |c: i64| LinearMap::new(vec![Key::name("m")], vec![Key::name("m")], vec![vec![int(c)]]).unwrap();
    for p1 in 0..=1 {
        for p2 in 0..=1 {
            for a in -1..=1 {
                for b in -1..=1 {
                    let m1 = one_dim(&zero, int(p1)).unwrap();
                    let m2 = one_dim(&id, int(p2)).unwrap();
                    let out = product_module_conditions(&m1, &m2, &one(a), &one(b)).unwrap();
                    assert_eq!(out.accepted() && out.star_condition, out.is_module(), "{p1} {p2} {a} {b}");
                }
            }
        }
    }
}

#[test]
fn atkinson_pairs() {
    let m = trivial_regular(&zero_id_product()).unwrap();
    for x in m.sample_vectors().unwrap() {
        let (a, b) = atkinson_module_pair(&m, &x).unwrap();
        assert!(m.vsame(&a, &m.vzero()).unwrap());
        assert!(m.vsame(&b, &m.vscale(&int(1), &x).unwrap()).unwrap());
    }
    let m = glued_product_module().unwrap();
    for x in m.sample_vectors().unwrap() {
        let (a, b) = atkinson_module_pair(&m, &x).unwrap();
        let px = m.op_p(&x).unwrap();
        assert_eq!(a, px);
        assert_eq!(m.vadd(&a, &b).unwrap(), x);
    }
}

#[test]
fn quasi_idempotence_follows_from_the_axiom_at_scalar_p_one() {
    for m in seeded_modules(21, 16).unwrap() {
        let alg = m.algebra();
        let unit = alg.unit_vec();
        let p1 = alg.coords(&alg.op(&alg.one().unwrap()).unwrap()).unwrap();
        let (k, u) = unit.iter().next().unwrap();
        let scalar_p1 = p1 == unit.scale(&(p1.coeff(k) / u));
        if !alg.weight().is_zero() && scalar_p1 {
            assert!(is_quasi_idempotent(&m).unwrap());
        }
    }
}

#[test]
fn split_is_equivariant_under_automorphisms() {
    let mut r = rng(7);
    for m in seeded_modules(13, 16).unwrap() {
        if m.weight().is_zero() || !is_quasi_idempotent(&m).unwrap() {
            continue;
        }
        let b = m.basis().unwrap();
        // g is an isomorphism from m onto its transport.
        let g = random_invertible(&mut r, &b);
        let moved = m.transport(&g).unwrap();
        let (s, t) = (module_split(&m).unwrap(), module_split(&moved).unwrap());
        let image = |vs: &[FreeVector]| vs.iter().map(|v| g.apply(v).unwrap()).collect::<Vec<_>>();
        assert!(same_subspace(&b, &image(&s.regular), &t.regular).unwrap());
        assert!(same_subspace(&b, &image(&s.singular), &t.singular).unwrap());
        assert!(is_module_hom(&g, &m, &moved).unwrap());
    }
}

#[test]
fn module_homomorphisms() {
    let m = scalar_projection_module(&int(1), 2, 1).unwrap();
    let id = LinearMap::identity(m.basis().unwrap());
    assert!(is_module_hom(&id, &m, &m).unwrap());
    let swap = map(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    assert!(!is_module_hom(&swap, &m, &m).unwrap());
}

#[test]
fn p_one_invariance_is_quasi_idempotence() {
    let mut seen = (false, false);
    for m in seeded_modules(17, 16).unwrap() {
        let xs = m.sample_vectors().unwrap();
        let invariant = xs.iter().all(|x| p_one_invariance_module_check(&m, x).unwrap());
        let quasi = is_quasi_idempotent(&m).unwrap();
        assert_eq!(invariant, quasi);
        if quasi {
            seen.0 = true
        } else {
            seen.1 = true
        }
    }
    assert_eq!(seen, (true, true));
}

#[test]
fn modules_round_trip_through_json() {
    for m in seeded_modules(1, 8).unwrap() {
        let back = RbModule::from_json(&m.to_json()).unwrap();
        assert_eq!(back.to_json(), m.to_json());
    }
    let reg = RbModule::regular(&RbAlgebra::laurent());
    assert!(RbModule::from_json(&reg.to_json()).unwrap().is_regular());
}
