//! Built-in algebras and the checked constructors.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::algebra::{FiniteTable, Kind, RbAlgebra};
use super::structure::{audit_algebra, RotaBaxter};
use crate::error::{Result, RotaError};
use crate::exactalg::{binomial, fmt_rational, int, FreeVector, Key, LinearMap, Rational};
use crate::report::LawReport;

/// Default Laurent precision: comfortably above the products that the
/// sampled audits and the operator-ring checks form from `|i| ≤ 6`.
pub const LAURENT_PRECISION: i64 = 48;
pub const LAURENT_SAMPLE_DEGREE: i64 = 6;
pub const DIVIDED_MAX_DEGREE: u32 = 64;
pub const DIVIDED_SAMPLE_DEGREE: u32 = 6;

impl RbAlgebra {
    /// `𝐤((t))` with the pole-part projection, without auditing.
    pub fn laurent_unchecked(weight: Rational, precision: i64, sample_degree: i64) -> RbAlgebra {
        RbAlgebra::from_parts(
            format!("laurent(w={},N={precision})", fmt_rational(&weight)),
            weight,
            Kind::Laurent { precision, sample_degree: sample_degree.min(precision) },
            true,
        )
    }

    /// The weight −1 Laurent algebra with default precision.
    pub fn laurent() -> RbAlgebra {
        RbAlgebra::laurent_unchecked(int(-1), LAURENT_PRECISION, LAURENT_SAMPLE_DEGREE)
    }

    pub fn laurent_with_precision(precision: i64) -> RbAlgebra {
        RbAlgebra::laurent_unchecked(int(-1), precision, LAURENT_SAMPLE_DEGREE)
    }

    pub fn divided_unchecked(weight: Rational, max_degree: u32, sample_degree: u32) -> RbAlgebra {
        RbAlgebra::from_parts(
            format!("divided(w={},K={max_degree})", fmt_rational(&weight)),
            weight,
            Kind::Divided { max_degree, sample_degree: sample_degree.min(max_degree) },
            true,
        )
    }

    /// Divided powers of weight 0.
    pub fn divided() -> RbAlgebra {
        RbAlgebra::divided_unchecked(Rational::zero(), DIVIDED_MAX_DEGREE, DIVIDED_SAMPLE_DEGREE)
    }

    /// `(𝐤, c)`: the ground field with `P = c·Id`.
    pub fn scalar_with(weight: Rational, c: Rational) -> RbAlgebra {
        let one = Key::name("1");
        let mut table = BTreeMap::new();
        table.insert((one.clone(), one.clone()), FreeVector::basis(one.clone()));
        let op = LinearMap::scalar(vec![one.clone()], &c);
        let t = FiniteTable { basis: vec![one.clone()], table, unit: FreeVector::basis(one), op };
        RbAlgebra::from_parts(
            format!("scalar(w={},P={})", fmt_rational(&weight), fmt_rational(&c)),
            weight,
            Kind::Finite(Arc::new(t)),
            true,
        )
    }

    /// `(𝐤, −λ)`, the scalar algebra that every weight-λ algebra maps to.
    pub fn scalar(weight: Rational) -> RbAlgebra {
        let c = -weight.clone();
        RbAlgebra::scalar_with(weight, c)
    }

    /// Finite algebra from a table; audited on the full basis.
    pub fn finite(name: &str, weight: Rational, table: FiniteTable) -> Result<RbAlgebra> {
        let commutative = table.basis.iter().all(|a| {
            table
                .basis
                .iter()
                .all(|b| table.table.get(&(a.clone(), b.clone())) == table.table.get(&(b.clone(), a.clone())))
        });
        RbAlgebra::from_parts(name.to_string(), weight, Kind::Finite(Arc::new(table)), commutative).audited()
    }

    pub fn finite_unchecked(name: &str, weight: Rational, table: FiniteTable, commutative: bool) -> RbAlgebra {
        RbAlgebra::from_parts(name.to_string(), weight, Kind::Finite(Arc::new(table)), commutative)
    }

    /// `𝐤[x]/(x²)` with `P(1) = x`, `P(x) = 0`, weight 0.
    pub fn dual_numbers() -> RbAlgebra {
        let (one, x) = (Key::name("1"), Key::name("x"));
        let mut table = BTreeMap::new();
        table.insert((one.clone(), one.clone()), FreeVector::basis(one.clone()));
        table.insert((one.clone(), x.clone()), FreeVector::basis(x.clone()));
        table.insert((x.clone(), one.clone()), FreeVector::basis(x.clone()));
        let basis = vec![one.clone(), x.clone()];
        let op = LinearMap::from_columns(basis.clone(), basis.clone(), |k| {
            Ok(if *k == one { FreeVector::basis(x.clone()) } else { FreeVector::zero() })
        })
        .expect("static table");
        let t = FiniteTable { basis, table, unit: FreeVector::basis(one), op };
        RbAlgebra::finite_unchecked("dual", Rational::zero(), t, true)
    }

    /// Divided powers modulo `u_k, k > n`, weight 0.
    pub fn truncated_divided(n: u32) -> RbAlgebra {
        let basis: Vec<Key> = (0..=n).map(Key::Div).collect();
        let mut table = BTreeMap::new();
        for a in 0..=n {
            for b in 0..=n - a {
                table.insert(
                    (Key::Div(a), Key::Div(b)),
                    FreeVector::term(Key::Div(a + b), binomial(u64::from(a + b), u64::from(a))),
                );
            }
        }
        let op = LinearMap::from_columns(basis.clone(), basis.clone(), |k| match k {
            Key::Div(i) if *i < n => Ok(FreeVector::basis(Key::Div(i + 1))),
            _ => Ok(FreeVector::zero()),
        })
        .expect("static table");
        let t = FiniteTable { basis, table, unit: FreeVector::basis(Key::Div(0)), op };
        RbAlgebra::finite_unchecked(&format!("divided-mod-{}", n + 1), Rational::zero(), t, true)
    }

    /// `M₂(𝐤)` with `P = −λ·(projection onto upper triangular matrices along
    /// strictly lower ones)`. Noncommutative; needs `λ ≠ 0`.
    pub fn split_matrix2(weight: Rational) -> Result<RbAlgebra> {
        if weight.is_zero() {
            return Err(RotaError::ZeroWeight);
        }
        let e = |i: usize, j: usize| Key::name(format!("e{}{}", i + 1, j + 1));
        let basis: Vec<Key> = (0..2).flat_map(|i| (0..2).map(move |j| e(i, j))).collect();
        let mut table = BTreeMap::new();
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    table.insert((e(i, j), e(j, l)), FreeVector::basis(e(i, l)));
                }
            }
        }
        let lam = weight.clone();
        let op = LinearMap::from_columns(basis.clone(), basis.clone(), |k| {
            let upper = *k != e(1, 0);
            Ok(if upper { FreeVector::term(k.clone(), -lam.clone()) } else { FreeVector::zero() })
        })?;
        let unit = FreeVector::basis(e(0, 0)).add(&FreeVector::basis(e(1, 1)));
        let t = FiniteTable { basis, table, unit, op };
        Ok(RbAlgebra::finite_unchecked(&format!("split-matrix2(w={})", fmt_rational(&weight)), weight, t, false))
    }

    /// `R₁ × R₂` with `P = P₁ ⊕ P₂`; the weights must agree.
    pub fn product(left: &RbAlgebra, right: &RbAlgebra) -> Result<RbAlgebra> {
        if left.weight() != right.weight() {
            return Err(RotaError::WeightMismatch {
                left: fmt_rational(left.weight()),
                right: fmt_rational(right.weight()),
            });
        }
        Ok(RbAlgebra::from_parts(
            format!("{}x{}", left.name(), right.name()),
            left.weight().clone(),
            Kind::Product(Box::new(left.clone()), Box::new(right.clone())),
            left.is_commutative() && right.is_commutative(),
        ))
    }

    /// `M_n(A)` with the entrywise operator; `A` must be commutative.
    pub fn matrix(inner: &RbAlgebra, size: usize) -> Result<RbAlgebra> {
        if !inner.is_commutative() {
            return Err(RotaError::Invalid(format!(
                "matrix algebras need a commutative entry algebra, {} is not",
                inner.name()
            )));
        }
        if size == 0 {
            return Err(RotaError::DimensionMismatch("matrix size must be positive".into()));
        }
        Ok(RbAlgebra::from_parts(
            format!("M{size}({})", inner.name()),
            inner.weight().clone(),
            Kind::Matrix { inner: Box::new(inner.clone()), size },
            size == 1,
        ))
    }

    /// Unit, associativity and the Rota-Baxter identity on the sample set.
    pub fn audit(&self) -> Result<Vec<LawReport>> {
        audit_algebra(self, &self.generators()?)
    }

    /// Returns `self` if the sampled audit passes.
    pub fn audited(self) -> Result<RbAlgebra> {
        for r in self.audit()? {
            if let Some(c) = r.counterexample {
                return Err(RotaError::AxiomViolation(format!("{} fails {} at {c}", self.name(), r.law)));
            }
        }
        Ok(self)
    }
}

/// `product_rba` under its catalogue name.
pub fn product_rba(r1: &RbAlgebra, r2: &RbAlgebra) -> Result<RbAlgebra> {
    RbAlgebra::product(r1, r2)
}

/// `tilde_P` under its catalogue name.
pub fn tilde_p(r: &RbAlgebra) -> RbAlgebra {
    r.tilde()
}

/// `(𝐤, 0) × (𝐤, Id)` at weight −1.
pub fn zero_id_product() -> RbAlgebra {
    let lam = int(-1);
    RbAlgebra::product(&RbAlgebra::scalar_with(lam.clone(), Rational::zero()), &RbAlgebra::scalar_with(lam, int(1)))
        .expect("equal weights")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::rbalg::{
        atkinson_check, atkinson_pair, quasi_idempotent_check, rb_check, star_assoc_check, star_hom_check,
        tilde_involution_check, tilde_star_check, Elem,
    };

    fn t(a: &RbAlgebra, terms: &[(i64, i64)]) -> Elem {
        a.embed(&FreeVector::from_terms(terms.iter().map(|&(d, c)| (Key::Mono(d), int(c))))).unwrap()
    }

    fn u(a: &RbAlgebra, k: u32) -> Elem {
        a.embed(&FreeVector::basis(Key::Div(k))).unwrap()
    }

    fn builtins() -> Vec<RbAlgebra> {
        let lam = int(-1);
        vec![
            RbAlgebra::laurent(),
            RbAlgebra::divided(),
            RbAlgebra::scalar(int(1)),
            RbAlgebra::scalar(int(-1)),
            RbAlgebra::scalar(int(2)),
            RbAlgebra::dual_numbers(),
            RbAlgebra::truncated_divided(3),
            RbAlgebra::split_matrix2(lam.clone()).unwrap(),
            RbAlgebra::split_matrix2(rat(1, 2)).unwrap(),
            zero_id_product(),
            RbAlgebra::matrix(&RbAlgebra::laurent_with_precision(24), 2).unwrap(),
            RbAlgebra::matrix(&RbAlgebra::scalar(int(3)), 3).unwrap(),
        ]
    }

    #[test]
    fn builtins_and_their_variants_pass_the_audit() {
        for a in builtins() {
            for b in [a.clone(), a.tilde(), a.opposite(), a.scaled(&rat(-2, 3))] {
                for r in b.audit().unwrap() {
                    assert!(r.passed(), "{} fails {}: {:?}", b.name(), r.law, r.counterexample);
                }
            }
        }
    }

    #[test]
    fn pole_projection_with_positive_weight_is_rejected() {
        let bad = RbAlgebra::laurent_unchecked(int(1), 24, 6);
        let err = bad.audited().unwrap_err();
        assert!(matches!(err, RotaError::AxiomViolation(_)));
    }

    #[test]
    fn rb_check_examples() {
        let l = RbAlgebra::laurent();
        let x = t(&l, &[(-1, 1)]);
        assert!(rb_check(&l, &x, &x).unwrap());
        let d = RbAlgebra::divided();
        assert!(rb_check(&d, &u(&d, 0), &u(&d, 0)).unwrap());
        let zero_op = RbAlgebra::dual_numbers().with_form(crate::rbalg::OpForm { id: int(0), base: int(0) });
        let g = zero_op.generators().unwrap();
        assert!(rb_check(&zero_op, &g[0], &g[1]).unwrap());
    }

    #[test]
    fn tilde_examples() {
        let l = RbAlgebra::laurent().tilde();
        let got = l.op(&t(&l, &[(-1, 1), (0, 1), (1, 1)])).unwrap();
        assert!(l.same(&got, &t(&l, &[(0, 1), (1, 1)])).unwrap());

        let d = RbAlgebra::divided();
        let x = u(&d, 2);
        let neg = d.scale(&int(-1), &d.op(&x).unwrap()).unwrap();
        assert_eq!(d.tilde().op(&x).unwrap(), neg);

        let back = d.tilde().tilde();
        for g in d.generators().unwrap() {
            assert_eq!(back.op(&g).unwrap(), d.op(&g).unwrap());
            assert!(tilde_involution_check(&d, &g).unwrap());
        }
    }

    #[test]
    fn star_examples() {
        let l = RbAlgebra::laurent();
        let s = l.star(&t(&l, &[(1, 1)]), &t(&l, &[(-1, 1)])).unwrap();
        assert!(l.same(&s, &l.zero()).unwrap());

        let d = RbAlgebra::divided();
        let s = d.star(&u(&d, 0), &u(&d, 0)).unwrap();
        assert_eq!(s, Elem::Vec(FreeVector::term(Key::Div(1), int(2))));

        let zero_op = RbAlgebra::dual_numbers().with_form(crate::rbalg::OpForm { id: int(0), base: int(0) });
        let g = zero_op.generators().unwrap();
        assert_eq!(zero_op.star(&g[0], &g[0]).unwrap(), zero_op.zero());
    }

    #[test]
    fn star_laws_on_generators() {
        for a in builtins().into_iter().take(8) {
            let g = a.generators().unwrap();
            let g: Vec<_> = g.into_iter().take(6).collect();
            for x in &g {
                for y in &g {
                    assert!(star_hom_check(&a, x, y).unwrap(), "{}", a.name());
                    assert!(tilde_star_check(&a, x, y).unwrap(), "{}", a.name());
                    assert!(atkinson_check(&a, x, y).unwrap(), "{}", a.name());
                    for z in g.iter().take(3) {
                        assert!(star_assoc_check(&a, x, y, z).unwrap(), "{}", a.name());
                    }
                }
            }
        }
    }

    #[test]
    fn quasi_idempotency_examples() {
        let l = RbAlgebra::laurent();
        assert!(quasi_idempotent_check(&l, &l.generators().unwrap()).unwrap());
        let d = RbAlgebra::divided();
        assert!(!quasi_idempotent_check(&d, &[u(&d, 0)]).unwrap());
        for w in [int(1), int(-1), int(2)] {
            let s = RbAlgebra::scalar(w);
            assert!(quasi_idempotent_check(&s, &s.generators().unwrap()).unwrap());
        }
    }

    #[test]
    fn product_of_zero_and_identity() {
        let p = zero_id_product();
        let m = p.op_matrix().unwrap();
        assert_eq!(m.matrix(), &vec![vec![int(0), int(0)], vec![int(0), int(1)]]);
        let err = RbAlgebra::product(&RbAlgebra::scalar(int(1)), &RbAlgebra::scalar(int(2))).unwrap_err();
        assert!(matches!(err, RotaError::WeightMismatch { .. }));
        let x = p
            .embed(&FreeVector::from_terms([(Key::left(Key::name("1")), int(3)), (Key::right(Key::name("1")), int(5))]))
            .unwrap();
        let Elem::Pair(a, _) = p.op(&x).unwrap() else { panic!() };
        let Elem::Pair(x1, _) = x else { panic!() };
        let Kind::Product(l, _) = p.kind() else { panic!() };
        assert_eq!(*a, l.op(&x1).unwrap());
    }

    #[test]
    fn atkinson_examples() {
        let l = RbAlgebra::laurent();
        let r = t(&l, &[(-1, 1), (0, 1)]);
        let (a, b) = atkinson_pair(&l, &r).unwrap();
        assert!(l.same(&a, &t(&l, &[(-1, 1)])).unwrap());
        assert!(l.same(&b, &t(&l, &[(0, 1)])).unwrap());
        let (a, b) = atkinson_pair(&l, &l.zero()).unwrap();
        assert!(l.same(&a, &l.zero()).unwrap() && l.same(&b, &l.zero()).unwrap());
    }

    #[test]
    fn matrix_needs_commutative_entries() {
        let nc = RbAlgebra::split_matrix2(int(-1)).unwrap();
        assert!(RbAlgebra::matrix(&nc, 2).is_err());
    }

    #[test]
    fn small_precision_is_exhausted_not_truncated() {
        let l = RbAlgebra::laurent_unchecked(int(-1), 1, 1);
        let x = t(&l, &[(-2, 1)]);
        assert!(matches!(l.mul(&x, &x), Err(RotaError::PrecisionExhausted(_))));
    }
}
