//! Defining relation, associativity, dimension and closed-form products.

use num_traits::One;

use super::element::{random_element, urb_basis, urb_mul, urb_one, urb_q, UrbElement};
use crate::error::{Result, RotaError};
use crate::exactalg::{binomial, FreeVector, Key, Rational};
use crate::rbalg::{RbAlgebra, RotaBaxter};
use crate::report::LawReport;
use crate::sampling::rng;

/// Both sides of `Q·r·Q = P(r)·Q + Q·P̃(r)`.
pub fn urb_relation_sides(alg: &RbAlgebra, r: &FreeVector) -> Result<(UrbElement, UrbElement)> {
    let q = urb_q(alg);
    let rr = UrbElement::scalar(r.clone());
    let lhs = urb_mul(alg, &urb_mul(alg, &q, &rr)?, &q)?;
    let pq = urb_mul(alg, &UrbElement::scalar(alg.vop(r)?), &q)?;
    let qt = urb_mul(alg, &q, &UrbElement::scalar(alg.vtilde(r)?))?;
    Ok((lhs, pq.add(&qt)))
}

pub fn urb_relation_check(alg: &RbAlgebra, r: &FreeVector) -> Result<bool> {
    let (l, r) = urb_relation_sides(alg, r)?;
    Ok(l == r)
}

pub fn urb_associativity_check(alg: &RbAlgebra, triples: &[(UrbElement, UrbElement, UrbElement)]) -> Result<bool> {
    Ok(first_non_associative(alg, triples)?.is_none())
}

fn first_non_associative(alg: &RbAlgebra, triples: &[(UrbElement, UrbElement, UrbElement)]) -> Result<Option<usize>> {
    for (i, (u, v, w)) in triples.iter().enumerate() {
        let l = urb_mul(alg, &urb_mul(alg, u, v)?, w)?;
        let r = urb_mul(alg, u, &urb_mul(alg, v, w)?)?;
        if l != r {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `count` seeded triples of random elements.
pub fn sample_triples(alg: &RbAlgebra, seed: u64, count: usize) -> Vec<(UrbElement, UrbElement, UrbElement)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| (random_element(alg, &mut r), random_element(alg, &mut r), random_element(alg, &mut r)))
        .collect()
}

/// The relation on every generator, associativity on `triples` seeded
/// triples, and the unit law on the same samples.
pub fn urb_audit(alg: &RbAlgebra, seed: u64, triples: usize) -> Result<Vec<LawReport>> {
    let mut relation = LawReport::new("urb relation");
    for k in alg.generator_keys() {
        relation.samples += 1;
        if !urb_relation_check(alg, &FreeVector::basis(k.clone()))? {
            relation.counterexample = Some(k.to_string());
            break;
        }
    }
    let samples = sample_triples(alg, seed, triples);
    let mut unit = LawReport::new("urb unit");
    let one = urb_one(alg);
    for (u, _, _) in &samples {
        unit.samples += 1;
        if urb_mul(alg, &one, u)? != *u || urb_mul(alg, u, &one)? != *u {
            unit.counterexample = Some(u.to_string());
            break;
        }
    }
    let mut assoc = LawReport::new("urb associativity");
    match first_non_associative(alg, &samples)? {
        Some(i) => {
            assoc.samples = i + 1;
            let (u, v, w) = &samples[i];
            assoc.counterexample = Some(format!("({u}, {v}, {w})"));
        }
        None => assoc.samples = samples.len(),
    }
    Ok(vec![relation, unit, assoc])
}

/// `d(d+1)`, cross-checked against the size of the constructed basis.
pub fn urb_dimension(alg: &RbAlgebra) -> Result<usize> {
    let d = alg.dimension()?;
    let n = urb_basis(alg)?.len();
    if n != d * (d + 1) {
        return Err(RotaError::AxiomViolation(format!("basis has {n} elements, expected {}", d * (d + 1))));
    }
    Ok(n)
}

/// `(1⊗r − r⊗1)·(s₁⊗s₂)`; zero when `P = Id` at weight −1.
pub fn zero_divisor_product(alg: &RbAlgebra, r: &FreeVector, s1: &FreeVector, s2: &FreeVector) -> Result<UrbElement> {
    let one = alg.unit_vec();
    let diff = UrbElement::pure(&one, r).sub(&UrbElement::pure(r, &one));
    urb_mul(alg, &diff, &UrbElement::pure(s1, s2))
}

/// Closed forms of the product for special operators and carriers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// `P = 0`: `(r₁⊗s₁)(r₂⊗s₂) = −λ r₁ ⊗ s₁r₂s₂`.
    ZeroOperator,
    /// `P = −λ·Id`: `−λ r₁s₁r₂ ⊗ s₂`.
    ScalarOperator,
    /// `P = Id` at weight −1: `r₁s₁r₂ ⊗ s₂`.
    IdentityOperator,
    /// Pole projection on `t^i`: `t^{i+j+k} ⊗ t^l` if `j+k < 0`, else `t^i ⊗ t^{j+k+l}`.
    LaurentBranches,
    /// Divided powers, the multinomial form
    /// `(u_a⊗u_b)(u_c⊗u_d) = (a+b+c; a,b,c) u_{a+b+c} ⊗ u_d`.
    /// This does not agree with the product: `(u₁⊗u₁)(u₁⊗u₀) = 8u₄⊗u₀ − 2u₁⊗u₃`.
    DividedMultinomial,
    /// Divided powers, `u_a·(u_b⊗u_c) = C(a+b, a) u_{a+b} ⊗ u_c`.
    DividedLeft,
    /// Divided powers, `(u_a⊗u_b)·u_c = C(b+c, b) u_a ⊗ u_{b+c}`.
    DividedRight,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 7] = [
        ClosedForm::ZeroOperator,
        ClosedForm::ScalarOperator,
        ClosedForm::IdentityOperator,
        ClosedForm::LaurentBranches,
        ClosedForm::DividedMultinomial,
        ClosedForm::DividedLeft,
        ClosedForm::DividedRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::ZeroOperator => "zero operator",
            ClosedForm::ScalarOperator => "scalar operator",
            ClosedForm::IdentityOperator => "identity operator",
            ClosedForm::LaurentBranches => "laurent branches",
            ClosedForm::DividedMultinomial => "divided multinomial",
            ClosedForm::DividedLeft => "divided left",
            ClosedForm::DividedRight => "divided right",
        }
    }

    /// Number of basis keys in one instance of the formula.
    pub fn arity(self) -> usize {
        match self {
            ClosedForm::DividedLeft | ClosedForm::DividedRight => 3,
            _ => 4,
        }
    }

    /// The computed product and the closed form at `keys`.
    pub fn sides(self, alg: &RbAlgebra, keys: &[Key]) -> Result<(UrbElement, UrbElement)> {
        if keys.len() != self.arity() {
            return Err(RotaError::DimensionMismatch(format!("{} takes {} keys", self.name(), self.arity())));
        }
        let b = |i: usize| FreeVector::basis(keys[i].clone());
        let lam = alg.weight().clone();
        match self {
            ClosedForm::DividedLeft => {
                let lhs = urb_mul(alg, &UrbElement::scalar(b(0)), &UrbElement::pure(&b(1), &b(2)))?;
                let (m1, m2) = (div(&keys[0])?, div(&keys[1])?);
                let c = binomial(u64::from(m1 + m2), u64::from(m1));
                Ok((lhs, UrbElement::tensor_key(Key::Div(m1 + m2), keys[2].clone()).scale(&c)))
            }
            ClosedForm::DividedRight => {
                let lhs = urb_mul(alg, &UrbElement::pure(&b(0), &b(1)), &UrbElement::scalar(b(2)))?;
                let (n1, n2) = (div(&keys[1])?, div(&keys[2])?);
                let c = binomial(u64::from(n1 + n2), u64::from(n1));
                Ok((lhs, UrbElement::tensor_key(keys[0].clone(), Key::Div(n1 + n2)).scale(&c)))
            }
            _ => {
                let lhs = urb_mul(alg, &UrbElement::pure(&b(0), &b(1)), &UrbElement::pure(&b(2), &b(3)))?;
                let rhs = match self {
                    ClosedForm::ZeroOperator => {
                        let right = alg.vmul(&alg.vmul(&b(1), &b(2))?, &b(3))?;
                        UrbElement::pure(&b(0), &right).scale(&-lam)
                    }
                    ClosedForm::ScalarOperator => {
                        let left = alg.vmul(&alg.vmul(&b(0), &b(1))?, &b(2))?;
                        UrbElement::pure(&left, &b(3)).scale(&-lam)
                    }
                    ClosedForm::IdentityOperator => {
                        let left = alg.vmul(&alg.vmul(&b(0), &b(1))?, &b(2))?;
                        UrbElement::pure(&left, &b(3))
                    }
                    ClosedForm::LaurentBranches => {
                        let [i, j, k, l] = [0, 1, 2, 3].map(|n| mono(&keys[n]));
                        let (i, j, k, l) = (i?, j?, k?, l?);
                        if j + k < 0 {
                            UrbElement::tensor_key(Key::Mono(i + j + k), Key::Mono(l))
                        } else {
                            UrbElement::tensor_key(Key::Mono(i), Key::Mono(j + k + l))
                        }
                    }
                    ClosedForm::DividedMultinomial => {
                        let [m1, n1, m2, _] = [0, 1, 2, 3].map(|n| div(&keys[n]));
                        let (m1, n1, m2) = (m1?, n1?, m2?);
                        UrbElement::tensor_key(Key::Div(m1 + n1 + m2), keys[3].clone())
                            .scale(&multinomial(&[m1, n1, m2]))
                    }
                    ClosedForm::DividedLeft | ClosedForm::DividedRight => unreachable!("three-key forms"),
                };
                Ok((lhs, rhs))
            }
        }
    }
}

fn mono(k: &Key) -> Result<i64> {
    match k {
        Key::Mono(i) => Ok(*i),
        _ => Err(RotaError::UnknownBasisKey(format!("{k} is not a Laurent monomial"))),
    }
}

fn div(k: &Key) -> Result<u32> {
    match k {
        Key::Div(n) => Ok(*n),
        _ => Err(RotaError::UnknownBasisKey(format!("{k} is not a divided power"))),
    }
}

/// `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[u32]) -> Rational {
    let mut total = 0u64;
    let mut acc = Rational::one();
    for &p in parts {
        total += u64::from(p);
        acc *= binomial(total, u64::from(p));
    }
    acc
}

/// Compares the product with `form` on every tuple of `keys` of the
/// form's arity, stopping at the first mismatch.
pub fn closed_form_check(alg: &RbAlgebra, form: ClosedForm, keys: &[Key]) -> Result<LawReport> {
    let mut report = LawReport::new(form.name());
    for tuple in tuples(keys, form.arity()) {
        report.samples += 1;
        let (lhs, rhs) = form.sides(alg, &tuple)?;
        if lhs != rhs {
            let shown: Vec<String> = tuple.iter().map(Key::to_string).collect();
            report.counterexample = Some(format!("({}): product {lhs}, formula {rhs}", shown.join(", ")));
            break;
        }
    }
    Ok(report)
}

fn tuples(keys: &[Key], n: usize) -> Vec<Vec<Key>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                keys.iter().map(move |k| {
                    let mut t = t.clone();
                    t.push(k.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Products `(a⊗b)(c⊗d)` for all key quadruples, in lexicographic order.
pub fn product_table(alg: &RbAlgebra, keys: &[Key]) -> Result<Vec<(Vec<Key>, UrbElement)>> {
    tuples(keys, 4)
        .into_iter()
        .map(|t| {
            let b = |i: usize| FreeVector::basis(t[i].clone());
            let p = urb_mul(alg, &UrbElement::pure(&b(0), &b(1)), &UrbElement::pure(&b(2), &b(3)))?;
            Ok((t, p))
        })
        .collect()
}
