//! Strict Rota-Baxter bimodules: a left `(R, P)` action of weight `λ`, a
//! right `(S, P')` action of weight `μ` and one operator `p` compatible with
//! both sides.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Result, RotaError};
use crate::exactalg::{FreeVector, Key, LinearMap, Rational};
use crate::rbalg::{Elem, RbAlgebra, RotaBaxter};

#[derive(Clone, Debug)]
pub struct BimoduleWitness {
    left: RbAlgebra,
    right: RbAlgebra,
    basis: Vec<Key>,
    left_action: BTreeMap<Key, LinearMap>,
    /// Matrix of `m ↦ m·s`, so `ρ(ss') = ρ(s')ρ(s)`.
    right_action: BTreeMap<Key, LinearMap>,
    op: LinearMap,
}

/// Outcome of [`strict_bimodule_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BimoduleVerdict {
    /// Both one-sided identities hold.
    pub identities: bool,
    /// `(λ − μ)·p(r·p(m)·s) = 0`. A failure marks an inconsistent witness.
    pub weights_agree: bool,
}

impl BimoduleVerdict {
    pub fn holds(&self) -> bool {
        self.identities && self.weights_agree
    }
}

impl BimoduleWitness {
    /// Checks shapes and that the two actions form a unital bimodule (left
    /// and right actions commute, each is unital and associative).
    pub fn new(
        left: &RbAlgebra,
        right: &RbAlgebra,
        basis: Vec<Key>,
        left_action: BTreeMap<Key, LinearMap>,
        right_action: BTreeMap<Key, LinearMap>,
        op: LinearMap,
    ) -> Result<Self> {
        for (alg, action) in [(left, &left_action), (right, &right_action)] {
            let keys = alg.basis()?;
            if keys.len() != action.len() || keys.iter().any(|k| !action.contains_key(k)) {
                return Err(RotaError::DimensionMismatch(format!(
                    "one action matrix per basis element of {}",
                    alg.name()
                )));
            }
        }
        for m in left_action.values().chain(right_action.values()).chain([&op]) {
            if m.domain() != basis.as_slice() || m.codomain() != basis.as_slice() {
                return Err(RotaError::DimensionMismatch("action matrices must act on the carrier basis".into()));
            }
        }
        let w = BimoduleWitness { left: left.clone(), right: right.clone(), basis, left_action, right_action, op };
        let id = LinearMap::identity(w.basis.clone());
        if w.rho_left(&left.one()?)? != id || w.rho_right(&right.one()?)? != id {
            return Err(RotaError::AxiomViolation("bimodule action is not unital".into()));
        }
        for (a, ra) in &w.left_action {
            for (b, rb) in &w.left_action {
                if ra.compose(rb)? != w.rho_left(&left.embed(&left.basis_mul(a, b)?)?)? {
                    return Err(RotaError::AxiomViolation(format!("left action not associative at ({a}, {b})")));
                }
            }
            for (s, rs) in &w.right_action {
                if ra.compose(rs)? != rs.compose(ra)? {
                    return Err(RotaError::AxiomViolation(format!("actions of {a} and {s} do not commute")));
                }
            }
        }
        for (s, rs) in &w.right_action {
            for (t, rt) in &w.right_action {
                if rt.compose(rs)? != w.rho_right(&right.embed(&right.basis_mul(s, t)?)?)? {
                    return Err(RotaError::AxiomViolation(format!("right action not associative at ({s}, {t})")));
                }
            }
        }
        Ok(w)
    }

    pub fn basis(&self) -> &[Key] {
        &self.basis
    }

    pub fn left(&self) -> &RbAlgebra {
        &self.left
    }

    pub fn right(&self) -> &RbAlgebra {
        &self.right
    }

    fn rho(alg: &RbAlgebra, action: &BTreeMap<Key, LinearMap>, basis: &[Key], a: &Elem) -> Result<LinearMap> {
        let mut out = LinearMap::zero(basis.to_vec(), basis.to_vec());
        for (k, c) in alg.coords(a)?.iter() {
            let m = action.get(k).ok_or_else(|| RotaError::UnknownBasisKey(k.to_string()))?;
            out = out.combine(&Rational::one(), m, c)?;
        }
        Ok(out)
    }

    fn rho_left(&self, r: &Elem) -> Result<LinearMap> {
        Self::rho(&self.left, &self.left_action, &self.basis, r)
    }

    fn rho_right(&self, s: &Elem) -> Result<LinearMap> {
        Self::rho(&self.right, &self.right_action, &self.basis, s)
    }
}

/// Checks, for `r ∈ R`, `m ∈ M`, `s ∈ S`:
///
/// * `p(m)P'(s) = p(p(m)s + mP'(s) + μ ms)`
/// * `P(r)p(m) = p(r p(m) + P(r)m + λ rm)`
/// * `(λ − μ)·p(r·p(m)·s) = 0`
pub fn strict_bimodule_check(b: &BimoduleWitness, r: &Elem, m: &FreeVector, s: &Elem) -> Result<BimoduleVerdict> {
    let (lam, mu) = (b.left.weight(), b.right.weight());
    let p = &b.op;
    let pm = p.apply(m)?;

    let (rs, rps) = (b.rho_right(s)?, b.rho_right(&b.right.op(s)?)?);
    let right_lhs = rps.apply(&pm)?;
    let right_inner = rs.apply(&pm)?.add(&rps.apply(m)?).add(&rs.apply(m)?.scale(mu));
    let right_ok = right_lhs == p.apply(&right_inner)?;

    let (rr, rpr) = (b.rho_left(r)?, b.rho_left(&b.left.op(r)?)?);
    let left_lhs = rpr.apply(&pm)?;
    let left_inner = rr.apply(&pm)?.add(&rpr.apply(m)?).add(&rr.apply(m)?.scale(lam));
    let left_ok = left_lhs == p.apply(&left_inner)?;

    let chained = p.apply(&rs.apply(&rr.apply(&pm)?)?)?;
    let weights_agree = chained.scale(&(lam - mu)).is_zero();
    Ok(BimoduleVerdict { identities: left_ok && right_ok, weights_agree })
}
