//! Rota-Baxter modules: the generic interface, the concrete [`RbModule`]
//! type and its constructor-time audit.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Result, RotaError};
use crate::exactalg::{
    index_of, keys_from_json, keys_to_json, matrix_from_json, matrix_to_json, FreeVector, Key, LinearMap, Rational,
};
use crate::rbalg::{algebra_ref_from_json, algebra_to_json, Elem, RbAlgebra, RotaBaxter};
use crate::report::LawReport;

/// Element type of the algebra acting on a module.
pub type AlgElem<M> = <<M as RotaBaxterModule>::Alg as RotaBaxter>::Elem;

/// A module over a Rota-Baxter algebra with an operator `p` of the same weight.
pub trait RotaBaxterModule {
    type Alg: RotaBaxter;
    type Vector: Clone + fmt::Debug + fmt::Display;

    fn algebra(&self) -> &Self::Alg;
    fn act(&self, a: &AlgElem<Self>, x: &Self::Vector) -> Result<Self::Vector>;
    /// The operator `p`.
    fn op_p(&self, x: &Self::Vector) -> Result<Self::Vector>;
    fn vzero(&self) -> Self::Vector;
    fn vadd(&self, x: &Self::Vector, y: &Self::Vector) -> Result<Self::Vector>;
    fn vscale(&self, c: &Rational, x: &Self::Vector) -> Result<Self::Vector>;
    fn vsame(&self, x: &Self::Vector, y: &Self::Vector) -> Result<bool>;

    fn weight(&self) -> &Rational {
        self.algebra().weight()
    }

    fn vcombo(&self, terms: &[(Rational, &Self::Vector)]) -> Result<Self::Vector> {
        let mut acc = self.vzero();
        for (c, x) in terms {
            if !c.is_zero() {
                acc = self.vadd(&acc, &self.vscale(c, x)?)?;
            }
        }
        Ok(acc)
    }

    /// `p̃(x) = −λx − p(x)`.
    fn tilde_p(&self, x: &Self::Vector) -> Result<Self::Vector> {
        let px = self.op_p(x)?;
        self.vcombo(&[(-self.weight().clone(), x), (-Rational::one(), &px)])
    }
}

/// Both sides of `P(a)p(x) = p(a·p(x)) + p(P(a)·x) + λp(a·x)`.
pub fn rbm_sides<M: RotaBaxterModule + ?Sized>(m: &M, a: &AlgElem<M>, x: &M::Vector) -> Result<(M::Vector, M::Vector)> {
    let r = m.algebra();
    let pa = r.op(a)?;
    let px = m.op_p(x)?;
    let lhs = m.act(&pa, &px)?;
    let t1 = m.op_p(&m.act(a, &px)?)?;
    let t2 = m.op_p(&m.act(&pa, x)?)?;
    let t3 = m.op_p(&m.act(a, x)?)?;
    let rhs = m.vcombo(&[(Rational::one(), &t1), (Rational::one(), &t2), (r.weight().clone(), &t3)])?;
    Ok((lhs, rhs))
}

pub fn rbm_check<M: RotaBaxterModule + ?Sized>(m: &M, a: &AlgElem<M>, x: &M::Vector) -> Result<bool> {
    let (lhs, rhs) = rbm_sides(m, a, x)?;
    m.vsame(&lhs, &rhs)
}

/// `r ⋆ x = r·p(x) + P(r)·x + λ r·x`.
pub fn derived_action<M: RotaBaxterModule + ?Sized>(m: &M, r: &AlgElem<M>, x: &M::Vector) -> Result<M::Vector> {
    let a = m.act(r, &m.op_p(x)?)?;
    let b = m.act(&m.algebra().op(r)?, x)?;
    let c = m.act(r, x)?;
    m.vcombo(&[(Rational::one(), &a), (Rational::one(), &b), (m.weight().clone(), &c)])
}

/// `p(r ⋆ x) = P(r)·p(x)`.
pub fn semilinearity_check<M: RotaBaxterModule + ?Sized>(m: &M, r: &AlgElem<M>, x: &M::Vector) -> Result<bool> {
    let lhs = m.op_p(&derived_action(m, r, x)?)?;
    let rhs = m.act(&m.algebra().op(r)?, &m.op_p(x)?)?;
    m.vsame(&lhs, &rhs)
}

/// The derived action with `p̃` in place of `p` and `P̃` in place of `P`.
pub fn tilde_derived_action<M: RotaBaxterModule + ?Sized>(m: &M, r: &AlgElem<M>, x: &M::Vector) -> Result<M::Vector> {
    let a = m.act(r, &m.tilde_p(x)?)?;
    let b = m.act(&m.algebra().tilde_op(r)?, x)?;
    let c = m.act(r, x)?;
    m.vcombo(&[(Rational::one(), &a), (Rational::one(), &b), (m.weight().clone(), &c)])
}

/// `r ⋆_{p̃} x = −(r ⋆_p x)`.
pub fn tilde_derived_check<M: RotaBaxterModule + ?Sized>(m: &M, r: &AlgElem<M>, x: &M::Vector) -> Result<bool> {
    let lhs = tilde_derived_action(m, r, x)?;
    let rhs = m.vscale(&-Rational::one(), &derived_action(m, r, x)?)?;
    m.vsame(&lhs, &rhs)
}

/// `P(a)(P(b)p(x)) = (P(a)P(b))p(x) = P(P(a)b + aP(b) + λab)p(x)`.
pub fn compatibility_chain_check<M: RotaBaxterModule + ?Sized>(
    m: &M,
    a: &AlgElem<M>,
    b: &AlgElem<M>,
    x: &M::Vector,
) -> Result<bool> {
    let r = m.algebra();
    let (pa, pb) = (r.op(a)?, r.op(b)?);
    let px = m.op_p(x)?;
    let first = m.act(&pa, &m.act(&pb, &px)?)?;
    let second = m.act(&r.mul(&pa, &pb)?, &px)?;
    let inner = r.combo(&[
        (Rational::one(), &r.mul(&pa, b)?),
        (Rational::one(), &r.mul(a, &pb)?),
        (r.weight().clone(), &r.mul(a, b)?),
    ])?;
    let third = m.act(&r.op(&inner)?, &px)?;
    Ok(m.vsame(&first, &second)? && m.vsame(&second, &third)?)
}

/// `p(P(1)·x) = P(1)·p(x)`.
pub fn p_one_invariance_module_check<M: RotaBaxterModule + ?Sized>(m: &M, x: &M::Vector) -> Result<bool> {
    let p1 = m.algebra().op(&m.algebra().one()?)?;
    let lhs = m.op_p(&m.act(&p1, x)?)?;
    let rhs = m.act(&p1, &m.op_p(x)?)?;
    m.vsame(&lhs, &rhs)
}

/// `(p(x), p̃(x))`.
pub fn atkinson_module_pair<M: RotaBaxterModule + ?Sized>(m: &M, x: &M::Vector) -> Result<(M::Vector, M::Vector)> {
    Ok((m.op_p(x)?, m.tilde_p(x)?))
}

/// `ρ₁(x) + ρ₂(x) = −λx`, and the twisted product `f(r) ∗ ρ(x) =
/// (P(r)p(x), −P̃(r)p̃(x))` equals `ρ(r ⋆ x)`, so it stays in the image.
pub fn atkinson_module_check<M: RotaBaxterModule + ?Sized>(m: &M, r: &AlgElem<M>, x: &M::Vector) -> Result<bool> {
    let (p, pt) = atkinson_module_pair(m, x)?;
    let sum = m.vadd(&p, &pt)?;
    if !m.vsame(&sum, &m.vscale(&-m.weight().clone(), x)?)? {
        return Ok(false);
    }
    let alg = m.algebra();
    let first = m.act(&alg.op(r)?, &p)?;
    let second = m.vscale(&-Rational::one(), &m.act(&alg.tilde_op(r)?, &pt)?)?;
    let (q, qt) = atkinson_module_pair(m, &derived_action(m, r, x)?)?;
    Ok(m.vsame(&first, &q)? && m.vsame(&second, &qt)?)
}

// ---- concrete modules --------------------------------------------------

/// Finite-dimensional carrier: one action matrix per algebra basis key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCarrier {
    pub basis: Vec<Key>,
    pub action: BTreeMap<Key, LinearMap>,
    pub op: LinearMap,
}

#[derive(Clone, Debug)]
pub enum Carrier {
    Finite(FiniteCarrier),
    /// The algebra acting on itself with `p = P`.
    Regular,
}

#[derive(Clone, Debug)]
pub struct RbModule {
    algebra: RbAlgebra,
    carrier: Carrier,
    certificate: Vec<LawReport>,
}

impl RbModule {
    /// Builds and audits a finite-dimensional module. The audit is exact:
    /// unit and associativity of the action on all basis pairs, and the
    /// module identity as a matrix identity for every algebra basis key.
    pub fn finite(
        algebra: &RbAlgebra,
        basis: Vec<Key>,
        action: BTreeMap<Key, LinearMap>,
        op: LinearMap,
    ) -> Result<Self> {
        let mut m = Self::finite_unchecked(algebra, basis, action, op)?;
        m.certificate = m.audit()?;
        if let Some(bad) = m.certificate.iter().find(|r| !r.passed()) {
            return Err(RotaError::AxiomViolation(format!(
                "{} fails at {}",
                bad.law,
                bad.counterexample.as_deref().unwrap_or("?")
            )));
        }
        Ok(m)
    }

    /// Shape checks only; law checks are left to the caller.
    pub fn finite_unchecked(
        algebra: &RbAlgebra,
        basis: Vec<Key>,
        action: BTreeMap<Key, LinearMap>,
        op: LinearMap,
    ) -> Result<Self> {
        let alg_basis = algebra.basis()?;
        if alg_basis.len() != action.len() || alg_basis.iter().any(|k| !action.contains_key(k)) {
            return Err(RotaError::DimensionMismatch(format!(
                "action must give one matrix per basis element of {}",
                algebra.name()
            )));
        }
        for (k, rho) in action.iter().map(|(k, r)| (k.to_string(), r)).chain([("p".to_string(), &op)]) {
            if rho.domain() != basis.as_slice() || rho.codomain() != basis.as_slice() {
                return Err(RotaError::DimensionMismatch(format!("matrix for {k} is not on the carrier basis")));
            }
        }
        Ok(RbModule {
            algebra: algebra.clone(),
            carrier: Carrier::Finite(FiniteCarrier { basis, action, op }),
            certificate: Vec::new(),
        })
    }

    /// `R` acting on itself with `p = P`; trusted on the algebra's own audit.
    pub fn regular(algebra: &RbAlgebra) -> Self {
        RbModule { algebra: algebra.clone(), carrier: Carrier::Regular, certificate: Vec::new() }
    }

    /// Any `R`-module with `p = 0`.
    pub fn with_zero_operator(algebra: &RbAlgebra, basis: Vec<Key>, action: BTreeMap<Key, LinearMap>) -> Result<Self> {
        let op = LinearMap::zero(basis.clone(), basis.clone());
        Self::finite(algebra, basis, action, op)
    }

    pub fn algebra(&self) -> &RbAlgebra {
        &self.algebra
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn certificate(&self) -> &[LawReport] {
        &self.certificate
    }

    pub fn is_regular(&self) -> bool {
        matches!(self.carrier, Carrier::Regular)
    }

    /// The same module with explicit matrices (regular modules over
    /// finite-dimensional algebras are converted).
    pub fn to_finite(&self) -> Result<RbModule> {
        match &self.carrier {
            Carrier::Finite(_) => Ok(self.clone()),
            Carrier::Regular => {
                let basis = self.algebra.basis()?;
                let mut action = BTreeMap::new();
                for k in &basis {
                    action.insert(k.clone(), self.algebra.left_mul_matrix(&FreeVector::basis(k.clone()))?);
                }
                let mut m = Self::finite_unchecked(&self.algebra, basis, action, self.algebra.op_matrix()?)?;
                m.certificate = self.certificate.clone();
                Ok(m)
            }
        }
    }

    pub fn finite_carrier(&self) -> Result<&FiniteCarrier> {
        match &self.carrier {
            Carrier::Finite(c) => Ok(c),
            Carrier::Regular => Err(RotaError::NotFiniteBased(format!("regular module over {}", self.algebra.name()))),
        }
    }

    pub fn basis(&self) -> Result<Vec<Key>> {
        match &self.carrier {
            Carrier::Finite(c) => Ok(c.basis.clone()),
            Carrier::Regular => self.algebra.basis(),
        }
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.basis()?.len())
    }

    pub fn op_matrix(&self) -> Result<LinearMap> {
        match &self.carrier {
            Carrier::Finite(c) => Ok(c.op.clone()),
            Carrier::Regular => self.algebra.op_matrix(),
        }
    }

    /// Matrix of the action of an algebra element.
    pub fn rho(&self, a: &Elem) -> Result<LinearMap> {
        match &self.carrier {
            Carrier::Finite(c) => {
                let mut out = LinearMap::zero(c.basis.clone(), c.basis.clone());
                for (k, coeff) in self.algebra.coords(a)?.iter() {
                    let m = c.action.get(k).ok_or_else(|| RotaError::UnknownBasisKey(k.to_string()))?;
                    out = out.combine(&Rational::one(), m, coeff)?;
                }
                Ok(out)
            }
            Carrier::Regular => self.algebra.left_mul_matrix(&self.algebra.coords(a)?),
        }
    }

    /// Carrier element with the given coordinates.
    pub fn vector(&self, v: FreeVector) -> Result<Elem> {
        match &self.carrier {
            Carrier::Finite(c) => {
                for k in v.keys() {
                    index_of(&c.basis, k)?;
                }
                Ok(Elem::Vec(v))
            }
            Carrier::Regular => self.algebra.embed(&v),
        }
    }

    /// Basis vectors of a finite carrier, or the algebra's generators.
    pub fn sample_vectors(&self) -> Result<Vec<Elem>> {
        match &self.carrier {
            Carrier::Finite(c) => Ok(c.basis.iter().map(|k| Elem::Vec(FreeVector::basis(k.clone()))).collect()),
            Carrier::Regular => self.algebra.generators(),
        }
    }

    pub fn coords(&self, x: &Elem) -> Result<FreeVector> {
        match (&self.carrier, x) {
            (Carrier::Finite(_), Elem::Vec(v)) => Ok(v.clone()),
            (Carrier::Finite(_), _) => Err(RotaError::KindMismatch(format!("{x} is not a carrier vector"))),
            (Carrier::Regular, _) => self.algebra.coords(x),
        }
    }

    /// Exact matrix audit of a finite module (regular modules are converted
    /// first; infinite regular modules have nothing to audit here).
    pub fn audit(&self) -> Result<Vec<LawReport>> {
        let m = match &self.carrier {
            Carrier::Regular if !self.algebra.is_finite_based() => return Ok(Vec::new()),
            _ => self.to_finite()?,
        };
        let c = m.finite_carrier()?;
        let alg = &m.algebra;
        let alg_basis = alg.basis()?;
        let lam = alg.weight().clone();
        let id = LinearMap::identity(c.basis.clone());

        let mut unit = LawReport::new("module unit");
        unit.samples = 1;
        let rho_one = m.rho(&alg.one()?)?;
        if let Some(j) = first_differing_column(&rho_one, &id) {
            unit.counterexample = Some(format!("1·{} ≠ {}", c.basis[j], c.basis[j]));
        }

        let mut assoc = LawReport::new("module associativity");
        'outer: for a in &alg_basis {
            for b in &alg_basis {
                assoc.samples += 1;
                let lhs = c.action[a].compose(&c.action[b])?;
                let rhs = m.rho(&alg.embed(&alg.basis_mul(a, b)?)?)?;
                if let Some(j) = first_differing_column(&lhs, &rhs) {
                    assoc.counterexample = Some(format!("({a}, {b}, {})", c.basis[j]));
                    break 'outer;
                }
            }
        }

        let mut axiom = LawReport::new("rota-baxter module");
        let p = &c.op;
        for a in &alg_basis {
            axiom.samples += c.basis.len();
            let ra = &c.action[a];
            let rpa = m.rho(&alg.embed(&alg.basis_op(a)?)?)?;
            let lhs = rpa.compose(p)?;
            let rhs =
                p.compose(&ra.compose(p)?)?.add(&p.compose(&rpa)?)?.combine(&Rational::one(), &p.compose(ra)?, &lam)?;
            if let Some(j) = first_differing_column(&lhs, &rhs) {
                axiom.counterexample = Some(format!("({a}, {})", c.basis[j]));
                break;
            }
        }
        Ok(vec![unit, assoc, axiom])
    }

    /// Transports the module along an invertible `g` of the carrier:
    /// action `g ρ(a) g⁻¹`, operator `g p g⁻¹`.
    pub fn transport(&self, g: &LinearMap) -> Result<RbModule> {
        let m = self.to_finite()?;
        let c = m.finite_carrier()?;
        if g.domain() != c.basis.as_slice() || g.codomain() != c.basis.as_slice() {
            return Err(RotaError::DimensionMismatch("transport map must act on the carrier basis".into()));
        }
        let gi = g.inverse().ok_or_else(|| RotaError::Invalid("transport map is not invertible".into()))?;
        let conj = |x: &LinearMap| g.compose(x)?.compose(&gi);
        let action = c.action.iter().map(|(k, r)| Ok((k.clone(), conj(r)?))).collect::<Result<_>>()?;
        let mut out = Self::finite_unchecked(&m.algebra, c.basis.clone(), action, conj(&c.op)?)?;
        out.certificate = m.certificate.clone();
        Ok(out)
    }

    pub(crate) fn from_parts(algebra: RbAlgebra, carrier: Carrier, certificate: Vec<LawReport>) -> Self {
        RbModule { algebra, carrier, certificate }
    }

    /// `{"algebra": .., "basis": [..], "action": {"key": matrix}, "operator": matrix}`,
    /// or `{"algebra": .., "regular": true}`.
    pub fn to_json(&self) -> Value {
        match &self.carrier {
            Carrier::Regular => json!({"algebra": algebra_to_json(&self.algebra), "regular": true}),
            Carrier::Finite(c) => {
                let mut action = Map::new();
                for (k, m) in &c.action {
                    action.insert(k.to_string(), matrix_to_json(m.matrix()));
                }
                json!({
                    "algebra": algebra_to_json(&self.algebra),
                    "basis": keys_to_json(&c.basis),
                    "action": action,
                    "operator": matrix_to_json(c.op.matrix()),
                })
            }
        }
    }

    /// Parses and audits a module descriptor.
    pub fn from_json(v: &Value) -> Result<Self> {
        let m = Self::from_json_unchecked(v)?;
        match m.carrier {
            Carrier::Regular => Ok(m),
            Carrier::Finite(c) => Self::finite(&m.algebra, c.basis, c.action, c.op),
        }
    }

    pub fn from_json_unchecked(v: &Value) -> Result<Self> {
        let algebra = algebra_ref_from_json(
            v.get("algebra").ok_or_else(|| RotaError::Invalid("module needs `algebra`".into()))?,
        )?;
        if v.get("regular").and_then(Value::as_bool) == Some(true) {
            return Ok(Self::regular(&algebra));
        }
        let basis = keys_from_json(&v["basis"])?;
        let entries = v["action"]
            .as_object()
            .ok_or_else(|| RotaError::Invalid("`action` must map algebra keys to matrices".into()))?;
        let mut action = BTreeMap::new();
        for (k, m) in entries {
            let key: Key = k.parse()?;
            action.insert(key, LinearMap::new(basis.clone(), basis.clone(), matrix_from_json(m)?)?);
        }
        let op = LinearMap::new(basis.clone(), basis.clone(), matrix_from_json(&v["operator"])?)?;
        Self::finite_unchecked(&algebra, basis, action, op)
    }
}

fn first_differing_column(a: &LinearMap, b: &LinearMap) -> Option<usize> {
    let n = a.domain().len();
    (0..n).find(|&j| (0..a.codomain().len()).any(|i| a.entry(i, j) != b.entry(i, j)))
}

impl RotaBaxterModule for RbModule {
    type Alg = RbAlgebra;
    type Vector = Elem;

    fn algebra(&self) -> &RbAlgebra {
        &self.algebra
    }

    fn act(&self, a: &Elem, x: &Elem) -> Result<Elem> {
        match &self.carrier {
            Carrier::Finite(_) => Ok(Elem::Vec(self.rho(a)?.apply(&self.coords(x)?)?)),
            Carrier::Regular => self.algebra.mul(a, x),
        }
    }

    fn op_p(&self, x: &Elem) -> Result<Elem> {
        match &self.carrier {
            Carrier::Finite(c) => Ok(Elem::Vec(c.op.apply(&self.coords(x)?)?)),
            Carrier::Regular => self.algebra.op(x),
        }
    }

    fn vzero(&self) -> Elem {
        match &self.carrier {
            Carrier::Finite(_) => Elem::Vec(FreeVector::zero()),
            Carrier::Regular => self.algebra.zero(),
        }
    }

    fn vadd(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        match &self.carrier {
            Carrier::Finite(_) => Ok(Elem::Vec(self.coords(x)?.add(&self.coords(y)?))),
            Carrier::Regular => self.algebra.add(x, y),
        }
    }

    fn vscale(&self, c: &Rational, x: &Elem) -> Result<Elem> {
        match &self.carrier {
            Carrier::Finite(_) => Ok(Elem::Vec(self.coords(x)?.scale(c))),
            Carrier::Regular => self.algebra.scale(c, x),
        }
    }

    fn vsame(&self, x: &Elem, y: &Elem) -> Result<bool> {
        match &self.carrier {
            Carrier::Finite(_) => Ok(self.coords(x)? == self.coords(y)?),
            Carrier::Regular => self.algebra.same(x, y),
        }
    }
}
