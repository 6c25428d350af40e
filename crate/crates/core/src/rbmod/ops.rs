//! Constructions on finite and regular modules.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::module::{Carrier, FiniteCarrier, RbModule, RotaBaxterModule};
use crate::error::{Result, RotaError};
use crate::exactalg::{echelon_basis, fmt_rational, to_dense, FreeVector, Key, LinearMap, Rational};
use crate::rbalg::{
    algebra_to_json, product_rba, reconstruct_from_split, regular_singular_split, RbAlgebra, RotaBaxter,
};
use crate::report::LawReport;

/// Eigenspace bases of a quasi-idempotent module operator, in echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSplit {
    /// Basis of `M_{−λ} = ker(p + λ)`.
    pub regular: Vec<FreeVector>,
    /// Basis of `M₀ = ker p`.
    pub singular: Vec<FreeVector>,
}

pub fn same_algebra(a: &RbAlgebra, b: &RbAlgebra) -> bool {
    a.weight() == b.weight() && algebra_to_json(a) == algebra_to_json(b)
}

/// Splits `M = M_{−λ} ⊕ M₀` and confirms `R_{−λ}·M_{−λ} ⊆ M_{−λ}` and
/// `R₀·M₀ ⊆ M₀` on eigenbasis elements of the algebra.
pub fn module_split(m: &RbModule) -> Result<ModuleSplit> {
    let m = m.to_finite()?;
    let c = m.finite_carrier()?;
    let lam = m.weight().clone();
    let (regular, singular) = regular_singular_split(&c.op, &lam)?;

    let alg = m.algebra();
    let alg_op = alg.op_matrix()?;
    let alg_basis = alg_op.domain().to_vec();
    let alg_regular = alg_op.add(&LinearMap::scalar(alg_basis.clone(), &lam))?.kernel_basis();
    let alg_singular = alg_op.kernel_basis();
    let shifted = c.op.add(&LinearMap::scalar(c.basis.clone(), &lam))?;

    for (rs, ms, kill, label) in [
        (&alg_regular, &regular, &shifted, "R_{-λ}·M_{-λ} ⊄ M_{-λ}"),
        (&alg_singular, &singular, &c.op, "R_0·M_0 ⊄ M_0"),
    ] {
        for a in rs {
            let rho = m.rho(&alg.embed(a)?)?;
            for x in ms {
                if !kill.apply(&rho.apply(x)?)?.is_zero() {
                    return Err(RotaError::AxiomViolation(format!("{label} at ({a}, {x})")));
                }
            }
        }
    }
    Ok(ModuleSplit { regular, singular })
}

/// The operator `−λ·(projection onto M_{−λ} along M₀)` rebuilt from a split.
pub fn reconstruct_operator(m: &RbModule, split: &ModuleSplit) -> Result<LinearMap> {
    reconstruct_from_split(&m.basis()?, &split.regular, &split.singular, m.weight())
}

/// Echelon bases of two spans are equal.
pub fn same_subspace(basis: &[Key], a: &[FreeVector], b: &[FreeVector]) -> Result<bool> {
    let dense = |vs: &[FreeVector]| vs.iter().map(|v| to_dense(basis, v)).collect::<Result<Vec<_>>>();
    Ok(echelon_basis(&dense(a)?) == echelon_basis(&dense(b)?))
}

/// `(M, −λ − p)` over `(R, P̃)`.
pub fn dual_module(m: &RbModule) -> RbModule {
    let algebra = m.algebra().tilde();
    match m.carrier() {
        Carrier::Regular => RbModule::regular(&algebra),
        Carrier::Finite(c) => {
            let lam = m.weight();
            let op = LinearMap::scalar(c.basis.clone(), &-lam.clone()).sub(&c.op).expect("square operator");
            let carrier = FiniteCarrier { op, ..c.clone() };
            RbModule::from_parts(algebra, Carrier::Finite(carrier), relabel(m.certificate(), "dual"))
        }
    }
}

/// `(M, αp)` over `(R, αP)` of weight `αλ`.
pub fn scale_module(m: &RbModule, alpha: &Rational) -> RbModule {
    let algebra = m.algebra().scaled(alpha);
    match m.carrier() {
        Carrier::Regular => RbModule::regular(&algebra),
        Carrier::Finite(c) => {
            let carrier = FiniteCarrier { op: c.op.scale(alpha), ..c.clone() };
            RbModule::from_parts(algebra, Carrier::Finite(carrier), relabel(m.certificate(), "scaled"))
        }
    }
}

fn relabel(reports: &[LawReport], how: &str) -> Vec<LawReport> {
    reports.iter().map(|r| LawReport { law: format!("{} ({how})", r.law), ..r.clone() }).collect()
}

/// `M₁ ⊕ M₂` over the same algebra, with block-diagonal operator. Carrier
/// keys are tagged `L(..)` and `R(..)`.
pub fn direct_sum(m1: &RbModule, m2: &RbModule) -> Result<RbModule> {
    if !same_algebra(m1.algebra(), m2.algebra()) {
        return Err(RotaError::KindMismatch(format!(
            "modules over {} and {}",
            m1.algebra().name(),
            m2.algebra().name()
        )));
    }
    let (f1, f2) = (m1.to_finite()?, m2.to_finite()?);
    let (c1, c2) = (f1.finite_carrier()?, f2.finite_carrier()?);
    let basis = tagged_basis(&c1.basis, &c2.basis);
    let mut action = BTreeMap::new();
    for k in m1.algebra().basis()? {
        action.insert(k.clone(), block(&basis, &c1.action[&k], None, None, &c2.action[&k])?);
    }
    let op = block(&basis, &c1.op, None, None, &c2.op)?;
    RbModule::finite(m1.algebra(), basis, action, op)
}

fn tagged_basis(b1: &[Key], b2: &[Key]) -> Vec<Key> {
    b1.iter().cloned().map(Key::left).chain(b2.iter().cloned().map(Key::right)).collect()
}

/// `[[a, b], [c, d]]` on `L(M₁) ⊕ R(M₂)`; `b: M₂ → M₁`, `c: M₁ → M₂`.
fn block(
    basis: &[Key],
    a: &LinearMap,
    b: Option<&LinearMap>,
    c: Option<&LinearMap>,
    d: &LinearMap,
) -> Result<LinearMap> {
    let n1 = a.domain().len();
    let n = basis.len();
    let entry = |i: usize, j: usize| match (i < n1, j < n1) {
        (true, true) => a.entry(i, j).clone(),
        (false, false) => d.entry(i - n1, j - n1).clone(),
        (true, false) => b.map_or_else(Rational::zero, |b| b.entry(i, j - n1).clone()),
        (false, true) => c.map_or_else(Rational::zero, |c| c.entry(i - n1, j).clone()),
    };
    let out = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    LinearMap::new(basis.to_vec(), basis.to_vec(), out)
}

/// Result of [`product_module_conditions`].
#[derive(Clone, Debug)]
pub struct ProductModuleOutcome {
    /// Conditions (a) and (b).
    pub conditions: bool,
    /// Condition (c): `p_ij(r_j ⋆ m_j) = 0`. Together with (a) and (b) this
    /// is equivalent to the module identity on the assembled operator.
    pub star_condition: bool,
    /// The assembled operator on `M₁ ⊕ M₂` over `R₁ × R₂`, unaudited.
    pub module: RbModule,
    /// Exact audit of the assembled module.
    pub audit: Vec<LawReport>,
}

impl ProductModuleOutcome {
    /// (a) and (b) hold.
    pub fn accepted(&self) -> bool {
        self.conditions
    }

    /// The assembled operator really is a module operator.
    pub fn is_module(&self) -> bool {
        self.audit.iter().all(LawReport::passed)
    }
}

/// Conditions for `p = [[p₁, p₁₂], [p₂₁, p₂]]` on `M₁ ⊕ M₂` over `R₁ × R₂`,
/// for `(i, j) = (1, 2), (2, 1)`, every basis `rᵢ`, `r_j` and every basis `m_j`:
///
/// * (a) `p_ji(rᵢ·p_ij(m_j)) = 0`
/// * (b) `pᵢ(rᵢ·p_ij(m_j)) = Pᵢ(rᵢ)·p_ij(m_j)`
/// * (c) `p_ij(r_j·p_j(m_j) + P_j(r_j)·m_j + λ r_j·m_j) = 0`
///
/// (a) and (b) alone do not make `p` a module operator: over
/// `(𝐤, 0) × (𝐤, Id)` at weight −1, `p₁ = 0`, `p₂ = 1`, `p₁₂ = 1` satisfies
/// both, yet the identity fails at `(e₂, m₂)`. The outcome reports all
/// three conditions and the audit of the assembled operator.
pub fn product_module_conditions(
    m1: &RbModule,
    m2: &RbModule,
    p12: &LinearMap,
    p21: &LinearMap,
) -> Result<ProductModuleOutcome> {
    let (r1, r2) = (m1.algebra(), m2.algebra());
    if r1.weight() != r2.weight() {
        return Err(RotaError::WeightMismatch { left: fmt_rational(r1.weight()), right: fmt_rational(r2.weight()) });
    }
    let (f1, f2) = (m1.to_finite()?, m2.to_finite()?);
    let (c1, c2) = (f1.finite_carrier()?, f2.finite_carrier()?);
    if p12.domain() != c2.basis.as_slice() || p12.codomain() != c1.basis.as_slice() {
        return Err(RotaError::DimensionMismatch("p12 must map M2 to M1".into()));
    }
    if p21.domain() != c1.basis.as_slice() || p21.codomain() != c2.basis.as_slice() {
        return Err(RotaError::DimensionMismatch("p21 must map M1 to M2".into()));
    }
    let conditions = cross_conditions(&f1, p12, p21)? && cross_conditions(&f2, p21, p12)?;
    let star_condition = star_condition(&f2, p12)? && star_condition(&f1, p21)?;

    let algebra = product_rba(r1, r2)?;
    let basis = tagged_basis(&c1.basis, &c2.basis);
    let zero1 = LinearMap::zero(c1.basis.clone(), c1.basis.clone());
    let zero2 = LinearMap::zero(c2.basis.clone(), c2.basis.clone());
    let mut action = BTreeMap::new();
    for (k, rho) in &c1.action {
        action.insert(Key::left(k.clone()), block(&basis, rho, None, None, &zero2)?);
    }
    for (k, rho) in &c2.action {
        action.insert(Key::right(k.clone()), block(&basis, &zero1, None, None, rho)?);
    }
    let op = block(&basis, &c1.op, Some(p12), Some(p21), &c2.op)?;
    let module = RbModule::finite_unchecked(&algebra, basis, action, op)?;
    let audit = module.audit()?;
    let module = RbModule::from_parts(algebra, module.carrier().clone(), audit.clone());
    Ok(ProductModuleOutcome { conditions, star_condition, module, audit })
}

/// (a) and (b) for one direction: `into: M_j → M_i`, `back: M_i → M_j`,
/// with `mi` the module `M_i`.
fn cross_conditions(mi: &RbModule, into: &LinearMap, back: &LinearMap) -> Result<bool> {
    let c = mi.finite_carrier()?;
    let alg = mi.algebra();
    for k in alg.basis()? {
        let rho = &c.action[&k];
        let moved = rho.compose(into)?;
        if !back.compose(&moved)?.is_zero() {
            return Ok(false);
        }
        let rho_p = mi.rho(&alg.embed(&alg.basis_op(&k)?)?)?;
        if c.op.compose(&moved)? != rho_p.compose(into)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (c) for one direction: `out: M_j → M_i` kills the derived action of `R_j`
/// on `M_j`.
fn star_condition(mj: &RbModule, out: &LinearMap) -> Result<bool> {
    let c = mj.finite_carrier()?;
    let alg = mj.algebra();
    for k in alg.basis()? {
        let rho = &c.action[&k];
        let rho_p = mj.rho(&alg.embed(&alg.basis_op(&k)?)?)?;
        let star = rho.compose(&c.op)?.add(&rho_p)?.combine(&Rational::one(), rho, alg.weight())?;
        if !out.compose(&star)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f ∘ p_M = p_N ∘ f` and `f(a·x) = a·f(x)` for every algebra basis key.
pub fn is_module_hom(f: &LinearMap, m: &RbModule, n: &RbModule) -> Result<bool> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Ok(false);
    }
    let (fm, fn_) = (m.to_finite()?, n.to_finite()?);
    let (cm, cn) = (fm.finite_carrier()?, fn_.finite_carrier()?);
    if f.domain() != cm.basis.as_slice() || f.codomain() != cn.basis.as_slice() {
        return Err(RotaError::DimensionMismatch("homomorphism must map M to N".into()));
    }
    if f.compose(&cm.op)? != cn.op.compose(f)? {
        return Ok(false);
    }
    for (k, rho) in &cm.action {
        if f.compose(rho)? != cn.action[k].compose(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `p² + λp = 0` as a matrix.
pub fn is_quasi_idempotent(m: &RbModule) -> Result<bool> {
    let p = m.op_matrix()?;
    Ok(p.compose(&p)?.combine(&Rational::one(), &p, m.weight())?.is_zero())
}

/// Dimension of the space of module homomorphisms `M → N`.
pub fn hom_dimension(m: &RbModule, n: &RbModule) -> Result<usize> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(RotaError::Invalid("homomorphisms need modules over the same algebra".into()));
    }
    let (fm, fn_) = (m.to_finite()?, n.to_finite()?);
    let (cm, cn) = (fm.finite_carrier()?, fn_.finite_carrier()?);
    let (dm, dn) = (cm.basis.len(), cn.basis.len());
    let mut pairs = vec![(&cm.op, &cn.op)];
    pairs.extend(cm.action.iter().map(|(k, a)| (a, &cn.action[k])));
    // Unknown φ[i][j] sits at index i·dm + j; each pair gives φA − Bφ = 0.
    let mut rows = Vec::new();
    for (a, b) in pairs {
        for i in 0..dn {
            for j in 0..dm {
                let mut row = vec![Rational::zero(); dn * dm];
                for k in 0..dm {
                    row[i * dm + k] += a.entry(k, j);
                }
                for k in 0..dn {
                    row[k * dm + j] -= b.entry(i, k);
                }
                rows.push(row);
            }
        }
    }
    Ok(dn * dm - crate::exactalg::rank_of(&rows))
}
