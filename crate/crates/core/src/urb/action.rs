//! `U_RB(R)` acting on Rota-Baxter modules, the opposite-ring twist and
//! the projection for product algebras.

use num_traits::One;

use super::element::{urb_basis, urb_mul, UrbElement, UrbKey};
use crate::error::{Result, RotaError};
use crate::exactalg::{
    echelon_basis, fmt_rational, null_space, rank_of, FreeVector, Key, LinearMap, Rational, TensorKey,
};
use crate::rbalg::{product_rba, RbAlgebra, RotaBaxter};
use crate::rbmod::{RbModule, RotaBaxterModule};

/// `u·x`: the scalar part acts through the module, `a⊗b` acts by
/// `x ↦ a·p(b·x)`.
pub fn urb_act<M>(m: &M, u: &UrbElement, x: &M::Vector) -> Result<M::Vector>
where
    M: RotaBaxterModule<Alg = RbAlgebra> + ?Sized,
{
    let alg = m.algebra();
    let mut acc = if u.scalar.is_zero() { m.vzero() } else { m.act(&alg.embed(&u.scalar)?, x)? };
    for (t, c) in u.tensor.iter() {
        let a = alg.embed(&FreeVector::basis(t.left.clone()))?;
        let b = alg.embed(&FreeVector::basis(t.right.clone()))?;
        let y = m.act(&a, &m.op_p(&m.act(&b, x)?)?)?;
        acc = m.vcombo(&[(Rational::one(), &acc), (c.clone(), &y)])?;
    }
    Ok(acc)
}

/// The action of `u` on a finite module as a matrix.
pub fn urb_action_matrix(m: &RbModule, u: &UrbElement) -> Result<LinearMap> {
    let alg = m.algebra();
    let p = m.op_matrix()?;
    let mut out = m.rho(&alg.embed(&u.scalar)?)?;
    for (t, c) in u.tensor.iter() {
        let a = m.rho(&alg.embed(&FreeVector::basis(t.left.clone()))?)?;
        let b = m.rho(&alg.embed(&FreeVector::basis(t.right.clone()))?)?;
        out = out.combine(&Rational::one(), &a.compose(&p)?.compose(&b)?, c)?;
    }
    Ok(out)
}

/// Rank of `U_RB(R) → End(R)` on the regular module. Never `d(d+1)` for
/// `d ≥ 1`, since `End(R)` only has dimension `d²`.
pub fn regular_action_rank(alg: &RbAlgebra) -> Result<usize> {
    let reg = RbModule::regular(alg).to_finite()?;
    let rows = urb_basis(alg)?
        .iter()
        .map(|k| Ok(urb_action_matrix(&reg, &UrbElement::from_key(k))?.matrix().concat()))
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_of(&rows))
}

/// Which side `R` multiplies `U_RB(R)` from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The rank of `U_RB(R)` as a free `R`-module when `{1} ∪ {1⊗xⱼ}` (left)
/// or `{1} ∪ {xⱼ⊗1}` (right) is a basis; `None` otherwise.
pub fn free_rank(alg: &RbAlgebra, side: Side) -> Result<Option<usize>> {
    let b = alg.basis()?;
    let one = alg.unit_vec();
    let mut gens = vec![UrbElement::scalar(one.clone())];
    for x in &b {
        let x = FreeVector::basis(x.clone());
        gens.push(match side {
            Side::Left => UrbElement::pure(&one, &x),
            Side::Right => UrbElement::pure(&x, &one),
        });
    }
    let ubasis = urb_basis(alg)?;
    let mut rows = Vec::new();
    for g in &gens {
        for r in &b {
            let r = UrbElement::scalar(FreeVector::basis(r.clone()));
            let v = match side {
                Side::Left => urb_mul(alg, &r, g)?,
                Side::Right => urb_mul(alg, g, &r)?,
            };
            rows.push(dense(&ubasis, &v));
        }
    }
    Ok((rank_of(&rows) == ubasis.len()).then_some(gens.len()))
}

pub(crate) fn dense(basis: &[UrbKey], u: &UrbElement) -> Vec<Rational> {
    let c = u.coords();
    basis.iter().map(|k| c.coeff(k)).collect()
}

/// The ring `(Rᵒ, P̃)` whose operator ring is `U_RB(R)ᵒ`.
pub fn opposite_ring(alg: &RbAlgebra) -> RbAlgebra {
    alg.opposite().tilde()
}

/// `r ↦ r`, `a⊗b ↦ b⊗a`, an anti-isomorphism onto `U_RB(Rᵒ, P̃)`.
pub fn urb_opposite_iso(u: &UrbElement) -> UrbElement {
    UrbElement {
        scalar: u.scalar.clone(),
        tensor: u.tensor.map_keys(|t| TensorKey::new(t.right.clone(), t.left.clone())),
    }
}

/// `ι(u·v) = ι(v)·ι(u)` with the right side multiplied in the opposite ring.
pub fn opposite_antimultiplicative_check(alg: &RbAlgebra, u: &UrbElement, v: &UrbElement) -> Result<bool> {
    let op = opposite_ring(alg);
    let lhs = urb_opposite_iso(&urb_mul(alg, u, v)?);
    let rhs = urb_mul(&op, &urb_opposite_iso(v), &urb_opposite_iso(u))?;
    Ok(lhs == rhs)
}

/// `π: U_RB(R₁ × R₂) → U_RB(R₁) × U_RB(R₂)`, dropping cross tensors.
pub fn urb_product_projection(r1: &RbAlgebra, r2: &RbAlgebra, u: &UrbElement) -> Result<(UrbElement, UrbElement)> {
    if r1.weight() != r2.weight() {
        return Err(RotaError::WeightMismatch { left: fmt_rational(r1.weight()), right: fmt_rational(r2.weight()) });
    }
    let (mut left, mut right) = (UrbElement::zero(), UrbElement::zero());
    for (k, c) in u.scalar.iter() {
        match k {
            Key::Left(x) => left.scalar.add_term((**x).clone(), c.clone()),
            Key::Right(x) => right.scalar.add_term((**x).clone(), c.clone()),
            _ => return Err(RotaError::UnknownBasisKey(format!("{k} is not a product key"))),
        }
    }
    for (t, c) in u.tensor.iter() {
        match (&t.left, &t.right) {
            (Key::Left(a), Key::Left(b)) => {
                left.tensor.add_term(TensorKey::new((**a).clone(), (**b).clone()), c.clone())
            }
            (Key::Right(a), Key::Right(b)) => {
                right.tensor.add_term(TensorKey::new((**a).clone(), (**b).clone()), c.clone())
            }
            (Key::Left(_) | Key::Right(_), Key::Left(_) | Key::Right(_)) => {}
            _ => return Err(RotaError::UnknownBasisKey(format!("{t} is not a product key"))),
        }
    }
    Ok((left, right))
}

/// Dimension count and multiplicativity of the product projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionAudit {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    /// The kernel is the span of the cross tensors `R₁⊗R₂ ⊕ R₂⊗R₁`.
    pub kernel_is_cross_span: bool,
    /// `π(uv) = π(u)π(v)` on all pairs of basis elements, and `π(Q) = (Q₁, Q₂)`.
    pub multiplicative: bool,
}

impl ProjectionAudit {
    pub fn surjective(&self) -> bool {
        self.rank == self.target_dim
    }
}

pub fn product_projection_audit(r1: &RbAlgebra, r2: &RbAlgebra) -> Result<ProjectionAudit> {
    let r = product_rba(r1, r2)?;
    let (b, b1, b2) = (urb_basis(&r)?, urb_basis(r1)?, urb_basis(r2)?);
    let image = |u: &UrbElement| -> Result<Vec<Rational>> {
        let (x, y) = urb_product_projection(r1, r2, u)?;
        let mut v = dense(&b1, &x);
        v.extend(dense(&b2, &y));
        Ok(v)
    };
    // Columns of π, one per source basis element.
    let columns = b.iter().map(|k| image(&UrbElement::from_key(k))).collect::<Result<Vec<_>>>()?;
    let target_dim = b1.len() + b2.len();
    let rank = rank_of(&columns);
    let matrix: Vec<Vec<Rational>> = (0..target_dim).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let kernel = null_space(&matrix, b.len());
    let cross: Vec<Vec<Rational>> = b
        .iter()
        .filter(|k| matches!(k, UrbKey::Tensor(t) if matches!(t.left, Key::Left(_)) != matches!(t.right, Key::Left(_))))
        .map(|k| dense(&b, &UrbElement::from_key(k)))
        .collect();
    let mut multiplicative = true;
    'pairs: for x in &b {
        for y in &b {
            let (u, v) = (UrbElement::from_key(x), UrbElement::from_key(y));
            let (u1, u2) = urb_product_projection(r1, r2, &u)?;
            let (v1, v2) = urb_product_projection(r1, r2, &v)?;
            let (w1, w2) = urb_product_projection(r1, r2, &urb_mul(&r, &u, &v)?)?;
            if w1 != urb_mul(r1, &u1, &v1)? || w2 != urb_mul(r2, &u2, &v2)? {
                multiplicative = false;
                break 'pairs;
            }
        }
    }
    let (q1, q2) = urb_product_projection(r1, r2, &super::element::urb_q(&r))?;
    multiplicative &= q1 == super::element::urb_q(r1) && q2 == super::element::urb_q(r2);
    Ok(ProjectionAudit {
        source_dim: b.len(),
        target_dim,
        rank,
        kernel_dim: kernel.len(),
        kernel_is_cross_span: echelon_basis(&kernel) == echelon_basis(&cross),
        multiplicative,
    })
}
