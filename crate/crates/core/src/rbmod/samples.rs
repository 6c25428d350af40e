//! Seeded families of small finite modules (algebra dimension ≤ 3,
//! carrier dimension ≤ 4), each transported by a random invertible matrix.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::module::RbModule;
use super::ops::{direct_sum, dual_module, product_module_conditions, scale_module};
use crate::error::{Result, RotaError};
use crate::exactalg::{int, Key, LinearMap, Rational};
use crate::rbalg::RbAlgebra;
use crate::sampling::{random_invertible, rng};

/// `(𝐤, −λ)` acting on `𝐤ⁿ` with `p = −λ·(projection onto the first
/// `rank` coordinates)`.
pub fn scalar_projection_module(weight: &Rational, n: usize, rank: usize) -> Result<RbModule> {
    let alg = RbAlgebra::scalar(weight.clone());
    let basis: Vec<Key> = (1..=n).map(|i| Key::name(format!("e{i}"))).collect();
    let mut op = vec![vec![Rational::zero(); n]; n];
    for (i, row) in op.iter_mut().enumerate().take(rank) {
        row[i] = -weight.clone();
    }
    let mut action = BTreeMap::new();
    action.insert(alg.basis()?[0].clone(), LinearMap::identity(basis.clone()));
    RbModule::finite(&alg, basis.clone(), action, LinearMap::new(basis.clone(), basis, op)?)
}

/// The algebra acting on itself with `p = 0`.
pub fn trivial_regular(alg: &RbAlgebra) -> Result<RbModule> {
    let reg = RbModule::regular(alg).to_finite()?;
    let c = reg.finite_carrier()?;
    RbModule::with_zero_operator(alg, c.basis.clone(), c.action.clone())
}

/// `𝐤² ⊕ 𝐤²` over `(𝐤, 0) × (𝐤, Id)` at weight −1 with `p₁ = p₂ =
/// diag(0, 1)`, `p₁₂` mapping `M₂(0)` onto `M₁(0)` and `p₂₁` mapping `M₁(1)`
/// onto `M₂(1)`.
pub fn glued_product_module() -> Result<RbModule> {
    let zero = RbAlgebra::scalar_with(int(-1), Rational::zero());
    let id = RbAlgebra::scalar_with(int(-1), Rational::one());
    let m1 = diagonal_module(&zero, &[0, 1])?;
    let m2 = diagonal_module(&id, &[0, 1])?;
    let (b1, b2) = (m1.basis()?, m2.basis()?);
    let p12 = LinearMap::new(b2.clone(), b1.clone(), vec![vec![int(1), int(0)], vec![int(0), int(0)]])?;
    let p21 = LinearMap::new(b1, b2, vec![vec![int(0), int(0)], vec![int(0), int(1)]])?;
    let out = product_module_conditions(&m1, &m2, &p12, &p21)?;
    if !(out.accepted() && out.is_module()) {
        return Err(RotaError::AxiomViolation("glued product module rejected".into()));
    }
    Ok(out.module)
}

/// `𝐤ⁿ` over a one-dimensional algebra with diagonal `p`.
fn diagonal_module(alg: &RbAlgebra, diag: &[i64]) -> Result<RbModule> {
    let n = diag.len();
    let basis: Vec<Key> = (1..=n).map(|i| Key::name(format!("e{i}"))).collect();
    let mut op = vec![vec![Rational::zero(); n]; n];
    for (i, d) in diag.iter().enumerate() {
        op[i][i] = int(*d);
    }
    let mut action = BTreeMap::new();
    action.insert(alg.basis()?[0].clone(), LinearMap::identity(basis.clone()));
    RbModule::finite(alg, basis.clone(), action, LinearMap::new(basis.clone(), basis, op)?)
}

/// `𝐤` over a one-dimensional algebra with `p = c`.
pub fn one_dim(alg: &RbAlgebra, c: Rational) -> Result<RbModule> {
    let basis = vec![Key::name("m")];
    let mut action = BTreeMap::new();
    action.insert(alg.basis()?[0].clone(), LinearMap::identity(basis.clone()));
    RbModule::finite(alg, basis.clone(), action, LinearMap::new(basis.clone(), basis, vec![vec![c]])?)
}

/// `count` audited modules; recipe `i mod 8` followed by a seeded change of basis.
pub fn seeded_modules(seed: u64, count: usize) -> Result<Vec<RbModule>> {
    let mut r = rng(seed);
    let weights = [int(1), int(-1), int(2)];
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let w = &weights[i % weights.len()];
        let m = match i % 8 {
            0 => scalar_projection_module(w, 3, 1 + i % 2)?,
            1 => RbModule::regular(&RbAlgebra::dual_numbers()).to_finite()?,
            2 => direct_sum(
                &RbModule::regular(&RbAlgebra::dual_numbers()),
                &trivial_regular(&RbAlgebra::dual_numbers())?,
            )?,
            3 => RbModule::regular(&RbAlgebra::truncated_divided(2)).to_finite()?,
            4 => glued_product_module()?,
            5 => dual_module(&RbModule::regular(&crate::rbalg::zero_id_product()).to_finite()?),
            6 => scale_module(&RbModule::regular(&crate::rbalg::zero_id_product()).to_finite()?, &int(2)),
            _ => scalar_projection_module(w, 4, 2)?,
        };
        let g = random_invertible(&mut r, &m.basis()?);
        out.push(m.transport(&g)?);
    }
    Ok(out)
}
