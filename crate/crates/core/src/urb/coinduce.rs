//! Change of rings along a Rota-Baxter homomorphism `f: R → R'`:
//! `f_!(M) = U_RB(R') ⊗_{U_RB(R)} M` and restriction `f*(N)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::action::{dense, urb_action_matrix};
use super::element::{urb_basis, urb_mul, urb_q, UrbElement};
use crate::error::Result;
use crate::exactalg::{rref, FreeVector, Key, LinearMap, Matrix, Rational};
use crate::rbalg::{RbAlgebra, RbHom};
use crate::rbmod::RbModule;

/// `f_!(M)` together with the unit map `x ↦ [1 ⊗ x]` from `M`.
#[derive(Clone, Debug)]
pub struct Coinduced {
    pub module: RbModule,
    pub unit: LinearMap,
}

/// `f` extended to operator rings: `r ↦ f(r)`, `a⊗b ↦ f(a)⊗f(b)`.
pub fn urb_map(f: &RbHom, u: &UrbElement) -> Result<UrbElement> {
    let mut out = UrbElement::scalar(f.apply_vec(&u.scalar)?);
    for (t, c) in u.tensor.iter() {
        let a = f.apply_vec(&FreeVector::basis(t.left.clone()))?;
        let b = f.apply_vec(&FreeVector::basis(t.right.clone()))?;
        out.add_scaled(c, &UrbElement::pure(&a, &b));
    }
    Ok(out)
}

/// The quotient of `U_RB(R') ⊗ M` by the span of `u'·f(u) ⊗ x − u' ⊗ u·x`
/// over basis triples, as an `(R', P')`-module with `p` given by `Q'`.
pub fn coinduce(f: &RbHom, m: &RbModule) -> Result<Coinduced> {
    let (src, tgt) = (f.source(), f.target());
    let m = m.to_finite()?;
    let mbasis = m.basis()?;
    let (ub, tb) = (urb_basis(src)?, urb_basis(tgt)?);
    let dm = mbasis.len();
    let width = tb.len() * dm;
    // Coordinates of Σ v_i ⊗ x_k at index i·dm + k.
    let expand = |v: &[Rational], x: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); width];
        for (i, a) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (k, b) in x.iter().enumerate() {
                out[i * dm + k] = a * b;
            }
        }
        out
    };
    let unit_vec = |k: usize| {
        let mut x = vec![Rational::zero(); dm];
        x[k] = Rational::from_integer(1.into());
        x
    };

    let mut relations: Matrix = Vec::new();
    for u in &ub {
        let uu = UrbElement::from_key(u);
        let fu = urb_map(f, &uu)?;
        let act = urb_action_matrix(&m, &uu)?;
        for t in &tb {
            let left = dense(&tb, &urb_mul(tgt, &UrbElement::from_key(t), &fu)?);
            let tv = dense(&tb, &UrbElement::from_key(t));
            for k in 0..dm {
                let ux: Vec<Rational> = (0..dm).map(|i| act.entry(i, k).clone()).collect();
                let row: Vec<Rational> =
                    expand(&left, &unit_vec(k)).into_iter().zip(expand(&tv, &ux)).map(|(a, b)| a - b).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    relations.push(row);
                }
            }
        }
    }
    let pivots = rref(&mut relations);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let qbasis: Vec<Key> = free.iter().map(|&c| Key::name(format!("[{}|{}]", tb[c / dm], mbasis[c % dm]))).collect();
    // Normal form modulo the relations, read off on the free columns.
    let reduce = |mut v: Vec<Rational>| -> Vec<Rational> {
        for (row, &p) in relations.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        free.iter().map(|&c| v[c].clone()).collect()
    };
    let left_mult = |w: &UrbElement| -> Result<LinearMap> {
        let mut cols = Vec::with_capacity(free.len());
        for &c in &free {
            let prod = urb_mul(tgt, w, &UrbElement::from_key(&tb[c / dm]))?;
            cols.push(reduce(expand(&dense(&tb, &prod), &unit_vec(c % dm))));
        }
        columns_to_map(&qbasis, &qbasis, &cols)
    };

    let mut action = BTreeMap::new();
    for k in tgt.basis()? {
        action.insert(k.clone(), left_mult(&UrbElement::scalar(FreeVector::basis(k)))?);
    }
    let op = left_mult(&urb_q(tgt))?;
    let module = RbModule::finite(tgt, qbasis.clone(), action, op)?;

    let one = dense(&tb, &UrbElement::scalar(tgt.unit_vec()));
    let cols: Vec<Vec<Rational>> = (0..dm).map(|k| reduce(expand(&one, &unit_vec(k)))).collect();
    let unit = columns_to_map(&mbasis, &qbasis, &cols)?;
    Ok(Coinduced { module, unit })
}

fn columns_to_map(domain: &[Key], codomain: &[Key], cols: &[Vec<Rational>]) -> Result<LinearMap> {
    let rows = (0..codomain.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    LinearMap::new(domain.to_vec(), codomain.to_vec(), rows)
}

/// `f*(N)`: `N` over `R` through `f`, with the same operator.
pub fn restrict(f: &RbHom, n: &RbModule) -> Result<RbModule> {
    let n = n.to_finite()?;
    let src: &RbAlgebra = f.source();
    let mut action = BTreeMap::new();
    for k in src.basis()? {
        let image = f.target().embed(&f.apply_vec(&FreeVector::basis(k.clone()))?)?;
        action.insert(k, n.rho(&image)?);
    }
    RbModule::finite(src, n.basis()?, action, n.op_matrix()?)
}
