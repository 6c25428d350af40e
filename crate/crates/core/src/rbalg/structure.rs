//! The Rota-Baxter interface shared by every algebra-like structure in the
//! crate (built-in algebras, convolution algebras, endomorphism algebras),
//! and the laws checked against it.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactalg::Rational;
use crate::report::LawReport;

/// An algebra with a linear operator `P` of weight `λ`.
pub trait RotaBaxter {
    type Elem: Clone + fmt::Debug + fmt::Display;

    fn weight(&self) -> &Rational;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, c: &Rational, a: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// The operator `P`.
    fn op(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Exact equality (for truncated series: agreement on the known range).
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.scale(&-Rational::one(), b)?)
    }

    /// `Σ c_i · x_i`.
    fn combo(&self, terms: &[(Rational, &Self::Elem)]) -> Result<Self::Elem> {
        let mut acc = self.zero();
        for (c, x) in terms {
            if !c.is_zero() {
                acc = self.add(&acc, &self.scale(c, x)?)?;
            }
        }
        Ok(acc)
    }

    /// The dual operator `−λ·x − P(x)`.
    fn tilde_op(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let lam = self.weight().clone();
        self.combo(&[(-lam, a), (-Rational::one(), &self.op(a)?)])
    }

    /// `x ⋆ y = x P(y) + P(x) y + λ x y`.
    fn star(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        let a = self.mul(x, &self.op(y)?)?;
        let b = self.mul(&self.op(x)?, y)?;
        let c = self.mul(x, y)?;
        self.combo(&[(Rational::one(), &a), (Rational::one(), &b), (self.weight().clone(), &c)])
    }
}

/// Both sides of the Rota-Baxter identity for `(x, y)`:
/// `P(x)P(y)` and `P(xP(y)) + P(P(x)y) + λP(xy)`.
pub fn rb_sides<R: RotaBaxter>(r: &R, x: &R::Elem, y: &R::Elem) -> Result<(R::Elem, R::Elem)> {
    let px = r.op(x)?;
    let py = r.op(y)?;
    let lhs = r.mul(&px, &py)?;
    let a = r.op(&r.mul(x, &py)?)?;
    let b = r.op(&r.mul(&px, y)?)?;
    let c = r.op(&r.mul(x, y)?)?;
    let rhs = r.combo(&[(Rational::one(), &a), (Rational::one(), &b), (r.weight().clone(), &c)])?;
    Ok((lhs, rhs))
}

pub fn rb_check<R: RotaBaxter>(r: &R, x: &R::Elem, y: &R::Elem) -> Result<bool> {
    let (lhs, rhs) = rb_sides(r, x, y)?;
    r.same(&lhs, &rhs)
}

pub fn star_product<R: RotaBaxter>(r: &R, x: &R::Elem, y: &R::Elem) -> Result<R::Elem> {
    r.star(x, y)
}

/// `P(P(x)) + λP(x) = 0` on every sample.
pub fn quasi_idempotent_check<R: RotaBaxter>(r: &R, samples: &[R::Elem]) -> Result<bool> {
    for x in samples {
        let px = r.op(x)?;
        let v = r.combo(&[(Rational::one(), &r.op(&px)?), (r.weight().clone(), &px)])?;
        if !r.same(&v, &r.zero())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(P(r), P̃(r))`.
pub fn atkinson_pair<R: RotaBaxter>(r: &R, x: &R::Elem) -> Result<(R::Elem, R::Elem)> {
    Ok((r.op(x)?, r.tilde_op(x)?))
}

/// Product on the image of the Atkinson pair: `(a1, a2)(b1, b2) = (a1 b1, −a2 b2)`.
pub fn atkinson_mul<R: RotaBaxter>(
    r: &R,
    a: &(R::Elem, R::Elem),
    b: &(R::Elem, R::Elem),
) -> Result<(R::Elem, R::Elem)> {
    let second = r.mul(&a.1, &b.1)?;
    Ok((r.mul(&a.0, &b.0)?, r.scale(&-Rational::one(), &second)?))
}

/// `f(x)·f(y) = f(x ⋆ y)` and `f₁(x) + f₂(x) = −λx`.
pub fn atkinson_check<R: RotaBaxter>(r: &R, x: &R::Elem, y: &R::Elem) -> Result<bool> {
    let fx = atkinson_pair(r, x)?;
    let fy = atkinson_pair(r, y)?;
    let prod = atkinson_mul(r, &fx, &fy)?;
    let fs = atkinson_pair(r, &r.star(x, y)?)?;
    let sum = r.add(&fx.0, &fx.1)?;
    let want = r.scale(&-r.weight().clone(), x)?;
    Ok(r.same(&prod.0, &fs.0)? && r.same(&prod.1, &fs.1)? && r.same(&sum, &want)?)
}

/// `(x ⋆ y) ⋆ z = x ⋆ (y ⋆ z)`.
pub fn star_assoc_check<R: RotaBaxter>(r: &R, x: &R::Elem, y: &R::Elem, z: &R::Elem) -> Result<bool> {
    let l = r.star(&r.star(x, y)?, z)?;
    let rt = r.star(x, &r.star(y, z)?)?;
    r.same(&l, &rt)
}

/// `P(x ⋆ y) = P(x) P(y)`.
pub fn star_hom_check<R: RotaBaxter>(r: &R, x: &R::Elem, y: &R::Elem) -> Result<bool> {
    let l = r.op(&r.star(x, y)?)?;
    let rt = r.mul(&r.op(x)?, &r.op(y)?)?;
    r.same(&l, &rt)
}

/// `x ⋆_{P̃} y = −(x ⋆_P y)`.
pub fn tilde_star_check<R: RotaBaxter>(r: &R, x: &R::Elem, y: &R::Elem) -> Result<bool> {
    let tx = r.tilde_op(x)?;
    let ty = r.tilde_op(y)?;
    let a = r.mul(x, &ty)?;
    let b = r.mul(&tx, y)?;
    let c = r.mul(x, y)?;
    let lhs = r.combo(&[(Rational::one(), &a), (Rational::one(), &b), (r.weight().clone(), &c)])?;
    let rhs = r.scale(&-Rational::one(), &r.star(x, y)?)?;
    r.same(&lhs, &rhs)
}

/// The operator `−λ − P̃` (the dual of the dual) agrees with `P`.
pub fn tilde_involution_check<R: RotaBaxter>(r: &R, x: &R::Elem) -> Result<bool> {
    let lam = r.weight().clone();
    let tt = r.combo(&[(-lam, x), (-Rational::one(), &r.tilde_op(x)?)])?;
    r.same(&tt, &r.op(x)?)
}

/// `P(P(1)·x) = P(1)·P(x)`, the regular-module instance of `P(1)`-invariance.
pub fn p_one_invariance_check<R: RotaBaxter>(r: &R, x: &R::Elem) -> Result<bool> {
    let p1 = r.op(&r.one()?)?;
    let l = r.op(&r.mul(&p1, x)?)?;
    let rt = r.mul(&p1, &r.op(x)?)?;
    r.same(&l, &rt)
}

pub fn assoc_check<R: RotaBaxter>(r: &R, x: &R::Elem, y: &R::Elem, z: &R::Elem) -> Result<bool> {
    let l = r.mul(&r.mul(x, y)?, z)?;
    let rt = r.mul(x, &r.mul(y, z)?)?;
    r.same(&l, &rt)
}

pub fn unit_check<R: RotaBaxter>(r: &R, x: &R::Elem) -> Result<bool> {
    let one = r.one()?;
    Ok(r.same(&r.mul(&one, x)?, x)? && r.same(&r.mul(x, &one)?, x)?)
}

/// Runs a binary law over every ordered pair of `samples`, stopping at the
/// first counterexample.
pub fn audit_pairs<R: RotaBaxter>(
    law: &str,
    r: &R,
    samples: &[R::Elem],
    check: impl Fn(&R, &R::Elem, &R::Elem) -> Result<bool>,
) -> Result<LawReport> {
    let mut report = LawReport::new(law);
    for x in samples {
        for y in samples {
            report.samples += 1;
            if !check(r, x, y)? {
                report.counterexample = Some(format!("({x}, {y})"));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

pub fn audit_triples<R: RotaBaxter>(
    law: &str,
    r: &R,
    triples: &[(R::Elem, R::Elem, R::Elem)],
    check: impl Fn(&R, &R::Elem, &R::Elem, &R::Elem) -> Result<bool>,
) -> Result<LawReport> {
    let mut report = LawReport::new(law);
    for (x, y, z) in triples {
        report.samples += 1;
        if !check(r, x, y, z)? {
            report.counterexample = Some(format!("({x}, {y}, {z})"));
            return Ok(report);
        }
    }
    Ok(report)
}

/// Cap on associativity triples in [`audit_algebra`].
pub const AUDIT_TRIPLES: usize = 512;

/// Unit on every sample, associativity on all triples (or a seeded subset
/// of [`AUDIT_TRIPLES`] when there are more), then the Rota-Baxter
/// identity over all pairs.
pub fn audit_algebra<R: RotaBaxter>(r: &R, samples: &[R::Elem]) -> Result<Vec<LawReport>> {
    let mut unit = LawReport::new("unit");
    for x in samples {
        unit.samples += 1;
        if !unit_check(r, x)? {
            unit.counterexample = Some(x.to_string());
            break;
        }
    }
    let triples: Vec<_> = crate::sampling::index_triples(samples.len(), AUDIT_TRIPLES, 0)
        .into_iter()
        .map(|(i, j, k)| (samples[i].clone(), samples[j].clone(), samples[k].clone()))
        .collect();
    Ok(vec![
        unit,
        audit_triples("associativity", r, &triples, assoc_check)?,
        audit_pairs("rota-baxter", r, samples, rb_check)?,
    ])
}
