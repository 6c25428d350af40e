//! Homomorphisms of Rota-Baxter algebras.

use std::collections::BTreeMap;

use super::algebra::{Elem, Kind, RbAlgebra};
use super::structure::RotaBaxter;
use crate::error::{Result, RotaError};
use crate::exactalg::{fmt_rational, FreeVector, Key};

#[derive(Clone, Debug)]
enum HomMap {
    /// Images of basis keys; keys outside the map go to zero.
    Basis(BTreeMap<Key, FreeVector>),
    /// Laurent series forgetting coefficients above a lower precision.
    Truncation(i64),
}

/// An algebra map `f: (R, P) → (R', P')` with `f(1) = 1` and `f∘P = P'∘f`,
/// verified on generator pairs when constructed.
#[derive(Clone, Debug)]
pub struct RbHom {
    source: RbAlgebra,
    target: RbAlgebra,
    map: HomMap,
}

impl RbHom {
    /// `images` gives `f` on every basis key of `source`.
    pub fn new(source: &RbAlgebra, target: &RbAlgebra, images: BTreeMap<Key, FreeVector>) -> Result<Self> {
        same_weight(source, target)?;
        let f = RbHom { source: source.clone(), target: target.clone(), map: HomMap::Basis(images) };
        f.verify()?;
        Ok(f)
    }

    pub fn identity(alg: &RbAlgebra) -> Result<Self> {
        if let Kind::Laurent { precision, .. } = alg.kind() {
            return RbHom::truncation(alg, *precision);
        }
        let images = alg.basis()?.into_iter().map(|k| (k.clone(), FreeVector::basis(k))).collect();
        RbHom::new(alg, alg, images)
    }

    /// The unit map `(𝐤, −λ) → R'`; a homomorphism only when `P'(1) = −λ`.
    pub fn unit_map(target: &RbAlgebra) -> Result<Self> {
        let source = RbAlgebra::scalar(target.weight().clone());
        let images = source.basis()?.into_iter().map(|k| (k, target.unit_vec())).collect();
        RbHom::new(&source, target, images)
    }

    /// `𝐤((t))` at its precision onto the same algebra at `precision`.
    pub fn truncation(source: &RbAlgebra, precision: i64) -> Result<Self> {
        let Kind::Laurent { precision: p, sample_degree } = source.kind() else {
            return Err(RotaError::KindMismatch(format!("{} is not a Laurent algebra", source.name())));
        };
        if precision > *p || precision < *sample_degree {
            return Err(RotaError::Invalid(format!(
                "truncation precision must lie in [{sample_degree}, {p}], got {precision}"
            )));
        }
        let target = RbAlgebra::laurent_unchecked(source.weight().clone(), precision, *sample_degree)
            .with_form(source.form().clone());
        let f = RbHom { source: source.clone(), target, map: HomMap::Truncation(precision) };
        f.verify()?;
        Ok(f)
    }

    pub fn source(&self) -> &RbAlgebra {
        &self.source
    }

    pub fn target(&self) -> &RbAlgebra {
        &self.target
    }

    /// `f` on coordinates.
    pub fn apply_vec(&self, v: &FreeVector) -> Result<FreeVector> {
        match &self.map {
            HomMap::Basis(images) => {
                Ok(v.linear_extend(|k| Ok::<_, RotaError>(images.get(k).cloned().unwrap_or_default()))?)
            }
            HomMap::Truncation(p) => Ok(v
                .iter()
                .filter(|(k, _)| !matches!(k, Key::Mono(i) if i > p))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect()),
        }
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        match (&self.map, x) {
            (HomMap::Truncation(p), Elem::Series(s)) => Ok(Elem::Series(s.with_precision(*p.min(&s.precision())))),
            (HomMap::Truncation(_), _) => Err(RotaError::KindMismatch(format!("{x} is not a Laurent series"))),
            (HomMap::Basis(_), _) => self.target.embed(&self.apply_vec(&self.source.coords(x)?)?),
        }
    }

    fn verify(&self) -> Result<()> {
        let fail = |what: String| Err(RotaError::NotHomomorphism(what));
        let one = self.source.one()?;
        if !self.target.same(&self.apply(&one)?, &self.target.one()?)? {
            return fail("f(1) ≠ 1".into());
        }
        let gens = self.source.generators()?;
        for a in &gens {
            let lhs = self.apply(&self.source.op(a)?)?;
            if !self.target.same(&lhs, &self.target.op(&self.apply(a)?)?)? {
                return fail(format!("f(P({a})) ≠ P'(f({a}))"));
            }
            for b in &gens {
                let ab = match self.source.mul(a, b) {
                    Ok(ab) => ab,
                    Err(RotaError::PrecisionExhausted(_)) => continue,
                    Err(e) => return Err(e),
                };
                let prod = self.target.mul(&self.apply(a)?, &self.apply(b)?)?;
                if !self.target.same(&self.apply(&ab)?, &prod)? {
                    return fail(format!("f({a}·{b}) ≠ f({a})·f({b})"));
                }
            }
        }
        Ok(())
    }
}

fn same_weight(a: &RbAlgebra, b: &RbAlgebra) -> Result<()> {
    if a.weight() != b.weight() {
        return Err(RotaError::WeightMismatch { left: fmt_rational(a.weight()), right: fmt_rational(b.weight()) });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn identity_and_unit_maps() {
        let alg = RbAlgebra::split_matrix2(int(-1)).unwrap();
        RbHom::identity(&alg).unwrap();
        RbHom::unit_map(&alg).unwrap();
        // P(1) = x in the dual numbers, so the unit map does not commute with P.
        assert!(matches!(RbHom::unit_map(&RbAlgebra::dual_numbers()), Err(RotaError::NotHomomorphism(_))));
    }

    #[test]
    fn truncation_commutes_with_the_pole_part() {
        let f = RbHom::truncation(&RbAlgebra::laurent(), 20).unwrap();
        let x = f.source().generators().unwrap()[3].clone();
        let y = f.apply(&x).unwrap();
        assert_eq!(f.target().coords(&y).unwrap(), f.source().coords(&x).unwrap());
        assert!(RbHom::truncation(&RbAlgebra::laurent(), 2).is_err());
    }

    #[test]
    fn non_multiplicative_map_is_rejected() {
        let alg = RbAlgebra::dual_numbers();
        let b = alg.basis().unwrap();
        let images = b.iter().map(|k| (k.clone(), FreeVector::basis(b[0].clone()))).collect();
        assert!(matches!(RbHom::new(&alg, &alg, images), Err(RotaError::NotHomomorphism(_))));
    }
}
