//! Sparse vectors over an ordered basis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::key::{Key, TensorKey};
use super::rational::{fmt_rational, Rational};

/// Finite rational combination of basis keys. Zero coefficients are never
/// stored, so structural equality is vector equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeVector<K: Ord = Key> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for FreeVector<K> {
    fn default() -> Self {
        FreeVector { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FreeVector<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::from_integer(1.into()))
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(k, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Rational)>>(it: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in it {
            v.add_term(k, c);
        }
        v
    }

    /// Adds `c·k` in place, pruning the entry if it cancels.
    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, a) in &other.terms {
            self.add_term(k.clone(), c * a);
        }
    }

    /// `alpha·v + beta·w`.
    pub fn combine(alpha: &Rational, v: &Self, beta: &Rational, w: &Self) -> Self {
        let mut out = Self::zero();
        out.add_scaled(alpha, v);
        out.add_scaled(beta, w);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer(1.into()), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer((-1).into()), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeVector { terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect() }
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Relabels the basis; colliding images are summed.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> FreeVector<L> {
        FreeVector::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Linear extension of `f` from basis keys to the whole vector.
    pub fn linear_extend<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<FreeVector<L>, E>,
    ) -> Result<FreeVector<L>, E> {
        let mut out = FreeVector::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k)?);
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for FreeVector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(it: I) -> Self {
        Self::from_terms(it)
    }
}

/// Bilinear expansion `v ⊗ w` on pure-tensor keys.
pub fn tensor_expand(v: &FreeVector<Key>, w: &FreeVector<Key>) -> FreeVector<TensorKey> {
    let mut out = FreeVector::zero();
    for (a, x) in v.iter() {
        for (b, y) in w.iter() {
            out.add_term(TensorKey::new(a.clone(), b.clone()), x * y);
        }
    }
    out
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for FreeVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {}", fmt_rational(c))?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn e(i: usize) -> Key {
        Key::name(format!("e{i}"))
    }

    #[test]
    fn combine_cancels_and_prunes() {
        let v = FreeVector::term(e(1), int(2));
        let w = FreeVector::term(e(1), int(-2));
        assert!(FreeVector::combine(&int(1), &v, &int(1), &w).is_zero());
    }

    #[test]
    fn combine_with_zero_scalar_ignores_the_other_side() {
        let v = FreeVector::term(e(1), int(1));
        let w = FreeVector::term(e(2), int(5));
        assert_eq!(FreeVector::combine(&int(1), &v, &int(0), &w), v);
    }

    #[test]
    fn combine_mixed_fractions() {
        let v = FreeVector::from_terms([(e(1), rat(1, 2)), (e(2), int(1))]);
        let w = FreeVector::term(e(2), rat(1, 3));
        let got = FreeVector::combine(&int(2), &v, &int(3), &w);
        assert_eq!(got, FreeVector::from_terms([(e(1), int(1)), (e(2), int(3))]));
    }

    #[test]
    fn tensor_expansion_examples() {
        let f1 = Key::name("f1");
        let got = tensor_expand(&FreeVector::basis(e(1)), &FreeVector::basis(f1.clone()));
        assert_eq!(got, FreeVector::basis(TensorKey::new(e(1), f1.clone())));

        let v = FreeVector::from_terms([(e(1), int(1)), (e(2), int(1))]);
        let got = tensor_expand(&v, &FreeVector::term(f1.clone(), int(2)));
        let want = FreeVector::from_terms([
            (TensorKey::new(e(1), f1.clone()), int(2)),
            (TensorKey::new(e(2), f1.clone()), int(2)),
        ]);
        assert_eq!(got, want);
        assert!(tensor_expand(&FreeVector::zero(), &v).is_zero());
    }
}
