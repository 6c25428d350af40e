//! Basis keys shared by every free module in the crate.
//!
//! The ordering is the derived one: `Name < Mono < Div < Unit < Left <
//! Right`, then by payload. Names compare as strings, monomial degrees as
//! integers, matrix units by `(row, col, inner)`.
//!
//! Text forms (also accepted by [`Key::from_str`]):
//!
//! | variant | text |
//! |---|---|
//! | `Name("e1")` | `e1` |
//! | `Mono(-2)` | `t^-2` |
//! | `Div(3)` | `u3` |
//! | `Unit(0, 1, k)` | `E(1,2)*k` (rows and columns print 1-based) |
//! | `Left(k)` / `Right(k)` | `L(k)` / `R(k)` |

use std::fmt;
use std::str::FromStr;

use crate::error::RotaError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Name(String),
    /// Laurent monomial `t^i`.
    Mono(i64),
    /// Divided power `u_k`.
    Div(u32),
    /// Matrix unit `E_ij` carrying a basis key of the entry algebra.
    Unit(usize, usize, Box<Key>),
    /// First summand of a direct product.
    Left(Box<Key>),
    /// Second summand of a direct product.
    Right(Box<Key>),
}

impl Key {
    pub fn name(s: impl Into<String>) -> Key {
        Key::Name(s.into())
    }

    pub fn unit(i: usize, j: usize, inner: Key) -> Key {
        Key::Unit(i, j, Box::new(inner))
    }

    pub fn left(k: Key) -> Key {
        Key::Left(Box::new(k))
    }

    pub fn right(k: Key) -> Key {
        Key::Right(Box::new(k))
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Name(s) => f.write_str(s),
            Key::Mono(i) => write!(f, "t^{i}"),
            Key::Div(k) => write!(f, "u{k}"),
            Key::Unit(i, j, k) => write!(f, "E({},{})*{k}", i + 1, j + 1),
            Key::Left(k) => write!(f, "L({k})"),
            Key::Right(k) => write!(f, "R({k})"),
        }
    }
}

impl FromStr for Key {
    type Err = RotaError;

    fn from_str(s: &str) -> Result<Key, RotaError> {
        let bad = || RotaError::Invalid(format!("malformed basis key `{s}`"));
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(rest) = s.strip_prefix("t^") {
            return rest.parse().map(Key::Mono).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('u') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                return rest.parse().map(Key::Div).map_err(|_| bad());
            }
        }
        if let Some(rest) = s.strip_prefix("E(") {
            let (idx, inner) = rest.split_once(")*").ok_or_else(bad)?;
            let (i, j) = idx.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            if i == 0 || j == 0 {
                return Err(bad());
            }
            return Ok(Key::unit(i - 1, j - 1, inner.parse()?));
        }
        for (prefix, wrap) in [("L(", Key::left as fn(Key) -> Key), ("R(", Key::right)] {
            if let Some(rest) = s.strip_prefix(prefix) {
                let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                return Ok(wrap(inner.parse()?));
            }
        }
        Ok(Key::Name(s.to_string()))
    }
}

/// A pure tensor `left ⊗ right` of basis keys; ordered by `(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorKey {
    pub left: Key,
    pub right: Key,
}

impl TensorKey {
    pub fn new(left: Key, right: Key) -> Self {
        TensorKey { left, right }
    }
}

impl fmt::Display for TensorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.left, self.right)
    }
}

impl FromStr for TensorKey {
    type Err = RotaError;

    fn from_str(s: &str) -> Result<TensorKey, RotaError> {
        let bad = || RotaError::Invalid(format!("malformed tensor key `{s}`"));
        let body = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (l, r) = body.split_once('|').ok_or_else(bad)?;
        Ok(TensorKey::new(l.parse()?, r.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms_round_trip() {
        let keys = [
            Key::name("e1"),
            Key::Mono(-3),
            Key::Div(12),
            Key::unit(0, 1, Key::Mono(2)),
            Key::left(Key::name("1")),
            Key::right(Key::unit(1, 1, Key::Div(0))),
        ];
        for k in keys {
            assert_eq!(k.to_string().parse::<Key>().unwrap(), k);
        }
        let t = TensorKey::new(Key::Mono(-1), Key::left(Key::name("1")));
        assert_eq!(t.to_string(), "(t^-1|L(1))");
        assert_eq!(t.to_string().parse::<TensorKey>().unwrap(), t);
    }

    #[test]
    fn ordering_is_by_variant_then_payload() {
        assert!(Key::name("z") < Key::Mono(-5));
        assert!(Key::Mono(-5) < Key::Mono(2));
        assert!(Key::Div(9) < Key::unit(0, 0, Key::name("1")));
        assert!(Key::left(Key::Div(9)) < Key::right(Key::Div(0)));
    }
}
