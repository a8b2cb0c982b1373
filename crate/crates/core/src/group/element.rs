use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element inside its [`FiniteGroup`](super::FiniteGroup).
///
/// Element lists are kept sorted by [`GroupElement`]'s order, so comparing
/// two `Elem`s of the same group compares the underlying normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(transparent)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// An element in normal form `y^k x^l | s`.
///
/// `reflection` is the exponent of `y` (0 or 1), `rotation` the exponent of
/// `x` reduced mod `n`, and `ext` the extension coordinate. For the
/// extension types the meaning of `ext` depends on the group:
///
/// * `Type1`: the `Z/2` factor,
/// * `Type2`: parity of the `z`-exponent (`y^k z^(2l + s)`),
/// * `Type3`: the power of `β₂` (`y^k x^l β₂^s`).
///
/// The derived ordering (reflection, rotation, ext) is the element order
/// used for canonical representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub reflection: u8,
    pub rotation: u32,
    pub ext: u8,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { reflection: 0, rotation: 0, ext: 0 };

    pub fn new(reflection: u8, rotation: u32, ext: u8) -> Self {
        GroupElement { reflection, rotation, ext }
    }

    pub fn is_reflection(&self) -> bool {
        self.reflection == 1
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{} x^{} | {}", self.reflection, self.rotation, self.ext)
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed element {s:?}, expected \"y^k x^l | s\""));
        let (word, ext) = s.split_once('|').ok_or_else(bad)?;
        let mut parts = word.split_whitespace();
        let y = parts.next().and_then(|p| p.strip_prefix("y^")).ok_or_else(bad)?;
        let x = parts.next().and_then(|p| p.strip_prefix("x^")).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(GroupElement {
            reflection: y.parse().map_err(|_| bad())?,
            rotation: x.parse().map_err(|_| bad())?,
            ext: ext.trim().parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Product in `D_n` of `y^k1 x^l1` and `y^k2 x^l2`, as `(k, l)`.
#[inline]
pub(crate) fn dihedral_mul(n: u32, (k1, l1): (u8, u32), (k2, l2): (u8, u32)) -> (u8, u32) {
    let moved = if k2 == 1 { (n - l1) % n } else { l1 };
    (k1 ^ k2, (moved + l2) % n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_stable() {
        let e = GroupElement::new(1, 4, 0);
        assert_eq!(e.to_string(), "y^1 x^4 | 0");
        assert_eq!("y^1 x^4 | 0".parse::<GroupElement>().unwrap(), e);
        assert_eq!(" y^0  x^11 |1 ".parse::<GroupElement>().unwrap(), GroupElement::new(0, 11, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!("x^1 y^0 | 0".parse::<GroupElement>().is_err());
        assert!("y^1 x^2".parse::<GroupElement>().is_err());
        assert!("y^1 x^2 z^3 | 0".parse::<GroupElement>().is_err());
    }

    #[test]
    fn order_is_reflection_rotation_ext() {
        let a = GroupElement::new(0, 5, 1);
        let b = GroupElement::new(1, 0, 0);
        let c = GroupElement::new(0, 5, 0);
        assert!(c < a && a < b);
    }

    #[test]
    fn dihedral_law() {
        // y * yx = x
        assert_eq!(dihedral_mul(5, (1, 0), (1, 1)), (0, 1));
        // x * y = y x^{-1}
        assert_eq!(dihedral_mul(5, (0, 1), (1, 0)), (1, 4));
    }
}
