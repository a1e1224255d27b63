use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// The modulus `e >= 2` of the residue ring `Z/eZ`.
///
/// Every residue-carrying value remembers its modulus, so values built for
/// different `e` can be detected and rejected instead of being silently
/// combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(e: i64) -> Result<Self> {
        if e < 2 || e > u32::MAX as i64 {
            return Err(Error::InvalidModulus(e));
        }
        Ok(Modulus(e as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn residue(self, value: i64) -> Residue {
        Residue::new(value, self)
    }

    /// All residues `0, 1, ..., e-1` in increasing order.
    pub fn residues(self) -> impl Iterator<Item = Residue> {
        (0..self.0).map(move |v| Residue {
            value: v,
            modulus: self,
        })
    }

    pub fn check_same(self, other: Modulus) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A class in `Z/eZ`, stored by its canonical representative in `[0, e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        let e = modulus.0 as i64;
        Residue {
            value: value.rem_euclid(e) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn index(self) -> usize {
        self.value as usize
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn succ(self) -> Self {
        self.shift(1)
    }

    pub fn pred(self) -> Self {
        self.shift(-1)
    }

    pub fn shift(self, by: i64) -> Self {
        Residue::new(self.value as i64 + by, self.modulus)
    }
}

impl Add for Residue {
    type Output = Residue;

    /// Panics when the moduli differ; use [`Modulus::check_same`] first when
    /// the operands come from untrusted input.
    fn add(self, rhs: Residue) -> Residue {
        assert_eq!(
            self.modulus, rhs.modulus,
            "adding residues of different moduli"
        );
        self.shift(rhs.value as i64)
    }
}

impl Sub for Residue {
    type Output = Residue;

    fn sub(self, rhs: Residue) -> Residue {
        assert_eq!(
            self.modulus, rhs.modulus,
            "subtracting residues of different moduli"
        );
        self.shift(-(rhs.value as i64))
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue::new(-(self.value as i64), self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_moduli() {
        assert!(Modulus::new(1).is_err());
        assert!(Modulus::new(0).is_err());
        assert!(Modulus::new(-3).is_err());
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn canonical_representatives() {
        let e = Modulus::new(4).unwrap();
        assert_eq!(e.residue(-1).value(), 3);
        assert_eq!(e.residue(9).value(), 1);
        assert_eq!((-e.residue(1)).value(), 3);
        assert_eq!(e.residue(3).succ().value(), 0);
        assert_eq!(e.residue(0).pred().value(), 3);
    }

    #[test]
    fn group_axioms_exhaustive() {
        for e in 2..=8 {
            let m = Modulus::new(e).unwrap();
            let zero = m.residue(0);
            for a in m.residues() {
                assert_eq!(a + zero, a);
                assert_eq!(a + (-a), zero);
                assert_eq!(a.succ().pred(), a);
                for b in m.residues() {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a - b, a + (-b));
                    for c in m.residues() {
                        assert_eq!((a + b) + c, a + (b + c));
                    }
                }
            }
        }
    }

    #[test]
    fn mismatch_detected() {
        let a = Modulus::new(3).unwrap();
        let b = Modulus::new(4).unwrap();
        assert_eq!(
            a.check_same(b),
            Err(Error::ContextMismatch { left: 3, right: 4 })
        );
    }
}
