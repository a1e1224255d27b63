use std::cmp::Ordering;
use std::fmt;

use super::residue::{Modulus, Residue};
use crate::error::{Error, Result};

/// A segment `[head; len)`: the run of consecutive residues
/// `head, head+1, ..., head+len-1` modulo `e`.
///
/// Segments order by length descending, then head ascending; this is the
/// canonical order in which multisegments are stored and printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    head: Residue,
    len: usize,
}

impl Segment {
    pub fn new(head: Residue, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::ZeroLengthSegment);
        }
        Ok(Segment { head, len })
    }

    /// The segment `(len; tail]` whose last residue is `tail`.
    pub fn from_tail(tail: Residue, len: usize) -> Result<Self> {
        Segment::new(tail.shift(1 - len as i64), len)
    }

    pub fn head(&self) -> Residue {
        self.head
    }

    pub fn tail(&self) -> Residue {
        self.head.shift(self.len as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn modulus(&self) -> Modulus {
        self.head.modulus()
    }

    /// Residues of the nodes, head first.
    pub fn residues(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.len).map(move |k| self.head.shift(k as i64))
    }

    /// Transpose relabelling: `[i; l)` goes to the segment with tail `-i`.
    pub fn rho(&self) -> Segment {
        Segment::from_tail(-self.head, self.len).expect("length is positive")
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        other.len.cmp(&self.len).then(self.head.cmp(&other.head))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{})", self.head, self.len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_and_head() {
        let e = Modulus::new(3).unwrap();
        let s = Segment::new(e.residue(1), 2).unwrap();
        assert_eq!(s.tail().value(), 2);
        let t = Segment::from_tail(e.residue(2), 2).unwrap();
        assert_eq!(s, t);
        assert_eq!(
            Segment::from_tail(e.residue(0), 3).unwrap().head().value(),
            1
        );
        assert!(Segment::new(e.residue(0), 0).is_err());
    }

    #[test]
    fn canonical_order() {
        let e = Modulus::new(3).unwrap();
        let long = Segment::new(e.residue(2), 3).unwrap();
        let short0 = Segment::new(e.residue(0), 1).unwrap();
        let short1 = Segment::new(e.residue(1), 1).unwrap();
        let mut v = vec![short1, short0, long];
        v.sort();
        assert_eq!(v, vec![long, short0, short1]);
    }
}
