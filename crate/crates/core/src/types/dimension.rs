use std::fmt;
use std::ops::Add;

use super::residue::{Modulus, Residue};
use crate::error::{Error, Result};

/// Graded dimension `(d_0, ..., d_{e-1})` of a cyclic-quiver representation,
/// equivalently the element `sum d_i alpha_i` of the positive root lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector {
    modulus: Modulus,
    entries: Vec<u32>,
}

impl DimensionVector {
    pub fn zero(modulus: Modulus) -> Self {
        DimensionVector {
            modulus,
            entries: vec![0; modulus.get() as usize],
        }
    }

    pub fn from_entries(modulus: Modulus, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != modulus.get() as usize {
            return Err(Error::Invalid(format!(
                "dimension vector needs {} entries, got {}",
                modulus,
                entries.len()
            )));
        }
        Ok(DimensionVector { modulus, entries })
    }

    /// The simple root `alpha_i`.
    pub fn simple(i: Residue) -> Self {
        let mut d = DimensionVector::zero(i.modulus());
        d.entries[i.index()] = 1;
        d
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: Residue) -> u32 {
        self.entries[i.index()]
    }

    pub(crate) fn bump(&mut self, i: Residue, by: u32) {
        self.entries[i.index()] += by;
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|&d| d as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&d| d == 0)
    }

    /// Pairing of `-sum d_j alpha_j` with the coroot `alpha_i^vee` for the
    /// affine Cartan matrix of type `A^{(1)}_{e-1}`.
    pub fn neg_pairing(&self, i: Residue) -> i64 {
        let d = |r: Residue| self.get(r) as i64;
        -(2 * d(i) - d(i.pred()) - d(i.succ()))
    }

    /// `true` when `other - self` has no negative entry.
    pub fn le(&self, other: &DimensionVector) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// Every dimension vector with entries summing to `n`, in increasing order.
    pub fn all_of_total(modulus: Modulus, n: usize) -> Vec<DimensionVector> {
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k == 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for d in 0..=left {
                cur.push(d);
                rec(k - 1, left - d, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(modulus.get() as usize, n as u32, &mut Vec::new(), &mut out);
        out.sort();
        out.into_iter()
            .map(|entries| DimensionVector { modulus, entries })
            .collect()
    }

    pub fn checked_sub(&self, other: &DimensionVector) -> Option<DimensionVector> {
        if !other.le(self) {
            return None;
        }
        Some(DimensionVector {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

impl Add for &DimensionVector {
    type Output = DimensionVector;

    fn add(self, rhs: &DimensionVector) -> DimensionVector {
        assert_eq!(
            self.modulus, rhs.modulus,
            "adding dimension vectors of different moduli"
        );
        DimensionVector {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}
