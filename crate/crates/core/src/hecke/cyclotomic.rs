//! Exact arithmetic in `Q(zeta)`, `zeta` a primitive `e`-th root of unity.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// Coefficients of the `e`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i128> {
    // x^e - 1 divided by every Phi_d with d a proper divisor of e
    let mut p = vec![0i128; e as usize + 1];
    p[0] = -1;
    p[e as usize] = 1;
    for d in (1..e).filter(|d| e.is_multiple_of(*d)) {
        let phi = cyclotomic_polynomial(d);
        let mut quot = vec![0i128; p.len() - phi.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = p[k + phi.len() - 1];
            quot[k] = c;
            for (j, &a) in phi.iter().enumerate() {
                p[k + j] -= c * a;
            }
        }
        debug_assert!(p.iter().all(|&x| x == 0));
        p = quot;
    }
    p
}

/// An element `sum c_k zeta^k`, `0 <= k < deg Phi_e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    e: u32,
    coeffs: Vec<Q>,
}

impl CyclotomicScalar {
    fn reduce(e: u32, mut c: Vec<Q>) -> Self {
        let phi = cyclotomic_polynomial(e);
        let deg = phi.len() - 1;
        for top in (deg..c.len()).rev() {
            let lead = c[top];
            if !lead.is_zero() {
                for (j, &a) in phi.iter().enumerate() {
                    c[top - deg + j] -= lead * Q::from_integer(a);
                }
            }
        }
        c.resize(deg, Q::zero());
        CyclotomicScalar { e, coeffs: c }
    }

    pub fn from_integer(e: u32, n: i64) -> Self {
        CyclotomicScalar::reduce(e, vec![Q::from_integer(n as i128)])
    }

    pub fn zero(e: u32) -> Self {
        CyclotomicScalar::from_integer(e, 0)
    }

    pub fn one(e: u32) -> Self {
        CyclotomicScalar::from_integer(e, 1)
    }

    /// `zeta^k`, any integer `k`.
    pub fn zeta_pow(e: u32, k: i64) -> Self {
        let k = k.rem_euclid(e as i64) as usize;
        let mut c = vec![Q::zero(); k + 1];
        c[k] = Q::one();
        CyclotomicScalar::reduce(e, c)
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.e, other.e, "mixing cyclotomic fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        CyclotomicScalar {
            e: self.e,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicScalar {
            e: self.e,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut c = vec![Q::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        CyclotomicScalar::reduce(self.e, c)
    }

    /// Inverse by solving the linear system of multiplication by `self`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("zero has no inverse".into()));
        }
        let d = self.coeffs.len();
        // column j of the matrix is self * zeta^j
        let cols: Vec<Vec<Q>> = (0..d)
            .map(|j| {
                self.mul(&CyclotomicScalar::zeta_pow(self.e, j as i64))
                    .coeffs
            })
            .collect();
        let mut a: Vec<Vec<Q>> = (0..d)
            .map(|r| {
                let mut row: Vec<Q> = (0..d).map(|j| cols[j][r]).collect();
                row.push(if r == 0 { Q::one() } else { Q::zero() });
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d)
                .find(|&r| !a[r][c].is_zero())
                .ok_or_else(|| Error::Invariant("singular multiplication matrix".into()))?;
            a.swap(c, p);
            let pivot = a[c][c];
            for x in a[c].iter_mut() {
                *x /= pivot;
            }
            for r in 0..d {
                if r != c && !a[r][c].is_zero() {
                    let factor = a[r][c];
                    for k in 0..=d {
                        let t = a[c][k] * factor;
                        a[r][k] -= t;
                    }
                }
            }
        }
        Ok(CyclotomicScalar {
            e: self.e,
            coeffs: a.into_iter().map(|row| row[d]).collect(),
        })
    }

    /// `k` with `self = zeta^k`, if any.
    pub fn as_root_of_unity(&self) -> Option<u32> {
        (0..self.e).find(|&k| *self == CyclotomicScalar::zeta_pow(self.e, k as i64))
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = |k: u32| match k {
            0 => "1".to_string(),
            1 => "ζ".to_string(),
            _ => format!("ζ^{k}"),
        };
        if let Some(k) = self.as_root_of_unity() {
            return write!(f, "{}", root(k));
        }
        if let Some(k) = self.neg().as_root_of_unity() {
            return write!(f, "-{}", root(k));
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if *c < Q::zero() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = if *c < Q::zero() { -c } else { *c };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{sign}{mag}")?,
                (_, true) => write!(f, "{sign}{}", root(k as u32))?,
                (_, false) => write!(f, "{sign}{mag}{}", root(k as u32))?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        for e in 1..=8u32 {
            let z = CyclotomicScalar::zeta_pow(e, 1);
            let mut acc = CyclotomicScalar::one(e);
            for k in 1..=e {
                acc = acc.mul(&z);
                assert_eq!(acc == CyclotomicScalar::one(e), k == e, "e={e} k={k}");
            }
            assert_eq!(z.inv().unwrap(), CyclotomicScalar::zeta_pow(e, -1));
        }
        let e = 3;
        let s = CyclotomicScalar::one(e)
            .add(&CyclotomicScalar::zeta_pow(e, 1))
            .add(&CyclotomicScalar::zeta_pow(e, 2));
        assert!(s.is_zero());
    }

    #[test]
    fn inverses() {
        let e = 5;
        let x = CyclotomicScalar::from_integer(e, 2).add(&CyclotomicScalar::zeta_pow(e, 3));
        assert_eq!(x.mul(&x.inv().unwrap()), CyclotomicScalar::one(e));
        assert!(CyclotomicScalar::zero(e).inv().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CyclotomicScalar::zeta_pow(3, 2).to_string(), "ζ^2");
        assert_eq!(CyclotomicScalar::zeta_pow(3, 1).neg().to_string(), "-ζ");
        assert_eq!(CyclotomicScalar::from_integer(3, 2).to_string(), "2");
    }
}
