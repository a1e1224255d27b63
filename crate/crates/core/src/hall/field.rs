//! Small finite fields with table-driven arithmetic.

use crate::error::{Error, Result};

/// Field orders available for counting, in increasing order.
pub const SUPPORTED_ORDERS: [u32; 12] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19];

/// `F_q`; elements are `0..q`, with `0` and `1` the additive and
/// multiplicative identities.
#[derive(Debug, Clone)]
pub struct Field {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// `(p, k, modulus)` where the modulus lists the low coefficients of a
/// monic irreducible polynomial of degree `k` over `F_p`.
fn construction(q: u32) -> Option<(usize, usize, &'static [usize])> {
    Some(match q {
        2 | 3 | 5 | 7 | 11 | 13 | 17 | 19 => (q as usize, 1, &[]),
        4 => (2, 2, &[1, 1]),        // x^2 + x + 1
        8 => (2, 3, &[1, 1, 0]),     // x^3 + x + 1
        9 => (3, 2, &[1, 0]),        // x^2 + 1
        16 => (2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
        _ => return None,
    })
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        let (p, k, modulus) = construction(q)
            .ok_or_else(|| Error::Invalid(format!("field order {q} is not supported")))?;
        let q = q as usize;
        let digits =
            |x: usize| -> Vec<usize> { (0..k).map(|d| (x / p.pow(d as u32)) % p).collect() };
        let pack = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&s) as u8;
                let mut prod = vec![0usize; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for top in (k..2 * k).rev() {
                    let c = prod[top];
                    if c != 0 {
                        prod[top] = 0;
                        // reduce with x^k = -(m_0 + m_1 x + ...)
                        for (j, &m) in modulus.iter().enumerate() {
                            prod[top - k + j] = (prod[top - k + j] + (p - c) * m) % p;
                        }
                    }
                }
                mul[a * q + b] = pack(&prod[..k]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| {
                (0..q)
                    .find(|&b| add[a * q + b] == 0)
                    .expect("additive inverse") as u8
            })
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).expect("field") as u8
                }
            })
            .collect();
        Ok(Field {
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}
