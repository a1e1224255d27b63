//! Laurent polynomials in `x_1, ..., x_n, q` and the Demazure-Lusztig action.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Element of `Z[x_1^±, ..., x_n^±, q^±]`; exponent vectors have length
/// `n + 1` with the exponent of `q` last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiLaurent {
    n: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

impl MultiLaurent {
    pub fn zero(n: usize) -> Self {
        MultiLaurent {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        MultiLaurent::monomial(n, &vec![0; n], 0, c)
    }

    pub fn one(n: usize) -> Self {
        MultiLaurent::constant(n, 1)
    }

    /// `c * x^xs * q^qe`.
    pub fn monomial(n: usize, xs: &[i32], qe: i32, c: i64) -> Self {
        assert_eq!(xs.len(), n, "exponent vector length");
        let mut out = MultiLaurent::zero(n);
        let mut key = xs.to_vec();
        key.push(qe);
        out.add_term(key, c);
        out
    }

    /// `x_j^k`, `1 <= j <= n`.
    pub fn x_pow(n: usize, j: usize, k: i32) -> Self {
        let mut xs = vec![0; n];
        xs[j - 1] = k;
        MultiLaurent::monomial(n, &xs, 0, 1)
    }

    pub fn q(n: usize) -> Self {
        MultiLaurent::monomial(n, &vec![0; n], 1, 1)
    }

    /// A polynomial in `q` alone.
    pub fn from_q_poly(n: usize, p: &LaurentPoly) -> Self {
        let mut out = MultiLaurent::zero(n);
        for (k, c) in p.terms() {
            let mut key = vec![0; n];
            key.push(k);
            out.add_term(key, c);
        }
        out
    }

    fn add_term(&mut self, key: Vec<i32>, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], i64)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = MultiLaurent::zero(self.n);
        for (k, &x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    pub fn scale_q(&self, p: &LaurentPoly) -> Self {
        self * &MultiLaurent::from_q_poly(self.n, p)
    }

    /// `s_i f`: swaps `x_i` and `x_{i+1}`.
    pub fn swap(&self, i: usize) -> Self {
        let mut out = MultiLaurent::zero(self.n);
        for (k, &c) in &self.terms {
            let mut k = k.clone();
            k.swap(i - 1, i);
            out.add_term(k, c);
        }
        out
    }

    /// Exact quotient by `x_{i+1} - x_i`. Each piece homogeneous in
    /// `(x_i, x_{i+1})` with the other exponents fixed is divided separately:
    /// its quotient coefficients are prefix sums of its coefficients.
    pub fn div_by_difference(&self, i: usize) -> Result<Self> {
        let (a, b) = (i - 1, i);
        let mut pieces: BTreeMap<(Vec<i32>, i32), BTreeMap<i32, i64>> = BTreeMap::new();
        for (k, &c) in &self.terms {
            let mut rest = k.clone();
            rest[a] = 0;
            rest[b] = 0;
            *pieces
                .entry((rest, k[a] + k[b]))
                .or_default()
                .entry(k[a])
                .or_insert(0) += c;
        }
        let mut out = MultiLaurent::zero(self.n);
        for ((rest, d), coeffs) in pieces {
            let (&lo, _) = coeffs.first_key_value().expect("nonempty piece");
            let (&hi, _) = coeffs.last_key_value().expect("nonempty piece");
            let mut acc = 0i64;
            for p in lo..=hi {
                acc += coeffs.get(&p).copied().unwrap_or(0);
                if p == hi {
                    break;
                }
                let mut key = rest.clone();
                key[a] = p;
                key[b] = d - 1 - p;
                out.add_term(key, acc);
            }
            if acc != 0 {
                return Err(Error::Invariant(format!(
                    "{self} is not divisible by x{}-x{}",
                    i + 1,
                    i
                )));
            }
        }
        Ok(out)
    }
}

impl Add for &MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (k, &c) in &rhs.terms {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl Sub for &MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (k, &c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        self.scale(-1)
    }
}

impl Mul for &MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.n, rhs.n, "multiplying polynomials in different rings");
        let mut out = MultiLaurent::zero(self.n);
        for (k1, &c1) in &self.terms {
            for (k2, &c2) in &rhs.terms {
                out.add_term(k1.iter().zip(k2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, &c)) in self.terms.iter().enumerate() {
            let mut mono = String::new();
            for (j, &p) in k.iter().enumerate() {
                let var = if j == self.n {
                    "q".to_string()
                } else {
                    format!("x{}", j + 1)
                };
                match p {
                    0 => {}
                    1 => mono.push_str(&var),
                    _ => mono.push_str(&format!("{var}^{p}")),
                }
            }
            let sign = if c < 0 {
                "-"
            } else if idx > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            if mono.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag == 1 {
                write!(f, "{sign}{mono}")?;
            } else {
                write!(f, "{sign}{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

fn check_index(i: usize, n: usize, upper: usize, what: &str) -> Result<()> {
    if i == 0 || i > upper {
        return Err(Error::Invalid(format!(
            "{what} index {i} out of range for n = {n}"
        )));
    }
    Ok(())
}

/// `T_i f = [(f - s_i f) - q (f - e^{alpha_i} s_i f)] / (e^{alpha_i} - 1)` with
/// `e^{alpha_i} = x_i^-1 x_{i+1}`, for `1 <= i < n`.
pub fn act_t(i: usize, f: &MultiLaurent) -> Result<MultiLaurent> {
    let n = f.num_vars();
    check_index(i, n, n.saturating_sub(1), "T")?;
    let sf = f.swap(i);
    let ea = &MultiLaurent::x_pow(n, i, -1) * &MultiLaurent::x_pow(n, i + 1, 1);
    let num = &(f - &sf) - &(&MultiLaurent::q(n) * &(f - &(&ea * &sf)));
    // e^{alpha_i} - 1 = x_i^-1 (x_{i+1} - x_i)
    (&MultiLaurent::x_pow(n, i, 1) * &num).div_by_difference(i)
}

/// `T_i^-1 = q^-1 (T_i - q + 1)`.
pub fn act_t_inv(i: usize, f: &MultiLaurent) -> Result<MultiLaurent> {
    let n = f.num_vars();
    let t = act_t(i, f)?;
    let shifted = &t - &(&(&MultiLaurent::q(n) * f) - f);
    Ok(&MultiLaurent::monomial(n, &vec![0; n], -1, 1) * &shifted)
}

/// `X_i f = x_i^-1 f`, for `1 <= i <= n`.
pub fn act_x(i: usize, f: &MultiLaurent) -> Result<MultiLaurent> {
    check_index(i, f.num_vars(), f.num_vars(), "X")?;
    Ok(&MultiLaurent::x_pow(f.num_vars(), i, -1) * f)
}

pub fn act_x_inv(i: usize, f: &MultiLaurent) -> Result<MultiLaurent> {
    check_index(i, f.num_vars(), f.num_vars(), "X")?;
    Ok(&MultiLaurent::x_pow(f.num_vars(), i, 1) * f)
}

/// Multiplication by `theta_lambda = prod x_j^{-lambda_j}`.
pub fn theta(lambda: &[i32]) -> MultiLaurent {
    let xs: Vec<i32> = lambda.iter().map(|&l| -l).collect();
    MultiLaurent::monomial(lambda.len(), &xs, 0, 1)
}
