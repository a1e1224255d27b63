//! Exact Laurent polynomials with integer coefficients in one variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// An element of `Z[v, v^-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// The variable `v`.
    pub fn v() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    /// `c * v^exp`.
    pub fn monomial(exp: i32, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (-k, c)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Substitution `v -> v^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&e, &c)| (e * k, c)))
    }

    pub fn scale(&self, s: i64) -> Self {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&e, &c)| (e, c * s)))
    }

    /// `true` when every exponent is at least `k`.
    pub fn all_exponents_at_least(&self, k: i32) -> bool {
        self.min_exp().is_none_or(|m| m >= k)
    }

    /// Value at an integer point; `v` must be `±1` when negative exponents occur.
    pub fn eval(&self, v: i64) -> Option<i64> {
        let mut acc: i64 = 0;
        for (&e, &c) in &self.coeffs {
            let p = if e >= 0 {
                v.checked_pow(e as u32)?
            } else if v == 1 || v == -1 {
                v.pow((-e) as u32)
            } else {
                return None;
            };
            acc = acc.checked_add(c.checked_mul(p)?)?;
        }
        Some(acc)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        let lead = d.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(hi) = rem.max_exp() {
            let lo = rem.min_exp().expect("nonzero");
            if hi - lo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(hi);
            if c % lead != 0 {
                return None;
            }
            let t = LaurentPoly::monomial(hi - dhi, c / lead);
            rem = &rem - &(&t * d);
            quot += &t;
        }
        Some(quot)
    }

    /// The balanced quantum integer `[n] = v^{n-1} + v^{n-3} + ... + v^{1-n}`.
    pub fn quantum_int(n: u32) -> Self {
        LaurentPoly::from_terms((0..n).map(|k| (n as i32 - 1 - 2 * k as i32, 1)))
    }

    /// `[n]! = [1][2]...[n]`.
    pub fn quantum_factorial(n: u32) -> Self {
        (1..=n).fold(LaurentPoly::one(), |acc, k| {
            &acc * &LaurentPoly::quantum_int(k)
        })
    }

    /// Coefficient list `[[exp, coeff], ...]` in increasing exponent order.
    pub fn to_pairs(&self) -> Vec<[i64; 2]> {
        self.coeffs.iter().map(|(&k, &c)| [k as i64, c]).collect()
    }

    /// Renders with a chosen variable name, highest power first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c < 0;
            let mag = c.unsigned_abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("v"))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, &c) in &rhs.coeffs {
            self.add_term(k, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, &c) in &rhs.coeffs {
            self.add_term(k, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, &c) in &self.coeffs {
            for (&b, &d) in &rhs.coeffs {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..5, -5i64..6), 0..5).prop_map(LaurentPoly::from_terms)
    }

    #[test]
    fn quantum_numbers() {
        assert_eq!(LaurentPoly::quantum_int(2).to_string(), "v+v^-1");
        assert_eq!(
            LaurentPoly::quantum_factorial(3).to_string(),
            "v^3+2v+2v^-1+v^-3"
        );
        assert!(LaurentPoly::quantum_int(5).is_bar_invariant());
        assert_eq!(LaurentPoly::quantum_int(4).eval(1), Some(4));
    }

    #[test]
    fn display_and_zero() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let p = LaurentPoly::from_terms([(2, -1), (0, 3), (-1, 1)]);
        assert_eq!(p.to_string(), "-v^2+3+v^-1");
        assert_eq!(p.display_in("q"), "-q^2+3+q^-1");
        assert_eq!(p.to_pairs(), vec![[-1, 1], [0, 3], [2, -1]]);
    }

    #[test]
    fn division() {
        let a = LaurentPoly::quantum_factorial(3);
        let b = LaurentPoly::quantum_int(3);
        assert_eq!(a.div_exact(&b), Some(LaurentPoly::quantum_factorial(2)));
        assert_eq!(
            LaurentPoly::one().div_exact(&LaurentPoly::quantum_int(2)),
            None
        );
        assert_eq!(LaurentPoly::zero().div_exact(&b), Some(LaurentPoly::zero()));
    }

    proptest! {
        #[test]
        fn ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn exact_division_inverts_product(a in poly(), b in poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
