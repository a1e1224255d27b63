//! Operator words in the generators of `H_n`, the involution `sigma`, and
//! checks of the defining relations on the polynomial representation.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{act_t, act_t_inv, act_x, act_x_inv, theta, MultiLaurent};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Largest `n` accepted by the verifiers.
pub const MAX_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    T(usize),
    TInv(usize),
    X(usize),
    XInv(usize),
}

impl Gen {
    pub fn apply(self, f: &MultiLaurent) -> Result<MultiLaurent> {
        match self {
            Gen::T(i) => act_t(i, f),
            Gen::TInv(i) => act_t_inv(i, f),
            Gen::X(i) => act_x(i, f),
            Gen::XInv(i) => act_x_inv(i, f),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::T(i) => write!(f, "T{i}"),
            Gen::TInv(i) => write!(f, "T{i}^-1"),
            Gen::X(i) => write!(f, "X{i}"),
            Gen::XInv(i) => write!(f, "X{i}^-1"),
        }
    }
}

/// A `Z[q^±]`-combination of words; the word `[g_1, ..., g_k]` is the
/// product `g_1 ... g_k`, so `g_k` acts first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpExpr {
    terms: BTreeMap<Vec<Gen>, LaurentPoly>,
}

impl OpExpr {
    pub fn zero() -> Self {
        OpExpr::default()
    }

    pub fn identity() -> Self {
        OpExpr::scalar(LaurentPoly::one())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        OpExpr::from_terms([(Vec::new(), c)])
    }

    pub fn word(w: &[Gen]) -> Self {
        OpExpr::from_terms([(w.to_vec(), LaurentPoly::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<Gen>, LaurentPoly)>>(terms: I) -> Self {
        let mut out = OpExpr::zero();
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    fn add_term(&mut self, w: Vec<Gen>, c: &LaurentPoly) {
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &OpExpr) -> OpExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> OpExpr {
        OpExpr::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Operator product `self * other`.
    pub fn compose(&self, other: &OpExpr) -> OpExpr {
        let mut out = OpExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.iter().chain(w2).copied().collect(), &(c1 * c2));
            }
        }
        out
    }

    pub fn apply(&self, f: &MultiLaurent) -> Result<MultiLaurent> {
        let mut out = MultiLaurent::zero(f.num_vars());
        for (w, c) in &self.terms {
            let mut g = f.clone();
            for gen in w.iter().rev() {
                g = gen.apply(&g)?;
            }
            out = &out + &g.scale_q(c);
        }
        Ok(out)
    }

    /// Image under `sigma`, extended `Z[q^±]`-linearly and multiplicatively.
    pub fn sigma(&self) -> OpExpr {
        let mut out = OpExpr::zero();
        for (w, c) in &self.terms {
            let img = w
                .iter()
                .fold(OpExpr::identity(), |acc, &g| acc.compose(&sigma_gen(g)));
            out = out.add(&img.scale(c));
        }
        out
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: String = w.iter().map(Gen::to_string).collect::<Vec<_>>().join(" ");
                match (w.is_empty(), *c == LaurentPoly::one()) {
                    (true, _) => format!("({})", c.display_in("q")),
                    (false, true) => word,
                    (false, false) => format!("({}) {word}", c.display_in("q")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sigma(T_i) = -q T_i^-1 = (q - 1) - T_i`, `sigma(X_i) = X_i^-1`.
pub fn sigma_gen(g: Gen) -> OpExpr {
    let q = LaurentPoly::monomial(1, 1);
    match g {
        Gen::T(i) => OpExpr::scalar(&q - &LaurentPoly::one())
            .add(&OpExpr::word(&[Gen::T(i)]).scale(&LaurentPoly::constant(-1))),
        Gen::TInv(i) => OpExpr::word(&[Gen::T(i)]).scale(&LaurentPoly::monomial(-1, -1)),
        Gen::X(i) => OpExpr::word(&[Gen::XInv(i)]),
        Gen::XInv(i) => OpExpr::word(&[Gen::X(i)]),
    }
}

/// `sigma` applied to the product of a word.
pub fn sigma_twist(word: &[Gen]) -> OpExpr {
    OpExpr::word(word).sigma()
}

/// A defining relation `lhs = rhs` of `H_n`.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: String,
    pub lhs: OpExpr,
    pub rhs: OpExpr,
}

/// The defining relations, plus the inverse relations for `T_i^-1` and `X_i^-1`.
pub fn relations(n: usize) -> Vec<Relation> {
    let q = LaurentPoly::monomial(1, 1);
    let w = OpExpr::word;
    let mut out = Vec::new();
    let mut push = |name: String, lhs: OpExpr, rhs: OpExpr| out.push(Relation { name, lhs, rhs });
    for i in 1..n {
        let t = Gen::T(i);
        push(
            format!("(T{i}-q)(T{i}+1)=0"),
            w(&[t, t]),
            w(&[t])
                .scale(&(&q - &LaurentPoly::one()))
                .add(&OpExpr::scalar(q.clone())),
        );
        push(
            format!("T{i} T{i}^-1=1"),
            w(&[t, Gen::TInv(i)]),
            OpExpr::identity(),
        );
        push(
            format!("T{i}^-1 T{i}=1"),
            w(&[Gen::TInv(i), t]),
            OpExpr::identity(),
        );
        push(
            format!("q^-1 T{i} X{i} T{i}=X{}", i + 1),
            w(&[t, Gen::X(i), t]).scale(&LaurentPoly::monomial(-1, 1)),
            w(&[Gen::X(i + 1)]),
        );
        for j in 1..=n {
            if j != i && j != i + 1 {
                push(
                    format!("T{i} X{j}=X{j} T{i}"),
                    w(&[t, Gen::X(j)]),
                    w(&[Gen::X(j), t]),
                );
            }
        }
        if i + 1 < n {
            let u = Gen::T(i + 1);
            push(
                format!("T{i} T{} T{i}=T{} T{i} T{}", i + 1, i + 1, i + 1),
                w(&[t, u, t]),
                w(&[u, t, u]),
            );
        }
        for j in i + 2..n {
            push(
                format!("T{i} T{j}=T{j} T{i}"),
                w(&[t, Gen::T(j)]),
                w(&[Gen::T(j), t]),
            );
        }
    }
    for i in 1..=n {
        push(
            format!("X{i} X{i}^-1=1"),
            w(&[Gen::X(i), Gen::XInv(i)]),
            OpExpr::identity(),
        );
        for j in i + 1..=n {
            push(
                format!("X{i} X{j}=X{j} X{i}"),
                w(&[Gen::X(i), Gen::X(j)]),
                w(&[Gen::X(j), Gen::X(i)]),
            );
        }
    }
    out
}

/// Outcome of a relation sweep. Failures carry a witness polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeckeReport {
    pub n: usize,
    pub inputs: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if n > MAX_N {
        return Err(Error::BoundExceeded {
            what: "n",
            got: n,
            limit: MAX_N,
        });
    }
    Ok(())
}

/// Monomials `x^a` with every exponent in `-1..=top`, where `top` shrinks as
/// `n` grows (3 for `n <= 3`, 2 for `n = 4`, 1 for `n = 5`).
pub fn exhaustive_inputs(n: usize) -> Vec<MultiLaurent> {
    let top = match n {
        0..=3 => 3,
        4 => 2,
        _ => 1,
    };
    let mut out = vec![MultiLaurent::zero(n)];
    let mut xs = vec![-1i32; n];
    loop {
        out.push(MultiLaurent::monomial(n, &xs, 0, 1));
        let Some(k) = (0..n).find(|&k| xs[k] < top) else {
            break;
        };
        xs[k] += 1;
        for x in xs.iter_mut().take(k) {
            *x = -1;
        }
    }
    out
}

/// A random polynomial with up to six terms, `x`-exponents in `-3..=3` and
/// `q`-exponents in `-1..=2`.
pub fn random_input(n: usize, rng: &mut ChaCha8Rng) -> MultiLaurent {
    let terms = rng.gen_range(1..=6);
    (0..terms).fold(MultiLaurent::zero(n), |acc, _| {
        let xs: Vec<i32> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        &acc + &MultiLaurent::monomial(n, &xs, rng.gen_range(-1..=2), c)
    })
}

/// Checks every relation and its `sigma`-image on the exhaustive monomials
/// and on `trials` random inputs, and `sigma^2 = id` on random words of
/// length at most 4.
pub fn verify_presentation(n: usize, trials: usize, seed: u64) -> Result<HeckeReport> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inputs = exhaustive_inputs(n);
    inputs.extend((0..trials).map(|_| random_input(n, &mut rng)));
    let rels: Vec<Relation> = relations(n)
        .into_iter()
        .flat_map(|r| {
            let twisted = Relation {
                name: format!("sigma({})", r.name),
                lhs: r.lhs.sigma(),
                rhs: r.rhs.sigma(),
            };
            [r, twisted]
        })
        .collect();
    let gens: Vec<Gen> = (1..n)
        .flat_map(|i| [Gen::T(i), Gen::TInv(i)])
        .chain((1..=n).flat_map(|i| [Gen::X(i), Gen::XInv(i)]))
        .collect();
    let mut report = HeckeReport {
        n,
        inputs: inputs.len(),
        ..Default::default()
    };
    for f in &inputs {
        for r in &rels {
            report.checks += 1;
            let (l, rr) = (r.lhs.apply(f)?, r.rhs.apply(f)?);
            if l != rr {
                report
                    .failures
                    .push(format!("{} fails on f = {f}: {l} vs {rr}", r.name));
            }
        }
        let len = rng.gen_range(1..=4);
        let word: Vec<Gen> = (0..len)
            .map(|_| gens[rng.gen_range(0..gens.len())])
            .collect();
        report.checks += 1;
        let twice = sigma_twist(&word).sigma();
        if twice.apply(f)? != OpExpr::word(&word).apply(f)? {
            let w: Vec<String> = word.iter().map(Gen::to_string).collect();
            report
                .failures
                .push(format!("sigma^2 differs from {} on f = {f}", w.join(" ")));
        }
    }
    Ok(report)
}

/// Both sides of `T_i theta_lambda f = theta_{s_i lambda} T_i f + (1-q)
/// (theta_lambda - theta_{s_i lambda}) / (theta_{-alpha_i} - 1) f`.
pub fn bernstein_sides(
    i: usize,
    lambda: &[i32],
    f: &MultiLaurent,
) -> Result<(MultiLaurent, MultiLaurent)> {
    let n = f.num_vars();
    if lambda.len() != n {
        return Err(Error::Invalid(format!(
            "lambda has {} entries, expected {n}",
            lambda.len()
        )));
    }
    let mut s_lambda = lambda.to_vec();
    s_lambda.swap(i - 1, i);
    let (th, ths) = (theta(lambda), theta(&s_lambda));
    let lhs = act_t(i, &(&th * f))?;
    // theta_{-alpha_i} - 1 = x_i^-1 (x_{i+1} - x_i)
    let ratio = (&MultiLaurent::x_pow(n, i, 1) * &(&th - &ths)).div_by_difference(i)?;
    let one_minus_q = &MultiLaurent::one(n) - &MultiLaurent::q(n);
    let rhs = &(&ths * &act_t(i, f)?) + &(&(&one_minus_q * &ratio) * f);
    Ok((lhs, rhs))
}

/// The relation on `f = x_1` with `lambda = (1, 0, ..)`, then on `trials` random
/// pairs `(lambda, f)` with `lambda` entries in `-3..=3`.
pub fn verify_bernstein(n: usize, trials: usize, seed: u64) -> Result<HeckeReport> {
    check_n(n)?;
    if n < 2 {
        return Ok(HeckeReport {
            n,
            ..Default::default()
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb5);
    let mut cases = vec![{
        let mut l = vec![0; n];
        l[0] = 1;
        (1, l, MultiLaurent::x_pow(n, 1, 1))
    }];
    for _ in 0..trials {
        let lambda: Vec<i32> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        cases.push((rng.gen_range(1..n), lambda, random_input(n, &mut rng)));
    }
    let mut report = HeckeReport {
        n,
        inputs: cases.len(),
        ..Default::default()
    };
    for (i, lambda, f) in cases {
        report.checks += 1;
        let (l, r) = bernstein_sides(i, &lambda, &f)?;
        if l != r {
            report.failures.push(format!(
                "Bernstein relation fails for i={i} lambda={lambda:?} f={f}: {l} vs {r}"
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_on_generators() {
        let x = OpExpr::word(&[Gen::X(1)]);
        assert_eq!(
            x.sigma().compose(&sigma_twist(&[Gen::XInv(1)])),
            OpExpr::word(&[Gen::XInv(1), Gen::X(1)])
        );
        assert_eq!(
            sigma_twist(&[Gen::T(1)]).sigma(),
            OpExpr::word(&[Gen::T(1)])
        );
        assert_eq!(sigma_twist(&[Gen::T(1)]).to_string(), "(q-1) + (-1) T1");
    }

    #[test]
    fn sigma_t_is_quadratic() {
        let s = sigma_twist(&[Gen::T(1)]);
        let q = LaurentPoly::monomial(1, 1);
        let lhs = s
            .add(&OpExpr::scalar(-&q))
            .compose(&s.add(&OpExpr::identity()));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = random_input(2, &mut rng);
            assert!(lhs.apply(&f).unwrap().is_zero());
        }
    }

    #[test]
    fn relation_counts() {
        assert_eq!(relations(1).len(), 1);
        // per i: quadratic, two inverses, TXT, n-2 commutations
        assert_eq!(relations(2).len(), 4 + 2 + 1);
        assert_eq!(exhaustive_inputs(2).len(), 1 + 25);
    }

    #[test]
    fn zero_input() {
        for r in relations(3) {
            assert!(r.lhs.apply(&MultiLaurent::zero(3)).unwrap().is_zero());
        }
    }

    #[test]
    fn small_sweeps() {
        for n in 1..=3 {
            let r = verify_presentation(n, 20, 7).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
        let r = verify_bernstein(3, 30, 7).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(verify_presentation(6, 1, 0).is_err());
    }

    #[test]
    fn detects_a_wrong_relation() {
        // T1 T1 = q is false
        let bad = Relation {
            name: "bad".into(),
            lhs: OpExpr::word(&[Gen::T(1), Gen::T(1)]),
            rhs: OpExpr::scalar(LaurentPoly::monomial(1, 1)),
        };
        let f = MultiLaurent::x_pow(2, 1, 1);
        assert_ne!(bad.lhs.apply(&f).unwrap(), bad.rhs.apply(&f).unwrap());
    }
}
