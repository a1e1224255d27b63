//! Counting submodules of `M_psi` over finite fields, and recovering Hall
//! polynomials by interpolation.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::field::{Field, SUPPORTED_ORDERS};
use super::nilrep::{decode_ranks, echelon, rank, rep_from_multisegment, Mat};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::types::{DimensionVector, Multisegment};

/// `(quotient type, submodule type) -> number of submodules`.
pub type CountTable = BTreeMap<(Multisegment, Multisegment), u64>;

/// Calls `visit` with a basis of every `k`-dimensional subspace of `F^n`
/// that contains the row space of the echelon basis `w` (pivots `w_piv`).
fn for_each_superspace(
    f: &Field,
    n: usize,
    w: &[Vec<u8>],
    w_piv: &[usize],
    k: usize,
    visit: &mut dyn FnMut(&[Vec<u8>]),
) {
    if k < w.len() || k > n {
        return;
    }
    let free: Vec<usize> = (0..n).filter(|c| !w_piv.contains(c)).collect();
    let m = free.len();
    let kk = k - w.len();
    let q = f.order() as u8;
    let mut basis: Vec<Vec<u8>> = w.to_vec();
    // choose pivot positions inside the free coordinates
    let mut piv: Vec<usize> = (0..kk).collect();
    loop {
        // entries (row, col) that are free to vary
        let mut slots = Vec::new();
        for (r, &p) in piv.iter().enumerate() {
            for c in p + 1..m {
                if !piv.contains(&c) {
                    slots.push((r, c));
                }
            }
        }
        let mut vals = vec![0u8; slots.len()];
        loop {
            basis.truncate(w.len());
            for (r, &p) in piv.iter().enumerate() {
                let mut v = vec![0u8; n];
                v[free[p]] = 1;
                for (s, &(rr, c)) in slots.iter().enumerate() {
                    if rr == r {
                        v[free[c]] = vals[s];
                    }
                }
                basis.push(v);
            }
            visit(&basis);
            // odometer
            let mut pos = 0;
            while pos < vals.len() {
                vals[pos] += 1;
                if vals[pos] < q {
                    break;
                }
                vals[pos] = 0;
                pos += 1;
            }
            if pos == vals.len() {
                break;
            }
        }
        // next combination of pivots
        let mut t = kk;
        loop {
            if t == 0 {
                return;
            }
            t -= 1;
            if piv[t] < m - kk + t {
                break;
            }
        }
        piv[t] += 1;
        for u in t + 1..kk {
            piv[u] = piv[u - 1] + 1;
        }
    }
}

struct Ctx<'a> {
    f: &'a Field,
    e: usize,
    dims: Vec<usize>,
    maps: Vec<Mat>,
    pow: Vec<Vec<Mat>>,
    top: usize,
    sub: Vec<usize>,
    modulus: crate::types::Modulus,
}

impl Ctx<'_> {
    fn image(&self, i: usize, basis: &[Vec<u8>]) -> Vec<Vec<u8>> {
        basis
            .iter()
            .map(|v| self.maps[i].apply(self.f, v))
            .collect()
    }

    /// Iso types of `U` and `M/U` for the graded subspace `u`.
    fn types(&self, u: &[Vec<Vec<u8>>]) -> Result<(Multisegment, Multisegment)> {
        let e = self.e;
        let mut r_sub = vec![vec![0usize; self.top + 1]; e];
        let mut r_quot = vec![vec![0usize; self.top + 1]; e];
        for i in 0..e {
            for l in 0..=self.top {
                let j = (i + l) % e;
                let img: Vec<Vec<u8>> = u[i]
                    .iter()
                    .map(|v| self.pow[i][l].apply(self.f, v))
                    .collect();
                r_sub[i][l] = rank(self.f, &img, self.dims[j]);
                let mut span = self.pow[i][l].columns();
                span.extend(u[j].iter().cloned());
                r_quot[i][l] = rank(self.f, &span, self.dims[j]) - u[j].len();
            }
        }
        Ok((
            decode_ranks(self.modulus, &r_quot)?,
            decode_ranks(self.modulus, &r_sub)?,
        ))
    }

    fn recurse(
        &self,
        start: usize,
        step: usize,
        chosen: &mut Vec<Vec<Vec<u8>>>,
        table: &mut CountTable,
        err: &mut Option<Error>,
    ) {
        if err.is_some() {
            return;
        }
        let e = self.e;
        if step == e {
            // close the cycle: X(U_{start-1}) must lie in U_start
            let last = (start + e - 1) % e;
            let img = self.image(last, &chosen[last]);
            let mut span = chosen[start].clone();
            span.extend(img);
            if rank(self.f, &span, self.dims[start]) != chosen[start].len() {
                return;
            }
            match self.types(chosen) {
                Ok(key) => *table.entry(key).or_insert(0) += 1,
                Err(x) => *err = Some(x),
            }
            return;
        }
        let g = (start + step) % e;
        let (w, piv) = if step == 0 {
            (Vec::new(), Vec::new())
        } else {
            let prev = (g + e - 1) % e;
            echelon(self.f, &self.image(prev, &chosen[prev]), self.dims[g])
        };
        let mut candidates: Vec<Vec<Vec<u8>>> = Vec::new();
        for_each_superspace(self.f, self.dims[g], &w, &piv, self.sub[g], &mut |b| {
            candidates.push(b.to_vec())
        });
        for b in candidates {
            chosen[g] = b;
            self.recurse(start, step + 1, chosen, table, err);
        }
        chosen[g] = Vec::new();
    }
}

fn gaussian_binomial_size(q: f64, n: usize, k: usize) -> f64 {
    (0..k)
        .map(|j| (q.powi((n - j) as i32) - 1.0) / (q.powi((j + 1) as i32) - 1.0))
        .product()
}

/// Counts the `X`-stable graded subspaces `U` of `M_psi` with dimension vector
/// `sub`, tallied by the isomorphism types of `M_psi / U` and `U`.
pub fn count_submodules(
    psi: &Multisegment,
    sub: &DimensionVector,
    f: &Field,
) -> Result<CountTable> {
    let rep = rep_from_multisegment(psi, f);
    let e = rep.dims.len();
    let subv: Vec<usize> = sub.entries().iter().map(|&x| x as usize).collect();
    if subv.iter().zip(&rep.dims).any(|(a, b)| a > b) {
        return Ok(CountTable::new());
    }
    let top = psi.max_len() + 1;
    let ctx = Ctx {
        f,
        e,
        pow: rep.powers(f, top),
        dims: rep.dims.clone(),
        maps: rep.maps.clone(),
        top,
        sub: subv.clone(),
        modulus: psi.modulus(),
    };
    let q = f.order() as f64;
    let start = (0..e)
        .min_by(|&a, &b| {
            gaussian_binomial_size(q, ctx.dims[a], subv[a])
                .partial_cmp(&gaussian_binomial_size(q, ctx.dims[b], subv[b]))
                .expect("finite")
        })
        .expect("e >= 2");
    let mut table = CountTable::new();
    let mut err = None;
    let mut chosen = vec![Vec::new(); e];
    ctx.recurse(start, 0, &mut chosen, &mut table, &mut err);
    match err {
        Some(x) => Err(x),
        None => Ok(table),
    }
}

/// Evidence that an interpolated polynomial predicts a count it was not fitted to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub psi: Multisegment,
    pub quotient: Multisegment,
    pub sub: Multisegment,
    pub q: u32,
    pub predicted: i64,
    pub counted: u64,
    pub points_used: usize,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.predicted >= 0 && self.predicted as u64 == self.counted
    }
}

type Q = Ratio<i128>;

/// Newton-form interpolating polynomial in power-basis coefficients.
fn interpolate(xs: &[i128], ys: &[i128]) -> Vec<Q> {
    let n = xs.len();
    let mut coef: Vec<Q> = ys.iter().map(|&y| Q::from_integer(y)).collect();
    for j in 1..n {
        for k in (j..n).rev() {
            coef[k] = (coef[k] - coef[k - 1]) / Q::from_integer(xs[k] - xs[k - j]);
        }
    }
    // expand Newton form
    let mut poly: Vec<Q> = vec![Q::zero(); n.max(1)];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + coef[k]
        let mut next = vec![Q::zero(); n.max(1) + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += *c;
            next[d] -= *c * Q::from_integer(xs[k]);
        }
        next[0] += coef[k];
        next.truncate(n.max(1));
        poly = next;
    }
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    poly
}

fn eval(poly: &[Q], x: i128) -> Q {
    poly.iter()
        .rev()
        .fold(Q::zero(), |acc, c| acc * Q::from_integer(x) + c)
}

fn to_laurent(poly: &[Q]) -> Option<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (d, c) in poly.iter().enumerate() {
        if !c.denom().is_one() {
            return None;
        }
        out.add_term(d as i32, i64::try_from(*c.numer()).ok()?);
    }
    Some(out)
}

/// Degree bound: the Grassmannian of graded subspaces has this dimension.
pub fn degree_bound(psi_dim: &DimensionVector, sub: &DimensionVector) -> usize {
    psi_dim
        .entries()
        .iter()
        .zip(sub.entries())
        .map(|(&d, &k)| (k * (d - k)) as usize)
        .sum()
}

/// Hall polynomials `F^psi_{phi1,phi2}(q)` for all types with `dim phi2 = sub`,
/// together with one held-out validation per polynomial.
pub fn hall_polynomials(
    psi: &Multisegment,
    sub: &DimensionVector,
) -> Result<(
    BTreeMap<(Multisegment, Multisegment), LaurentPoly>,
    Vec<Validation>,
)> {
    let bound = degree_bound(&psi.dimension_vector(), sub);
    let mut xs: Vec<i128> = Vec::new();
    let mut tables: Vec<CountTable> = Vec::new();
    for &q in SUPPORTED_ORDERS.iter() {
        let table = count_submodules(psi, sub, &Field::new(q)?)?;
        xs.push(q as i128);
        tables.push(table);
        let n = xs.len();
        if n < 3 {
            continue;
        }
        // fit on all but the last point; the last point is held out
        let keys: std::collections::BTreeSet<_> =
            tables.iter().flat_map(|t| t.keys().cloned()).collect();
        let mut result = BTreeMap::new();
        let mut validations = Vec::new();
        let mut ok = true;
        for key in keys {
            let ys: Vec<i128> = tables
                .iter()
                .map(|t| t.get(&key).copied().unwrap_or(0) as i128)
                .collect();
            let fit_small = interpolate(&xs[..n - 2], &ys[..n - 2]);
            let fit = interpolate(&xs[..n - 1], &ys[..n - 1]);
            let predicted = eval(&fit, xs[n - 1]);
            if fit_small != fit || predicted != Q::from_integer(ys[n - 1]) {
                ok = false;
                break;
            }
            let poly = to_laurent(&fit).ok_or_else(|| {
                Error::Invariant(format!(
                    "Hall polynomial for {psi} has non-integral coefficients"
                ))
            })?;
            validations.push(Validation {
                psi: psi.clone(),
                quotient: key.0.clone(),
                sub: key.1.clone(),
                q: xs[n - 1] as u32,
                predicted: predicted.to_integer() as i64,
                counted: ys[n - 1] as u64,
                points_used: n - 1,
            });
            result.insert(key, poly);
        }
        if ok {
            return Ok((result, validations));
        }
        if n > bound + 3 {
            return Err(Error::Invariant(format!(
                "Hall polynomial interpolation for {psi} did not stabilise within {n} points"
            )));
        }
    }
    Err(Error::BoundExceeded {
        what: "interpolation points",
        got: SUPPORTED_ORDERS.len() + 1,
        limit: SUPPORTED_ORDERS.len(),
    })
}
