//! The twisted Hall algebra of the cyclic quiver and its PBW basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::Ratio;
use num_traits::Zero;

use super::count::{hall_polynomials, Validation};
use super::nilrep::segment_layout;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::types::{DimensionVector, Modulus, Multisegment, Residue, Segment};

/// Default bound on the rank of multisegments handled by the algebra.
pub const DEFAULT_RANK_BOUND: usize = 5;

/// `m(a, b) = sum_i (a_i b_{i+1} + a_i b_i)`.
pub fn m_form(a: &DimensionVector, b: &DimensionVector) -> i64 {
    a.modulus()
        .residues()
        .map(|i| a.get(i) as i64 * (b.get(i.succ()) as i64 + b.get(i) as i64))
        .sum()
}

/// `dim O_psi = sum d_i^2 - dim End(M_psi)`, the endomorphism space being
/// solved for over the rationals.
pub fn orbit_dimension(psi: &Multisegment) -> usize {
    let e = psi.modulus().get() as usize;
    let (dims, chains) = segment_layout(psi);
    // x[i] : V_i -> V_{i+1} as integer matrices
    let mut x: Vec<Vec<Vec<i64>>> = (0..e)
        .map(|i| vec![vec![0; dims[i]]; dims[(i + 1) % e]])
        .collect();
    for chain in &chains {
        for w in chain.windows(2) {
            let ((g, a), (_, b)) = (w[0], w[1]);
            x[g][b][a] = 1;
        }
    }
    let mut offset = vec![0usize; e + 1];
    for i in 0..e {
        offset[i + 1] = offset[i] + dims[i] * dims[i];
    }
    let unknowns = offset[e];
    let var = |i: usize, r: usize, c: usize| offset[i] + r * dims[i] + c;
    let mut rows: Vec<Vec<Ratio<i64>>> = Vec::new();
    for i in 0..e {
        let j = (i + 1) % e;
        for r in 0..dims[j] {
            for c in 0..dims[i] {
                // (A_j X_i - X_i A_i)[r, c]
                let mut row = vec![Ratio::zero(); unknowns];
                for k in 0..dims[j] {
                    if x[i][k][c] != 0 {
                        row[var(j, r, k)] += Ratio::from_integer(x[i][k][c]);
                    }
                }
                for k in 0..dims[i] {
                    if x[i][r][k] != 0 {
                        row[var(i, k, c)] -= Ratio::from_integer(x[i][r][k]);
                    }
                }
                rows.push(row);
            }
        }
    }
    // sum d_i^2 is the number of unknowns, so the orbit dimension is the rank
    rational_rank(rows, unknowns)
}

fn rational_rank(mut rows: Vec<Vec<Ratio<i64>>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for k in r + 1..rows.len() {
            if !rows[k][c].is_zero() {
                let factor = rows[k][c] / pivot;
                for j in c..cols {
                    let t = rows[r][j] * factor;
                    rows[k][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// A finitely supported combination of the natural basis `u_psi`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HallElement {
    terms: BTreeMap<Multisegment, LaurentPoly>,
}

impl HallElement {
    pub fn zero() -> Self {
        HallElement::default()
    }

    pub fn one(modulus: Modulus) -> Self {
        HallElement::basis(Multisegment::empty(modulus))
    }

    /// `u_psi`.
    pub fn basis(psi: Multisegment) -> Self {
        HallElement::from_u_terms([(psi, LaurentPoly::one())])
    }

    /// `E_psi = v^{dim O_psi} u_psi`.
    pub fn pbw(psi: Multisegment) -> Self {
        let d = orbit_dimension(&psi) as i32;
        HallElement::from_u_terms([(psi, LaurentPoly::monomial(d, 1))])
    }

    /// The generator `f_i = u_{[i;1)}`.
    pub fn generator(i: Residue) -> Self {
        let s = Segment::new(i, 1).expect("positive length");
        HallElement::basis(Multisegment::from_segments(i.modulus(), [s]).expect("one modulus"))
    }

    pub fn from_u_terms<I: IntoIterator<Item = (Multisegment, LaurentPoly)>>(terms: I) -> Self {
        let mut out = HallElement::zero();
        for (psi, c) in terms {
            out.add_u_term(psi, &c);
        }
        out
    }

    /// Builds `sum c_psi E_psi`.
    pub fn from_pbw_terms<I: IntoIterator<Item = (Multisegment, LaurentPoly)>>(terms: I) -> Self {
        let mut out = HallElement::zero();
        for (psi, c) in terms {
            let d = orbit_dimension(&psi) as i32;
            out.add_u_term(psi, &c.shift(d));
        }
        out
    }

    fn add_u_term(&mut self, psi: Multisegment, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(psi.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&psi);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Multisegment> {
        self.terms.keys()
    }

    /// Coefficients in the natural basis.
    pub fn u_terms(&self) -> impl Iterator<Item = (&Multisegment, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn u_coeff(&self, psi: &Multisegment) -> LaurentPoly {
        self.terms.get(psi).cloned().unwrap_or_default()
    }

    /// Coefficient of `E_psi`.
    pub fn pbw_coeff(&self, psi: &Multisegment) -> LaurentPoly {
        self.u_coeff(psi).shift(-(orbit_dimension(psi) as i32))
    }

    /// PBW coefficients, ordered by decreasing orbit dimension, then canonically.
    pub fn pbw_terms(&self) -> Vec<(Multisegment, LaurentPoly)> {
        let mut out: Vec<(usize, Multisegment, LaurentPoly)> = self
            .terms
            .iter()
            .map(|(psi, c)| {
                let d = orbit_dimension(psi);
                (d, psi.clone(), c.shift(-(d as i32)))
            })
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        out.into_iter().map(|(_, p, c)| (p, c)).collect()
    }

    pub fn scale(&self, c: &LaurentPoly) -> HallElement {
        HallElement::from_u_terms(self.terms.iter().map(|(p, x)| (p.clone(), x * c)))
    }

    /// Divides every coefficient exactly by `d`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<HallElement> {
        let mut out = HallElement::zero();
        for (p, c) in &self.terms {
            out.add_u_term(p.clone(), &c.div_exact(d)?);
        }
        Some(out)
    }

    /// Coefficientwise specialisation at `v = 1`.
    pub fn at_v_one(&self) -> BTreeMap<Multisegment, i64> {
        self.terms
            .iter()
            .map(|(p, c)| (p.clone(), c.eval(1).expect("v = 1")))
            .filter(|(_, c)| *c != 0)
            .collect()
    }

    /// `[{"multisegment": ..., "coeff": [[exp, int], ...]}, ...]` in PBW coordinates.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.pbw_terms()
                .into_iter()
                .map(|(p, c)| serde_json::json!({"multisegment": p.to_json(), "coeff": c.to_pairs()}))
                .collect(),
        )
    }
}

impl std::ops::Add for &HallElement {
    type Output = HallElement;
    fn add(self, rhs: &HallElement) -> HallElement {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_u_term(p.clone(), c);
        }
        out
    }
}

impl std::ops::Sub for &HallElement {
    type Output = HallElement;
    fn sub(self, rhs: &HallElement) -> HallElement {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_u_term(p.clone(), &-c);
        }
        out
    }
}

/// Renders a coefficient in front of a basis symbol.
pub(crate) fn coeff_prefix(c: &LaurentPoly) -> String {
    if *c == LaurentPoly::one() {
        String::new()
    } else if *c == LaurentPoly::constant(-1) {
        "-".into()
    } else if c.terms().count() == 1 {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.pbw_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let body: Vec<String> = terms
            .iter()
            .map(|(p, c)| format!("{}E{}", coeff_prefix(c), p))
            .collect();
        write!(f, "{}", body.join(" + "))
    }
}

type PolyTable = Arc<BTreeMap<(Multisegment, Multisegment), LaurentPoly>>;

/// The Hall algebra at a fixed `e`, with caches for Hall polynomials.
#[derive(Debug)]
pub struct HallAlgebra {
    modulus: Modulus,
    rank_bound: usize,
    polys: Mutex<HashMap<(Multisegment, DimensionVector), PolyTable>>,
    by_dim: Mutex<HashMap<DimensionVector, Arc<Vec<Multisegment>>>>,
    validations: Mutex<Vec<Validation>>,
}

impl HallAlgebra {
    pub fn new(modulus: Modulus) -> Self {
        HallAlgebra::with_rank_bound(modulus, DEFAULT_RANK_BOUND)
    }

    pub fn with_rank_bound(modulus: Modulus, rank_bound: usize) -> Self {
        HallAlgebra {
            modulus,
            rank_bound,
            polys: Mutex::new(HashMap::new()),
            by_dim: Mutex::new(HashMap::new()),
            validations: Mutex::new(Vec::new()),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rank_bound(&self) -> usize {
        self.rank_bound
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if n > self.rank_bound {
            return Err(Error::BoundExceeded {
                what: "rank",
                got: n,
                limit: self.rank_bound,
            });
        }
        Ok(())
    }

    fn table(&self, psi: &Multisegment, sub: &DimensionVector) -> Result<PolyTable> {
        let key = (psi.clone(), sub.clone());
        if let Some(t) = self.polys.lock().expect("cache lock").get(&key) {
            return Ok(t.clone());
        }
        let (table, vals) = hall_polynomials(psi, sub)?;
        let table = Arc::new(table);
        self.validations.lock().expect("cache lock").extend(vals);
        self.polys
            .lock()
            .expect("cache lock")
            .insert(key, table.clone());
        Ok(table)
    }

    fn multisegments_of(&self, d: &DimensionVector) -> Arc<Vec<Multisegment>> {
        let mut cache = self.by_dim.lock().expect("cache lock");
        cache
            .entry(d.clone())
            .or_insert_with(|| Arc::new(Multisegment::all_of_dimension(d)))
            .clone()
    }

    /// `F^psi_{phi1,phi2}(q)`: submodules `U ≅ M_phi2` of `M_psi` with `M_psi/U ≅ M_phi1`.
    pub fn hall_polynomial(
        &self,
        phi1: &Multisegment,
        phi2: &Multisegment,
        psi: &Multisegment,
    ) -> Result<LaurentPoly> {
        for x in [phi1, phi2, psi] {
            x.modulus().check_same(self.modulus)?;
        }
        self.check_rank(psi.rank())?;
        if &phi1.dimension_vector() + &phi2.dimension_vector() != psi.dimension_vector() {
            return Err(Error::Invalid(format!(
                "dimension vectors do not add up: {} + {} != {}",
                phi1.dimension_vector(),
                phi2.dimension_vector(),
                psi.dimension_vector()
            )));
        }
        let t = self.table(psi, &phi2.dimension_vector())?;
        Ok(t.get(&(phi1.clone(), phi2.clone()))
            .cloned()
            .unwrap_or_default())
    }

    /// `u_phi1 u_phi2 = v^{m(dim phi1, dim phi2)} sum_psi F^psi_{phi1,phi2}(v^-2) u_psi`.
    pub fn product(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        let mut out = HallElement::zero();
        for (p1, a) in x.u_terms() {
            let d1 = p1.dimension_vector();
            for (p2, b) in y.u_terms() {
                let d2 = p2.dimension_vector();
                let d = &d1 + &d2;
                self.check_rank(d.total())?;
                let ab = (a * b).shift(m_form(&d1, &d2) as i32);
                for psi in self.multisegments_of(&d).iter() {
                    let t = self.table(psi, &d2)?;
                    if let Some(fq) = t.get(&(p1.clone(), p2.clone())) {
                        out.add_u_term(psi.clone(), &(&ab * &fq.substitute_power(-2)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `f_{i_1} f_{i_2} ... f_{i_k}`.
    pub fn monomial(&self, word: &[Residue]) -> Result<HallElement> {
        self.check_rank(word.len())?;
        let mut acc = HallElement::one(self.modulus);
        for &i in word {
            i.modulus().check_same(self.modulus)?;
            acc = self.product(&acc, &HallElement::generator(i))?;
        }
        Ok(acc)
    }

    /// `f_i^(a) = f_i^a / [a]!`.
    pub fn divided_power(&self, i: Residue, a: u32) -> Result<HallElement> {
        let p = self.monomial(&vec![i; a as usize])?;
        p.div_exact(&LaurentPoly::quantum_factorial(a))
            .ok_or_else(|| Error::Invariant(format!("f_{i}^{a} is not divisible by [{a}]!")))
    }

    /// `f_{i_1}^(a_1) ... f_{i_k}^(a_k)`.
    pub fn divided_monomial(&self, word: &[(Residue, u32)]) -> Result<HallElement> {
        self.check_rank(word.iter().map(|&(_, a)| a as usize).sum())?;
        let mut acc = HallElement::one(self.modulus);
        for &(i, a) in word {
            acc = self.product(&acc, &self.divided_power(i, a)?)?;
        }
        Ok(acc)
    }

    /// Every held-out check performed so far by the interpolation routine.
    pub fn validations(&self) -> Vec<Validation> {
        self.validations.lock().expect("cache lock").clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e3() -> Modulus {
        Modulus::new(3).unwrap()
    }

    fn ms(pairs: &[(i64, usize)]) -> Multisegment {
        Multisegment::from_pairs(e3(), pairs).unwrap()
    }

    fn dv(x: &[u32]) -> DimensionVector {
        DimensionVector::from_entries(e3(), x.to_vec()).unwrap()
    }

    #[test]
    fn bilinear_form() {
        assert_eq!(m_form(&dv(&[0, 0, 0]), &dv(&[1, 2, 3])), 0);
        assert_eq!(m_form(&dv(&[1, 0, 0]), &dv(&[0, 1, 0])), 1);
        assert_eq!(m_form(&dv(&[0, 1, 0]), &dv(&[1, 0, 0])), 0);
        assert_eq!(m_form(&dv(&[1, 1, 1]), &dv(&[1, 1, 1])), 6);
    }

    #[test]
    fn orbit_dimensions() {
        assert_eq!(orbit_dimension(&Multisegment::empty(e3())), 0);
        assert_eq!(orbit_dimension(&ms(&[(1, 1), (2, 1)])), 0);
        assert_eq!(orbit_dimension(&ms(&[(1, 2)])), 1);
        assert_eq!(orbit_dimension(&ms(&[(0, 3)])), 2);
        assert_eq!(orbit_dimension(&ms(&[(1, 2), (0, 1)])), 1);
        // two copies of S_0: End = 2x2 matrices
        assert_eq!(orbit_dimension(&ms(&[(0, 1), (0, 1)])), 0);
        // C[0;4) at e = 3: End is spanned by 1 and X^3
        assert_eq!(orbit_dimension(&ms(&[(0, 4)])), 6 - 2);
    }

    #[test]
    fn hall_polynomial_examples() {
        let alg = HallAlgebra::new(e3());
        let psi = ms(&[(1, 2)]);
        let empty = Multisegment::empty(e3());
        assert_eq!(
            alg.hall_polynomial(&empty, &psi, &psi).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            alg.hall_polynomial(&psi, &empty, &psi).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            alg.hall_polynomial(&ms(&[(1, 1)]), &ms(&[(2, 1)]), &psi)
                .unwrap(),
            LaurentPoly::one()
        );
        let semi = ms(&[(1, 1), (2, 1)]);
        assert_eq!(
            alg.hall_polynomial(&ms(&[(1, 1)]), &ms(&[(2, 1)]), &semi)
                .unwrap(),
            LaurentPoly::one()
        );
        assert!(alg
            .hall_polynomial(&ms(&[(1, 1)]), &ms(&[(1, 1)]), &semi)
            .is_err());
        let big = ms(&[(0, 3), (0, 3)]);
        assert!(matches!(
            alg.hall_polynomial(&big, &Multisegment::empty(e3()), &big),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn rank_two_products() {
        let alg = HallAlgebra::new(e3());
        let f = |i: i64| HallElement::generator(e3().residue(i));
        let x = alg.product(&f(1), &f(2)).unwrap();
        let expected = HallElement::from_pbw_terms([
            (ms(&[(1, 2)]), LaurentPoly::one()),
            (ms(&[(1, 1), (2, 1)]), LaurentPoly::v()),
        ]);
        assert_eq!(x, expected);
        assert_eq!(x.to_string(), "E{[1;2)} + vE{[1;1),[2;1)}");
        assert_eq!(
            alg.product(&f(2), &f(1)).unwrap(),
            HallElement::pbw(ms(&[(1, 1), (2, 1)]))
        );
        let one = HallElement::one(e3());
        assert_eq!(alg.product(&one, &x).unwrap(), x);
        assert_eq!(alg.product(&x, &one).unwrap(), x);
    }

    #[test]
    fn rank_three_monomials() {
        let alg = HallAlgebra::new(e3());
        let v = LaurentPoly::v;
        let v2 = || LaurentPoly::monomial(2, 1);
        let one = LaurentPoly::one;
        let s012 = ms(&[(0, 1), (1, 1), (2, 1)]);
        let cases: Vec<([i64; 3], Vec<(Multisegment, LaurentPoly)>)> = vec![
            (
                [0, 1, 2],
                vec![
                    (ms(&[(0, 3)]), one()),
                    (ms(&[(1, 2), (0, 1)]), v()),
                    (ms(&[(0, 2), (2, 1)]), v()),
                    (s012.clone(), v2()),
                ],
            ),
            (
                [2, 0, 1],
                vec![
                    (ms(&[(2, 3)]), one()),
                    (ms(&[(0, 2), (2, 1)]), v()),
                    (ms(&[(2, 2), (1, 1)]), v()),
                    (s012.clone(), v2()),
                ],
            ),
            (
                [1, 2, 0],
                vec![
                    (ms(&[(1, 3)]), one()),
                    (ms(&[(2, 2), (1, 1)]), v()),
                    (ms(&[(1, 2), (0, 1)]), v()),
                    (s012.clone(), v2()),
                ],
            ),
            (
                [2, 1, 0],
                vec![(ms(&[(2, 2), (1, 1)]), one()), (s012.clone(), v())],
            ),
            (
                [0, 2, 1],
                vec![(ms(&[(0, 2), (2, 1)]), one()), (s012.clone(), v())],
            ),
            (
                [1, 0, 2],
                vec![(ms(&[(1, 2), (0, 1)]), one()), (s012.clone(), v())],
            ),
        ];
        for (word, terms) in cases {
            let word: Vec<Residue> = word.iter().map(|&i| e3().residue(i)).collect();
            assert_eq!(
                alg.monomial(&word).unwrap(),
                HallElement::from_pbw_terms(terms),
                "{word:?}"
            );
        }
        assert!(alg.validations().iter().all(Validation::passed));
    }

    #[test]
    fn divided_powers() {
        let alg = HallAlgebra::new(e3());
        let i = e3().residue(0);
        // f_i^(2) is the PBW element of two copies of S_i
        assert_eq!(
            alg.divided_power(i, 2).unwrap(),
            HallElement::pbw(ms(&[(0, 1), (0, 1)]))
        );
    }

    #[test]
    fn associativity_on_generators() {
        let e = Modulus::new(2).unwrap();
        let alg = HallAlgebra::new(e);
        let f = |i: i64| HallElement::generator(e.residue(i));
        let ab = alg.product(&f(0), &f(1)).unwrap();
        let bc = alg.product(&f(1), &f(0)).unwrap();
        for c in [f(0), f(1), ab.clone()] {
            let l = alg.product(&alg.product(&ab, &c).unwrap(), &f(1)).unwrap();
            let r = alg.product(&ab, &alg.product(&c, &f(1)).unwrap()).unwrap();
            assert_eq!(l, r);
            let l = alg.product(&alg.product(&f(0), &bc).unwrap(), &c).unwrap();
            let r = alg.product(&f(0), &alg.product(&bc, &c).unwrap()).unwrap();
            assert_eq!(l, r);
        }
        assert!(alg.validations().iter().all(Validation::passed));
    }
}
