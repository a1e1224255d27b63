//! Canonical basis elements of small weight, and the crystal they induce.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::algebra::{coeff_prefix, orbit_dimension, HallAlgebra, HallElement};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::multiseg_crystal::{self, Convention};
use crate::types::{DimensionVector, Multisegment, Residue};

/// A word in divided powers `f_{i_1}^(a_1) ... f_{i_k}^(a_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<(Residue, u32)>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &(i, a) in &self.0 {
            if a == 1 {
                write!(f, "f{i}")?;
            } else {
                write!(f, "f{i}^({a})")?;
            }
        }
        Ok(())
    }
}

/// `G(psi)` with its expression through divided-power monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalElement {
    pub element: HallElement,
    /// Coefficients are bar-invariant, so the element is.
    pub monomial_coords: BTreeMap<Word, LaurentPoly>,
}

impl CanonicalElement {
    /// Renders the monomial coordinates, e.g. `f1f2` or `f0f1f2 - f0^(2)...`.
    pub fn monomial_string(&self) -> String {
        let parts: Vec<String> = self
            .monomial_coords
            .iter()
            .map(|(w, c)| format!("{}{}", coeff_prefix(c), w))
            .collect();
        parts.join(" + ")
    }
}

/// Canonical basis of one weight space, keyed by aperiodic multisegments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub alpha: DimensionVector,
    pub elements: BTreeMap<Multisegment, CanonicalElement>,
}

impl CanonicalBasis {
    pub fn get(&self, psi: &Multisegment) -> Option<&HallElement> {
        self.elements.get(psi).map(|c| &c.element)
    }

    /// Coordinates of `x` in this basis, by elimination from the largest
    /// orbit dimension down.
    pub fn expand(&self, x: &HallElement) -> Result<BTreeMap<Multisegment, LaurentPoly>> {
        let mut rest = x.clone();
        let mut out = BTreeMap::new();
        while let Some((psi, c)) = top_term(&rest) {
            let g = self.elements.get(&psi).ok_or_else(|| {
                Error::Invariant(format!(
                    "E{psi} occurs with coefficient {c} but is not a canonical basis label"
                ))
            })?;
            rest = &rest - &g.element.scale(&c);
            out.insert(psi, c);
        }
        Ok(out)
    }
}

/// The PBW term of largest orbit dimension, ties broken canonically.
fn top_term(x: &HallElement) -> Option<(Multisegment, LaurentPoly)> {
    x.support()
        .map(|p| (orbit_dimension(p), p))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(a.1)))
        .map(|(_, p)| (p.clone(), x.pbw_coeff(p)))
}

/// All divided-power words of weight `alpha` with distinct adjacent colours,
/// fewest factors first.
fn words_of_weight(alpha: &DimensionVector) -> Vec<Word> {
    fn rec(
        rest: &mut Vec<u32>,
        prev: Option<usize>,
        cur: &mut Vec<(usize, u32)>,
        out: &mut Vec<Vec<(usize, u32)>>,
    ) {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            if Some(i) == prev {
                continue;
            }
            for a in 1..=rest[i] {
                rest[i] -= a;
                cur.push((i, a));
                rec(rest, Some(i), cur, out);
                cur.pop();
                rest[i] += a;
            }
        }
    }
    let m = alpha.modulus();
    let mut raw = Vec::new();
    rec(
        &mut alpha.entries().to_vec(),
        None,
        &mut Vec::new(),
        &mut raw,
    );
    raw.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    raw.into_iter()
        .map(|w| {
            Word(
                w.into_iter()
                    .map(|(i, a)| (m.residue(i as i64), a))
                    .collect(),
            )
        })
        .collect()
}

fn bar_invariant_part(c: &LaurentPoly) -> LaurentPoly {
    let mut p = LaurentPoly::constant(c.coeff(0));
    for (k, x) in c.terms().filter(|&(k, _)| k < 0) {
        p = &p + &(&LaurentPoly::monomial(k, x) + &LaurentPoly::monomial(-k, x));
    }
    p
}

/// Canonical basis of weight `alpha`: one bar-invariant element
/// `E_psi + sum c E_psi'` with `c` in `vZ[v]` for every aperiodic `psi`.
pub fn canonical_basis(alg: &HallAlgebra, alpha: &DimensionVector) -> Result<CanonicalBasis> {
    alpha.modulus().check_same(alg.modulus())?;
    if alpha.total() > alg.rank_bound() {
        return Err(Error::BoundExceeded {
            what: "weight",
            got: alpha.total(),
            limit: alg.rank_bound(),
        });
    }
    let mut labels: Vec<(usize, Multisegment)> = Multisegment::all_of_dimension(alpha)
        .into_iter()
        .filter(Multisegment::is_aperiodic)
        .map(|p| (orbit_dimension(&p), p))
        .collect();
    labels.sort();

    // one monomial per label: E_psi plus strictly smaller orbits
    let mut chosen: HashMap<Multisegment, (Word, HallElement)> = HashMap::new();
    let mut prefix: HashMap<Vec<(Residue, u32)>, HallElement> = HashMap::new();
    prefix.insert(Vec::new(), HallElement::one(alpha.modulus()));
    for w in words_of_weight(alpha) {
        if chosen.len() == labels.len() {
            break;
        }
        for k in 1..=w.0.len() {
            if !prefix.contains_key(&w.0[..k]) {
                let (i, a) = w.0[k - 1];
                let x = alg.product(&prefix[&w.0[..k - 1]], &alg.divided_power(i, a)?)?;
                prefix.insert(w.0[..k].to_vec(), x);
            }
        }
        let m = &prefix[&w.0];
        let Some((psi, c)) = top_term(m) else {
            continue;
        };
        let d = orbit_dimension(&psi);
        let unique_top = m.support().all(|p| p == &psi || orbit_dimension(p) < d);
        if c == LaurentPoly::one() && unique_top && psi.is_aperiodic() && !chosen.contains_key(&psi)
        {
            chosen.insert(psi, (w, m.clone()));
        }
    }

    let mut elements: BTreeMap<Multisegment, CanonicalElement> = BTreeMap::new();
    for (_, psi) in &labels {
        let (w, m) = chosen.get(psi).ok_or_else(|| {
            Error::Invariant(format!("no divided-power monomial has leading term E{psi}"))
        })?;
        let mut g = m.clone();
        let mut coords = BTreeMap::from([(w.clone(), LaurentPoly::one())]);
        let mut lower: Vec<(usize, Multisegment)> = g
            .support()
            .filter(|p| *p != psi)
            .map(|p| (orbit_dimension(p), p.clone()))
            .collect();
        lower.sort_by(|a, b| b.cmp(a));
        for (_, p) in lower {
            let c = g.pbw_coeff(&p);
            let fix = bar_invariant_part(&c);
            if fix.is_zero() {
                continue;
            }
            let Some(gp) = elements.get(&p) else {
                return Err(Error::Invariant(format!(
                    "coefficient {c} of periodic E{p} in G{psi} is not in vZ[v]"
                )));
            };
            g = &g - &gp.element.scale(&fix);
            for (w2, a) in &gp.monomial_coords {
                let slot = coords.entry(w2.clone()).or_insert_with(LaurentPoly::zero);
                *slot = &*slot - &(a * &fix);
            }
        }
        coords.retain(|_, c| !c.is_zero());
        check_canonical(alg, psi, &g, &coords)?;
        elements.insert(
            psi.clone(),
            CanonicalElement {
                element: g,
                monomial_coords: coords,
            },
        );
    }
    Ok(CanonicalBasis {
        alpha: alpha.clone(),
        elements,
    })
}

fn check_canonical(
    alg: &HallAlgebra,
    psi: &Multisegment,
    g: &HallElement,
    coords: &BTreeMap<Word, LaurentPoly>,
) -> Result<()> {
    if g.pbw_coeff(psi) != LaurentPoly::one() {
        return Err(Error::Invariant(format!(
            "G{psi} has leading coefficient {}",
            g.pbw_coeff(psi)
        )));
    }
    for (p, c) in g.pbw_terms() {
        if &p != psi && !c.all_exponents_at_least(1) {
            return Err(Error::Invariant(format!(
                "G{psi} has coefficient {c} at E{p}"
            )));
        }
    }
    let mut rebuilt = HallElement::zero();
    for (w, a) in coords {
        if !a.is_bar_invariant() {
            return Err(Error::Invariant(format!(
                "monomial coordinate {a} of G{psi} is not bar-invariant"
            )));
        }
        rebuilt = &rebuilt + &alg.divided_monomial(&w.0)?.scale(a);
    }
    if &rebuilt != g {
        return Err(Error::Invariant(format!(
            "monomial coordinates of G{psi} do not reproduce it"
        )));
    }
    Ok(())
}

/// One multiplication `f_i G(psi)` expanded in the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalCheck {
    pub psi: Multisegment,
    pub color: Residue,
    /// `f~_i psi` in the head convention.
    pub expected: Multisegment,
    /// The label `b` with `eps_i(b) = eps_i(psi)+1` whose coefficient in
    /// `f_i G(psi)` is `[eps_i(psi)+1]`.
    pub leading: Option<Multisegment>,
    pub coords: BTreeMap<Multisegment, LaurentPoly>,
    pub problems: Vec<String>,
}

impl CrystalCheck {
    pub fn passed(&self) -> bool {
        self.problems.is_empty() && self.leading.as_ref() == Some(&self.expected)
    }
}

/// Checks, for every aperiodic `psi` of weight `alpha` and every colour,
/// `f_i G(psi) = [eps_i(psi)+1] G(f~_i psi) + sum G(b)` over `b` with
/// `eps_i(b) > eps_i(psi)+1`.
pub fn crystal_from_canonical(
    alg: &HallAlgebra,
    alpha: &DimensionVector,
) -> Result<Vec<CrystalCheck>> {
    let e = alpha.modulus();
    let here = canonical_basis(alg, alpha)?;
    let mut above: BTreeMap<Residue, CanonicalBasis> = BTreeMap::new();
    for i in e.residues() {
        above.insert(
            i,
            canonical_basis(alg, &(alpha + &DimensionVector::simple(i)))?,
        );
    }
    let mut out = Vec::new();
    for (psi, g) in &here.elements {
        for i in e.residues() {
            let eps = multiseg_crystal::epsilon(psi, i, Convention::Head)?;
            let expected = multiseg_crystal::f_tilde(psi, i, Convention::Head)?;
            let x = alg.product(&HallElement::generator(i), &g.element)?;
            let coords = above[&i].expand(&x)?;
            let want = LaurentPoly::quantum_int(eps as u32 + 1);
            let mut leading = None;
            let mut problems = Vec::new();
            for (b, c) in &coords {
                let eb = multiseg_crystal::epsilon(b, i, Convention::Head)?;
                if eb == eps + 1 && *c == want && leading.is_none() {
                    leading = Some(b.clone());
                } else if eb <= eps + 1 {
                    problems.push(format!("G{b} has coefficient {c} but eps_{i} = {eb}"));
                }
            }
            out.push(CrystalCheck {
                psi: psi.clone(),
                color: i,
                expected,
                leading,
                coords,
                problems,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Modulus;

    fn e3() -> Modulus {
        Modulus::new(3).unwrap()
    }

    fn dv(x: &[u32]) -> DimensionVector {
        DimensionVector::from_entries(e3(), x.to_vec()).unwrap()
    }

    fn word(letters: &[i64]) -> Word {
        Word(letters.iter().map(|&i| (e3().residue(i), 1)).collect())
    }

    fn as_monomials(b: &CanonicalBasis) -> Vec<Word> {
        let mut out: Vec<Word> = b
            .elements
            .values()
            .map(|c| {
                assert_eq!(c.monomial_coords.len(), 1, "{}", c.monomial_string());
                let (w, a) = c.monomial_coords.iter().next().unwrap();
                assert_eq!(*a, LaurentPoly::one());
                w.clone()
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn single_root() {
        let alg = HallAlgebra::new(e3());
        let b = canonical_basis(&alg, &dv(&[0, 1, 0])).unwrap();
        let s = Multisegment::from_pairs(e3(), &[(1, 1)]).unwrap();
        assert_eq!(b.get(&s), Some(&HallElement::basis(s.clone())));
        let zero = canonical_basis(&alg, &dv(&[0, 0, 0])).unwrap();
        assert_eq!(zero.elements.len(), 1);
    }

    #[test]
    fn two_roots() {
        let alg = HallAlgebra::new(e3());
        let b = canonical_basis(&alg, &dv(&[0, 1, 1])).unwrap();
        assert_eq!(as_monomials(&b), vec![word(&[1, 2]), word(&[2, 1])]);
    }

    #[test]
    fn imaginary_root() {
        let alg = HallAlgebra::new(e3());
        let b = canonical_basis(&alg, &dv(&[1, 1, 1])).unwrap();
        let mut expected: Vec<Word> = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]
        .iter()
        .map(|w| word(w))
        .collect();
        expected.sort();
        assert_eq!(as_monomials(&b), expected);
    }

    #[test]
    fn divided_powers_needed() {
        // at e = 2 the weight 2α0 + α1 needs f0^(2)
        let e = Modulus::new(2).unwrap();
        let alg = HallAlgebra::new(e);
        let b =
            canonical_basis(&alg, &DimensionVector::from_entries(e, vec![2, 1]).unwrap()).unwrap();
        assert_eq!(
            b.elements.len(),
            Multisegment::all_of_dimension(&b.alpha)
                .iter()
                .filter(|p| p.is_aperiodic())
                .count()
        );
        for (psi, c) in &b.elements {
            assert_eq!(c.element.pbw_coeff(psi), LaurentPoly::one());
        }
    }

    #[test]
    fn crystal_matches_head_convention() {
        let alg = HallAlgebra::new(e3());
        let x = crystal_from_canonical(&alg, &dv(&[0, 1, 0])).unwrap();
        let c = x.iter().find(|c| c.color == e3().residue(2)).unwrap();
        assert_eq!(
            c.leading,
            Some(Multisegment::from_pairs(e3(), &[(1, 1), (2, 1)]).unwrap())
        );
        for r in 0..=3usize {
            for alpha in DimensionVector::all_of_total(e3(), r) {
                for c in crystal_from_canonical(&alg, &alpha).unwrap() {
                    assert!(c.passed(), "{c:?}");
                }
            }
        }
    }
}
