use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::dimension::DimensionVector;
use super::residue::{Modulus, Residue};
use super::segment::Segment;
use crate::error::{Error, Result};

/// A finite multiset of segments over `Z/eZ`.
///
/// Stored canonically (length descending, head ascending) with no zero
/// multiplicities, so derived equality, hashing and ordering are
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    modulus: Modulus,
    counts: BTreeMap<Segment, usize>,
}

impl Multisegment {
    pub fn empty(modulus: Modulus) -> Self {
        Multisegment {
            modulus,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_segments<I: IntoIterator<Item = Segment>>(
        modulus: Modulus,
        segments: I,
    ) -> Result<Self> {
        let mut ms = Multisegment::empty(modulus);
        for s in segments {
            modulus.check_same(s.modulus())?;
            ms.insert(s, 1);
        }
        Ok(ms)
    }

    /// Builds from `(head, len)` pairs; a convenience for tests and examples.
    pub fn from_pairs(modulus: Modulus, pairs: &[(i64, usize)]) -> Result<Self> {
        let segs = pairs
            .iter()
            .map(|&(h, l)| Segment::new(modulus.residue(h), l))
            .collect::<Result<Vec<_>>>()?;
        Multisegment::from_segments(modulus, segs)
    }

    /// Builds from `(len, tail)` pairs, i.e. segments written `(len; tail]`.
    pub fn from_tail_pairs(modulus: Modulus, pairs: &[(usize, i64)]) -> Result<Self> {
        let segs = pairs
            .iter()
            .map(|&(l, t)| Segment::from_tail(modulus.residue(t), l))
            .collect::<Result<Vec<_>>>()?;
        Multisegment::from_segments(modulus, segs)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub(crate) fn insert(&mut self, s: Segment, mult: usize) {
        if mult > 0 {
            *self.counts.entry(s).or_insert(0) += mult;
        }
    }

    /// Removes one copy of `s`; returns `false` if `s` does not occur.
    pub(crate) fn remove_one(&mut self, s: &Segment) -> bool {
        match self.counts.get_mut(s) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.counts.remove(s);
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, s: &Segment) -> usize {
        self.counts.get(s).copied().unwrap_or(0)
    }

    /// Multiplicity of `[head; len)`; zero for `len == 0`.
    pub fn mult_head(&self, head: Residue, len: usize) -> usize {
        match Segment::new(head, len) {
            Ok(s) => self.multiplicity(&s),
            Err(_) => 0,
        }
    }

    /// Multiplicity of `(len; tail]`; zero for `len == 0`.
    pub fn mult_tail(&self, tail: Residue, len: usize) -> usize {
        match Segment::from_tail(tail, len) {
            Ok(s) => self.multiplicity(&s),
            Err(_) => 0,
        }
    }

    /// `(segment, multiplicity)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Segment, usize)> {
        self.counts.iter().map(|(s, &m)| (s, m))
    }

    /// Every segment repeated by its multiplicity, in canonical order.
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.counts
            .iter()
            .flat_map(|(s, &m)| std::iter::repeat_n(*s, m))
    }

    pub fn segment_count(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn rank(&self) -> usize {
        self.counts.iter().map(|(s, m)| s.len() * m).sum()
    }

    pub fn max_len(&self) -> usize {
        self.counts.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn dimension_vector(&self) -> DimensionVector {
        let mut d = DimensionVector::zero(self.modulus);
        for (s, m) in self.iter() {
            for r in s.residues() {
                d.bump(r, m as u32);
            }
        }
        d
    }

    /// For every occurring length, some head is missing.
    pub fn is_aperiodic(&self) -> bool {
        let e = self.modulus.get() as usize;
        let mut heads: BTreeMap<usize, BTreeSet<Residue>> = BTreeMap::new();
        for s in self.counts.keys() {
            heads.entry(s.len()).or_default().insert(s.head());
        }
        heads.values().all(|h| h.len() < e)
    }

    pub fn require_aperiodic(&self) -> Result<()> {
        if self.is_aperiodic() {
            Ok(())
        } else {
            Err(Error::NotAperiodic(self.to_string()))
        }
    }

    /// Relabelling `[i; l) -> (l; -i]` induced by transposing representations.
    pub fn rho(&self) -> Multisegment {
        let mut out = Multisegment::empty(self.modulus);
        for (s, m) in self.iter() {
            out.insert(s.rho(), m);
        }
        out
    }

    /// Vertex name used in graph output: `[h,l]^m;[h,l]^m;...`, `∅` if empty.
    pub fn canonical_string(&self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        self.iter()
            .map(|(s, m)| format!("[{},{}]^{}", s.head(), s.len(), m))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Tail-form rendering `{(l;t],...}`.
    pub fn tail_string(&self) -> String {
        let mut segs: Vec<_> = self.segments().collect();
        segs.sort_by(|a, b| b.len().cmp(&a.len()).then(a.tail().cmp(&b.tail())));
        let body = segs
            .iter()
            .map(|s| format!("({};{}]", s.len(), s.tail()))
            .collect::<Vec<_>>()
            .join(",");
        format!("{{{body}}}")
    }

    /// All multisegments of the given rank, in canonical order.
    pub fn all_of_rank(modulus: Modulus, rank: usize) -> Vec<Multisegment> {
        let segs: Vec<Segment> = (1..=rank)
            .rev()
            .flat_map(|l| {
                modulus
                    .residues()
                    .map(move |h| Segment::new(h, l).expect("positive length"))
            })
            .collect();
        let mut out = Vec::new();
        let mut current = Multisegment::empty(modulus);
        fn rec(segs: &[Segment], rem: usize, cur: &mut Multisegment, out: &mut Vec<Multisegment>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            let Some((first, rest)) = segs.split_first() else {
                return;
            };
            for m in (0..=rem / first.len()).rev() {
                cur.insert(*first, m);
                rec(rest, rem - m * first.len(), cur, out);
                for _ in 0..m {
                    cur.remove_one(first);
                }
            }
        }
        rec(&segs, rank, &mut current, &mut out);
        out.sort();
        out
    }

    pub fn all_of_dimension(dim: &DimensionVector) -> Vec<Multisegment> {
        Multisegment::all_of_rank(dim.modulus(), dim.total())
            .into_iter()
            .filter(|m| &m.dimension_vector() == dim)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<SegmentEntry> = self
            .iter()
            .map(|(s, m)| SegmentEntry {
                head: s.head().value() as i64,
                len: s.len(),
                mult: m,
            })
            .collect();
        serde_json::to_value(entries).expect("plain data serializes")
    }

    pub fn from_json(modulus: Modulus, value: &serde_json::Value) -> Result<Self> {
        let entries: Vec<SegmentEntry> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut ms = Multisegment::empty(modulus);
        for en in entries {
            let s = Segment::new(modulus.residue(en.head), en.len)?;
            ms.insert(s, en.mult);
        }
        Ok(ms)
    }

    /// Parses the textual forms accepted on the command line:
    /// `{[0;2),[3;1)}`, `{(2;2],(1;1]}`, `[0,2]^1;[3,1]^1`, `∅`/`{}`, or the JSON list form.
    pub fn parse(modulus: Modulus, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "∅" || t == "{}" || t == "empty" {
            return Ok(Multisegment::empty(modulus));
        }
        if t.starts_with("[{") || t == "[]" {
            let v: serde_json::Value =
                serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return Multisegment::from_json(modulus, &v);
        }
        let bad = || Error::Parse(format!("cannot parse multisegment `{t}`"));
        let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
        let mut ms = Multisegment::empty(modulus);
        if t.starts_with('{') {
            let inner = t
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(bad)?;
            let mut rest = inner.trim();
            while !rest.is_empty() {
                rest = rest.trim_start_matches([',', ' ']);
                if rest.is_empty() {
                    break;
                }
                let (seg, after) = if let Some(r) = rest.strip_prefix('[') {
                    let end = r.find(')').ok_or_else(bad)?;
                    let (h, l) = r[..end].split_once(';').ok_or_else(bad)?;
                    let len = usize::try_from(int(l)?).map_err(|_| bad())?;
                    (Segment::new(modulus.residue(int(h)?), len)?, &r[end + 1..])
                } else if let Some(r) = rest.strip_prefix('(') {
                    let end = r.find(']').ok_or_else(bad)?;
                    let (l, tl) = r[..end].split_once(';').ok_or_else(bad)?;
                    let len = usize::try_from(int(l)?).map_err(|_| bad())?;
                    (
                        Segment::from_tail(modulus.residue(int(tl)?), len)?,
                        &r[end + 1..],
                    )
                } else {
                    return Err(bad());
                };
                let (mult, after) = match after.strip_prefix('^') {
                    Some(a) => {
                        let end = a.find([',', '}']).unwrap_or(a.len());
                        (
                            usize::try_from(int(&a[..end])?).map_err(|_| bad())?,
                            &a[end..],
                        )
                    }
                    None => (1, after),
                };
                ms.insert(seg, mult);
                rest = after;
            }
            return Ok(ms);
        }
        for part in t.split(';') {
            let (seg, mult) = part.split_once('^').unwrap_or((part, "1"));
            let body = seg
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(bad)?;
            let (h, l) = body.split_once(',').ok_or_else(bad)?;
            let len = usize::try_from(int(l)?).map_err(|_| bad())?;
            let mult = usize::try_from(int(mult)?).map_err(|_| bad())?;
            ms.insert(Segment::new(modulus.residue(int(h)?), len)?, mult);
        }
        Ok(ms)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SegmentEntry {
    head: i64,
    len: usize,
    #[serde(default = "one")]
    mult: usize,
}

fn one() -> usize {
    1
}

/// Head-form rendering `{[h;l),...}` with `^m` for repeated segments.
impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (s, m)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e3() -> Modulus {
        Modulus::new(3).unwrap()
    }

    #[test]
    fn aperiodicity_examples() {
        let e = e3();
        assert!(Multisegment::empty(e).is_aperiodic());
        let periodic = Multisegment::from_pairs(e, &[(0, 1), (1, 1), (2, 1)]).unwrap();
        assert!(!periodic.is_aperiodic());
        let ok = Multisegment::from_pairs(e, &[(1, 2), (0, 1)]).unwrap();
        assert!(ok.is_aperiodic());
    }

    #[test]
    fn dimension_vectors() {
        let e = e3();
        assert!(Multisegment::empty(e).dimension_vector().is_zero());
        let a = Multisegment::from_pairs(e, &[(1, 2)]).unwrap();
        assert_eq!(a.dimension_vector().entries(), &[0, 1, 1]);
        let b = Multisegment::from_pairs(e, &[(0, 3)]).unwrap();
        assert_eq!(b.dimension_vector().entries(), &[1, 1, 1]);
    }

    #[test]
    fn rho_examples() {
        let e = e3();
        assert_eq!(Multisegment::empty(e).rho(), Multisegment::empty(e));
        let a = Multisegment::from_pairs(e, &[(1, 1)]).unwrap();
        let r = a.rho();
        let s = r.segments().next().unwrap();
        assert_eq!(s.tail().value(), 2);
        assert_eq!(s.head().value(), 2);
    }

    #[test]
    fn rank_counts_small() {
        let e = e3();
        // multisegments of rank 2 at e = 3: 3 of length 2, 6 pairs of singletons
        assert_eq!(Multisegment::all_of_rank(e, 2).len(), 9);
        assert_eq!(Multisegment::all_of_rank(e, 0).len(), 1);
    }

    #[test]
    fn parse_forms() {
        let e = Modulus::new(4).unwrap();
        let want = Multisegment::from_pairs(e, &[(0, 2), (3, 1), (1, 1)]).unwrap();
        assert_eq!(Multisegment::parse(e, "{[0;2),[3;1),[1;1)}").unwrap(), want);
        assert_eq!(
            Multisegment::parse(e, &want.canonical_string()).unwrap(),
            want
        );
        assert_eq!(Multisegment::parse(e, &want.to_string()).unwrap(), want);
        assert_eq!(Multisegment::parse(e, &want.tail_string()).unwrap(), want);
        let j = want.to_json().to_string();
        assert_eq!(Multisegment::parse(e, &j).unwrap(), want);
        let rep = Multisegment::parse(e, "{[1;1)^2}").unwrap();
        assert_eq!(rep.segment_count(), 2);
        assert!(Multisegment::parse(e, "{[1;0)}").is_err());
        assert!(Multisegment::parse(e, "nonsense").is_err());
    }

    #[test]
    fn json_shape() {
        let e = e3();
        let ms = Multisegment::from_pairs(e, &[(1, 2), (0, 1), (0, 1)]).unwrap();
        assert_eq!(
            ms.to_json().to_string(),
            r#"[{"head":1,"len":2,"mult":1},{"head":0,"len":1,"mult":2}]"#
        );
    }
}
