use std::fmt;

use serde::{Deserialize, Serialize};

use super::residue::{Modulus, Residue};
use crate::error::{Error, Result};

/// A partition: a weakly decreasing finite sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Length of row `row` (1-based); zero past the last row.
    pub fn row(&self, row: usize) -> usize {
        if row == 0 {
            return usize::MAX;
        }
        self.0.get(row - 1).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count())
                .collect(),
        )
    }

    /// Appends a box at the end of row `row` (1-based). Caller guarantees
    /// the result is a partition.
    pub(crate) fn add_box(&mut self, row: usize) {
        if row > self.0.len() {
            debug_assert_eq!(row, self.0.len() + 1);
            self.0.push(1);
        } else {
            self.0[row - 1] += 1;
        }
    }

    pub(crate) fn remove_box(&mut self, row: usize) {
        self.0[row - 1] -= 1;
        if self.0[row - 1] == 0 {
            self.0.pop();
        }
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A multicharge `(v_0, ..., v_{l-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multicharge(Vec<i64>);

impl Multicharge {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::Invalid(
                "multicharge must have at least one entry".into(),
            ));
        }
        Ok(Multicharge(v))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, c: usize) -> i64 {
        self.0[c]
    }

    /// Membership in `V_l`: `v_0 <= v_1 <= ... <= v_{l-1} < v_0 + e`.
    pub fn is_normalized(&self, e: Modulus) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
            && self.0[self.0.len() - 1] < self.0[0] + e.get() as i64
    }

    pub fn require_normalized(&self, e: Modulus) -> Result<()> {
        if self.is_normalized(e) {
            Ok(())
        } else {
            Err(Error::ChargeNotNormalized(self.to_string()))
        }
    }

    /// `tau (v_0, ..., v_{l-1}) = (v_1, ..., v_{l-1}, v_0 + e)`.
    pub fn tau(&self, e: Modulus) -> Multicharge {
        let mut w: Vec<i64> = self.0[1..].to_vec();
        w.push(self.0[0] + e.get() as i64);
        Multicharge(w)
    }

    /// All charges in `V_l` with `v_0 = 0`.
    pub fn all_normalized(e: Modulus, level: usize) -> Vec<Multicharge> {
        fn rec(e: i64, level: usize, cur: &mut Vec<i64>, out: &mut Vec<Multicharge>) {
            if cur.len() == level {
                out.push(Multicharge(cur.clone()));
                return;
            }
            let lo = *cur.last().unwrap_or(&0);
            for x in lo..e {
                cur.push(x);
                rec(e, level, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0];
        rec(e.get() as i64, level, &mut cur, &mut out);
        out
    }

    /// The fundamental-weight coefficients of `Lambda = sum Lambda_{v_c mod e}`.
    pub fn lambda(&self, e: Modulus) -> Vec<i64> {
        let mut out = vec![0; e.get() as usize];
        for &v in &self.0 {
            out[e.residue(v).index()] += 1;
        }
        out
    }
}

impl fmt::Display for Multicharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A node `(row, col, comp)` of a multipartition, all rows and columns 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

/// Content `col - row + v_comp` of a node.
pub fn node_content(node: Node, charge: &Multicharge) -> Result<i64> {
    if node.comp >= charge.level() {
        return Err(Error::ComponentOutOfRange {
            index: node.comp,
            len: charge.level(),
        });
    }
    if node.row == 0 || node.col == 0 {
        return Err(Error::Invalid("rows and columns are 1-based".into()));
    }
    Ok(node.col as i64 - node.row as i64 + charge.get(node.comp))
}

/// An `l`-tuple of partitions together with its multicharge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChargedMultiPartition {
    charge: Multicharge,
    components: Vec<Partition>,
}

impl ChargedMultiPartition {
    pub fn new(charge: Multicharge, components: Vec<Partition>) -> Result<Self> {
        if charge.level() != components.len() {
            return Err(Error::ChargeLength {
                parts: components.len(),
                charge: charge.level(),
            });
        }
        Ok(ChargedMultiPartition { charge, components })
    }

    pub fn empty(charge: Multicharge) -> Self {
        let l = charge.level();
        ChargedMultiPartition {
            charge,
            components: vec![Partition::empty(); l],
        }
    }

    pub fn from_parts(charge: &[i64], parts: &[&[usize]]) -> Result<Self> {
        let comps = parts
            .iter()
            .map(|p| Partition::new(p.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        ChargedMultiPartition::new(Multicharge::new(charge.to_vec())?, comps)
    }

    pub fn charge(&self) -> &Multicharge {
        &self.charge
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &Partition {
        &self.components[c]
    }

    pub(crate) fn component_mut(&mut self, c: usize) -> &mut Partition {
        &mut self.components[c]
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().all(Partition::is_empty)
    }

    pub fn with_charge(&self, charge: Multicharge) -> Result<Self> {
        ChargedMultiPartition::new(charge, self.components.clone())
    }

    pub fn content(&self, node: Node) -> Result<i64> {
        node_content(node, &self.charge)
    }

    pub fn residue(&self, node: Node, e: Modulus) -> Result<Residue> {
        Ok(e.residue(self.content(node)?))
    }

    /// Every node of the diagram, component by component, row by row.
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.components.iter().enumerate().flat_map(|(c, p)| {
            p.parts().iter().enumerate().flat_map(move |(a, &len)| {
                (1..=len).map(move |b| Node {
                    row: a + 1,
                    col: b,
                    comp: c,
                })
            })
        })
    }

    /// Componentwise transpose, keeping the charge.
    pub fn transpose(&self) -> ChargedMultiPartition {
        ChargedMultiPartition {
            charge: self.charge.clone(),
            components: self.components.iter().map(Partition::transpose).collect(),
        }
    }

    /// `(lambda^(1), ..., lambda^(l-1), lambda^(0))` with charge `tau v`.
    pub fn rotate(&self, e: Modulus) -> ChargedMultiPartition {
        let mut comps = self.components[1..].to_vec();
        comps.push(self.components[0].clone());
        ChargedMultiPartition {
            charge: self.charge.tau(e),
            components: comps,
        }
    }

    /// All multipartitions of rank `n` with the given charge.
    pub fn all_of_rank(charge: &Multicharge, n: usize) -> Vec<ChargedMultiPartition> {
        fn rec(l: usize, rem: usize, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
            if cur.len() == l - 1 {
                for p in Partition::all_of_size(rem) {
                    cur.push(p);
                    out.push(cur.clone());
                    cur.pop();
                }
                return;
            }
            for k in (0..=rem).rev() {
                for p in Partition::all_of_size(k) {
                    cur.push(p);
                    rec(l, rem - k, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(charge.level(), n, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|components| ChargedMultiPartition {
                charge: charge.clone(),
                components,
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MultiPartitionJson {
            charge: self.charge.values().to_vec(),
            parts: self.components.iter().map(|p| p.parts().to_vec()).collect(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: MultiPartitionJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let comps = raw
            .parts
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>>>()?;
        ChargedMultiPartition::new(Multicharge::new(raw.charge)?, comps)
    }

    /// Parses `((2,1),(1))`, `((2),())`, `(2,1)` for level one, or the JSON form.
    pub fn parse(text: &str, charge: &Multicharge) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with('{') {
            let v: serde_json::Value =
                serde_json::from_str(&t).map_err(|e| Error::Parse(e.to_string()))?;
            let mp = ChargedMultiPartition::from_json(&v)?;
            if mp.charge() != charge {
                return Err(Error::Invalid(format!(
                    "input charge {} differs from requested charge {}",
                    mp.charge(),
                    charge
                )));
            }
            return Ok(mp);
        }
        let bad = || Error::Parse(format!("cannot parse multipartition `{text}`"));
        let parse_part = |s: &str| -> Result<Partition> {
            let inner = s
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(bad)?;
            if inner.is_empty() || inner == "∅" {
                return Ok(Partition::empty());
            }
            let parts = inner
                .split(',')
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Partition::new(parts)
        };
        let comps = if t.starts_with("((") || t == "()" && charge.level() == 0 {
            let inner = &t[1..t.len() - 1];
            let mut comps = Vec::new();
            let mut depth = 0;
            let mut start = 0;
            for (k, ch) in inner.char_indices() {
                match ch {
                    '(' => {
                        if depth == 0 {
                            start = k;
                        }
                        depth += 1;
                    }
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            comps.push(parse_part(&inner[start..=k])?);
                        }
                    }
                    _ => {}
                }
            }
            comps
        } else {
            vec![parse_part(&t)?]
        };
        ChargedMultiPartition::new(charge.clone(), comps)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MultiPartitionJson {
    charge: Vec<i64>,
    parts: Vec<Vec<usize>>,
}

impl fmt::Display for ChargedMultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contents() {
        let v = Multicharge::new(vec![0, 1]).unwrap();
        let e4 = Modulus::new(4).unwrap();
        assert_eq!(
            node_content(
                Node {
                    row: 1,
                    col: 1,
                    comp: 0
                },
                &v
            )
            .unwrap(),
            0
        );
        let c = node_content(
            Node {
                row: 2,
                col: 1,
                comp: 0,
            },
            &v,
        )
        .unwrap();
        assert_eq!(c, -1);
        assert_eq!(e4.residue(c).value(), 3);
        assert_eq!(
            node_content(
                Node {
                    row: 1,
                    col: 1,
                    comp: 1
                },
                &v
            )
            .unwrap(),
            1
        );
        assert_eq!(
            node_content(
                Node {
                    row: 1,
                    col: 1,
                    comp: 2
                },
                &v
            ),
            Err(Error::ComponentOutOfRange { index: 2, len: 2 })
        );
    }

    #[test]
    fn partition_validation_and_transpose() {
        assert!(Partition::new(vec![1, 2]).is_err());
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.transpose().parts(), &[2, 1, 1]);
        assert_eq!(p.transpose().transpose(), p);
        assert_eq!(Partition::all_of_size(5).len(), 7);
    }

    #[test]
    fn charges_in_vl() {
        let e = Modulus::new(3).unwrap();
        assert!(Multicharge::new(vec![1, 2]).unwrap().is_normalized(e));
        assert!(!Multicharge::new(vec![0, 3]).unwrap().is_normalized(e));
        assert!(!Multicharge::new(vec![2, 1]).unwrap().is_normalized(e));
        assert_eq!(Multicharge::all_normalized(e, 2).len(), 3);
        assert_eq!(Multicharge::all_normalized(e, 3).len(), 6);
    }

    #[test]
    fn multipartition_enumeration() {
        let v = Multicharge::new(vec![0, 0]).unwrap();
        // bipartitions of 3
        assert_eq!(ChargedMultiPartition::all_of_rank(&v, 3).len(), 10);
    }

    #[test]
    fn parse_and_json() {
        let v = Multicharge::new(vec![0, 1]).unwrap();
        let mp = ChargedMultiPartition::parse("((2,1),(1))", &v).unwrap();
        assert_eq!(mp.to_string(), "((2,1),(1))");
        assert_eq!(
            mp.to_json().to_string(),
            r#"{"charge":[0,1],"parts":[[2,1],[1]]}"#
        );
        assert_eq!(ChargedMultiPartition::from_json(&mp.to_json()).unwrap(), mp);
        let e = ChargedMultiPartition::parse("((2),())", &v).unwrap();
        assert_eq!(e.component(1), &Partition::empty());
        let l1 = Multicharge::new(vec![1]).unwrap();
        assert_eq!(
            ChargedMultiPartition::parse("(1,1)", &l1).unwrap().rank(),
            2
        );
        assert!(ChargedMultiPartition::parse("((1),(1),(1))", &v).is_err());
    }
}
