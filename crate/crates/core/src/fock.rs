//! Crystals on charged multipartitions: the Fock-space crystal `B^v`, its
//! Uglov component, the FLOTW description of that component for charges in
//! `V_l`, and the Kleshchev crystal.

use std::collections::BTreeSet;

use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::types::{ChargedMultiPartition, Modulus, Multicharge, Node, Residue, WeightExpr};

/// Largest rank accepted by the enumeration helpers.
pub const MAX_ENUM_RANK: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Addable,
    Removable,
}

/// An addable or removable node together with its content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct INode {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
    pub kind: NodeKind,
    pub content: i64,
}

impl INode {
    pub fn node(&self) -> Node {
        Node {
            row: self.row,
            col: self.col,
            comp: self.comp,
        }
    }

    pub fn residue(&self, e: Modulus) -> Residue {
        e.residue(self.content)
    }

    /// `true` when `self` precedes `other` in `≺_v`: smaller content first,
    /// and for equal content the larger component index first.
    pub fn precedes(&self, other: &INode) -> bool {
        self.content < other.content || (self.content == other.content && self.comp > other.comp)
    }
}

/// Every addable and removable node, all residues, unordered.
fn boundary_nodes(lam: &ChargedMultiPartition) -> Vec<INode> {
    let mut out = Vec::new();
    for (c, p) in lam.components().iter().enumerate() {
        let v = lam.charge().get(c);
        let rows = p.num_rows();
        for a in 1..=rows + 1 {
            let len = p.row(a);
            if len < p.row(a - 1) {
                out.push(INode {
                    row: a,
                    col: len + 1,
                    comp: c,
                    kind: NodeKind::Addable,
                    content: (len + 1) as i64 - a as i64 + v,
                });
            }
            if a <= rows && len > p.row(a + 1) {
                out.push(INode {
                    row: a,
                    col: len,
                    comp: c,
                    kind: NodeKind::Removable,
                    content: len as i64 - a as i64 + v,
                });
            }
        }
    }
    out
}

/// Addable and removable `i`-nodes in increasing `≺_v` order.
pub fn i_nodes_sorted(lam: &ChargedMultiPartition, i: Residue) -> Vec<INode> {
    let e = i.modulus();
    let mut nodes: Vec<INode> = boundary_nodes(lam)
        .into_iter()
        .filter(|n| n.residue(e) == i)
        .collect();
    nodes.sort_by(|x, y| x.content.cmp(&y.content).then(y.comp.cmp(&x.comp)));
    nodes
}

/// The `i`-signature after RA deletion: surviving addable and removable
/// nodes in `≺_v` order (all survivors of kind `A` precede those of kind `R`).
pub fn reduced_signature(lam: &ChargedMultiPartition, i: Residue) -> Vec<INode> {
    let mut stack: Vec<INode> = Vec::new();
    for n in i_nodes_sorted(lam, i) {
        if n.kind == NodeKind::Addable
            && stack.last().is_some_and(|t| t.kind == NodeKind::Removable)
        {
            stack.pop();
        } else {
            stack.push(n);
        }
    }
    stack
}

/// The good removable `i`-node: the leftmost surviving removable node.
pub fn good_node(lam: &ChargedMultiPartition, i: Residue) -> Option<INode> {
    reduced_signature(lam, i)
        .into_iter()
        .find(|n| n.kind == NodeKind::Removable)
}

/// The good addable `i`-node: the rightmost surviving addable node.
pub fn good_addable_node(lam: &ChargedMultiPartition, i: Residue) -> Option<INode> {
    reduced_signature(lam, i)
        .into_iter()
        .rev()
        .find(|n| n.kind == NodeKind::Addable)
}

pub fn e_tilde(lam: &ChargedMultiPartition, i: Residue) -> Option<ChargedMultiPartition> {
    let g = good_node(lam, i)?;
    let mut out = lam.clone();
    out.component_mut(g.comp).remove_box(g.row);
    Some(out)
}

pub fn f_tilde(lam: &ChargedMultiPartition, i: Residue) -> Option<ChargedMultiPartition> {
    let g = good_addable_node(lam, i)?;
    let mut out = lam.clone();
    out.component_mut(g.comp).add_box(g.row);
    Some(out)
}

/// Number of surviving removable `i`-nodes.
pub fn epsilon(lam: &ChargedMultiPartition, i: Residue) -> usize {
    reduced_signature(lam, i)
        .iter()
        .filter(|n| n.kind == NodeKind::Removable)
        .count()
}

/// Number of surviving addable `i`-nodes.
pub fn phi(lam: &ChargedMultiPartition, i: Residue) -> usize {
    reduced_signature(lam, i)
        .iter()
        .filter(|n| n.kind == NodeKind::Addable)
        .count()
}

/// `wt(lam) = Lambda - sum_i N_i(lam) alpha_i`.
pub fn weight(lam: &ChargedMultiPartition, e: Modulus) -> WeightExpr {
    let mut simple = vec![0i64; e.get() as usize];
    for n in lam.nodes() {
        let c = lam.content(n).expect("node lies in the diagram");
        simple[e.residue(c).index()] -= 1;
    }
    WeightExpr::new(e, lam.charge().lambda(e), simple)
}

/// FLOTW test; the charge must lie in `V_l`.
pub fn is_flotw(lam: &ChargedMultiPartition, e: Modulus) -> Result<bool> {
    let v = lam.charge();
    v.require_normalized(e)?;
    let l = lam.level();
    let ee = e.get() as i64;
    let part = |c: usize, j: i64| -> usize {
        if j < 1 {
            usize::MAX
        } else {
            lam.component(c).row(j as usize)
        }
    };
    let longest = lam
        .components()
        .iter()
        .map(|p| p.num_rows())
        .max()
        .unwrap_or(0) as i64;
    for j in 1..=longest {
        for c in 0..l - 1 {
            if part(c, j) < part(c + 1, j + v.get(c + 1) - v.get(c)) {
                return Ok(false);
            }
        }
        if part(l - 1, j) < part(0, j + ee + v.get(0) - v.get(l - 1)) {
            return Ok(false);
        }
    }
    let mut by_len: std::collections::BTreeMap<usize, BTreeSet<Residue>> = Default::default();
    for (c, p) in lam.components().iter().enumerate() {
        for (j, &len) in p.parts().iter().enumerate() {
            by_len
                .entry(len)
                .or_default()
                .insert(e.residue(len as i64 - (j as i64 + 1) + v.get(c)));
        }
    }
    Ok(by_len.values().all(|s| s.len() < e.get() as usize))
}

/// Peels `lam` with `e~_i`, always the smallest `i` with `epsilon_i > 0`.
/// Returns the terminal highest-weight vertex.
pub fn peel_to_highest_weight(lam: &ChargedMultiPartition, e: Modulus) -> ChargedMultiPartition {
    let mut cur = lam.clone();
    'outer: loop {
        for i in e.residues() {
            if let Some(y) = e_tilde(&cur, i) {
                cur = y;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Membership in the connected component of the empty multipartition.
pub fn is_uglov(lam: &ChargedMultiPartition, e: Modulus) -> bool {
    peel_to_highest_weight(lam, e).is_empty()
}

/// Charge `w` with `w_j ≡ v_j (mod e)` and `w_{j+1} - w_j >= gap`, each
/// difference taken as small as the congruence allows.
pub fn gap_charge(v: &Multicharge, e: Modulus, gap: usize) -> Multicharge {
    let ee = e.get() as i64;
    let vs = v.values();
    let mut w = vec![vs[0]];
    for j in 1..vs.len() {
        let target = (vs[j] - vs[j - 1]).rem_euclid(ee);
        let g = gap as i64;
        let d = g + (target - g).rem_euclid(ee);
        w.push(w[j - 1] + d);
    }
    Multicharge::new(w).expect("nonempty")
}

/// Default gap for a rank-`n` query.
pub fn default_gap(n: usize, e: Modulus) -> usize {
    n + e.get() as usize
}

/// The charge `-w` carrying the transposed multipartitions.
fn transposed_charge(v: &Multicharge, e: Modulus, gap: usize) -> Multicharge {
    Multicharge::new(gap_charge(v, e, gap).values().iter().map(|x| -x).collect()).expect("nonempty")
}

/// Kleshchev test with an explicit gap.
pub fn is_kleshchev_with_gap(lam: &ChargedMultiPartition, e: Modulus, gap: usize) -> bool {
    let u = transposed_charge(lam.charge(), e, gap);
    let t = lam.transpose().with_charge(u).expect("same level");
    is_uglov(&t, e)
}

/// Kleshchev multipartitions, via transposition into a Fock crystal whose
/// charge entries are far apart.
pub fn is_kleshchev(lam: &ChargedMultiPartition, e: Modulus) -> bool {
    is_kleshchev_with_gap(lam, e, default_gap(lam.rank(), e))
}

fn kleshchev_op(
    lam: &ChargedMultiPartition,
    i: Residue,
    gap: usize,
    op: fn(&ChargedMultiPartition, Residue) -> Option<ChargedMultiPartition>,
) -> Option<ChargedMultiPartition> {
    let e = i.modulus();
    let u = transposed_charge(lam.charge(), e, gap);
    let t = lam.transpose().with_charge(u).expect("same level");
    let r = op(&t, -i)?;
    Some(
        r.transpose()
            .with_charge(lam.charge().clone())
            .expect("same level"),
    )
}

/// `e~_i` on Kleshchev multipartitions.
pub fn kleshchev_e_tilde(lam: &ChargedMultiPartition, i: Residue) -> Option<ChargedMultiPartition> {
    kleshchev_op(lam, i, default_gap(lam.rank(), i.modulus()), e_tilde)
}

/// `f~_i` on Kleshchev multipartitions.
pub fn kleshchev_f_tilde(lam: &ChargedMultiPartition, i: Residue) -> Option<ChargedMultiPartition> {
    kleshchev_op(lam, i, default_gap(lam.rank() + 1, i.modulus()), f_tilde)
}

pub fn kleshchev_e_tilde_with_gap(
    lam: &ChargedMultiPartition,
    i: Residue,
    gap: usize,
) -> Option<ChargedMultiPartition> {
    kleshchev_op(lam, i, gap, e_tilde)
}

pub fn kleshchev_f_tilde_with_gap(
    lam: &ChargedMultiPartition,
    i: Residue,
    gap: usize,
) -> Option<ChargedMultiPartition> {
    kleshchev_op(lam, i, gap, f_tilde)
}

/// The Fock-space crystal `B^v` restricted to the component of the empty
/// multipartition.
#[derive(Debug, Clone)]
pub struct FockCrystal {
    pub modulus: Modulus,
    pub charge: Multicharge,
}

impl FockCrystal {
    pub fn new(modulus: Modulus, charge: Multicharge) -> Self {
        FockCrystal { modulus, charge }
    }

    fn check(&self, x: &ChargedMultiPartition) -> Result<()> {
        if x.charge() != &self.charge {
            return Err(Error::Invalid(format!(
                "charge {} differs from crystal charge {}",
                x.charge(),
                self.charge
            )));
        }
        Ok(())
    }
}

impl Crystal for FockCrystal {
    type Vertex = ChargedMultiPartition;

    fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn highest_weight_vertex(&self) -> ChargedMultiPartition {
        ChargedMultiPartition::empty(self.charge.clone())
    }

    fn e_tilde(
        &self,
        x: &ChargedMultiPartition,
        i: Residue,
    ) -> Result<Option<ChargedMultiPartition>> {
        self.check(x)?;
        Ok(e_tilde(x, i))
    }

    fn f_tilde(
        &self,
        x: &ChargedMultiPartition,
        i: Residue,
    ) -> Result<Option<ChargedMultiPartition>> {
        self.check(x)?;
        Ok(f_tilde(x, i))
    }

    fn vertex_name(&self, x: &ChargedMultiPartition) -> String {
        x.to_string()
    }

    fn epsilon(&self, x: &ChargedMultiPartition, i: Residue) -> Result<usize> {
        self.check(x)?;
        Ok(epsilon(x, i))
    }
}

/// The crystal on Kleshchev multipartitions of charge `v`.
#[derive(Debug, Clone)]
pub struct KleshchevCrystal {
    pub modulus: Modulus,
    pub charge: Multicharge,
}

impl KleshchevCrystal {
    pub fn new(modulus: Modulus, charge: Multicharge) -> Self {
        KleshchevCrystal { modulus, charge }
    }
}

impl Crystal for KleshchevCrystal {
    type Vertex = ChargedMultiPartition;

    fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn highest_weight_vertex(&self) -> ChargedMultiPartition {
        ChargedMultiPartition::empty(self.charge.clone())
    }

    fn e_tilde(
        &self,
        x: &ChargedMultiPartition,
        i: Residue,
    ) -> Result<Option<ChargedMultiPartition>> {
        Ok(kleshchev_e_tilde(x, i))
    }

    fn f_tilde(
        &self,
        x: &ChargedMultiPartition,
        i: Residue,
    ) -> Result<Option<ChargedMultiPartition>> {
        Ok(kleshchev_f_tilde(x, i))
    }

    fn vertex_name(&self, x: &ChargedMultiPartition) -> String {
        x.to_string()
    }
}

/// `Phi(v)_n` together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlotwSet {
    pub charge: Multicharge,
    pub rank: usize,
    pub members: BTreeSet<ChargedMultiPartition>,
}

fn check_bound(n: usize) -> Result<()> {
    if n > MAX_ENUM_RANK {
        return Err(Error::BoundExceeded {
            what: "rank",
            got: n,
            limit: MAX_ENUM_RANK,
        });
    }
    Ok(())
}

pub fn enumerate_flotw(e: Modulus, charge: &Multicharge, n: usize) -> Result<FlotwSet> {
    check_bound(n)?;
    charge.require_normalized(e)?;
    let mut members = BTreeSet::new();
    for lam in ChargedMultiPartition::all_of_rank(charge, n) {
        if is_flotw(&lam, e)? {
            members.insert(lam);
        }
    }
    Ok(FlotwSet {
        charge: charge.clone(),
        rank: n,
        members,
    })
}

pub fn enumerate_kleshchev(
    e: Modulus,
    charge: &Multicharge,
    n: usize,
) -> Result<BTreeSet<ChargedMultiPartition>> {
    check_bound(n)?;
    Ok(ChargedMultiPartition::all_of_rank(charge, n)
        .into_iter()
        .filter(|lam| is_kleshchev(lam, e))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::bfs_layers;

    fn m(n: i64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn mp(charge: &[i64], parts: &[&[usize]]) -> ChargedMultiPartition {
        ChargedMultiPartition::from_parts(charge, parts).unwrap()
    }

    fn word(lam: ChargedMultiPartition, e: Modulus, w: &[i64]) -> Option<ChargedMultiPartition> {
        w.iter().try_fold(lam, |x, &i| f_tilde(&x, e.residue(i)))
    }

    #[test]
    fn sorted_nodes_examples() {
        let e = m(4);
        let lam = mp(&[0, 1], &[&[2, 1], &[1]]);
        let key = |n: &INode| (n.row, n.col, n.comp, n.kind, n.content);
        let ns = i_nodes_sorted(&lam, e.residue(3));
        assert_eq!(
            ns.iter().map(key).collect::<Vec<_>>(),
            vec![(2, 1, 0, NodeKind::Removable, -1)]
        );
        // content -2 has residue 2, so the addable node below row 2 is a 2-node
        let ns = i_nodes_sorted(&lam, e.residue(2));
        assert_eq!(
            ns.iter().map(key).collect::<Vec<_>>(),
            vec![
                (3, 1, 0, NodeKind::Addable, -2),
                (1, 2, 1, NodeKind::Addable, 2),
                (1, 3, 0, NodeKind::Addable, 2)
            ]
        );
        assert!(ns.windows(2).all(|w| w[0].precedes(&w[1])));

        let e3 = m(3);
        let empty = mp(&[1, 1, 2], &[&[], &[], &[]]);
        let ns = i_nodes_sorted(&empty, e3.residue(1));
        assert_eq!(ns.iter().map(|n| n.comp).collect::<Vec<_>>(), vec![1, 0]);
        assert!(ns
            .iter()
            .all(|n| n.kind == NodeKind::Addable && n.row == 1 && n.col == 1));
    }

    #[test]
    fn operator_examples() {
        let e = m(3);
        let empty2 = mp(&[1, 2], &[&[], &[]]);
        for i in e.residues() {
            assert_eq!(e_tilde(&empty2, i), None);
        }
        assert_eq!(
            word(empty2.clone(), e, &[1, 2]),
            Some(mp(&[1, 2], &[&[2], &[]]))
        );
        assert_eq!(word(empty2, e, &[2, 1]), Some(mp(&[1, 2], &[&[1], &[1]])));
        assert_eq!(
            weight(&mp(&[1, 2], &[&[2], &[]]), e).to_string(),
            "Λ1+Λ2-α1-α2"
        );
        assert_eq!(weight(&mp(&[1, 2], &[&[], &[]]), e).to_string(), "Λ1+Λ2");
    }

    #[test]
    fn kleshchev_examples() {
        let e = m(3);
        let k = |v: &[i64], w: &[i64]| {
            w.iter().try_fold(
                ChargedMultiPartition::empty(Multicharge::new(v.to_vec()).unwrap()),
                |x, &i| kleshchev_f_tilde(&x, e.residue(i)),
            )
        };
        assert_eq!(k(&[1], &[1, 2]), Some(mp(&[1], &[&[2]])));
        assert_eq!(k(&[2], &[2, 1]), Some(mp(&[2], &[&[1, 1]])));
        assert!(is_kleshchev(&mp(&[1], &[&[2]]), e));
        assert!(is_kleshchev(&mp(&[1], &[&[1, 1]]), e));
        let e2 = m(2);
        assert!(!is_kleshchev(&mp(&[0], &[&[3]]), e2));
        assert!(is_kleshchev(&mp(&[0], &[&[2, 1]]), e2));
        assert!(is_kleshchev(&mp(&[0, 1], &[&[], &[]]), e2));
    }

    #[test]
    fn uglov_examples() {
        let e2 = m(2);
        assert!(is_uglov(&mp(&[0], &[&[2]]), e2));
        assert!(is_uglov(&mp(&[0, 0], &[&[], &[]]), e2));
        assert!(!is_uglov(&mp(&[0], &[&[2, 2]]), e2));
    }

    #[test]
    fn flotw_examples() {
        let e4 = m(4);
        assert!(is_flotw(&mp(&[0, 1], &[&[2, 1], &[1]]), e4).unwrap());
        assert!(is_flotw(&mp(&[0, 1], &[&[], &[]]), e4).unwrap());
        assert!(matches!(
            is_flotw(&mp(&[0, 4], &[&[], &[]]), e4),
            Err(Error::ChargeNotNormalized(_))
        ));
        // both rows of (2,2) have length 2 and their right ends cover Z/2Z
        assert!(!is_flotw(&mp(&[0], &[&[2, 2]]), m(2)).unwrap());
        let set = enumerate_flotw(e4, &Multicharge::new(vec![0, 1]).unwrap(), 4).unwrap();
        assert!(set.members.contains(&mp(&[0, 1], &[&[2, 1], &[1]])));
        assert_eq!(
            enumerate_flotw(e4, &Multicharge::new(vec![0, 1]).unwrap(), 0)
                .unwrap()
                .members
                .len(),
            1
        );
    }

    #[test]
    fn flotw_and_kleshchev_counts_agree() {
        let e = m(3);
        let v = Multicharge::new(vec![1, 2]).unwrap();
        for n in 0..=5 {
            let f = enumerate_flotw(e, &v, n).unwrap().members.len();
            let k = enumerate_kleshchev(e, &v, n).unwrap().len();
            let layers = bfs_layers(&FockCrystal::new(e, v.clone()), n).unwrap();
            assert_eq!(f, k);
            assert_eq!(f, layers[n].len());
        }
        assert!(matches!(
            enumerate_flotw(e, &v, MAX_ENUM_RANK + 1),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn kleshchev_gap_stability() {
        for n in [2i64, 3, 4] {
            let e = m(n);
            for l in 1..=3 {
                for v in Multicharge::all_normalized(e, l) {
                    for r in 0..=4 {
                        for lam in ChargedMultiPartition::all_of_rank(&v, r) {
                            let g = default_gap(r, e);
                            assert_eq!(
                                is_kleshchev_with_gap(&lam, e, g),
                                is_kleshchev_with_gap(&lam, e, 2 * g)
                            );
                            for i in e.residues() {
                                let gf = default_gap(r + 1, e);
                                assert_eq!(
                                    kleshchev_f_tilde_with_gap(&lam, i, gf),
                                    kleshchev_f_tilde_with_gap(&lam, i, 2 * gf)
                                );
                                assert_eq!(
                                    kleshchev_e_tilde_with_gap(&lam, i, g),
                                    kleshchev_e_tilde_with_gap(&lam, i, 2 * g)
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kleshchev_components_are_restricted() {
        // every component of a Kleshchev multipartition is e-restricted
        let e = m(3);
        let v = Multicharge::new(vec![0, 1]).unwrap();
        for lam in enumerate_kleshchev(e, &v, 6).unwrap() {
            for p in lam.components() {
                let parts = p.parts();
                for j in 0..parts.len() {
                    let next = parts.get(j + 1).copied().unwrap_or(0);
                    assert!(parts[j] - next < 3, "{lam}");
                }
            }
        }
    }
}
