//! The crystal `B(inf)` on aperiodic multisegments.
//!
//! Two realisations are provided. In the head convention the operators move
//! segments by their first residue; in the tail convention by their last
//! residue. The relabelling `rho` intertwines `f~_i` (head) with `f~_{-i}` (tail).

use std::fmt;
use std::str::FromStr;

use crate::crystal::{self, Crystal};
use crate::error::{Error, Result};
use crate::graph::CrystalGraph;
use crate::types::{Modulus, Multisegment, Residue, Segment, WeightExpr};

/// Largest rank accepted by [`crystal_graph_binf`].
pub const MAX_BINF_RANK: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    Head,
    Tail,
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "head" => Ok(Convention::Head),
            "tail" => Ok(Convention::Tail),
            _ => Err(Error::Parse(format!(
                "unknown convention `{s}` (expected head or tail)"
            ))),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Head => "head",
            Convention::Tail => "tail",
        })
    }
}

fn seg(r: Residue, len: usize, conv: Convention) -> Segment {
    match conv {
        Convention::Head => Segment::new(r, len),
        Convention::Tail => Segment::from_tail(r, len),
    }
    .expect("positive length")
}

/// Multiplicity of the segment of length `len` anchored at `r`.
fn anchored(psi: &Multisegment, r: Residue, len: usize, conv: Convention) -> i64 {
    (match conv {
        Convention::Head => psi.mult_head(r, len),
        Convention::Tail => psi.mult_tail(r, len),
    }) as i64
}

/// The neighbour anchor: `i+1` for heads, `i-1` for tails.
fn partner(i: Residue, conv: Convention) -> Residue {
    match conv {
        Convention::Head => i.succ(),
        Convention::Tail => i.pred(),
    }
}

/// `(l, S_{l,i})` for `l = 1, ..., maxlen + 1`; `S` vanishes beyond.
pub fn s_profile(psi: &Multisegment, i: Residue, conv: Convention) -> Vec<(usize, i64)> {
    let top = psi.max_len() + 1;
    let j = partner(i, conv);
    let mut out = vec![(0, 0); top];
    let mut acc = 0;
    for l in (1..=top).rev() {
        acc += anchored(psi, j, l, conv) - anchored(psi, i, l, conv);
        out[l - 1] = (l, acc);
    }
    out
}

fn check(psi: &Multisegment, i: Residue) -> Result<()> {
    psi.modulus().check_same(i.modulus())?;
    psi.require_aperiodic()
}

/// Kashiwara lowering operator `f~_i`.
pub fn f_tilde(psi: &Multisegment, i: Residue, conv: Convention) -> Result<Multisegment> {
    check(psi, i)?;
    let prof = s_profile(psi, i, conv);
    let min = prof
        .iter()
        .map(|&(_, s)| s)
        .min()
        .expect("nonempty profile");
    let l0 = prof
        .iter()
        .find(|&&(_, s)| s == min)
        .expect("minimum attained")
        .0;
    let mut out = psi.clone();
    if l0 > 1 {
        let removed = out.remove_one(&seg(partner(i, conv), l0 - 1, conv));
        debug_assert!(removed);
    }
    out.insert(seg(i, l0, conv), 1);
    Ok(out)
}

/// Kashiwara raising operator `e~_i`; `None` stands for zero.
pub fn e_tilde(psi: &Multisegment, i: Residue, conv: Convention) -> Result<Option<Multisegment>> {
    check(psi, i)?;
    let prof = s_profile(psi, i, conv);
    let min = prof
        .iter()
        .map(|&(_, s)| s)
        .min()
        .expect("nonempty profile");
    if min == 0 {
        return Ok(None);
    }
    let l0 = prof
        .iter()
        .rev()
        .find(|&&(_, s)| s == min)
        .expect("minimum attained")
        .0;
    let mut out = psi.clone();
    let removed = out.remove_one(&seg(i, l0, conv));
    debug_assert!(removed);
    if l0 > 1 {
        out.insert(seg(partner(i, conv), l0 - 1, conv), 1);
    }
    Ok(Some(out))
}

/// `max { k : e~_i^k psi != 0 }`.
pub fn epsilon(psi: &Multisegment, i: Residue, conv: Convention) -> Result<usize> {
    let mut k = 0;
    let mut cur = psi.clone();
    while let Some(next) = e_tilde(&cur, i, conv)? {
        cur = next;
        k += 1;
    }
    Ok(k)
}

/// `wt(psi) = - sum d_i alpha_i`.
pub fn wt(psi: &Multisegment) -> WeightExpr {
    let e = psi.modulus();
    let d = psi.dimension_vector();
    WeightExpr::new(
        e,
        vec![0; e.get() as usize],
        d.entries().iter().map(|&x| -(x as i64)).collect(),
    )
}

/// `phi_i = epsilon_i + <alpha_i^vee, wt>`.
pub fn phi(psi: &Multisegment, i: Residue, conv: Convention) -> Result<i64> {
    Ok(epsilon(psi, i, conv)? as i64 + wt(psi).pair(i))
}

/// `B(inf)` as a [`Crystal`] with highest-weight vertex the empty multisegment.
#[derive(Debug, Clone, Copy)]
pub struct BinfCrystal {
    pub modulus: Modulus,
    pub convention: Convention,
}

impl BinfCrystal {
    pub fn new(modulus: Modulus, convention: Convention) -> Self {
        BinfCrystal {
            modulus,
            convention,
        }
    }
}

impl Crystal for BinfCrystal {
    type Vertex = Multisegment;

    fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn highest_weight_vertex(&self) -> Multisegment {
        Multisegment::empty(self.modulus)
    }

    fn e_tilde(&self, x: &Multisegment, i: Residue) -> Result<Option<Multisegment>> {
        e_tilde(x, i, self.convention)
    }

    fn f_tilde(&self, x: &Multisegment, i: Residue) -> Result<Option<Multisegment>> {
        f_tilde(x, i, self.convention).map(Some)
    }

    fn vertex_name(&self, x: &Multisegment) -> String {
        x.canonical_string()
    }
}

/// Breadth-first exploration of `B(inf)` from the empty multisegment.
pub fn crystal_graph_binf(e: Modulus, conv: Convention, max_rank: usize) -> Result<CrystalGraph> {
    if max_rank > MAX_BINF_RANK {
        return Err(Error::BoundExceeded {
            what: "rank",
            got: max_rank,
            limit: MAX_BINF_RANK,
        });
    }
    crystal::build_graph(&BinfCrystal::new(e, conv), max_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::bfs_layers;
    use proptest::prelude::*;

    fn e(n: i64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn ms(m: Modulus, pairs: &[(i64, usize)]) -> Multisegment {
        Multisegment::from_pairs(m, pairs).unwrap()
    }

    /// Recount of `S_{l,i}` straight from the segment list.
    fn s_oracle(psi: &Multisegment, i: Residue, l: usize, conv: Convention) -> i64 {
        let mut s = 0;
        for x in psi.segments() {
            if x.len() < l {
                continue;
            }
            let anchor = if conv == Convention::Head {
                x.head()
            } else {
                x.tail()
            };
            let nb = if conv == Convention::Head {
                i.succ()
            } else {
                i.pred()
            };
            if anchor == nb {
                s += 1;
            }
            if anchor == i {
                s -= 1;
            }
        }
        s
    }

    #[test]
    fn profile_examples() {
        let m = e(3);
        assert!(
            s_profile(&Multisegment::empty(m), m.residue(0), Convention::Head)
                .iter()
                .all(|&(_, s)| s == 0)
        );
        let p = s_profile(&ms(m, &[(2, 1)]), m.residue(1), Convention::Head);
        assert_eq!(p, vec![(1, 1), (2, 0)]);
        assert_eq!(
            s_oracle(&ms(m, &[(2, 1)]), m.residue(1), 1, Convention::Head),
            1
        );
        let p = s_profile(&ms(m, &[(1, 1)]), m.residue(2), Convention::Head);
        assert!(p.iter().all(|&(_, s)| s == 0));
    }

    #[test]
    fn operator_examples() {
        let m = e(3);
        let h = Convention::Head;
        assert_eq!(
            f_tilde(&Multisegment::empty(m), m.residue(1), h).unwrap(),
            ms(m, &[(1, 1)])
        );
        assert_eq!(
            f_tilde(&ms(m, &[(1, 1)]), m.residue(2), h).unwrap(),
            ms(m, &[(1, 1), (2, 1)])
        );
        assert_eq!(
            f_tilde(&ms(m, &[(2, 1)]), m.residue(1), h).unwrap(),
            ms(m, &[(1, 2)])
        );
        for i in m.residues() {
            assert_eq!(e_tilde(&Multisegment::empty(m), i, h).unwrap(), None);
        }
        assert_eq!(
            e_tilde(&ms(m, &[(1, 1), (2, 1)]), m.residue(2), h).unwrap(),
            Some(ms(m, &[(1, 1)]))
        );
        assert_eq!(
            e_tilde(&ms(m, &[(1, 2)]), m.residue(1), h).unwrap(),
            Some(ms(m, &[(2, 1)]))
        );
        assert_eq!(
            epsilon(&ms(m, &[(1, 1), (2, 1)]), m.residue(2), h).unwrap(),
            1
        );
        assert_eq!(
            epsilon(&Multisegment::empty(m), m.residue(0), h).unwrap(),
            0
        );
        assert_eq!(phi(&Multisegment::empty(m), m.residue(0), h).unwrap(), 0);
        assert_eq!(wt(&ms(m, &[(0, 3)])).to_string(), "-α0-α1-α2");
    }

    #[test]
    fn rejects_periodic_input() {
        let m = e(3);
        let p = ms(m, &[(0, 1), (1, 1), (2, 1)]);
        assert!(matches!(
            f_tilde(&p, m.residue(0), Convention::Head),
            Err(Error::NotAperiodic(_))
        ));
        assert!(matches!(
            e_tilde(&p, m.residue(0), Convention::Tail),
            Err(Error::NotAperiodic(_))
        ));
    }

    #[test]
    fn rank_two_layer_at_e3() {
        let g = crystal_graph_binf(e(3), Convention::Head, 2).unwrap();
        assert_eq!(g.layer_sizes(), vec![1, 3, 9]);
        let mut expected: Vec<String> = Multisegment::all_of_rank(e(3), 2)
            .iter()
            .map(|x| x.canonical_string())
            .collect();
        expected.sort();
        let mut got = g.layers[2].clone();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(
            crystal_graph_binf(e(3), Convention::Head, 0)
                .unwrap()
                .vertex_count(),
            1
        );
        assert!(matches!(
            crystal_graph_binf(e(3), Convention::Head, MAX_BINF_RANK + 1),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn bfs_reaches_every_aperiodic_multisegment() {
        for n in [2, 3, 4] {
            let m = e(n);
            let max = if n == 2 { 6 } else { 5 };
            for conv in [Convention::Head, Convention::Tail] {
                let layers = bfs_layers(&BinfCrystal::new(m, conv), max).unwrap();
                for (r, layer) in layers.iter().enumerate() {
                    let expected: Vec<_> = Multisegment::all_of_rank(m, r)
                        .into_iter()
                        .filter(Multisegment::is_aperiodic)
                        .collect();
                    assert_eq!(layer, &expected, "e={n} rank={r} {conv}");
                }
            }
        }
    }

    #[test]
    fn epsilon_is_minus_min_profile() {
        for n in [2, 3, 4] {
            let m = e(n);
            for r in 0..=5 {
                for psi in Multisegment::all_of_rank(m, r)
                    .into_iter()
                    .filter(Multisegment::is_aperiodic)
                {
                    for conv in [Convention::Head, Convention::Tail] {
                        for i in m.residues() {
                            let prof = s_profile(&psi, i, conv);
                            for &(l, s) in &prof {
                                assert_eq!(s, s_oracle(&psi, i, l, conv));
                            }
                            let min = prof.iter().map(|p| p.1).min().unwrap();
                            assert_eq!(epsilon(&psi, i, conv).unwrap() as i64, -min);
                        }
                    }
                }
            }
        }
    }

    fn aperiodic(max_rank: usize) -> impl Strategy<Value = Multisegment> {
        (
            2i64..=4,
            prop::collection::vec((0i64..4, 1usize..4), 0..max_rank),
        )
            .prop_filter_map("aperiodic", move |(n, pairs)| {
                let m = Modulus::new(n).unwrap();
                let p = Multisegment::from_pairs(m, &pairs).ok()?;
                (p.is_aperiodic() && p.rank() <= 8).then_some(p)
            })
    }

    proptest! {
        #[test]
        fn rho_bridges_conventions(psi in aperiodic(5), k in 0i64..4) {
            let i = psi.modulus().residue(k);
            let lhs = f_tilde(&psi, i, Convention::Head).unwrap().rho();
            let rhs = f_tilde(&psi.rho(), -i, Convention::Tail).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = e_tilde(&psi, i, Convention::Head).unwrap().map(|x| x.rho());
            let rhs = e_tilde(&psi.rho(), -i, Convention::Tail).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn weight_and_epsilon_shift(psi in aperiodic(5), k in 0i64..4) {
            let i = psi.modulus().residue(k);
            for conv in [Convention::Head, Convention::Tail] {
                let f = f_tilde(&psi, i, conv).unwrap();
                prop_assert!(f.is_aperiodic());
                prop_assert_eq!(f.rank(), psi.rank() + 1);
                prop_assert_eq!(wt(&f), wt(&psi).minus_simple(i));
                prop_assert_eq!(epsilon(&f, i, conv).unwrap(), epsilon(&psi, i, conv).unwrap() + 1);
                prop_assert_eq!(phi(&f, i, conv).unwrap(), phi(&psi, i, conv).unwrap() - 1);
                prop_assert_eq!(e_tilde(&f, i, conv).unwrap(), Some(psi.clone()));
            }
        }
    }
}
