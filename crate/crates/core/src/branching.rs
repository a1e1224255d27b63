//! Crystal-level predictions of the modular branching rule, and the
//! correspondence between Kleshchev, FLOTW and multisegment labels of simple
//! modules.

use std::fmt;

use crate::embeddings::{b_ap_membership, f_v, gamma, gamma_inverse};
use crate::error::{Error, Result};
use crate::fock::{self, enumerate_flotw};
use crate::multiseg_crystal::{self, Convention};
use crate::types::{ChargedMultiPartition, Modulus, Multicharge, Multisegment, Residue};

/// Predicted socle of the `i`-restriction of the simple module labelled by
/// `psi`: the label `e~_i psi`, or `None` when the socle is zero.
pub fn socle_of_i_restriction(
    psi: &Multisegment,
    i: Residue,
    conv: Convention,
) -> Result<Option<Multisegment>> {
    multiseg_crystal::e_tilde(psi, i, conv)
}

/// One of the three labels of a simple module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    Kleshchev(ChargedMultiPartition),
    Flotw(ChargedMultiPartition),
    Multisegment(Multisegment),
}

/// The labels of one simple module of the cyclotomic quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelTriple {
    pub kleshchev: ChargedMultiPartition,
    pub flotw: ChargedMultiPartition,
    pub multisegment: Multisegment,
}

impl LabelTriple {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kleshchev": self.kleshchev.to_json(),
            "flotw": self.flotw.to_json(),
            "multisegment": self.multisegment.to_json(),
            "multisegment_tail": self.multisegment.tail_string(),
        })
    }
}

impl fmt::Display for LabelTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kleshchev {}  flotw {}  multisegment {}",
            self.kleshchev,
            self.flotw,
            self.multisegment.tail_string()
        )
    }
}

/// Completes a label to the triple related by `Gamma` and `f_v`. The charge
/// must lie in `V_l`; multipartition labels must carry that charge.
pub fn label_correspondence(
    label: &Label,
    charge: &Multicharge,
    e: Modulus,
) -> Result<LabelTriple> {
    charge.require_normalized(e)?;
    let check_charge = |lam: &ChargedMultiPartition| {
        if lam.charge() == charge {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "label charge {} differs from {}",
                lam.charge(),
                charge
            )))
        }
    };
    let flotw = match label {
        Label::Flotw(lam) => {
            check_charge(lam)?;
            lam.clone()
        }
        Label::Kleshchev(k) => {
            check_charge(k)?;
            gamma_inverse(k, e)?
        }
        Label::Multisegment(psi) => b_ap_membership(psi, charge, e)?.ok_or_else(|| {
            Error::Invalid(format!(
                "{} is not in the image of f_v for charge {}",
                psi.tail_string(),
                charge
            ))
        })?,
    };
    Ok(LabelTriple {
        kleshchev: gamma(&flotw, e)?,
        multisegment: f_v(&flotw, e)?,
        flotw,
    })
}

/// Outcome of [`branching_consistency`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BranchingReport {
    pub vertices: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl BranchingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f_v(e~_i lam) = e~_i f_v(lam)` (tail convention, zero included)
/// for every FLOTW `lam` of rank at most `max_rank` and every colour `i`.
pub fn branching_consistency(
    e: Modulus,
    charge: &Multicharge,
    max_rank: usize,
) -> Result<BranchingReport> {
    let mut report = BranchingReport::default();
    for n in 0..=max_rank {
        for lam in enumerate_flotw(e, charge, n)?.members {
            report.vertices += 1;
            let psi = f_v(&lam, e)?;
            for i in e.residues() {
                report.checks += 1;
                let lhs = fock::e_tilde(&lam, i).map(|mu| f_v(&mu, e)).transpose()?;
                let rhs = multiseg_crystal::e_tilde(&psi, i, Convention::Tail)?;
                if lhs != rhs {
                    report.violations.push(format!(
                        "lambda={lam} i={i}: f_v(e~ lambda)={} but e~ f_v(lambda)={}",
                        lhs.map_or("0".into(), |x| x.tail_string()),
                        rhs.map_or("0".into(), |x| x.tail_string())
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: i64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn mp(charge: &[i64], parts: &[&[usize]]) -> ChargedMultiPartition {
        ChargedMultiPartition::from_parts(charge, parts).unwrap()
    }

    #[test]
    fn socle_examples() {
        let e = m(3);
        for i in e.residues() {
            assert_eq!(
                socle_of_i_restriction(&Multisegment::empty(e), i, Convention::Tail).unwrap(),
                None
            );
        }
        let psi = Multisegment::from_tail_pairs(e, &[(2, 2)]).unwrap();
        let got = socle_of_i_restriction(&psi, e.residue(2), Convention::Tail)
            .unwrap()
            .unwrap();
        assert_eq!(got, Multisegment::from_tail_pairs(e, &[(1, 1)]).unwrap());
    }

    #[test]
    fn restriction_ladder_reaches_empty() {
        let e = m(3);
        for r in 0..=5 {
            for psi in Multisegment::all_of_rank(e, r)
                .into_iter()
                .filter(Multisegment::is_aperiodic)
            {
                let mut cur = psi.clone();
                let mut steps = 0;
                'walk: loop {
                    for i in e.residues() {
                        if let Some(next) =
                            socle_of_i_restriction(&cur, i, Convention::Tail).unwrap()
                        {
                            cur = next;
                            steps += 1;
                            continue 'walk;
                        }
                    }
                    break;
                }
                assert!(cur.is_empty());
                assert_eq!(steps, r);
            }
        }
    }

    #[test]
    fn label_examples() {
        let e = m(3);
        let v = Multicharge::new(vec![1, 2]).unwrap();
        let t = label_correspondence(&Label::Flotw(mp(&[1, 2], &[&[2], &[]])), &v, e).unwrap();
        assert_eq!(t.kleshchev, mp(&[1, 2], &[&[2], &[]]));
        assert_eq!(t.multisegment.tail_string(), "{(2;2]}");
        let t = label_correspondence(&Label::Flotw(mp(&[1, 2], &[&[1], &[1]])), &v, e).unwrap();
        assert_eq!(t.multisegment.tail_string(), "{(1;1],(1;2]}");

        let v2 = Multicharge::new(vec![2]).unwrap();
        let t = label_correspondence(&Label::Kleshchev(mp(&[2], &[&[1, 1]])), &v2, e).unwrap();
        assert_eq!(t.flotw, mp(&[2], &[&[1, 1]]));
        assert_eq!(t.multisegment.tail_string(), "{(1;1],(1;2]}");
        let v1 = Multicharge::new(vec![1]).unwrap();
        let t = label_correspondence(&Label::Kleshchev(mp(&[1], &[&[2]])), &v1, e).unwrap();
        assert_eq!(t.multisegment.tail_string(), "{(2;2]}");

        let empty =
            label_correspondence(&Label::Multisegment(Multisegment::empty(e)), &v, e).unwrap();
        assert!(empty.kleshchev.is_empty() && empty.flotw.is_empty());
    }

    #[test]
    fn labels_agree_from_every_side() {
        let e = m(3);
        let v = Multicharge::new(vec![0, 2]).unwrap();
        for n in 0..=5 {
            for lam in enumerate_flotw(e, &v, n).unwrap().members {
                let t = label_correspondence(&Label::Flotw(lam), &v, e).unwrap();
                assert_eq!(
                    label_correspondence(&Label::Kleshchev(t.kleshchev.clone()), &v, e).unwrap(),
                    t
                );
                assert_eq!(
                    label_correspondence(&Label::Multisegment(t.multisegment.clone()), &v, e)
                        .unwrap(),
                    t
                );
            }
        }
    }

    #[test]
    fn consistency_sweeps() {
        let r = branching_consistency(m(3), &Multicharge::new(vec![1, 2]).unwrap(), 0).unwrap();
        assert_eq!((r.vertices, r.checks), (1, 3));
        assert!(
            branching_consistency(m(3), &Multicharge::new(vec![1, 2]).unwrap(), 6)
                .unwrap()
                .passed()
        );
        assert!(
            branching_consistency(m(4), &Multicharge::new(vec![0, 1]).unwrap(), 5)
                .unwrap()
                .passed()
        );
    }
}
