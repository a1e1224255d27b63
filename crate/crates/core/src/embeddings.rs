//! Maps between the crystal realisations: `f_v` from FLOTW multipartitions to
//! aperiodic multisegments, the isomorphism `Gamma` onto Kleshchev
//! multipartitions, and the isomorphisms attached to changes of charge.

use crate::crystal::{path_transport, PeelPolicy};
use crate::error::{Error, Result};
use crate::fock::{is_flotw, is_kleshchev, FockCrystal, KleshchevCrystal};
use crate::types::{ChargedMultiPartition, Modulus, Multicharge, Multisegment, Partition, Segment};

fn require_flotw(lam: &ChargedMultiPartition, e: Modulus) -> Result<()> {
    if is_flotw(lam, e)? {
        Ok(())
    } else {
        Err(Error::NotFlotw(lam.to_string()))
    }
}

/// Row `j` of component `c` becomes the segment `[1 - j + v_c; lam^(c)_j)`.
fn rows_to_segments(lam: &ChargedMultiPartition, e: Modulus) -> Multisegment {
    let segs = lam.components().iter().enumerate().flat_map(|(c, p)| {
        let v = lam.charge().get(c);
        p.parts().iter().enumerate().map(move |(j, &len)| {
            Segment::new(e.residue(1 - (j as i64 + 1) + v), len).expect("positive part")
        })
    });
    Multisegment::from_segments(e, segs).expect("one modulus")
}

/// The embedding `f_v` of `Phi(v)` into the aperiodic multisegments.
pub fn f_v(lam: &ChargedMultiPartition, e: Modulus) -> Result<Multisegment> {
    require_flotw(lam, e)?;
    Ok(rows_to_segments(lam, e))
}

/// `Gamma`: FLOTW multipartition to the Kleshchev multipartition at the same
/// vertex of `B(Lambda)`.
pub fn gamma(lam: &ChargedMultiPartition, e: Modulus) -> Result<ChargedMultiPartition> {
    require_flotw(lam, e)?;
    let src = FockCrystal::new(e, lam.charge().clone());
    let dst = KleshchevCrystal::new(e, lam.charge().clone());
    path_transport(&src, &dst, lam, PeelPolicy::SmallestColor)
}

/// Inverse of [`gamma`].
pub fn gamma_inverse(kappa: &ChargedMultiPartition, e: Modulus) -> Result<ChargedMultiPartition> {
    kappa.charge().require_normalized(e)?;
    if !is_kleshchev(kappa, e) {
        return Err(Error::NotKleshchev(kappa.to_string()));
    }
    let src = KleshchevCrystal::new(e, kappa.charge().clone());
    let dst = FockCrystal::new(e, kappa.charge().clone());
    path_transport(&src, &dst, kappa, PeelPolicy::SmallestColor)
}

/// Isomorphism between the Uglov components for charges `v` and `target`,
/// which must define the same dominant weight.
pub fn charge_transport(
    lam: &ChargedMultiPartition,
    target: &Multicharge,
    e: Modulus,
    policy: PeelPolicy,
) -> Result<ChargedMultiPartition> {
    if lam.charge().lambda(e) != target.lambda(e) {
        return Err(Error::Invalid(format!(
            "charges {} and {} define different dominant weights",
            lam.charge(),
            target
        )));
    }
    let src = FockCrystal::new(e, lam.charge().clone());
    let dst = FockCrystal::new(e, target.clone());
    path_transport(&src, &dst, lam, policy)
}

/// `B(v) -> B(tau v)` by path transport, where `tau v = (v_1, ..., v_{l-1}, v_0 + e)`.
pub fn tau_transport(lam: &ChargedMultiPartition, e: Modulus) -> Result<ChargedMultiPartition> {
    charge_transport(lam, &lam.charge().tau(e), e, PeelPolicy::SmallestColor)
}

/// `B(v) -> B(sigma_j v)` by path transport, `sigma_j` exchanging `v_{j-1}` and `v_j`.
pub fn sigma_transport(
    lam: &ChargedMultiPartition,
    j: usize,
    e: Modulus,
) -> Result<ChargedMultiPartition> {
    let l = lam.level();
    if j == 0 || j >= l {
        return Err(Error::ComponentOutOfRange { index: j, len: l });
    }
    let mut w = lam.charge().values().to_vec();
    w.swap(j - 1, j);
    charge_transport(lam, &Multicharge::new(w)?, e, PeelPolicy::SmallestColor)
}

/// Decides whether `psi` lies in `f_v(Phi(v))` and returns the preimage.
///
/// Every way of distributing the segments of `psi` over rows, with row `j`
/// of component `c` taking a segment with head `1 - j + v_c` and row lengths
/// weakly decreasing, is enumerated; the FLOTW candidates are kept.
pub fn b_ap_membership(
    psi: &Multisegment,
    charge: &Multicharge,
    e: Modulus,
) -> Result<Option<ChargedMultiPartition>> {
    charge.require_normalized(e)?;
    psi.modulus().check_same(e)?;
    let mut pool = psi.clone();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); charge.level()];
    let mut found = None;
    assign(&mut pool, charge, e, 0, &mut rows, &mut found)?;
    Ok(found)
}

fn assign(
    pool: &mut Multisegment,
    charge: &Multicharge,
    e: Modulus,
    c: usize,
    rows: &mut Vec<Vec<usize>>,
    found: &mut Option<ChargedMultiPartition>,
) -> Result<()> {
    if found.is_some() {
        return Ok(());
    }
    if c == charge.level() {
        if pool.is_empty() {
            let comps = rows
                .iter()
                .map(|r| Partition::new(r.clone()))
                .collect::<Result<Vec<_>>>()?;
            let lam = ChargedMultiPartition::new(charge.clone(), comps)?;
            if is_flotw(&lam, e)? {
                *found = Some(lam);
            }
        }
        return Ok(());
    }
    // close component c here
    assign(pool, charge, e, c + 1, rows, found)?;
    let j = rows[c].len() + 1;
    let head = e.residue(1 - j as i64 + charge.get(c));
    let cap = rows[c].last().copied().unwrap_or(usize::MAX);
    let lens: Vec<usize> = pool
        .iter()
        .filter(|(s, _)| s.head() == head && s.len() <= cap)
        .map(|(s, _)| s.len())
        .collect();
    for len in lens {
        let s = Segment::new(head, len)?;
        pool.remove_one(&s);
        rows[c].push(len);
        assign(pool, charge, e, c, rows, found)?;
        rows[c].pop();
        pool.insert(s, 1);
    }
    Ok(())
}
