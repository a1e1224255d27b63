//! Nilpotent representations of the cyclic quiver over a finite field.

use super::field::Field;
use crate::error::{Error, Result};
use crate::types::{DimensionVector, Modulus, Multisegment, Segment};

/// A linear map `F^cols -> F^rows`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u8>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for k in 0..n {
            m.set(k, k, 1);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn apply(&self, f: &Field, x: &[u8]) -> Vec<u8> {
        (0..self.rows)
            .map(|r| (0..self.cols).fold(0u8, |acc, c| f.add(acc, f.mul(self.get(r, c), x[c]))))
            .collect()
    }

    /// `self * other`.
    pub fn compose(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u8;
                for k in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(r, k), other.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Images of the standard basis vectors.
    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).collect())
            .collect()
    }
}

/// Reduced row echelon basis of the span of `vectors` in `F^n`, together
/// with the pivot columns.
pub fn echelon(f: &Field, vectors: &[Vec<u8>], n: usize) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut rows: Vec<Vec<u8>> = vectors.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let factor = rows[k][c];
                for j in 0..n {
                    let t = f.mul(factor, rows[r][j]);
                    rows[k][j] = f.sub(rows[k][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(f: &Field, vectors: &[Vec<u8>], n: usize) -> usize {
    echelon(f, vectors, n).0.len()
}

/// A representation `X_i : V_i -> V_{i+1}` of the cyclic quiver.
#[derive(Debug, Clone)]
pub struct NilRep {
    pub modulus: Modulus,
    pub q: u32,
    pub dims: Vec<usize>,
    /// `maps[i]` is the matrix of `X_i : V_i -> V_{i+1}`.
    pub maps: Vec<Mat>,
}

impl NilRep {
    pub fn dimension_vector(&self) -> DimensionVector {
        DimensionVector::from_entries(self.modulus, self.dims.iter().map(|&d| d as u32).collect())
            .expect("one entry per vertex")
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `pow[i][l]` is the matrix of `X^l : V_i -> V_{i+l}` for `l <= max_len`.
    pub fn powers(&self, f: &Field, max_len: usize) -> Vec<Vec<Mat>> {
        let e = self.dims.len();
        (0..e)
            .map(|i| {
                let mut out = vec![Mat::identity(self.dims[i])];
                for l in 1..=max_len {
                    let prev = out.last().expect("nonempty");
                    out.push(self.maps[(i + l - 1) % e].compose(f, prev));
                }
                out
            })
            .collect()
    }
}

/// Basis indices of `M_psi`: for each copy of each segment, the positions of
/// its nodes `b_0, ..., b_{L-1}` inside the graded pieces.
pub(crate) fn segment_layout(psi: &Multisegment) -> (Vec<usize>, Vec<Vec<(usize, usize)>>) {
    let e = psi.modulus().get() as usize;
    let mut dims = vec![0usize; e];
    let mut chains = Vec::new();
    for s in psi.segments() {
        let chain: Vec<(usize, usize)> = s
            .residues()
            .map(|r| {
                let g = r.index();
                dims[g] += 1;
                (g, dims[g] - 1)
            })
            .collect();
        chains.push(chain);
    }
    (dims, chains)
}

/// `M_psi` over `F_q`: a direct sum of uniserial chains, one per segment,
/// with `X b_k = b_{k+1}` and `X b_{L-1} = 0`.
pub fn rep_from_multisegment(psi: &Multisegment, f: &Field) -> NilRep {
    let e = psi.modulus().get() as usize;
    let (dims, chains) = segment_layout(psi);
    let mut maps: Vec<Mat> = (0..e)
        .map(|i| Mat::zero(dims[(i + 1) % e], dims[i]))
        .collect();
    for chain in &chains {
        for w in chain.windows(2) {
            let ((g, a), (_, b)) = (w[0], w[1]);
            maps[g].set(b, a, 1);
        }
    }
    NilRep {
        modulus: psi.modulus(),
        q: f.order() as u32,
        dims,
        maps,
    }
}

/// Multisegment from the rank invariants `r[i][l] = dim X^l(W_i)`, `l = 0..=L+1`,
/// of a nilpotent representation.
pub(crate) fn decode_ranks(modulus: Modulus, r: &[Vec<usize>]) -> Result<Multisegment> {
    let e = modulus.get() as usize;
    let top = r[0].len() - 1;
    // a_tl[t][l]: segments of length >= l whose tail is t
    let mut a_tl = vec![vec![0i64; top + 2]; e];
    for t in 0..e {
        for l in 1..=top {
            let i = (t + e * top + 1 - l) % e;
            a_tl[t][l] = r[i][l - 1] as i64 - r[i][l] as i64;
        }
    }
    let mut out = Multisegment::empty(modulus);
    for t in 0..e {
        for l in 1..=top {
            let m = a_tl[t][l] - a_tl[t][l + 1];
            if m < 0 {
                return Err(Error::Invariant("inconsistent rank invariants".into()));
            }
            let s = Segment::from_tail(modulus.residue(t as i64), l)?;
            out.insert(s, m as usize);
        }
    }
    Ok(out)
}

/// Isomorphism type of a nilpotent representation.
pub fn multisegment_from_rep(rep: &NilRep, f: &Field) -> Result<Multisegment> {
    let n = rep.total_dim();
    let pow = rep.powers(f, n + 1);
    if pow.iter().any(|p| !p[n].is_zero()) {
        return Err(Error::Invalid("representation is not nilpotent".into()));
    }
    let target_dim = |i: usize, l: usize| rep.dims[(i + l) % rep.dims.len()];
    let r: Vec<Vec<usize>> = pow
        .iter()
        .enumerate()
        .map(|(i, ps)| {
            ps.iter()
                .enumerate()
                .map(|(l, m)| rank(f, &m.columns(), target_dim(i, l)))
                .collect()
        })
        .collect();
    decode_ranks(rep.modulus, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Kernel dimensions by brute force over F_2, never touching elimination.
    fn kernel_dims_f2(rep: &NilRep, f: &Field, max_len: usize) -> Vec<Vec<usize>> {
        let pow = rep.powers(f, max_len);
        (0..rep.dims.len())
            .map(|i| {
                let n = rep.dims[i];
                (0..=max_len)
                    .map(|l| {
                        let mut count = 0usize;
                        for bits in 0..(1usize << n) {
                            let x: Vec<u8> = (0..n).map(|k| ((bits >> k) & 1) as u8).collect();
                            if pow[i][l].apply(f, &x).iter().all(|&y| y == 0) {
                                count += 1;
                            }
                        }
                        count.trailing_zeros() as usize
                    })
                    .collect()
            })
            .collect()
    }

    fn multisegments() -> impl Strategy<Value = Multisegment> {
        (2i64..=4, prop::collection::vec((0i64..4, 1usize..4), 0..4)).prop_filter_map(
            "rank",
            |(n, pairs)| {
                let m = Modulus::new(n).unwrap();
                let p = Multisegment::from_pairs(m, &pairs).ok()?;
                (p.rank() <= 5).then_some(p)
            },
        )
    }

    #[test]
    fn examples() {
        let f = Field::new(3).unwrap();
        let e = Modulus::new(3).unwrap();
        let empty = Multisegment::empty(e);
        let rep = rep_from_multisegment(&empty, &f);
        assert_eq!(rep.total_dim(), 0);
        assert_eq!(multisegment_from_rep(&rep, &f).unwrap(), empty);
        let chain = Multisegment::from_pairs(e, &[(0, 3)]).unwrap();
        let rep = rep_from_multisegment(&chain, &f);
        assert_eq!(rep.dims, vec![1, 1, 1]);
        assert_eq!(rep.maps[2].get(0, 0), 0);
        assert_eq!(multisegment_from_rep(&rep, &f).unwrap(), chain);
    }

    #[test]
    fn rejects_cycle() {
        let f = Field::new(2).unwrap();
        let e = Modulus::new(2).unwrap();
        let mut maps = vec![Mat::zero(1, 1), Mat::zero(1, 1)];
        maps[0].set(0, 0, 1);
        maps[1].set(0, 0, 1);
        let rep = NilRep {
            modulus: e,
            q: 2,
            dims: vec![1, 1],
            maps,
        };
        assert!(matches!(
            multisegment_from_rep(&rep, &f),
            Err(Error::Invalid(_))
        ));
    }

    proptest! {
        #[test]
        fn round_trip(psi in multisegments()) {
            for q in [2, 4, 5] {
                let f = Field::new(q).unwrap();
                prop_assert_eq!(multisegment_from_rep(&rep_from_multisegment(&psi, &f), &f).unwrap(), psi.clone());
            }
        }

        #[test]
        fn kernels_match_segment_count(psi in multisegments()) {
            // dim ker X^l on V_i counts nodes of residue i within l steps of their tail
            let f = Field::new(2).unwrap();
            let rep = rep_from_multisegment(&psi, &f);
            let k = kernel_dims_f2(&rep, &f, 6);
            for i in psi.modulus().residues() {
                for l in 0..=6 {
                    let expected: usize = psi
                        .segments()
                        .map(|s| s.residues().enumerate().filter(|&(p, r)| r == i && p + l >= s.len()).count())
                        .sum();
                    prop_assert_eq!(k[i.index()][l], expected);
                }
            }
        }
    }
}
