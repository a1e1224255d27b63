use std::fmt;

use super::residue::{Modulus, Residue};

/// A weight `sum a_i Lambda_i + sum b_i alpha_i` of type `A^{(1)}_{e-1}`,
/// kept in fundamental/simple coordinates (the null root is not reduced).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightExpr {
    modulus: Modulus,
    fundamental: Vec<i64>,
    simple: Vec<i64>,
}

impl WeightExpr {
    pub fn zero(modulus: Modulus) -> Self {
        let e = modulus.get() as usize;
        WeightExpr {
            modulus,
            fundamental: vec![0; e],
            simple: vec![0; e],
        }
    }

    pub fn new(modulus: Modulus, fundamental: Vec<i64>, simple: Vec<i64>) -> Self {
        let e = modulus.get() as usize;
        assert!(
            fundamental.len() == e && simple.len() == e,
            "weight coordinates must have length e"
        );
        WeightExpr {
            modulus,
            fundamental,
            simple,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn fundamental(&self) -> &[i64] {
        &self.fundamental
    }

    pub fn simple(&self) -> &[i64] {
        &self.simple
    }

    pub fn minus_simple(&self, i: Residue) -> WeightExpr {
        let mut w = self.clone();
        w.simple[i.index()] -= 1;
        w
    }

    /// Value of the coroot `alpha_i^vee` on this weight.
    pub fn pair(&self, i: Residue) -> i64 {
        let s = |r: Residue| self.simple[r.index()];
        self.fundamental[i.index()] + 2 * s(i) - s(i.pred()) - s(i.succ())
    }
}

impl fmt::Display for WeightExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &a) in self.fundamental.iter().enumerate() {
            if a != 0 {
                terms.push((a, format!("Λ{k}")));
            }
        }
        for (k, &b) in self.simple.iter().enumerate() {
            if b != 0 {
                terms.push((b, format!("α{k}")));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (c, name)) in terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if n > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_matches_cartan_matrix() {
        let e = Modulus::new(3).unwrap();
        let mut w = WeightExpr::zero(e);
        w = w.minus_simple(e.residue(1));
        assert_eq!(w.pair(e.residue(1)), -2);
        assert_eq!(w.pair(e.residue(0)), 1);
        assert_eq!(w.pair(e.residue(2)), 1);
        // delta pairs to zero with every coroot
        let d = WeightExpr::new(e, vec![0; 3], vec![-1, -1, -1]);
        for i in e.residues() {
            assert_eq!(d.pair(i), 0);
        }
        let e2 = Modulus::new(2).unwrap();
        let w2 = WeightExpr::zero(e2).minus_simple(e2.residue(0));
        assert_eq!(w2.pair(e2.residue(1)), 2);
        assert_eq!(d.to_string(), "-α0-α1-α2");
    }
}
