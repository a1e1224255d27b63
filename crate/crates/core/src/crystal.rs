//! A small abstraction over highest-weight crystals, with breadth-first
//! exploration and transport of vertices along colour paths.

use std::collections::BTreeSet;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::graph::{CrystalGraph, Edge};
use crate::types::{Modulus, Residue};

/// A crystal generated from a single highest-weight vertex.
pub trait Crystal {
    type Vertex: Clone + Eq + Hash + Ord;

    fn modulus(&self) -> Modulus;

    fn highest_weight_vertex(&self) -> Self::Vertex;

    fn e_tilde(&self, x: &Self::Vertex, i: Residue) -> Result<Option<Self::Vertex>>;

    fn f_tilde(&self, x: &Self::Vertex, i: Residue) -> Result<Option<Self::Vertex>>;

    fn vertex_name(&self, x: &Self::Vertex) -> String;

    fn epsilon(&self, x: &Self::Vertex, i: Residue) -> Result<usize> {
        let mut k = 0;
        let mut cur = x.clone();
        while let Some(y) = self.e_tilde(&cur, i)? {
            cur = y;
            k += 1;
        }
        Ok(k)
    }
}

/// Which colour to remove first when walking up to the highest-weight vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelPolicy {
    SmallestColor,
    LargestColor,
}

/// Walks `x` up by `e~` operators. Returns the terminal vertex and the colour
/// word `i_1, ..., i_n` with `x = f~_{i_n} ... f~_{i_1}(terminal)`.
pub fn peel<C: Crystal>(
    c: &C,
    x: &C::Vertex,
    policy: PeelPolicy,
) -> Result<(C::Vertex, Vec<Residue>)> {
    let mut colors: Vec<Residue> = c.modulus().residues().collect();
    if policy == PeelPolicy::LargestColor {
        colors.reverse();
    }
    let mut cur = x.clone();
    let mut word = Vec::new();
    'outer: loop {
        for &i in &colors {
            if let Some(y) = c.e_tilde(&cur, i)? {
                cur = y;
                word.push(i);
                continue 'outer;
            }
        }
        break;
    }
    word.reverse();
    Ok((cur, word))
}

/// Applies `f~_{i_1}`, then `f~_{i_2}`, ... starting at `x`.
pub fn apply_word<C: Crystal>(c: &C, x: &C::Vertex, word: &[Residue]) -> Result<Option<C::Vertex>> {
    let mut cur = x.clone();
    for &i in word {
        match c.f_tilde(&cur, i)? {
            Some(y) => cur = y,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// Image of `x` under the crystal isomorphism between the highest-weight
/// components of `src` and `dst`: peel `x` in `src`, replay the word in `dst`.
pub fn path_transport<S: Crystal, D: Crystal>(
    src: &S,
    dst: &D,
    x: &S::Vertex,
    policy: PeelPolicy,
) -> Result<D::Vertex> {
    src.modulus().check_same(dst.modulus())?;
    let (top, word) = peel(src, x, policy)?;
    if top != src.highest_weight_vertex() {
        return Err(Error::Invalid(format!(
            "{} is not in the highest-weight component (peels to {})",
            src.vertex_name(x),
            src.vertex_name(&top)
        )));
    }
    apply_word(dst, &dst.highest_weight_vertex(), &word)?.ok_or_else(|| {
        Error::Invariant(format!(
            "colour word of {} cannot be replayed in the target crystal",
            src.vertex_name(x)
        ))
    })
}

/// Vertices of the highest-weight component, grouped by depth, each layer in
/// vertex order.
pub fn bfs_layers<C: Crystal>(c: &C, max_depth: usize) -> Result<Vec<Vec<C::Vertex>>> {
    let mut layers = vec![vec![c.highest_weight_vertex()]];
    for _ in 0..max_depth {
        let mut next = BTreeSet::new();
        for x in layers.last().expect("nonempty") {
            for i in c.modulus().residues() {
                if let Some(y) = c.f_tilde(x, i)? {
                    next.insert(y);
                }
            }
        }
        layers.push(next.into_iter().collect());
    }
    Ok(layers)
}

/// The depth-bounded crystal graph with all `f~` edges between listed vertices.
pub fn build_graph<C: Crystal>(c: &C, max_depth: usize) -> Result<CrystalGraph> {
    let layers = bfs_layers(c, max_depth)?;
    let mut edges = Vec::new();
    for layer in layers.iter().take(max_depth) {
        for x in layer {
            for i in c.modulus().residues() {
                if let Some(y) = c.f_tilde(x, i)? {
                    edges.push(Edge {
                        src: c.vertex_name(x),
                        color: i.value(),
                        dst: c.vertex_name(&y),
                    });
                }
            }
        }
    }
    Ok(CrystalGraph {
        e: c.modulus().get(),
        layers: layers
            .iter()
            .map(|l| l.iter().map(|x| c.vertex_name(x)).collect())
            .collect(),
        edges,
    })
}
