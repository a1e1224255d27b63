//! Layered, colour-labelled digraphs produced by crystal exploration.

use std::fmt::Write as _;

use serde::Serialize;

/// A coloured edge `src --colour--> dst` (an `f~_colour` arrow).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub src: String,
    pub color: u32,
    pub dst: String,
}

/// Finite crystal graph; layer `n` holds the vertices of rank `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrystalGraph {
    pub e: u32,
    pub layers: Vec<Vec<String>>,
    pub edges: Vec<Edge>,
}

impl CrystalGraph {
    pub fn vertex_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }

    /// Graphviz output; vertex ids are the quoted vertex names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
        for (n, layer) in self.layers.iter().enumerate() {
            let _ = writeln!(out, "  // rank {n}");
            for v in layer {
                let _ = writeln!(out, "  {};", quote(v));
            }
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                quote(&e.src),
                quote(&e.dst),
                e.color
            );
        }
        out.push_str("}\n");
        out
    }

    /// Plain listing, one vertex per line with its outgoing edges.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (n, layer) in self.layers.iter().enumerate() {
            let _ = writeln!(out, "rank {n}: {} vertices", layer.len());
            for v in layer {
                let outs: Vec<String> = self
                    .edges
                    .iter()
                    .filter(|e| &e.src == v)
                    .map(|e| format!("{}->{}", e.color, e.dst))
                    .collect();
                if outs.is_empty() {
                    let _ = writeln!(out, "  {v}");
                } else {
                    let _ = writeln!(out, "  {v}  {}", outs.join("  "));
                }
            }
        }
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_escapes_and_lists_edges() {
        let g = CrystalGraph {
            e: 2,
            layers: vec![vec!["∅".into()], vec!["a\"b".into()]],
            edges: vec![Edge {
                src: "∅".into(),
                color: 1,
                dst: "a\"b".into(),
            }],
        };
        let dot = g.to_dot();
        assert!(dot.contains("\"∅\" -> \"a\\\"b\" [label=\"1\"];"));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.to_json()["edges"][0]["color"], 1);
    }
}
