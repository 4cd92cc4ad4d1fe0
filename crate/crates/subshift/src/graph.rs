//! Finite labeled graphs presenting sofic shifts.

use crate::bits::Bits;
use crate::words::{Alphabet, Word};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A finite directed graph with one label per edge.
///
/// Vertex order is fixed at construction and drives all downstream matrix
/// row/column orders.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertices: Vec<String>,
    /// (source index, target index, label id)
    edges: Vec<(usize, usize, u16)>,
}

impl LabeledGraph {
    pub fn new<S: Into<String>>(
        alphabet: Alphabet,
        vertices: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (String, String, String)>,
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let index = |name: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut built = Vec::new();
        for (src, dst, label) in edges {
            built.push((index(&src)?, index(&dst)?, alphabet.index_of(&label)?));
        }
        Ok(LabeledGraph { alphabet, vertices, edges: built })
    }

    /// Construct from pre-resolved indices; used by the built-in families.
    pub fn from_indexed(
        alphabet: Alphabet,
        vertices: Vec<String>,
        edges: Vec<(usize, usize, u16)>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        for &(s, t, l) in &edges {
            if s >= vertices.len() || t >= vertices.len() {
                return Err(Error::UnknownVertex(format!("#{}", s.max(t))));
            }
            if l as usize >= alphabet.len() {
                return Err(Error::UnknownSymbol(format!("#{l}")));
            }
        }
        Ok(LabeledGraph { alphabet, vertices, edges })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, u16)] {
        &self.edges
    }

    /// No two out-edges of a vertex share a label.
    pub fn is_right_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&(s, _, l)| seen.insert((s, l)))
    }

    /// No two in-edges of a vertex share a label.
    pub fn is_left_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&(_, t, l)| seen.insert((t, l)))
    }

    /// Strong connectivity of the underlying digraph.
    pub fn is_irreducible(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let reach = |forward: bool| -> usize {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &(s, t, _) in &self.edges {
                    let (from, to) = if forward { (s, t) } else { (t, s) };
                    if from == v && !seen[to] {
                        seen[to] = true;
                        count += 1;
                        stack.push(to);
                    }
                }
            }
            count
        };
        reach(true) == n && reach(false) == n
    }

    /// Per-symbol transfer relations in both directions, as bit-set rows.
    pub fn transfer(&self) -> Transfer {
        let n = self.vertices.len();
        let k = self.alphabet.len();
        let mut fwd = vec![vec![Bits::empty(n); n]; k];
        let mut bwd = vec![vec![Bits::empty(n); n]; k];
        for &(s, t, l) in &self.edges {
            fwd[l as usize][s].insert(t);
            bwd[l as usize][t].insert(s);
        }
        Transfer { nv: n, fwd, bwd }
    }
}

/// Compiled adjacency-by-label, the workhorse for profiles and reach sets.
pub struct Transfer {
    nv: usize,
    /// `fwd[label][u]` = targets of `u`-out-edges labeled `label`.
    fwd: Vec<Vec<Bits>>,
    /// `bwd[label][v]` = sources of `v`-in-edges labeled `label`.
    bwd: Vec<Vec<Bits>>,
}

impl Transfer {
    pub fn vertex_count(&self) -> usize {
        self.nv
    }

    /// Endpoints of edges labeled `label` starting inside `set`.
    pub fn step_forward(&self, set: &Bits, label: u16) -> Bits {
        let mut out = Bits::empty(self.nv);
        for u in set.iter() {
            out.union_with(&self.fwd[label as usize][u]);
        }
        out
    }

    /// Sources of edges labeled `label` ending inside `set`.
    pub fn step_backward(&self, set: &Bits, label: u16) -> Bits {
        let mut out = Bits::empty(self.nv);
        for v in set.iter() {
            out.union_with(&self.bwd[label as usize][v]);
        }
        out
    }

    /// The relation {(u, v) : a path labeled `w` runs from u to v}, as rows
    /// indexed by source vertex.
    pub fn word_relation(&self, w: &Word) -> Vec<Bits> {
        let mut rows: Vec<Bits> = (0..self.nv)
            .map(|u| {
                let mut b = Bits::empty(self.nv);
                b.insert(u);
                b
            })
            .collect();
        for &label in w.ids() {
            for row in rows.iter_mut() {
                *row = self.step_forward(row, label);
            }
        }
        rows
    }

    /// Endpoint set of all paths labeled `w` (starting anywhere).
    pub fn word_targets(&self, w: &Word) -> Bits {
        let mut cur = Bits::full(self.nv);
        for &label in w.ids() {
            cur = self.step_forward(&cur, label);
        }
        cur
    }

    /// Start set of all paths labeled `w` (ending anywhere).
    pub fn word_sources(&self, w: &Word) -> Bits {
        let mut cur = Bits::full(self.nv);
        for &label in w.ids().iter().rev() {
            cur = self.step_backward(&cur, label);
        }
        cur
    }

    pub fn accepts(&self, w: &Word) -> bool {
        !self.word_targets(w).is_empty()
    }
}
