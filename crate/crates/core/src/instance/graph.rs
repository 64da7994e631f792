use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

/// A graph on vertices `1..=vertex_count` with positive integer edge weights.
///
/// Undirected edges are stored once with arbitrary endpoint order; directed
/// graphs interpret `(u, v)` as the arc u -> v.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub vertex_count: u32,
    pub edges: Vec<(u32, u32, u64)>,
    pub directed: bool,
}

impl SimpleGraph {
    pub fn undirected(vertex_count: u32, edges: Vec<(u32, u32)>) -> Self {
        SimpleGraph {
            vertex_count,
            edges: edges.into_iter().map(|(u, v)| (u, v, 1)).collect(),
            directed: false,
        }
    }

    pub fn undirected_weighted(vertex_count: u32, edges: Vec<(u32, u32, u64)>) -> Self {
        SimpleGraph { vertex_count, edges, directed: false }
    }

    pub fn directed(vertex_count: u32, arcs: Vec<(u32, u32)>) -> Self {
        SimpleGraph {
            vertex_count,
            edges: arcs.into_iter().map(|(u, v)| (u, v, 1)).collect(),
            directed: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &(u, v, w) in &self.edges {
            if u < 1 || v < 1 || u > self.vertex_count || v > self.vertex_count {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range 1..={}",
                    self.vertex_count
                )));
            }
            if !self.directed && u == v {
                return Err(Error::invalid(format!("self-loop at {u} in undirected graph")));
            }
            if w < 1 {
                return Err(Error::invalid("edge weights must be >= 1"));
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges
            .iter()
            .any(|&(a, b, _)| (a, b) == (u, v) || (!self.directed && (a, b) == (v, u)))
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|&(_, _, w)| w).sum()
    }

    /// Undirected adjacency lists (indexed 1..=n; index 0 unused). For
    /// directed graphs this is the out-adjacency.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertex_count as usize + 1];
        for &(u, v, _) in &self.edges {
            adj[u as usize].push(v);
            if !self.directed && u != v {
                adj[v as usize].push(u);
            }
        }
        adj
    }

    pub fn in_adjacency(&self) -> Vec<Vec<u32>> {
        debug_assert!(self.directed);
        let mut adj = vec![Vec::new(); self.vertex_count as usize + 1];
        for &(u, v, _) in &self.edges {
            adj[v as usize].push(u);
        }
        adj
    }

    /// Subgraph induced by deleting `removed`, on the same vertex ids.
    pub fn without_vertices(&self, removed: &std::collections::BTreeSet<u32>) -> SimpleGraph {
        let edges = self
            .edges
            .iter()
            .filter(|(u, v, _)| !removed.contains(u) && !removed.contains(v))
            .copied()
            .collect();
        SimpleGraph { vertex_count: self.vertex_count, edges, directed: self.directed }
    }

    /// Connected components of the undirected graph restricted to `alive`,
    /// each returned as a sorted vertex list.
    pub fn components_among(&self, alive: &std::collections::BTreeSet<u32>) -> Vec<Vec<u32>> {
        let adj = self.adjacency();
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for &start in alive {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &adj[u as usize] {
                    if alive.contains(&v) && seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_self_loop_rejected() {
        let g = SimpleGraph::undirected(2, vec![(1, 1)]);
        assert!(g.validate().is_err());
        let d = SimpleGraph::directed(2, vec![(1, 1)]);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn components_respect_removed_vertices() {
        use std::collections::BTreeSet;
        // path 1-2-3; removing 2 splits it
        let g = SimpleGraph::undirected(3, vec![(1, 2), (2, 3)]);
        let alive: BTreeSet<u32> = [1, 3].into_iter().collect();
        let comps = g.components_among(&alive);
        assert_eq!(comps, vec![vec![1], vec![3]]);
    }
}
