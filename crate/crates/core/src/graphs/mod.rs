//! Simple undirected graphs, builders, structural predicates and the text format.

mod io;
mod structure;

pub use io::{
    parse_dimension_map, parse_graph, parse_labels, write_dimension_map, write_graph, write_graph_dot, write_labels,
};
pub use structure::{Bipartition, StructureReport};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v` in insertion order; the edge index
/// is the position in [`Graph::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            incident: vec![Vec::new(); n],
            labels: vec![None; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: Option<String>) -> usize {
        self.n += 1;
        self.adjacency.push(Vec::new());
        self.incident.push(Vec::new());
        self.labels.push(label);
        self.n - 1
    }

    /// Adds `{u, v}` and returns its edge index.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for n = {}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
        }
        let idx = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.incident[u].push(idx);
        self.incident[v].push(idx);
        Ok(idx)
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("complete graph needs n >= 1"));
        }
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// `K_{a,b}`: left block `0..a`, right block `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::invalid("complete bipartite sides must be nonempty"));
        }
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// `C_l` with edges `(i, i+1)` and the closing edge `(l-1, 0)` last.
    pub fn cycle(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::invalid("cycle length must be at least 3"));
        }
        let mut g = Graph::empty(len);
        for i in 0..len - 1 {
            g.add_edge(i, i + 1)?;
        }
        g.add_edge(len - 1, 0)?;
        Ok(g)
    }

    /// Path with `len` edges on vertices `0..=len`.
    pub fn path(len: usize) -> Result<Self> {
        let mut g = Graph::empty(len + 1);
        for i in 0..len {
            g.add_edge(i, i + 1)?;
        }
        Ok(g)
    }

    /// Complete multipartite graph; parts are consecutive blocks in order.
    pub fn multipartite(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::invalid("multipartite part sizes must be positive"));
        }
        let mut part = Vec::new();
        for (i, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat_n(i, s));
        }
        let mut g = Graph::empty(part.len());
        for u in 0..part.len() {
            for v in u + 1..part.len() {
                if part[u] != part[v] {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edge indices incident to `v`, in insertion order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].contains(&v)
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels[v] = Some(label.into());
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        let off = self.n;
        for v in 0..other.n {
            g.add_vertex(other.labels[v].clone());
        }
        for &(u, v) in &other.edges {
            g.add_edge(u + off, v + off).expect("disjoint edges");
        }
        g
    }

    /// Induced subgraph on `vertices` (renumbered in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            g.labels[i] = self.labels[v].clone();
        }
        for &(u, v) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v]).expect("induced edge");
            }
        }
        g
    }
}

/// Per-vertex target dimension `f(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionMap(Vec<usize>);

impl DimensionMap {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if let Some(v) = values.iter().position(|&d| d == 0) {
            return Err(Error::invalid(format!("dimension of vertex {v} must be positive")));
        }
        Ok(DimensionMap(values))
    }

    pub fn constant(n: usize, d: usize) -> Self {
        DimensionMap(vec![d; n])
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, d: usize) {
        assert!(d > 0);
        self.0[v] = d;
    }

    pub fn push(&mut self, d: usize) {
        assert!(d > 0);
        self.0.push(d);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_edge_counts() {
        assert_eq!(Graph::complete(3).unwrap().num_edges(), 3);
        assert_eq!(Graph::complete_bipartite(2, 3).unwrap().num_edges(), 6);
        assert_eq!(Graph::multipartite(&[2, 2, 2]).unwrap().num_edges(), 12);
        assert_eq!(Graph::cycle(5).unwrap().edges()[4], (0, 4));
        assert_eq!(Graph::path(4).unwrap().n(), 5);
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::empty(3);
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
        assert!(g.add_edge(2, 2).is_err());
        assert!(g.add_edge(0, 3).is_err());
    }

    #[test]
    fn induced_and_union() {
        let c = Graph::cycle(4).unwrap();
        let p = c.induced(&[0, 1, 2]);
        assert_eq!(p.edges(), &[(0, 1), (1, 2)]);
        let u = c.disjoint_union(&p);
        assert_eq!((u.n(), u.num_edges()), (7, 6));
    }
}
