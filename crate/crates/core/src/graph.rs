//! Simple undirected graphs and digraphs on vertex set `0..n`.
//!
//! Both types are immutable once built. Adjacency is held twice: as sorted
//! neighbour lists for iteration and as bitset rows for O(1) membership and
//! fast set intersection in the exact solvers.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Default upper bound on the number of vertices of any constructed graph.
pub const DEFAULT_MAX_VERTICES: usize = 4096;

static MAX_VERTICES: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_VERTICES);

/// Current vertex bound.
pub fn max_vertices() -> usize {
    MAX_VERTICES.load(Ordering::Relaxed)
}

/// Override the vertex bound for the whole process.
pub fn set_max_vertices(limit: usize) {
    MAX_VERTICES.store(limit.max(1), Ordering::Relaxed);
}

pub(crate) fn check_order(n: u128) -> Result<usize> {
    let limit = max_vertices() as u128;
    if n > limit {
        return Err(Error::TooLarge {
            what: "graph",
            size: n,
            limit,
        });
    }
    Ok(n as usize)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n as u128)?;
        Ok(Self::from_rows(n, vec![BitSet::new(n); n]))
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_order(n as u128)?;
        let mut rows = vec![BitSet::new(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(n, rows))
    }

    /// Build from an adjacency predicate evaluated on every unordered pair.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_order(n as u128)?;
        let mut rows = vec![BitSet::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    rows[u].insert(v);
                    rows[v].insert(u);
                }
            }
        }
        Ok(Self::from_rows(n, rows))
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<BitSet>) -> Self {
        let neighbors = rows.iter().map(|r| r.iter().collect()).collect();
        Graph { n, rows, neighbors }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_edgeless(&self) -> bool {
        self.neighbors.iter().all(Vec::is_empty)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let rows = (0..n)
            .map(|u| {
                let mut r = BitSet::full(n);
                r.difference_with(&self.rows[u]);
                r.remove(u);
                r
            })
            .collect();
        Self::from_rows(n, rows)
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut rows = vec![BitSet::new(k); k];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j && self.adjacent(u, v) {
                    rows[i].insert(j);
                }
            }
        }
        Self::from_rows(k, rows)
    }

    /// Whether `vertices` are pairwise adjacent (duplicates are not).
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.adjacent(u, v))
        })
    }

    /// Whether every vertex in `vertices` is pairwise non-adjacent.
    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..].iter().all(|&v| !self.adjacent(u, v))
        })
    }

    /// Whether `colors` is a proper coloring.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n && self.edges().all(|(u, v)| colors[u] != colors[v])
    }

    /// Symmetric 0/1 adjacency matrix in row-major order.
    pub fn adjacency_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for (u, v) in self.edges() {
            a[u * n + v] = 1.0;
            a[v * n + u] = 1.0;
        }
        a
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Directed graph without self-loops. Antiparallel arc pairs are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_rows: Vec<BitSet>,
    in_rows: Vec<BitSet>,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_arcs(n, std::iter::empty())
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_order(n as u128)?;
        let mut out_rows = vec![BitSet::new(n); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "arc ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            out_rows[u].insert(v);
        }
        Ok(Self::from_out_rows(n, out_rows))
    }

    /// Build from an arc predicate evaluated on every ordered pair `u != v`.
    pub fn from_fn(n: usize, mut arc: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_order(n as u128)?;
        let mut out_rows = vec![BitSet::new(n); n];
        for (u, row) in out_rows.iter_mut().enumerate() {
            for v in 0..n {
                if u != v && arc(u, v) {
                    row.insert(v);
                }
            }
        }
        Ok(Self::from_out_rows(n, out_rows))
    }

    pub(crate) fn from_out_rows(n: usize, out_rows: Vec<BitSet>) -> Self {
        let mut in_rows = vec![BitSet::new(n); n];
        for (u, row) in out_rows.iter().enumerate() {
            for v in row.iter() {
                in_rows[v].insert(u);
            }
        }
        let out = out_rows.iter().map(|r| r.iter().collect()).collect();
        Digraph {
            n,
            out_rows,
            in_rows,
            out,
        }
    }

    /// Every edge of `g` as a pair of antiparallel arcs.
    pub fn bidirected(g: &Graph) -> Digraph {
        Self::from_out_rows(g.order(), (0..g.order()).map(|v| g.row(v).clone()).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_rows[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn out_row(&self, v: usize) -> &BitSet {
        &self.out_rows[v]
    }

    pub fn in_row(&self, v: usize) -> &BitSet {
        &self.in_rows[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_rows[v].count()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |&v| (u, v)))
    }

    /// Forget orientation: `u ~ v` iff an arc joins them in either direction.
    pub fn underlying(&self) -> Graph {
        let rows = (0..self.n)
            .map(|v| {
                let mut r = self.out_rows[v].clone();
                for u in self.in_rows[v].iter() {
                    r.insert(u);
                }
                r
            })
            .collect();
        Graph::from_rows(self.n, rows)
    }

    /// Graph of the antiparallel pairs: `u ~ v` iff both arcs are present.
    pub fn symmetric_part(&self) -> Graph {
        let rows = (0..self.n)
            .map(|v| self.out_rows[v].intersection(&self.in_rows[v]))
            .collect();
        Graph::from_rows(self.n, rows)
    }

    pub fn reversed(&self) -> Digraph {
        Self::from_out_rows(self.n, self.in_rows.clone())
    }

    /// Whether listing `order` left to right puts every pair on a forward arc.
    pub fn is_transitive_clique(&self, order: &[usize]) -> bool {
        order.iter().enumerate().all(|(i, &u)| {
            order[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_arc(u, v))
        })
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

/// Either kind of graph, for interfaces that accept both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Undirected(Graph),
    Directed(Digraph),
}

impl AnyGraph {
    pub fn order(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.order(),
            AnyGraph::Directed(d) => d.order(),
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, AnyGraph::Directed(_))
    }

    /// Edge count for graphs, arc count for digraphs.
    pub fn size(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.edge_count(),
            AnyGraph::Directed(d) => d.arc_count(),
        }
    }
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Undirected(g)
    }
}

impl From<Digraph> for AnyGraph {
    fn from(d: Digraph) -> Self {
        AnyGraph::Directed(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Digraph::from_arcs(2, [(0, 0)]).is_err());
    }

    #[test]
    fn adjacency_is_symmetric_and_deduplicated() {
        let g = Graph::from_edges(4, [(0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.adjacent(1, 0) && g.adjacent(0, 1));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn complement_of_path() {
        let p = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let c = p.complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn digraph_views() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(d.symmetric_part().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(d.underlying().edge_count(), 2);
        assert_eq!(d.in_degree(0), 1);
        assert!(d.reversed().has_arc(2, 1));
        assert!(d.is_transitive_clique(&[1, 2]));
        assert!(!d.is_transitive_clique(&[2, 1]));
    }

    #[test]
    fn vertex_bound_is_enforced() {
        let too_big = max_vertices() + 1;
        assert!(matches!(Graph::empty(too_big), Err(Error::TooLarge { .. })));
    }
}
