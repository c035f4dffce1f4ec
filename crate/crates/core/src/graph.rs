//! Graphs, orientations, paths and Hamilton cycles.
//!
//! Vertices are dense ids `0..n`. An undirected edge is stored canonically as
//! `(min, max)`; an orientation bit of `true` means the arc runs from the
//! smaller id to the larger one.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Canonical form of the unordered pair `{u, v}`.
#[inline]
pub fn canonical(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph on `0..n`.
///
/// Holds both a sorted adjacency list (CSR) and a bitset adjacency matrix so
/// that neighbour iteration and membership tests are both cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    nbrs: Vec<Vertex>,
    adj: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("m", &self.edge_count()).finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_bitsets(vec![FixedBitSet::with_capacity(n); n])
    }

    /// Build from an edge list, rejecting loops, duplicates and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::structural(format!("edge {{{u},{v}}} has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::structural(format!("self-loop at {u}")));
            }
            if adj[u].contains(v) {
                return Err(Error::structural(format!("duplicate edge {{{u},{v}}}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Self::from_bitsets(adj))
    }

    /// Build from a symmetric, loop-free adjacency matrix.
    pub(crate) fn from_bitsets(adj: Vec<FixedBitSet>) -> Self {
        let n = adj.len();
        debug_assert!((0..n).all(|v| !adj[v].contains(v)));
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let total: usize = adj.iter().map(|row| row.count_ones(..)).sum();
        let mut nbrs = Vec::with_capacity(total);
        for row in &adj {
            nbrs.extend(row.ones());
            offsets.push(nbrs.len());
        }
        Graph { n, offsets, nbrs, adj }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert_range(..);
                row.set(v, false);
                row
            })
            .collect();
        Self::from_bitsets(adj)
    }

    /// The cycle `0, 1, ..., n-1, 0`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    /// The path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `e(G)`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.nbrs.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbours of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.nbrs[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Neighbourhood of `v` as a bitset over `0..n`.
    #[inline]
    pub fn neighbor_set(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    /// Number of common neighbours of `u` and `v`.
    #[inline]
    pub fn common_neighbor_count(&self, u: Vertex, v: Vertex) -> usize {
        self.adj[u].intersection_count(&self.adj[v])
    }

    /// `δ(G)`; zero for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `Δ(G)`.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Canonical edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Subgraph induced by `verts`; vertex `verts[i]` becomes `i`.
    pub fn induced(&self, verts: &[Vertex]) -> Graph {
        let k = verts.len();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![FixedBitSet::with_capacity(k); k];
        for (i, &v) in verts.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX {
                    adj[i].insert(j);
                }
            }
        }
        Graph::from_bitsets(adj)
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint sets).
    pub fn edges_between(&self, a: &[Vertex], b: &FixedBitSet) -> usize {
        a.iter().map(|&u| self.adj[u].intersection_count(b)).sum()
    }

    /// Vertices adjacent to some member of `set` but not in it.
    pub fn external_neighborhood(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n);
        for v in set.ones() {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(set);
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen.put(w) {
                    stack.push(w);
                }
            }
        }
        seen.count_ones(..) == self.n
    }
}

/// Orientation `D` of a host graph: exactly one arc per host edge.
#[derive(Clone)]
pub struct Orientation {
    host: Arc<Graph>,
    out: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Orientation").field("host", &self.host).finish()
    }
}

impl PartialEq for Orientation {
    fn eq(&self, other: &Self) -> bool {
        self.host == other.host && self.out == other.out
    }
}

impl Eq for Orientation {}

impl Orientation {
    /// Orient every host edge by `low_to_high(u, v)` for canonical `u < v`.
    pub fn from_fn<F>(host: Arc<Graph>, mut low_to_high: F) -> Self
    where
        F: FnMut(Vertex, Vertex) -> bool,
    {
        let n = host.n();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in host.edges() {
            if low_to_high(u, v) {
                out[u].insert(v);
            } else {
                out[v].insert(u);
            }
        }
        Orientation { host, out }
    }

    /// Orient from an explicit arc list; every host edge must appear exactly once.
    pub fn from_arcs<I>(host: Arc<Graph>, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let n = host.n();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        let mut seen = 0usize;
        for (u, v) in arcs {
            if !host.has_edge(u, v) {
                return Err(Error::structural(format!("arc {u}->{v} is not a host edge")));
            }
            if out[u].contains(v) || out[v].contains(u) {
                return Err(Error::structural(format!("edge {{{u},{v}}} oriented twice")));
            }
            out[u].insert(v);
            seen += 1;
        }
        if seen != host.edge_count() {
            return Err(Error::structural(format!("{} of {} host edges oriented", seen, host.edge_count())));
        }
        Ok(Orientation { host, out })
    }

    /// Every edge from the smaller id to the larger one.
    pub fn low_to_high(host: Arc<Graph>) -> Self {
        Self::from_fn(host, |_, _| true)
    }

    #[inline]
    pub fn host(&self) -> &Graph {
        &self.host
    }

    #[inline]
    pub fn host_arc(&self) -> &Arc<Graph> {
        &self.host
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.host.n()
    }

    /// `(u, v) ∈ E(D)`.
    #[inline]
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].contains(v)
    }

    /// Canonical direction bit of `{u, v}`; `None` for non-edges.
    pub fn bit(&self, u: Vertex, v: Vertex) -> Option<bool> {
        let (a, b) = canonical(u, v);
        if !self.host.has_edge(a, b) {
            return None;
        }
        Some(self.out[a].contains(b))
    }

    #[inline]
    pub fn out_set(&self, v: Vertex) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].count_ones(..)
    }

    /// All arcs `(tail, head)`, ordered by canonical edge.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.host.edges().map(move |(u, v)| if self.out[u].contains(v) { (u, v) } else { (v, u) })
    }

    /// Restriction to the subgraph induced by `verts`; `verts[i]` becomes `i`.
    pub fn induced(&self, verts: &[Vertex]) -> Orientation {
        let sub = Arc::new(self.host.induced(verts));
        Orientation::from_fn(sub, |i, j| self.has_arc(verts[i], verts[j]))
    }

    /// The same host with every arc reversed.
    pub fn reversed(&self) -> Orientation {
        Orientation::from_fn(self.host.clone(), |u, v| !self.has_arc(u, v))
    }

    /// `+1` if the step `u -> v` follows its arc, `-1` if it goes against it.
    #[inline]
    pub(crate) fn step_sign(&self, u: Vertex, v: Vertex) -> i64 {
        if self.out[u].contains(v) {
            1
        } else {
            -1
        }
    }
}

/// A simple path, listed first to last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPath {
    verts: Vec<Vertex>,
}

impl VertexPath {
    /// Validate `verts` as a path of `g`.
    pub fn new(g: &Graph, verts: Vec<Vertex>) -> Result<Self> {
        validate_walk(g, &verts, false)?;
        Ok(VertexPath { verts })
    }

    pub(crate) fn from_vec_unchecked(verts: Vec<Vertex>) -> Self {
        debug_assert!(!verts.is_empty());
        VertexPath { verts }
    }

    /// Number of edges. Paths always have a vertex, so `is_trivial` plays
    /// the role of `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    #[inline]
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    /// A single-vertex path has no edges.
    #[inline]
    pub fn is_trivial(&self) -> bool {
        self.verts.len() == 1
    }

    #[inline]
    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.verts
    }

    #[inline]
    pub fn first(&self) -> Vertex {
        self.verts[0]
    }

    #[inline]
    pub fn last(&self) -> Vertex {
        *self.verts.last().unwrap()
    }

    pub fn reversed(&self) -> VertexPath {
        let mut verts = self.verts.clone();
        verts.reverse();
        VertexPath { verts }
    }

    /// Consecutive vertex pairs, first to last.
    pub fn steps(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.verts.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        validate_walk(g, &self.verts, false).is_ok()
    }
}

/// A Hamilton cycle with a fixed traversal sense: the order of `verts`,
/// wrapping from last back to first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamCycle {
    verts: Vec<Vertex>,
}

impl HamCycle {
    /// Validate `verts` as a Hamilton cycle of `g`.
    pub fn new(g: &Graph, verts: Vec<Vertex>) -> Result<Self> {
        if verts.len() != g.n() {
            return Err(Error::structural(format!("cycle has {} vertices, host has {}", verts.len(), g.n())));
        }
        if verts.len() < 3 {
            return Err(Error::structural("a Hamilton cycle needs n >= 3"));
        }
        validate_walk(g, &verts, true)?;
        Ok(HamCycle { verts })
    }

    pub(crate) fn from_vec_unchecked(verts: Vec<Vertex>) -> Self {
        HamCycle { verts }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.verts.len()
    }

    #[inline]
    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.verts
    }

    /// The same cycle traversed in the opposite sense.
    pub fn reversed(&self) -> HamCycle {
        let mut verts = self.verts.clone();
        verts.reverse();
        HamCycle { verts }
    }

    /// Consecutive pairs `(v_i, v_{i+1})`, indices mod `n`.
    pub fn steps(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| (self.verts[i], self.verts[(i + 1) % n]))
    }

    /// Whether `{u, v}` is one of the cycle's edges.
    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        let n = self.verts.len();
        match self.verts.iter().position(|&x| x == u) {
            Some(i) => self.verts[(i + 1) % n] == v || self.verts[(i + n - 1) % n] == v,
            None => false,
        }
    }

    /// Position of every vertex along the cycle.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.verts.len()];
        for (i, &v) in self.verts.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.verts.len() == g.n() && validate_walk(g, &self.verts, true).is_ok()
    }
}

fn validate_walk(g: &Graph, verts: &[Vertex], closed: bool) -> Result<()> {
    if verts.is_empty() {
        return Err(Error::structural("empty vertex sequence"));
    }
    let mut seen = FixedBitSet::with_capacity(g.n());
    for &v in verts {
        if v >= g.n() {
            return Err(Error::structural(format!("vertex {v} outside 0..{}", g.n())));
        }
        if seen.put(v) {
            return Err(Error::structural(format!("vertex {v} repeats")));
        }
    }
    for w in verts.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::structural(format!("consecutive vertices {} and {} are not adjacent", w[0], w[1])));
        }
    }
    if closed {
        let (a, b) = (verts[verts.len() - 1], verts[0]);
        if !g.has_edge(a, b) {
            return Err(Error::structural(format!("closing vertices {a} and {b} are not adjacent")));
        }
    }
    Ok(())
}

/// `e⃗_D(C)`: number of `i` with `(v_i, v_{i+1}) ∈ E(D)`.
pub fn forward_count(cycle: &HamCycle, o: &Orientation) -> Result<usize> {
    if !cycle.is_valid_in(o.host()) {
        return Err(Error::structural("cycle is not a Hamilton cycle of the host"));
    }
    Ok(cycle.steps().filter(|&(u, v)| o.has_arc(u, v)).count())
}

/// The cycle or its reversal, whichever has more forward edges; ties keep the input.
pub fn best_direction(cycle: &HamCycle, o: &Orientation) -> Result<HamCycle> {
    let f = forward_count(cycle, o)?;
    if 2 * f >= cycle.n() {
        Ok(cycle.clone())
    } else {
        Ok(cycle.reversed())
    }
}

/// `#forward - #backward` traversing `p` first to last.
pub fn path_balance(p: &VertexPath, o: &Orientation) -> Result<i64> {
    if !p.is_valid_in(o.host()) {
        return Err(Error::structural("path is not a path of the host"));
    }
    Ok(p.steps().map(|(u, v)| o.step_sign(u, v)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_with(arcs: &[(usize, usize)]) -> Orientation {
        Orientation::from_arcs(Arc::new(Graph::complete(3)), arcs.iter().copied()).unwrap()
    }

    #[test]
    fn forward_count_cyclic_triangle() {
        let o = k3_with(&[(0, 1), (1, 2), (2, 0)]);
        let c = HamCycle::new(o.host(), vec![0, 1, 2]).unwrap();
        assert_eq!(forward_count(&c, &o).unwrap(), 3);
    }

    #[test]
    fn forward_count_one_backward_edge() {
        let o = k3_with(&[(0, 1), (2, 1), (2, 0)]);
        let c = HamCycle::new(o.host(), vec![0, 1, 2]).unwrap();
        assert_eq!(forward_count(&c, &o).unwrap(), 2);
    }

    #[test]
    fn forward_count_rejects_foreign_cycle() {
        let o = k3_with(&[(0, 1), (1, 2), (2, 0)]);
        let c = HamCycle::new(&Graph::complete(4), vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(forward_count(&c, &o), Err(Error::Structural(_))));
    }

    #[test]
    fn best_direction_cases() {
        let o = k3_with(&[(0, 1), (2, 1), (2, 0)]);
        // (0,2,1): 0-2 backward, 2->1 forward, 1-0 backward -> f = 1
        let c = HamCycle::new(o.host(), vec![0, 2, 1]).unwrap();
        assert_eq!(forward_count(&c, &o).unwrap(), 1);
        let b = best_direction(&c, &o).unwrap();
        assert_eq!(b, c.reversed());
        assert_eq!(forward_count(&b, &o).unwrap(), 2);

        let cyc = k3_with(&[(0, 1), (1, 2), (2, 0)]);
        let c = HamCycle::new(cyc.host(), vec![0, 1, 2]).unwrap();
        assert_eq!(best_direction(&c, &cyc).unwrap(), c);
    }

    #[test]
    fn best_direction_tie_keeps_input() {
        let g = Arc::new(Graph::cycle(4));
        let o = Orientation::from_arcs(g.clone(), [(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap();
        let c = HamCycle::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(forward_count(&c, &o).unwrap(), 2);
        assert_eq!(best_direction(&c, &o).unwrap(), c);
    }

    #[test]
    fn path_balance_examples() {
        let g = Arc::new(Graph::path(3));
        let o = Orientation::from_arcs(g.clone(), [(0, 1), (1, 2)]).unwrap();
        let p = VertexPath::new(&g, vec![0, 1, 2]).unwrap();
        assert_eq!(path_balance(&p, &o).unwrap(), 2);
        assert_eq!(path_balance(&p.reversed(), &o).unwrap(), -2);

        let o = Orientation::from_arcs(g.clone(), [(1, 0), (1, 2)]).unwrap();
        assert_eq!(path_balance(&p, &o).unwrap(), 0);
    }

    #[test]
    fn degree_statistics() {
        let k5 = Graph::complete(5);
        assert_eq!((k5.min_degree(), k5.max_degree(), k5.edge_count()), (4, 4, 10));
        let star = Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        assert_eq!((star.min_degree(), star.max_degree(), star.edge_count()), (1, 4, 4));
        let e = Graph::empty(3);
        assert_eq!((e.min_degree(), e.max_degree(), e.edge_count()), (0, 0, 0));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn orientation_must_cover_each_edge_once() {
        let g = Arc::new(Graph::complete(3));
        assert!(Orientation::from_arcs(g.clone(), [(0, 1), (1, 2)]).is_err());
        assert!(Orientation::from_arcs(g.clone(), [(0, 1), (1, 0), (1, 2)]).is_err());
        let o = Orientation::from_arcs(g, [(1, 0), (1, 2), (0, 2)]).unwrap();
        assert_eq!(o.bit(0, 1), Some(false));
        assert_eq!(o.bit(2, 1), Some(true));
    }

    #[test]
    fn induced_relabels() {
        let g = Arc::new(Graph::cycle(5));
        let o = Orientation::low_to_high(g);
        let sub = o.induced(&[4, 0, 1]);
        assert_eq!(sub.host().edge_count(), 2);
        // 4-0 is oriented 0->4, i.e. new 1 -> new 0
        assert!(sub.has_arc(1, 0));
        assert!(sub.has_arc(1, 2));
    }
}
