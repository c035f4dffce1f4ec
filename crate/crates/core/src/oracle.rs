//! Exhaustive ground truth for small instances.
//!
//! Everything here is exponential and guarded by [`OracleLimit`]. Tests and
//! the CLI use it to certify pipeline output.

use crate::diamonds::{relation_class, Diamond};
use crate::error::{Error, Result};
use crate::generators::{sample_subset, Seed, Stream};
use crate::graph::{Graph, HamCycle, Orientation, Vertex, VertexPath};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    /// Largest n for Hamilton-cycle enumeration and path enumeration.
    pub max_n_cycles: usize,
    /// Largest n for subset enumeration and bitmask dynamic programming.
    pub max_n_subsets: usize,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit { max_n_cycles: 12, max_n_subsets: 20 }
    }
}

impl OracleLimit {
    fn cycles(&self, n: usize) -> Result<()> {
        if n > self.max_n_cycles {
            return Err(Error::Refused { n, limit: self.max_n_cycles });
        }
        Ok(())
    }

    fn subsets(&self, n: usize) -> Result<()> {
        if n > self.max_n_subsets {
            return Err(Error::Refused { n, limit: self.max_n_subsets });
        }
        Ok(())
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect()
}

/// Every undirected Hamilton cycle once, as `(0, v1, .., v_{n-1})` with
/// `v1 < v_{n-1}`.
pub struct HamiltonCycles {
    adj: Vec<u64>,
    path: Vec<Vertex>,
    cands: Vec<u64>,
    visited: u64,
}

impl HamiltonCycles {
    fn new(g: &Graph) -> Self {
        let adj = masks(g);
        let mut it =
            HamiltonCycles { path: Vec::with_capacity(g.n()), cands: Vec::with_capacity(g.n()), visited: 0, adj };
        if g.n() >= 3 {
            it.path.push(0);
            it.visited = 1;
            it.cands.push(it.adj[0] & !1);
        }
        it
    }
}

impl Iterator for HamiltonCycles {
    type Item = HamCycle;

    fn next(&mut self) -> Option<HamCycle> {
        let n = self.adj.len();
        while let Some(cands) = self.cands.last_mut() {
            if *cands == 0 {
                self.cands.pop();
                let v = self.path.pop().expect("stack and path move together");
                self.visited &= !(1 << v);
                continue;
            }
            let v = cands.trailing_zeros() as usize;
            *cands &= *cands - 1;
            if self.path.len() + 1 == n {
                if self.adj[v] & 1 != 0 && self.path[1] < v {
                    let mut verts = self.path.clone();
                    verts.push(v);
                    return Some(HamCycle::from_vec_unchecked(verts));
                }
                continue;
            }
            self.path.push(v);
            self.visited |= 1 << v;
            self.cands.push(self.adj[v] & !self.visited);
        }
        None
    }
}

impl OracleLimit {
    pub fn hamilton_cycles(&self, g: &Graph) -> Result<HamiltonCycles> {
        self.cycles(g.n())?;
        Ok(HamiltonCycles::new(g))
    }

    /// `profile[f]` = number of directed Hamilton cycles from vertex 0 with
    /// exactly `f` forward edges. Each undirected cycle contributes once in
    /// each sense.
    pub fn forward_profile(&self, o: &Orientation) -> Result<Vec<u64>> {
        let n = o.n();
        self.cycles(n)?;
        let mut profile = vec![0u64; n + 1];
        if n < 3 {
            return Ok(profile);
        }
        let adj = masks(o.host());
        let out: Vec<u64> = (0..n).map(|v| o.out_set(v).ones().fold(0u64, |m, w| m | 1 << w)).collect();
        let w = n + 1;
        let idx = |mask: usize, v: usize, f: usize| ((mask >> 1) * n + v) * w + f;
        let mut dp = vec![0u64; (1usize << (n - 1)) * n * w];
        dp[idx(1, 0, 0)] = 1;
        for mask in (1..1usize << n).step_by(2) {
            let mut ends = mask;
            while ends != 0 {
                let v = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                let len = mask.count_ones() as usize - 1;
                let mut next = adj[v] as usize & !mask;
                while next != 0 {
                    let x = next.trailing_zeros() as usize;
                    next &= next - 1;
                    let step = (out[v] >> x & 1) as usize;
                    for f in 0..=len {
                        let c = dp[idx(mask, v, f)];
                        if c != 0 {
                            dp[idx(mask | 1 << x, x, f + step)] += c;
                        }
                    }
                }
            }
        }
        let full = (1usize << n) - 1;
        for v in 1..n {
            if adj[v] & 1 == 0 {
                continue;
            }
            let step = (out[v] & 1) as usize;
            for f in 0..n {
                profile[f + step] += dp[idx(full, v, f)];
            }
        }
        Ok(profile)
    }

    pub fn max_forward(&self, o: &Orientation) -> Result<Option<usize>> {
        Ok(self.forward_profile(o)?.iter().rposition(|&c| c > 0))
    }

    /// Undirected Hamilton cycles whose better traversal sense has at least
    /// `threshold` forward edges.
    pub fn count_cycles_min_forward(&self, o: &Orientation, threshold: usize) -> Result<u64> {
        let n = o.n();
        let profile = self.forward_profile(o)?;
        let directed: u64 =
            profile.iter().enumerate().filter(|&(f, _)| f.max(n - f) >= threshold).map(|(_, &c)| c).sum();
        Ok(directed / 2)
    }

    pub fn hamilton_cycle_count(&self, g: &Graph) -> Result<u64> {
        let o = Orientation::low_to_high(std::sync::Arc::new(g.clone()));
        Ok(self.forward_profile(&o)?.iter().sum::<u64>() / 2)
    }

    /// `reach[mask]` = set of `v` such that some path with vertex set `mask`
    /// ends at `v`; only paths starting in `starts` are considered.
    fn path_reach(&self, g: &Graph, starts: u64) -> Result<Vec<u32>> {
        let n = g.n();
        self.subsets(n)?;
        let adj = masks(g);
        let mut reach = vec![0u32; 1usize << n];
        for v in 0..n {
            if starts >> v & 1 == 1 {
                reach[1 << v] |= 1 << v;
            }
        }
        for mask in 1..1usize << n {
            let mut ends = reach[mask];
            while ends != 0 {
                let v = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                let mut next = adj[v] as usize & !mask;
                while next != 0 {
                    let x = next.trailing_zeros() as usize;
                    next &= next - 1;
                    reach[mask | 1 << x] |= 1 << x;
                }
            }
        }
        Ok(reach)
    }

    pub fn is_hamiltonian(&self, g: &Graph) -> Result<bool> {
        let n = g.n();
        if n < 3 {
            self.subsets(n)?;
            return Ok(false);
        }
        let reach = self.path_reach(g, 1)?;
        let full = (1usize << n) - 1;
        let nb0 = masks(g)[0] as u32;
        Ok(reach[full] & nb0 != 0)
    }

    /// Number of edges of a longest path (0 for an edgeless graph).
    pub fn longest_path_len(&self, g: &Graph) -> Result<usize> {
        if g.n() == 0 {
            return Ok(0);
        }
        let reach = self.path_reach(g, u64::MAX)?;
        Ok(reach
            .iter()
            .enumerate()
            .filter(|&(_, &r)| r != 0)
            .map(|(m, _)| m.count_ones() as usize - 1)
            .max()
            .unwrap_or(0))
    }

    /// Every longest path as a directed vertex sequence (each undirected path
    /// appears in both senses).
    pub fn longest_paths(&self, g: &Graph) -> Result<Vec<VertexPath>> {
        let n = g.n();
        self.cycles(n)?;
        let target = self.longest_path_len(g)?;
        let adj = masks(g);
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(n);
        fn grow(adj: &[u64], target: usize, visited: u64, path: &mut Vec<Vertex>, out: &mut Vec<VertexPath>) {
            if path.len() == target + 1 {
                out.push(VertexPath::from_vec_unchecked(path.clone()));
                return;
            }
            let v = *path.last().expect("non-empty");
            let mut next = adj[v] & !visited;
            while next != 0 {
                let x = next.trailing_zeros() as usize;
                next &= next - 1;
                path.push(x);
                grow(adj, target, visited | 1 << x, path, out);
                path.pop();
            }
        }
        for s in 0..n {
            path.push(s);
            grow(&adj, target, 1 << s, &mut path, &mut out);
            path.pop();
        }
        Ok(out)
    }

    /// A Hamilton cycle containing every edge in `forced`, by enumeration.
    pub fn hamilton_cycle_containing(&self, g: &Graph, forced: &[(Vertex, Vertex)]) -> Result<Option<HamCycle>> {
        Ok(self.hamilton_cycles(g)?.find(|c| forced.iter().all(|&(u, v)| c.contains_edge(u, v))))
    }

    /// `{u, v}` is a non-edge whose addition makes `g` Hamiltonian or
    /// lengthens its longest path.
    pub fn is_booster(&self, g: &Graph, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v || g.has_edge(u, v) {
            return Ok(false);
        }
        let plus = Graph::from_edges(g.n(), g.edges().chain([(u, v)]))?;
        Ok(self.is_hamiltonian(&plus)? || self.longest_path_len(&plus)? > self.longest_path_len(g)?)
    }

    /// Exact β-graph check over all disjoint pairs of `⌈βn⌉`-sets.
    pub fn is_beta_graph(&self, g: &Graph, beta: f64) -> Result<Verdict<SetPair>> {
        self.cross_edge_check(g, set_size(beta, g.n())?)
    }

    /// Whether every two disjoint `s`-sets are joined by an edge.
    pub fn cross_edge_check(&self, g: &Graph, s: usize) -> Result<Verdict<SetPair>> {
        let n = g.n();
        self.subsets(n)?;
        if s == 0 || 2 * s > n {
            return Ok(Verdict::Holds);
        }
        let adj = masks(g);
        let full = (1u64 << n) - 1;
        let mut u: u64 = (1 << s) - 1;
        while u <= full {
            let mut nbhd = 0u64;
            let mut bits = u;
            while bits != 0 {
                nbhd |= adj[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            let free = full & !u & !nbhd;
            if free.count_ones() as usize >= s {
                let w = ones(free).into_iter().take(s).collect();
                return Ok(Verdict::Violated(SetPair { u: ones(u), w }));
            }
            u = next_combination(u);
        }
        Ok(Verdict::Holds)
    }

    /// Whether every pair of disjoint `k`-sets `A, B` of `d` has an arc from
    /// `A` to `B`.
    pub fn k_set_hypothesis(&self, d: &crate::expander::Digraph, k: usize) -> Result<Verdict<SetPair>> {
        let m = d.m();
        self.subsets(m)?;
        if k == 0 || 2 * k > m {
            return Ok(Verdict::Holds);
        }
        let out: Vec<u64> = (0..m).map(|v| d.out_neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w)).collect();
        let full = (1u64 << m) - 1;
        let mut a: u64 = (1 << k) - 1;
        while a <= full {
            let mut reach = 0u64;
            let mut bits = a;
            while bits != 0 {
                reach |= out[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            let free = full & !a & !reach;
            if free.count_ones() as usize >= k {
                let b = ones(free).into_iter().take(k).collect();
                return Ok(Verdict::Violated(SetPair { u: ones(a), w: b }));
            }
            a = next_combination(a);
        }
        Ok(Verdict::Holds)
    }
}

fn ones(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Gosper's hack: the next larger integer with the same popcount.
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// `⌈βn⌉`, tolerant of floating-point noise such as `0.3 * 10`.
pub fn set_size(beta: f64, n: usize) -> Result<usize> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::parameter(format!("beta must be positive, got {beta}")));
    }
    Ok((beta * n as f64 - 1e-9).ceil().max(0.0) as usize)
}

/// Two disjoint vertex sets witnessing a failed universal property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPair {
    pub u: Vec<Vertex>,
    pub w: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityViolation {
    pub u: Vec<Vertex>,
    pub w: Vec<Vertex>,
    pub density: f64,
}

pub fn enumerate_hamilton_cycles(g: &Graph) -> Result<HamiltonCycles> {
    OracleLimit::default().hamilton_cycles(g)
}

/// Best forward count over all Hamilton cycles and both senses; `None` when
/// the host has no Hamilton cycle.
pub fn oracle_max_forward(o: &Orientation) -> Result<Option<usize>> {
    OracleLimit::default().max_forward(o)
}

pub fn count_cycles_min_forward(o: &Orientation, threshold: usize) -> Result<u64> {
    OracleLimit::default().count_cycles_min_forward(o, threshold)
}

pub fn is_beta_graph(g: &Graph, beta: f64) -> Result<Verdict<SetPair>> {
    OracleLimit::default().is_beta_graph(g, beta)
}

/// Sample disjoint `⌈βn⌉`-sets and test `|d(U, W) - p| < βp`. Never returns
/// `Holds`.
pub fn is_pseudorandom_sampled(
    g: &Graph,
    beta: f64,
    p: f64,
    samples: usize,
    seed: Seed,
) -> Result<Verdict<DensityViolation>> {
    let n = g.n();
    if samples == 0 {
        return Err(Error::parameter("samples must be at least 1"));
    }
    if beta * (n as f64) < 1.0 {
        return Err(Error::parameter(format!("beta * n = {} < 1", beta * n as f64)));
    }
    let s = set_size(beta, n)?;
    if 2 * s > n {
        return Err(Error::parameter(format!("two disjoint sets of size {s} do not fit in {n} vertices")));
    }
    let mut rng = seed.rng(Stream::Sampling);
    let pool: Vec<Vertex> = (0..n).collect();
    let mut w_set = fixedbitset::FixedBitSet::with_capacity(n);
    for _ in 0..samples {
        let both = sample_subset(&mut rng, &pool, 2 * s);
        let (u, w) = both.split_at(s);
        w_set.clear();
        w.iter().for_each(|&x| w_set.insert(x));
        let density = g.edges_between(u, &w_set) as f64 / (s * s) as f64;
        if (density - p).abs() >= beta * p {
            return Ok(Verdict::Violated(DensityViolation { u: u.to_vec(), w: w.to_vec(), density }));
        }
    }
    Ok(Verdict::NoViolationFound { samples })
}

/// Every good diamond `(a, b, {c, d})` with ordered centre and `c < d`.
pub fn enumerate_good_diamonds(o: &Orientation) -> Vec<Diamond> {
    let g = o.host();
    let mut out = Vec::new();
    for a in 0..g.n() {
        for &b in g.neighbors(a) {
            let common: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&x| x != b && g.has_edge(b, x)).collect();
            for (i, &c) in common.iter().enumerate() {
                let rc = relation_class(o, a, b, c);
                for &d in &common[i + 1..] {
                    if relation_class(o, a, b, d) == rc {
                        out.push(Diamond { a, b, c, d });
                    }
                }
            }
        }
    }
    out
}
