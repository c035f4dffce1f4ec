//! Seeded instance generators.
//!
//! Every generator draws from ChaCha8 (portable, value-stable across
//! platforms). The 64-bit seed keys the cipher and each generator kind uses
//! its own ChaCha stream id, so for example the orientation of a graph never
//! shares randomness with the graph itself. Inside a stream, draws are
//! consumed in canonical edge order `(0,1), (0,2), ..., (n-2,n-1)`: pair `i`
//! of that order always sees the `i`-th draw.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, Vertex};

/// 64-bit experiment seed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed(pub u64);

/// ChaCha stream ids, one per consumer of randomness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Gnp = 1,
    Gnm = 2,
    Orientation = 3,
    Tournament = 4,
    MinDegree = 5,
    Forest = 6,
    Sampling = 7,
    Partition = 8,
    Split = 9,
    Subgraph = 10,
    Search = 11,
}

impl Seed {
    /// Fresh generator for one stream of this seed.
    pub fn rng(self, stream: Stream) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream as u64);
        rng
    }

    /// Seed of trial `i` in a batch started from `self`.
    pub fn trial(self, i: u64) -> Seed {
        Seed(self.0.wrapping_add(i))
    }

    /// Independent child seed, derived by hashing through the cipher.
    pub fn child(self, tag: u64) -> Seed {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(0x5eed_0000 + tag);
        Seed(rng.next_u64())
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

/// Integer acceptance threshold for probability `p`: accept iff `draw < t`.
fn threshold(p: f64) -> Option<u64> {
    if p >= 1.0 {
        None
    } else {
        Some((p * 18_446_744_073_709_551_616.0) as u64)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::parameter(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// `G(n, p)`.
pub fn gen_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    check_probability(p)?;
    if n == 0 {
        return Err(Error::parameter("n must be at least 1"));
    }
    let Some(t) = threshold(p) else {
        return Ok(Graph::complete(n));
    };
    let mut rng = seed.rng(Stream::Gnp);
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_u64() < t {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    Ok(Graph::from_bitsets(adj))
}

/// Uniform graph with exactly `m` edges.
pub fn gen_gnm(n: usize, m: usize, seed: Seed) -> Result<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::parameter(format!("{m} edges do not fit on {n} vertices")));
    }
    let mut rng = seed.rng(Stream::Gnm);
    let mut idx = rand::seq::index::sample(&mut rng, pairs, m).into_vec();
    idx.sort_unstable();
    let mut edges = Vec::with_capacity(m);
    let (mut u, mut row_start) = (0usize, 0usize);
    for i in idx {
        while i >= row_start + (n - 1 - u) {
            row_start += n - 1 - u;
            u += 1;
        }
        edges.push((u, u + 1 + (i - row_start)));
    }
    Graph::from_edges(n, edges)
}

/// `K_n`.
pub fn gen_complete(n: usize) -> Graph {
    Graph::complete(n)
}

/// Vertex classes of the extremal construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalInstance {
    pub orientation: Orientation,
    /// `A = 0..n-delta`.
    pub a: Vec<Vertex>,
    /// `B = n-delta..n`.
    pub b: Vec<Vertex>,
}

impl ExtremalInstance {
    pub fn graph(&self) -> &Graph {
        self.orientation.host()
    }
}

/// Every pair touching `B` is an edge, `A`–`B` edges point into `B`, and
/// edges inside `B` go from low id to high id. `δ(G) = delta` and no Hamilton
/// cycle has more than `delta` forward edges in either sense.
pub fn gen_extremal_ab(n: usize, delta: usize) -> Result<ExtremalInstance> {
    if n < 3 {
        return Err(Error::parameter("extremal construction needs n >= 3"));
    }
    if 2 * delta < n || delta >= n {
        return Err(Error::parameter(format!(
            "extremal construction needs n/2 <= delta < n (n = {n}, delta = {delta})"
        )));
    }
    let split = n - delta;
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(_, v)| v >= split);
    let g = Arc::new(Graph::from_edges(n, edges)?);
    // canonical u < v: either u in A (points to v in B) or both in B (low -> high)
    let orientation = Orientation::low_to_high(g);
    Ok(ExtremalInstance { orientation, a: (0..split).collect(), b: (split..n).collect() })
}

/// Independent fair direction for every edge of `g`.
pub fn gen_random_orientation(g: Arc<Graph>, seed: Seed) -> Orientation {
    orient_with_stream(g, seed, Stream::Orientation)
}

/// Random tournament on `n` vertices.
pub fn gen_random_tournament(n: usize, seed: Seed) -> Orientation {
    orient_with_stream(Arc::new(Graph::complete(n)), seed, Stream::Tournament)
}

fn orient_with_stream(g: Arc<Graph>, seed: Seed, stream: Stream) -> Orientation {
    let mut rng = seed.rng(stream);
    let mut word = 0u64;
    let mut left = 0u32;
    Orientation::from_fn(g, |_, _| {
        if left == 0 {
            word = rng.next_u64();
            left = 64;
        }
        let bit = word & 1 == 1;
        word >>= 1;
        left -= 1;
        bit
    })
}

/// Random graph with `δ(G) >= min_degree`: start from `K_n` and delete edges
/// in uniformly random order whenever both ends stay at or above the bound.
pub fn gen_min_degree(n: usize, min_degree: usize, seed: Seed) -> Result<Graph> {
    if n == 0 || min_degree >= n {
        return Err(Error::parameter(format!("min degree {min_degree} impossible on {n} vertices")));
    }
    let mut rng = seed.rng(Stream::MinDegree);
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    edges.shuffle(&mut rng);
    let mut deg = vec![n - 1; n];
    let mut keep = Vec::new();
    for (u, v) in edges {
        if deg[u] > min_degree && deg[v] > min_degree {
            deg[u] -= 1;
            deg[v] -= 1;
        } else {
            keep.push((u, v));
        }
    }
    Graph::from_edges(n, keep)
}

/// Random linear forest with up to `t` edges of `g`, built by scanning the
/// edges in random order and keeping those that preserve max degree 2 and
/// acyclicity.
pub fn gen_linear_forest(g: &Graph, t: usize, seed: Seed) -> Vec<(Vertex, Vertex)> {
    let mut rng = seed.rng(Stream::Forest);
    let mut edges: Vec<_> = g.edges().collect();
    edges.shuffle(&mut rng);
    let n = g.n();
    let mut deg = vec![0u8; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut out = Vec::new();
    for (u, v) in edges {
        if out.len() == t {
            break;
        }
        if deg[u] >= 2 || deg[v] >= 2 {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            continue;
        }
        parent[ru] = rv;
        deg[u] += 1;
        deg[v] += 1;
        out.push((u, v));
    }
    out
}

/// Uniform random subset of `pool` of size `k`.
pub(crate) fn sample_subset<R: Rng>(rng: &mut R, pool: &[Vertex], k: usize) -> Vec<Vertex> {
    rand::seq::index::sample(rng, pool.len(), k).into_iter().map(|i| pool[i]).collect()
}
