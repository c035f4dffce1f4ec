//! Good diamonds: classification, extraction, disjoint packing and the two
//! positive paths between the ends.
//!
//! A diamond has centre `a, b` and ends `c, d` with the five edges
//! `ab, ac, ad, bc, bd`. It is *good* when `c` and `d` relate to the centre in
//! the same way, i.e. the arcs between `c` and `{a, b}` point the same way as
//! those between `d` and `{a, b}`. The direction of `ab` is irrelevant.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result, SearchFailure, Stage};
use crate::graph::{path_balance, Graph, Orientation, Vertex, VertexPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Diamond {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub d: Vertex,
}

impl Diamond {
    /// Validate distinctness and the five diamond edges.
    pub fn new(g: &Graph, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> Result<Self> {
        let dia = Diamond { a, b, c, d };
        dia.check(g)?;
        Ok(dia)
    }

    pub fn vertices(&self) -> [Vertex; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn edges(&self) -> [(Vertex, Vertex); 5] {
        [(self.a, self.b), (self.a, self.c), (self.a, self.d), (self.b, self.c), (self.b, self.d)]
    }

    fn check(&self, g: &Graph) -> Result<()> {
        let vs = self.vertices();
        for i in 0..4 {
            for j in i + 1..4 {
                if vs[i] == vs[j] {
                    return Err(Error::structural(format!("diamond vertices not distinct: {vs:?}")));
                }
            }
        }
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                return Err(Error::structural(format!("diamond edge {{{u},{v}}} missing")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondClass {
    Good,
    NotGood,
}

/// Two positive length-3 paths inside a good diamond: `p` from `c` to `d`,
/// `q` from `d` to `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondPaths {
    pub p: VertexPath,
    pub q: VertexPath,
}

/// Relation of `x` to the centre `(a, b)` as two bits: bit 0 set iff `x -> a`,
/// bit 1 set iff `x -> b`.
#[inline]
pub fn relation_class(o: &Orientation, a: Vertex, b: Vertex, x: Vertex) -> u8 {
    u8::from(o.has_arc(x, a)) | (u8::from(o.has_arc(x, b)) << 1)
}

pub fn classify_diamond(o: &Orientation, dia: &Diamond) -> Result<DiamondClass> {
    dia.check(o.host())?;
    let same = relation_class(o, dia.a, dia.b, dia.c) == relation_class(o, dia.a, dia.b, dia.d);
    Ok(if same { DiamondClass::Good } else { DiamondClass::NotGood })
}

/// Edge lying in the most triangles, together with the apexes of those triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyEdge {
    pub a: Vertex,
    pub b: Vertex,
    pub common: Vec<Vertex>,
}

/// The edge with the most common neighbours (first in canonical order on ties).
pub fn heavy_triangle_edge(g: &Graph) -> Result<HeavyEdge> {
    let mut alive = FixedBitSet::with_capacity(g.n());
    alive.insert_range(..);
    heavy_edge_within(g, &alive).ok_or(Error::NoTriangle)
}

fn heavy_edge_within(g: &Graph, alive: &FixedBitSet) -> Option<HeavyEdge> {
    let mut best: Option<(usize, Vertex, Vertex)> = None;
    let mut scratch = FixedBitSet::with_capacity(g.n());
    for a in alive.ones() {
        scratch.clone_from(g.neighbor_set(a));
        scratch.intersect_with(alive);
        for &b in g.neighbors(a) {
            if b <= a || !alive.contains(b) {
                continue;
            }
            let t = scratch.intersection_count(g.neighbor_set(b));
            if t > 0 && best.is_none_or(|(bt, _, _)| t > bt) {
                best = Some((t, a, b));
            }
        }
    }
    let (_, a, b) = best?;
    let common = g.neighbors(a).iter().copied().filter(|&x| alive.contains(x) && g.has_edge(b, x)).collect();
    Some(HeavyEdge { a, b, common })
}

/// Pigeonhole over the four relation classes of the triangle apexes.
fn pigeonhole(o: &Orientation, heavy: &HeavyEdge) -> Option<Diamond> {
    let mut first: [Option<Vertex>; 4] = [None; 4];
    for &x in &heavy.common {
        let class = relation_class(o, heavy.a, heavy.b, x) as usize;
        match first[class] {
            Some(c) => return Some(Diamond { a: heavy.a, b: heavy.b, c, d: x }),
            None => first[class] = Some(x),
        }
    }
    None
}

fn first_good_within(o: &Orientation, alive: &FixedBitSet) -> Option<Diamond> {
    let g = o.host();
    for a in alive.ones() {
        for &b in g.neighbors(a) {
            if b <= a || !alive.contains(b) {
                continue;
            }
            let common: Vec<Vertex> =
                g.neighbors(a).iter().copied().filter(|&x| alive.contains(x) && g.has_edge(b, x)).collect();
            if let Some(d) = pigeonhole(o, &HeavyEdge { a, b, common }) {
                return Some(d);
            }
        }
    }
    None
}

fn good_diamond_within(o: &Orientation, alive: &FixedBitSet) -> Result<Diamond> {
    let heavy = heavy_edge_within(o.host(), alive)
        .ok_or_else(|| Error::not_found(Stage::Diamonds, SearchFailure::Infeasible, "no triangle left"))?;
    if let Some(d) = pigeonhole(o, &heavy) {
        return Ok(d);
    }
    first_good_within(o, alive)
        .ok_or_else(|| Error::not_found(Stage::Diamonds, SearchFailure::Infeasible, "no good diamond"))
}

/// A good diamond: the heaviest triangle edge plus pigeonhole over its
/// apexes, falling back to a full scan when that edge has too few apexes.
pub fn find_good_diamond(o: &Orientation) -> Result<Diamond> {
    let mut alive = FixedBitSet::with_capacity(o.n());
    alive.insert_range(..);
    good_diamond_within(o, &alive)
}

/// `k` vertex-disjoint good diamonds, extracted one at a time from the graph
/// induced by the vertices not used so far.
pub fn find_disjoint_good_diamonds(o: &Orientation, k: usize) -> Result<Vec<Diamond>> {
    let mut alive = FixedBitSet::with_capacity(o.n());
    alive.insert_range(..);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        match good_diamond_within(o, &alive) {
            Ok(d) => {
                for v in d.vertices() {
                    alive.set(v, false);
                }
                out.push(d);
            }
            Err(_) => return Err(Error::DiamondsExhausted { found: out.len(), wanted: k }),
        }
    }
    Ok(out)
}

/// Edge threshold under which `k` disjoint good diamonds are guaranteed:
/// `n²/4 + 2(k-1)n - 4k² + 6k - 1`.
pub fn disjoint_diamond_edge_threshold(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k as f64);
    n * n / 4.0 + 2.0 * (k - 1.0) * n - 4.0 * k * k + 6.0 * k - 1.0
}

pub fn positive_paths(o: &Orientation, dia: &Diamond) -> Result<DiamondPaths> {
    if classify_diamond(o, dia)? != DiamondClass::Good {
        return Err(Error::Precondition(format!("{dia:?} is not good")));
    }
    let g = o.host();
    let pick = |from: Vertex, to: Vertex| -> Result<VertexPath> {
        for (x, y) in [(dia.a, dia.b), (dia.b, dia.a)] {
            let p = VertexPath::new(g, vec![from, x, y, to])?;
            if path_balance(&p, o)? > 0 {
                return Ok(p);
            }
        }
        unreachable!("a good diamond always has a positive path between its ends")
    };
    Ok(DiamondPaths { p: pick(dia.c, dia.d)?, q: pick(dia.d, dia.c)? })
}
