//! Nearly-forward long paths in β-graphs.

use crate::error::{Error, Result, Stage};
use crate::graph::{Graph, Orientation, Vertex, VertexPath};

/// Simple digraph on `0..m` with sorted out-lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn empty(m: usize) -> Self {
        Digraph { out: vec![Vec::new(); m] }
    }

    /// Rejects self-arcs, out-of-range ends and repeated arcs.
    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(m: usize, arcs: I) -> Result<Self> {
        let mut d = Digraph::empty(m);
        for (u, v) in arcs {
            if u >= m || v >= m || u == v {
                return Err(Error::structural(format!("bad arc ({u},{v}) in digraph on {m} vertices")));
            }
            d.out[u].push(v);
        }
        for list in &mut d.out {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::structural("repeated arc"));
            }
        }
        Ok(d)
    }

    pub fn m(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    /// Distinct vertices joined by consecutive arcs.
    pub fn is_path(&self, seq: &[usize]) -> bool {
        let mut seen = vec![false; self.m()];
        for &v in seq {
            if v >= self.m() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        seq.windows(2).all(|w| self.has_arc(w[0], w[1]))
    }
}

/// Both inequalities `β` must satisfy for a target `δ`:
/// `(√(2β)/(1+√(2β)) − 2β)(1/(2√β) − 2) ≥ 1 − δ` and `4√β ≤ δ`.
pub fn beta_admissible(beta: f64, delta: f64) -> bool {
    let r = (2.0 * beta).sqrt();
    let lhs = (r / (1.0 + r) - 2.0 * beta) * (1.0 / (2.0 * beta.sqrt()) - 2.0);
    lhs >= 1.0 - delta && 4.0 * beta.sqrt() <= delta
}

const BETA_GRID_MAX_EXP: i32 = 60;

/// Largest `β = 2^-i` (`1 ≤ i ≤ 60`) satisfying [`beta_admissible`].
///
/// As `β → 0` the first left-hand side tends to `√2/2`, so no `β` exists
/// once `δ < 1 − √2/2 ≈ 0.293`; that case is a parameter error.
pub fn choose_beta(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::parameter(format!("delta = {delta} outside (0, 1)")));
    }
    (1..=BETA_GRID_MAX_EXP).map(|i| 2f64.powi(-i)).find(|&b| beta_admissible(b, delta)).ok_or_else(|| {
        Error::parameter(format!(
            "no beta in the grid 2^-1 .. 2^-{BETA_GRID_MAX_EXP} is admissible for delta = {delta}"
        ))
    })
}

/// Edge constant `C` making `G(n, C/n)` a `β`-graph with high probability:
/// the union bound over pairs of `βn`-sets needs `Cβ² > 2β(1 + ln(1/β))`.
pub fn beta_to_c(beta: f64) -> f64 {
    2.0 * (1.0 + (1.0 / beta).ln()) / beta
}

/// Harvest parameters for `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarvestParams {
    pub beta: f64,
    /// Length (in edges) of every harvested path.
    pub ell: usize,
    /// Number of paths.
    pub m: usize,
    /// `⌈βn⌉`, the set size in the linking lemma.
    pub k: usize,
    /// `ℓ` was lowered from `⌈1/√(2β)⌉ − 2` so that `m(ℓ+1) ≤ n`.
    pub clamped: bool,
}

impl HarvestParams {
    /// `ℓ = ⌈1/√(2β)⌉ − 2`, `m = ⌈n/(ℓ+2)⌉`, with `ℓ ≥ 1` and `m ≤ n/2`.
    /// When `m` paths of `ℓ + 1` vertices do not fit, `ℓ` drops to the largest
    /// value for which they do.
    pub fn new(n: usize, beta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::parameter(format!("n = {n} is too small to harvest paths")));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::parameter(format!("beta = {beta} outside (0, 1)")));
        }
        let raw = (1.0 / (2.0 * beta).sqrt()).ceil() as i64 - 2;
        let ell0 = raw.clamp(1, n as i64 - 1) as usize;
        let fits = |ell: usize| {
            let m = n.div_ceil(ell + 2).min(n / 2).max(1);
            (m * (ell + 1) <= n).then_some(m)
        };
        let (ell, m) = (1..=ell0)
            .rev()
            .find_map(|ell| fits(ell).map(|m| (ell, m)))
            .ok_or_else(|| Error::parameter(format!("no admissible path length for n = {n}")))?;
        Ok(HarvestParams {
            beta,
            ell,
            m,
            k: ((beta * n as f64) - 1e-9).ceil().max(1.0) as usize,
            clamped: ell != ell0 || raw < 1,
        })
    }
}

/// DFS over the arcs of `o` inside `alive`. Stops as soon as the stack holds a
/// directed path of `target` edges; otherwise runs the longest-path DP on
/// the maximal acyclic sub-digraph formed by all non-back arcs.
/// `Ok` carries a path of exactly `target` edges, `Err` the longest found.
fn gallai_roy_within(o: &Orientation, alive: &[bool], target: usize) -> std::result::Result<Vec<Vertex>, Vec<Vertex>> {
    let g = o.host();
    let n = g.n();
    let mut visited = vec![false; n];
    let mut post = Vec::with_capacity(n);
    let mut stack: Vec<(Vertex, usize)> = Vec::new();
    for root in 0..n {
        if !alive[root] || visited[root] {
            continue;
        }
        if target == 0 {
            return Ok(vec![root]);
        }
        visited[root] = true;
        stack.push((root, 0));
        while let Some((v, i)) = stack.last_mut() {
            let v = *v;
            let nb = g.neighbors(v);
            let mut next = None;
            while *i < nb.len() {
                let w = nb[*i];
                *i += 1;
                if alive[w] && !visited[w] && o.has_arc(v, w) {
                    next = Some(w);
                    break;
                }
            }
            match next {
                Some(w) => {
                    visited[w] = true;
                    stack.push((w, 0));
                    if stack.len() > target {
                        return Ok(stack.iter().map(|&(x, _)| x).collect());
                    }
                }
                None => {
                    post.push(v);
                    stack.pop();
                }
            }
        }
    }
    // reverse postorder: every non-back arc goes from an earlier to a later vertex
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in post.iter().rev().enumerate() {
        pos[v] = i;
    }
    let mut best = vec![0usize; n];
    let mut pred = vec![usize::MAX; n];
    let mut top = None::<Vertex>;
    for &v in post.iter().rev() {
        for &u in g.neighbors(v) {
            if pos[u] < pos[v] && o.has_arc(u, v) && best[u] + 1 > best[v] {
                best[v] = best[u] + 1;
                pred[v] = u;
            }
        }
        if top.is_none_or(|t| best[v] > best[t]) {
            top = Some(v);
        }
        if best[v] >= target {
            break;
        }
    }
    let Some(mut v) = top else {
        return Err(Vec::new());
    };
    let reached = best[v] >= target;
    let mut path = vec![v];
    while pred[v] != usize::MAX {
        v = pred[v];
        path.push(v);
    }
    path.reverse();
    if reached {
        Ok(path)
    } else {
        Err(path)
    }
}

/// A directed path of at least `target_len` edges (exactly `target_len` when
/// one is found; every orientation of a graph with chromatic number above
/// `target_len` has one).
pub fn gallai_roy_path(o: &Orientation, target_len: usize) -> Result<VertexPath> {
    if o.n() == 0 {
        return Err(Error::TooShort { path: Vec::new(), target: target_len });
    }
    let alive = vec![true; o.n()];
    match gallai_roy_within(o, &alive, target_len) {
        Ok(p) => Ok(VertexPath::from_vec_unchecked(p)),
        Err(path) => Err(Error::TooShort { path, target: target_len }),
    }
}

/// Longest directed path in the acyclic sub-digraph of non-back DFS arcs.
pub fn acyclic_longest_path(o: &Orientation) -> Option<VertexPath> {
    let alive = vec![true; o.n()];
    let p = match gallai_roy_within(o, &alive, usize::MAX) {
        Ok(p) | Err(p) => p,
    };
    (!p.is_empty()).then(|| VertexPath::from_vec_unchecked(p))
}

/// Greedy harvest: paths found before a stall, plus the too-short path of
/// the stalled round.
fn harvest(o: &Orientation, ell: usize, m: usize) -> (Vec<VertexPath>, Option<Vec<Vertex>>) {
    let mut alive = vec![true; o.n()];
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        match gallai_roy_within(o, &alive, ell) {
            Ok(p) => {
                for &v in &p {
                    alive[v] = false;
                }
                out.push(VertexPath::from_vec_unchecked(p));
            }
            Err(short) => return (out, Some(short)),
        }
    }
    (out, None)
}

/// `m` vertex-disjoint directed paths of exactly `ell` edges each, found one
/// at a time in the graph minus the vertices already used.
pub fn disjoint_directed_paths(o: &Orientation, ell: usize, m: usize) -> Result<Vec<VertexPath>> {
    match harvest(o, ell, m) {
        (paths, None) => Ok(paths),
        (paths, Some(_)) => Err(Error::PartialHarvest { found: paths.len(), wanted: m }),
    }
}

/// Arc `i → j` iff the last vertex of path `i` is adjacent to the first
/// vertex of path `j`.
pub fn build_linking_digraph(g: &Graph, paths: &[VertexPath]) -> Digraph {
    let m = paths.len();
    let mut d = Digraph::empty(m);
    for (i, pi) in paths.iter().enumerate() {
        let y = pi.last();
        for (j, pj) in paths.iter().enumerate() {
            if i != j && g.has_edge(y, pj.first()) {
                d.out[i].push(j);
            }
        }
    }
    d
}

/// Deepest stack of one full DFS that visits `first` before anything else.
fn deepest_stack(d: &Digraph, first: usize) -> Vec<usize> {
    let m = d.m();
    let mut visited = vec![false; m];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    for root in std::iter::once(first).chain(0..m) {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        stack.push((root, 0));
        if best.is_empty() {
            best.push(root);
        }
        while let Some((v, i)) = stack.last_mut() {
            let out = &d.out[*v];
            let mut next = None;
            while *i < out.len() {
                let w = out[*i];
                *i += 1;
                if !visited[w] {
                    next = Some(w);
                    break;
                }
            }
            match next {
                Some(w) => {
                    visited[w] = true;
                    stack.push((w, 0));
                    if stack.len() > best.len() {
                        best = stack.iter().map(|&(x, _)| x).collect();
                    }
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
    best
}

/// Longest DFS stack path over restarts from every vertex not on the best
/// path so far, at most `m` of them. If every two disjoint `k`-sets `A, B`
/// have an arc from `A` to `B`, a single DFS already reaches a stack of
/// `m − 2k + 2` vertices.
pub fn dfs_long_path(d: &Digraph) -> Vec<usize> {
    let m = d.m();
    let mut best: Vec<usize> = Vec::new();
    let mut on_best = vec![false; m];
    for s in 0..m {
        if on_best[s] {
            continue;
        }
        let cand = deepest_stack(d, s);
        if cand.len() > best.len() {
            on_best.iter_mut().for_each(|b| *b = false);
            for &v in &cand {
                on_best[v] = true;
            }
            best = cand;
            if best.len() == m {
                break;
            }
        }
    }
    best
}

/// Harvested paths, the order they are chained in, and the joining edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StitchPlan {
    pub paths: Vec<VertexPath>,
    /// Indices into `paths`, in walk order.
    pub order: Vec<usize>,
    /// `(y, x)`: last vertex of one path, first vertex of the next.
    pub link_edges: Vec<(Vertex, Vertex)>,
}

impl StitchPlan {
    /// Chain `paths` along `order`; every link must be a host edge.
    pub fn new(g: &Graph, paths: Vec<VertexPath>, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; paths.len()];
        for &i in &order {
            if i >= paths.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::structural(format!("bad stitch order {order:?}")));
            }
        }
        let link_edges: Vec<(Vertex, Vertex)> =
            order.windows(2).map(|w| (paths[w[0]].last(), paths[w[1]].first())).collect();
        if let Some(&(y, x)) = link_edges.iter().find(|&&(y, x)| !g.has_edge(y, x)) {
            return Err(Error::structural(format!("link {{{y},{x}}} is not an edge")));
        }
        Ok(StitchPlan { paths, order, link_edges })
    }

    /// The walk `x_1 →P_1→ y_1 → x_2 → … → y_{t+1}`, validated as a path.
    pub fn assemble(&self, g: &Graph) -> Result<VertexPath> {
        let verts: Vec<Vertex> = self.order.iter().flat_map(|&i| self.paths[i].vertices().iter().copied()).collect();
        VertexPath::new(g, verts)
    }

    /// Number of link edges, `t`.
    pub fn t(&self) -> usize {
        self.link_edges.len()
    }
}

/// Steps of `p` that run against their arc.
pub fn backward_steps(p: &VertexPath, o: &Orientation) -> usize {
    p.steps().filter(|&(u, v)| !o.has_arc(u, v)).count()
}

/// Output of the stitching pipeline, whether or not the bounds were met.
#[derive(Clone, Debug)]
pub struct NearlyForward {
    pub path: VertexPath,
    pub backward: usize,
    pub plan: StitchPlan,
    pub params: HarvestParams,
    pub delta: f64,
    /// Vertex count of the host.
    pub n: usize,
    /// Paths of length `ℓ` harvested (at most `m`).
    pub harvested: usize,
    /// All `m` paths were harvested.
    pub full_harvest: bool,
    /// `t ≥ m − 2⌈βn⌉ − 1`.
    pub link_guarantee_met: bool,
}

impl NearlyForward {
    /// Edges of the stitched path.
    pub fn length(&self) -> usize {
        self.path.len()
    }

    /// `length ≥ (1−δ)n` and `backward ≤ δn`.
    pub fn bounds_met(&self) -> bool {
        let n = self.n as f64;
        self.length() as f64 >= (1.0 - self.delta) * n - 1e-9 && self.backward as f64 <= self.delta * n + 1e-9
    }

    /// Parameter arithmetic behind the bounds, when the link guarantee holds:
    /// `(t+1)ℓ ≥ (1−δ)n` and `t ≤ m ≤ 4√β·n ≤ δn`. `None` when the guarantee
    /// failed or `ℓ` was clamped (the inequalities assume the raw `ℓ`).
    pub fn arithmetic_holds(&self) -> Option<bool> {
        if !self.link_guarantee_met || self.params.clamped {
            return None;
        }
        let (n, t) = (self.n as f64, self.plan.t());
        let p = &self.params;
        let cover = ((t + 1) * p.ell) as f64 >= (1.0 - self.delta) * n - 1e-9;
        let few = t <= p.m
            && p.m as f64 <= 4.0 * p.beta.sqrt() * n + 1e-9
            && 4.0 * p.beta.sqrt() * n <= self.delta * n + 1e-9;
        Some(cover && few)
    }
}

/// Stitching pipeline without the final bound check. Fails only when not a
/// single path can be harvested.
///
/// A stalled harvest keeps the paths found so far; if there are none, the
/// longest directed path of the stalled round stands alone.
pub fn stitch_nearly_forward(o: &Orientation, delta: f64) -> Result<NearlyForward> {
    let beta = choose_beta(delta)?;
    let n = o.n();
    let params = HarvestParams::new(n, beta)?;
    let (mut paths, stall) = harvest(o, params.ell, params.m);
    let full_harvest = stall.is_none();
    let harvested = paths.len();
    if paths.is_empty() {
        match stall {
            Some(p) if !p.is_empty() => paths.push(VertexPath::from_vec_unchecked(p)),
            _ => return Err(Error::PartialHarvest { found: 0, wanted: params.m }),
        }
    }
    let f = build_linking_digraph(o.host(), &paths);
    let order = dfs_long_path(&f);
    let m_found = paths.len();
    let plan = StitchPlan::new(o.host(), paths, order)
        .map_err(|e| Error::BoundViolation { stage: Stage::Stitch, detail: e.to_string() })?;
    let path =
        plan.assemble(o.host()).map_err(|e| Error::BoundViolation { stage: Stage::Stitch, detail: e.to_string() })?;
    let backward = backward_steps(&path, o);
    debug_assert!(backward <= plan.t());
    let link_guarantee_met = full_harvest && plan.t() + 2 * params.k + 1 >= m_found;
    Ok(NearlyForward { path, backward, plan, params, delta, n, harvested, full_harvest, link_guarantee_met })
}

/// A path of at least `(1−δ)n` edges with at most `δn` of them backwards,
/// for hosts that are `β`-graphs with `β = choose_beta(δ)`.
pub fn nearly_forward_path(o: &Orientation, delta: f64) -> Result<NearlyForward> {
    let r = stitch_nearly_forward(o, delta)?;
    if !r.full_harvest {
        return Err(Error::PartialHarvest { found: r.harvested, wanted: r.params.m });
    }
    if !r.bounds_met() {
        return Err(Error::BoundViolation {
            stage: Stage::Stitch,
            detail: format!(
                "length {} / backward {} against n = {}, delta = {delta} (host is likely not a {}-graph)",
                r.length(),
                r.backward,
                r.n,
                r.params.beta
            ),
        });
    }
    Ok(r)
}
