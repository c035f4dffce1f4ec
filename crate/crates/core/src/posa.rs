//! Rotation–extension.
//!
//! A path `v0 .. vt` with a chord `{vt, vi}` rotates into
//! `v0 .. vi vt .. v(i+1)`: same vertex set, same fixed end `v0`, new free
//! end `v(i+1)`. The engine explores rotations depth-first, reversing path
//! suffixes in place and undoing them on backtrack, so every reachable free
//! end is visited from one representative path. Parent records
//! `(previous end, pivot)` allow any of those paths to be replayed.
//!
//! Forced (protected) edges form a linear forest. Each forest path is
//! attached to the growing path as a whole block, and a rotation is skipped
//! when it would delete a protected edge, so every protected edge that enters
//! the path stays there.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;

use crate::error::{Error, Result, SearchFailure, Stage};
use crate::generators::{Seed, Stream};
use crate::graph::{canonical, Graph, HamCycle, Vertex, VertexPath};
use crate::oracle::{OracleLimit, SetPair};
use crate::verdict::Verdict;

const NONE: usize = usize::MAX;

/// Edge set whose components are vertex-disjoint paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForest {
    edges: Vec<(Vertex, Vertex)>,
}

impl LinearForest {
    pub fn empty() -> Self {
        LinearForest::default()
    }

    /// Rejects loops, repeated edges, degree above two and cycles.
    pub fn new<I: IntoIterator<Item = (Vertex, Vertex)>>(edges: I) -> Result<Self> {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| canonical(u, v)).collect();
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::structural("forest has a repeated edge"));
        }
        let mut deg: HashMap<Vertex, usize> = HashMap::new();
        let mut parent: HashMap<Vertex, Vertex> = HashMap::new();
        fn find(parent: &mut HashMap<Vertex, Vertex>, mut x: Vertex) -> Vertex {
            while let Some(&p) = parent.get(&x) {
                if p == x {
                    break;
                }
                let gp = parent.get(&p).copied().unwrap_or(p);
                parent.insert(x, gp);
                x = p;
            }
            x
        }
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::structural(format!("forest has a loop at {u}")));
            }
            for x in [u, v] {
                let d = deg.entry(x).or_insert(0);
                *d += 1;
                if *d > 2 {
                    return Err(Error::structural(format!("forest vertex {x} has degree above 2")));
                }
                parent.entry(x).or_insert(x);
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(Error::structural(format!("forest edge {{{u},{v}}} closes a cycle")));
            }
            parent.insert(ru, rv);
        }
        Ok(LinearForest { edges })
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&canonical(u, v)).is_ok()
    }

    /// Components as vertex sequences from one end to the other, ordered by
    /// smallest end.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut mates: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        for &(u, v) in &self.edges {
            mates.entry(u).or_default().push(v);
            mates.entry(v).or_default().push(u);
        }
        let mut ends: Vec<Vertex> = mates.iter().filter(|(_, m)| m.len() == 1).map(|(&v, _)| v).collect();
        ends.sort_unstable();
        let mut done = std::collections::HashSet::new();
        let mut out = Vec::new();
        for s in ends {
            if done.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            let (mut prev, mut cur) = (NONE, s);
            loop {
                let next = mates[&cur].iter().copied().find(|&x| x != prev);
                match next {
                    Some(x) => {
                        comp.push(x);
                        prev = cur;
                        cur = x;
                    }
                    None => break,
                }
            }
            done.insert(cur);
            out.push(comp);
        }
        out
    }

    fn check_in(&self, n: usize, has_edge: impl Fn(Vertex, Vertex) -> bool) -> Result<()> {
        for &(u, v) in &self.edges {
            if v >= n {
                return Err(Error::structural(format!("forest vertex {v} out of range")));
            }
            if !has_edge(u, v) {
                return Err(Error::structural(format!("forest edge {{{u},{v}}} not in graph")));
            }
        }
        Ok(())
    }
}

/// Mutable adjacency over a vertex scope (host labels kept).
#[derive(Clone, Debug)]
pub(crate) struct Adj {
    nbrs: Vec<Vec<Vertex>>,
    scope: Vec<Vertex>,
}

impl Adj {
    pub(crate) fn full(g: &Graph) -> Self {
        Adj { nbrs: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect(), scope: (0..g.n()).collect() }
    }

    /// `g[w]`; vertices outside `w` keep empty lists.
    pub(crate) fn restricted(g: &Graph, w: &[Vertex]) -> Self {
        let mut inside = FixedBitSet::with_capacity(g.n());
        w.iter().for_each(|&v| inside.insert(v));
        let mut nbrs = vec![Vec::new(); g.n()];
        for &v in w {
            nbrs[v] = g.neighbors(v).iter().copied().filter(|&x| inside.contains(x)).collect();
        }
        Adj { nbrs, scope: w.to_vec() }
    }

    fn sparse(n: usize, scope: Vec<Vertex>) -> Self {
        Adj { nbrs: vec![Vec::new(); n], scope }
    }

    #[inline]
    pub(crate) fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.nbrs[u].binary_search(&v).is_ok()
    }

    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) {
        for (a, b) in [(u, v), (v, u)] {
            if let Err(i) = self.nbrs[a].binary_search(&b) {
                self.nbrs[a].insert(i, b);
            }
        }
    }

    fn is_connected(&self) -> bool {
        let Some(&s) = self.scope.first() else { return true };
        let mut seen = FixedBitSet::with_capacity(self.nbrs.len());
        seen.insert(s);
        let mut stack = vec![s];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &x in &self.nbrs[v] {
                if !seen.put(x) {
                    count += 1;
                    stack.push(x);
                }
            }
        }
        count == self.scope.len()
    }
}

/// Protected-edge lookup plus forest components as attachable blocks.
#[derive(Clone, Debug)]
struct Forced {
    mate: Vec<[Vertex; 2]>,
    comp_of: Vec<usize>,
    comps: Vec<Vec<Vertex>>,
}

impl Forced {
    fn new(n: usize, f: &LinearForest) -> Self {
        let mut mate = vec![[NONE; 2]; n];
        for &(u, v) in f.edges() {
            for (a, b) in [(u, v), (v, u)] {
                let slot = if mate[a][0] == NONE { 0 } else { 1 };
                mate[a][slot] = b;
            }
        }
        let comps = f.components();
        let mut comp_of = vec![NONE; n];
        for (i, c) in comps.iter().enumerate() {
            c.iter().for_each(|&v| comp_of[v] = i);
        }
        Forced { mate, comp_of, comps }
    }

    #[inline]
    fn is_mate(&self, u: Vertex, v: Vertex) -> bool {
        self.mate[u][0] == v || self.mate[u][1] == v
    }

    /// The block that must enter the path when `x` is attached, starting at
    /// `x`; `None` when `x` is interior to a forest path.
    fn block(&self, x: Vertex) -> Option<Block<'_>> {
        match self.comp_of[x] {
            NONE => Some(Block::Single(x)),
            c => {
                let comp = &self.comps[c];
                if comp[0] == x {
                    Some(Block::Forward(comp))
                } else if comp[comp.len() - 1] == x {
                    Some(Block::Backward(comp))
                } else {
                    None
                }
            }
        }
    }
}

enum Block<'a> {
    Single(Vertex),
    Forward(&'a [Vertex]),
    Backward(&'a [Vertex]),
}

/// What a rotation search is looking for at each reachable free end.
#[derive(Clone, Copy)]
enum Goal<'a> {
    /// Visit everything.
    Exhaust,
    /// Free end can attach an outside block, or the two ends are adjacent.
    ExtendOrClose,
    /// Ends adjacent in `other` but not in the engine's own adjacency.
    CloseIn(&'a Adj),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SearchEnd {
    Met,
    Exhausted,
    OutOfBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GrowEnd {
    Cycle,
    Stuck,
    OutOfBudget,
}

/// Discovery tree of one rotation search.
#[derive(Default)]
struct Tree {
    ends: Vec<Vertex>,
    parent: HashMap<Vertex, (Vertex, Vertex)>,
}

struct Engine {
    adj: Adj,
    forced: Forced,
    seq: Vec<Vertex>,
    pos: Vec<usize>,
    budget: u64,
    phase_budget: u64,
    /// Visit marks per search level (outer, nested).
    mark: [Vec<u32>; 2],
    stamp: u32,
}

impl Engine {
    fn new(adj: Adj, forced: Forced) -> Self {
        let n = adj.nbrs.len();
        let s = adj.scope.len() as u64;
        let phase_budget = 20 * s * s + 100;
        Engine {
            adj,
            forced,
            seq: Vec::new(),
            pos: vec![NONE; n],
            budget: phase_budget,
            phase_budget,
            mark: [vec![0; n], vec![0; n]],
            stamp: 0,
        }
    }

    fn set_path(&mut self, verts: &[Vertex]) {
        for &v in &self.seq {
            self.pos[v] = NONE;
        }
        self.seq.clear();
        self.seq.extend_from_slice(verts);
        for (i, &v) in self.seq.iter().enumerate() {
            self.pos[v] = i;
        }
    }

    fn start(&mut self) {
        let first = match self.forced.comps.first() {
            Some(c) => c.clone(),
            None => vec![self.adj.scope[0]],
        };
        self.set_path(&first);
    }

    fn last(&self) -> Vertex {
        self.seq[self.seq.len() - 1]
    }

    fn is_full(&self) -> bool {
        self.seq.len() == self.adj.scope.len()
    }

    fn reverse_from(&mut self, start: usize) {
        self.seq[start..].reverse();
        for i in start..self.seq.len() {
            self.pos[self.seq[i]] = i;
        }
    }

    fn closed(&self) -> bool {
        self.seq.len() >= 3 && self.adj.has_edge(self.seq[0], self.last())
    }

    fn attachable(&self, e: Vertex) -> Option<Vertex> {
        self.adj.nbrs[e].iter().copied().find(|&x| self.pos[x] == NONE && self.forced.block(x).is_some())
    }

    fn attach(&mut self, x: Vertex) {
        let push = |eng: &mut Engine, v: Vertex| {
            eng.pos[v] = eng.seq.len();
            eng.seq.push(v);
        };
        match self.forced.block(x).expect("attachable vertex") {
            Block::Single(v) => push(self, v),
            Block::Forward(c) => {
                let c = c.to_vec();
                c.into_iter().for_each(|v| push(self, v));
            }
            Block::Backward(c) => {
                let c = c.to_vec();
                c.into_iter().rev().for_each(|v| push(self, v));
            }
        }
        self.budget = self.phase_budget;
    }

    /// Attach at the free end, else at the fixed end.
    fn extend_any(&mut self) -> bool {
        for _ in 0..2 {
            if let Some(x) = self.attachable(self.last()) {
                self.attach(x);
                return true;
            }
            self.reverse_from(0);
        }
        false
    }

    fn goal_met(&self, goal: Goal<'_>) -> bool {
        match goal {
            Goal::Exhaust => false,
            Goal::ExtendOrClose => self.attachable(self.last()).is_some() || self.closed(),
            Goal::CloseIn(other) => {
                let (a, b) = (self.seq[0], self.last());
                self.seq.len() >= 3 && other.has_edge(a, b) && !self.adj.has_edge(a, b)
            }
        }
    }

    /// Depth-first closure of rotations at the free end. On `Met` the path is
    /// left in the state that met the goal; otherwise it is restored.
    fn search(&mut self, goal: Goal<'_>, nested: bool, tree: Option<&mut Tree>) -> SearchEnd {
        self.search_at(0, goal, nested, tree)
    }

    fn search_at(&mut self, level: usize, goal: Goal<'_>, nested: bool, mut tree: Option<&mut Tree>) -> SearchEnd {
        self.stamp += 1;
        let stamp = self.stamp;
        let root = self.last();
        self.mark[level][root] = stamp;
        if let Some(t) = tree.as_deref_mut() {
            t.ends.push(root);
        }
        match self.visit(goal, nested) {
            SearchEnd::Exhausted => {}
            other => return other,
        }
        // (next neighbour index, suffix start to undo)
        let mut stack: Vec<(usize, usize)> = vec![(0, NONE)];
        while let Some(top) = stack.last_mut() {
            let t = self.seq.len() - 1;
            let e = self.seq[t];
            if top.0 >= self.adj.nbrs[e].len() {
                let (_, undo) = stack.pop().expect("non-empty");
                if undo != NONE {
                    self.reverse_from(undo);
                }
                continue;
            }
            let v = self.adj.nbrs[e][top.0];
            top.0 += 1;
            let p = self.pos[v];
            if p == NONE || p + 1 >= t {
                continue;
            }
            let new_end = self.seq[p + 1];
            if self.mark[level][new_end] == stamp || self.forced.is_mate(v, new_end) {
                continue;
            }
            if self.budget == 0 {
                return SearchEnd::OutOfBudget;
            }
            self.budget -= 1;
            self.reverse_from(p + 1);
            self.mark[level][new_end] = stamp;
            if let Some(t) = tree.as_deref_mut() {
                t.ends.push(new_end);
                t.parent.insert(new_end, (e, v));
            }
            stack.push((0, p + 1));
            match self.visit(goal, nested) {
                SearchEnd::Exhausted => {}
                other => return other,
            }
        }
        SearchEnd::Exhausted
    }

    /// Goal check at the current state, plus a second-level search from the
    /// current free end when `nested`.
    fn visit(&mut self, goal: Goal<'_>, nested: bool) -> SearchEnd {
        if self.goal_met(goal) {
            return SearchEnd::Met;
        }
        if !nested {
            return SearchEnd::Exhausted;
        }
        self.reverse_from(0);
        let r = self.search_at(1, goal, false, None);
        if r == SearchEnd::Met {
            return r;
        }
        self.reverse_from(0);
        r
    }

    /// Turn a closed path into a longer path through an outside neighbour.
    fn open_and_extend(&mut self) -> bool {
        let len = self.seq.len();
        for j in 0..len {
            let c = self.seq[j];
            if self.attachable(c).is_none() {
                continue;
            }
            let next = self.seq[(j + 1) % len];
            let prev = self.seq[(j + len - 1) % len];
            let mut order = Vec::with_capacity(len);
            if !self.forced.is_mate(c, next) {
                // next .. end, start .. c
                order.extend((1..=len).map(|k| self.seq[(j + k) % len]));
            } else if !self.forced.is_mate(c, prev) {
                // c's far side first, ending at c: prev .. (backwards) .. c
                order.extend((1..=len).map(|k| self.seq[(j + len - k) % len]));
            } else {
                continue;
            }
            self.set_path(&order);
            let x = self.attachable(c).expect("checked above");
            self.attach(x);
            return true;
        }
        false
    }

    fn grow(&mut self) -> GrowEnd {
        loop {
            if self.extend_any() {
                continue;
            }
            if self.closed() {
                if self.is_full() {
                    return GrowEnd::Cycle;
                }
                if self.open_and_extend() {
                    continue;
                }
                return GrowEnd::Stuck;
            }
            let mut progressed = false;
            for nested in [false, false, true] {
                match self.search(Goal::ExtendOrClose, nested, None) {
                    SearchEnd::Met => {
                        progressed = true;
                        break;
                    }
                    SearchEnd::OutOfBudget => return GrowEnd::OutOfBudget,
                    SearchEnd::Exhausted => self.reverse_from(0),
                }
            }
            if !progressed {
                return GrowEnd::Stuck;
            }
        }
    }

    fn tree(&mut self) -> Tree {
        let mut tree = Tree::default();
        self.search(Goal::Exhaust, false, Some(&mut tree));
        tree
    }
}

/// Free ends reachable by rotations with one end held fixed.
#[derive(Clone, Debug)]
pub struct RotationState {
    path: VertexPath,
    ends: Vec<Vertex>,
    parent: HashMap<Vertex, (Vertex, Vertex)>,
}

impl RotationState {
    /// The starting path, oriented from the fixed end.
    pub fn path(&self) -> &VertexPath {
        &self.path
    }

    pub fn fixed_end(&self) -> Vertex {
        self.path.first()
    }

    /// All reachable free ends in discovery order, the original end first.
    pub fn reachable_ends(&self) -> &[Vertex] {
        &self.ends
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v == self.path.last() || self.parent.contains_key(&v)
    }

    /// A path on the same vertex set from the fixed end to `r`.
    pub fn path_to(&self, r: Vertex) -> Option<VertexPath> {
        if !self.contains(r) {
            return None;
        }
        let mut chain = Vec::new();
        let mut cur = r;
        while let Some(&(prev, pivot)) = self.parent.get(&cur) {
            chain.push((prev, pivot));
            cur = prev;
        }
        let mut seq = self.path.vertices().to_vec();
        for &(prev, pivot) in chain.iter().rev() {
            debug_assert_eq!(*seq.last().expect("non-empty"), prev);
            let p = seq.iter().position(|&x| x == pivot).expect("pivot on path");
            seq[p + 1..].reverse();
        }
        debug_assert_eq!(*seq.last().expect("non-empty"), r);
        Some(VertexPath::from_vec_unchecked(seq))
    }
}

fn state_from_tree(path: Vec<Vertex>, tree: Tree) -> RotationState {
    RotationState { path: VertexPath::from_vec_unchecked(path), ends: tree.ends, parent: tree.parent }
}

fn oriented_from(p: &VertexPath, fixed_end: Vertex) -> Result<Vec<Vertex>> {
    if p.first() == fixed_end {
        Ok(p.vertices().to_vec())
    } else if p.last() == fixed_end {
        Ok(p.reversed().into_vertices())
    } else {
        Err(Error::Precondition(format!("{fixed_end} is not an end of the path")))
    }
}

fn engine_for(g: &Graph, protected: &LinearForest) -> Result<Engine> {
    protected.check_in(g.n(), |u, v| g.has_edge(u, v))?;
    Ok(Engine::new(Adj::full(g), Forced::new(g.n(), protected)))
}

pub fn rotation_closure(
    g: &Graph,
    p: &VertexPath,
    fixed_end: Vertex,
    protected: &LinearForest,
) -> Result<RotationState> {
    if !p.is_valid_in(g) {
        return Err(Error::structural("path is not a path of the graph"));
    }
    let verts = oriented_from(p, fixed_end)?;
    let mut eng = engine_for(g, protected)?;
    eng.budget = u64::MAX;
    eng.set_path(&verts);
    let tree = eng.tree();
    Ok(state_from_tree(verts, tree))
}

#[derive(Clone, Debug)]
pub enum Step {
    /// A longer path containing every vertex of the input.
    Extended(VertexPath),
    /// A path on the same vertex set whose ends are adjacent.
    Closed(VertexPath),
    /// Neither is reachable by rotations at either end.
    Stuck { front: RotationState, back: RotationState },
}

/// One growth step: extend directly, else rotate at either end until an end
/// can be extended or the ends become adjacent.
pub fn extend_or_rotate(g: &Graph, p: &VertexPath, protected: &LinearForest) -> Result<Step> {
    if !p.is_valid_in(g) {
        return Err(Error::structural("path is not a path of the graph"));
    }
    let mut eng = engine_for(g, protected)?;
    eng.budget = u64::MAX;
    eng.set_path(p.vertices());
    let done = |eng: &mut Engine| -> Option<Step> {
        if eng.extend_any() {
            return Some(Step::Extended(VertexPath::from_vec_unchecked(eng.seq.clone())));
        }
        if eng.closed() {
            return Some(Step::Closed(VertexPath::from_vec_unchecked(eng.seq.clone())));
        }
        None
    };
    if let Some(s) = done(&mut eng) {
        return Ok(s);
    }
    for _ in 0..2 {
        if eng.search(Goal::ExtendOrClose, false, None) == SearchEnd::Met {
            return Ok(done(&mut eng).expect("goal met"));
        }
        eng.reverse_from(0);
    }
    let front_path = eng.seq.clone();
    let front = state_from_tree(front_path.clone(), eng.tree());
    eng.reverse_from(0);
    let back = state_from_tree(eng.seq.clone(), eng.tree());
    Ok(Step::Stuck { front, back })
}

/// Exhaustive search for a Hamilton cycle through all protected edges.
fn exhaustive_cycle(adj: &Adj, forced: &Forced) -> Option<Vec<Vertex>> {
    let n = adj.scope.len();
    let ok = |v: Vertex, a: Vertex, b: Vertex| forced.mate[v].iter().all(|&m| m == NONE || m == a || m == b);
    fn go(
        adj: &Adj,
        ok: &dyn Fn(Vertex, Vertex, Vertex) -> bool,
        n: usize,
        path: &mut Vec<Vertex>,
        used: &mut FixedBitSet,
    ) -> bool {
        let v = *path.last().expect("non-empty");
        if path.len() == n {
            let s = path[0];
            return adj.has_edge(v, s) && ok(v, path[n - 2], s) && ok(s, path[1], v);
        }
        for &x in &adj.nbrs[v] {
            if used.contains(x) {
                continue;
            }
            if path.len() >= 2 && !ok(v, path[path.len() - 2], x) {
                continue;
            }
            path.push(x);
            used.insert(x);
            if go(adj, ok, n, path, used) {
                return true;
            }
            used.set(x, false);
            path.pop();
        }
        false
    }
    let s = adj.scope[0];
    let mut path = vec![s];
    let mut used = FixedBitSet::with_capacity(adj.nbrs.len());
    used.insert(s);
    go(adj, &ok, n, &mut path, &mut used).then_some(path)
}

/// Hamilton cycle of `adj` over its scope through every protected edge.
fn cycle_through(adj: Adj, forced: Forced, min_degree_ok: bool) -> Result<Vec<Vertex>> {
    let n = adj.scope.len();
    if n < 3 {
        return Err(Error::not_found(Stage::Posa, SearchFailure::Infeasible, "fewer than 3 vertices"));
    }
    let mut eng = Engine::new(adj, forced);
    eng.start();
    let end = eng.grow();
    if end == GrowEnd::Cycle {
        return Ok(eng.seq);
    }
    let Engine { adj, forced, .. } = eng;
    if n <= 10 {
        return exhaustive_cycle(&adj, &forced).ok_or_else(|| {
            Error::not_found(Stage::Posa, SearchFailure::Infeasible, "exhaustive search found no cycle")
        });
    }
    let failure = if !min_degree_ok {
        SearchFailure::PreconditionViolated
    } else if end == GrowEnd::OutOfBudget {
        SearchFailure::BudgetExhausted
    } else {
        SearchFailure::Stuck
    };
    Err(Error::not_found(Stage::Posa, failure, format!("rotation-extension ended {end:?}")))
}

/// A Hamilton cycle containing every edge of `f`.
///
/// Guaranteed by the degree condition `2δ ≥ n + |f|`; tried regardless, with
/// an exhaustive fallback for `n ≤ 10`. The failure kind distinguishes an
/// unmet degree condition from an exhausted step budget.
pub fn hamilton_cycle_through_forest(g: &Graph, f: &LinearForest) -> Result<HamCycle> {
    let n = g.n();
    if n < 3 {
        return Err(Error::not_found(Stage::Posa, SearchFailure::Infeasible, "fewer than 3 vertices"));
    }
    f.check_in(n, |u, v| g.has_edge(u, v))?;
    let degree_ok = 2 * g.min_degree() >= n + f.len();
    let seq = cycle_through(Adj::full(g), Forced::new(n, f), degree_ok)?;
    let cycle = HamCycle::new(g, seq)?;
    if let Some(&(u, v)) = f.edges().iter().find(|&&(u, v)| !cycle.contains_edge(u, v)) {
        return Err(Error::BoundViolation {
            stage: Stage::Posa,
            detail: format!("forest edge {{{u},{v}}} missing from cycle"),
        });
    }
    Ok(cycle)
}

/// A non-edge whose addition creates a Hamilton cycle or a longer path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Booster {
    pub u: Vertex,
    pub v: Vertex,
}

/// Boosters `{r, s}`: `r` ranges over the frontier's reachable ends (and its
/// fixed end), `s` over the ends reachable with `r` held fixed. On a longest
/// path of a connected graph every such non-edge is a booster; for `n ≤ 10`
/// the list is filtered through the exhaustive definition check.
pub fn find_boosters(g: &Graph, frontier: &RotationState) -> Result<Vec<Booster>> {
    let mut out = std::collections::BTreeSet::new();
    let mut eng = engine_for(g, &LinearForest::empty())?;
    eng.budget = u64::MAX;
    let mut firsts = vec![frontier.fixed_end()];
    firsts.extend_from_slice(frontier.reachable_ends());
    for (i, &r) in firsts.iter().enumerate() {
        let path = if i == 0 {
            frontier.path().vertices().to_vec()
        } else {
            let mut p = frontier.path_to(r).expect("reachable").into_vertices();
            p.reverse();
            p
        };
        eng.set_path(&path);
        let tree = eng.tree();
        for s in tree.ends {
            if s != r && !g.has_edge(r, s) {
                let (u, v) = canonical(r, s);
                out.insert(Booster { u, v });
            }
        }
    }
    let mut list: Vec<Booster> = out.into_iter().collect();
    if g.n() <= 10 {
        let lim = OracleLimit::default();
        let mut kept = Vec::with_capacity(list.len());
        for b in list {
            if lim.is_booster(g, b.u, b.v)? {
                kept.push(b);
            }
        }
        list = kept;
    }
    Ok(list)
}

fn validate_set(g: &Graph, w: &[Vertex]) -> Result<()> {
    let mut seen = FixedBitSet::with_capacity(g.n());
    for &v in w {
        if v >= g.n() {
            return Err(Error::structural(format!("vertex {v} out of range")));
        }
        if seen.put(v) {
            return Err(Error::structural(format!("vertex {v} repeated")));
        }
    }
    Ok(())
}

/// The sparse spanning subgraph `H` of `g[w]`: every vertex keeps all its
/// edges when it has fewer than `d0` of them inside `w`, otherwise `d0`
/// uniformly chosen ones.
pub(crate) fn sparse_out_subgraph(g: &Graph, w: &[Vertex], d0: usize, seed: Seed) -> Adj {
    let full = Adj::restricted(g, w);
    let mut h = Adj::sparse(g.n(), w.to_vec());
    let mut rng = seed.rng(Stream::Subgraph);
    for &v in w {
        let nb = &full.nbrs[v];
        if nb.len() < d0 {
            for &x in nb {
                h.add_edge(v, x);
            }
        } else {
            for i in sample(&mut rng, nb.len(), d0) {
                h.add_edge(v, nb[i]);
            }
        }
    }
    h
}

/// Out-degree used for the sparse starting subgraph.
pub fn booster_out_degree(w_len: usize) -> usize {
    ((w_len.max(2) as f64).ln().ceil() as usize).max(3)
}

/// Hamilton cycle of `host[w_set]` (cyclic order, host labels).
///
/// Starts from a sparse random subgraph `H` of `host[w_set]` and grows a path
/// by rotation–extension in `H`; whenever `H` is stuck, adds an edge of
/// `host[w_set]` that is a booster of `H`. Each booster lengthens the path,
/// so at most `|w_set|` boosters are added.
pub fn make_hamiltonian_via_boosters(host: &Graph, w_set: &[Vertex], seed: Seed) -> Result<Vec<Vertex>> {
    validate_set(host, w_set)?;
    if w_set.len() < 3 {
        return Err(Error::not_found(Stage::Posa, SearchFailure::Infeasible, "fewer than 3 vertices"));
    }
    let full = Adj::restricted(host, w_set);
    if !full.is_connected() {
        return Err(Error::Precondition("host[w_set] is disconnected".into()));
    }
    let mut h = sparse_out_subgraph(host, w_set, booster_out_degree(w_set.len()), seed);
    // keep H connected so that every closed path can be reopened
    let mut seen = FixedBitSet::with_capacity(host.n());
    let mut stack = vec![w_set[0]];
    seen.insert(w_set[0]);
    while let Some(v) = stack.pop() {
        for &x in &full.nbrs[v] {
            if !seen.put(x) {
                h.add_edge(v, x);
                stack.push(x);
            }
        }
    }
    let mut eng = Engine::new(h, Forced::new(host.n(), &LinearForest::empty()));
    eng.start();
    let mut boosters = 0usize;
    loop {
        match eng.grow() {
            GrowEnd::Cycle => break,
            GrowEnd::OutOfBudget => {
                return Err(Error::not_found(Stage::Posa, SearchFailure::BudgetExhausted, "growth budget exhausted"))
            }
            GrowEnd::Stuck => {}
        }
        eng.budget = eng.phase_budget;
        match eng.search(Goal::CloseIn(&full), true, None) {
            SearchEnd::Met => {
                let (a, b) = (eng.seq[0], eng.last());
                eng.adj.add_edge(a, b);
                boosters += 1;
                if boosters > w_set.len() {
                    return Err(Error::not_found(Stage::Posa, SearchFailure::Stuck, "booster loop did not terminate"));
                }
            }
            SearchEnd::OutOfBudget => {
                return Err(Error::not_found(
                    Stage::Posa,
                    SearchFailure::BudgetExhausted,
                    "booster search budget exhausted",
                ))
            }
            SearchEnd::Exhausted => {
                return Err(Error::not_found(
                    Stage::Posa,
                    SearchFailure::Stuck,
                    format!(
                        "no booster of H inside host[w_set] (path covers {} of {} vertices); expansion likely fails",
                        eng.seq.len(),
                        w_set.len()
                    ),
                ))
            }
        }
    }
    let seq = eng.seq;
    debug_assert!((0..seq.len()).all(|i| full.has_edge(seq[i], seq[(i + 1) % seq.len()])));
    Ok(seq)
}

/// Hamilton paths of `host[w_set]` from `w`: the reachable ends `Y` of the
/// rotation closure of one Hamilton path starting at `w`, with retrieval via
/// [`RotationState::path_to`].
pub fn hamilton_path_endpoint_set(host: &Graph, w_set: &[Vertex], w: Vertex, seed: Seed) -> Result<RotationState> {
    if !w_set.contains(&w) {
        return Err(Error::Precondition(format!("{w} not in w_set")));
    }
    let cycle = make_hamiltonian_via_boosters(host, w_set, seed)?;
    Ok(endpoint_set_from_cycle(host, w_set, &cycle, w))
}

pub(crate) fn endpoint_set_from_cycle(host: &Graph, w_set: &[Vertex], cycle: &[Vertex], w: Vertex) -> RotationState {
    let k = cycle.iter().position(|&x| x == w).expect("w on cycle");
    let path: Vec<Vertex> = (0..cycle.len()).map(|i| cycle[(k + i) % cycle.len()]).collect();
    let mut eng = Engine::new(Adj::restricted(host, w_set), Forced::new(host.n(), &LinearForest::empty()));
    eng.budget = u64::MAX;
    eng.set_path(&path);
    let tree = eng.tree();
    state_from_tree(path, tree)
}

fn bitmasks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect()
}

fn mask_ones(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Exact `(k, 2)`-expansion: `|N(U)| ≥ 2|U|` for all `1 ≤ |U| ≤ k`, with
/// `N(U)` the external neighbourhood. Witness is a violating `U`.
pub fn is_k2_expander(g: &Graph, k: usize) -> Result<Verdict<Vec<Vertex>>> {
    let n = g.n();
    let limit = OracleLimit::default().max_n_subsets;
    if n > limit {
        return Err(Error::Refused { n, limit });
    }
    let adj = bitmasks(g);
    for u in 1u64..(1u64 << n) {
        let size = u.count_ones() as usize;
        if size > k {
            continue;
        }
        let mut nb = 0u64;
        let mut bits = u;
        while bits != 0 {
            nb |= adj[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        if ((nb & !u).count_ones() as usize) < 2 * size {
            return Ok(Verdict::Violated(mask_ones(u)));
        }
    }
    Ok(Verdict::Holds)
}

/// Low-degree vertices (degree `< d`) lying on a 3- or 4-cycle, or two of
/// them within distance 4. Exact; witness is the offending pair (equal
/// entries for a short cycle).
pub fn low_degree_spread(g: &Graph, d: f64) -> Verdict<(Vertex, Vertex)> {
    let n = g.n();
    let low: Vec<Vertex> = (0..n).filter(|&v| (g.degree(v) as f64) < d).collect();
    let mut is_low = FixedBitSet::with_capacity(n);
    low.iter().for_each(|&v| is_low.insert(v));
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for &v in &low {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) || g.neighbors(a).iter().any(|&x| x != v && g.has_edge(x, b)) {
                    return Verdict::Violated((v, v));
                }
            }
        }
        for &x in &touched {
            dist[x] = usize::MAX;
        }
        touched.clear();
        dist[v] = 0;
        touched.push(v);
        let mut frontier = vec![v];
        for depth in 1..=4 {
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in g.neighbors(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = depth;
                        touched.push(y);
                        if is_low.contains(y) {
                            return Verdict::Violated((v, y));
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
    }
    Verdict::Holds
}

/// Outcome of the four sufficient conditions for `(h/4, 2)`-expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpanderConditions {
    /// `h ≥ 4m`.
    pub size_ok: bool,
    pub min_degree: Verdict<Vertex>,
    pub low_degree_spread: Verdict<(Vertex, Vertex)>,
    /// Every set of at most `5m` vertices spans at most `d|U|/10` edges.
    pub sparse_small_sets: Verdict<Vec<Vertex>>,
    /// An edge between every two disjoint `m`-sets.
    pub cross_edges: Verdict<SetPair>,
}

impl ExpanderConditions {
    pub fn all_pass(&self) -> bool {
        self.size_ok
            && self.min_degree.passed()
            && self.low_degree_spread.passed()
            && self.sparse_small_sets.passed()
            && self.cross_edges.passed()
    }

    /// All four conditions verified exactly.
    pub fn all_hold(&self) -> bool {
        self.size_ok
            && self.min_degree == Verdict::Holds
            && self.low_degree_spread == Verdict::Holds
            && self.sparse_small_sets == Verdict::Holds
            && self.cross_edges == Verdict::Holds
    }
}

/// Checks the sufficient conditions. Conditions 3 and 4 are exact for
/// `n ≤ 20` and sampled (`samples` random sets each) above that.
pub fn expander_sufficient_check(
    g: &Graph,
    m: usize,
    d: usize,
    samples: usize,
    seed: Seed,
) -> Result<ExpanderConditions> {
    let n = g.n();
    if m == 0 || d == 0 {
        return Err(Error::parameter("m and d must be at least 1"));
    }
    let min_degree = match (0..n).find(|&v| g.degree(v) < 2) {
        Some(v) => Verdict::Violated(v),
        None => Verdict::Holds,
    };
    let spread = low_degree_spread(g, d as f64);
    let cap = (5 * m).min(n);
    let exact = n <= OracleLimit::default().max_n_subsets;
    let sparse_small_sets = if exact {
        let adj = bitmasks(g);
        let mut found = None;
        for u in 1u64..(1u64 << n) {
            let size = u.count_ones() as usize;
            if size > cap {
                continue;
            }
            let twice: u32 = mask_ones(u).iter().map(|&v| (adj[v] & u).count_ones()).sum();
            if (twice as usize) * 10 > 2 * d * size {
                found = Some(mask_ones(u));
                break;
            }
        }
        found.map_or(Verdict::Holds, Verdict::Violated)
    } else {
        sampled_dense_sets(g, cap, d as f64 / 10.0, samples, seed)
    };
    let cross_edges = if 2 * m > n {
        Verdict::Holds
    } else if exact {
        OracleLimit::default().cross_edge_check(g, m)?
    } else {
        sampled_cross_edges(g, m, samples, seed)
    };
    Ok(ExpanderConditions {
        size_ok: n >= 4 * m,
        min_degree,
        low_degree_spread: spread,
        sparse_small_sets,
        cross_edges,
    })
}

/// Random breadth-first balls of size up to `cap` spanning more than
/// `per_vertex · |U|` edges.
pub(crate) fn sampled_dense_sets(
    g: &Graph,
    cap: usize,
    per_vertex: f64,
    samples: usize,
    seed: Seed,
) -> Verdict<Vec<Vertex>> {
    use rand::Rng;
    let n = g.n();
    let mut rng = seed.rng(Stream::Sampling);
    let mut inside = FixedBitSet::with_capacity(n);
    for _ in 0..samples {
        let size = rng.random_range(2..=cap.max(2));
        let s = rng.random_range(0..n);
        inside.clear();
        inside.insert(s);
        let mut set = vec![s];
        let mut i = 0;
        while set.len() < size && i < set.len() {
            for &x in g.neighbors(set[i]) {
                if set.len() < size && !inside.put(x) {
                    set.push(x);
                }
            }
            i += 1;
        }
        let spanned = g.edges_between(&set, &inside) / 2;
        if spanned as f64 > per_vertex * set.len() as f64 + 1e-9 {
            return Verdict::Violated(set);
        }
    }
    Verdict::NoViolationFound { samples }
}

fn sampled_cross_edges(g: &Graph, m: usize, samples: usize, seed: Seed) -> Verdict<SetPair> {
    let n = g.n();
    let mut rng = seed.rng(Stream::Sampling);
    let mut w_set = FixedBitSet::with_capacity(n);
    for _ in 0..samples {
        let both: Vec<Vertex> = sample(&mut rng, n, 2 * m).into_iter().collect();
        let (u, w) = both.split_at(m);
        w_set.clear();
        w.iter().for_each(|&x| w_set.insert(x));
        if g.edges_between(u, &w_set) == 0 {
            return Verdict::Violated(SetPair { u: u.to_vec(), w: w.to_vec() });
        }
    }
    Verdict::NoViolationFound { samples }
}
