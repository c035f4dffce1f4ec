//! Tournaments: directed Hamilton paths, nearly-forward Hamilton cycles and
//! exhaustive counts of unbalanced cycles.

use crate::error::{Error, Result};
use crate::graph::{forward_count, HamCycle, Orientation, VertexPath};
use crate::oracle::count_cycles_min_forward;

fn check_complete(t: &Orientation) -> Result<()> {
    let n = t.n();
    if n == 0 {
        return Err(Error::structural("empty tournament"));
    }
    if t.host().edge_count() != n * (n - 1) / 2 {
        return Err(Error::structural(format!(
            "host has {} edges, a tournament on {n} vertices needs {}",
            t.host().edge_count(),
            n * (n - 1) / 2
        )));
    }
    Ok(())
}

/// Directed Hamilton path by insertion: each vertex goes in front of the
/// path, behind it, or between the first pair `u → v, v → w`.
pub fn directed_hamilton_path(t: &Orientation) -> Result<VertexPath> {
    check_complete(t)?;
    let mut path = Vec::with_capacity(t.n());
    for v in 0..t.n() {
        if path.is_empty() || t.has_arc(v, path[0]) {
            path.insert(0, v);
        } else if t.has_arc(path[path.len() - 1], v) {
            path.push(v);
        } else {
            // path[0] → v and v → last, so the arc direction flips somewhere
            let i = (0..path.len() - 1)
                .find(|&i| t.has_arc(path[i], v) && t.has_arc(v, path[i + 1]))
                .expect("direction change exists");
            path.insert(i + 1, v);
        }
    }
    debug_assert!(path.windows(2).all(|w| t.has_arc(w[0], w[1])));
    Ok(VertexPath::from_vec_unchecked(path))
}

/// Close a directed Hamilton path with the edge `{last, first}`; all edges
/// but possibly the closing one are forward.
pub fn near_forward_cycle_from_path(t: &Orientation, path: &VertexPath) -> Result<HamCycle> {
    check_complete(t)?;
    if path.vertices().len() != t.n() || path.steps().any(|(u, v)| !t.has_arc(u, v)) {
        return Err(Error::Precondition("not a directed Hamilton path".into()));
    }
    let h = HamCycle::new(t.host(), path.vertices().to_vec())?;
    debug_assert!(forward_count(&h, t)? + 1 >= t.n());
    Ok(h)
}

/// Hamilton cycles of `K_n` with at least `min_same_direction` edges pointing
/// the same way, by exhaustive enumeration (`n ≤ 12`).
pub fn count_unbalanced_cycles(t: &Orientation, min_same_direction: usize) -> Result<u64> {
    check_complete(t)?;
    count_cycles_min_forward(t, min_same_direction)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::generators::{gen_random_tournament, Seed};
    use crate::graph::Graph;
    use crate::oracle::oracle_max_forward;

    #[test]
    fn transitive() {
        let t = Orientation::low_to_high(Arc::new(Graph::complete(12)));
        let p = directed_hamilton_path(&t).unwrap();
        assert_eq!(p.vertices(), (0..12).collect::<Vec<_>>());
        let h = near_forward_cycle_from_path(&t, &p).unwrap();
        assert_eq!(forward_count(&h, &t).unwrap(), 11);
        let t5 = Orientation::low_to_high(Arc::new(Graph::complete(5)));
        assert_eq!(count_unbalanced_cycles(&t5, 4).unwrap(), 1);
        assert_eq!(count_unbalanced_cycles(&t5, 3).unwrap(), 12);
    }

    #[test]
    fn three_cycle() {
        let t = Orientation::from_arcs(Arc::new(Graph::complete(3)), [(0, 1), (1, 2), (2, 0)]).unwrap();
        let p = directed_hamilton_path(&t).unwrap();
        assert_eq!(p.len(), 2);
        let h = near_forward_cycle_from_path(&t, &p).unwrap();
        assert_eq!(forward_count(&h, &t).unwrap(), 3);
    }

    #[test]
    fn random_tournaments() {
        for s in 0..20 {
            let t = gen_random_tournament(200, Seed(s));
            let p = directed_hamilton_path(&t).unwrap();
            assert_eq!(p.vertices().len(), 200);
            assert!(p.steps().all(|(u, v)| t.has_arc(u, v)));
        }
        for s in 0..30 {
            let n = 3 + (s as usize % 8);
            let t = gen_random_tournament(n, Seed(s));
            let h = near_forward_cycle_from_path(&t, &directed_hamilton_path(&t).unwrap()).unwrap();
            let f = forward_count(&h, &t).unwrap();
            assert!(f + 1 >= n);
            assert!(oracle_max_forward(&t).unwrap().unwrap() >= f);
            let counts: Vec<u64> = (0..=n).map(|th| count_unbalanced_cycles(&t, th).unwrap()).collect();
            assert!(counts.windows(2).all(|w| w[0] >= w[1]));
            let all: u64 = (1..n as u64).product::<u64>() / 2;
            assert_eq!(counts[n.div_ceil(2)], all);
            assert!(counts[n - 1] >= 1);
        }
    }

    #[test]
    fn rejects_non_tournaments() {
        let o = Orientation::low_to_high(Arc::new(Graph::cycle(5)));
        assert!(matches!(directed_hamilton_path(&o), Err(Error::Structural(_))));
        assert!(count_unbalanced_cycles(&o, 3).is_err());
        let big = gen_random_tournament(13, Seed(0));
        assert!(matches!(count_unbalanced_cycles(&big, 7), Err(Error::Refused { .. })));
        let t = gen_random_tournament(6, Seed(1));
        let bad = VertexPath::new(t.host(), vec![0, 1, 2, 3, 4, 5]).unwrap();
        if bad.steps().any(|(u, v)| !t.has_arc(u, v)) {
            assert!(near_forward_cycle_from_path(&t, &bad).is_err());
        }
    }
}
