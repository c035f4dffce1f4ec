//! Plain-text edge lists.
//!
//! ```text
//! n m
//! u v        # graph
//! u v b      # oriented graph, b = 1 means u -> v
//! ```
//!
//! Blank lines and `#` comments are ignored.

use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, Vertex};

pub fn write_graph<W: Write>(mut w: W, g: &Graph) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

/// Orientation in canonical edge order, each line `u v b` with `u < v`.
pub fn write_oriented<W: Write>(mut w: W, o: &Orientation) -> Result<()> {
    let g = o.host();
    writeln!(w, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v} {}", u8::from(o.has_arc(u, v)))?;
    }
    Ok(())
}

/// Parsed edge list; `directions` is present iff every line carried a bit
/// (vacuously so for an edgeless list).
#[derive(Debug)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub directions: Option<Vec<bool>>,
}

impl EdgeList {
    pub fn into_graph(self) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges)
    }

    /// Requires direction bits.
    pub fn into_orientation(self) -> Result<Orientation> {
        let dirs =
            self.directions.ok_or_else(|| Error::Parse { line: 0, msg: "edge list has no direction bits".into() })?;
        let arcs: Vec<_> = self.edges.iter().zip(&dirs).map(|(&(u, v), &b)| if b { (u, v) } else { (v, u) }).collect();
        let g = Arc::new(Graph::from_edges(self.n, self.edges)?);
        Orientation::from_arcs(g, arcs)
    }
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<EdgeList> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut dirs = Vec::new();
    let mut width = None;
    for (idx, line) in r.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields = body
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse { line: lineno, msg: format!("{t:?}: {e}") }))
            .collect::<Result<Vec<_>>>()?;
        let Some((n, _)) = header else {
            if fields.len() != 2 {
                return Err(Error::Parse { line: lineno, msg: "header must be `n m`".into() });
            }
            header = Some((fields[0], fields[1]));
            continue;
        };
        match (fields.len(), width) {
            (2 | 3, None) => width = Some(fields.len()),
            (k, Some(w)) if k == w => {}
            _ => return Err(Error::Parse { line: lineno, msg: "edge lines must all be `u v` or all `u v b`".into() }),
        }
        let (u, v) = (fields[0], fields[1]);
        if u >= n || v >= n {
            return Err(Error::Parse { line: lineno, msg: format!("vertex out of range 0..{n}") });
        }
        if u == v {
            return Err(Error::Parse { line: lineno, msg: format!("self-loop at {u}") });
        }
        if fields.len() == 3 {
            match fields[2] {
                0 => dirs.push(false),
                1 => dirs.push(true),
                b => return Err(Error::Parse { line: lineno, msg: format!("direction bit {b} not in {{0,1}}") }),
            }
        }
        edges.push((u, v));
    }
    let (n, m) = header.ok_or_else(|| Error::Parse { line: 0, msg: "missing header".into() })?;
    if edges.len() != m {
        return Err(Error::Parse { line: 0, msg: format!("header announces {m} edges, found {}", edges.len()) });
    }
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for &(u, v) in &edges {
        if !seen.insert(crate::graph::canonical(u, v)) {
            return Err(Error::Parse { line: 0, msg: format!("duplicate edge {{{u},{v}}}") });
        }
    }
    Ok(EdgeList { n, edges, directions: (width != Some(2)).then_some(dirs) })
}

pub fn read_graph<R: BufRead>(r: R) -> Result<Graph> {
    read_edge_list(r)?.into_graph()
}

pub fn read_oriented<R: BufRead>(r: R) -> Result<Orientation> {
    read_edge_list(r)?.into_orientation()
}
