//! Single-shot subcommands.

use std::io::Write;
use std::sync::Arc;

use anyhow::{bail, Context};
use hamdisc::diamonds::{classify_diamond, find_disjoint_good_diamonds, positive_paths};
use hamdisc::generators::{
    gen_complete, gen_extremal_ab, gen_gnm, gen_gnp, gen_linear_forest, gen_min_degree, gen_random_orientation,
    gen_random_tournament,
};
use hamdisc::gnp::{check_properties, threshold_p};
use hamdisc::io::{read_graph, write_graph, write_oriented};
use hamdisc::oracle::OracleLimit;
use hamdisc::posa::hamilton_cycle_through_forest;
use hamdisc::{path_balance, DiamondClass, Error, Graph, LinearForest, Seed, Verdict};

use crate::input::{load_required, open_output, InputGraph};
use crate::{vertex_count, DiamondsArgs, GenArgs, GenKind, OracleArgs, OrientArgs, Outcome, PosaArgs, PropsArgs};

fn join(vs: &[usize]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: GenKind) -> anyhow::Result<T> {
    value.with_context(|| format!("`gen {kind:?}` needs --{flag}"))
}

pub fn gen(a: &GenArgs) -> anyhow::Result<Outcome> {
    let seed = Seed(a.io.seed);
    let n = || need(a.n, "n", a.kind);
    let graph = match a.kind {
        GenKind::Gnp => gen_gnp(n()?, need(a.p, "p", a.kind)?, seed)?,
        GenKind::Gnm => gen_gnm(n()?, need(a.m, "m", a.kind)?, seed)?,
        GenKind::Complete => gen_complete(n()?),
        GenKind::Cycle => Graph::cycle(n()?),
        GenKind::MinDegree => gen_min_degree(n()?, need(a.degree, "degree", a.kind)?, seed)?,
        GenKind::Extremal => {
            let inst = gen_extremal_ab(n()?, need(a.degree, "degree", a.kind)?)?;
            write_oriented(open_output(a.io.output.as_deref())?, &inst.orientation)?;
            return Ok(Outcome::Success);
        }
        GenKind::Tournament => {
            let t = gen_random_tournament(n()?, seed);
            write_oriented(open_output(a.io.output.as_deref())?, &t)?;
            return Ok(Outcome::Success);
        }
        GenKind::Forest => {
            let (input, _) = load_required(a.io.input.as_deref())?;
            let edges = gen_linear_forest(&input.graph, need(a.size, "size", a.kind)?, seed);
            Graph::from_edges(input.graph.n(), edges)?
        }
    };
    let out = open_output(a.io.output.as_deref())?;
    if a.oriented {
        write_oriented(out, &gen_random_orientation(Arc::new(graph), seed.child(1)))?;
    } else {
        write_graph(out, &graph)?;
    }
    Ok(Outcome::Success)
}

pub fn orient(a: &OrientArgs) -> anyhow::Result<Outcome> {
    let (input, _) = load_required(a.io.input.as_deref())?;
    let o = gen_random_orientation(input.graph, Seed(a.io.seed));
    write_oriented(open_output(a.io.output.as_deref())?, &o)?;
    Ok(Outcome::Success)
}

pub fn oracle(a: &OracleArgs) -> anyhow::Result<Outcome> {
    let (input, path) = load_required(a.io.input.as_deref())?;
    let limit = OracleLimit::default();
    let q = &a.queries;
    // every query runs before anything is written
    let mut rows: Vec<[String; 3]> = Vec::new();
    if q.max_forward {
        let best = limit.max_forward(input.require_orientation(path)?)?;
        let value = best.map_or_else(|| "none".to_string(), |f| f.to_string());
        rows.push(["max_forward".into(), value, String::new()]);
    }
    if q.count_cycles {
        let count = limit.hamilton_cycle_count(&input.graph)?;
        rows.push(["hamilton_cycles".into(), count.to_string(), String::new()]);
    }
    if let Some(t) = q.min_forward_threshold {
        let count = limit.count_cycles_min_forward(input.require_orientation(path)?, t)?;
        rows.push([format!("cycles_with_forward_at_least_{t}"), count.to_string(), String::new()]);
    }
    if let Some(beta) = q.beta {
        let verdict = limit.is_beta_graph(&input.graph, beta)?;
        rows.push(verdict_row(&format!("beta_graph_{beta}"), &verdict, |sp| {
            format!("U={} W={}", join(&sp.u), join(&sp.w))
        }));
    }
    let mut csv = csv::Writer::from_writer(open_output(a.io.output.as_deref())?);
    csv.write_record(["query", "value", "witness"])?;
    for row in rows {
        csv.write_record(row)?;
    }
    csv.flush()?;
    Ok(Outcome::Success)
}

pub fn diamonds(a: &DiamondsArgs) -> anyhow::Result<Outcome> {
    let (input, path) = load_required(a.io.input.as_deref())?;
    let o = input.require_orientation(path)?;
    let found = match find_disjoint_good_diamonds(o, a.find) {
        Ok(found) => found,
        Err(e @ Error::DiamondsExhausted { .. }) => {
            eprintln!("{e}");
            return Ok(Outcome::Failure);
        }
        Err(e) => return Err(e.into()),
    };
    let mut csv = csv::Writer::from_writer(open_output(a.io.output.as_deref())?);
    csv.write_record(["index", "a", "b", "c", "d", "p", "q"])?;
    let mut used = vec![false; o.n()];
    let mut valid = true;
    for (i, d) in found.iter().enumerate() {
        let pq = positive_paths(o, d)?;
        valid &= classify_diamond(o, d)? == DiamondClass::Good
            && path_balance(&pq.p, o)? >= 1
            && path_balance(&pq.q, o)? >= 1
            && d.vertices().iter().all(|&v| !std::mem::replace(&mut used[v], true));
        csv.write_record([
            i.to_string(),
            d.a.to_string(),
            d.b.to_string(),
            d.c.to_string(),
            d.d.to_string(),
            join(pq.p.vertices()),
            join(pq.q.vertices()),
        ])?;
    }
    csv.flush()?;
    if !valid {
        eprintln!("structural validation of the diamonds failed");
    }
    Ok(if valid { Outcome::Success } else { Outcome::Failure })
}

pub fn posa(a: &PosaArgs) -> anyhow::Result<Outcome> {
    let (input, _) = load_required(a.io.input.as_deref())?;
    let g = &input.graph;
    let forest = match &a.forest {
        Some(p) => {
            let file = std::fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
            let f = read_graph(std::io::BufReader::new(file)).with_context(|| format!("reading {}", p.display()))?;
            if f.n() != g.n() {
                bail!("forest has {} vertices, graph has {}", f.n(), g.n());
            }
            LinearForest::new(f.edges())?
        }
        None => LinearForest::empty(),
    };
    let cycle = match hamilton_cycle_through_forest(g, &forest) {
        Ok(c) => c,
        Err(e @ Error::NotFound { .. }) => {
            eprintln!("{e}");
            return Ok(Outcome::Failure);
        }
        Err(e) => return Err(e.into()),
    };
    let valid = cycle.is_valid_in(g) && forest.edges().iter().all(|&(u, v)| cycle.contains_edge(u, v));
    writeln!(open_output(a.io.output.as_deref())?, "{}", join(cycle.vertices()))?;
    Ok(if valid { Outcome::Success } else { Outcome::Failure })
}

fn verdict_row<W>(name: &str, v: &Verdict<W>, show: impl Fn(&W) -> String) -> [String; 3] {
    [name.to_string(), v.label().to_string(), v.witness().map_or_else(String::new, show)]
}

pub fn props(a: &PropsArgs) -> anyhow::Result<Outcome> {
    let seed = Seed(a.io.seed);
    let (graph, sampling_p) = match (&a.io.input, &a.gnp) {
        (Some(path), _) => (InputGraph::load(path)?.graph, None),
        (None, Some(ns)) => {
            let n = vertex_count(ns[0])?;
            let p = threshold_p(n, ns[1]);
            (Arc::new(gen_gnp(n, p, seed.child(0))?), Some(p))
        }
        (None, None) => bail!("props needs --input or --gnp N SLACK"),
    };
    let n = graph.n();
    let density = || 2.0 * graph.edge_count() as f64 / (n as f64 * (n as f64 - 1.0)).max(1.0);
    let p = a.p.or(sampling_p).unwrap_or_else(density);
    let r = check_properties(&graph, a.eps, a.beta, p, a.samples, seed.child(1))?;
    let mut csv = csv::Writer::from_writer(open_output(a.io.output.as_deref())?);
    csv.write_record(["property", "verdict", "witness"])?;
    csv.write_record(verdict_row("P1", &r.p1, |v| format!("vertex {v}")))?;
    csv.write_record(verdict_row("P2", &r.p2, |(u, v)| format!("vertices {u} {v}")))?;
    csv.write_record(verdict_row("P3", &r.p3, |set| format!("set {}", join(set))))?;
    csv.write_record(verdict_row("P4", &r.p4, Clone::clone))?;
    csv.write_record(verdict_row("P5", &r.p5, |d| format!("density {:.6}", d.density)))?;
    csv.flush()?;
    eprintln!("n {n}, p {p}, eps {}, beta {}, all pass: {}", a.eps, a.beta, r.all_pass());
    Ok(Outcome::Success)
}
