//! Graph files and output sinks.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;
use std::sync::Arc;

use anyhow::Context;
use hamdisc::generators::gen_random_orientation;
use hamdisc::io::read_edge_list;
use hamdisc::{Graph, Orientation, Seed};

/// A graph read from disk, with its orientation when every line carried a
/// direction bit.
#[derive(Clone)]
pub struct InputGraph {
    pub graph: Arc<Graph>,
    pub orientation: Option<Orientation>,
}

impl InputGraph {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let list = read_edge_list(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
        let (graph, orientation) = if list.directions.is_some() {
            let o = list.into_orientation()?;
            (o.host_arc().clone(), Some(o))
        } else {
            (Arc::new(list.into_graph()?), None)
        };
        Ok(InputGraph { graph, orientation })
    }

    pub fn orientation_or_random(&self, seed: Seed) -> Orientation {
        self.orientation.clone().unwrap_or_else(|| gen_random_orientation(self.graph.clone(), seed))
    }

    pub fn require_orientation(&self, path: &Path) -> anyhow::Result<&Orientation> {
        self.orientation
            .as_ref()
            .with_context(|| format!("{} has no direction bits; run `hamdisc orient` first", path.display()))
    }
}

pub fn load_required(input: Option<&Path>) -> anyhow::Result<(InputGraph, &Path)> {
    let path = input.context("--input is required")?;
    Ok((InputGraph::load(path)?, path))
}

/// `--output` or stdout.
pub fn open_output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    })
}
