//! Hamilton cycles with many edges in one direction, in oriented graphs.
//!
//! * [`dirac`]: dense graphs of minimum degree `(n + 8k)/2`, via good
//!   diamonds ([`diamonds`]) and rotation–extension through a forced forest
//!   ([`posa`]).
//! * [`expander`]: nearly-forward long paths in `β`-graphs by harvesting
//!   directed paths and stitching them along a long path of a linking digraph.
//! * [`gnp`]: random graphs above the Hamiltonicity threshold, extending such
//!   a path into a Hamilton cycle.
//! * [`tournament`]: directed Hamilton paths and unbalanced-cycle counts.
//! * [`oracle`]: exhaustive ground truth for small instances.
//!
//! All randomness flows from a [`Seed`]; equal seeds give equal outputs.

pub mod diamonds;
pub mod dirac;
pub mod error;
pub mod expander;
pub mod generators;
pub mod gnp;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod posa;
pub mod tournament;
pub mod verdict;

pub use diamonds::{Diamond, DiamondClass, DiamondPaths};
pub use dirac::{unbalanced_hamilton_cycle, DiracResult};
pub use error::{Error, Result, SearchFailure, Stage};
pub use expander::{nearly_forward_path, Digraph, NearlyForward, StitchPlan};
pub use generators::Seed;
pub use gnp::{oriented_hamilton_gnp, AbsorberPartition, GnpOutcome, PropertyReport};
pub use graph::{best_direction, forward_count, path_balance, Graph, HamCycle, Orientation, Vertex, VertexPath};
pub use oracle::OracleLimit;
pub use posa::{LinearForest, RotationState};
pub use verdict::Verdict;
