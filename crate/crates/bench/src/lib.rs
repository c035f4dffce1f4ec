//! Seeded benchmark instances shared by the criterion benches.

use std::sync::Arc;

use hamdisc::expander::{beta_to_c, choose_beta};
use hamdisc::generators::{gen_gnp, gen_min_degree, gen_random_orientation};
use hamdisc::gnp::threshold_p;
use hamdisc::{Graph, Orientation, Seed};

fn orient(g: Graph, seed: u64) -> Orientation {
    gen_random_orientation(Arc::new(g), Seed(seed).child(1))
}

/// Random host of minimum degree `⌈(n + 8k)/2⌉`, randomly oriented.
pub fn dirac_instance(n: usize, k: usize, seed: u64) -> Orientation {
    let g = gen_min_degree(n, (n + 8 * k).div_ceil(2), Seed(seed)).expect("degree below n");
    orient(g, seed)
}

/// `G(n, C/n)` with `C` chosen for `delta`, randomly oriented.
pub fn expander_instance(n: usize, delta: f64, seed: u64) -> Orientation {
    let c = beta_to_c(choose_beta(delta).expect("admissible delta"));
    orient(gen_gnp(n, (c / n as f64).min(1.0), Seed(seed)).expect("valid p"), seed)
}

/// Oriented random graph at `(ln n + ln ln n + slack)/n`.
pub fn threshold_instance(n: usize, slack: f64, seed: u64) -> Orientation {
    orient(gen_gnp(n, threshold_p(n, slack), Seed(seed)).expect("valid p"), seed)
}
