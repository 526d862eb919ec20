//! Decompose a graph read from a file (JSON or edge list) and print the
//! decomposition as Graphviz. Without an argument a seeded random graph is
//! used.
//!
//!     cargo run --example dot_export -- crates/core/fixtures/g_tri.json 3
//!     cargo run --example dot_export | dot -Tsvg > decomposition.svg

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use blockforge::corpus::random_connected_graph;
use blockforge::io::read_graph;
use blockforge::{decompose, Mode, Result};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let g = match args.next() {
        Some(path) => read_graph(path.as_ref())?,
        None => random_connected_graph(&mut ChaCha8Rng::seed_from_u64(7), 8, 0.35),
    };
    let mode = match args.next() {
        Some(k) => Mode::KProfiles(k.parse().expect("k is a number")),
        None => Mode::MaximalRobust,
    };
    let report = decompose(&g, mode)?;
    eprintln!(
        "{mode}: {} profiles, adhesion {}",
        report.profile_count, report.adhesion
    );
    print!("{}", report.tree_decomposition()?.to_dot());
    Ok(())
}
