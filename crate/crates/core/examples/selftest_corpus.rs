//! Run the pipeline over a seeded corpus of random connected graphs.
//!
//!     cargo run --release --example selftest_corpus -- 42

use blockforge::corpus::{corpus, selftest, CorpusConfig};
use blockforge::Result;

fn main() -> Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(0x5eed, |s| s.parse().expect("seed is a number"));
    let config = CorpusConfig {
        seed,
        instances: 50,
        ..CorpusConfig::default()
    };
    let graphs = corpus(&config);
    let edges: usize = graphs.iter().map(|g| g.edge_count()).sum();
    println!("{} graphs, {edges} edges in total", graphs.len());
    let report = selftest(&config)?;
    match report.failure {
        None => println!("{} runs, all passed", report.runs),
        Some(f) => println!("instance {} failed in {}: {}", f.instance, f.mode, f.error),
    }
    Ok(())
}
