//! The full pipeline on three triangles meeting in a vertex, two of which
//! share an edge: every 3-block becomes a part.
//!
//!     cargo run --example decompose_triangles

use blockforge::pipeline::decompose_stages;
use blockforge::{decompose, fixtures, Mode, Result};

fn main() -> Result<()> {
    let g = fixtures::g_tri();
    let mode = Mode::KProfiles(3);
    let stages = decompose_stages(&g, mode)?;
    println!("blocks inducing the profiles:");
    for b in &stages.blocks {
        println!("  {} ({}-block)", b.vertices, b.k);
    }
    println!(
        "N has {} separations, the refinement {}",
        stages.n.len(),
        stages.refinement.nbar.len()
    );

    let report = decompose(&g, mode)?;
    println!("adhesion {}, {} profiles", report.adhesion, report.profile_count);
    for pair in &report.distinguished_pairs {
        println!(
            "  profiles {:?}: required {:?}, achieved {:?}",
            pair.profiles, pair.required, pair.achieved
        );
    }
    for check in &report.checks {
        println!("  [{}] {}", if check.passed { "ok" } else { "FAIL" }, check.name);
    }
    for (t, part) in report.tree_decomposition()?.parts().iter().enumerate() {
        println!("node {t}: {part}");
    }
    Ok(())
}
