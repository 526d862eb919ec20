//! Two cliques K1, K2 sharing five vertices, plus a vertex v joined to the
//! four others. Their 7-blocks are not separable, and the only efficient
//! distinguisher crosses the separations around v, so the decomposition
//! has to cut through v's neighbourhood.
//!
//!     cargo run --example distinguishability_counterexample

use blockforge::pipeline::is_separable;
use blockforge::profile::k_blocks;
use blockforge::{decompose, fixtures, Mode, Result, Separation};

fn main() -> Result<()> {
    let g = fixtures::g_ex48();
    let (k1, k2, v) = (fixtures::ex48_k1(), fixtures::ex48_k2(), fixtures::ex48_v_side());
    for b in k_blocks(&g, 7)? {
        println!("7-block {} separable: {}", b.vertices, is_separable(&g, &b));
    }

    let apex = fixtures::EX48_V;
    let through_v = Separation::new(&g, k1.with(apex), k2.with(apex))?;
    let around_v = Separation::new(&g, v, k1 | k2)?;
    println!(
        "{through_v} (order {}) crosses {around_v}: {}",
        through_v.order(),
        through_v.crosses(&around_v)
    );
    let diagram = through_v.corner_diagram(&around_v)?;
    println!(
        "links: {} on the side of v, {} on the clique side",
        diagram.links[2], diagram.links[3]
    );

    for mode in [Mode::KProfiles(7), Mode::MaximalRobust] {
        let report = decompose(&g, mode)?;
        let achieved: Vec<_> = report.distinguished_pairs.iter().map(|p| p.achieved).collect();
        println!("{mode}: adhesion {}, achieved orders {achieved:?}", report.adhesion);
    }
    Ok(())
}
