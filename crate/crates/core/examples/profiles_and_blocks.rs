//! k-blocks, the profiles they induce, and the maximal robust profiles of a
//! graph with two large cliques sharing five vertices.
//!
//!     cargo run --example profiles_and_blocks

use blockforge::pipeline::is_separable;
use blockforge::profile::{block_profile, enumerate_profiles, is_r_robust, k_blocks, maximal_robust_profiles};
use blockforge::{fixtures, Result};

fn main() -> Result<()> {
    let g = fixtures::g_ex48();
    println!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
    for k in [5, 7] {
        println!("k = {k}:");
        for b in k_blocks(&g, k)? {
            let p = block_profile(&g, b.vertices, k)?;
            println!(
                "  block {} ({}), profile orients {} separations",
                b.vertices,
                if is_separable(&g, &b) {
                    "separable"
                } else {
                    "inseparable"
                },
                p.separations(&g)?.len()
            );
        }
        println!("  {} {k}-profiles in total", enumerate_profiles(&g, k)?.len());
    }

    println!("maximal robust profiles:");
    for p in maximal_robust_profiles(&g)? {
        let n = g.vertex_count();
        println!("  order {}, {}-robust: {}", p.order(), n, is_r_robust(&g, &p, n)?);
        // removing the shared clique vertices and v leaves {a1,a2} and {b1,b2}
        let x = fixtures::ex48_s5().with(fixtures::EX48_V);
        println!("    removing {x} it points to {}", p.haven(x).expect("|x| < k"));
    }
    Ok(())
}
