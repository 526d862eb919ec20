//! Refining a nested system until it distinguishes a set of profiles
//! efficiently. The two 7-blocks here need a separation of order 6 that
//! no block-based separation provides.
//!
//!     cargo run --example refine

use blockforge::pipeline::{mode_profiles, Mode};
use blockforge::refine::{induce_profile_on_torso, refine};
use blockforge::{fixtures, min_distinguisher_order, Result, SeparationSystem};

fn main() -> Result<()> {
    let g = fixtures::g_ex48();
    let ps = mode_profiles(&g, Mode::KProfiles(7))?;
    println!(
        "{} 7-profiles; required order {:?}",
        ps.len(),
        min_distinguisher_order(&g, &ps[0], &ps[1])?
    );

    let r = refine(&g, &SeparationSystem::new(), &ps)?;
    println!("T(N) has {} node(s); torso decomposition parts:", r.base.len());
    for td in &r.torso_decomps {
        for part in td.parts() {
            println!("  {part}");
        }
    }
    println!("refinement:");
    for s in &r.nbar {
        println!("  {s} of order {}", s.order());
    }
    // how each profile sees the parts of the refined decomposition
    for t in 0..r.glued.len() {
        for (i, q) in ps.iter().enumerate() {
            let tp = induce_profile_on_torso(&g, &r.glued, t, q)?;
            println!("profile {i} at part {}: {:?}", r.glued.part(t), tp.case);
        }
    }
    Ok(())
}
