//! Decomposing along the almost nested system S(B) of a set of blocks,
//! following focusing sequences into ever smaller vertex sets.
//!
//!     cargo run --example focusing

use blockforge::focusing::{build_from_almost_nested, is_almost_nested, n_beta, rank};
use blockforge::pipeline::{inducing_blocks, mode_profiles, s_of_blocks, Mode};
use blockforge::{fixtures, Result};

fn main() -> Result<()> {
    let g = fixtures::g_tri();
    let ps = mode_profiles(&g, Mode::KProfiles(3))?;
    let blocks: Vec<_> = inducing_blocks(&g, &ps)?.into_iter().map(|(b, _)| b).collect();
    let s = s_of_blocks(&g, &blocks)?;
    println!("S(B) has {} separations:", s.len());
    for sep in &s {
        println!("  {sep} of order {}", sep.order());
    }
    println!("almost nested: {}", is_almost_nested(&g, &s)?);

    let focused = build_from_almost_nested(&g, &s)?;
    for beta in std::iter::once(g.vertices()).chain(focused.maximal_betas.iter().copied()) {
        let minimal = n_beta(&s, beta);
        match rank(&s, beta) {
            Some(r) => println!("at {beta}: rank {r}, {} minimal restrictions", minimal.len()),
            None => println!("at {beta}: nothing left to separate"),
        }
    }
    for (t, part) in focused.td.parts().iter().enumerate() {
        let hub = if focused.td.is_hub_node(t) { " (hub)" } else { "" };
        println!("part {t}: {part}{hub}");
    }
    Ok(())
}
