//! The automorphism group of a graph and canonical separation systems.
//!
//!     cargo run --example automorphisms

use blockforge::automorphism::{is_canonical_system, orbit_closure};
use blockforge::{automorphisms, fixtures, Result, Separation, SeparationSystem, VertexSet};

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

fn main() -> Result<()> {
    // triangles zax, zay, zc1c2 with z=0 a=1 x=2 y=3 c1=4 c2=5
    let g = fixtures::g_tri();
    let aut = automorphisms(&g)?;
    println!("|Aut| = {}", aut.order());
    for phi in aut.iter() {
        println!("  {phi:?}");
    }
    println!("closed under composition and inverses: {}", aut.is_group());

    let fixing_x = aut.set_stabilizer(set(&[2]));
    println!("automorphisms fixing x: {}", fixing_x.order());

    let s = Separation::new(&g, set(&[0, 1, 2]), set(&[0, 1, 3, 4, 5]))?;
    let single: SeparationSystem = [s, s.inverse()].into_iter().collect();
    println!("{{s, s*}} canonical: {}", is_canonical_system(&aut, &single));
    let orbit = orbit_closure(&aut, &single);
    println!("its orbit closure has {} members:", orbit.len());
    for sep in &orbit {
        println!("  {sep}");
    }
    println!("orbit closure canonical: {}", is_canonical_system(&aut, &orbit));
    Ok(())
}
