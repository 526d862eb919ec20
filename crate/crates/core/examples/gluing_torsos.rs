//! Gluing decompositions of torsos along a host decomposition. The host
//! splits off the triangle z c1 c2; the torso on z a x y is then split into
//! its two triangles.
//!
//!     cargo run --example gluing_torsos

use blockforge::gluing::{glue, hat, is_canonical_family, GluePlan};
use blockforge::{automorphisms, fixtures, Result, TreeDecomposition, VertexSet};

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

fn main() -> Result<()> {
    let g = fixtures::g_tri();
    let host = TreeDecomposition::new(vec![set(&[0, 1, 2, 3]), set(&[0, 4, 5])], [(0, 1)]);
    let split = TreeDecomposition::new(vec![set(&[0, 1, 2]), set(&[0, 1, 3])], [(0, 1)]);
    let family = vec![split.clone(), TreeDecomposition::trivial(set(&[0, 4, 5]))];

    let hatted = hat(&split);
    println!("hat of the torso decomposition:");
    for (x, part) in hatted.td.parts().iter().enumerate() {
        println!("  {part} from {:?}", hatted.origin[x]);
    }

    let aut = automorphisms(&g)?;
    println!("family canonical: {}", is_canonical_family(&g, &host, &family, &aut));
    let plan = GluePlan::new(&g, host, family)?;
    for ((t, u), x) in &plan.gamma {
        println!("host edge {t}->{u} attaches at hatted node {x} of torso {t}");
    }
    let glued = glue(&g, &plan)?;
    for (node, part) in glued.td.parts().iter().enumerate() {
        let hub = if glued.td.is_hub_node(node) { " (hub)" } else { "" };
        println!("glued node {node}: {part}{hub}, from {:?}", glued.origin[node]);
    }
    println!("canonical: {}", glued.td.is_canonical(&aut));
    Ok(())
}
