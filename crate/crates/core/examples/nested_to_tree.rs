//! A nested separation system turned into a tree-decomposition and back.
//!
//!     cargo run --example nested_to_tree

use blockforge::tree_decomp::build_from_nested;
use blockforge::{Graph, Result, Separation, SeparationSystem, VertexSet};

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

fn main() -> Result<()> {
    // a path of three triangles: 012, 234, 456
    let g = Graph::new(
        7,
        &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)],
    )?;
    let left = Separation::new(&g, set(&[0, 1, 2]), set(&[2, 3, 4, 5, 6]))?;
    let right = Separation::new(&g, set(&[0, 1, 2, 3, 4]), set(&[4, 5, 6]))?;
    let n: SeparationSystem = [left, left.inverse(), right, right.inverse()].into_iter().collect();
    println!("nested: {}", n.is_nested());

    let td = build_from_nested(&g, &n)?;
    for (t, part) in td.parts().iter().enumerate() {
        let hub = if td.is_hub_node(t) { " (hub)" } else { "" };
        println!("node {t}: {part}{hub}");
    }
    for &(u, v) in td.edges() {
        println!("edge {u}-{v}, adhesion {}", td.adhesion_set(u, v));
    }
    println!("valid: {}", td.validate(&g).passed());
    println!("induced system equals N: {}", td.induced_system() == n);
    println!("{}", serde_json::to_string(&td.to_json()).expect("serialises"));
    Ok(())
}
