//! Separations of the 4-cycle: order, nestedness and the cross-diagram of
//! two crossing separations.
//!
//!     cargo run --example separations_and_corners

use blockforge::{enumerate_separations, Corner, Graph, Result, Separation, VertexSet};

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

fn main() -> Result<()> {
    // 0 - 1 - 2 - 3 - 0
    let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])?;
    let s = Separation::new(&c4, set(&[0, 1, 2]), set(&[2, 3, 0]))?;
    let t = Separation::new(&c4, set(&[1, 2, 3]), set(&[3, 0, 1]))?;
    println!(
        "s = {s}, order {}, proper {}, tight {}",
        s.order(),
        s.is_proper(),
        s.is_tight(&c4)
    );
    println!("t = {t}, order {}", t.order());
    println!("s nested with its inverse: {}", s.nested(&s.inverse()));
    println!("s crosses t: {}", s.crosses(&t));

    let diagram = s.corner_diagram(&t)?;
    println!("center {}", diagram.center);
    for corner in Corner::ALL {
        let c = s.corner_separation(&t, corner);
        let opposite = s.corner_separation(&t, corner.opposite());
        println!(
            "corner {corner:?}: interior {}, separation {c} of order {} (+ opposite {} = {})",
            diagram.interior(corner),
            c.order(),
            opposite.order(),
            c.order() + opposite.order()
        );
    }

    let all = enumerate_separations(&c4, 3)?;
    let proper = all.proper();
    println!(
        "{} separations of order < 3, {} proper, nested: {}",
        all.len(),
        proper.len(),
        proper.is_nested()
    );
    if let Some((x, y)) = proper.crossing_pair() {
        println!("first crossing pair: {x} and {y}");
    }
    Ok(())
}
