//! Small graphs shipped with the crate.
//!
//! | name     | vertices | description |
//! |----------|----------|-------------|
//! | `g_p3`   | 3  | path `a - b - c` as `0 - 1 - 2` |
//! | `g_k4`   | 4  | complete graph |
//! | `g_tri`  | 6  | triangles `zax`, `zay`, `zc1c2` on ids `z=0 a=1 x=2 y=3 c1=4 c2=5` |
//! | `g_ex48` | 10 | cliques `K1 = S5 ∪ {a1,a2}`, `K2 = S5 ∪ {b1,b2}` plus `v` joined to `a1,a2,b1,b2`; ids `s1..s5 = 0..4`, `a1,a2 = 5,6`, `b1,b2 = 7,8`, `v = 9` |

use crate::graph::Graph;
use crate::io;
use crate::vertex_set::VertexSet;

pub const G_P3_JSON: &str = include_str!("../fixtures/g_p3.json");
pub const G_K4_JSON: &str = include_str!("../fixtures/g_k4.json");
pub const G_TRI_JSON: &str = include_str!("../fixtures/g_tri.json");
pub const G_EX48_JSON: &str = include_str!("../fixtures/g_ex48.json");

/// `[z, a, x, y, c1, c2]` in `g_tri`.
pub const TRI: [usize; 6] = [0, 1, 2, 3, 4, 5];

pub const EX48_S5: [usize; 5] = [0, 1, 2, 3, 4];
pub const EX48_A: [usize; 2] = [5, 6];
pub const EX48_B: [usize; 2] = [7, 8];
pub const EX48_V: usize = 9;

pub const NAMES: [&str; 4] = ["g_p3", "g_k4", "g_tri", "g_ex48"];

/// Embedded fixture JSON by name; a trailing `.json` is ignored.
pub fn fixture_json(name: &str) -> Option<&'static str> {
    match name.strip_suffix(".json").unwrap_or(name) {
        "g_p3" => Some(G_P3_JSON),
        "g_k4" => Some(G_K4_JSON),
        "g_tri" => Some(G_TRI_JSON),
        "g_ex48" => Some(G_EX48_JSON),
        _ => None,
    }
}

pub fn fixture(name: &str) -> Option<Graph> {
    fixture_json(name).map(|s| io::parse_graph_json(s).expect("embedded fixture parses"))
}

pub fn g_p3() -> Graph {
    fixture("g_p3").unwrap()
}

pub fn g_k4() -> Graph {
    fixture("g_k4").unwrap()
}

pub fn g_tri() -> Graph {
    fixture("g_tri").unwrap()
}

pub fn g_ex48() -> Graph {
    fixture("g_ex48").unwrap()
}

pub fn ex48_s5() -> VertexSet {
    EX48_S5.into_iter().collect()
}

pub fn ex48_k1() -> VertexSet {
    ex48_s5() | EX48_A.into_iter().collect()
}

pub fn ex48_k2() -> VertexSet {
    ex48_s5() | EX48_B.into_iter().collect()
}

/// `{v, a1, a2, b1, b2}`
pub fn ex48_v_side() -> VertexSet {
    EX48_A.into_iter().chain(EX48_B).chain([EX48_V]).collect()
}
