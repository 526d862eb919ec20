//! Gluing tree-decompositions of torsos along a host decomposition.
//!
//! Each torso decomposition is first normalised by [`hat`]: equal adjacent
//! parts are contracted and every edge whose parts are incomparable is
//! subdivided by their intersection. Afterwards every edge joins a part to a
//! proper subset of it, which lets [`canonical_node_for_clique`] pick an
//! automorphism-invariant attachment node for every adhesion set.

use std::collections::BTreeMap;

use crate::automorphism::{AutomorphismGroup, Permutation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree_decomp::{tree_centers, TreeDecomposition};
use crate::vertex_set::VertexSet;

/// Contracts every edge joining two equal parts. Returns the contracted
/// decomposition and, for each old node, its new node. Merged nodes take
/// the position of their smallest old id.
pub fn compress(td: &TreeDecomposition) -> (TreeDecomposition, Vec<usize>) {
    let n = td.len();
    let mut rep: Vec<usize> = (0..n).collect();
    fn root(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        rep[x] = r;
        r
    }
    for &(u, v) in td.edges() {
        if td.part(u) == td.part(v) {
            let (a, b) = (root(&mut rep, u), root(&mut rep, v));
            rep[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..n).map(|t| root(&mut rep, t)).collect();
    let mut kept: Vec<usize> = roots.clone();
    kept.sort_unstable();
    kept.dedup();
    let position: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let map: Vec<usize> = roots.iter().map(|r| position[r]).collect();
    let parts = kept.iter().map(|&r| td.part(r)).collect();
    let edges = td
        .edges()
        .iter()
        .filter(|&&(u, v)| map[u] != map[v])
        .map(|&(u, v)| (map[u], map[v]));
    (TreeDecomposition::new(parts, edges), map)
}

/// Where a node of a hatted decomposition comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HatNode {
    /// A node of the compressed decomposition, by its smallest original id.
    Original(usize),
    /// The node subdividing the edge between these two original nodes.
    Subdivision(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Hat {
    pub td: TreeDecomposition,
    pub origin: Vec<HatNode>,
}

/// Compresses `td`, then subdivides every edge whose parts are
/// incomparable, giving the new node the intersection of the two parts.
pub fn hat(td: &TreeDecomposition) -> Hat {
    let (tilde, map) = compress(td);
    let mut first_original = vec![usize::MAX; tilde.len()];
    for (old, &new) in map.iter().enumerate() {
        first_original[new] = first_original[new].min(old);
    }
    let mut parts = tilde.parts().to_vec();
    let mut origin: Vec<HatNode> = first_original.iter().map(|&o| HatNode::Original(o)).collect();
    let mut edges = Vec::new();
    for &(u, v) in tilde.edges() {
        let (pu, pv) = (tilde.part(u), tilde.part(v));
        if pu.is_subset(pv) || pv.is_subset(pu) {
            edges.push((u, v));
        } else {
            let x = parts.len();
            parts.push(pu & pv);
            origin.push(HatNode::Subdivision(first_original[u], first_original[v]));
            edges.push((u, x));
            edges.push((x, v));
        }
    }
    Hat {
        td: TreeDecomposition::new(parts, edges),
        origin,
    }
}

/// The node of a hatted decomposition chosen for the clique `k`: the
/// centre of the subtree of nodes whose parts contain `k`, or on a central
/// edge the endpoint with the larger part.
pub fn canonical_node_for_clique(hatted: &TreeDecomposition, k: VertexSet) -> Result<usize> {
    let keep: Vec<bool> = hatted.parts().iter().map(|p| k.is_subset(*p)).collect();
    if !keep.iter().any(|&b| b) {
        return Err(Error::Precondition(format!("no part contains {k}")));
    }
    let mut adj = vec![Vec::new(); hatted.len()];
    for &(u, v) in hatted.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    match tree_centers(hatted.len(), &adj, &keep).as_slice() {
        [t] => Ok(*t),
        [t, u] => {
            let (pt, pu) = (hatted.part(*t), hatted.part(*u));
            if pu.is_subset(pt) && pu != pt {
                Ok(*t)
            } else if pt.is_subset(pu) && pt != pu {
                Ok(*u)
            } else {
                Err(Error::violation(
                    "canonical node for clique",
                    format!("central edge with parts {pt} and {pu} not strictly nested"),
                ))
            }
        }
        other => Err(Error::violation(
            "canonical node for clique",
            format!("centres {other:?}"),
        )),
    }
}

/// A host decomposition together with one decomposition per torso and the
/// attachment nodes `gamma(t,u)` for every oriented host edge.
#[derive(Clone, Debug)]
pub struct GluePlan {
    pub host: TreeDecomposition,
    pub torso_decomps: Vec<TreeDecomposition>,
    pub hats: Vec<Hat>,
    pub gamma: BTreeMap<(usize, usize), usize>,
}

impl GluePlan {
    /// Validates every torso decomposition against its torso, rejects any
    /// that separates a host adhesion set, and computes `gamma`.
    pub fn new(g: &Graph, host: TreeDecomposition, torso_decomps: Vec<TreeDecomposition>) -> Result<Self> {
        let report = host.validate(g);
        if !report.passed() {
            return Err(Error::InvalidDecomposition(format!(
                "host: {}",
                report.failures().join("; ")
            )));
        }
        if torso_decomps.len() != host.len() {
            return Err(Error::InvalidDecomposition(format!(
                "{} torso decompositions for {} host nodes",
                torso_decomps.len(),
                host.len()
            )));
        }
        for (t, td) in torso_decomps.iter().enumerate() {
            let torso = host.torso(g, t);
            let report = td.validate(&torso);
            if !report.passed() {
                return Err(Error::InvalidDecomposition(format!(
                    "torso at node {t}: {}",
                    report.failures().join("; ")
                )));
            }
            for u in host.neighbours(t) {
                let adhesion = host.adhesion_set(t, u);
                if !td.parts().iter().any(|p| adhesion.is_subset(*p)) {
                    return Err(Error::InvalidDecomposition(format!(
                        "torso decomposition at node {t} separates adhesion set {adhesion}"
                    )));
                }
            }
        }
        let hats: Vec<Hat> = torso_decomps.iter().map(hat).collect();
        let mut gamma = BTreeMap::new();
        for &(t, u) in host.edges() {
            let adhesion = host.adhesion_set(t, u);
            gamma.insert((t, u), canonical_node_for_clique(&hats[t].td, adhesion)?);
            gamma.insert((u, t), canonical_node_for_clique(&hats[u].td, adhesion)?);
        }
        Ok(GluePlan {
            host,
            torso_decomps,
            hats,
            gamma,
        })
    }

    /// Trivial decomposition at every torso.
    pub fn trivial(g: &Graph, host: TreeDecomposition) -> Result<Self> {
        let decomps = host.parts().iter().map(|p| TreeDecomposition::trivial(*p)).collect();
        GluePlan::new(g, host, decomps)
    }
}

/// The glued decomposition with, for every node, the host node and hatted
/// torso node it came from.
#[derive(Clone, Debug)]
pub struct Glued {
    pub td: TreeDecomposition,
    pub origin: Vec<(usize, usize)>,
}

impl Glued {
    /// Node of the glued tree for hatted node `x` of host node `t`.
    pub fn node(&self, t: usize, x: usize) -> usize {
        self.origin
            .iter()
            .position(|&o| o == (t, x))
            .expect("every hatted node appears")
    }
}

/// Disjoint union of the hatted torso decompositions plus the edges
/// `gamma(t,u) gamma(u,t)` for every host edge `tu`.
pub fn glue(g: &Graph, plan: &GluePlan) -> Result<Glued> {
    let mut parts = Vec::new();
    let mut origin = Vec::new();
    let mut offset = Vec::with_capacity(plan.hats.len());
    let mut edges = Vec::new();
    for (t, h) in plan.hats.iter().enumerate() {
        offset.push(parts.len());
        for (x, p) in h.td.parts().iter().enumerate() {
            parts.push(*p);
            origin.push((t, x));
        }
        edges.extend(h.td.edges().iter().map(|&(x, y)| (offset[t] + x, offset[t] + y)));
    }
    for &(t, u) in plan.host.edges() {
        edges.push((offset[t] + plan.gamma[&(t, u)], offset[u] + plan.gamma[&(u, t)]));
    }
    let td = TreeDecomposition::new(parts, edges);
    let report = td.validate(g);
    if !report.passed() {
        return Err(Error::violation("glue", report.failures().join("; ")));
    }
    Ok(Glued { td, origin })
}

/// Host nodes `t`, `u` and an automorphism `φ` of `g` with `φ[P_t] = P_u`
/// mapping the torso at `t` onto the torso at `u` but not mapping the
/// decomposition at `t` onto the one at `u`, if such a triple exists.
pub fn family_canonicity_witness(
    g: &Graph,
    host: &TreeDecomposition,
    family: &[TreeDecomposition],
    aut: &AutomorphismGroup,
) -> Option<(Permutation, usize, usize)> {
    let torsos: Vec<Graph> = (0..host.len()).map(|t| host.torso(g, t)).collect();
    let codes: Vec<String> = family.iter().map(|td| td.canonical_code()).collect();
    for phi in aut.iter() {
        for t in 0..host.len() {
            let image = phi.apply_set(host.part(t));
            for u in (0..host.len()).filter(|&u| host.part(u) == image) {
                if !maps_graph_onto(phi, &torsos[t], &torsos[u]) {
                    continue;
                }
                if family[t].apply(phi).canonical_code() != codes[u] {
                    return Some((phi.clone(), t, u));
                }
            }
        }
    }
    None
}

pub fn is_canonical_family(
    g: &Graph,
    host: &TreeDecomposition,
    family: &[TreeDecomposition],
    aut: &AutomorphismGroup,
) -> bool {
    family_canonicity_witness(g, host, family, aut).is_none()
}

pub(crate) fn maps_graph_onto(phi: &Permutation, from: &Graph, to: &Graph) -> bool {
    phi.apply_set(from.vertices()) == to.vertices()
        && from
            .vertices()
            .iter()
            .all(|v| phi.apply_set(from.neighbours(v)) == to.neighbours(phi.image(v)))
}
