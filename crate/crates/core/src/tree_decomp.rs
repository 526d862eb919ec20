//! Tree-decompositions and the tree built from a nested separation system.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automorphism::{AutomorphismGroup, Permutation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::s_blocks;
use crate::separation::{Separation, SeparationSystem};
use crate::vertex_set::VertexSet;

/// A tree with a vertex set ("part") at every node. Nodes are `0..len`;
/// edges are stored once with the smaller endpoint first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeDecomposition {
    parts: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

/// Outcome of checking the tree-decomposition axioms. Each field holds a
/// witness of the failure, or `None` when the axiom holds.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub tree: Option<String>,
    pub cover: Option<String>,
    pub edges: Option<String>,
    pub connectivity: Option<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.tree.is_none() && self.cover.is_none() && self.edges.is_none() && self.connectivity.is_none()
    }

    pub fn failures(&self) -> Vec<String> {
        [
            ("tree", &self.tree),
            ("(T1)", &self.cover),
            ("(T2)", &self.edges),
            ("(T3)", &self.connectivity),
        ]
        .into_iter()
        .filter_map(|(name, w)| w.as_ref().map(|w| format!("{name}: {w}")))
        .collect()
    }
}

impl TreeDecomposition {
    pub fn new(parts: Vec<VertexSet>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        TreeDecomposition { parts, edges }
    }

    /// A single node whose part is `v`.
    pub fn trivial(v: VertexSet) -> Self {
        TreeDecomposition {
            parts: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, t: usize) -> VertexSet {
        self.parts[t]
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Union of all parts.
    pub fn vertices(&self) -> VertexSet {
        self.parts.iter().fold(VertexSet::EMPTY, |acc, p| acc | *p)
    }

    pub fn neighbours(&self, t: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == t {
                    Some(v)
                } else if v == t {
                    Some(u)
                } else {
                    None
                }
            })
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.parts.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Nodes reachable from `start` without using the edge `start - avoid`.
    fn side(&self, adj: &[Vec<usize>], start: usize, avoid: usize) -> Vec<usize> {
        let mut seen = vec![false; self.parts.len()];
        seen[start] = true;
        seen[avoid] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        if self.parts.is_empty() || self.edges.len() + 1 != self.parts.len() {
            return false;
        }
        if self.edges.iter().any(|&(u, v)| u == v || v >= self.parts.len()) {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.parts.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks the tree shape and (T1)–(T3) against `g`.
    pub fn validate(&self, g: &Graph) -> ValidationReport {
        let mut report = ValidationReport::default();
        if !self.is_tree() {
            report.tree = Some(format!(
                "{} nodes, {} edges, not a connected acyclic graph",
                self.parts.len(),
                self.edges.len()
            ));
        }
        let covered = self.vertices();
        if covered != g.vertices() {
            report.cover = Some(format!("parts cover {covered}, graph has {}", g.vertices()));
        }
        if let Some((u, v)) = g
            .edges()
            .into_iter()
            .find(|&(u, v)| !self.parts.iter().any(|p| p.contains(u) && p.contains(v)))
        {
            report.edges = Some(format!("edge {u}-{v} lies in no part"));
        }
        if report.tree.is_none() {
            // (T3) is equivalent to: the nodes containing any vertex form a subtree
            let adj = self.adjacency();
            for v in covered {
                let holders: Vec<usize> = (0..self.parts.len()).filter(|&t| self.parts[t].contains(v)).collect();
                let mut seen = BTreeSet::from([holders[0]]);
                let mut stack = vec![holders[0]];
                while let Some(x) = stack.pop() {
                    for &y in &adj[x] {
                        if self.parts[y].contains(v) && seen.insert(y) {
                            stack.push(y);
                        }
                    }
                }
                if seen.len() != holders.len() {
                    report.connectivity = Some(format!("nodes containing vertex {v} are disconnected"));
                    break;
                }
            }
        }
        report
    }

    pub fn adhesion_set(&self, u: usize, v: usize) -> VertexSet {
        self.parts[u] & self.parts[v]
    }

    /// Largest adhesion set size; 0 for a single node.
    pub fn adhesion(&self) -> usize {
        self.edges
            .iter()
            .map(|&(u, v)| self.adhesion_set(u, v).len())
            .max()
            .unwrap_or(0)
    }

    /// `G[P_t]` with every adhesion set at `t` made complete. Vertex ids are
    /// those of `g`.
    pub fn torso(&self, g: &Graph, t: usize) -> Graph {
        let mut h = g.induced(self.parts[t]);
        for u in self.neighbours(t) {
            h = h.with_clique(self.adhesion_set(t, u));
        }
        h
    }

    /// Separation induced by the oriented edge `t1 -> t2`: the union of the
    /// parts on the `t1` side against the union on the `t2` side.
    pub fn induced_separation(&self, t1: usize, t2: usize) -> Separation {
        let adj = self.adjacency();
        self.induced_with(&adj, t1, t2)
    }

    fn induced_with(&self, adj: &[Vec<usize>], t1: usize, t2: usize) -> Separation {
        let union = |nodes: Vec<usize>| nodes.into_iter().fold(VertexSet::EMPTY, |acc, t| acc | self.parts[t]);
        Separation::new_unchecked(union(self.side(adj, t1, t2)), union(self.side(adj, t2, t1)))
    }

    /// Every oriented edge with the separation it induces.
    pub fn oriented_edges(&self) -> Vec<((usize, usize), Separation)> {
        let adj = self.adjacency();
        self.edges
            .iter()
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .map(|(u, v)| ((u, v), self.induced_with(&adj, u, v)))
            .collect()
    }

    /// `N(T)`: the separations induced by all oriented edges.
    pub fn induced_system(&self) -> SeparationSystem {
        self.oriented_edges().into_iter().map(|(_, s)| s).collect()
    }

    /// The part is contained in the part of some neighbour.
    pub fn is_hub_node(&self, t: usize) -> bool {
        self.neighbours(t)
            .into_iter()
            .any(|u| self.parts[t].is_subset(self.parts[u]))
    }

    /// `(A ∩ P_t, B ∩ P_t)` if the separator lies in `P_t` and no adhesion
    /// set at `t` is separated.
    pub fn induces_on_torso(&self, s: &Separation, t: usize) -> Result<Separation> {
        let part = self.parts[t];
        if !s.separator().is_subset(part) {
            return Err(Error::NotApplicable(format!(
                "separator {} leaves the part {part}",
                s.separator()
            )));
        }
        for u in self.neighbours(t) {
            let adhesion = self.adhesion_set(t, u);
            if s.separates(adhesion) {
                return Err(Error::NotApplicable(format!("{s} separates adhesion set {adhesion}")));
            }
        }
        Ok(s.restrict(part))
    }

    pub fn apply(&self, perm: &Permutation) -> TreeDecomposition {
        TreeDecomposition {
            parts: self.parts.iter().map(|p| perm.apply_set(*p)).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Central node(s) of the tree.
    pub fn centers(&self) -> Vec<usize> {
        tree_centers(self.parts.len(), &self.adjacency(), &vec![true; self.parts.len()])
    }

    /// Canonical string of the part-labelled tree: equal codes iff the
    /// trees are isomorphic by a map preserving parts.
    pub fn canonical_code(&self) -> String {
        let adj = self.adjacency();
        self.centers()
            .into_iter()
            .map(|c| self.code_from(&adj, c, usize::MAX))
            .min()
            .unwrap_or_default()
    }

    fn code_from(&self, adj: &[Vec<usize>], t: usize, parent: usize) -> String {
        let mut children: Vec<String> = adj[t]
            .iter()
            .filter(|&&u| u != parent)
            .map(|&u| self.code_from(adj, u, t))
            .collect();
        children.sort();
        format!("({}{})", self.parts[t].to_hex(), children.concat())
    }

    /// Some part-preserving tree isomorphism exists.
    pub fn is_isomorphic_to(&self, other: &TreeDecomposition) -> bool {
        self.parts.len() == other.parts.len() && self.canonical_code() == other.canonical_code()
    }

    /// First automorphism that does not induce an automorphism of the
    /// decomposition, if any.
    pub fn canonicity_witness(&self, aut: &AutomorphismGroup) -> Option<Permutation> {
        let code = self.canonical_code();
        aut.iter().find(|p| self.apply(p).canonical_code() != code).cloned()
    }

    pub fn is_canonical(&self, aut: &AutomorphismGroup) -> bool {
        self.canonicity_witness(aut).is_none()
    }

    pub fn to_json(&self) -> TreeDecompositionJson {
        TreeDecompositionJson {
            nodes: self
                .parts
                .iter()
                .enumerate()
                .map(|(id, p)| NodeJson {
                    id,
                    part: p.iter().collect(),
                })
                .collect(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(raw: &TreeDecompositionJson) -> Result<Self> {
        let mut parts = vec![None; raw.nodes.len()];
        for node in &raw.nodes {
            let slot = parts
                .get_mut(node.id)
                .ok_or_else(|| Error::InvalidDecomposition(format!("node id {} out of range", node.id)))?;
            if slot.is_some() {
                return Err(Error::InvalidDecomposition(format!("duplicate node id {}", node.id)));
            }
            *slot = Some(node.part.iter().copied().collect());
        }
        let parts: Vec<VertexSet> = parts.into_iter().map(|p| p.expect("all ids seen")).collect();
        if let Some(e) = raw.edges.iter().find(|e| e[0] >= parts.len() || e[1] >= parts.len()) {
            return Err(Error::InvalidDecomposition(format!(
                "edge {e:?} has an unknown endpoint"
            )));
        }
        Ok(TreeDecomposition::new(parts, raw.edges.iter().map(|e| (e[0], e[1]))))
    }

    /// Graphviz rendering: parts as node labels, hub nodes dashed, adhesion
    /// sets as edge labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph decomposition {\n  node [shape=box];\n");
        for (t, part) in self.parts.iter().enumerate() {
            let style = if self.is_hub_node(t) { ", style=dashed" } else { "" };
            let _ = writeln!(out, "  n{t} [label=\"{part}\"{style}];");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  n{u} -- n{v} [label=\"{}\"];", self.adhesion_set(u, v));
        }
        out.push_str("}\n");
        out
    }
}

/// Serialised form: `{"nodes":[{"id":0,"part":[0,1]}],"edges":[[0,1]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TreeDecompositionJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NodeJson {
    pub id: usize,
    pub part: Vec<usize>,
}

/// Centers of the subforest induced by `keep`, assumed connected.
pub(crate) fn tree_centers(n: usize, adj: &[Vec<usize>], keep: &[bool]) -> Vec<usize> {
    let mut alive: Vec<usize> = (0..n).filter(|&t| keep[t]).collect();
    let mut degree: Vec<usize> = (0..n)
        .map(|t| {
            if keep[t] {
                adj[t].iter().filter(|&&u| keep[u]).count()
            } else {
                0
            }
        })
        .collect();
    let mut removed = vec![false; n];
    while alive.len() > 2 {
        let leaves: Vec<usize> = alive.iter().copied().filter(|&t| degree[t] <= 1).collect();
        for &leaf in &leaves {
            removed[leaf] = true;
            for &u in &adj[leaf] {
                if keep[u] && !removed[u] {
                    degree[u] -= 1;
                }
            }
        }
        alive.retain(|&t| !removed[t]);
    }
    alive
}

/// Builds `T(N)` for a nested, symmetric system of proper separations.
///
/// Two separations point to the same node when one is an immediate
/// predecessor of the other's inverse; the part of a node is the
/// intersection of the `B`-sides pointing to it, and each pair
/// `{s, s*}` becomes one edge. The result is checked against the
/// guarantees it is supposed to have before being returned.
pub fn build_from_nested(g: &Graph, n: &SeparationSystem) -> Result<TreeDecomposition> {
    for s in n {
        if !g.is_separation(s.a(), s.b()) {
            return Err(Error::NotASeparation {
                a: s.a(),
                b: s.b(),
                reason: "not a separation of the graph",
            });
        }
        if !s.is_proper() {
            return Err(Error::Improper(*s));
        }
        if !n.contains(&s.inverse()) {
            return Err(Error::NotSymmetric(*s));
        }
    }
    if let Some((s, t)) = n.crossing_pair() {
        return Err(Error::Crossing(s, t));
    }
    if n.is_empty() {
        return Ok(TreeDecomposition::trivial(g.vertices()));
    }

    let seps = n.to_vec();
    let index: BTreeMap<Separation, usize> = seps.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut uf: Vec<usize> = (0..seps.len()).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let next = uf[y];
            uf[y] = r;
            y = next;
        }
        r
    }
    for (i, s) in seps.iter().enumerate() {
        for (j, t) in seps.iter().enumerate() {
            if i == j {
                continue;
            }
            let ts = t.inverse();
            if s.lt(&ts) && !seps.iter().any(|r| s.lt(r) && r.lt(&ts)) {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                uf[a] = b;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..seps.len() {
        let r = find(&mut uf, i);
        classes.entry(r).or_default().push(i);
    }
    let mut nodes: Vec<(VertexSet, usize, Vec<usize>)> = classes
        .into_values()
        .map(|members| {
            let part = members.iter().fold(g.vertices(), |acc, &i| acc & seps[i].b());
            (part, members[0], members)
        })
        .collect();
    nodes.sort();
    let mut node_of = vec![0; seps.len()];
    for (t, (_, _, members)) in nodes.iter().enumerate() {
        for &i in members {
            node_of[i] = t;
        }
    }
    let edges: Vec<(usize, usize)> = seps
        .iter()
        .enumerate()
        .map(|(i, s)| (node_of[i], node_of[index[&s.inverse()]]))
        .collect();
    let td = TreeDecomposition::new(nodes.into_iter().map(|(p, _, _)| p).collect(), edges);
    check_tree_from_nested(g, n, &td)?;
    Ok(td)
}

/// Verifies that `td` realises `n`: a valid decomposition whose induced
/// separations are exactly `n`, each induced by exactly one oriented edge,
/// with every `n`-block a part and every part an `n`-block or a hub.
pub fn check_tree_from_nested(g: &Graph, n: &SeparationSystem, td: &TreeDecomposition) -> Result<()> {
    let report = td.validate(g);
    if !report.passed() {
        return Err(Error::violation(
            "tree from nested system",
            report.failures().join("; "),
        ));
    }
    let oriented = td.oriented_edges();
    let induced: SeparationSystem = oriented.iter().map(|(_, s)| *s).collect();
    if &induced != n {
        return Err(Error::violation(
            "tree from nested system",
            format!("induced system {induced:?} differs from {n:?}"),
        ));
    }
    if oriented.len() != n.len() {
        return Err(Error::violation(
            "tree from nested system",
            "some separation is induced by several oriented edges",
        ));
    }
    let blocks = s_blocks(g, n)?;
    if let Some(b) = blocks.iter().find(|b| !td.parts().contains(b)) {
        return Err(Error::violation(
            "tree from nested system",
            format!("block {b} is not a part"),
        ));
    }
    if let Some(t) = (0..td.len()).find(|&t| !blocks.contains(&td.part(t)) && !td.is_hub_node(t)) {
        return Err(Error::violation(
            "tree from nested system",
            format!("part {} is neither a block nor a hub", td.part(t)),
        ));
    }
    Ok(())
}
