//! Vertex permutations and exhaustive automorphism groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{check_cap, Graph};
use crate::separation::SeparationSystem;
use crate::vertex_set::VertexSet;

/// A permutation of `0..capacity`; ids outside the graph's vertex set are fixed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Panics unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Permutation(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn apply_set(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.0[v]).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn preserves(&self, g: &Graph) -> bool {
        self.apply_set(g.vertices()) == g.vertices()
            && g.vertices()
                .iter()
                .all(|v| self.apply_set(g.neighbours(v)) == g.neighbours(self.0[v]))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation, fixed points omitted
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut v = start;
            let mut first = true;
            while !seen[v] {
                seen[v] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
                first = false;
                v = self.0[v];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "id")?;
        }
        Ok(())
    }
}

/// The full automorphism group of a graph, listed element by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    perms: Vec<Permutation>,
}

impl AutomorphismGroup {
    pub fn trivial(n: usize) -> Self {
        AutomorphismGroup {
            perms: vec![Permutation::identity(n)],
        }
    }

    /// Wraps a list of permutations; the caller guarantees closure.
    pub fn from_elements(mut perms: Vec<Permutation>) -> Self {
        perms.sort();
        perms.dedup();
        AutomorphismGroup { perms }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.perms.iter()
    }

    /// Elements satisfying `keep`; the caller guarantees the result is a subgroup.
    pub fn subgroup(&self, keep: impl Fn(&Permutation) -> bool) -> AutomorphismGroup {
        AutomorphismGroup {
            perms: self.perms.iter().filter(|p| keep(p)).cloned().collect(),
        }
    }

    pub fn set_stabilizer(&self, set: VertexSet) -> AutomorphismGroup {
        self.subgroup(|p| p.apply_set(set) == set)
    }

    /// Closure, identity and inverses.
    pub fn is_group(&self) -> bool {
        let Some(first) = self.perms.first() else {
            return false;
        };
        let n = first.images().len();
        let contains = |p: &Permutation| self.perms.binary_search(p).is_ok();
        contains(&Permutation::identity(n))
            && self.perms.iter().all(|p| contains(&p.inverse()))
            && self
                .perms
                .iter()
                .all(|p| self.perms.iter().all(|q| contains(&p.compose(q))))
    }
}

/// All automorphisms of `g`, by backtracking over vertex images pruned by
/// degree and by the multiset of neighbour degrees.
pub fn automorphisms(g: &Graph) -> Result<AutomorphismGroup> {
    check_cap(g)?;
    let n = g.capacity();
    let verts: Vec<usize> = g.vertices().iter().collect();
    if verts.is_empty() {
        return Ok(AutomorphismGroup::trivial(n));
    }
    let invariant = |v: usize| {
        let mut nd: Vec<usize> = g.neighbours(v).iter().map(|w| g.degree(w)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let inv: Vec<_> = (0..n)
        .map(|v| {
            if g.vertices().contains(v) {
                Some(invariant(v))
            } else {
                None
            }
        })
        .collect();

    // Visit vertices so that each one (after the first of its component) has
    // an already placed neighbour; adjacency then prunes early.
    let mut order = Vec::with_capacity(verts.len());
    let mut placed = VertexSet::EMPTY;
    let class_size = |v: usize| verts.iter().filter(|&&w| inv[w] == inv[v]).count();
    while placed != g.vertices() {
        let start = (g.vertices() - placed)
            .iter()
            .min_by_key(|&v| (class_size(v), v))
            .expect("unplaced vertex");
        let mut queue = std::collections::VecDeque::from([start]);
        placed.insert(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.neighbours(v) - placed {
                placed.insert(w);
                queue.push_back(w);
            }
        }
    }

    let mut image = vec![usize::MAX; n];
    let mut used = VertexSet::EMPTY;
    let mut out = Vec::new();
    search(g, &order, &inv, 0, &mut image, &mut used, &mut out);
    let perms = out
        .into_iter()
        .map(|img: Vec<usize>| {
            let full = (0..n).map(|v| if img[v] == usize::MAX { v } else { img[v] }).collect();
            Permutation(full)
        })
        .collect();
    Ok(AutomorphismGroup::from_elements(perms))
}

#[allow(clippy::too_many_arguments)]
fn search<I: PartialEq>(
    g: &Graph,
    order: &[usize],
    inv: &[Option<I>],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut VertexSet,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == order.len() {
        out.push(image.clone());
        return;
    }
    let v = order[depth];
    for w in g.vertices() - *used {
        if inv[w] != inv[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(v, u) == g.has_edge(w, image[u]));
        if !consistent {
            continue;
        }
        image[v] = w;
        used.insert(w);
        search(g, order, inv, depth + 1, image, used, out);
        used.remove(w);
        image[v] = usize::MAX;
    }
}

/// `S` is invariant under every automorphism.
pub fn is_canonical_system(aut: &AutomorphismGroup, s: &SeparationSystem) -> bool {
    aut.iter().all(|p| s.iter().all(|sep| s.contains(&sep.apply(p))))
}

/// Smallest automorphism-invariant superset of `s`.
pub fn orbit_closure(aut: &AutomorphismGroup, s: &SeparationSystem) -> SeparationSystem {
    s.iter().flat_map(|sep| aut.iter().map(move |p| sep.apply(p))).collect()
}
