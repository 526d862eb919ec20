//! Simple undirected graphs over a set of integer vertex ids.
//!
//! A graph carries an explicit vertex universe. Induced subgraphs and torsos
//! keep the ids of the graph they were derived from, so separations and
//! vertex sets never need to be translated between a graph and its pieces.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Default bound on the number of vertices accepted by the exhaustive routines.
pub const DEFAULT_CAP: usize = 14;

/// Environment variable read once to initialise the vertex cap.
pub const CAP_ENV: &str = "BLOCKFORGE_CAP";

static CAP: AtomicUsize = AtomicUsize::new(0);
static CAP_INIT: OnceLock<()> = OnceLock::new();

/// Current vertex cap for exhaustive enumeration.
pub fn vertex_cap() -> usize {
    CAP_INIT.get_or_init(|| {
        let from_env = std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .unwrap_or(DEFAULT_CAP);
        let _ = CAP.compare_exchange(0, from_env, Ordering::SeqCst, Ordering::SeqCst);
    });
    CAP.load(Ordering::SeqCst)
}

pub fn set_vertex_cap(cap: usize) {
    CAP_INIT.get_or_init(|| ());
    CAP.store(cap.min(MAX_VERTICES), Ordering::SeqCst);
}

pub(crate) fn check_cap(g: &Graph) -> Result<()> {
    let cap = vertex_cap();
    if g.vertex_count() > cap {
        Err(Error::CapExceeded {
            vertices: g.vertex_count(),
            cap,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    capacity: usize,
    vertices: VertexSet,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Graph on `0..n`. Rejects self-loops, duplicate edges and endpoints
    /// out of range.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceed the supported width of {MAX_VERTICES}"
            )));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge #{i} ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge #{i} is a self-loop at {u}")));
            }
            if adj[u].contains(v) {
                return Err(Error::InvalidGraph(format!("edge #{i} ({u},{v}) is a duplicate")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph {
            capacity: n,
            vertices: VertexSet::full(n),
            adj,
        })
    }

    /// Upper bound on vertex ids (ids are `< capacity`).
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.capacity && self.adj[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices {
            for v in self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.iter().map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    /// Vertices outside `set` with a neighbour in `set`.
    pub fn neighbourhood(&self, set: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in set & self.vertices {
            out = out | self.adj[v];
        }
        out - set
    }

    /// Connected components of the subgraph induced by `within`, sorted.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within & self.vertices;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next = next | (self.adj[v] & rest);
                }
                frontier = next - comp;
                comp = comp | frontier;
            }
            rest = rest - comp;
            out.push(comp);
        }
        out.sort();
        out
    }

    /// Components of `G - x`.
    pub fn components_without(&self, x: VertexSet) -> Vec<VertexSet> {
        self.components_within(self.vertices - x)
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.vertices).len() <= 1
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|v| (set - VertexSet::singleton(v)).is_subset(self.adj[v]))
    }

    /// `G[x]`, keeping vertex ids.
    pub fn induced(&self, x: VertexSet) -> Graph {
        let x = x & self.vertices;
        let adj = (0..self.capacity)
            .map(|v| {
                if x.contains(v) {
                    self.adj[v] & x
                } else {
                    VertexSet::EMPTY
                }
            })
            .collect();
        Graph {
            capacity: self.capacity,
            vertices: x,
            adj,
        }
    }

    /// Copy of `self` with `set` turned into a clique.
    pub fn with_clique(&self, set: VertexSet) -> Graph {
        let mut g = self.clone();
        let set = set & self.vertices;
        for v in set {
            g.adj[v] = g.adj[v] | set.without(v);
        }
        g
    }

    /// `(A, B)` is a separation: `A ∪ B = V` and no edge joins `A \ B` to `B \ A`.
    pub fn is_separation(&self, a: VertexSet, b: VertexSet) -> bool {
        if a | b != self.vertices {
            return false;
        }
        let b_only = b - a;
        (a - b).iter().all(|v| self.adj[v].is_disjoint(b_only))
    }

    /// Dense relabelling onto `0..vertex_count`: returns the relabelled
    /// graph and the embedding `new id -> old id`.
    pub fn relabel_dense(&self) -> (Graph, Vec<usize>) {
        let embedding: Vec<usize> = self.vertices.iter().collect();
        let mut index = vec![usize::MAX; self.capacity];
        for (i, &v) in embedding.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self.edges().into_iter().map(|(u, v)| (index[u], index[v])).collect();
        let g = Graph::new(embedding.len(), &edges).expect("relabelling preserves simplicity");
        (g, embedding)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(3, &[(0, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, &[(0, 1), (1, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, &[(0, 3)]), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn components_and_neighbourhood() {
        // 0-1-2 3-4
        let g = Graph::new(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components_within(g.vertices()), vec![set(&[0, 1, 2]), set(&[3, 4])]);
        assert_eq!(
            g.components_without(set(&[1])),
            vec![set(&[0]), set(&[2]), set(&[3, 4])]
        );
        assert_eq!(g.neighbourhood(set(&[0])), set(&[1]));
        assert!(!g.is_connected());
    }

    #[test]
    fn induced_keeps_ids() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.induced(set(&[1, 2, 3]));
        assert_eq!(h.vertices(), set(&[1, 2, 3]));
        assert_eq!(h.edges(), vec![(1, 2), (2, 3)]);
        let t = h.with_clique(set(&[1, 3]));
        assert!(t.has_edge(1, 3));
        let (d, emb) = t.relabel_dense();
        assert_eq!(emb, vec![1, 2, 3]);
        assert_eq!(d.edge_count(), 3);
    }

    #[test]
    fn separation_predicate() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p3.is_separation(set(&[0, 1]), set(&[1, 2])));
        assert!(!p3.is_separation(set(&[0]), set(&[2])));
        // edge 0-1 crosses
        assert!(!p3.is_separation(set(&[0]), set(&[1, 2])));
    }
}
