//! Brute-force reference implementations used to check the library.
//!
//! Everything here works on raw `u32` bitmasks and follows the textbook
//! definitions as literally as possible, trading speed for obviousness.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use blockforge::{Graph, Profile, Separation, SeparationSystem, TreeDecomposition};

pub type Sep = (u32, u32);

#[derive(Clone, Debug)]
pub struct G {
    pub v: u32,
    pub adj: [u32; 32],
}

impl G {
    pub fn from_graph(g: &Graph) -> G {
        let mut adj = [0u32; 32];
        for (u, w) in g.edges() {
            adj[u] |= 1 << w;
            adj[w] |= 1 << u;
        }
        G {
            v: g.vertices().bits(),
            adj,
        }
    }

    pub fn verts(&self) -> Vec<usize> {
        bits(self.v)
    }

    pub fn n(&self) -> usize {
        self.v.count_ones() as usize
    }

    pub fn edge(&self, u: usize, w: usize) -> bool {
        self.adj[u] & (1 << w) != 0
    }

    /// `G[P]` plus a clique on every set in `cliques`.
    pub fn torso(&self, part: u32, cliques: &[u32]) -> G {
        let mut adj = [0u32; 32];
        for u in bits(part) {
            adj[u] = self.adj[u] & part;
        }
        for &c in cliques {
            for u in bits(c) {
                adj[u] |= c & !(1 << u);
            }
        }
        G { v: part, adj }
    }
}

pub fn bits(x: u32) -> Vec<usize> {
    (0..32).filter(|i| x & (1 << i) != 0).collect()
}

pub fn mask(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, v| m | 1 << v)
}

pub fn pc(x: u32) -> usize {
    x.count_ones() as usize
}

pub fn sep(s: &Separation) -> Sep {
    (s.a().bits(), s.b().bits())
}

pub fn inv(s: Sep) -> Sep {
    (s.1, s.0)
}

pub fn order(s: Sep) -> usize {
    pc(s.0 & s.1)
}

pub fn leq(s: Sep, t: Sep) -> bool {
    s.0 & !t.0 == 0 && t.1 & !s.1 == 0
}

pub fn nested(s: Sep, t: Sep) -> bool {
    leq(s, t) || leq(s, inv(t)) || leq(inv(s), t) || leq(inv(s), inv(t))
}

pub fn proper(s: Sep) -> bool {
    s.0 & !s.1 != 0 && s.1 & !s.0 != 0
}

/// Meets both strict sides.
pub fn separates(s: Sep, x: u32) -> bool {
    x & s.0 & !s.1 != 0 && x & s.1 & !s.0 != 0
}

pub fn is_separation(g: &G, s: Sep) -> bool {
    if s.0 | s.1 != g.v || (s.0 | s.1) & !g.v != 0 {
        return false;
    }
    let only_a = s.0 & !s.1;
    let only_b = s.1 & !s.0;
    bits(only_a).into_iter().all(|u| g.adj[u] & only_b == 0)
}

/// Every separation of order `< bound`, by assigning each vertex to A only,
/// B only or both.
pub fn separations(g: &G, bound: usize) -> Vec<Sep> {
    let vs = g.verts();
    let mut out = Vec::new();
    let total = 3usize.pow(vs.len() as u32);
    for mut code in 0..total {
        let (mut a, mut b) = (0u32, 0u32);
        for &v in &vs {
            match code % 3 {
                0 => a |= 1 << v,
                1 => b |= 1 << v,
                _ => {
                    a |= 1 << v;
                    b |= 1 << v;
                }
            }
            code /= 3;
        }
        if order((a, b)) < bound && is_separation(g, (a, b)) {
            out.push((a, b));
        }
    }
    out.sort_by_key(|&s| (order(s), s));
    out
}

pub fn components(g: &G, within: u32) -> Vec<u32> {
    let mut left = within;
    let mut out = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = 1u32 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= g.adj[u] & within & !comp;
            }
            comp |= next;
            frontier = next;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

pub fn neighbourhood(g: &G, x: u32) -> u32 {
    bits(x).into_iter().fold(0, |m, u| m | g.adj[u]) & !x
}

/// Maximal vertex sets no member of `seps` separates.
pub fn s_blocks(g: &G, seps: &[Sep]) -> Vec<u32> {
    let vs = g.verts();
    let mut insep: Vec<u32> = Vec::new();
    for code in 1u32..(1 << vs.len()) {
        let x = bits(code).into_iter().fold(0, |m, i| m | 1 << vs[i]);
        if seps.iter().all(|&s| !separates(s, x)) {
            insep.push(x);
        }
    }
    let mut out: Vec<u32> = insep
        .iter()
        .copied()
        .filter(|&x| !insep.iter().any(|&y| y != x && x & !y == 0))
        .collect();
    out.sort();
    out
}

pub fn k_blocks(g: &G, k: usize) -> Vec<u32> {
    let seps = separations(g, k);
    s_blocks(g, &seps).into_iter().filter(|&b| pc(b) >= k).collect()
}

pub type ProfileSet = BTreeSet<Sep>;

pub fn profile_set(g: &Graph, p: &Profile) -> ProfileSet {
    p.separations(g).unwrap().iter().map(sep).collect()
}

/// `{(A,B) ∈ S_<k : b ⊆ B}`
pub fn block_profile(g: &G, b: u32, k: usize) -> ProfileSet {
    separations(g, k).into_iter().filter(|s| b & !s.1 == 0).collect()
}

/// A consistent orientation of `S_<k` satisfying (P), checked literally.
pub fn is_profile(g: &G, k: usize, p: &ProfileSet) -> bool {
    let all = separations(g, k);
    for &s in &all {
        if p.contains(&s) == p.contains(&inv(s)) && s != inv(s) {
            return false;
        }
        if s == inv(s) && !p.contains(&s) {
            return false;
        }
    }
    if p.iter().any(|s| !all.contains(s)) {
        return false;
    }
    for &s in p {
        for &t in &all {
            if leq(t, s) && !p.contains(&t) {
                return false;
            }
        }
    }
    for &s in p {
        for &t in p {
            let corner = (s.1 & t.1, s.0 | t.0);
            if p.contains(&corner) {
                return false;
            }
        }
    }
    true
}

/// All `k`-profiles: a search over orientations of `S_<k` with unit
/// propagation of consistency and of (P); every result is re-checked.
pub fn profiles(g: &G, k: usize) -> Vec<ProfileSet> {
    let all = separations(g, k);
    let index: HashMap<Sep, usize> = all.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let inverse: Vec<usize> = all.iter().map(|&s| index[&inv(s)]).collect();
    let mut out = Vec::new();
    let start = vec![None; all.len()];
    search(&all, &index, &inverse, start, 0, &mut out);
    let out: Vec<ProfileSet> = out
        .into_iter()
        .map(|assign| {
            assign
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == Some(true))
                .map(|(i, _)| all[i])
                .collect()
        })
        .collect();
    for p in &out {
        assert!(is_profile(g, k, p), "search produced a non-profile");
    }
    out
}

fn assign(all: &[Sep], index: &HashMap<Sep, usize>, inverse: &[usize], state: &mut [Option<bool>], lit: usize) -> bool {
    let mut queue = vec![lit];
    while let Some(i) = queue.pop() {
        match state[i] {
            Some(true) => continue,
            Some(false) => return false,
            None => {}
        }
        if inverse[i] == i {
            return false;
        }
        state[i] = Some(true);
        state[inverse[i]] = Some(false);
        let s = all[i];
        for (j, &t) in all.iter().enumerate() {
            if j != i && leq(t, s) {
                match state[j] {
                    Some(false) => return false,
                    Some(true) => {}
                    None => queue.push(j),
                }
            }
            if state[j] == Some(true) {
                let corner = (s.1 & t.1, s.0 | t.0);
                if let Some(&c) = index.get(&corner) {
                    match state[c] {
                        Some(true) => return false,
                        Some(false) => {}
                        None => queue.push(inverse[c]),
                    }
                }
            }
        }
    }
    true
}

fn search(
    all: &[Sep],
    index: &HashMap<Sep, usize>,
    inverse: &[usize],
    state: Vec<Option<bool>>,
    from: usize,
    out: &mut Vec<Vec<Option<bool>>>,
) {
    let Some(i) = (from..all.len()).find(|&i| state[i].is_none()) else {
        out.push(state);
        return;
    };
    for lit in [i, inverse[i]] {
        let mut next = state.clone();
        if assign(all, index, inverse, &mut next, lit) {
            search(all, index, inverse, next, i + 1, out);
        }
    }
}

/// r-robustness exactly as defined: for `(A,B) ∈ P` and `(C,D)` of order
/// `≤ r`, one of `(A∪C, B∩D)`, `(A∪D, B∩C)` has order `≥ k-1` or lies in P.
pub fn is_robust(g: &G, k: usize, p: &ProfileSet, r: usize) -> bool {
    let small = separations(g, r + 1);
    p.iter().all(|&(a, b)| {
        small.iter().all(|&(c, d)| {
            [(a | c, b & d), (a | d, b & c)]
                .iter()
                .any(|&x| order(x) + 1 >= k || p.contains(&x))
        })
    })
}

pub fn distinguishes(s: Sep, p: &ProfileSet, q: &ProfileSet) -> bool {
    (p.contains(&s) && q.contains(&inv(s))) || (q.contains(&s) && p.contains(&inv(s)))
}

/// Minimum order of a separation distinguishing `p` and `q`.
pub fn min_order(p: &ProfileSet, q: &ProfileSet) -> Option<usize> {
    p.iter().filter(|s| q.contains(&inv(**s))).map(|&s| order(s)).min()
}

/// All automorphisms, as image arrays indexed by vertex id.
pub fn automorphisms(g: &G) -> Vec<Vec<usize>> {
    let vs = g.verts();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; 32];
    let mut used = 0u32;
    fn rec(g: &G, vs: &[usize], i: usize, image: &mut Vec<usize>, used: &mut u32, out: &mut Vec<Vec<usize>>) {
        if i == vs.len() {
            out.push(image.clone());
            return;
        }
        let u = vs[i];
        for &w in vs {
            if *used & (1 << w) != 0 || g.adj[u].count_ones() != g.adj[w].count_ones() {
                continue;
            }
            if vs[..i].iter().all(|&x| g.edge(u, x) == g.edge(w, image[x])) {
                image[u] = w;
                *used |= 1 << w;
                rec(g, vs, i + 1, image, used, out);
                *used &= !(1 << w);
                image[u] = usize::MAX;
            }
        }
    }
    rec(g, &vs, 0, &mut image, &mut used, &mut out);
    out
}

pub fn map_set(phi: &[usize], x: u32) -> u32 {
    bits(x).into_iter().fold(0, |m, v| m | 1 << phi[v])
}

pub fn map_sep(phi: &[usize], s: Sep) -> Sep {
    (map_set(phi, s.0), map_set(phi, s.1))
}

/// Plain tree-decomposition data.
#[derive(Clone, Debug)]
pub struct Td {
    pub parts: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
}

impl Td {
    pub fn from_lib(td: &TreeDecomposition) -> Td {
        Td {
            parts: td.parts().iter().map(|p| p.bits()).collect(),
            edges: td.edges().to_vec(),
        }
    }

    pub fn adj(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.parts.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_tree(&self) -> bool {
        let n = self.parts.len();
        n > 0 && self.edges.len() == n - 1 && self.reach(0, usize::MAX, &|_| true).len() == n
    }

    /// Nodes reachable from `from` without crossing `blocked` and only
    /// through nodes satisfying `keep`.
    fn reach(&self, from: usize, blocked: usize, keep: &dyn Fn(usize) -> bool) -> BTreeSet<usize> {
        let adj = self.adj();
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if u != blocked && keep(u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// (T1)-(T3) plus tree shape.
    pub fn valid_for(&self, g: &G) -> Result<(), String> {
        if !self.is_tree() {
            return Err("not a tree".into());
        }
        if self.parts.iter().fold(0, |m, p| m | p) != g.v {
            return Err("(T1) parts do not cover V".into());
        }
        for u in g.verts() {
            for w in bits(g.adj[u]) {
                if !self.parts.iter().any(|p| p & (1 << u) != 0 && p & (1 << w) != 0) {
                    return Err(format!("(T2) edge {u}{w} in no part"));
                }
            }
        }
        for v in g.verts() {
            let holding: Vec<usize> = (0..self.parts.len())
                .filter(|&t| self.parts[t] & (1 << v) != 0)
                .collect();
            let reach = self.reach(holding[0], usize::MAX, &|t| self.parts[t] & (1 << v) != 0);
            if reach.len() != holding.len() {
                return Err(format!("(T3) nodes containing {v} are disconnected"));
            }
        }
        Ok(())
    }

    /// Separation induced by the oriented edge `t1 -> t2`.
    pub fn induced(&self, t1: usize, t2: usize) -> Sep {
        let side1 = self.reach(t1, t2, &|_| true);
        let side2 = self.reach(t2, t1, &|_| true);
        let union = |s: &BTreeSet<usize>| s.iter().fold(0, |m, &t| m | self.parts[t]);
        (union(&side1), union(&side2))
    }

    pub fn oriented(&self) -> Vec<((usize, usize), Sep)> {
        self.edges
            .iter()
            .flat_map(|&(u, v)| [((u, v), self.induced(u, v)), ((v, u), self.induced(v, u))])
            .collect()
    }

    pub fn induced_set(&self) -> BTreeSet<Sep> {
        self.oriented().into_iter().map(|(_, s)| s).collect()
    }

    pub fn adhesion(&self) -> usize {
        self.edges
            .iter()
            .map(|&(u, v)| pc(self.parts[u] & self.parts[v]))
            .max()
            .unwrap_or(0)
    }

    pub fn is_hub(&self, t: usize) -> bool {
        self.adj()[t].iter().any(|&u| self.parts[t] & !self.parts[u] == 0)
    }

    pub fn torso(&self, g: &G, t: usize) -> G {
        let cliques: Vec<u32> = self.adj()[t].iter().map(|&u| self.parts[t] & self.parts[u]).collect();
        g.torso(self.parts[t], &cliques)
    }

    /// Invariant under `phi`: some bijection of nodes maps parts and edges.
    pub fn invariant_under(&self, phi: &[usize]) -> bool {
        // compare multisets of (part, sorted neighbour parts) and of edge part-pairs
        let sig = |parts: &Vec<u32>| {
            let adj = self.adj();
            let mut nodes: Vec<(u32, Vec<u32>)> = (0..parts.len())
                .map(|t| {
                    let mut ns: Vec<u32> = adj[t].iter().map(|&u| parts[u]).collect();
                    ns.sort();
                    (parts[t], ns)
                })
                .collect();
            nodes.sort();
            nodes
        };
        let mapped: Vec<u32> = self.parts.iter().map(|&p| map_set(phi, p)).collect();
        sig(&self.parts) == sig(&mapped)
            && self
                .induced_set()
                .iter()
                .all(|&s| self.induced_set().contains(&map_sep(phi, s)))
    }
}

/// The focusing-sequence recursion written out literally. Returns every
/// focusing sequence, with a flag for (F*).
pub fn focusing_sequences(g: &G, s: &[Sep]) -> Vec<(Vec<u32>, bool)> {
    let mut out = Vec::new();
    fn restrict(s: &[Sep], beta: u32) -> Vec<Sep> {
        let mut r: Vec<Sep> = s
            .iter()
            .map(|&(a, b)| (a & beta, b & beta))
            .filter(|&x| proper(x))
            .collect();
        r.sort();
        r.dedup();
        r
    }
    fn n_beta(s: &[Sep], beta: u32) -> Vec<Sep> {
        let r = restrict(s, beta);
        let Some(m) = r.iter().map(|&x| order(x)).min() else {
            return Vec::new();
        };
        let mut n: Vec<Sep> = r
            .iter()
            .filter(|&&x| order(x) == m)
            .flat_map(|&x| [x, inv(x)])
            .collect();
        n.sort();
        n.dedup();
        n
    }
    fn rec(g: &G, s: &[Sep], seq: Vec<u32>, out: &mut Vec<(Vec<u32>, bool)>) {
        let beta = *seq.last().unwrap();
        let r = restrict(s, beta);
        let n = n_beta(s, beta);
        let good = n.iter().all(|&x| r.iter().all(|&y| nested(x, y)));
        out.push((seq.clone(), good));
        if n.is_empty() || !good {
            return;
        }
        let sub = g.torso(beta, &[]);
        for b in s_blocks(&sub, &n) {
            let mut next = seq.clone();
            next.push(b);
            rec(g, s, next, out);
        }
    }
    rec(g, s, vec![g.v], &mut out);
    out
}

pub fn system(seps: impl IntoIterator<Item = Sep>) -> SeparationSystem {
    seps.into_iter()
        .map(|(a, b)| {
            Separation::new_unchecked(blockforge::VertexSet::from_bits(a), blockforge::VertexSet::from_bits(b))
        })
        .collect()
}

pub fn seps_of(s: &SeparationSystem) -> BTreeSet<Sep> {
    s.iter().map(sep).collect()
}

/// Induced by `Q` on the torso at `t` in the sense of the definition: every
/// member is the trace of a member of `Q` whose separator lies in the part
/// and which separates no adhesion set at `t`.
pub fn induced_by(td: &Td, t: usize, q: &ProfileSet, torso_profile: &ProfileSet) -> bool {
    let part = td.parts[t];
    let adhesions: Vec<u32> = td.adj()[t].iter().map(|&u| part & td.parts[u]).collect();
    let traces: HashSet<Sep> = q
        .iter()
        .filter(|&&(a, b)| a & b & !part == 0 && adhesions.iter().all(|&x| !separates((a, b), x)))
        .map(|&(a, b)| (a & part, b & part))
        .collect();
    torso_profile.iter().all(|s| traces.contains(s))
}
