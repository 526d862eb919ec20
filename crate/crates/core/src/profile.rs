//! Blocks, profiles, robustness and havens.
//!
//! A `k`-profile orients every separation of order `< k`. Each profile picks,
//! for every vertex set `X` with `|X| < k`, exactly one component `C_X` of
//! `G - X` (the haven component), and a separation `(A,B)` with separator
//! `X` lies in the profile iff `C_X ⊆ B \ A`. [`Profile`] stores this haven
//! map; membership queries are answered from it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automorphism::Permutation;
use crate::enumeration::enumerate_separations;
use crate::error::{Error, Result};
use crate::graph::{check_cap, Graph};
use crate::separation::{Separation, SeparationSystem};
use crate::tree_decomp::TreeDecomposition;
use crate::vertex_set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Profile {
    k: usize,
    universe: VertexSet,
    haven: BTreeMap<VertexSet, VertexSet>,
}

impl Profile {
    /// The order `k`: the profile orients separations of order `< k`.
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn universe(&self) -> VertexSet {
        self.universe
    }

    /// Haven component `C_X` for `|X| < k`.
    pub fn haven(&self, x: VertexSet) -> Option<VertexSet> {
        self.haven.get(&x).copied()
    }

    pub fn haven_entries(&self) -> impl Iterator<Item = (VertexSet, VertexSet)> + '_ {
        self.haven.iter().map(|(x, c)| (*x, *c))
    }

    pub fn contains(&self, s: &Separation) -> bool {
        if s.order() >= self.k || s.ground() != self.universe {
            return false;
        }
        match self.haven.get(&s.separator()) {
            Some(c) => c.is_subset(s.strict_b()),
            None => false,
        }
    }

    /// Every oriented separation in the profile, in the canonical order.
    pub fn separations(&self, g: &Graph) -> Result<Vec<Separation>> {
        Ok(enumerate_separations(g, self.k)?
            .into_iter()
            .filter(|s| self.contains(s))
            .collect())
    }

    /// `self ⊆ other` as sets of oriented separations.
    pub fn is_subprofile_of(&self, other: &Profile) -> bool {
        self.k <= other.k
            && self.universe == other.universe
            && self.haven.iter().all(|(x, c)| other.haven.get(x) == Some(c))
    }

    pub fn apply(&self, perm: &Permutation) -> Profile {
        Profile {
            k: self.k,
            universe: perm.apply_set(self.universe),
            haven: self
                .haven
                .iter()
                .map(|(x, c)| (perm.apply_set(*x), perm.apply_set(*c)))
                .collect(),
        }
    }

    /// Builds a profile from a haven map without checking the axioms.
    pub fn from_haven(k: usize, universe: VertexSet, haven: BTreeMap<VertexSet, VertexSet>) -> Self {
        Profile { k, universe, haven }
    }

    /// Recovers the haven of an orientation given as a set of separations.
    /// Fails if some `X` has no component `C` with `(V \ C, C ∪ X)` chosen.
    pub fn from_orientation(g: &Graph, k: usize, chosen: &SeparationSystem) -> Result<Profile> {
        let v = g.vertices();
        let mut haven = BTreeMap::new();
        for x in v.subsets_below(k) {
            let picks: Vec<VertexSet> = g
                .components_without(x)
                .into_iter()
                .filter(|c| chosen.contains(&Separation::new_unchecked(v - *c, *c | x)))
                .collect();
            match picks.as_slice() {
                [c] => {
                    haven.insert(x, *c);
                }
                _ => {
                    return Err(Error::Profile(format!(
                        "{} components of G-{x} are pointed to",
                        picks.len()
                    )))
                }
            }
        }
        Ok(Profile { k, universe: v, haven })
    }

    pub fn to_json(&self, g: &Graph) -> Result<ProfileJson> {
        Ok(ProfileJson {
            k: self.k,
            separations: self.separations(g)?,
        })
    }
}

/// Serialised form: the oriented separations, vertex sets as hex bitsets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileJson {
    pub k: usize,
    pub separations: Vec<Separation>,
}

impl ProfileJson {
    pub fn into_profile(self, g: &Graph) -> Result<Profile> {
        let chosen: SeparationSystem = self.separations.into_iter().collect();
        let p = Profile::from_orientation(g, self.k, &chosen)?;
        if !is_profile(g, &chosen, self.k)? {
            return Err(Error::Profile("orientation violates the profile axioms".into()));
        }
        Ok(p)
    }
}

/// A `k`-block: a maximal `(< k)`-inseparable set of at least `k` vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Block {
    pub vertices: VertexSet,
    pub k: usize,
}

/// All maximal `S`-inseparable vertex sets.
///
/// Inseparability is a pairwise condition, so the blocks are the maximal
/// cliques of the graph joining two vertices when no member of `S`
/// separates them.
pub fn s_blocks(g: &Graph, s: &SeparationSystem) -> Result<Vec<VertexSet>> {
    check_cap(g)?;
    let v = g.vertices();
    let mut insep = vec![VertexSet::EMPTY; g.capacity()];
    for u in v {
        insep[u] = v;
    }
    for sep in s {
        let (sa, sb) = (sep.strict_a() & v, sep.strict_b() & v);
        for u in sa {
            insep[u] = insep[u] - sb;
        }
        for u in sb {
            insep[u] = insep[u] - sa;
        }
    }
    let mut out = Vec::new();
    bron_kerbosch(&insep, VertexSet::EMPTY, v, VertexSet::EMPTY, &mut out);
    out.sort();
    Ok(out)
}

fn bron_kerbosch(adj: &[VertexSet], r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).iter().max_by_key(|&u| (adj[u] & p).len()).expect("p nonempty");
    for u in p - adj[pivot].without(pivot) {
        let nu = adj[u].without(u);
        bron_kerbosch(adj, r.with(u), p & nu, x & nu, out);
        p.remove(u);
        x.insert(u);
    }
}

pub fn k_blocks(g: &Graph, k: usize) -> Result<Vec<Block>> {
    let seps = enumerate_separations(g, k)?;
    Ok(s_blocks(g, &seps)?
        .into_iter()
        .filter(|b| b.len() >= k)
        .map(|vertices| Block { vertices, k })
        .collect())
}

/// `P_k(b)`: every separation of order `< k` oriented towards `b`.
pub fn block_profile(g: &Graph, b: VertexSet, k: usize) -> Result<Profile> {
    if b.len() < k || !b.is_subset(g.vertices()) {
        return Err(Error::NotABlock(b, format!("fewer than {k} vertices")));
    }
    let mut haven = BTreeMap::new();
    for x in g.vertices().subsets_below(k) {
        let rest = b - x;
        let comp = g
            .components_without(x)
            .into_iter()
            .find(|c| c.intersects(rest))
            .expect("b \\ X is nonempty");
        if !rest.is_subset(comp) {
            return Err(Error::NotABlock(b, format!("separated by removing {x}")));
        }
        haven.insert(x, comp);
    }
    Ok(Profile {
        k,
        universe: g.vertices(),
        haven,
    })
}

/// Checks orientation, consistency and (P) for the orientation whose
/// membership predicate is `contains`. Returns the first violation found.
pub fn profile_violation(g: &Graph, k: usize, contains: impl Fn(&Separation) -> bool) -> Result<Option<String>> {
    let seps = enumerate_separations(g, k)?;
    let mut members = Vec::new();
    for s in &seps {
        let (fwd, back) = (contains(s), contains(&s.inverse()));
        if s.is_degenerate() {
            if !fwd {
                return Ok(Some(format!("{s} not oriented")));
            }
        } else if fwd == back {
            return Ok(Some(format!("{s} oriented {} ways", if fwd { "both" } else { "no" })));
        }
        if fwd {
            members.push(*s);
        }
    }
    for s in &members {
        for t in &seps {
            if t.leq(s) && !contains(t) {
                return Ok(Some(format!("inconsistent: {s} chosen but {t} <= it is not")));
            }
        }
    }
    for (i, s) in members.iter().enumerate() {
        for t in &members[i..] {
            let corner = Separation::new_unchecked(s.b() & t.b(), s.a() | t.a());
            if corner.order() < k && contains(&corner) {
                return Ok(Some(format!("(P) fails for {s}, {t}: {corner} chosen")));
            }
        }
    }
    Ok(None)
}

/// Whether `orientation` is a `k`-profile of `g`.
pub fn is_profile(g: &Graph, orientation: &SeparationSystem, k: usize) -> Result<bool> {
    Ok(profile_violation(g, k, |s| orientation.contains(s))?.is_none())
}

impl Profile {
    /// Checks the profile axioms against `g`.
    pub fn validate(&self, g: &Graph) -> Result<bool> {
        if self.universe != g.vertices() {
            return Ok(false);
        }
        Ok(profile_violation(g, self.k, |s| self.contains(s))?.is_none())
    }
}

/// All `k`-profiles of `g`.
///
/// Backtracks over haven maps: vertex sets `X` are visited by size, and
/// `C_X` must lie inside `C_{X - y}` for every `y ∈ X` (forced by
/// consistency). Complete candidates are checked against the axioms.
pub fn enumerate_profiles(g: &Graph, k: usize) -> Result<Vec<Profile>> {
    check_cap(g)?;
    let subsets = g.vertices().subsets_below(k);
    let mut out = Vec::new();
    let mut haven = BTreeMap::new();
    havens(g, k, &subsets, 0, &mut haven, &mut out)?;
    out.sort();
    Ok(out)
}

fn havens(
    g: &Graph,
    k: usize,
    subsets: &[VertexSet],
    idx: usize,
    haven: &mut BTreeMap<VertexSet, VertexSet>,
    out: &mut Vec<Profile>,
) -> Result<()> {
    if idx == subsets.len() {
        let p = Profile {
            k,
            universe: g.vertices(),
            haven: haven.clone(),
        };
        if p.validate(g)? {
            out.push(p);
        }
        return Ok(());
    }
    let x = subsets[idx];
    let bound = x
        .iter()
        .map(|y| haven[&x.without(y)])
        .fold(g.vertices(), |acc, c| acc & c);
    for c in g.components_without(x) {
        if c.is_subset(bound) {
            haven.insert(x, c);
            havens(g, k, subsets, idx + 1, haven, out)?;
        }
    }
    haven.remove(&x);
    Ok(())
}

/// For every `(A,B) ∈ p` and `(C,D)` of order `≤ r`, one of
/// `(A ∪ C, B ∩ D)`, `(A ∪ D, B ∩ C)` has order `≥ k - 1` or lies in `p`.
pub fn is_r_robust(g: &Graph, p: &Profile, r: usize) -> Result<bool> {
    let all = enumerate_separations(g, r + 1)?;
    let members = p.separations(g)?;
    Ok(robust_against(p, &members, &all))
}

fn robust_against(p: &Profile, members: &[Separation], others: &SeparationSystem) -> bool {
    let threshold = p.order().saturating_sub(1);
    let ok = |s: Separation| s.order() >= threshold || p.contains(&s);
    members.iter().all(|ab| {
        others.iter().all(|cd| {
            ok(Separation::new_unchecked(ab.a() | cd.a(), ab.b() & cd.b()))
                || ok(Separation::new_unchecked(ab.a() | cd.b(), ab.b() & cd.a()))
        })
    })
}

/// Robust profiles (r-robust for every r) not strictly contained in a
/// robust profile of higher order.
pub fn maximal_robust_profiles(g: &Graph) -> Result<Vec<Profile>> {
    check_cap(g)?;
    let n = g.vertex_count();
    let all = enumerate_separations(g, n + 1)?;
    let mut robust = Vec::new();
    for k in 1..=n {
        for p in enumerate_profiles(g, k)? {
            let members = p.separations(g)?;
            if robust_against(&p, &members, &all) {
                robust.push(p);
            }
        }
    }
    let maximal: Vec<Profile> = robust
        .iter()
        .filter(|p| !robust.iter().any(|q| q.order() > p.order() && p.is_subprofile_of(q)))
        .cloned()
        .collect();
    Ok(maximal)
}

/// The component `C` of `G - X` with `(V \ C, C ∪ X) ∈ p`.
///
/// Also checks that `(V \ C, C ∪ N(C))` lies in `p`.
pub fn haven_component(g: &Graph, p: &Profile, x: VertexSet) -> Result<VertexSet> {
    if x.len() >= p.order() {
        return Err(Error::Precondition(format!(
            "|X| = {} is not below the profile order {}",
            x.len(),
            p.order()
        )));
    }
    let v = g.vertices();
    let picks: Vec<VertexSet> = g
        .components_without(x)
        .into_iter()
        .filter(|c| p.contains(&Separation::new_unchecked(v - *c, *c | x)))
        .collect();
    let [c] = picks.as_slice() else {
        return Err(Error::Profile(format!(
            "{} components of G-{x} qualify as haven component",
            picks.len()
        )));
    };
    let tight = Separation::new_unchecked(v - *c, *c | g.neighbourhood(*c));
    if !p.contains(&tight) {
        return Err(Error::Profile(format!("{tight} missing from the profile")));
    }
    Ok(*c)
}

/// `p` inhabits the part at node `t`: `(B \ A) ∩ P_t ≠ ∅` for every `(A,B) ∈ p`.
///
/// Among the members with separator `X` the smallest `B \ A` is `C_X`, so it
/// suffices that every haven component meets the part.
pub fn inhabits(p: &Profile, td: &TreeDecomposition, t: usize) -> bool {
    let part = td.part(t);
    p.haven.values().all(|c| c.intersects(part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn p3_blocks_and_profiles() {
        let g = fixtures::g_p3();
        let proper = enumerate_separations(&g, 2).unwrap().proper();
        assert_eq!(s_blocks(&g, &proper).unwrap(), vec![set(&[0, 1]), set(&[1, 2])]);
        assert_eq!(s_blocks(&g, &SeparationSystem::new()).unwrap(), vec![g.vertices()]);
        let profiles = enumerate_profiles(&g, 2).unwrap();
        assert_eq!(profiles.len(), 2);
        let toward_ab = block_profile(&g, set(&[0, 1]), 2).unwrap();
        assert!(profiles.contains(&toward_ab));
        assert_eq!(haven_component(&g, &toward_ab, set(&[1])).unwrap(), set(&[0]));
    }

    #[test]
    fn tri_blocks_profiles() {
        let g = fixtures::g_tri();
        let [z, a, x, y, c1, c2] = fixtures::TRI;
        let blocks: Vec<VertexSet> = k_blocks(&g, 3).unwrap().into_iter().map(|b| b.vertices).collect();
        assert_eq!(blocks.len(), 3);
        for b in [set(&[z, a, x]), set(&[z, a, y]), set(&[z, c1, c2])] {
            assert!(blocks.contains(&b));
        }
        let p = block_profile(&g, set(&[z, a, x]), 3).unwrap();
        assert!(p.contains(&Separation::new_unchecked(set(&[z, a, y, c1, c2]), set(&[z, a, x]))));
        assert!(p.validate(&g).unwrap());
        assert_eq!(haven_component(&g, &p, set(&[z])).unwrap(), set(&[a, x, y]));
        let all = enumerate_profiles(&g, 3).unwrap();
        assert_eq!(all.len(), 3);
        for b in &blocks {
            assert!(all.contains(&block_profile(&g, *b, 3).unwrap()));
        }
        let maximal = maximal_robust_profiles(&g).unwrap();
        assert_eq!(maximal.len(), 3);
        assert!(maximal.iter().all(|m| m.order() == 3));
    }

    #[test]
    fn block_profile_rejects_separable_sets() {
        let g = fixtures::g_tri();
        let [_, _, x, y, ..] = fixtures::TRI;
        assert!(matches!(
            block_profile(&g, set(&[0, 1, x, y]), 3),
            Err(Error::NotABlock(..))
        ));
    }

    #[test]
    fn k4_profiles() {
        let g = fixtures::g_k4();
        assert_eq!(enumerate_profiles(&g, 3).unwrap().len(), 1);
        assert_eq!(enumerate_profiles(&g, 4).unwrap().len(), 1);
        assert_eq!(enumerate_profiles(&g, 5).unwrap().len(), 0);
        let p = block_profile(&g, g.vertices(), 4).unwrap();
        assert!(p.separations(&g).unwrap().iter().all(|s| !s.is_proper()));
        let maximal = maximal_robust_profiles(&g).unwrap();
        assert_eq!(maximal.len(), 1);
        assert_eq!(maximal[0].order(), 4);
        assert_eq!(
            k_blocks(&g, 2).unwrap(),
            vec![Block {
                vertices: g.vertices(),
                k: 2
            }]
        );
    }

    #[test]
    fn axiom_violations_are_detected() {
        let g = fixtures::g_p3();
        let p = block_profile(&g, set(&[0, 1]), 2).unwrap();
        let mut members: SeparationSystem = p.separations(&g).unwrap().into_iter().collect();
        assert!(is_profile(&g, &members, 2).unwrap());
        // flip the proper separation: the orientation stays complete but
        // improper members below it now conflict
        let s = Separation::new_unchecked(set(&[1, 2]), set(&[0, 1]));
        members.remove(&s);
        members.insert(s.inverse());
        let flipped_consistent = is_profile(&g, &members, 2).unwrap();
        let other = block_profile(&g, set(&[1, 2]), 2).unwrap();
        let other_members: SeparationSystem = other.separations(&g).unwrap().into_iter().collect();
        assert_eq!(flipped_consistent, members == other_members);
        // drop an orientation entirely
        members.remove(&s.inverse());
        assert!(!is_profile(&g, &members, 2).unwrap());
    }

    #[test]
    fn robustness_basics() {
        let g = fixtures::g_tri();
        for p in enumerate_profiles(&g, 3).unwrap() {
            assert!(is_r_robust(&g, &p, 0).unwrap());
            assert!(is_r_robust(&g, &p, 2).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let g = fixtures::g_tri();
        let p = block_profile(&g, set(&[0, 4, 5]), 3).unwrap();
        let json = serde_json::to_string(&p.to_json(&g).unwrap()).unwrap();
        let back: ProfileJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_profile(&g).unwrap(), p);
    }
}
