//! Exhaustive separation enumeration and distinguisher orders.

use crate::error::Result;
use crate::graph::{check_cap, Graph};
use crate::profile::Profile;
use crate::separation::{Separation, SeparationSystem};
use crate::vertex_set::VertexSet;

/// All separations of `g` (proper and improper, both orientations) of order
/// less than `max_order`.
///
/// Scans every assignment of vertices to `A \ B`, `B \ A` or `A ∩ B`,
/// abandoning partial assignments that already contain a crossing edge or a
/// separator that is too large.
pub fn enumerate_separations(g: &Graph, max_order: usize) -> Result<SeparationSystem> {
    check_cap(g)?;
    let verts: Vec<usize> = g.vertices().iter().collect();
    let mut out = Vec::new();
    if max_order == 0 {
        return Ok(SeparationSystem::new());
    }
    scan(
        g,
        &verts,
        max_order,
        VertexSet::EMPTY,
        VertexSet::EMPTY,
        VertexSet::EMPTY,
        &mut out,
    );
    Ok(out.into_iter().collect())
}

fn scan(
    g: &Graph,
    verts: &[usize],
    max_order: usize,
    a_only: VertexSet,
    b_only: VertexSet,
    sep: VertexSet,
    out: &mut Vec<Separation>,
) {
    let Some((&v, rest)) = verts.split_first() else {
        out.push(Separation::new_unchecked(a_only | sep, b_only | sep));
        return;
    };
    let nb = g.neighbours(v);
    if nb.is_disjoint(b_only) {
        scan(g, rest, max_order, a_only.with(v), b_only, sep, out);
    }
    if nb.is_disjoint(a_only) {
        scan(g, rest, max_order, a_only, b_only.with(v), sep, out);
    }
    if sep.len() + 1 < max_order {
        scan(g, rest, max_order, a_only, b_only, sep.with(v), out);
    }
}

/// Outcome of searching for a separation that distinguishes two profiles.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Distinction {
    /// Minimum order of a distinguishing separation.
    Order(usize),
    Indistinguishable,
}

impl Distinction {
    pub fn order(self) -> Option<usize> {
        match self {
            Distinction::Order(k) => Some(k),
            Distinction::Indistinguishable => None,
        }
    }
}

/// Minimum order of a separation `(A,B)` with `(A,B) ∈ p` and `(B,A) ∈ q`.
pub fn min_distinguisher_order(g: &Graph, p: &Profile, q: &Profile) -> Result<Distinction> {
    let bound = p.order().min(q.order());
    let seps = enumerate_separations(g, bound)?;
    let d = seps
        .iter()
        .find(|s| p.contains(s) && q.contains(&s.inverse()))
        .map(|s| Distinction::Order(s.order()))
        .unwrap_or(Distinction::Indistinguishable);
    Ok(d)
}

/// `s` lies in one of the two profiles and its inverse in the other.
pub fn distinguishes(s: &Separation, p: &Profile, q: &Profile) -> bool {
    (p.contains(s) && q.contains(&s.inverse())) || (q.contains(s) && p.contains(&s.inverse()))
}

/// [`min_distinguisher_order`] for every pair `i < j` of `profiles`, sharing
/// one enumeration of separations.
pub fn pairwise_distinctions(g: &Graph, profiles: &[Profile]) -> Result<Vec<(usize, usize, Distinction)>> {
    let bound = profiles.iter().map(|p| p.order()).max().unwrap_or(0);
    let seps = enumerate_separations(g, bound)?;
    let mut out = Vec::new();
    for i in 0..profiles.len() {
        for j in i + 1..profiles.len() {
            let (p, q) = (&profiles[i], &profiles[j]);
            let d = seps
                .iter()
                .find(|s| p.contains(s) && q.contains(&s.inverse()))
                .map(|s| Distinction::Order(s.order()))
                .unwrap_or(Distinction::Indistinguishable);
            out.push((i, j, d));
        }
    }
    Ok(out)
}

/// Separations of minimum order distinguishing `p` from `q`, each oriented
/// with `(A,B) ∈ p`.
pub fn efficient_distinguishers(p: &Profile, q: &Profile, universe: &SeparationSystem) -> Vec<Separation> {
    let mut best: Option<usize> = None;
    let mut out = Vec::new();
    for s in universe {
        if best.is_some_and(|b| s.order() > b) {
            break;
        }
        if s.order() < p.order().min(q.order()) && p.contains(s) && q.contains(&s.inverse()) {
            best = Some(s.order());
            out.push(*s);
        }
    }
    out
}
