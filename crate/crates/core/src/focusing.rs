//! Decomposing along almost nested separation systems.
//!
//! For a vertex set `β`, `S↾β` is the set of proper restrictions of members
//! of `S` to `G[β]` and `N_β` is the symmetric closure of its minimum-order
//! members. A focusing sequence walks from `V(G)` into `N_β`-blocks; `S` is
//! almost nested when `N_β` is nested with `S↾β` at every `β` reached.
//! Everything here depends only on `β`, so the recursion is memoised per
//! vertex set.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gluing::{glue, GluePlan};
use crate::graph::Graph;
use crate::profile::s_blocks;
use crate::separation::SeparationSystem;
use crate::tree_decomp::{build_from_nested, TreeDecomposition};
use crate::vertex_set::VertexSet;

/// `S↾X`: the proper restrictions `(A ∩ X, B ∩ X)`.
pub fn restrict_system(s: &SeparationSystem, x: VertexSet) -> SeparationSystem {
    s.iter().map(|sep| sep.restrict(x)).filter(|r| r.is_proper()).collect()
}

/// Members of minimum order.
pub fn min_ord(s: &SeparationSystem) -> SeparationSystem {
    let Some(min) = s.iter().map(|sep| sep.order()).min() else {
        return SeparationSystem::new();
    };
    s.iter().filter(|sep| sep.order() == min).copied().collect()
}

pub fn n_beta(s: &SeparationSystem, beta: VertexSet) -> SeparationSystem {
    min_ord(&restrict_system(s, beta)).symmetric_closure()
}

/// Common order of `N_β`, `None` when it is empty.
pub fn rank(s: &SeparationSystem, beta: VertexSet) -> Option<usize> {
    n_beta(s, beta).iter().next().map(|sep| sep.order())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FocusingSequence {
    pub betas: Vec<VertexSet>,
}

impl FocusingSequence {
    pub fn root(g: &Graph) -> Self {
        FocusingSequence {
            betas: vec![g.vertices()],
        }
    }

    pub fn last(&self) -> VertexSet {
        *self.betas.last().expect("sequences are nonempty")
    }

    pub fn extended(&self, beta: VertexSet) -> Self {
        let mut betas = self.betas.clone();
        betas.push(beta);
        FocusingSequence { betas }
    }

    /// First violated condition among (F1)–(F3), if any.
    pub fn violation(&self, g: &Graph, s: &SeparationSystem) -> Option<String> {
        if self.betas.first() != Some(&g.vertices()) {
            return Some("(F1): the sequence does not start at V(G)".into());
        }
        for (i, pair) in self.betas.windows(2).enumerate() {
            let (beta, next) = (pair[0], pair[1]);
            let n = n_beta(s, beta);
            if n.is_empty() {
                return Some(format!("(F2): N at step {i} is empty"));
            }
            if !n.nested_with(&restrict_system(s, beta)) {
                return Some(format!("(F2): N at step {i} crosses the restriction"));
            }
            let blocks = s_blocks(&g.induced(beta), &n).unwrap_or_default();
            if !blocks.contains(&next) {
                return Some(format!("(F3): {next} is not a block at step {i}"));
            }
        }
        None
    }

    /// (F*): `N_{β_n}` is nested with `S↾β_n`.
    pub fn is_good(&self, g: &Graph, s: &SeparationSystem) -> Result<bool> {
        if let Some(v) = self.violation(g, s) {
            return Err(Error::Precondition(v));
        }
        let beta = self.last();
        Ok(n_beta(s, beta).nested_with(&restrict_system(s, beta)))
    }

    pub fn rank(&self, s: &SeparationSystem) -> Option<usize> {
        rank(s, self.last())
    }
}

/// Depth-first search over focusing sequences; returns the first one that
/// is not good, or `None` if `s` is almost nested.
pub fn almost_nested_counterexample(g: &Graph, s: &SeparationSystem) -> Result<Option<FocusingSequence>> {
    crate::graph::check_cap(g)?;
    let mut visited = BTreeMap::new();
    explore(g, s, FocusingSequence::root(g), &mut visited)
}

pub fn is_almost_nested(g: &Graph, s: &SeparationSystem) -> Result<bool> {
    Ok(almost_nested_counterexample(g, s)?.is_none())
}

fn explore(
    g: &Graph,
    s: &SeparationSystem,
    seq: FocusingSequence,
    visited: &mut BTreeMap<VertexSet, ()>,
) -> Result<Option<FocusingSequence>> {
    let beta = seq.last();
    if visited.insert(beta, ()).is_some() {
        return Ok(None);
    }
    let restricted = restrict_system(s, beta);
    let n = min_ord(&restricted).symmetric_closure();
    if n.is_empty() {
        return Ok(None);
    }
    if !n.nested_with(&restricted) {
        return Ok(Some(seq));
    }
    for block in s_blocks(&g.induced(beta), &n)? {
        if let Some(bad) = explore(g, s, seq.extended(block), visited)? {
            return Ok(Some(bad));
        }
    }
    Ok(None)
}

/// `T(S)` together with the vertex sets at which the recursion bottomed
/// out (the ends of maximal focusing sequences).
#[derive(Clone, Debug)]
pub struct FocusedDecomposition {
    pub td: TreeDecomposition,
    pub maximal_betas: Vec<VertexSet>,
}

/// `T(S)` for an almost nested system `S`.
///
/// At each `β` the decomposition `T(N_β)` of `G[β]` is built; nodes whose
/// parts are `N_β`-blocks receive the recursively built decomposition of
/// that block, hub nodes the trivial one, and the results are glued. Along
/// the way the separators of members of `S` that properly restrict to `β`
/// are checked to lie inside `β`, and at the end the maximal `β` are
/// compared with the `S`-blocks.
pub fn build_from_almost_nested(g: &Graph, s: &SeparationSystem) -> Result<FocusedDecomposition> {
    if let Some(bad) = almost_nested_counterexample(g, s)? {
        return Err(Error::NotAlmostNested(bad.betas));
    }
    let mut memo = BTreeMap::new();
    let mut maximal = Vec::new();
    let td = decompose_beta(g, s, g.vertices(), &mut memo, &mut maximal)?;
    maximal.sort();
    maximal.dedup();
    let blocks = s_blocks(g, s)?;
    if maximal != blocks {
        return Err(Error::violation(
            "focusing",
            format!("maximal focusing sets {maximal:?} differ from the blocks {blocks:?}"),
        ));
    }
    Ok(FocusedDecomposition {
        td,
        maximal_betas: maximal,
    })
}

fn decompose_beta(
    g: &Graph,
    s: &SeparationSystem,
    beta: VertexSet,
    memo: &mut BTreeMap<VertexSet, TreeDecomposition>,
    maximal: &mut Vec<VertexSet>,
) -> Result<TreeDecomposition> {
    if let Some(td) = memo.get(&beta) {
        return Ok(td.clone());
    }
    for sep in s {
        if sep.restrict(beta).is_proper() && !sep.separator().is_subset(beta) {
            return Err(Error::violation(
                "focusing",
                format!("{sep} restricts properly to {beta} but its separator leaves it"),
            ));
        }
    }
    let gb = g.induced(beta);
    let n = n_beta(s, beta);
    let td = if n.is_empty() {
        maximal.push(beta);
        TreeDecomposition::trivial(beta)
    } else {
        let host = build_from_nested(&gb, &n)?;
        let blocks = s_blocks(&gb, &n)?;
        let mut family = Vec::with_capacity(host.len());
        for &part in host.parts() {
            if blocks.contains(&part) {
                family.push(decompose_beta(g, s, part, memo, maximal)?);
            } else {
                family.push(TreeDecomposition::trivial(part));
            }
        }
        let plan = GluePlan::new(&gb, host, family)?;
        glue(&gb, &plan)?.td
    };
    memo.insert(beta, td.clone());
    Ok(td)
}
