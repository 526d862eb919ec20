//! Refining a nested system until it distinguishes a set of profiles
//! efficiently.
//!
//! The nested system `N` is turned into its tree `T(N)`. Every profile of
//! `G` induces a profile on each torso; each torso then receives a
//! canonical decomposition distinguishing its induced profiles efficiently,
//! and these are glued along `T(N)`. The separations induced by the glued
//! decomposition form the refinement `N̄ ⊇ N`.
//!
//! Torso decompositions come from an exhaustive search: the candidates at
//! each order are the efficient distinguishers of the pairs needing that
//! order, grouped into orbits under the automorphisms of the torso that
//! permute its profiles, and the search looks for a smallest set of
//! pairwise nested orbits covering every pair, backtracking across orders.
//! Similar torsos (images of each other under an automorphism of `G`)
//! receive images of one decomposition.

use std::collections::BTreeSet;

use crate::automorphism::{automorphisms, AutomorphismGroup, Permutation};
use crate::enumeration::{distinguishes, enumerate_separations, pairwise_distinctions, Distinction};
use crate::error::{Error, Result};
use crate::gluing::{glue, maps_graph_onto, GluePlan};
use crate::graph::Graph;
use crate::profile::{block_profile, inhabits, k_blocks, Profile};
use crate::separation::{Separation, SeparationSystem};
use crate::tree_decomp::{build_from_nested, TreeDecomposition};
use crate::vertex_set::VertexSet;

/// Node budget of the canonical search.
pub const DEFAULT_SEARCH_BUDGET: usize = 2_000_000;

/// Which of the three cases produced a torso profile.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TorsoCase {
    /// The profile inhabits the part.
    Inhabited,
    /// It does not, and no component outside the part is pointed to.
    Outside,
    /// It points to the component `component` of `G - P_t`; the torso
    /// profile is the one of the `m`-block containing its neighbourhood.
    Component { component: VertexSet, m: usize },
}

#[derive(Clone, Debug)]
pub struct TorsoProfile {
    pub node: usize,
    pub case: TorsoCase,
    pub profile: Profile,
}

/// The profile induced by `q` on the torso at node `t`.
pub fn induce_profile_on_torso(g: &Graph, td: &TreeDecomposition, t: usize, q: &Profile) -> Result<TorsoProfile> {
    let part = td.part(t);
    let torso = td.torso(g, t);
    let v = g.vertices();
    if !inhabits(q, td, t) {
        let pointed = g
            .components_without(part)
            .into_iter()
            .find(|c| q.contains(&Separation::new_unchecked(v - *c, *c | g.neighbourhood(*c))));
        if let Some(c) = pointed {
            let boundary = g.neighbourhood(c);
            let m = boundary.len();
            let block = k_blocks(&torso, m)?
                .into_iter()
                .find(|b| boundary.is_subset(b.vertices))
                .ok_or_else(|| {
                    Error::violation(
                        "torso profile",
                        format!("no {m}-block of the torso at {part} contains {boundary}"),
                    )
                })?;
            return Ok(TorsoProfile {
                node: t,
                case: TorsoCase::Component { component: c, m },
                profile: block_profile(&torso, block.vertices, m)?,
            });
        }
    }
    let case = if inhabits(q, td, t) {
        TorsoCase::Inhabited
    } else {
        TorsoCase::Outside
    };
    let mut haven = std::collections::BTreeMap::new();
    for x in part.subsets_below(q.order()) {
        let c = q
            .haven(x)
            .ok_or_else(|| Error::Profile(format!("profile has no haven component at {x}")))?;
        let inside = c & part;
        if inside.is_empty() {
            return Err(Error::violation(
                "torso profile",
                format!("haven component {c} at {x} misses the part {part}"),
            ));
        }
        let comp = torso
            .components_without(x)
            .into_iter()
            .find(|d| d.intersects(inside))
            .expect("inside is a nonempty subset of the torso minus x");
        if !inside.is_subset(comp) {
            return Err(Error::violation(
                "torso profile",
                format!("haven component {c} at {x} is split in the torso at {part}"),
            ));
        }
        haven.insert(x, comp);
    }
    let profile = Profile::from_haven(q.order(), part, haven);
    if !profile.validate(&torso)? {
        return Err(Error::violation(
            "torso profile",
            format!("induced orientation on {part} is not a profile"),
        ));
    }
    Ok(TorsoProfile { node: t, case, profile })
}

/// `S^N_{<k}`: separations of order `< k` nested with every member of `n`.
pub fn nested_universe(g: &Graph, n: &SeparationSystem, k: usize) -> Result<SeparationSystem> {
    Ok(enumerate_separations(g, k)?
        .into_iter()
        .filter(|s| n.nested_with_separation(s))
        .collect())
}

/// A tree-decomposition of `h` distinguishing every distinguishable pair of
/// `ps` efficiently, invariant under the automorphisms of `h` that permute
/// `ps`, in which every induced separation distinguishes some pair
/// efficiently.
pub fn canonical_distinguishing_td(h: &Graph, ps: &[Profile]) -> Result<TreeDecomposition> {
    let n = canonical_distinguishing_system(h, ps, DEFAULT_SEARCH_BUDGET)?;
    build_from_nested(h, &n)
}

/// The automorphisms of `h` mapping the set `ps` onto itself.
pub fn profile_stabilizer(aut: &AutomorphismGroup, ps: &[Profile]) -> AutomorphismGroup {
    let set: BTreeSet<&Profile> = ps.iter().collect();
    aut.subgroup(|phi| ps.iter().all(|p| set.contains(&p.apply(phi))))
}

struct Orbit {
    members: SeparationSystem,
    cover: Vec<u64>,
}

/// The nested system behind [`canonical_distinguishing_td`].
pub fn canonical_distinguishing_system(h: &Graph, ps: &[Profile], budget: usize) -> Result<SeparationSystem> {
    let mut profiles = ps.to_vec();
    profiles.sort();
    profiles.dedup();
    let pairs: Vec<(usize, usize, usize)> = pairwise_distinctions(h, &profiles)?
        .into_iter()
        .filter_map(|(i, j, d)| d.order().map(|d| (i, j, d)))
        .collect();
    if pairs.is_empty() {
        return Ok(SeparationSystem::new());
    }
    let gamma = profile_stabilizer(&automorphisms(h)?, &profiles);
    let kmax = profiles.iter().map(|p| p.order()).max().unwrap_or(0);
    let universe = enumerate_separations(h, kmax)?.proper();
    let mut levels: Vec<usize> = pairs.iter().map(|p| p.2).collect();
    levels.sort_unstable();
    levels.dedup();

    let mut orbit_levels = Vec::new();
    for &d in &levels {
        let level_pairs: Vec<(usize, usize)> = pairs.iter().filter(|p| p.2 == d).map(|p| (p.0, p.1)).collect();
        let words = level_pairs.len().div_ceil(64);
        let mask_of = |s: &Separation| {
            let mut m = vec![0u64; words];
            for (i, &(a, b)) in level_pairs.iter().enumerate() {
                if distinguishes(s, &profiles[a], &profiles[b]) {
                    m[i / 64] |= 1 << (i % 64);
                }
            }
            m
        };
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for s in universe.iter().filter(|s| s.order() == d) {
            if seen.contains(s) || mask_of(s).iter().all(|w| *w == 0) {
                continue;
            }
            let members: SeparationSystem = gamma
                .iter()
                .flat_map(|phi| {
                    let img = s.apply(phi);
                    [img, img.inverse()]
                })
                .collect();
            seen.extend(members.iter().copied());
            if !members.is_nested() {
                continue;
            }
            let mut cover = vec![0u64; words];
            for m in &members {
                for (w, bits) in cover.iter_mut().zip(mask_of(m)) {
                    *w |= bits;
                }
            }
            orbits.push(Orbit { members, cover });
        }
        orbit_levels.push((level_pairs.len(), orbits));
    }

    let mut search = Search {
        levels: &orbit_levels,
        budget,
        spent: 0,
    };
    match search.level(0, &SeparationSystem::new())? {
        Some(n) => Ok(n),
        None => Err(Error::SearchExhausted(format!(
            "no nested orbit-closed system distinguishes all {} pairs efficiently",
            pairs.len()
        ))),
    }
}

struct Search<'a> {
    levels: &'a [(usize, Vec<Orbit>)],
    budget: usize,
    spent: usize,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::SearchExhausted(format!(
                "node budget of {} exceeded",
                self.budget
            )));
        }
        Ok(())
    }

    fn level(&mut self, idx: usize, chosen: &SeparationSystem) -> Result<Option<SeparationSystem>> {
        let Some((npairs, orbits)) = self.levels.get(idx) else {
            return Ok(Some(chosen.clone()));
        };
        let usable: Vec<&Orbit> = orbits.iter().filter(|o| chosen.nested_with(&o.members)).collect();
        let full = full_mask(*npairs);
        let mut union = vec![0u64; full.len()];
        for o in &usable {
            or_into(&mut union, &o.cover);
        }
        if union != full {
            return Ok(None);
        }
        for size in 1..=usable.len() {
            let mut picked = Vec::new();
            if let Some(found) = self.combos(idx, &usable, &full, size, 0, &mut picked, chosen)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    #[allow(clippy::too_many_arguments)]
    fn combos(
        &mut self,
        idx: usize,
        usable: &[&Orbit],
        full: &[u64],
        size: usize,
        start: usize,
        picked: &mut Vec<usize>,
        chosen: &SeparationSystem,
    ) -> Result<Option<SeparationSystem>> {
        self.tick()?;
        if picked.len() == size {
            let mut cover = vec![0u64; full.len()];
            for &i in picked.iter() {
                or_into(&mut cover, &usable[i].cover);
            }
            if cover != full {
                return Ok(None);
            }
            let mut next = chosen.clone();
            for &i in picked.iter() {
                next.extend(usable[i].members.iter().copied());
            }
            return self.level(idx + 1, &next);
        }
        for i in start..usable.len() {
            if usable.len() - i < size - picked.len() {
                break;
            }
            if picked
                .iter()
                .all(|&j| usable[j].members.nested_with(&usable[i].members))
            {
                picked.push(i);
                let found = self.combos(idx, usable, full, size, i + 1, picked, chosen)?;
                picked.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }
}

fn full_mask(n: usize) -> Vec<u64> {
    let mut m = vec![u64::MAX; n.div_ceil(64)];
    if !n.is_multiple_of(64) {
        *m.last_mut().expect("n > 0") = (1u64 << (n % 64)) - 1;
    }
    m
}

fn or_into(acc: &mut [u64], other: &[u64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a |= *b;
    }
}

/// Everything computed while refining `N`.
#[derive(Clone, Debug)]
pub struct Refinement {
    /// `T(N)`.
    pub base: TreeDecomposition,
    /// Induced torso profiles, per node of `base`, in the order of the input profiles.
    pub torso_profiles: Vec<Vec<TorsoProfile>>,
    /// The decomposition chosen for each torso.
    pub torso_decomps: Vec<TreeDecomposition>,
    /// The torso decompositions glued along `base`.
    pub glued: TreeDecomposition,
    /// `N̄`, the separations induced by `glued`.
    pub nbar: SeparationSystem,
}

/// Checks that every separator of `n` lies in a block inducing one of
/// `ps`, and that every distinguishable pair of `ps` is distinguished
/// efficiently by some separation nested with `n`.
pub fn check_refinable(g: &Graph, n: &SeparationSystem, ps: &[Profile]) -> Result<()> {
    let mut inducing = Vec::new();
    let orders: BTreeSet<usize> = ps.iter().map(|p| p.order()).collect();
    for &l in &orders {
        for b in k_blocks(g, l)? {
            if ps.contains(&block_profile(g, b.vertices, l)?) {
                inducing.push(b.vertices);
            }
        }
    }
    if let Some(s) = n.iter().find(|s| !inducing.iter().any(|b| s.separator().is_subset(*b))) {
        return Err(Error::Precondition(format!(
            "separator {} of {s} lies in no block inducing a given profile",
            s.separator()
        )));
    }
    let kmax = orders.iter().max().copied().unwrap_or(0);
    let universe = nested_universe(g, n, kmax)?;
    for (i, j, d) in pairwise_distinctions(g, ps)? {
        if let Distinction::Order(d) = d {
            if !universe
                .iter()
                .any(|s| s.order() == d && distinguishes(s, &ps[i], &ps[j]))
            {
                return Err(Error::violation(
                    "refinable system",
                    format!("no separation nested with N distinguishes profiles {i} and {j} at order {d}"),
                ));
            }
        }
    }
    Ok(())
}

/// Refines `n` so that it distinguishes every distinguishable pair of `ps`
/// efficiently. See the module documentation.
pub fn refine(g: &Graph, n: &SeparationSystem, ps: &[Profile]) -> Result<Refinement> {
    check_refinable(g, n, ps)?;
    let base = build_from_nested(g, n)?;
    let distinctions = pairwise_distinctions(g, ps)?;
    let kmax = ps.iter().map(|p| p.order()).max().unwrap_or(0);

    // some part sees a proper restriction of an efficient nested distinguisher
    // for every pair not yet handled by n
    let universe = nested_universe(g, n, kmax)?;
    for &(i, j, d) in &distinctions {
        let Distinction::Order(d) = d else { continue };
        if n.iter().any(|s| s.order() == d && distinguishes(s, &ps[i], &ps[j])) {
            continue;
        }
        let s = universe
            .iter()
            .find(|s| s.order() == d && distinguishes(s, &ps[i], &ps[j]))
            .expect("checked by check_refinable");
        let reached = (0..base.len()).any(|t| base.induces_on_torso(s, t).is_ok_and(|r| r.is_proper()));
        if !reached {
            return Err(Error::violation(
                "refine",
                format!("{s} induces no proper torso separation"),
            ));
        }
    }

    let torsos: Vec<Graph> = (0..base.len()).map(|t| base.torso(g, t)).collect();
    let mut torso_profiles = Vec::with_capacity(base.len());
    let mut torso_sets: Vec<Vec<Profile>> = Vec::with_capacity(base.len());
    for t in 0..base.len() {
        let induced: Vec<TorsoProfile> = ps
            .iter()
            .map(|q| induce_profile_on_torso(g, &base, t, q))
            .collect::<Result<_>>()?;
        let mut set: Vec<Profile> = induced.iter().map(|tp| tp.profile.clone()).collect();
        set.sort();
        set.dedup();
        torso_profiles.push(induced);
        torso_sets.push(set);
    }

    let aut = automorphisms(g)?;
    let mut family: Vec<Option<TreeDecomposition>> = vec![None; base.len()];
    for t in 0..base.len() {
        if family[t].is_some() {
            continue;
        }
        let td = canonical_distinguishing_td(&torsos[t], &torso_sets[t])?;
        for u in t + 1..base.len() {
            if family[u].is_some() {
                continue;
            }
            if let Some(phi) = similarity(&aut, &torsos[t], &torsos[u], &torso_sets[t], &torso_sets[u]) {
                family[u] = Some(td.apply(phi));
            }
        }
        family[t] = Some(td);
    }
    let torso_decomps: Vec<TreeDecomposition> = family.into_iter().map(|td| td.expect("assigned")).collect();
    let plan = GluePlan::new(g, base.clone(), torso_decomps.clone())?;
    let glued = glue(g, &plan)?.td;
    let nbar = glued.induced_system();

    if !n.is_subset(&nbar) {
        return Err(Error::violation("refine", "N is not contained in the refinement"));
    }
    if let Some((s, t)) = nbar.crossing_pair() {
        return Err(Error::violation(
            "refine",
            format!("refinement contains crossing {s} and {t}"),
        ));
    }
    if let Some(s) = nbar.iter().find(|s| !s.is_proper()) {
        return Err(Error::violation("refine", format!("refinement contains improper {s}")));
    }
    for &(i, j, d) in &distinctions {
        let Distinction::Order(d) = d else { continue };
        if !nbar.iter().any(|s| s.order() == d && distinguishes(s, &ps[i], &ps[j])) {
            return Err(Error::violation(
                "refine",
                format!("profiles {i} and {j} are not distinguished at order {d}"),
            ));
        }
    }
    if is_canonical_input(&aut, n, ps) {
        if let Some(phi) = aut.iter().find(|phi| nbar.apply(phi) != nbar) {
            return Err(Error::violation(
                "refine",
                format!("refinement not invariant under {phi:?}"),
            ));
        }
    }
    Ok(Refinement {
        base,
        torso_profiles,
        torso_decomps,
        glued,
        nbar,
    })
}

/// `N̄` for `n` and `ps`.
pub fn refine_nested(g: &Graph, n: &SeparationSystem, ps: &[Profile]) -> Result<SeparationSystem> {
    Ok(refine(g, n, ps)?.nbar)
}

fn is_canonical_input(aut: &AutomorphismGroup, n: &SeparationSystem, ps: &[Profile]) -> bool {
    let set: BTreeSet<&Profile> = ps.iter().collect();
    aut.iter()
        .all(|phi| n.apply(phi) == *n && ps.iter().all(|p| set.contains(&p.apply(phi))))
}

/// An automorphism of `G` mapping torso `from` onto torso `to` and its
/// profiles onto the other's.
fn similarity<'a>(
    aut: &'a AutomorphismGroup,
    from: &Graph,
    to: &Graph,
    from_profiles: &[Profile],
    to_profiles: &[Profile],
) -> Option<&'a Permutation> {
    if from.vertex_count() != to.vertex_count() {
        return None;
    }
    aut.iter().find(|phi| {
        maps_graph_onto(phi, from, to) && {
            let mut img: Vec<Profile> = from_profiles.iter().map(|p| p.apply(phi)).collect();
            img.sort();
            img == to_profiles
        }
    })
}
