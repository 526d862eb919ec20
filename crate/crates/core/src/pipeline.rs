//! The end-to-end decomposition: blocks inducing the requested profiles,
//! their component separations `S(B)`, the focused decomposition `T(S(B))`,
//! refinement of its separations, and the final tree.
//!
//! Every run re-verifies its output with [`verify`], which recomputes all
//! guarantees with the exhaustive oracles.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::automorphism::automorphisms;
use crate::enumeration::{distinguishes, pairwise_distinctions, Distinction};
use crate::error::{Error, Result};
use crate::focusing::{almost_nested_counterexample, build_from_almost_nested, FocusedDecomposition};
use crate::graph::{check_cap, Graph};
use crate::profile::{block_profile, enumerate_profiles, k_blocks, maximal_robust_profiles, s_blocks, Block, Profile};
use crate::refine::{refine, Refinement};
use crate::separation::{Separation, SeparationSystem};
use crate::tree_decomp::{build_from_nested, TreeDecomposition, TreeDecompositionJson};
use crate::vertex_set::VertexSet;

/// Which profiles a decomposition has to distinguish.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// All `k`-profiles; the decomposition has adhesion `< k`.
    KProfiles(usize),
    /// All maximal robust profiles.
    MaximalRobust,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::KProfiles(k) => write!(f, "k-profiles({k})"),
            Mode::MaximalRobust => f.write_str("maximal-robust"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "maximal-robust" {
            return Ok(Mode::MaximalRobust);
        }
        s.strip_prefix("k-profiles(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|k| k.parse().ok())
            .map(Mode::KProfiles)
            .ok_or_else(|| Error::Precondition(format!("unknown mode {s:?}")))
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Mode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The profiles selected by `mode`.
pub fn mode_profiles(g: &Graph, mode: Mode) -> Result<Vec<Profile>> {
    match mode {
        Mode::KProfiles(0) => Err(Error::Precondition("k must be at least 1".into())),
        Mode::KProfiles(k) => enumerate_profiles(g, k),
        Mode::MaximalRobust => maximal_robust_profiles(g),
    }
}

/// `S_k(b)`: `(C ∪ N(C), V \ C)` for every component `C` of `G - b`.
pub fn component_separations(g: &Graph, b: &Block) -> SeparationSystem {
    let v = g.vertices();
    g.components_without(b.vertices)
        .into_iter()
        .map(|c| Separation::new_unchecked(c | g.neighbourhood(c), v - c))
        .collect()
}

/// A block is separable iff all its component separations have order `< k`.
pub fn is_separable(g: &Graph, b: &Block) -> bool {
    component_separations(g, b).iter().all(|s| s.order() < b.k)
}

/// The blocks whose induced profiles lie in `ps`, with those profiles.
pub fn inducing_blocks(g: &Graph, ps: &[Profile]) -> Result<Vec<(Block, Profile)>> {
    let orders: BTreeSet<usize> = ps.iter().map(Profile::order).collect();
    let mut out = Vec::new();
    for k in orders {
        for b in k_blocks(g, k)? {
            let p = block_profile(g, b.vertices, k)?;
            if ps.contains(&p) {
                out.push((b, p));
            }
        }
    }
    Ok(out)
}

/// `S(B)`: the union of `S_k(b) ∩ S_{<k}` over `b ∈ bs`, closed under inverses.
///
/// Rejects a pair of blocks whose profiles no separation distinguishes.
pub fn s_of_blocks(g: &Graph, bs: &[Block]) -> Result<SeparationSystem> {
    let profiles: Vec<Profile> = bs
        .iter()
        .map(|b| block_profile(g, b.vertices, b.k))
        .collect::<Result<_>>()?;
    for (i, j, d) in pairwise_distinctions(g, &profiles)? {
        if d == Distinction::Indistinguishable {
            return Err(Error::Precondition(format!(
                "blocks {} and {} induce indistinguishable profiles",
                bs[i].vertices, bs[j].vertices
            )));
        }
    }
    let mut s = SeparationSystem::new();
    for b in bs {
        for sep in component_separations(g, b).iter().filter(|s| s.order() < b.k) {
            if !sep.separator().is_subset(b.vertices) {
                return Err(Error::violation(
                    "S(B)",
                    format!("separator of {sep} leaves {}", b.vertices),
                ));
            }
            s.insert(*sep);
            s.insert(sep.inverse());
        }
    }
    Ok(s)
}

/// Intermediate objects of one [`decompose`] run.
#[derive(Clone, Debug)]
pub struct Stages {
    pub profiles: Vec<Profile>,
    pub blocks: Vec<Block>,
    pub s: SeparationSystem,
    pub focused: FocusedDecomposition,
    pub n: SeparationSystem,
    pub refinement: Refinement,
    pub decomposition: TreeDecomposition,
}

/// Runs the pipeline and returns its verified report.
pub fn decompose(g: &Graph, mode: Mode) -> Result<DecompositionReport> {
    let stages = decompose_stages(g, mode)?;
    let report = verify_against(g, &stages.decomposition, mode, &stages.profiles)?;
    if !report.passed {
        let failures: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")))
            .collect();
        return Err(Error::violation("verify", failures.join("; ")));
    }
    Ok(report)
}

/// Runs the pipeline, keeping every intermediate stage.
pub fn decompose_stages(g: &Graph, mode: Mode) -> Result<Stages> {
    check_cap(g)?;
    let profiles = mode_profiles(g, mode)?;
    if let Some((i, j, _)) = pairwise_distinctions(g, &profiles)?
        .into_iter()
        .find(|(_, _, d)| *d == Distinction::Indistinguishable)
    {
        return Err(Error::Precondition(format!(
            "profiles {i} and {j} are indistinguishable"
        )));
    }
    let blocks: Vec<Block> = inducing_blocks(g, &profiles)?.into_iter().map(|(b, _)| b).collect();
    let s = s_of_blocks(g, &blocks)?;

    let s_blocks = s_blocks(g, &s)?;
    if let Some(b) = blocks
        .iter()
        .find(|b| is_separable(g, b) && !s_blocks.contains(&b.vertices))
    {
        return Err(Error::violation(
            "S(B)-blocks",
            format!("separable block {} is not an S(B)-block", b.vertices),
        ));
    }
    if let Some(bad) = almost_nested_counterexample(g, &s)? {
        return Err(Error::violation(
            "almost nested",
            format!("bad focusing sequence {:?}", bad.betas),
        ));
    }
    let focused = build_from_almost_nested(g, &s)?;
    let n = focused.td.induced_system().proper();
    let refinement = refine(g, &n, &profiles)?;

    let separable: Vec<&Block> = blocks.iter().filter(|b| is_separable(g, b)).collect();
    for sep in refinement.nbar.iter().filter(|sep| !n.contains(sep)) {
        if let Some(b) = separable.iter().find(|b| sep.separates(b.vertices)) {
            return Err(Error::violation(
                "refinement",
                format!("new separation {sep} separates the separable block {}", b.vertices),
            ));
        }
    }
    let decomposition = build_from_nested(g, &refinement.nbar)?;
    Ok(Stages {
        profiles,
        blocks,
        s,
        focused,
        n,
        refinement,
        decomposition,
    })
}

/// One pass/fail line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, witness: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        }
    }
}

/// Required and achieved distinguishing order of two profiles (indices into
/// the mode's profile list).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub profiles: [usize; 2],
    pub required: Option<usize>,
    pub achieved: Option<usize>,
}

/// A separable block and the part values of the nodes containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub block: Block,
    pub containing_parts: Vec<VertexSet>,
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub mode: Mode,
    pub decomposition: TreeDecompositionJson,
    pub adhesion: usize,
    pub profile_count: usize,
    pub distinguished_pairs: Vec<PairReport>,
    pub separable_blocks: Vec<BlockReport>,
    /// An automorphism (as its image list) moving the decomposition, if any.
    pub canonicity: Option<Vec<usize>>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl DecompositionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn tree_decomposition(&self) -> Result<TreeDecomposition> {
        TreeDecomposition::from_json(&self.decomposition)
    }
}

/// Recomputes every guarantee of [`decompose`] for an arbitrary `td`.
pub fn verify(g: &Graph, td: &TreeDecomposition, mode: Mode) -> Result<DecompositionReport> {
    check_cap(g)?;
    let profiles = mode_profiles(g, mode)?;
    verify_against(g, td, mode, &profiles)
}

fn verify_against(g: &Graph, td: &TreeDecomposition, mode: Mode, profiles: &[Profile]) -> Result<DecompositionReport> {
    let mut checks = Vec::new();
    let validation = td.validate(g);
    checks.push(Check::new(
        "valid",
        (!validation.passed()).then(|| validation.failures().join("; ")),
    ));
    let adhesion = td.adhesion();
    if let Mode::KProfiles(k) = mode {
        checks.push(Check::new(
            "adhesion",
            (!td.edges().is_empty() && adhesion >= k).then(|| format!("adhesion {adhesion} is not below {k}")),
        ));
    }

    let induced = td.induced_system();
    let mut pairs = Vec::new();
    let mut pair_failure = None;
    for (i, j, d) in pairwise_distinctions(g, profiles)? {
        let achieved = induced
            .iter()
            .filter(|s| distinguishes(s, &profiles[i], &profiles[j]))
            .map(Separation::order)
            .min();
        let required = d.order();
        if required != achieved && pair_failure.is_none() {
            pair_failure = Some(format!(
                "profiles {i} and {j}: required order {required:?}, achieved {achieved:?}"
            ));
        }
        pairs.push(PairReport {
            profiles: [i, j],
            required,
            achieved,
        });
    }
    checks.push(Check::new("efficient distinction", pair_failure));

    let mut blocks = Vec::new();
    let mut block_failure = None;
    for (b, _) in inducing_blocks(g, profiles)? {
        if !is_separable(g, &b) {
            continue;
        }
        let nodes: Vec<usize> = (0..td.len()).filter(|&t| b.vertices.is_subset(td.part(t))).collect();
        let parts: BTreeSet<VertexSet> = nodes.iter().map(|&t| td.part(t)).collect();
        let containing_parts: Vec<VertexSet> = parts.into_iter().collect();
        if containing_parts != [b.vertices] && block_failure.is_none() {
            block_failure = Some(format!(
                "separable block {} lies in parts {containing_parts:?}",
                b.vertices
            ));
        }
        blocks.push(BlockReport {
            block: b,
            containing_parts,
            nodes,
        });
    }
    checks.push(Check::new("separable blocks are parts", block_failure));

    let aut = automorphisms(g)?;
    let witness = td.canonicity_witness(&aut);
    checks.push(Check::new(
        "canonical",
        witness.as_ref().map(|phi| format!("not invariant under {phi:?}")),
    ));

    let passed = checks.iter().all(|c| c.passed);
    Ok(DecompositionReport {
        mode,
        decomposition: td.to_json(),
        adhesion,
        profile_count: profiles.len(),
        distinguished_pairs: pairs,
        separable_blocks: blocks,
        canonicity: witness.map(|phi| phi.images().to_vec()),
        checks,
        passed,
    })
}
