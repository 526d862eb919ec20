//! Seeded random connected graphs and the self-test that runs the
//! pipeline over them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::graph_to_json;
use crate::pipeline::{decompose, Mode};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_INSTANCES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub instances: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub min_density: f64,
    pub max_density: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: DEFAULT_SEED,
            instances: DEFAULT_INSTANCES,
            min_n: 4,
            max_n: 8,
            min_density: 0.3,
            max_density: 0.7,
        }
    }
}

/// A connected graph on `n` vertices with about `density * n(n-1)/2` edges:
/// a random spanning tree topped up with random extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((order[rng.gen_range(0..i)], order[i]));
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !edges.contains(&(u, v)) && !edges.contains(&(v, u)))
        .collect();
    rest.shuffle(rng);
    let target = ((density * (n * (n - 1)) as f64 / 2.0).round() as usize).max(n - 1);
    edges.extend(rest.into_iter().take(target - (n - 1)));
    Graph::new(n, &edges).expect("edges within range")
}

/// The corpus described by `config`, identical for identical configs.
pub fn corpus(config: &CorpusConfig) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.instances)
        .map(|_| {
            let n = rng.gen_range(config.min_n..=config.max_n);
            let density = rng.gen_range(config.min_density..=config.max_density);
            random_connected_graph(&mut rng, n, density)
        })
        .collect()
}

/// A failed pipeline run on a corpus graph.
#[derive(Clone, Debug, Serialize)]
pub struct SelftestFailure {
    pub instance: usize,
    pub mode: String,
    pub error: String,
    pub exit_code: i32,
    pub graph: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub instances: usize,
    pub runs: usize,
    pub failure: Option<SelftestFailure>,
}

/// Runs `decompose` for every `k ∈ [2, n]` and in maximal-robust mode on
/// each corpus graph, stopping at the first failure. The failing graph is
/// the smallest one seen so far, since the corpus is traversed in order of
/// vertex count.
pub fn selftest(config: &CorpusConfig) -> Result<SelftestReport> {
    let mut graphs: Vec<(usize, Graph)> = corpus(config).into_iter().enumerate().collect();
    graphs.sort_by_key(|(i, g)| (g.vertex_count(), g.edge_count(), *i));
    let mut runs = 0;
    for (i, g) in &graphs {
        let n = g.vertex_count();
        let modes = (2..=n).map(Mode::KProfiles).chain([Mode::MaximalRobust]);
        for mode in modes {
            runs += 1;
            if let Err(e) = decompose(g, mode) {
                if matches!(e, Error::CapExceeded { .. }) {
                    return Err(e);
                }
                return Ok(SelftestReport {
                    seed: config.seed,
                    instances: config.instances,
                    runs,
                    failure: Some(SelftestFailure {
                        instance: *i,
                        mode: mode.to_string(),
                        exit_code: e.exit_code(),
                        error: e.to_string(),
                        graph: serde_json::from_str(&graph_to_json(g))?,
                    }),
                });
            }
        }
    }
    Ok(SelftestReport {
        seed: config.seed,
        instances: config.instances,
        runs,
        failure: None,
    })
}
