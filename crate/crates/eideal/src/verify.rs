//! Randomised formula-versus-oracle sweeps.
//!
//! Trial `k` draws its operands from ChaCha8 seeded with `seed_from_u64(seed)`
//! on stream `k`, so every trial is reproducible on its own and the result
//! does not depend on scheduling.

use eideal_core::cm::random_cm_graph;
use eideal_core::formulas::Formulas;
use eideal_core::glue::{delete_leaf, leaf_sites};
use eideal_core::graph::Graph;
use eideal_core::homology::{hochster_scan_all, OracleConfig, OracleError, OracleValues};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::compose::{compose, ComposeError, ComposeOp};
use crate::format::serialize_graph;
use crate::report::FormulaJson;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    CmValues,
    Leaf,
    Circ,
    Star,
    Pendant,
}

impl Theorem {
    fn operands(self) -> usize {
        match self {
            Theorem::Circ | Theorem::Star => 2,
            _ => 1,
        }
    }

    /// Largest tested graph when every operand has `k` pairs.
    pub fn max_vertices(self, k: usize) -> usize {
        match self {
            Theorem::CmValues => 2 * k,
            Theorem::Leaf => 2 * k - 1,
            Theorem::Circ => 4 * k - 3,
            Theorem::Star => 4 * k - 1,
            Theorem::Pendant => 2 * k + 1,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub theorem: Theorem,
    pub trials: usize,
    pub max_pairs: usize,
    pub seed: u64,
    pub oracle: OracleConfig,
    pub formulas: Formulas,
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("--max-pairs must be at least 1")]
    NoPairs,
    #[error("{theorem:?} with {max_pairs} pairs builds graphs of up to {needed} vertices, above the oracle cap {cap}")]
    CapTooSmall {
        theorem: Theorem,
        max_pairs: usize,
        needed: usize,
        cap: usize,
    },
    #[error("trial {trial}: {source}")]
    Compose { trial: usize, source: ComposeError },
    #[error("trial {trial}: {source}")]
    Oracle { trial: usize, source: OracleError },
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Operand {
    pub pairs: usize,
    pub density: f64,
    pub graph_seed: u64,
    pub leaf: String,
    pub support_degree: usize,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct OracleDepthReg {
    pub depth: usize,
    pub reg: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Trial {
    pub trial: usize,
    pub operands: Vec<Operand>,
    pub vertices: usize,
    pub formula: FormulaJson,
    pub oracle: OracleDepthReg,
    pub depth_ok: bool,
    pub reg_ok: bool,
    pub warnings: Vec<String>,
    /// Only counted when the oracle config asks for the check.
    pub euler_violations: usize,
    /// The graph the oracle ran on, in file format.
    pub graph: String,
}

impl Trial {
    pub fn passed(&self) -> bool {
        self.depth_ok && self.reg_ok
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VerifySummary {
    pub theorem: Theorem,
    pub trials: usize,
    pub max_pairs: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub depth_failures: usize,
    pub reg_failures: usize,
    pub first_counterexample: Option<Trial>,
}

fn draw_operand(rng: &mut ChaCha8Rng, max_pairs: usize) -> (Graph, Operand) {
    let pairs = rng.gen_range(1..=max_pairs);
    let density: f64 = rng.gen();
    let graph_seed: u64 = rng.gen();
    let g = random_cm_graph(pairs, density, graph_seed);
    let sites = leaf_sites(&g);
    let site = &sites[rng.gen_range(0..sites.len())];
    let support_degree = g.degree_of(&site.support).expect("support exists");
    let op = Operand {
        pairs,
        density,
        graph_seed,
        leaf: site.leaf.clone(),
        support_degree,
    };
    (g, op)
}

pub fn run_trial(cfg: &VerifyConfig, trial: usize) -> Result<Trial, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    let drawn: Vec<(Graph, Operand)> = (0..cfg.theorem.operands())
        .map(|_| draw_operand(&mut rng, cfg.max_pairs))
        .collect();
    let compose_err = |source| VerifyError::Compose { trial, source };
    let (graph, formula, warnings) = match cfg.theorem {
        Theorem::CmValues => {
            let g = drawn[0].0.clone();
            let v = cfg
                .formulas
                .cm_values(&g)
                .map_err(|e| compose_err(e.into()))?;
            (g, FormulaJson::from(v), Vec::new())
        }
        Theorem::Leaf => {
            let (g, op) = &drawn[0];
            let v = cfg
                .formulas
                .leaf_delete_values(g, &op.leaf)
                .map_err(|e| compose_err(e.into()))?;
            let h = delete_leaf(g, &op.leaf).map_err(|e| compose_err(e.into()))?;
            (h, FormulaJson::from(v), Vec::new())
        }
        Theorem::Circ | Theorem::Star | Theorem::Pendant => {
            let op = match cfg.theorem {
                Theorem::Circ => ComposeOp::Circ,
                Theorem::Star => ComposeOp::Star,
                _ => ComposeOp::Pendant,
            };
            let first = (&drawn[0].0, drawn[0].1.leaf.as_str());
            let second = drawn.get(1).map(|(g, o)| (g, o.leaf.as_str()));
            let c = compose(op, first, second, cfg.formulas).map_err(compose_err)?;
            (c.graph, c.formula, c.warnings)
        }
    };
    let scan = hochster_scan_all(&graph, &cfg.oracle)
        .map_err(|source| VerifyError::Oracle { trial, source })?;
    let o = OracleValues::from_table(&graph, &scan.table);
    Ok(Trial {
        trial,
        operands: drawn.into_iter().map(|(_, op)| op).collect(),
        vertices: graph.vertex_count(),
        depth_ok: formula.depth == o.depth,
        reg_ok: formula.reg.is_none_or(|r| r == o.reg),
        formula,
        oracle: OracleDepthReg {
            depth: o.depth,
            reg: o.reg,
        },
        warnings,
        euler_violations: scan.euler_violations,
        graph: serialize_graph(&graph),
    })
}

/// Runs all trials on the rayon pool; results are in trial order.
pub fn run_trials(cfg: &VerifyConfig) -> Result<Vec<Trial>, VerifyError> {
    if cfg.max_pairs == 0 {
        return Err(VerifyError::NoPairs);
    }
    let needed = cfg.theorem.max_vertices(cfg.max_pairs);
    if needed > cfg.oracle.max_vertices {
        return Err(VerifyError::CapTooSmall {
            theorem: cfg.theorem,
            max_pairs: cfg.max_pairs,
            needed,
            cap: cfg.oracle.max_vertices,
        });
    }
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect()
}

pub fn summarize(cfg: &VerifyConfig, trials: &[Trial]) -> VerifySummary {
    let passed = trials.iter().filter(|t| t.passed()).count();
    VerifySummary {
        theorem: cfg.theorem,
        trials: trials.len(),
        max_pairs: cfg.max_pairs,
        seed: cfg.seed,
        passed,
        failed: trials.len() - passed,
        depth_failures: trials.iter().filter(|t| !t.depth_ok).count(),
        reg_failures: trials.iter().filter(|t| !t.reg_ok).count(),
        first_counterexample: trials.iter().find(|t| !t.passed()).cloned(),
    }
}

pub fn verify(cfg: &VerifyConfig) -> Result<VerifySummary, VerifyError> {
    Ok(summarize(cfg, &run_trials(cfg)?))
}
