//! `analyze`: one graph through recognition, invariants, formulas and oracle.

use std::fmt::Write as _;

use eideal_core::cm::classify_cm;
use eideal_core::formulas::{cm_values, path_values, AlgebraicValues};
use eideal_core::graph::Graph;
use eideal_core::homology::{BettiTable, OracleConfig, OracleError};
use eideal_core::invariants::{depth_bounds, InvariantReport};
use eideal_core::NotCm;
use serde::Serialize;

use crate::oracle::par_oracle_values;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LabelingJson {
    pub pairs: Vec<(String, String)>,
    pub relation: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct InvariantsJson {
    pub alpha: usize,
    pub beta: usize,
    pub theta: usize,
    pub gamma: usize,
    pub indep: usize,
    pub cover: usize,
}

impl From<InvariantReport> for InvariantsJson {
    fn from(r: InvariantReport) -> Self {
        Self {
            alpha: r.alpha,
            beta: r.beta,
            theta: r.theta,
            gamma: r.gamma,
            indep: r.indep,
            cover: r.cover,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct BoundsJson {
    pub lower_star: usize,
    pub lower_diam: usize,
    pub upper_bipartite: Option<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FormulaJson {
    pub depth: usize,
    /// Absent when the formula only determines depth.
    pub reg: Option<usize>,
    pub provenance: String,
}

impl From<AlgebraicValues> for FormulaJson {
    fn from(v: AlgebraicValues) -> Self {
        Self {
            depth: v.depth,
            reg: Some(v.reg),
            provenance: v.provenance.tag().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct OracleJson {
    pub depth: usize,
    pub reg: usize,
    pub pd: usize,
    pub dim: usize,
    pub betti: Option<Vec<(usize, usize, u64)>>,
}

/// Betti table as `[i, j, beta]` triples sorted by `(i, j)`.
pub fn betti_triples(t: &BettiTable) -> Vec<(usize, usize, u64)> {
    t.entries().collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Report {
    pub vertices: usize,
    pub edges: usize,
    pub bipartite: bool,
    pub cm: bool,
    pub labeling: Option<LabelingJson>,
    pub invariants: InvariantsJson,
    pub bounds: BoundsJson,
    pub formula: Option<FormulaJson>,
    pub oracle: Option<OracleJson>,
    pub warnings: Vec<String>,
    /// Formula and oracle disagree on depth or regularity.
    pub mismatch: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub oracle: bool,
    pub betti: bool,
    pub oracle_config: OracleConfig,
}

pub fn analyze(g: &Graph, opts: &AnalyzeOptions) -> Result<Report, OracleError> {
    let mut warnings = Vec::new();
    let cm = classify_cm(g);
    match &cm {
        Err(NotCm::IsolatedVertex(v)) => warnings.push(format!(
            "isolated vertex {v}: not recognised as Cohen-Macaulay bipartite"
        )),
        Err(NotCm::Empty) => warnings.push("graph has no vertices".to_string()),
        _ => {}
    }
    let formula = if cm.is_ok() {
        cm_values(g).ok()
    } else if g.is_path() {
        path_values(g.vertex_count()).ok()
    } else {
        None
    };
    let bounds = depth_bounds(g);
    let mut report = Report {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        bipartite: g.is_bipartite(),
        cm: cm.is_ok(),
        labeling: cm.ok().map(|l| LabelingJson {
            pairs: l.pairs,
            relation: l.relation.into_iter().collect(),
        }),
        invariants: InvariantReport::compute(g).into(),
        bounds: BoundsJson {
            lower_star: bounds.lower_star,
            lower_diam: bounds.lower_diam,
            upper_bipartite: bounds.upper_bipartite,
        },
        formula: formula.map(FormulaJson::from),
        oracle: None,
        warnings,
        mismatch: false,
    };
    if opts.oracle || opts.betti {
        let (values, scan) = par_oracle_values(g, &opts.oracle_config)?;
        report.oracle = Some(OracleJson {
            depth: values.depth,
            reg: values.reg,
            pd: values.pd,
            dim: values.dim,
            betti: opts.betti.then(|| betti_triples(&scan.table)),
        });
        if let Some(f) = &report.formula {
            if f.depth != values.depth || f.reg.is_some_and(|r| r != values.reg) {
                report.mismatch = true;
                report.warnings.push(format!(
                    "FAIL: formula ({}) gives depth {} reg {}, oracle gives depth {} reg {}",
                    f.provenance,
                    f.depth,
                    f.reg.map_or("-".to_string(), |r| r.to_string()),
                    values.depth,
                    values.reg
                ));
            }
        }
    }
    Ok(report)
}

/// Human-readable rendering.
pub fn render_table(r: &Report) -> String {
    let mut out = String::new();
    let mut row = |k: &str, v: String| writeln!(out, "{k:<12} {v}").unwrap();
    row("vertices", r.vertices.to_string());
    row("edges", r.edges.to_string());
    row("bipartite", r.bipartite.to_string());
    row("cm", r.cm.to_string());
    if let Some(l) = &r.labeling {
        let pairs: Vec<String> = l.pairs.iter().map(|(x, y)| format!("({x},{y})")).collect();
        row("labeling", pairs.join(" "));
    }
    let i = &r.invariants;
    row(
        "invariants",
        format!(
            "alpha={} beta={} theta={} gamma={} indep={} cover={}",
            i.alpha, i.beta, i.theta, i.gamma, i.indep, i.cover
        ),
    );
    let b = &r.bounds;
    row(
        "bounds",
        format!(
            "depth>={} depth>={} depth<={}",
            b.lower_star,
            b.lower_diam,
            b.upper_bipartite.map_or("-".to_string(), |u| u.to_string())
        ),
    );
    match &r.formula {
        Some(f) => row(
            "formula",
            format!(
                "depth={} reg={} [{}]",
                f.depth,
                f.reg.map_or("-".to_string(), |x| x.to_string()),
                f.provenance
            ),
        ),
        None => row("formula", "-".to_string()),
    }
    if let Some(o) = &r.oracle {
        row(
            "oracle",
            format!("depth={} reg={} pd={} dim={}", o.depth, o.reg, o.pd, o.dim),
        );
        if let Some(betti) = &o.betti {
            for (i, j, v) in betti {
                row("", format!("beta[{i},{j}] = {v}"));
            }
        }
    }
    for w in &r.warnings {
        row("warning", w.clone());
    }
    if r.mismatch {
        out.push_str("FAIL: formula and oracle disagree\n");
    }
    out
}
