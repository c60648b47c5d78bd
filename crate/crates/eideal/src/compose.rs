//! Gluing two graph files with `∘`, `*` or a pendant edge.

use eideal_core::formulas::{FormulaError, Formulas};
use eideal_core::glue::{circ, clique_sum_p2, star_glue, GlueError};
use eideal_core::graph::{Graph, GraphError};
use serde::Serialize;

use crate::report::FormulaJson;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComposeOp {
    Circ,
    Star,
    Pendant,
}

/// Name given to the merged (or added) vertex.
pub fn merged_name(op: ComposeOp) -> &'static str {
    match op {
        ComposeOp::Circ => "v",
        ComposeOp::Star => "u",
        ComposeOp::Pendant => "p",
    }
}

pub const PREFIX_1: &str = "g1.";
pub const PREFIX_2: &str = "g2.";

#[derive(Debug, thiserror::Error)]
pub enum ComposeError {
    #[error("--op {0:?} needs a second operand (--g2 and --u2)")]
    MissingOperand(ComposeOp),
    #[error("operand {operand}: {source}")]
    Name { operand: usize, source: GraphError },
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Glue(#[from] GlueError),
}

#[derive(Debug, Clone)]
pub struct Composition {
    pub graph: Graph,
    pub formula: FormulaJson,
    pub warnings: Vec<String>,
}

fn prefixed(
    g: &Graph,
    u: &str,
    prefix: &str,
    operand: usize,
) -> Result<(Graph, String), ComposeError> {
    if !g.contains(u) {
        return Err(ComposeError::Name {
            operand,
            source: GraphError::UnknownVertex(u.to_string()),
        });
    }
    let g = g
        .with_prefix(prefix)
        .map_err(|source| ComposeError::Name { operand, source })?;
    Ok((g, format!("{prefix}{u}")))
}

/// Prefixes the operands with `g1.` / `g2.`, evaluates the formula (which
/// checks the hypotheses) and builds the glued graph.
pub fn compose(
    op: ComposeOp,
    first: (&Graph, &str),
    second: Option<(&Graph, &str)>,
    formulas: Formulas,
) -> Result<Composition, ComposeError> {
    let (g1, u1) = prefixed(first.0, first.1, PREFIX_1, 1)?;
    if op == ComposeOp::Pendant {
        let depth = formulas.clique_sum_p2_depth(&g1, &u1)?;
        let graph = clique_sum_p2(&g1, &u1, merged_name(op))?;
        return Ok(Composition {
            graph,
            formula: FormulaJson {
                depth,
                reg: None,
                provenance: "pendant".to_string(),
            },
            warnings: Vec::new(),
        });
    }
    let (g2, u2) = match second {
        Some((g, u)) => prefixed(g, u, PREFIX_2, 2)?,
        None => return Err(ComposeError::MissingOperand(op)),
    };
    let (values, glued) = match op {
        ComposeOp::Circ => (
            formulas.circ_values(&g1, &u1, &g2, &u2)?,
            circ(&g1, &u1, &g2, &u2, merged_name(op))?,
        ),
        ComposeOp::Star => (
            formulas.star_values(&g1, &u1, &g2, &u2)?,
            star_glue(&g1, &u1, &g2, &u2, merged_name(op))?,
        ),
        ComposeOp::Pendant => unreachable!(),
    };
    Ok(Composition {
        graph: glued.graph,
        formula: values.into(),
        warnings: glued.warnings.iter().map(ToString::to_string).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_of_two_paths() {
        let p = Graph::path(4, "p").unwrap();
        let c = compose(
            ComposeOp::Star,
            (&p, "p4"),
            Some((&p, "p1")),
            Formulas::checked(),
        )
        .unwrap();
        assert!(c.graph.is_path());
        assert_eq!(c.graph.vertex_count(), 7);
        assert_eq!((c.formula.depth, c.formula.reg), (3, Some(2)));
        assert!(c.graph.contains("u") && c.graph.contains("g1.p1") && c.graph.contains("g2.p4"));
    }

    #[test]
    fn hypotheses_are_reported() {
        let p = Graph::path(4, "p").unwrap();
        let c4 = Graph::cycle(4, "c").unwrap();
        assert!(matches!(
            compose(
                ComposeOp::Circ,
                (&p, "p2"),
                Some((&p, "p1")),
                Formulas::checked()
            ),
            Err(ComposeError::Formula(FormulaError::Glue(
                GlueError::NotALeaf(_)
            )))
        ));
        assert!(matches!(
            compose(
                ComposeOp::Circ,
                (&c4, "c1"),
                Some((&p, "p1")),
                Formulas::checked()
            ),
            Err(ComposeError::Formula(FormulaError::NotCm {
                operand: 0,
                ..
            }))
        ));
        assert!(matches!(
            compose(ComposeOp::Star, (&p, "p1"), None, Formulas::checked()),
            Err(ComposeError::MissingOperand(ComposeOp::Star))
        ));
        assert!(matches!(
            compose(ComposeOp::Pendant, (&p, "zz"), None, Formulas::checked()),
            Err(ComposeError::Name { operand: 1, .. })
        ));
    }
}
