//! Closed-form depth and regularity of `S/I_G` for Cohen–Macaulay bipartite
//! graphs and for the graphs built from them by leaf deletion, `∘`, `*` and
//! pendant edges.
//!
//! Every evaluator re-checks that its operands are Cohen–Macaulay bipartite
//! unless constructed with [`Formulas::trusted`].

use core::fmt;

use crate::cm::{classify_cm, NotCm};
use crate::glue::{leaf_site, support_degree, GlueError, LeafSite};
use crate::graph::Graph;
use crate::invariants::induced_matching_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    CmBipartite,
    Path,
    LeafDeletion,
    Circ,
    Star,
    Pendant,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::CmBipartite => "cm-bipartite",
            Provenance::Path => "path",
            Provenance::LeafDeletion => "leaf-deletion",
            Provenance::Circ => "circ",
            Provenance::Star => "star",
            Provenance::Pendant => "pendant",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Depth and regularity of `S/I_G` and the formula that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraicValues {
    pub depth: usize,
    pub reg: usize,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("operand {} is not Cohen-Macaulay bipartite: {reason}", operand + 1)]
    NotCm { operand: usize, reason: NotCm },
    #[error("path needs at least 2 vertices, got {0}")]
    PathTooShort(usize),
    #[error(transparent)]
    Glue(#[from] GlueError),
}

/// Formula evaluator. The default re-verifies the Cohen–Macaulay hypothesis.
#[derive(Debug, Clone, Copy, Default)]
pub struct Formulas {
    trusted: bool,
}

/// Whether deleting the support changes the induced matching number.
fn theta_drops(g: &Graph, site: &LeafSite) -> bool {
    let without = g.without(&[site.support.as_str()]).expect("support exists");
    induced_matching_number(&without) != induced_matching_number(g)
}

impl Formulas {
    pub fn checked() -> Self {
        Self { trusted: false }
    }

    /// Skips the Cohen–Macaulay re-verification.
    pub fn trusted() -> Self {
        Self { trusted: true }
    }

    fn require_cm(&self, g: &Graph, operand: usize) -> Result<(), FormulaError> {
        if self.trusted {
            return Ok(());
        }
        classify_cm(g)
            .map(|_| ())
            .map_err(|reason| FormulaError::NotCm { operand, reason })
    }

    fn operand(&self, g: &Graph, u: &str, operand: usize) -> Result<LeafSite, FormulaError> {
        self.require_cm(g, operand)?;
        Ok(leaf_site(g, u)?)
    }

    /// depth = |V|/2 and reg = induced matching number.
    pub fn cm_values(&self, g: &Graph) -> Result<AlgebraicValues, FormulaError> {
        self.require_cm(g, 0)?;
        Ok(AlgebraicValues {
            depth: g.vertex_count() / 2,
            reg: induced_matching_number(g),
            provenance: Provenance::CmBipartite,
        })
    }

    /// Values for `G \ u` where `u` is a leaf of the Cohen–Macaulay graph `g`.
    pub fn leaf_delete_values(&self, g: &Graph, u: &str) -> Result<AlgebraicValues, FormulaError> {
        let site = self.operand(g, u, 0)?;
        let base = self.cm_unchecked(g);
        let depth = if support_degree(g, &site) >= 2 {
            base.depth - 1
        } else {
            base.depth
        };
        let s = usize::from(theta_drops(g, &site));
        Ok(AlgebraicValues {
            depth,
            reg: base.reg - s,
            provenance: Provenance::LeafDeletion,
        })
    }

    /// Values for `(g1, u1) ∘ (g2, u2)`.
    pub fn circ_values(
        &self,
        g1: &Graph,
        u1: &str,
        g2: &Graph,
        u2: &str,
    ) -> Result<AlgebraicValues, FormulaError> {
        let s1 = self.operand(g1, u1, 0)?;
        let s2 = self.operand(g2, u2, 1)?;
        let (a, b) = (self.cm_unchecked(g1), self.cm_unchecked(g2));
        let both_degree_one = support_degree(g1, &s1) == 1 && support_degree(g2, &s2) == 1;
        let s = if both_degree_one { 1 } else { 2 };
        let t = usize::from(theta_drops(g1, &s1)) + usize::from(theta_drops(g2, &s2));
        Ok(AlgebraicValues {
            depth: a.depth + b.depth - s,
            reg: a.reg + b.reg - t,
            provenance: Provenance::Circ,
        })
    }

    /// Values for `(g1, u1) * (g2, u2)`.
    pub fn star_values(
        &self,
        g1: &Graph,
        u1: &str,
        g2: &Graph,
        u2: &str,
    ) -> Result<AlgebraicValues, FormulaError> {
        let s1 = self.operand(g1, u1, 0)?;
        let s2 = self.operand(g2, u2, 1)?;
        let (a, b) = (self.cm_unchecked(g1), self.cm_unchecked(g2));
        let t = usize::from(theta_drops(g1, &s1)) + usize::from(theta_drops(g2, &s2));
        let s = usize::from(t == 2);
        Ok(AlgebraicValues {
            depth: a.depth + b.depth - 1,
            reg: a.reg + b.reg - s,
            provenance: Provenance::Star,
        })
    }

    /// Depth after hanging a pendant edge on the leaf `u`: unchanged.
    pub fn clique_sum_p2_depth(&self, g1: &Graph, u: &str) -> Result<usize, FormulaError> {
        self.operand(g1, u, 0)?;
        Ok(g1.vertex_count() / 2)
    }

    fn cm_unchecked(&self, g: &Graph) -> AlgebraicValues {
        AlgebraicValues {
            depth: g.vertex_count() / 2,
            reg: induced_matching_number(g),
            provenance: Provenance::CmBipartite,
        }
    }
}

/// depth = ceil(n/3), reg = floor((n+1)/3) for the path on `n` vertices.
pub fn path_values(n: usize) -> Result<AlgebraicValues, FormulaError> {
    if n < 2 {
        return Err(FormulaError::PathTooShort(n));
    }
    Ok(AlgebraicValues {
        depth: n.div_ceil(3),
        reg: (n + 1) / 3,
        provenance: Provenance::Path,
    })
}

pub fn cm_values(g: &Graph) -> Result<AlgebraicValues, FormulaError> {
    Formulas::checked().cm_values(g)
}

pub fn leaf_delete_values(g: &Graph, u: &str) -> Result<AlgebraicValues, FormulaError> {
    Formulas::checked().leaf_delete_values(g, u)
}

pub fn circ_values(
    g1: &Graph,
    u1: &str,
    g2: &Graph,
    u2: &str,
) -> Result<AlgebraicValues, FormulaError> {
    Formulas::checked().circ_values(g1, u1, g2, u2)
}

pub fn star_values(
    g1: &Graph,
    u1: &str,
    g2: &Graph,
    u2: &str,
) -> Result<AlgebraicValues, FormulaError> {
    Formulas::checked().star_values(g1, u1, g2, u2)
}

pub fn clique_sum_p2_depth(g1: &Graph, u: &str) -> Result<usize, FormulaError> {
    Formulas::checked().clique_sum_p2_depth(g1, u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(vs: &[&str], es: &[(&str, &str)]) -> Graph {
        Graph::new(vs.iter().copied(), es.iter().copied()).unwrap()
    }

    fn fig3_g1() -> Graph {
        g(
            &["x11", "y11", "u1", "v1", "x13", "y13"],
            &[("x11", "y11"), ("x11", "y13"), ("u1", "v1"), ("x13", "y13")],
        )
    }

    fn fig4_g1() -> Graph {
        g(
            &["x11", "y11", "u1", "v1"],
            &[("x11", "y11"), ("x11", "v1"), ("u1", "v1")],
        )
    }

    fn fig4_g2() -> Graph {
        g(
            &["x21", "y21", "x22", "y22", "u2", "v2"],
            &[
                ("x21", "y21"),
                ("x21", "v2"),
                ("x22", "y22"),
                ("x22", "v2"),
                ("u2", "v2"),
            ],
        )
    }

    fn dv(v: AlgebraicValues) -> (usize, usize) {
        (v.depth, v.reg)
    }

    #[test]
    fn cm_examples() {
        assert_eq!(
            dv(cm_values(&Graph::path(2, "p").unwrap()).unwrap()),
            (1, 1)
        );
        assert_eq!(dv(cm_values(&fig4_g2()).unwrap()), (3, 2));
        let matching = g(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "b"), ("c", "d"), ("e", "f")],
        );
        assert_eq!(dv(cm_values(&matching).unwrap()), (3, 3));
        assert!(matches!(
            cm_values(&Graph::cycle(4, "c").unwrap()),
            Err(FormulaError::NotCm {
                operand: 0,
                reason: NotCm::NoPosetLabeling
            })
        ));
    }

    #[test]
    fn path_examples() {
        assert_eq!(dv(path_values(2).unwrap()), (1, 1));
        assert_eq!(dv(path_values(4).unwrap()), (2, 1));
        assert_eq!(dv(path_values(7).unwrap()), (3, 2));
        assert_eq!(path_values(1), Err(FormulaError::PathTooShort(1)));
    }

    #[test]
    fn leaf_deletion_examples() {
        let p2 = Graph::path(2, "p").unwrap();
        assert_eq!(dv(leaf_delete_values(&p2, "p1").unwrap()), (1, 0));
        let p4 = Graph::path(4, "p").unwrap();
        assert_eq!(dv(leaf_delete_values(&p4, "p1").unwrap()), (1, 1));
        assert_eq!(dv(leaf_delete_values(&fig4_g2(), "u2").unwrap()), (2, 2));
        assert!(matches!(
            leaf_delete_values(&p4, "p2"),
            Err(FormulaError::Glue(GlueError::NotALeaf(_)))
        ));
    }

    #[test]
    fn circ_examples() {
        let p2 = g(&["u2", "v2"], &[("u2", "v2")]);
        assert_eq!(circ_values(&fig3_g1(), "u1", &p2, "u2").unwrap().depth, 3);
        assert_eq!(
            circ_values(&fig4_g1(), "u1", &fig4_g2(), "u2")
                .unwrap()
                .depth,
            3
        );
        let p = Graph::path(4, "p").unwrap();
        let q = Graph::path(4, "q").unwrap();
        assert_eq!(dv(circ_values(&p, "p1", &q, "q1").unwrap()), (2, 2));
    }

    #[test]
    fn star_examples() {
        let a = Graph::path(2, "a").unwrap();
        let b = Graph::path(2, "b").unwrap();
        assert_eq!(dv(star_values(&a, "a2", &b, "b1").unwrap()), (1, 1));
        let p = Graph::path(4, "p").unwrap();
        let q = Graph::path(4, "q").unwrap();
        assert_eq!(dv(star_values(&p, "p4", &q, "q1").unwrap()), (3, 2));
        assert_eq!(star_values(&fig4_g2(), "u2", &p, "p1").unwrap().depth, 4);
    }

    #[test]
    fn pendant_examples() {
        assert_eq!(
            clique_sum_p2_depth(&Graph::path(2, "p").unwrap(), "p2").unwrap(),
            1
        );
        assert_eq!(
            clique_sum_p2_depth(&Graph::path(4, "p").unwrap(), "p1").unwrap(),
            2
        );
        assert_eq!(clique_sum_p2_depth(&fig4_g2(), "u2").unwrap(), 3);
    }

    #[test]
    fn trusted_skips_recognition() {
        let c4 = Graph::cycle(4, "c").unwrap();
        assert!(Formulas::trusted().cm_values(&c4).is_ok());
        assert!(Formulas::checked().cm_values(&c4).is_err());
    }
}
