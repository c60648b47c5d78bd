//! Graph surgery: leaf deletion, the `∘` and `*` gluings, and attaching a
//! pendant edge (clique sum with `P_2`).
//!
//! Operands must have disjoint vertex names; callers rename beforehand.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::graph::{Graph, GraphBuilder, GraphError};

/// A degree-one vertex and its unique neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafSite {
    pub leaf: String,
    pub support: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlueError {
    #[error("{0} is not a leaf")]
    NotALeaf(String),
    #[error("vertex name {0} is used more than once")]
    NameCollision(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Conditions of the textbook definition that a gluing did not meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueWarning {
    /// The support of the leaf in operand `0`/`1` has degree one.
    SupportDegreeOne { operand: usize },
    /// Operand `0`/`1` is the single edge `P_2`.
    PathOperand { operand: usize },
}

impl core::fmt::Display for GlueWarning {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GlueWarning::SupportDegreeOne { operand } => {
                write!(f, "support vertex of operand {} has degree 1", operand + 1)
            }
            GlueWarning::PathOperand { operand } => {
                write!(f, "operand {} is the path P2", operand + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glued {
    pub graph: Graph,
    pub warnings: Vec<GlueWarning>,
}

/// All leaves with their supports, ordered by leaf name.
pub fn leaf_sites(g: &Graph) -> Vec<LeafSite> {
    let mut out: Vec<LeafSite> = (0..g.vertex_count())
        .filter(|&i| g.degree(i) == 1)
        .map(|i| LeafSite {
            leaf: g.name(i).to_string(),
            support: g
                .name(g.neighbor_mask(i).trailing_zeros() as usize)
                .to_string(),
        })
        .collect();
    out.sort_by(|a, b| a.leaf.cmp(&b.leaf));
    out
}

/// Looks up `u` as a leaf of `g`.
pub fn leaf_site(g: &Graph, u: &str) -> Result<LeafSite, GlueError> {
    let i = g
        .index_of(u)
        .ok_or_else(|| GraphError::UnknownVertex(u.to_string()))?;
    if g.degree(i) != 1 {
        return Err(GlueError::NotALeaf(u.to_string()));
    }
    Ok(LeafSite {
        leaf: u.to_string(),
        support: g
            .name(g.neighbor_mask(i).trailing_zeros() as usize)
            .to_string(),
    })
}

/// `G \ u` for a leaf `u`; the support stays even if it becomes isolated.
pub fn delete_leaf(g: &Graph, u: &str) -> Result<Graph, GlueError> {
    leaf_site(g, u)?;
    Ok(g.without(&[u])?)
}

fn operand_warnings(g: &Graph, site: &LeafSite, operand: usize, out: &mut Vec<GlueWarning>) {
    if g.degree_of(&site.support).unwrap_or(0) == 1 {
        out.push(GlueWarning::SupportDegreeOne { operand });
    }
    if g.vertex_count() == 2 && g.edge_count() == 1 {
        out.push(GlueWarning::PathOperand { operand });
    }
}

fn check_disjoint(g1: &Graph, g2: &Graph) -> Result<(), GlueError> {
    match g1.names().iter().find(|n| g2.contains(n)) {
        Some(n) => Err(GlueError::NameCollision(n.clone())),
        None => Ok(()),
    }
}

fn rename<'a>(name: &'a str, from: &str, to: &'a str) -> &'a str {
    if name == from {
        to
    } else {
        name
    }
}

/// `(G1, u1) ∘ (G2, u2)`: remove both leaves and identify their supports as `v_name`.
///
/// The merged vertex takes the position of `v1`; the other vertices of `g2`
/// follow those of `g1`.
pub fn circ(g1: &Graph, u1: &str, g2: &Graph, u2: &str, v_name: &str) -> Result<Glued, GlueError> {
    let s1 = leaf_site(g1, u1)?;
    let s2 = leaf_site(g2, u2)?;
    check_disjoint(g1, g2)?;
    let mut warnings = Vec::new();
    operand_warnings(g1, &s1, 0, &mut warnings);
    operand_warnings(g2, &s2, 1, &mut warnings);

    let mut b = GraphBuilder::new();
    let dropped1 = [u1];
    let dropped2 = [u2, s2.support.as_str()];
    for n in g1
        .names()
        .iter()
        .filter(|n| !dropped1.contains(&n.as_str()))
    {
        add_fresh(&mut b, rename(n, &s1.support, v_name))?;
    }
    for n in g2
        .names()
        .iter()
        .filter(|n| !dropped2.contains(&n.as_str()))
    {
        add_fresh(&mut b, n)?;
    }
    for (x, y) in g1.edge_names() {
        if x != u1 && y != u1 {
            b.add_edge(
                rename(x, &s1.support, v_name),
                rename(y, &s1.support, v_name),
            )?;
        }
    }
    for (x, y) in g2.edge_names() {
        if x != u2 && y != u2 {
            b.add_edge(
                rename(x, &s2.support, v_name),
                rename(y, &s2.support, v_name),
            )?;
        }
    }
    Ok(Glued {
        graph: b.build(),
        warnings,
    })
}

/// `(G1, u1) * (G2, u2)`: identify the two leaves as `u_name`, which ends up
/// adjacent to both supports.
pub fn star_glue(
    g1: &Graph,
    u1: &str,
    g2: &Graph,
    u2: &str,
    u_name: &str,
) -> Result<Glued, GlueError> {
    let s1 = leaf_site(g1, u1)?;
    let s2 = leaf_site(g2, u2)?;
    check_disjoint(g1, g2)?;
    let mut warnings = Vec::new();
    operand_warnings(g1, &s1, 0, &mut warnings);
    operand_warnings(g2, &s2, 1, &mut warnings);

    let mut b = GraphBuilder::new();
    for n in g1.names() {
        add_fresh(&mut b, rename(n, u1, u_name))?;
    }
    for n in g2.names().iter().filter(|n| n.as_str() != u2) {
        add_fresh(&mut b, n)?;
    }
    for (x, y) in g1.edge_names() {
        b.add_edge(rename(x, u1, u_name), rename(y, u1, u_name))?;
    }
    for (x, y) in g2.edge_names() {
        b.add_edge(rename(x, u2, u_name), rename(y, u2, u_name))?;
    }
    Ok(Glued {
        graph: b.build(),
        warnings,
    })
}

/// Adds the pendant edge `{u, new_vertex}`.
pub fn clique_sum_p2(g1: &Graph, u: &str, new_vertex: &str) -> Result<Graph, GlueError> {
    if !g1.contains(u) {
        return Err(GraphError::UnknownVertex(u.to_string()).into());
    }
    let mut b = GraphBuilder::new();
    for n in g1.names() {
        b.add_vertex(n)?;
    }
    add_fresh(&mut b, new_vertex)?;
    for (x, y) in g1.edge_names() {
        b.add_edge(x, y)?;
    }
    b.add_edge(u, new_vertex)?;
    Ok(b.build())
}

fn add_fresh(b: &mut GraphBuilder, name: &str) -> Result<(), GlueError> {
    match b.add_vertex(name) {
        Err(GraphError::DuplicateVertex(n)) => Err(GlueError::NameCollision(n)),
        other => other.map(|_| ()).map_err(Into::into),
    }
}

/// Support vertex degree of a leaf, as in the operand before gluing.
pub fn support_degree(g: &Graph, site: &LeafSite) -> usize {
    g.index_of(&site.support).map_or(0, |i| g.degree(i))
}
