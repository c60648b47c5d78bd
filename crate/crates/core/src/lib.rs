//! Depth and Castelnuovo–Mumford regularity of edge ideals of graphs built
//! from Cohen–Macaulay bipartite graphs.
//!
//! The crate has two independent routes to `depth(S/I_G)` and `reg(S/I_G)`:
//!
//! - [`formulas`]: closed-form values for Cohen–Macaulay bipartite graphs,
//!   paths, leaf deletions and the `∘`, `*` and pendant-edge gluings of
//!   [`glue`], driven by the combinatorial [`invariants`].
//! - [`homology`]: the graded Betti table from Hochster's formula on the
//!   independence complex, using exact ranks from [`linalg`].
//!
//! [`cm`] recognises Cohen–Macaulay bipartite graphs through poset labelings
//! and generates random ones.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod cm;
pub mod formulas;
pub mod glue;
pub mod graph;
pub mod homology;
pub mod invariants;
pub mod linalg;

pub use cm::{
    classify_cm, find_cm_labeling, is_cm_bipartite, poset_to_graph, random_cm_graph, CmLabeling,
    NotCm,
};
pub use formulas::{AlgebraicValues, FormulaError, Formulas, Provenance};
pub use glue::{
    circ, clique_sum_p2, delete_leaf, leaf_sites, star_glue, GlueError, GlueWarning, Glued,
    LeafSite,
};
pub use graph::{Bipartition, Component, Graph, GraphBuilder, GraphError, OddCycle};
pub use homology::{
    hochster_betti, oracle_values, BettiTable, OracleConfig, OracleError, OracleValues,
    SimplicialComplex,
};
pub use invariants::{depth_bounds, DepthBounds, InvariantReport};
pub use linalg::RankField;
