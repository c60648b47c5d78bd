//! Cohen–Macaulay bipartite graphs as graphs of finite posets.
//!
//! A bipartite graph without isolated vertices is Cohen–Macaulay exactly when
//! its parts can be labelled `x_1..x_n`, `y_1..y_n` so that `x_i y_i` are
//! edges, every edge `x_i y_j` has `i <= j`, and the relation
//! `{(i, j) : x_i y_j ∈ E}` is transitive. Recognition enumerates perfect
//! matchings and tests whether the induced relation on matched pairs is a
//! partial order.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::graph::{mask_iter, Graph, GraphBuilder, VertexMask};

/// Certificate for the Cohen–Macaulay property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmLabeling {
    /// `pairs[k]` is `(x_{k+1}, y_{k+1})`.
    pub pairs: Vec<(String, String)>,
    /// 1-based `(i, j)` with `x_i y_j` an edge.
    pub relation: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LabelingViolation {
    #[error("pair {0} is not an edge")]
    MissingDiagonal(usize),
    #[error("edge x{0} y{1} goes downward")]
    Downward(usize, usize),
    #[error("relation not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("labeling does not match the graph")]
    Mismatch,
}

impl CmLabeling {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Re-checks the three labeling conditions and that the labeling
    /// describes exactly the edges of `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), LabelingViolation> {
        let n = self.pairs.len();
        let mut seen = BTreeSet::new();
        for (x, y) in &self.pairs {
            if !seen.insert(x) || !seen.insert(y) || !g.contains(x) || !g.contains(y) {
                return Err(LabelingViolation::Mismatch);
            }
        }
        if seen.len() != g.vertex_count() {
            return Err(LabelingViolation::Mismatch);
        }
        let mut expected = BTreeSet::new();
        for (i, (x, _)) in self.pairs.iter().enumerate() {
            for (j, (_, y)) in self.pairs.iter().enumerate() {
                let (a, b) = (g.index_of(x).unwrap(), g.index_of(y).unwrap());
                if g.has_edge(a, b) {
                    expected.insert((i + 1, j + 1));
                }
            }
        }
        let pair_edges: usize = expected.len();
        // edges inside one side would not appear in `expected`
        if expected != self.relation || pair_edges != g.edge_count() {
            return Err(LabelingViolation::Mismatch);
        }
        for i in 1..=n {
            if !self.relation.contains(&(i, i)) {
                return Err(LabelingViolation::MissingDiagonal(i));
            }
        }
        for &(i, j) in &self.relation {
            if i > j {
                return Err(LabelingViolation::Downward(i, j));
            }
        }
        for &(i, j) in &self.relation {
            for &(j2, k) in self.relation.range((j, 0)..(j + 1, 0)) {
                debug_assert_eq!(j, j2);
                if i < j && j < k && !self.relation.contains(&(i, k)) {
                    return Err(LabelingViolation::NotTransitive(i, j, k));
                }
            }
        }
        Ok(())
    }
}

/// Why a graph is not recognised as Cohen–Macaulay bipartite.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotCm {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(String),
    #[error("parts have sizes {0} and {1}")]
    UnbalancedParts(usize, usize),
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("no perfect matching induces a partial order")]
    NoPosetLabeling,
}

/// Finds a labeling certificate or explains why none exists.
pub fn classify_cm(g: &Graph) -> Result<CmLabeling, NotCm> {
    if g.vertex_count() == 0 {
        return Err(NotCm::Empty);
    }
    let bp = g.two_coloring().map_err(|_| NotCm::NotBipartite)?;
    if let Some(i) = mask_iter(g.isolated_mask()).min_by(|&a, &b| g.name(a).cmp(g.name(b))) {
        return Err(NotCm::IsolatedVertex(g.name(i).into()));
    }
    if bp.part_x.len() != bp.part_y.len() {
        return Err(NotCm::UnbalancedParts(bp.part_x.len(), bp.part_y.len()));
    }
    // both sides in lexicographic order
    let xs: Vec<usize> = bp.part_x.iter().map(|n| g.index_of(n).unwrap()).collect();
    let ys: Vec<usize> = bp.part_y.iter().map(|n| g.index_of(n).unwrap()).collect();
    let n = xs.len();
    // adjacency between x-slot p and y-slot q
    let adj: Vec<Vec<bool>> = xs
        .iter()
        .map(|&x| ys.iter().map(|&y| g.has_edge(x, y)).collect())
        .collect();
    let y_slot: BTreeMap<usize, usize> = ys.iter().enumerate().map(|(q, &y)| (y, q)).collect();
    let x_nbr_slots: Vec<VertexMask> = xs
        .iter()
        .map(|&x| mask_iter(g.neighbor_mask(x)).fold(0, |m, y| m | (1 << y_slot[&y])))
        .collect();

    let mut found_matching = false;
    let mut mate = Vec::with_capacity(n);
    let mut result = None;
    enumerate_perfect_matchings(&x_nbr_slots, 0, 0, &mut mate, &mut |mate| {
        found_matching = true;
        // pair p = (xs[p], ys[mate[p]]); p -> q iff x_p ~ y_{mate[q]}
        let rel = |p: usize, q: usize| adj[p][mate[q]];
        if is_partial_order(n, &rel) {
            let order = least_topological_order(n, &rel, |p| g.name(xs[p]));
            result = Some(build_labeling(g, &xs, &ys, mate, &order, &rel));
            true
        } else {
            false
        }
    });
    match result {
        Some(l) => Ok(l),
        None if found_matching => Err(NotCm::NoPosetLabeling),
        None => Err(NotCm::NoPerfectMatching),
    }
}

/// Calls `visit` on each perfect matching (x-slot -> y-slot); stops when it returns true.
fn enumerate_perfect_matchings<F: FnMut(&[usize]) -> bool>(
    x_nbrs: &[VertexMask],
    p: usize,
    used: VertexMask,
    mate: &mut Vec<usize>,
    visit: &mut F,
) -> bool {
    if p == x_nbrs.len() {
        return visit(mate);
    }
    // prune: every remaining x needs a free neighbor
    if x_nbrs[p..].iter().any(|m| m & !used == 0) {
        return false;
    }
    for q in mask_iter(x_nbrs[p] & !used) {
        mate.push(q);
        if enumerate_perfect_matchings(x_nbrs, p + 1, used | (1 << q), mate, visit) {
            return true;
        }
        mate.pop();
    }
    false
}

fn is_partial_order(n: usize, rel: &dyn Fn(usize, usize) -> bool) -> bool {
    for p in 0..n {
        for q in 0..n {
            if p != q && rel(p, q) {
                if rel(q, p) {
                    return false;
                }
                for r in 0..n {
                    if rel(q, r) && !rel(p, r) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Kahn's algorithm; among available elements the one with the least key goes first.
fn least_topological_order<'k, K: Ord + 'k>(
    n: usize,
    rel: &dyn Fn(usize, usize) -> bool,
    key: impl Fn(usize) -> K,
) -> Vec<usize> {
    let mut indeg: Vec<usize> = (0..n)
        .map(|q| (0..n).filter(|&p| p != q && rel(p, q)).count())
        .collect();
    let mut heap: BinaryHeap<Reverse<(K, usize)>> = (0..n)
        .filter(|&q| indeg[q] == 0)
        .map(|q| Reverse((key(q), q)))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, p))) = heap.pop() {
        order.push(p);
        for q in 0..n {
            if q != p && rel(p, q) {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    heap.push(Reverse((key(q), q)));
                }
            }
        }
    }
    order
}

fn build_labeling(
    g: &Graph,
    xs: &[usize],
    ys: &[usize],
    mate: &[usize],
    order: &[usize],
    rel: &dyn Fn(usize, usize) -> bool,
) -> CmLabeling {
    let pairs = order
        .iter()
        .map(|&p| (g.name(xs[p]).into(), g.name(ys[mate[p]]).into()))
        .collect();
    let mut relation = BTreeSet::new();
    for (i, &p) in order.iter().enumerate() {
        for (j, &q) in order.iter().enumerate() {
            if rel(p, q) {
                relation.insert((i + 1, j + 1));
            }
        }
    }
    CmLabeling { pairs, relation }
}

pub fn find_cm_labeling(g: &Graph) -> Option<CmLabeling> {
    classify_cm(g).ok()
}

pub fn is_cm_bipartite(g: &Graph) -> bool {
    classify_cm(g).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("index {0} outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("relation is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
}

/// Graph of a poset on `1..=n`.
///
/// Reflexive pairs are implied. Elements are relabelled along the least
/// topological order, then `x_i y_j` is an edge iff `i <= j` in the poset.
/// Vertices are named `x1..xn, y1..yn` in that order.
pub fn poset_to_graph(n: usize, relation: &BTreeSet<(usize, usize)>) -> Result<Graph, PosetError> {
    for &(i, j) in relation {
        for k in [i, j] {
            if k == 0 || k > n {
                return Err(PosetError::OutOfRange(k, n));
            }
        }
    }
    let rel = |p: usize, q: usize| p == q || relation.contains(&(p + 1, q + 1));
    for &(i, j) in relation {
        if i != j && relation.contains(&(j, i)) {
            return Err(PosetError::NotAntisymmetric(i, j));
        }
    }
    for &(i, j) in relation {
        for k in 1..=n {
            if i != j && j != k && relation.contains(&(j, k)) && !rel(i - 1, k - 1) {
                return Err(PosetError::NotTransitive(i, j, k));
            }
        }
    }
    let order = least_topological_order(n, &rel, |p| p);
    let mut position = alloc::vec![0; n];
    for (pos, &p) in order.iter().enumerate() {
        position[p] = pos;
    }
    let mut b = GraphBuilder::new();
    for side in ["x", "y"] {
        for i in 1..=n {
            b.add_vertex(&format!("{side}{i}"))
                .expect("fresh poset vertex");
        }
    }
    for p in 0..n {
        for q in 0..n {
            if rel(p, q) {
                let (i, j) = (position[p] + 1, position[q] + 1);
                b.add_edge(&format!("x{i}"), &format!("y{j}"))
                    .expect("poset edge");
            }
        }
    }
    Ok(b.build())
}

/// Random Cohen–Macaulay bipartite graph with `n_pairs` pairs.
///
/// Draws a DAG on `1..=n_pairs` where each forward pair `(i, j)`, `i < j`,
/// visited in lexicographic order, is kept iff `(next_u64 >> 11) / 2^53 <
/// density` under ChaCha8 seeded by `seed_from_u64(seed)`. The transitive
/// closure of the DAG is passed to [`poset_to_graph`].
pub fn random_cm_graph(n_pairs: usize, density: f64, seed: u64) -> Graph {
    assert!(n_pairs >= 1, "n_pairs must be at least 1");
    assert!((0.0..=1.0).contains(&density), "density must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n_pairs;
    let mut reach = alloc::vec![alloc::vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
            if u < density {
                reach[i][j] = true;
            }
        }
    }
    // forward edges only, so closing in reverse index order is enough
    for i in (0..n).rev() {
        for j in i + 1..n {
            if reach[i][j] {
                for k in j + 1..n {
                    if reach[j][k] {
                        reach[i][k] = true;
                    }
                }
            }
        }
    }
    let relation = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i == j || reach[i][j])
        .map(|(i, j)| (i + 1, j + 1))
        .collect();
    poset_to_graph(n, &relation).expect("closure of a forward DAG is a partial order")
}
