//! Exact combinatorial invariants: matching numbers, induced matchings,
//! star packings, independence number and vertex covers.
//!
//! All searches branch on the lowest-indexed undecided vertex and prune with
//! simple counting bounds. They are exponential and meant for graphs with a
//! couple of dozen vertices.

use alloc::vec::Vec;

use crate::graph::{mask_iter, Graph, VertexMask, MAX_VERTICES};

/// The invariants that appear in the depth and regularity bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantReport {
    /// Matching number.
    pub alpha: usize,
    /// Minimum size of an inclusion-maximal matching.
    pub beta: usize,
    /// Induced matching number.
    pub theta: usize,
    /// Star packing number.
    pub gamma: usize,
    /// Independence number; equals `dim(S/I_G)`.
    pub indep: usize,
    /// Minimum vertex cover; equals the height of `I_G`.
    pub cover: usize,
}

impl InvariantReport {
    pub fn compute(g: &Graph) -> Self {
        let (indep, cover) = independence_and_cover(g);
        Self {
            alpha: matching_number(g),
            beta: min_maximal_matching_number(g),
            theta: induced_matching_number(g),
            gamma: star_packing_number(g),
            indep,
            cover,
        }
    }
}

struct Adj<'a> {
    adj: &'a [VertexMask],
}

impl Adj<'_> {
    fn of(g: &Graph) -> Adj<'_> {
        Adj { adj: g.adjacency() }
    }

    /// Lowest vertex in `avail` with a neighbor in `avail`.
    fn first_with_edge(&self, avail: VertexMask) -> Option<usize> {
        mask_iter(avail).find(|&v| self.adj[v] & avail != 0)
    }
}

/// Maximum matching size.
///
/// Bipartite graphs use augmenting paths; other graphs fall back to an
/// exhaustive branch-and-bound search.
pub fn matching_number(g: &Graph) -> usize {
    match g.two_coloring() {
        Ok(bp) => {
            let left: VertexMask = mask_iter(g.full_mask())
                .filter(|&i| bp.part_x.contains(g.name(i)))
                .fold(0, |m, i| m | (1 << i));
            augmenting_path_matching(g.adjacency(), left)
        }
        Err(_) => exhaustive_matching(g),
    }
}

/// Kuhn's augmenting-path algorithm with `left` as the searching side.
pub(crate) fn augmenting_path_matching(adj: &[VertexMask], left: VertexMask) -> usize {
    fn try_kuhn(
        v: usize,
        adj: &[VertexMask],
        visited: &mut VertexMask,
        mate: &mut [usize; MAX_VERTICES],
    ) -> bool {
        for w in mask_iter(adj[v] & !*visited) {
            *visited |= 1 << w;
            if mate[w] == usize::MAX || try_kuhn(mate[w], adj, visited, mate) {
                mate[w] = v;
                return true;
            }
        }
        false
    }
    let mut mate = [usize::MAX; MAX_VERTICES];
    let mut size = 0;
    for v in mask_iter(left) {
        let mut visited = 0;
        if try_kuhn(v, adj, &mut visited, &mut mate) {
            size += 1;
        }
    }
    size
}

/// Exact maximum matching for arbitrary graphs.
pub fn exhaustive_matching(g: &Graph) -> usize {
    fn rec(a: &Adj<'_>, avail: VertexMask, count: usize, best: &mut usize) {
        let live = mask_iter(avail).filter(|&v| a.adj[v] & avail != 0).count();
        if count + live / 2 <= *best {
            return;
        }
        let Some(v) = a.first_with_edge(avail) else {
            *best = count;
            return;
        };
        for w in mask_iter(a.adj[v] & avail) {
            rec(a, avail & !(1 << v) & !(1 << w), count + 1, best);
        }
        rec(a, avail & !(1 << v), count, best);
    }
    let mut best = 0;
    rec(&Adj::of(g), g.full_mask(), 0, &mut best);
    best
}

/// Smallest inclusion-maximal matching; 0 for a graph without edges.
pub fn min_maximal_matching_number(g: &Graph) -> usize {
    // `avail` holds the unmatched vertices. Some edge `vw` inside `avail`
    // must be dominated, so every maximal extension matches `v` or `w`.
    fn rec(a: &Adj<'_>, avail: VertexMask, count: usize, best: &mut usize) {
        let Some(v) = a.first_with_edge(avail) else {
            *best = (*best).min(count);
            return;
        };
        if count + 1 >= *best {
            return;
        }
        let w = (a.adj[v] & avail).trailing_zeros() as usize;
        for x in mask_iter(a.adj[v] & avail) {
            rec(a, avail & !(1 << v) & !(1 << x), count + 1, best);
        }
        for x in mask_iter(a.adj[w] & avail & !(1 << v)) {
            rec(a, avail & !(1 << w) & !(1 << x), count + 1, best);
        }
    }
    let mut best = usize::MAX;
    rec(&Adj::of(g), g.full_mask(), 0, &mut best);
    best
}

/// Largest matching whose vertex set induces no further edges.
pub fn induced_matching_number(g: &Graph) -> usize {
    induced_matching_in(g, g.full_mask())
}

/// Induced matching number of `G|_mask`.
pub fn induced_matching_in(g: &Graph, mask: VertexMask) -> usize {
    fn rec(a: &Adj<'_>, avail: VertexMask, count: usize, best: &mut usize) {
        let live = mask_iter(avail).filter(|&v| a.adj[v] & avail != 0).count();
        if count + live / 2 <= *best {
            return;
        }
        let Some(v) = a.first_with_edge(avail) else {
            *best = count;
            return;
        };
        let closed_v = a.adj[v] | (1 << v);
        for w in mask_iter(a.adj[v] & avail) {
            let blocked = closed_v | a.adj[w] | (1 << w);
            rec(a, avail & !blocked, count + 1, best);
        }
        rec(a, avail & !(1 << v), count, best);
    }
    let mut best = 0;
    rec(&Adj::of(g), mask & g.full_mask(), 0, &mut best);
    best
}

/// Maximum number of vertices with pairwise disjoint closed neighborhoods.
pub fn star_packing_number(g: &Graph) -> usize {
    let a = Adj::of(g);
    let n = g.vertex_count();
    // ball[v] = vertices at distance <= 2 from v
    let ball: Vec<VertexMask> = (0..n)
        .map(|v| {
            let closed = a.adj[v] | (1 << v);
            mask_iter(closed).fold(closed, |m, x| m | a.adj[x])
        })
        .collect();
    fn rec(ball: &[VertexMask], cand: VertexMask, count: usize, best: &mut usize) {
        if count + cand.count_ones() as usize <= *best {
            return;
        }
        if cand == 0 {
            *best = count;
            return;
        }
        let v = cand.trailing_zeros() as usize;
        rec(ball, cand & !ball[v], count + 1, best);
        rec(ball, cand & !(1 << v), count, best);
    }
    let mut best = 0;
    rec(&ball, g.full_mask(), 0, &mut best);
    best
}

/// Independence number of `G|_mask`.
pub fn independence_number_in(g: &Graph, mask: VertexMask) -> usize {
    fn rec(a: &Adj<'_>, avail: VertexMask, count: usize, best: &mut usize) {
        if count + avail.count_ones() as usize <= *best {
            return;
        }
        if avail == 0 {
            *best = count;
            return;
        }
        let v = avail.trailing_zeros() as usize;
        if a.adj[v] & avail == 0 {
            rec(a, avail & !(1 << v), count + 1, best);
            return;
        }
        rec(a, avail & !(a.adj[v] | (1 << v)), count + 1, best);
        rec(a, avail & !(1 << v), count, best);
    }
    let mut best = 0;
    rec(&Adj::of(g), mask & g.full_mask(), 0, &mut best);
    best
}

/// `(independence number, minimum vertex cover)`; they sum to `|V|`.
pub fn independence_and_cover(g: &Graph) -> (usize, usize) {
    let indep = independence_number_in(g, g.full_mask());
    (indep, g.vertex_count() - indep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthBounds {
    /// Star packing number.
    pub lower_star: usize,
    /// Sum over components of `ceil((diameter + 1) / 3)`.
    pub lower_diam: usize,
    /// `floor(n / 2)` for connected bipartite graphs.
    pub upper_bipartite: Option<usize>,
}

pub fn depth_bounds(g: &Graph) -> DepthBounds {
    let lower_diam = g
        .components_and_diameters()
        .iter()
        .map(|c| (c.diameter + 1).div_ceil(3))
        .sum();
    let upper_bipartite = (g.is_connected() && g.is_bipartite()).then(|| g.vertex_count() / 2);
    DepthBounds {
        lower_star: star_packing_number(g),
        lower_diam,
        upper_bipartite,
    }
}
