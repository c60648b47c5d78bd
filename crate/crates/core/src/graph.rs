//! Finite simple graphs with named vertices.
//!
//! A [`Graph`] is an immutable value: a sequence of distinct vertex names
//! together with a set of unordered edges. Adjacency is stored as one `u64`
//! bitmask per vertex, which caps a graph at [`MAX_VERTICES`] vertices. Every
//! algorithm in this crate is an exact exponential search intended for
//! desk-scale inputs, so the cap is never the binding constraint.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// Bitmask over vertex indices of one graph.
pub type VertexMask = u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("invalid vertex name {0:?} (expected [A-Za-z0-9_.]+)")]
    InvalidName(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(String, String),
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("graph exceeds {MAX_VERTICES} vertices")]
    TooManyVertices,
}

/// Returns true when `name` matches `[A-Za-z0-9_.]+`.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'.')
}

/// Incremental constructor for [`Graph`].
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<VertexMask>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, GraphError> {
        if !is_valid_name(name) {
            return Err(GraphError::InvalidName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        if self.names.len() == MAX_VERTICES {
            return Err(GraphError::TooManyVertices);
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.adj.push(0);
        Ok(id)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let i = *self
            .index
            .get(a)
            .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
        let j = *self
            .index
            .get(b)
            .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
        if i == j {
            return Err(GraphError::Loop(a.to_string()));
        }
        if self.adj[i] & (1 << j) != 0 {
            return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
        }
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn build(self) -> Graph {
        Graph {
            names: self.names,
            index: self.index,
            adj: self.adj,
        }
    }
}

/// Immutable finite simple graph. Isolated vertices are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<VertexMask>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &self.edge_names())
            .finish()
    }
}

/// Iterates the set bits of a mask, lowest first.
pub fn mask_iter(mut mask: VertexMask) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

impl Graph {
    /// Builds a graph from vertex names and edges given by name.
    pub fn new<'a, V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = &'a str>,
        E: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(v)?;
        }
        for (x, y) in edges {
            b.add_edge(x, y)?;
        }
        Ok(b.build())
    }

    /// Path on `n` vertices named `prefix1 .. prefixn`.
    pub fn path(n: usize, prefix: &str) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new();
        for i in 1..=n {
            b.add_vertex(&alloc::format!("{prefix}{i}"))?;
        }
        for i in 1..n {
            b.add_edge(
                &alloc::format!("{prefix}{i}"),
                &alloc::format!("{prefix}{}", i + 1),
            )?;
        }
        Ok(b.build())
    }

    /// Cycle on `n >= 3` vertices named `prefix1 .. prefixn`.
    pub fn cycle(n: usize, prefix: &str) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new();
        for i in 1..=n {
            b.add_vertex(&alloc::format!("{prefix}{i}"))?;
        }
        for i in 1..=n {
            let j = if i == n { 1 } else { i + 1 };
            b.add_edge(
                &alloc::format!("{prefix}{i}"),
                &alloc::format!("{prefix}{j}"),
            )?;
        }
        Ok(b.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Vertex names in vertex order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    fn require(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// Mask with one bit per vertex.
    pub fn full_mask(&self) -> VertexMask {
        match self.names.len() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    pub(crate) fn adjacency(&self) -> &[VertexMask] {
        &self.adj
    }

    pub fn neighbor_mask(&self, i: usize) -> VertexMask {
        self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] & (1 << j) != 0
    }

    /// Neighbor names of `name`, in vertex order.
    pub fn neighbors(&self, name: &str) -> Result<Vec<&str>, GraphError> {
        let i = self.require(name)?;
        Ok(mask_iter(self.adj[i]).map(|j| self.name(j)).collect())
    }

    pub fn degree_of(&self, name: &str) -> Result<usize, GraphError> {
        Ok(self.degree(self.require(name)?))
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in index order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.names.len() {
            for j in mask_iter(self.adj[i] & u64::MAX.checked_shl(i as u32 + 1).unwrap_or(0)) {
                out.push((i, j));
            }
        }
        out
    }

    /// Edges as name pairs `(min, max)` sorted lexicographically.
    pub fn edge_names(&self) -> Vec<(&str, &str)> {
        let mut out: Vec<(&str, &str)> = self
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (self.name(i), self.name(j));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Mask of vertices with no neighbors.
    pub fn isolated_mask(&self) -> VertexMask {
        let mut m = 0;
        for (i, a) in self.adj.iter().enumerate() {
            if *a == 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn mask_of(&self, names: &[&str]) -> Result<VertexMask, GraphError> {
        let mut m = 0;
        for n in names {
            m |= 1 << self.require(n)?;
        }
        Ok(m)
    }

    /// Induced subgraph on the vertices in `keep`, preserving vertex order.
    pub fn induced_by_mask(&self, keep: VertexMask) -> Graph {
        let keep = keep & self.full_mask();
        let old: Vec<usize> = mask_iter(keep).collect();
        let mut remap = [usize::MAX; MAX_VERTICES];
        for (new, &o) in old.iter().enumerate() {
            remap[o] = new;
        }
        let names: Vec<String> = old.iter().map(|&o| self.names[o].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let adj = old
            .iter()
            .map(|&o| mask_iter(self.adj[o] & keep).fold(0u64, |acc, j| acc | (1 << remap[j])))
            .collect();
        Graph { names, index, adj }
    }

    /// `G|_A`: the induced subgraph on the named vertices.
    pub fn induced_subgraph<S: AsRef<str>>(&self, keep: &[S]) -> Result<Graph, GraphError> {
        let mut m = 0;
        for n in keep {
            m |= 1 << self.require(n.as_ref())?;
        }
        Ok(self.induced_by_mask(m))
    }

    /// `G \ W`: the induced subgraph on the complement of the named vertices.
    pub fn without<S: AsRef<str>>(&self, remove: &[S]) -> Result<Graph, GraphError> {
        let mut m = 0;
        for n in remove {
            m |= 1 << self.require(n.as_ref())?;
        }
        Ok(self.induced_by_mask(self.full_mask() & !m))
    }

    /// Renames every vertex by prepending `prefix`.
    pub fn with_prefix(&self, prefix: &str) -> Result<Graph, GraphError> {
        self.relabeled(|n| alloc::format!("{prefix}{n}"))
    }

    /// Applies a renaming to every vertex; order and edges are preserved.
    pub fn relabeled<F: FnMut(&str) -> String>(&self, mut f: F) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new();
        for n in &self.names {
            b.add_vertex(&f(n))?;
        }
        let mut g = b.build();
        g.adj = self.adj.clone();
        Ok(g)
    }

    /// Reorders vertices: position `k` of the result holds old vertex `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.names.len(), "order must be a permutation");
        let mut inverse = [usize::MAX; MAX_VERTICES];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let names: Vec<String> = order.iter().map(|&o| self.names[o].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let adj = order
            .iter()
            .map(|&o| mask_iter(self.adj[o]).fold(0u64, |acc, j| acc | (1 << inverse[j])))
            .collect();
        Graph { names, index, adj }
    }

    /// Vertex-disjoint union; fails on a shared name.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new();
        for n in self.names.iter().chain(other.names.iter()) {
            b.add_vertex(n)?;
        }
        for (x, y) in self.edge_names().into_iter().chain(other.edge_names()) {
            b.add_edge(x, y)?;
        }
        Ok(b.build())
    }

    /// BFS distances from `src` inside `within`; unreachable vertices get `usize::MAX`.
    pub(crate) fn bfs_distances(&self, src: usize, within: VertexMask) -> [usize; MAX_VERTICES] {
        let mut dist = [usize::MAX; MAX_VERTICES];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for y in mask_iter(self.adj[x] & within) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Connected components as vertex masks, ordered by their lexicographically least vertex.
    pub fn component_masks(&self) -> Vec<VertexMask> {
        let mut seen = 0u64;
        let mut comps = Vec::new();
        for s in 0..self.names.len() {
            if seen & (1 << s) != 0 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for x in mask_iter(frontier) {
                    next |= self.adj[x];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            comps.push(comp);
        }
        comps.sort_by(|a, b| self.least_name(*a).cmp(self.least_name(*b)));
        comps
    }

    fn least_name(&self, mask: VertexMask) -> &str {
        mask_iter(mask).map(|i| self.name(i)).min().unwrap_or("")
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks().len() <= 1
    }

    /// Components with their diameters (isolated vertex: diameter 0).
    pub fn components_and_diameters(&self) -> Vec<Component> {
        self.component_masks()
            .into_iter()
            .map(|comp| {
                let diameter = mask_iter(comp)
                    .map(|s| {
                        let d = self.bfs_distances(s, comp);
                        mask_iter(comp).map(|t| d[t]).max().unwrap_or(0)
                    })
                    .max()
                    .unwrap_or(0);
                let mut vertices: Vec<String> =
                    mask_iter(comp).map(|i| self.names[i].clone()).collect();
                vertices.sort();
                Component { vertices, diameter }
            })
            .collect()
    }

    /// Two-colors the graph by BFS, or returns an odd closed walk.
    ///
    /// In each component the lexicographically least vertex goes to `part_x`,
    /// and neighbors are explored in lexicographic order.
    pub fn two_coloring(&self) -> Result<Bipartition, OddCycle> {
        let n = self.names.len();
        let mut color = [u8::MAX; MAX_VERTICES];
        let mut parent = [usize::MAX; MAX_VERTICES];
        let mut by_name: Vec<usize> = (0..n).collect();
        by_name.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        for &s in &by_name {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let mut nbrs: Vec<usize> = mask_iter(self.adj[x]).collect();
                nbrs.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
                for y in nbrs {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        parent[y] = x;
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return Err(self.odd_walk(x, y, &parent));
                    }
                }
            }
        }
        let mut part_x = BTreeSet::new();
        let mut part_y = BTreeSet::new();
        for i in 0..n {
            if color[i] == 0 {
                part_x.insert(self.names[i].clone());
            } else {
                part_y.insert(self.names[i].clone());
            }
        }
        Ok(Bipartition { part_x, part_y })
    }

    /// `x` and `y` are adjacent with equal BFS color: their tree paths to the
    /// common ancestor plus the edge `xy` close an odd cycle.
    fn odd_walk(&self, x: usize, y: usize, parent: &[usize; MAX_VERTICES]) -> OddCycle {
        let chain = |mut v: usize| {
            let mut c = alloc::vec![v];
            while parent[v] != usize::MAX {
                v = parent[v];
                c.push(v);
            }
            c
        };
        let cx = chain(x);
        let cy = chain(y);
        let mut i = cx.len();
        let mut j = cy.len();
        while i > 0 && j > 0 && cx[i - 1] == cy[j - 1] {
            i -= 1;
            j -= 1;
        }
        // cx[i] == cy[j] is the lowest common ancestor
        let mut walk: Vec<String> = cx[..=i].iter().map(|&v| self.names[v].clone()).collect();
        walk.extend(cy[..j].iter().rev().map(|&v| self.names[v].clone()));
        walk.push(self.names[x].clone());
        OddCycle { walk }
    }

    pub fn bipartition(&self) -> Option<Bipartition> {
        self.two_coloring().ok()
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_ok()
    }

    /// True when the graph is a single path `P_n` with `n >= 2` vertices.
    pub fn is_path(&self) -> bool {
        let n = self.vertex_count();
        n >= 2
            && self.edge_count() == n - 1
            && self.is_connected()
            && (0..n).all(|i| self.degree(i) <= 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Vertex names, sorted.
    pub vertices: Vec<String>,
    pub diameter: usize,
}

/// Two-coloring certificate of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub part_x: BTreeSet<String>,
    pub part_y: BTreeSet<String>,
}

impl Bipartition {
    /// Checks disjointness, coverage and that every edge crosses the parts.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.part_x.is_disjoint(&self.part_y)
            && self.part_x.len() + self.part_y.len() == g.vertex_count()
            && g.names()
                .iter()
                .all(|n| self.part_x.contains(n) || self.part_y.contains(n))
            && g.edge_names()
                .iter()
                .all(|(a, b)| self.part_x.contains(*a) != self.part_x.contains(*b))
    }
}

/// Closed walk of odd length: `walk[0] == walk[last]`, consecutive entries adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub walk: Vec<String>,
}

impl OddCycle {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let w = &self.walk;
        if w.len() < 2 || w.first() != w.last() || w.len() % 2 == 1 {
            return false;
        }
        w.windows(2)
            .all(|p| match (g.index_of(&p[0]), g.index_of(&p[1])) {
                (Some(a), Some(b)) => g.has_edge(a, b),
                _ => false,
            })
    }
}
