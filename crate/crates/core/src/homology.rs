//! Graded Betti numbers of `S/I_G` through Hochster's formula.
//!
//! The Stanley–Reisner complex of an edge ideal is the independence complex
//! of the graph. For every vertex subset `W`,
//!
//! ```text
//! β_{i,|W|}(S/I_G) += dim H̃_{|W|-i-1}(Δ|_W)
//! ```
//!
//! and `Δ|_W` is the independence complex of `G|_W`. Projective dimension,
//! depth (Auslander–Buchsbaum) and regularity are read off the table. Nothing
//! here depends on the closed-form formulas, which is what makes it an oracle.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use crate::graph::{mask_iter, Graph, VertexMask};
use crate::invariants::independence_number_in;
use crate::linalg::{IntMatrix, RankField};

/// Default vertex cap for the subset scan.
pub const DEFAULT_MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_vertices: usize,
    pub field: RankField,
    /// Skip subsets `W` where `G|_W` has an isolated vertex: `Δ|_W` is then a
    /// cone and has no reduced homology.
    pub cone_shortcut: bool,
    /// Compute `Δ|_W` one connected component of `G|_W` at a time. The
    /// complex is then a join and its reduced homology ranks are the
    /// convolution of the factors' rank sequences (indexed from degree -1).
    pub join_split: bool,
    /// Check the Euler characteristic identity on every complex built.
    pub check_euler: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
            field: RankField::Rational,
            cone_shortcut: true,
            join_split: true,
            check_euler: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("graph has {vertices} vertices, oracle cap is {cap}")]
    CapExceeded { vertices: usize, cap: usize },
}

/// Finite simplicial complex on a ground set of at most 64 vertices.
///
/// Faces are bitmasks over ground indices; `faces[d]` holds the faces of
/// dimension `d`, sorted lexicographically as vertex tuples. The empty face
/// is always present and not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: Vec<String>,
    faces: Vec<Vec<VertexMask>>,
}

fn lex_cmp(a: &VertexMask, b: &VertexMask) -> Ordering {
    mask_iter(*a).cmp(mask_iter(*b))
}

impl SimplicialComplex {
    /// Downward closure of the given facets.
    pub fn from_facets(ground: Vec<String>, facets: &[VertexMask]) -> Self {
        let mut all: Vec<VertexMask> = Vec::new();
        for &f in facets {
            // every nonempty submask
            let mut s = f;
            while s != 0 {
                all.push(s);
                s = (s - 1) & f;
            }
        }
        all.sort_unstable();
        all.dedup();
        Self::from_faces(ground, all)
    }

    fn from_faces(ground: Vec<String>, faces: Vec<VertexMask>) -> Self {
        let top = faces
            .iter()
            .map(|f| f.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let mut by_dim = alloc::vec![Vec::new(); top];
        for f in faces {
            by_dim[f.count_ones() as usize - 1].push(f);
        }
        for layer in &mut by_dim {
            layer.sort_by(lex_cmp);
        }
        Self {
            ground,
            faces: by_dim,
        }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    /// Dimension of the complex; `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// Number of faces of dimension `d >= -1`.
    pub fn face_count(&self, d: isize) -> usize {
        match d {
            -1 => 1,
            d if d >= 0 => self.faces.get(d as usize).map_or(0, Vec::len),
            _ => 0,
        }
    }

    /// Faces of dimension `d` as sorted ground-index tuples.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Vec<usize>> {
        self.faces
            .get(d)
            .map(|l| l.iter().map(|&f| mask_iter(f).collect()).collect())
            .unwrap_or_default()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().enumerate().skip(1).all(|(d, layer)| {
            layer.iter().all(|&f| {
                mask_iter(f).all(|v| {
                    self.faces[d - 1]
                        .binary_search_by(|g| lex_cmp(g, &(f & !(1 << v))))
                        .is_ok()
                })
            })
        })
    }

    /// `Σ_{d>=0} (-1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, l)| {
                if d % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Matrix of `∂_d : C_d -> C_{d-1}` (`d >= 0`, `C_{-1}` spanned by `∅`).
    /// Deleting the `k`-th smallest vertex of a face carries sign `(-1)^k`.
    pub fn boundary_matrix(&self, d: usize) -> IntMatrix {
        let cols = self.faces.get(d).map_or(&[][..], Vec::as_slice);
        if d == 0 {
            let mut m = IntMatrix::zeros(1, cols.len());
            for c in 0..cols.len() {
                m.set(0, c, 1);
            }
            return m;
        }
        let rows = &self.faces[d - 1];
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (c, &f) in cols.iter().enumerate() {
            for (k, v) in mask_iter(f).enumerate() {
                let r = rows
                    .binary_search_by(|g| lex_cmp(g, &(f & !(1 << v))))
                    .expect("complex is downward closed");
                m.set(r, c, if k % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// `dim H̃_d` for `d = -1 ..= dimension()`; entry `k` is degree `k - 1`.
    pub fn reduced_homology_ranks(&self, field: RankField) -> Vec<usize> {
        let top = self.faces.len();
        // rank of ∂_d for d = 0..=top (∂_top maps from an empty space)
        let ranks: Vec<usize> = (0..=top)
            .map(|d| {
                if d < top {
                    self.boundary_matrix(d).rank(field)
                } else {
                    0
                }
            })
            .collect();
        let mut out = Vec::with_capacity(top + 1);
        // degree -1: one empty face, ∂_{-1} = 0
        out.push(1 - ranks[0]);
        for d in 0..top {
            out.push(self.faces[d].len() - ranks[d] - ranks[d + 1]);
        }
        out
    }
}

/// Independent sets of `G|_within` as masks, excluding the empty set.
fn independent_sets(g: &Graph, within: VertexMask) -> Vec<VertexMask> {
    fn grow(g: &Graph, face: VertexMask, cand: VertexMask, out: &mut Vec<VertexMask>) {
        for v in mask_iter(cand) {
            let f = face | (1 << v);
            out.push(f);
            // only larger indices, never neighbors of v
            let higher = cand & !((2u64 << v).wrapping_sub(1));
            grow(g, f, higher & !g.neighbor_mask(v), out);
        }
    }
    let mut out = Vec::new();
    grow(g, 0, within, &mut out);
    out
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), OracleError> {
    // the subset scan counts masks in a u64
    let cap = cap.min(63);
    if g.vertex_count() > cap {
        return Err(OracleError::CapExceeded {
            vertices: g.vertex_count(),
            cap,
        });
    }
    Ok(())
}

/// Independence complex of `g`, ground set in vertex order.
pub fn independence_complex(g: &Graph, cap: usize) -> Result<SimplicialComplex, OracleError> {
    check_cap(g, cap)?;
    Ok(restricted_complex(g, g.full_mask()))
}

/// Independence complex of `G|_within`, on the full ground set of `g`.
pub fn restricted_complex(g: &Graph, within: VertexMask) -> SimplicialComplex {
    SimplicialComplex::from_faces(g.names().to_vec(), independent_sets(g, within))
}

/// Sparse graded Betti table of `S/I`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    /// Number of ring variables.
    pub n: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_insert(0) += beta;
        }
    }

    pub fn merge(&mut self, other: &BettiTable) {
        for (&(i, j), &b) in &other.entries {
            self.add(i, j, b);
        }
    }

    /// Nonzero entries `(i, j, β_{i,j})` sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }
}

/// Result of scanning a range of vertex subsets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiScan {
    pub table: BettiTable,
    /// Complexes whose homology was computed.
    pub complexes: usize,
    pub euler_violations: usize,
}

impl BettiScan {
    pub fn merge(&mut self, other: &BettiScan) {
        self.table.merge(&other.table);
        self.complexes += other.complexes;
        self.euler_violations += other.euler_violations;
    }
}

/// Hochster contributions of every nonempty `W` with mask in `subsets`.
///
/// Does not add `β_{0,0}`; [`hochster_betti`] does. Disjoint ranges can be
/// scanned independently and merged.
pub fn hochster_scan(
    g: &Graph,
    cfg: &OracleConfig,
    subsets: Range<u64>,
) -> Result<BettiScan, OracleError> {
    check_cap(g, cfg.max_vertices)?;
    let mut scan = BettiScan {
        table: BettiTable::new(g.vertex_count()),
        ..Default::default()
    };
    for w in subsets {
        if w == 0 {
            continue;
        }
        if cfg.cone_shortcut && mask_iter(w).any(|v| g.neighbor_mask(v) & w == 0) {
            continue;
        }
        let parts = if cfg.join_split {
            components_within(g, w)
        } else {
            alloc::vec![w]
        };
        let mut ranks = alloc::vec![1usize];
        for part in parts {
            let complex = restricted_complex(g, part);
            let r = complex.reduced_homology_ranks(cfg.field);
            scan.complexes += 1;
            if cfg.check_euler && !euler_identity_holds(&complex, &r) {
                scan.euler_violations += 1;
            }
            ranks = convolve(&ranks, &r);
            if ranks.iter().all(|&x| x == 0) {
                break;
            }
        }
        let j = w.count_ones() as usize;
        for (k, &r) in ranks.iter().enumerate() {
            // homological degree i = j - d - 1 with d = k - 1
            if r > 0 && k <= j {
                scan.table.add(j - k, j, r as u64);
            }
        }
    }
    Ok(scan)
}

/// Vertex sets of the connected components of `G|_w`.
fn components_within(g: &Graph, w: VertexMask) -> Vec<VertexMask> {
    let mut rest = w;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let reach = mask_iter(comp).fold(comp, |m, v| m | g.neighbor_mask(v)) & w;
            if reach == comp {
                break;
            }
            comp = reach;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = alloc::vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Σ_{d>=0} (-1)^d f_d = Σ_{d>=-1} (-1)^d dim H̃_d + 1`.
pub fn euler_identity_holds(c: &SimplicialComplex, ranks: &[usize]) -> bool {
    let homology: i64 = ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| if k % 2 == 0 { -(r as i64) } else { r as i64 })
        .sum();
    c.euler_characteristic() == homology + 1
}

/// Full Betti table of `S/I_G`, with `β_{0,0} = 1`.
pub fn hochster_betti(g: &Graph, cfg: &OracleConfig) -> Result<BettiTable, OracleError> {
    Ok(hochster_scan_all(g, cfg)?.table)
}

/// Full subset scan including the `β_{0,0}` entry.
pub fn hochster_scan_all(g: &Graph, cfg: &OracleConfig) -> Result<BettiScan, OracleError> {
    check_cap(g, cfg.max_vertices)?;
    let end = 1u64 << g.vertex_count();
    let mut scan = hochster_scan(g, cfg, 1..end)?;
    scan.table.add(0, 0, 1);
    Ok(scan)
}

/// Ring-theoretic values read from a Betti table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleValues {
    pub depth: usize,
    pub reg: usize,
    pub pd: usize,
    /// Krull dimension = independence number.
    pub dim: usize,
}

impl OracleValues {
    pub fn from_table(g: &Graph, table: &BettiTable) -> Self {
        let pd = table.projective_dimension();
        Self {
            depth: g.vertex_count() - pd,
            reg: table.regularity(),
            pd,
            dim: independence_number_in(g, g.full_mask()),
        }
    }
}

pub fn oracle_values(g: &Graph, cfg: &OracleConfig) -> Result<OracleValues, OracleError> {
    let table = hochster_betti(g, cfg)?;
    Ok(OracleValues::from_table(g, &table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| alloc::format!("v{i}")).collect()
    }

    #[test]
    fn single_edge_complex() {
        let g = Graph::path(2, "p").unwrap();
        let c = independence_complex(&g, 16).unwrap();
        assert_eq!(c.face_count(0), 2);
        assert_eq!(c.face_count(1), 0);
        assert_eq!(c.dimension(), 0);
    }

    #[test]
    fn edgeless_is_a_simplex() {
        let g = Graph::new(["a", "b", "c"], []).unwrap();
        let c = independence_complex(&g, 16).unwrap();
        let total: usize = (-1..=2).map(|d| c.face_count(d)).sum();
        assert_eq!(total, 8);
        assert_eq!(
            c.reduced_homology_ranks(RankField::Rational),
            vec![0, 0, 0, 0]
        );
    }

    #[test]
    fn four_cycle_complex() {
        let g = Graph::cycle(4, "c").unwrap();
        let c = independence_complex(&g, 16).unwrap();
        assert_eq!(c.face_count(0), 4);
        assert_eq!(c.faces_of_dim(1), vec![vec![0, 2], vec![1, 3]]);
        assert!(c.is_downward_closed());
    }

    #[test]
    fn homology_of_small_spaces() {
        let two_points = SimplicialComplex::from_facets(names(2), &[0b01, 0b10]);
        assert_eq!(
            two_points.reduced_homology_ranks(RankField::Rational),
            vec![0, 1]
        );
        let square = SimplicialComplex::from_facets(names(4), &[0b0011, 0b0110, 0b1100, 0b1001]);
        assert_eq!(
            square.reduced_homology_ranks(RankField::Rational),
            vec![0, 0, 1]
        );
        let empty = SimplicialComplex::from_facets(names(0), &[]);
        assert_eq!(empty.reduced_homology_ranks(RankField::Rational), vec![1]);
        // independence complex of P4 is contractible (a path of 3 edges)
        let p4 = independence_complex(&Graph::path(4, "p").unwrap(), 16).unwrap();
        assert_eq!(
            p4.reduced_homology_ranks(RankField::Rational),
            vec![0, 0, 0]
        );
    }

    #[test]
    fn betti_of_edges() {
        let one = hochster_betti(&Graph::path(2, "p").unwrap(), &cfg()).unwrap();
        assert_eq!(
            one.entries().collect::<Vec<_>>(),
            vec![(0, 0, 1), (1, 2, 1)]
        );
        let two = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).unwrap();
        let t = hochster_betti(&two, &cfg()).unwrap();
        assert_eq!(
            t.entries().collect::<Vec<_>>(),
            vec![(0, 0, 1), (1, 2, 2), (2, 4, 1)]
        );
        let p4 = hochster_betti(&Graph::path(4, "p").unwrap(), &cfg()).unwrap();
        assert_eq!(p4.projective_dimension(), 2);
    }

    #[test]
    fn oracle_on_small_graphs() {
        let c4 = oracle_values(&Graph::cycle(4, "c").unwrap(), &cfg()).unwrap();
        assert_eq!((c4.depth, c4.dim), (1, 2));
        let empty = oracle_values(&Graph::new(["a", "b"], []).unwrap(), &cfg()).unwrap();
        assert_eq!(
            empty,
            OracleValues {
                depth: 2,
                reg: 0,
                pd: 0,
                dim: 2
            }
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::path(5, "p").unwrap();
        let small = OracleConfig {
            max_vertices: 4,
            ..cfg()
        };
        assert_eq!(
            oracle_values(&g, &small),
            Err(OracleError::CapExceeded {
                vertices: 5,
                cap: 4
            })
        );
        assert!(independence_complex(&g, 4).is_err());
    }
}
