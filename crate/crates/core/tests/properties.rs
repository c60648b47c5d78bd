use std::collections::BTreeSet;

use eideal_core::cm::{classify_cm, poset_to_graph, random_cm_graph};
use eideal_core::glue::{circ, clique_sum_p2, leaf_sites, star_glue};
use eideal_core::graph::Graph;
use eideal_core::homology::{hochster_scan_all, oracle_values, restricted_complex, OracleConfig};
use eideal_core::invariants::{
    independence_and_cover, induced_matching_number, matching_number, min_maximal_matching_number,
    star_packing_number,
};
use eideal_core::linalg::{rank_mod_prime, rank_rational, IntMatrix};
use eideal_core::RankField;
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                edges.push((names[i].as_str(), names[j].as_str()));
            }
            k += 1;
        }
    }
    Graph::new(names.iter().map(String::as_str), edges).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

// ---- brute-force references ----

fn is_matching(edges: &[(usize, usize)]) -> bool {
    let mut used = 0u64;
    for &(a, b) in edges {
        if used & (1 << a | 1 << b) != 0 {
            return false;
        }
        used |= 1 << a | 1 << b;
    }
    true
}

fn subsets<T: Copy>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u64..1 << items.len()).map(move |m| {
        (0..items.len())
            .filter(|&i| m >> i & 1 == 1)
            .map(|i| items[i])
            .collect()
    })
}

fn bf_matching(g: &Graph) -> usize {
    let e = g.edges();
    subsets(&e)
        .filter(|s| is_matching(s))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

fn bf_min_maximal(g: &Graph) -> usize {
    let e = g.edges();
    subsets(&e)
        .filter(|s| is_matching(s))
        .filter(|s| {
            let covered: u64 = s.iter().fold(0, |m, &(a, b)| m | 1 << a | 1 << b);
            e.iter().all(|&(a, b)| covered & (1 << a | 1 << b) != 0)
        })
        .map(|s| s.len())
        .min()
        .unwrap_or(0)
}

fn bf_induced(g: &Graph) -> usize {
    let e = g.edges();
    subsets(&e)
        .filter(|s| is_matching(s))
        .filter(|s| {
            let covered: u64 = s.iter().fold(0, |m, &(a, b)| m | 1 << a | 1 << b);
            e.iter()
                .filter(|&&(a, b)| covered >> a & 1 == 1 && covered >> b & 1 == 1)
                .count()
                == s.len()
        })
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

fn closed_nbhd(g: &Graph, v: usize) -> u64 {
    g.neighbor_mask(v) | 1 << v
}

fn bf_independence(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0u64..1 << n)
        .filter(|&m| (0..n).all(|v| m >> v & 1 == 0 || g.neighbor_mask(v) & m == 0))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

fn bf_star_packing(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0u64..1 << n)
        .filter(|&m| {
            let centers: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            let mut seen = 0u64;
            centers.iter().all(|&c| {
                let ok = closed_nbhd(g, c) & seen == 0;
                seen |= closed_nbhd(g, c);
                ok
            })
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matching_numbers_match_brute_force(g in small_graph(6)) {
        prop_assert_eq!(matching_number(&g), bf_matching(&g));
        prop_assert_eq!(min_maximal_matching_number(&g), bf_min_maximal(&g));
        prop_assert_eq!(induced_matching_number(&g), bf_induced(&g));
    }

    #[test]
    fn vertex_searches_match_brute_force(g in small_graph(9)) {
        let (indep, cover) = independence_and_cover(&g);
        prop_assert_eq!(indep, bf_independence(&g));
        prop_assert_eq!(indep + cover, g.vertex_count());
        prop_assert_eq!(star_packing_number(&g), bf_star_packing(&g));
    }

    #[test]
    fn report_invariants(g in small_graph(8)) {
        let theta = induced_matching_number(&g);
        let alpha = matching_number(&g);
        let beta = min_maximal_matching_number(&g);
        let (indep, cover) = independence_and_cover(&g);
        prop_assert!(theta <= alpha && beta <= alpha);
        prop_assert!(star_packing_number(&g) <= indep);
        if g.is_bipartite() {
            prop_assert_eq!(cover, alpha);
        }
    }

    #[test]
    fn vertex_deletion_moves_invariants_by_at_most_one(g in small_graph(8), pick in any::<prop::sample::Index>()) {
        let v = g.name(pick.index(g.vertex_count())).to_string();
        let h = g.without(&[v.as_str()]).unwrap();
        for (before, after) in [
            (induced_matching_number(&g), induced_matching_number(&h)),
            (matching_number(&g), matching_number(&h)),
            (independence_and_cover(&g).0, independence_and_cover(&h).0),
        ] {
            prop_assert!(after <= before && before <= after + 1);
        }
    }

    #[test]
    fn induced_subgraph_is_idempotent(g in small_graph(8), keep_bits in any::<u64>()) {
        let keep: Vec<String> = g.names().iter().enumerate()
            .filter(|(i, _)| keep_bits >> i & 1 == 1).map(|(_, n)| n.clone()).collect();
        let once = g.induced_subgraph(&keep).unwrap();
        prop_assert_eq!(once.induced_subgraph(&keep).unwrap(), once.clone());
        prop_assert_eq!(g.induced_subgraph(g.names()).unwrap(), g.clone());
    }

    #[test]
    fn two_coloring_has_a_witness(g in small_graph(9)) {
        match g.two_coloring() {
            Ok(bp) => prop_assert!(bp.is_valid_for(&g)),
            Err(odd) => prop_assert!(odd.is_valid_for(&g)),
        }
    }

    #[test]
    fn rational_rank_agrees_with_large_prime(rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(-3i64..=3, 36)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|r| seed[r * 6..r * 6 + cols].to_vec()).collect();
        let m = IntMatrix::from_rows(&data);
        // small entries: no prime this large divides a nonzero minor
        prop_assert_eq!(rank_rational(&m), rank_mod_prime(&m, 1_000_000_007));
    }

    #[test]
    fn shortcuts_do_not_change_the_table(g in small_graph(8)) {
        let on = OracleConfig::default();
        let off = OracleConfig { cone_shortcut: false, join_split: false, check_euler: true, ..on };
        let split_only = OracleConfig { cone_shortcut: false, ..on };
        prop_assert_eq!(&hochster_scan_all(&g, &split_only).unwrap().table, &hochster_scan_all(&g, &off).unwrap().table);
        let a = hochster_scan_all(&g, &on).unwrap();
        let b = hochster_scan_all(&g, &off).unwrap();
        prop_assert_eq!(&a.table, &b.table);
        prop_assert_eq!(b.euler_violations, 0);
        let p = OracleConfig { field: RankField::ModPrime(32003), ..on };
        prop_assert_eq!(hochster_scan_all(&g, &p).unwrap().table, a.table);
    }

    #[test]
    fn random_cm_graphs_are_recognised(n in 1usize..=7, density in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = random_cm_graph(n, density, seed);
        prop_assert_eq!(g.vertex_count(), 2 * n);
        let lab = classify_cm(&g);
        prop_assert!(lab.is_ok(), "{:?}", lab);
        prop_assert_eq!(lab.unwrap().verify(&g), Ok(()));
        prop_assert_eq!(random_cm_graph(n, density, seed), g);
    }

    #[test]
    fn recognition_agrees_with_depth_equals_dim(g in small_graph(8)) {
        if g.is_bipartite() && g.isolated_mask() == 0 {
            let o = oracle_values(&g, &OracleConfig::default()).unwrap();
            prop_assert_eq!(classify_cm(&g).is_ok(), o.depth == o.dim);
        }
    }

    #[test]
    fn glue_counts_and_bipartiteness(
        n1 in 1usize..=4, n2 in 1usize..=4, d in 0.0f64..=1.0, s1 in any::<u64>(), s2 in any::<u64>(),
        i1 in any::<prop::sample::Index>(), i2 in any::<prop::sample::Index>(),
    ) {
        let g1 = random_cm_graph(n1, d, s1).with_prefix("a.").unwrap();
        let g2 = random_cm_graph(n2, d, s2).with_prefix("b.").unwrap();
        let l1 = leaf_sites(&g1);
        let l2 = leaf_sites(&g2);
        let (u1, u2) = (&l1[i1.index(l1.len())].leaf, &l2[i2.index(l2.len())].leaf);
        let c = circ(&g1, u1, &g2, u2, "v").unwrap().graph;
        prop_assert_eq!(c.vertex_count(), g1.vertex_count() + g2.vertex_count() - 3);
        prop_assert_eq!(c.edge_count(), g1.edge_count() + g2.edge_count() - 2);
        prop_assert!(c.is_bipartite());
        let s = star_glue(&g1, u1, &g2, u2, "u").unwrap().graph;
        prop_assert_eq!(s.vertex_count(), g1.vertex_count() + g2.vertex_count() - 1);
        prop_assert_eq!(s.edge_count(), g1.edge_count() + g2.edge_count());
        prop_assert_eq!(s.degree_of("u").unwrap(), 2);
        prop_assert!(s.is_bipartite());
        let p = clique_sum_p2(&g1, u1, "p").unwrap();
        prop_assert_eq!(p.edge_count(), g1.edge_count() + 1);
    }
}

/// Brute-force simplicial homology ranks agree with the Euler identity on every
/// restricted complex of a few fixed graphs.
#[test]
fn euler_identity_on_restricted_complexes() {
    for g in [
        Graph::cycle(5, "c").unwrap(),
        Graph::path(6, "p").unwrap(),
        Graph::cycle(6, "c").unwrap(),
    ] {
        for w in 1..1u64 << g.vertex_count() {
            let c = restricted_complex(&g, w);
            let ranks = c.reduced_homology_ranks(RankField::Rational);
            assert!(eideal_core::homology::euler_identity_holds(&c, &ranks));
        }
    }
}

/// Position of each pair in a labeling, and which side a vertex lies on.
fn labeling_index(g: &Graph) -> std::collections::BTreeMap<String, (bool, usize)> {
    let lab = classify_cm(g).unwrap();
    let mut at = std::collections::BTreeMap::new();
    for (k, (x, y)) in lab.pairs.iter().enumerate() {
        at.insert(x.clone(), (true, k));
        at.insert(y.clone(), (false, k));
    }
    at
}

#[test]
fn regularity_bounds_on_closed_neighbourhood_deletions() {
    let cfg = OracleConfig::default();
    let mut extreme_neighbour_cases = 0;
    for seed in 0..60u64 {
        let n = 2 + (seed % 5) as usize;
        let g = random_cm_graph(n, 0.45, seed);
        let reg = oracle_values(&g, &cfg).unwrap().reg;
        let theta = induced_matching_number(&g);
        let at = labeling_index(&g);
        for site in leaf_sites(&g) {
            let v = site.support.as_str();
            let mut closed: Vec<&str> = g.neighbors(v).unwrap();
            closed.push(v);
            let j = g.without(&closed).unwrap();
            assert!(
                oracle_values(&j, &cfg).unwrap().reg < reg,
                "seed {seed} leaf {}",
                site.leaf
            );

            let g_v = g.without(&[v]).unwrap();
            let g_uv = g.without(&[v, site.leaf.as_str()]).unwrap();
            assert_eq!(
                induced_matching_number(&g_v),
                induced_matching_number(&g_uv)
            );

            if g.degree_of(v).unwrap() >= 2 && induced_matching_number(&g_v) + 1 == theta {
                // w: the neighbor of v furthest from the leaf in the labeling order
                let leaf_on_x = at[&site.leaf].0;
                let nbrs = g.neighbors(v).unwrap();
                let w = if leaf_on_x {
                    nbrs.iter().min_by_key(|n| at[**n].1)
                } else {
                    nbrs.iter().max_by_key(|n| at[**n].1)
                }
                .unwrap()
                .to_string();
                let mut closed_w: Vec<&str> = g.neighbors(&w).unwrap();
                closed_w.push(&w);
                let jw = g.without(&closed_w).unwrap();
                assert!(
                    oracle_values(&jw, &cfg).unwrap().reg + 2 <= reg,
                    "seed {seed}"
                );
                assert_eq!(
                    oracle_values(&g.without(&[w.as_str()]).unwrap(), &cfg)
                        .unwrap()
                        .reg,
                    reg
                );
                extreme_neighbour_cases += 1;
            }
        }
    }
    assert!(extreme_neighbour_cases > 0);
}

#[test]
fn poset_examples() {
    let antichain = poset_to_graph(3, &BTreeSet::new()).unwrap();
    assert_eq!(antichain.edge_count(), 3);
    let fig4: BTreeSet<_> = [(1, 3), (2, 3)].into_iter().collect();
    let g = poset_to_graph(3, &fig4).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (6, 5));
    let lab = classify_cm(&g).unwrap();
    let expected: BTreeSet<_> = [(1, 1), (2, 2), (3, 3), (1, 3), (2, 3)]
        .into_iter()
        .collect();
    assert_eq!(lab.relation, expected);
}
