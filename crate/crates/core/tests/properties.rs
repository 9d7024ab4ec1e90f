use std::collections::BTreeMap;

use proptest::prelude::*;

use forge_core::hypergroup::table_invariants;
use forge_core::matrix::rayleigh_squared;
use forge_core::rational::{self, ratio};
use forge_core::walks::DEFAULT_PATTERN_CAP;
use forge_core::{
    build_graph, build_table, catalog, joint_distance_law, norm_bounds, transition_matrix, PointedGraph,
    Rational, WalkDistribution,
};

/// A connected graph on `n` vertices: a random spanning tree plus extra
/// edges.
fn connected_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=9)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            let extra = prop::collection::vec((0..n, 0..n), 0..=n * 2);
            (Just(n), parents, extra)
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v));
            let mut canon: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
            canon.sort();
            canon.dedup();
            (n, canon)
        })
}

fn pointed((n, edges): &(usize, Vec<(usize, usize)>), base: usize) -> PointedGraph {
    build_graph(*n, edges, base % n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spheres_partition_and_distance_is_symmetric(g in connected_graph(), base in 0usize..9) {
        let pg = pointed(&g, base);
        let total: usize = (0..pg.sphere_count()).map(|n| pg.sphere(n).len()).sum();
        prop_assert_eq!(total, g.0);
        for u in 0..g.0 {
            for v in 0..g.0 {
                prop_assert_eq!(pg.distance(u, v).unwrap(), pg.distance(v, u).unwrap());
            }
        }
    }

    #[test]
    fn tables_are_stochastic_with_triangle_support(g in connected_graph(), base in 0usize..9) {
        let pg = pointed(&g, base);
        if pg.check_assumptions().all_pass() {
            let table = build_table(&pg, None, "random").unwrap();
            prop_assert_eq!(table_invariants(&table), Ok(()));
        }
    }

    /// On a window the bound covers vectors whose image stays in the
    /// certified columns, i.e. rows `i <= B - 3k`.
    #[test]
    fn rayleigh_quotient_below_upper_bound(
        spec in prop::sample::select(vec![
            "lattice:1:r=40", "lattice:2:r=14", "ladder:r=30", "tree:binary:8", "petersen", "prism:5", "cycle:7",
        ]),
        k in 1usize..=3,
        entries in prop::collection::vec(0i64..20, 1..=12),
    ) {
        let f = catalog(spec).unwrap();
        let table = build_table(f.pointed(), None, spec).unwrap();
        let k = k.min(table.bound);
        let p = transition_matrix(&table, k).unwrap();
        let nb = norm_bounds(&table, k, &[]).unwrap();
        let reach = if table.complete { usize::MAX } else { table.bound.saturating_sub(3 * k) };
        prop_assume!(table.complete || 3 * k <= table.bound);
        let xi: Vec<Rational> =
            entries.iter().enumerate().map(|(i, &x)| if i <= reach { ratio(x, 1) } else { rational::zero() }).collect();
        if let Ok(q) = rayleigh_squared(&p, &xi) {
            prop_assert!(rational::to_f64(&q) <= rational::to_f64(&nb.upper_squared) + 1e-12);
        }
    }

    #[test]
    fn joint_law_marginals_are_consistent(
        spec in prop::sample::select(vec!["cycle:4", "cycle:5", "prism:3", "zmod:2,2,2"]),
        weights in prop::collection::vec(0i64..4, 4),
        depth in 2usize..=3,
    ) {
        let f = catalog(spec).unwrap();
        let window = f.cayley().unwrap();
        let pg = f.pointed();
        let max = pg.max_index().unwrap();
        let w: Vec<i64> = (1..=max).map(|i| weights[(i - 1) % weights.len()]).collect();
        prop_assume!(w.iter().any(|&x| x > 0));
        let mass: i64 = w.iter().enumerate().map(|(i, &x)| x * pg.sphere(i + 1).len() as i64).sum();
        let alpha: BTreeMap<usize, Rational> =
            w.iter().enumerate().map(|(i, &x)| (i + 1, ratio(x, mass))).collect();
        let alpha = WalkDistribution::new(alpha, pg).unwrap();
        let deep = joint_distance_law(window, &alpha, depth, DEFAULT_PATTERN_CAP).unwrap();
        let total: Rational = deep.entries.values().sum();
        prop_assert_eq!(total, rational::one());
        for d in 1..depth {
            let shallow = joint_distance_law(window, &alpha, d, DEFAULT_PATTERN_CAP).unwrap();
            prop_assert_eq!(deep.marginal(d).entries, shallow.entries);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// Spheres certified in a small window agree with the same spheres in a
    /// much larger one.
    #[test]
    fn window_spheres_match_a_larger_window(radius in 3usize..=7, dim in 1usize..=2) {
        let small = catalog(&format!("lattice:{dim}:r={radius}")).unwrap();
        let big = catalog(&format!("lattice:{dim}:r={}", radius + 6)).unwrap();
        let (sw, bw) = (small.cayley().unwrap(), big.cayley().unwrap());
        let spg = small.pointed();
        for v in 0..spg.vertex_count() {
            let bv = bw.vertex_of(sw.element(v)).unwrap();
            for n in 0..=radius - spg.norm(v) {
                let mut a: Vec<_> = spg.sphere_at(v, n).unwrap().iter().map(|&u| sw.element(u).clone()).collect();
                let mut b: Vec<_> =
                    big.pointed().sphere_at(bv, n).unwrap().iter().map(|&u| bw.element(u).clone()).collect();
                a.sort();
                b.sort();
                prop_assert_eq!(a, b);
            }
        }
    }
}
