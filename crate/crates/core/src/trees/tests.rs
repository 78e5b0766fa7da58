use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn polygon(n: usize) -> DecoratedPolygon {
    DecoratedPolygon::new((0..n).map(|i| format!("V{i}")).collect())
}

#[test]
fn catalan_counts() {
    for n in 3..=12 {
        assert_eq!(enumerate_trees(&polygon(n)).unwrap().len() as u64, catalan(n - 2), "n = {n}");
    }
    assert_eq!((0..6).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42]);
    assert_eq!(enumerate_trees(&polygon(2)).unwrap_err(), TreeError::TooSmall(1));
}

#[test]
fn edge_counts() {
    for (n, internal) in [(3, 0), (4, 1), (6, 3)] {
        for t in enumerate_trees(&polygon(n)).unwrap() {
            let c = t.classify_edges().unwrap();
            assert_eq!(c.internal.len(), internal);
            assert_eq!(c.external.len(), n);
        }
    }
}

#[test]
fn euler_bookkeeping_and_trivalence() {
    for n in 3..=9 {
        for t in enumerate_trees(&polygon(n)).unwrap() {
            let internal = t.internal_edges().count();
            assert_eq!(t.internal_vertices(), internal + 1);
            let mut valence = vec![0; t.internal_vertices()];
            for e in &t.edges {
                for &v in &e.ends {
                    valence[v] += 1;
                }
            }
            assert!(valence.iter().all(|&v| v == 3));
        }
    }
}

#[test]
fn stars() {
    let tri = &enumerate_trees(&polygon(3)).unwrap()[0];
    assert_eq!(tri.vertex_stars(), vec![[0, 1, 2]]);
    let squares = enumerate_trees(&polygon(4)).unwrap();
    let t = squares.iter().find(|t| t.diagonals == vec![(0, 2)]).unwrap();
    assert_eq!(t.vertex_stars(), vec![[0, 1, 2], [0, 2, 3]]);
}

#[test]
fn endpoint_order() {
    let squares = enumerate_trees(&polygon(4)).unwrap();
    let t = squares.iter().find(|t| t.diagonals == vec![(0, 2)]).unwrap();
    // x− is the triangle (0, 1, 2) lying between V₀ and V₂ clockwise
    assert_eq!(t.edge_endpoint_order(4).unwrap(), (0, 1));
    assert_eq!(t.edge_endpoint_order(0).unwrap_err(), TreeError::ExternalEdge(0));
    assert_eq!(t.edge_endpoint_order(9).unwrap_err(), TreeError::NoSuchEdge(9));
    for t in enumerate_trees(&polygon(5)).unwrap() {
        let pairs: BTreeSet<_> = t.internal_edges().map(|e| t.edge_endpoint_order(e).unwrap()).collect();
        assert_eq!(pairs.len(), 2);
        for (a, b) in pairs {
            assert_ne!(a, b);
        }
    }
}

#[test]
fn orientation_does_not_depend_on_the_starting_leg() {
    for n in 3..=9 {
        for t in enumerate_trees(&polygon(n)).unwrap() {
            let base = t.dfs_order(0);
            let position: Vec<usize> = {
                let mut p = vec![0; base.len()];
                for (i, &e) in base.iter().enumerate() {
                    p[e] = i;
                }
                p
            };
            for start in 1..n {
                let o = t.dfs_order(start);
                assert_eq!(o.len(), t.edges.len());
                let relative: Vec<usize> = o.iter().map(|&e| position[e]).collect();
                assert_eq!(permutation_sign(&relative), 1, "n = {n}, start = {start}");
            }
        }
    }
}

#[test]
fn deterministic() {
    assert_eq!(enumerate_trees(&polygon(8)).unwrap(), enumerate_trees(&polygon(8)).unwrap());
}

#[test]
fn bad_diagonals_are_rejected() {
    assert!(matches!(PlaneTree::from_diagonals(4, vec![]), Err(TreeError::Malformed(_))));
    assert!(matches!(PlaneTree::from_diagonals(5, vec![(0, 2), (1, 3)]), Err(TreeError::Malformed(_))));
}

proptest! {
    #[test]
    fn rotation_permutes_trees(n in 3usize..9, r in 0usize..9) {
        let trees = enumerate_trees(&polygon(n)).unwrap();
        let all: BTreeSet<_> = trees.iter().map(|t| t.diagonals.clone()).collect();
        let rotated: BTreeSet<_> = trees.iter().map(|t| t.rotate(r).diagonals.clone()).collect();
        prop_assert_eq!(&all, &rotated);
        for t in &trees {
            let u = t.rotate(r);
            let (c, cu) = (t.classify_edges().unwrap(), u.classify_edges().unwrap());
            prop_assert_eq!(c.internal.len(), cu.internal.len());
            let shifted: BTreeSet<(usize, usize)> = c
                .internal
                .iter()
                .map(|&(_, a, b)| { let (a, b) = ((a + r) % n, (b + r) % n); (a.min(b), a.max(b)) })
                .collect();
            let got: BTreeSet<(usize, usize)> = cu.internal.iter().map(|&(_, a, b)| (a, b)).collect();
            prop_assert_eq!(shifted, got);
        }
    }
}
