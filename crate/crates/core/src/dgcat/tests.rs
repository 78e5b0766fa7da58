use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hochschild::{apply, differential, HochschildComplex, Part};
use super::pairing::dualize_with;
use super::samples::*;
use super::structure::AInfinity;
use super::*;
use crate::graded::Cx;

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

#[test]
fn point_is_valid() {
    assert!(validate(&point()).is_valid());
    for n in 1..=3 {
        assert!(validate(&matrix_algebra(n)).is_valid());
    }
    assert!(validate(&two_points()).is_valid());
    assert!(validate(&sphere_cohomology()).is_valid());
    assert!(validate(&indiscrete(3)).is_valid());
}

#[test]
fn report_names_the_non_associative_triple() {
    // span(1, a, b) with a·b = a and every other product of a, b zero
    let mut b = DgCategory::builder();
    b.object("X").unwrap();
    for l in ["1", "a", "b"] {
        b.basis_element("X", "X", l, 0).unwrap();
    }
    b.identity("X", "1", q(1)).unwrap();
    for l in ["1", "a", "b"] {
        b.composition("X", "X", "X", "1", l, l, q(1)).unwrap();
        if l != "1" {
            b.composition("X", "X", "X", l, "1", l, q(1)).unwrap();
        }
    }
    assert!(validate(&b.clone().build().unwrap()).is_valid());
    b.composition("X", "X", "X", "a", "b", "a", q(1)).unwrap();
    let report = validate(&b.build().unwrap());
    assert_eq!(
        report.violations,
        vec![Violation::NonAssociative { first: "a:X→X".into(), second: "b:X→X".into(), third: "b:X→X".into() }]
    );
}

#[test]
fn report_names_the_leibniz_pair() {
    // d(u) = v with u·u = u but v·u = 0 breaks Leibniz on (u, u).
    let mut b = DgCategory::builder();
    b.object("X").unwrap();
    b.basis_element("X", "X", "1", 0).unwrap();
    b.basis_element("X", "X", "u", 0).unwrap();
    b.basis_element("X", "X", "v", 1).unwrap();
    b.identity("X", "1", q(1)).unwrap();
    for l in ["1", "u", "v"] {
        b.composition("X", "X", "X", "1", l, l, q(1)).unwrap();
        if l != "1" {
            b.composition("X", "X", "X", l, "1", l, q(1)).unwrap();
        }
    }
    b.composition("X", "X", "X", "u", "u", "u", q(1)).unwrap();
    b.differential("X", "X", "u", "v", q(1)).unwrap();
    let report = validate(&b.build().unwrap());
    let pairs: Vec<_> = report
        .violations
        .iter()
        .filter_map(|v| match v {
            Violation::Leibniz { first, second } => Some((first.clone(), second.clone())),
            _ => None,
        })
        .collect();
    assert_eq!(pairs, vec![("u:X→X".to_string(), "u:X→X".to_string())]);
}

#[test]
fn stasheff_relations_hold_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let cat = random_valid(&mut rng);
        assert!(validate(&cat).is_valid());
        assert!(!AInfinity::new(&cat).stasheff_defect());
    }
}

#[test]
fn total_differential_squares_to_zero_on_random_categories() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let cat = random_valid(&mut rng);
        let a = AInfinity::new(&cat);
        for n in 0..=2 {
            for key in hochschild::column(&a, n) {
                let once = differential(&a, &key, Part::Both);
                assert!(apply(&a, &once).is_empty(), "D²({key:?}) ≠ 0");
            }
        }
        assert!(HochschildComplex::build(a.clone(), 3).square_zero());
        assert!(cyclic::CyclicComplex::build(a, 3).square_zero());
    }
}

#[test]
fn bicomplex_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let cat = random_valid(&mut rng);
        assert!(hochschild_bicomplex(&cat, 3).unwrap().relations_hold());
    }
}

#[test]
fn point_hochschild_and_cyclic() {
    let hh = hochschild_cohomology(&point(), 4, (0, 2)).unwrap();
    assert_eq!(hh.dims.values().copied().collect::<Vec<_>>(), vec![1, 0, 0]);
    assert!(hh.stable && hh.window_reliable);
    // degree 3 needs column 4, so it moves between truncations 3 and 4
    assert!(!hochschild_cohomology(&point(), 4, (0, 3)).unwrap().stable);
    let hc = cyclic_homology(&point(), 4, (0, 3)).unwrap();
    assert_eq!(hc.dims.values().copied().collect::<Vec<_>>(), vec![1, 0, 1, 0]);
    assert!(hc.window_reliable);
}

#[test]
fn morita_pair_and_disjoint_union() {
    for (cat, h0) in [(matrix_algebra(2), 1), (two_points(), 2)] {
        let hh = hochschild_cohomology(&cat, 4, (0, 2)).unwrap();
        assert_eq!(hh.dims[&0], h0);
        assert_eq!(hh.dims[&1], 0);
        assert_eq!(hh.dims[&2], 0);
        assert!(hh.stable);
    }
    let hc = cyclic_homology(&matrix_algebra(2), 3, (0, 2)).unwrap();
    assert_eq!(hc.dims.values().copied().collect::<Vec<_>>(), vec![1, 0, 1]);
}

#[test]
fn unreliable_window_is_flagged() {
    let hh = hochschild_cohomology(&point(), 2, (0, 3)).unwrap();
    assert!(!hh.window_reliable);
    let hh = hochschild_cohomology(&sphere_cohomology(), 2, (0, 1)).unwrap();
    assert_eq!(hh.reliable_max, None);
    assert!(!hh.window_reliable);
}

#[test]
fn float_categories_are_rejected() {
    let mut b = DgCategory::<Cx>::builder();
    b.object("pt").unwrap();
    b.basis_element("pt", "pt", "1", 0).unwrap();
    b.composition("pt", "pt", "pt", "1", "1", "1", Cx::new(1.0, 0.0)).unwrap();
    b.identity("pt", "1", Cx::new(1.0, 0.0)).unwrap();
    let cat = b.build().unwrap();
    assert_eq!(hochschild_cohomology(&cat, 2, (0, 1)).unwrap_err(), DgCatError::NotExact);
    assert_eq!(hochschild_cohomology(&point(), 0, (0, 1)).unwrap_err(), DgCatError::ColumnTooSmall);
}

#[test]
fn hh0_bases() {
    let p = hh0_cocycles(&point(), 2).unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p[0], vec![(CochainKey { start: 0, word: vec![], output: 0 }, q(1))]);
    assert_eq!(hh0_cocycles(&matrix_algebra(2), 2).unwrap().len(), 1);
    let two = hh0_cocycles(&two_points(), 2).unwrap();
    assert_eq!(two.len(), 2);
    assert_eq!(two[0].len(), 2);
}

#[test]
fn boundary_descends_to_coinvariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cats: Vec<DgCategory<Q>> = (0..15).map(|_| random_valid(&mut rng)).collect();
    cats.push(sphere_cohomology());
    cats.push(matrix_algebra(2));
    for cat in cats {
        let a = AInfinity::new(&cat);
        for len in 1..=4 {
            for w in a.cyclic_words(len) {
                let Some((canon, s)) = a.canonical(&w) else {
                    // a vanishing word must have vanishing boundary
                    let mut b = a.cyclic_boundary(&w);
                    let mut rotated = w.clone();
                    rotated.rotate_right(1);
                    let sign = a.cyclic_word(&w).rotate().sign();
                    for (k, v) in a.cyclic_boundary(&rotated) {
                        let slot = b.entry(k).or_insert_with(Q::zero);
                        *slot -= v * q(sign as i64);
                    }
                    b.retain(|_, v| !v.is_zero());
                    assert!(b.is_empty());
                    continue;
                };
                let mut direct = a.cyclic_boundary(&w);
                for (k, v) in a.cyclic_boundary(&canon) {
                    let slot = direct.entry(k).or_insert_with(Q::zero);
                    *slot -= v * q(s as i64);
                }
                direct.retain(|_, v| !v.is_zero());
                assert!(direct.is_empty(), "b not rotation invariant on {w:?}");
            }
        }
    }
}

fn trace_pairing(cat: &DgCategory<Q>) -> PairingTarget {
    // ⟨e_ij, e_kl⟩ = δ_jk δ_il
    let mut entries = BTreeMap::new();
    for (x, bx) in cat.basis().iter().enumerate() {
        for (y, by) in cat.basis().iter().enumerate() {
            let (i, j) = (&bx.label[1..2], &bx.label[2..3]);
            let (k, l) = (&by.label[1..2], &by.label[2..3]);
            if j == k && i == l {
                entries.insert((x, y), Q::one());
            }
        }
    }
    PairingTarget { degree: 0, entries }
}

fn unit_pairing(cat: &DgCategory<Q>, degree: i32) -> PairingTarget {
    // ⟨x, y⟩ = coefficient of the top class in x·y
    let mut entries = BTreeMap::new();
    let top = cat.basis().iter().position(|b| b.degree == degree).unwrap();
    for x in 0..cat.basis().len() {
        for y in 0..cat.basis().len() {
            for (h, c) in cat.compose(x, y) {
                if *h == top {
                    entries.insert((x, y), c.clone());
                }
            }
        }
    }
    PairingTarget { degree, entries }
}

/// `D(dualize φ) = dualize(φ ∘ b)` for every basis functional on short words.
fn check_chain_map(cat: &DgCategory<Q>, pairing: &PairingTarget) {
    pairing.validate(cat).unwrap();
    let a = AInfinity::new(cat);
    let complex = cyclic::CyclicComplex::build(a.clone(), 4);
    for (&k, words) in &complex.basis {
        for w in words.iter().filter(|w| w.len() <= 3) {
            let phi = CyclicFunctional { degree: k, values: [(w.clone(), Q::one())].into() };
            let lhs = apply(&a, &dualize_with(&a, &phi, pairing).unwrap());
            let mut pulled = BTreeMap::new();
            for (&k1, ws) in &complex.basis {
                if k1 != k + 1 {
                    continue;
                }
                for w1 in ws {
                    if let Some(c) = a.cyclic_boundary(w1).get(w) {
                        pulled.insert(w1.clone(), c.clone());
                    }
                }
            }
            let psi = CyclicFunctional { degree: k + 1, values: pulled };
            let rhs = dualize_with(&a, &psi, pairing).unwrap();
            let lhs: Vec<_> = lhs.into_iter().filter(|(key, _)| key.arity() + 1 < 4).collect();
            let rhs: Vec<_> = rhs.into_iter().filter(|(key, _)| key.arity() + 1 < 4).collect();
            assert_eq!(lhs, rhs, "chain map fails on functional {w:?}");
        }
    }
}

#[test]
fn dualization_is_a_chain_map() {
    let p = point();
    check_chain_map(&p, &unit_pairing(&p, 0));
    let m = matrix_algebra(2);
    check_chain_map(&m, &trace_pairing(&m));
    let s = sphere_cohomology();
    check_chain_map(&s, &unit_pairing(&s, 2));
}

#[test]
fn dualization_examples() {
    let p = point();
    let pairing = unit_pairing(&p, 0);
    let zero = CyclicFunctional { degree: 0, values: BTreeMap::new() };
    assert!(pairing_dualize(&p, &zero, &pairing).unwrap().is_empty());
    // (1 ⊗ 1)_𝒞 is zero in the coinvariants because both letters are odd
    let a = AInfinity::new(&p);
    assert!(a.canonical(&[0, 0]).is_none());
    let phi = CyclicFunctional { degree: 1, values: [(vec![0, 0], Q::one())].into() };
    assert!(pairing_dualize(&p, &phi, &pairing).unwrap().is_empty());
    // ⟨F(1, 1), 1⟩ = -φ((1 ⊗ 1 ⊗ 1)_𝒞) = -1, so F(1, 1) = -1
    let phi = CyclicFunctional { degree: 2, values: [(vec![0, 0, 0], Q::one())].into() };
    let f = pairing_dualize(&p, &phi, &pairing).unwrap();
    assert_eq!(f, vec![(CochainKey { start: 0, word: vec![0, 0], output: 0 }, q(-1))]);
    let bad = CyclicFunctional { degree: 0, values: [(vec![0, 0, 0], Q::one())].into() };
    assert!(matches!(pairing_dualize(&p, &bad, &pairing), Err(DgCatError::DegreeMismatch { .. })));
}

#[test]
fn degenerate_pairing_is_rejected() {
    let p = point();
    let empty = PairingTarget { degree: 0, entries: BTreeMap::new() };
    assert!(matches!(empty.validate(&p), Err(DgCatError::Pairing(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_categories_are_valid(seed in any::<u64>()) {
        let cat = random_valid(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(validate(&cat).is_valid());
        prop_assert!(HochschildComplex::build(AInfinity::new(&cat), 2).square_zero());
    }

    #[test]
    fn projection_absorbs_rotation(seed in any::<u64>(), len in 1usize..5) {
        let cat = random_valid(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = AInfinity::new(&cat);
        for w in a.cyclic_words(len).into_iter().take(20) {
            let word = a.cyclic_word(&w);
            let once = word.rotate().normalize();
            let direct = word.normalize();
            prop_assert_eq!(once.vanishes, direct.vanishes);
            if !direct.vanishes {
                prop_assert_eq!(once.word, direct.word);
            }
        }
    }
}
