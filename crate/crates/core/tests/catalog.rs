mod common;

use common::*;
use proptest::prelude::*;
use quivermut::catalog::{catalog, make};
use quivermut::mutclass::enumerate_class;
use quivermut::Quiver;

fn class_keys(q: &Quiver) -> Vec<Quiver> {
    let class = enumerate_class(q, None).unwrap();
    assert!(class.is_finite(), "{q}");
    class.sorted_representatives()
}

/// Same underlying graph, every arrow whose bit is set reversed.
fn reorient(q: &Quiver, mask: u64) -> Quiver {
    let arrows: Vec<(usize, usize, i64)> = q
        .arrow_list()
        .into_iter()
        .enumerate()
        .map(|(i, (f, t, m))| {
            if mask >> i & 1 == 1 {
                (t, f, m)
            } else {
                (f, t, m)
            }
        })
        .collect();
    Quiver::from_arrows(q.n(), &arrows).unwrap()
}

#[test]
fn every_entry_builds_at_its_smallest_parameters() {
    for e in catalog().entries() {
        let params: Vec<i64> = match (e.name(), e.arity()) {
            (_, 0) => vec![],
            ("A", _) => vec![1],
            ("D" | "D_hat", _) => vec![4],
            ("A_cycle_uniform", _) => vec![3],
            ("Theta", _) => vec![1],
            ("A_pq", _) => vec![1, 1],
            (name, _) => panic!("no sample parameters for {name}"),
        };
        let q = e.make(&params).unwrap();
        if let Some(labels) = e.labels() {
            assert_eq!(labels.len(), q.n(), "{}", e.name());
        }
    }
}

#[test]
fn out_of_domain_parameters_are_rejected() {
    for (name, params) in [
        ("D", vec![3]),
        ("A", vec![0]),
        ("A_pq", vec![1, 2]),
        ("X6", vec![1]),
        ("A", vec![]),
        ("nope", vec![]),
    ] {
        assert!(make(name, &params).is_err(), "{name}{params:?}");
    }
}

#[test]
fn cycle_with_uniform_orientation_lies_in_d_class() {
    for n in 4..=7 {
        let cycle = make("A_cycle_uniform", &[n]).unwrap();
        assert_eq!(
            class_keys(&cycle),
            class_keys(&make("D", &[n]).unwrap()),
            "n={n}"
        );
    }
    assert_eq!(
        class_keys(&make("A_cycle_uniform", &[3]).unwrap()),
        class_keys(&make("A", &[3]).unwrap())
    );
}

#[test]
fn affine_a_class_depends_only_on_arrow_counts() {
    // Any cyclic arrangement of p clockwise and q anticlockwise arrows.
    for (p, q) in [(2usize, 1usize), (2, 2), (3, 2)] {
        let n = p + q;
        let reference = class_keys(&make("A_pq", &[p as i64, q as i64]).unwrap());
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize != q {
                continue;
            }
            let arrows: Vec<(usize, usize, i64)> = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        ((i + 1) % n, i, 1)
                    } else {
                        (i, (i + 1) % n, 1)
                    }
                })
                .collect();
            let cyc = Quiver::from_arrows(n, &arrows).unwrap();
            assert_eq!(class_keys(&cyc), reference, "p={p} q={q} mask={mask:b}");
        }
    }
}

#[test]
fn theta_is_finite_for_every_multiplicity() {
    for m in 1..=6 {
        let q = make("Theta", &[m]).unwrap();
        assert_eq!(enumerate_class(&q, None).unwrap().len(), 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tree_classes_ignore_orientation(idx in 0usize..5, mask in any::<u64>()) {
        let q = [make("A", &[5]).unwrap(), make("D", &[5]).unwrap(), make("D", &[6]).unwrap(), make("E6", &[]).unwrap(), make("E7", &[]).unwrap()][idx].clone();
        let r = reorient(&q, mask);
        prop_assert_eq!(class_keys(&r), class_keys(&q));
    }

    #[test]
    fn extended_dynkin_trees_ignore_orientation(idx in 0usize..3, mask in any::<u64>()) {
        let q = [make("D_hat", &[5]).unwrap(), make("D_hat", &[6]).unwrap(), make("E6_hat", &[]).unwrap()][idx].clone();
        let r = reorient(&q, mask);
        prop_assert_eq!(enumerate_class(&r, None).unwrap().len(), enumerate_class(&q, None).unwrap().len());
        let oracle = oracle_class_size(&r.to_rows(), 1000);
        prop_assert_eq!(oracle, Some(enumerate_class(&q, None).unwrap().len()));
    }
}
