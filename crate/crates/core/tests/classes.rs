mod common;

use std::collections::HashSet;

use common::*;
use quivermut::canon::{self, canonical_form};
use quivermut::catalog::{make, x6, x7};
use quivermut::mutclass::{
    enumerate_class, enumerate_class_with, is_mutation_finite, ClassDump, ClassOptions, ClassStatus,
};
use quivermut::Quiver;

fn golden(name: &str) -> ClassDump {
    let path = format!(
        "{}/testdata/classes/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    );
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn x6_x7_dumps_match_golden_files() {
    for (name, q) in [("x6", x6()), ("x7", x7())] {
        let dump = enumerate_class(&q, None).unwrap().dump();
        assert_eq!(dump, golden(name), "{name}");
    }
}

#[test]
fn golden_files_agree_with_oracle() {
    for (name, q) in [("x6", x6()), ("x7", x7())] {
        let keys = oracle_class_keys(&q.to_rows(), 100).unwrap();
        let stored: HashSet<Vec<i64>> = golden(name)
            .representatives
            .iter()
            .map(|m| m.concat())
            .collect();
        assert_eq!(stored, keys, "{name}");
    }
}

#[test]
fn class_is_closed_under_mutation() {
    for q in [
        x6(),
        x7(),
        make("E6", &[]).unwrap(),
        make("D_hat", &[6]).unwrap(),
    ] {
        let class = enumerate_class(&q, None).unwrap();
        for rep in &class.representatives {
            for k in 0..rep.n() {
                assert!(class.contains(&rep.mutate(k).unwrap()));
            }
        }
    }
}

#[test]
fn parallel_and_serial_agree() {
    for q in [make("E7", &[]).unwrap(), make("E6_hat", &[]).unwrap(), x6()] {
        let par = enumerate_class_with(&q, ClassOptions::default()).unwrap();
        let ser = enumerate_class_with(&q, ClassOptions::default().serial()).unwrap();
        assert_eq!(par.representatives, ser.representatives);
    }
}

#[test]
fn result_does_not_depend_on_starting_member() {
    let q = make("E6", &[]).unwrap();
    let reference = enumerate_class(&q, None).unwrap().dump();
    for start in enumerate_class(&q, None)
        .unwrap()
        .representatives
        .iter()
        .take(10)
    {
        assert_eq!(enumerate_class(start, None).unwrap().dump(), reference);
    }
}

#[test]
fn brute_canonicalizer_gives_same_class() {
    let brute = canon::registry().get("brute").unwrap();
    let q = x6();
    let a = enumerate_class(&q, None).unwrap().dump();
    let b = enumerate_class_with(&q, ClassOptions::default().with_canonicalizer(brute))
        .unwrap()
        .dump();
    assert_eq!(a, b);
}

#[test]
fn infinite_classes_carry_a_replayable_witness() {
    let q = Quiver::from_arrows(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 1)]).unwrap();
    let class = enumerate_class(&q, None).unwrap();
    assert_eq!(class.status, ClassStatus::Infinite);
    let w = class.witness.unwrap();
    let mut cur = q.clone();
    for &k in &w.sequence {
        cur = cur.mutate(k).unwrap();
    }
    assert_eq!(cur, w.quiver);
    assert!(cur.get(w.pair.0, w.pair.1).abs() >= 3);
    assert!(!is_mutation_finite(&q).unwrap().finite);
}

#[test]
fn disconnected_kronecker_plus_vertex_is_finite() {
    let q = Quiver::from_arrows(3, &[(0, 1, 3)]).unwrap();
    let class = enumerate_class(&q, None).unwrap();
    assert!(class.is_finite());
    assert_eq!(class.len(), 1);
    assert_eq!(canonical_form(&q).matrix, class.representatives[0]);
}
