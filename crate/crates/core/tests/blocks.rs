mod common;

use std::collections::HashSet;

use common::*;
use itertools::Itertools;
use quivermut::blocks::{assemble, is_block_decomposable, BlockAssembly, BlockKind, Slot};
use quivermut::catalog::make;
use quivermut::{are_isomorphic, AssemblyError, Quiver};

fn s(block: usize, vertex: usize) -> Slot {
    Slot { block, vertex }
}

#[test]
fn four_cycle_with_chord_from_iv_and_ii() {
    // IV's two open vertices glued to two vertices of a triangle. The glued
    // arrow between them cancels, leaving a quiver on 5 vertices.
    let a = BlockAssembly {
        blocks: vec![BlockKind::IV, BlockKind::II],
        matching: vec![[s(0, 1), s(1, 1)], [s(0, 2), s(1, 0)]],
    };
    let q = assemble(&a).unwrap();
    // t -> l, t -> m, l -> b, m -> b, b -> r, r -> t
    let (t, l, m, b, r) = (0, 1, 2, 3, 4);
    let expected = Quiver::from_arrows(
        5,
        &[
            (t, l, 1),
            (t, m, 1),
            (l, b, 1),
            (m, b, 1),
            (b, r, 1),
            (r, t, 1),
        ],
    )
    .unwrap();
    assert!(are_isomorphic(&q, &expected), "{q}");
    let d = is_block_decomposable(&expected)
        .unwrap()
        .expect("decomposable");
    assert_eq!(d.realize(5), expected);
}

#[test]
fn every_block_alone_is_decomposable() {
    for kind in BlockKind::ALL {
        let q = kind.quiver();
        let a = BlockAssembly {
            blocks: vec![kind],
            matching: vec![],
        };
        assert_eq!(assemble(&a).unwrap(), q);
        let d = is_block_decomposable(&q)
            .unwrap()
            .unwrap_or_else(|| panic!("{}", kind.name()));
        assert_eq!(d.realize(q.n()), q);
    }
}

#[test]
fn vertex_count_is_total_minus_matched() {
    let a = BlockAssembly {
        blocks: vec![BlockKind::IIIa, BlockKind::I, BlockKind::V, BlockKind::II],
        matching: vec![[s(0, 0), s(1, 0)], [s(1, 1), s(2, 2)]],
    };
    let total: usize = a.blocks.iter().map(|k| k.size()).sum();
    assert_eq!(assemble(&a).unwrap().n(), total - a.matching.len());
}

#[test]
fn invalid_assemblies_are_rejected() {
    let empty = BlockAssembly {
        blocks: vec![],
        matching: vec![],
    };
    assert_eq!(assemble(&empty), Err(AssemblyError::NoBlocks));
    let out_of_range = BlockAssembly {
        blocks: vec![BlockKind::I, BlockKind::I],
        matching: vec![[s(0, 0), s(1, 5)]],
    };
    assert_eq!(
        assemble(&out_of_range),
        Err(AssemblyError::NoSuchVertex {
            block: 1,
            vertex: 5
        })
    );
    let no_block = BlockAssembly {
        blocks: vec![BlockKind::I],
        matching: vec![[s(0, 0), s(3, 0)]],
    };
    assert!(matches!(
        assemble(&no_block),
        Err(AssemblyError::NoSuchVertex { block: 3, .. })
    ));
    let closed = BlockAssembly {
        blocks: vec![BlockKind::V, BlockKind::I],
        matching: vec![[s(0, 0), s(1, 0)]],
    };
    assert_eq!(
        assemble(&closed),
        Err(AssemblyError::ClosedVertexMatched {
            block: 0,
            vertex: 0
        })
    );
}

#[test]
fn witnesses_for_catalog_families() {
    let mut samples: Vec<Quiver> = Vec::new();
    samples.extend((2..=7).map(|n| make("A", &[n]).unwrap()));
    samples.extend((4..=7).map(|n| make("D", &[n]).unwrap()));
    samples.extend((4..=7).map(|n| make("D_hat", &[n]).unwrap()));
    samples.extend([(1, 1), (2, 1), (3, 2), (4, 3)].map(|(p, q)| make("A_pq", &[p, q]).unwrap()));
    for q in samples {
        let d = is_block_decomposable(&q)
            .unwrap()
            .unwrap_or_else(|| panic!("no witness for {q}"));
        assert_eq!(d.realize(q.n()), q);
        assert!(are_isomorphic(&assemble(&d.assembly()).unwrap(), &q));
    }
}

#[test]
fn exceptional_types_are_not_decomposable() {
    for name in ["E6", "E7", "E8", "X6", "X7"] {
        let q = make(name, &[]).unwrap();
        assert_eq!(is_block_decomposable(&q).unwrap(), None, "{name}");
    }
}

/// All matchings of the open slots, pairing only slots of distinct blocks.
fn matchings(open: &[Slot]) -> Vec<Vec<[Slot; 2]>> {
    let Some((&first, rest)) = open.split_first() else {
        return vec![vec![]];
    };
    let mut out = matchings(rest);
    for (i, &other) in rest.iter().enumerate() {
        if other.block == first.block {
            continue;
        }
        let remaining: Vec<Slot> = rest
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        for mut m in matchings(&remaining) {
            m.push([first, other]);
            out.push(m);
        }
    }
    out
}

/// Least flattenings of every 3-vertex quiver some assembly produces. A
/// 3-vertex result uses at most 3 blocks of at most 3 vertices each.
fn three_vertex_gluings() -> HashSet<Vec<i64>> {
    let small = [
        BlockKind::I,
        BlockKind::II,
        BlockKind::IIIa,
        BlockKind::IIIb,
    ];
    let perms = permutations(3);
    let mut lists: Vec<Vec<BlockKind>> = small.iter().map(|&k| vec![k]).collect();
    for _ in 0..2 {
        let longer: Vec<Vec<BlockKind>> = lists
            .iter()
            .filter(|l| l.len() < 3)
            .flat_map(|l| small.iter().map(move |&k| [l.clone(), vec![k]].concat()))
            .collect();
        lists.extend(longer);
    }
    lists.sort();
    lists.dedup();
    let mut keys = HashSet::new();
    for blocks in lists {
        let open: Vec<Slot> = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, k)| {
                k.open()
                    .iter()
                    .enumerate()
                    .filter(|(_, &o)| o)
                    .map(move |(v, _)| s(b, v))
            })
            .collect();
        for matching in matchings(&open) {
            let q = assemble(&BlockAssembly {
                blocks: blocks.clone(),
                matching,
            })
            .unwrap();
            if q.n() == 3 {
                keys.insert(brute_key(&q.to_rows(), &perms));
            }
        }
    }
    keys
}

#[test]
fn verdict_matches_exhaustive_gluing_on_three_vertices() {
    let glued = three_vertex_gluings();
    let perms = permutations(3);
    let mut decomposable = 0;
    for u in (0..3).map(|_| -3..=3i64).multi_cartesian_product() {
        let q = Quiver::from_rows(&from_upper(3, &u)).unwrap();
        let found = is_block_decomposable(&q).unwrap().is_some();
        let expected = glued.contains(&brute_key(&q.to_rows(), &perms));
        assert_eq!(found, expected, "{q}");
        decomposable += usize::from(found);
    }
    assert!(decomposable > 0);
}
