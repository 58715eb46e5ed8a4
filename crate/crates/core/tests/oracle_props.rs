mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use primlat::classifier::{genus_of, same_genus};
use primlat::oracle::{isometry_small, short_vectors, IsometryOutcome, DEFAULT_BUDGET};
use primlat::{Block, BlockKind, Lattice, NamedDecomposition};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn norm_profile(l: &Lattice, bound: i64) -> BTreeMap<BigInt, usize> {
    let mut m = BTreeMap::new();
    for (_, n) in short_vectors(l, bound).unwrap() {
        *m.entry(n).or_insert(0) += 1;
    }
    m
}

fn random_definite(rng: &mut ChaCha8Rng, max_rank: usize) -> NamedDecomposition {
    let kinds = [
        BlockKind::A(1),
        BlockKind::A(2),
        BlockKind::A(3),
        BlockKind::D(4),
        BlockKind::D(5),
        BlockKind::E(6),
        BlockKind::Diag(1),
        BlockKind::Diag(2),
        BlockKind::Diag(3),
    ];
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut blocks = Vec::new();
    let mut rank = 0;
    for _ in 0..rng.gen_range(1..=3) {
        let k = kinds[rng.gen_range(0..kinds.len())];
        if rank + k.rank() <= max_rank {
            rank += k.rank();
            blocks.push(Block::new(k, sign, 1));
        }
    }
    if blocks.is_empty() {
        blocks.push(Block::new(BlockKind::A(2), sign, 1));
    }
    NamedDecomposition::new(blocks).unwrap()
}

#[test]
fn short_vector_counts_ignore_the_basis() {
    let mut rng = common::rng(21);
    for _ in 0..30 {
        let d = random_definite(&mut rng, 8);
        let l = d.lattice().unwrap();
        let m = common::random_unimodular(&mut rng, l.rank(), 10);
        let l2 = l.change_basis(&m).unwrap();
        assert_eq!(norm_profile(&l, 4), norm_profile(&l2, 4), "{d}");
    }
}

#[test]
fn isometries_across_random_bases_are_found_and_verified() {
    let mut rng = common::rng(34);
    for _ in 0..20 {
        let d = random_definite(&mut rng, 7);
        let l = d.lattice().unwrap();
        let m = common::random_unimodular(&mut rng, l.rank(), 8);
        let l2 = l.change_basis(&m).unwrap();
        match isometry_small(&l, &l2, DEFAULT_BUDGET).unwrap() {
            IsometryOutcome::Isometric(w) => {
                assert!(w.verify(&l, &l2));
                assert!(same_genus(&genus_of(&l), &genus_of(&l2)).unwrap());
            }
            IsometryOutcome::NoIsometry => panic!("{d} not isometric to a rebasing of itself"),
        }
    }
}

#[test]
fn binary_forms_of_equal_determinant() {
    // x² + 5y² and 2x² + 2xy + 3y²
    let a = Lattice::from_rows(&[vec![1, 0], vec![0, 5]]).unwrap();
    let b = Lattice::from_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
    assert_eq!(a.det(), b.det());
    assert_eq!(isometry_small(&a, &b, DEFAULT_BUDGET).unwrap(), IsometryOutcome::NoIsometry);
}
