#![allow(dead_code)]

use num_bigint::BigInt;
use primlat::{Block, BlockKind, NamedDecomposition};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Product of random elementary column operations, so `|det| = 1`.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(*[-1i64, 1].get(rng.gen_range(0..2)).unwrap());
        for row in m.iter_mut() {
            let t = &row[j] * &c;
            row[i] += t;
        }
        if rng.gen_bool(0.1) {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
    }
    m
}

pub fn even_kinds() -> Vec<BlockKind> {
    let mut ks = vec![BlockKind::U, BlockKind::Diag(2), BlockKind::Diag(-2), BlockKind::Diag(4), BlockKind::Diag(-6)];
    ks.extend((1..=5).map(BlockKind::A));
    ks.extend((4..=6).map(BlockKind::D));
    ks.extend((6..=8).map(BlockKind::E));
    ks
}

/// Random even orthogonal sum of catalog blocks with rank at most `max_rank`.
pub fn random_even_sum(rng: &mut ChaCha8Rng, max_rank: usize) -> NamedDecomposition {
    let kinds = even_kinds();
    let mut blocks = Vec::new();
    let mut rank = 0;
    let parts = rng.gen_range(1..=4);
    for _ in 0..parts {
        let k = kinds[rng.gen_range(0..kinds.len())];
        let scale = [1i64, -1, 1, -1, 2, -2][rng.gen_range(0..6)];
        if rank + k.rank() > max_rank {
            continue;
        }
        rank += k.rank();
        blocks.push(Block::new(k, scale, 1));
    }
    if blocks.is_empty() {
        blocks.push(Block::once(BlockKind::U));
    }
    NamedDecomposition::new(blocks).unwrap()
}
