#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropmut::arrange::Arrangement;
use tropmut::field::WeightMatrix;

pub fn matrix(n: usize, entries: &[i64]) -> WeightMatrix {
    WeightMatrix::from_ints(&entries[..n], &entries[n..2 * n], &entries[2 * n..3 * n]).unwrap()
}

/// Generic integer matrices with entries in `[-50, 50]` and untied apex
/// x-coordinates, drawn from a fixed seed.
pub fn random_generic(count: usize, seed: u64) -> Vec<WeightMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(4..=7);
        let entries: Vec<i64> = (0..3 * n).map(|_| rng.gen_range(-50..=50)).collect();
        let m = matrix(n, &entries);
        if m.is_generic() && Arrangement::from_weights(&m).x_order().is_ok() {
            out.push(m);
        }
    }
    out
}

/// Every adjacent pair `(i, j)` of the x-order, `i` on the left.
pub fn adjacent_pairs(m: &WeightMatrix) -> Vec<(usize, usize)> {
    let order = Arrangement::from_weights(m).x_order().unwrap();
    order.windows(2).map(|w| (w[0], w[1])).collect()
}
