//! Seeded Monte Carlo draws from a box.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boxes::{NonlocalBox, Order};

/// Draws `count` outcome pairs from `P(ab|xy)` of the chosen order and
/// returns the counts indexed `[a][b]`. Deterministic in `seed`.
pub fn sample(bx: &NonlocalBox, order: Order, x: usize, y: usize, count: u64, seed: u64) -> [[u64; 2]; 2] {
    let t = bx.behavior(order).get(x, y);
    let weights: Vec<f64> = t.table().iter().flatten().map(|p| p.max(0.0)).collect();
    let dist = WeightedIndex::new(&weights).expect("validated table has positive mass");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [[0u64; 2]; 2];
    for _ in 0..count {
        let k = dist.sample(&mut rng);
        counts[k / 2][k % 2] += 1;
    }
    counts
}
