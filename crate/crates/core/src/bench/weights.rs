use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `m` weight vectors of length `n`, each entry drawn uniformly from
/// `[0, 1)` and rounded to two decimals. Values that round to `0.00` become
/// `0.01` and values that round up to `1.00` become `0.99`, so every weight
/// lies on the grid `{0.01, ..., 0.99}`.
pub fn gen_weights(n: usize, m: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let cents = (rng.gen::<f64>() * 100.0).round().clamp(1.0, 99.0);
                    cents / 100.0
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hundred_assignments_on_grid() {
        let w = gen_weights(5, 100, 42);
        assert_eq!(w.len(), 100);
        for v in w.iter().flatten() {
            let cents = v * 100.0;
            assert!((cents - cents.round()).abs() < 1e-9, "{v}");
            assert!((0.01..=0.99).contains(v), "{v}");
        }
    }

    #[test]
    fn single_and_deterministic() {
        assert_eq!(gen_weights(7, 1, 1).len(), 1);
        assert_eq!(gen_weights(7, 3, 9), gen_weights(7, 3, 9));
        assert_ne!(gen_weights(7, 3, 9), gen_weights(7, 3, 10));
    }
}
