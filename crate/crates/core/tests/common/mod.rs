#![allow(dead_code)]

use embedreuse::qubo::{BitVector, QuboMatrix};
use embedreuse::{Graph, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdos-Renyi graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Weights on the two-decimal grid in [0.01, 1.00].
pub fn random_weights(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(1..=100) as f64 / 100.0).collect()
}

pub fn weighted(g: &Graph, seed: u64) -> WeightedGraph {
    WeightedGraph::new(g.clone(), random_weights(g.n(), seed)).unwrap()
}

/// Dense symmetric view: `a[i][i] = Q_ii`, `a[i][j] = a[j][i] = Q_ij`.
fn dense(q: &QuboMatrix) -> Vec<Vec<f64>> {
    let n = q.n();
    let mut a = vec![vec![0.0; n]; n];
    for ((i, j), v) in q.iter() {
        a[i][j] = v;
        a[j][i] = v;
    }
    a
}

/// Exhaustive minimum over all 2^n vectors, walking a Gray code and
/// updating the energy by the single-bit delta at each step.
pub fn gray_min(q: &QuboMatrix) -> (f64, Vec<BitVector>) {
    let n = q.n();
    assert!(n <= 24);
    let a = dense(q);
    let mut x = vec![0u8; n];
    let mut energy = 0.0;
    let mut best = 0.0;
    let mut argmin = vec![BitVector::zeros(n)];
    for step in 1u64..(1 << n) {
        let i = step.trailing_zeros() as usize;
        let field: f64 = (0..n).filter(|&j| j != i && x[j] == 1).map(|j| a[i][j]).sum();
        let delta = a[i][i] + field;
        if x[i] == 0 {
            energy += delta;
            x[i] = 1;
        } else {
            energy -= delta;
            x[i] = 0;
        }
        if energy < best - 1e-9 {
            best = energy;
            argmin = vec![BitVector::from_bits(&x)];
        } else if (energy - best).abs() <= 1e-9 {
            argmin.push(BitVector::from_bits(&x));
        }
    }
    (best, argmin)
}

/// Direct `sum_{i<=j} x_i Q_ij x_j`.
pub fn direct_energy(q: &QuboMatrix, x: &BitVector) -> f64 {
    q.iter().filter(|((i, j), _)| x.get(*i) && x.get(*j)).map(|(_, v)| v).sum()
}
