mod common;

use common::{gray_min, random_graph, weighted};
use embedreuse::anneal::{sample, SamplerConfig};
use embedreuse::embedding::{embed_qubo, heuristic_embed, ChainPolicy, EmbedOptions};
use embedreuse::graph::chimera;
use embedreuse::qubo::{mwis_to_qubo, scale_to_unit, Penalty};

#[test]
fn finds_the_exhaustive_minimum_on_small_hardware_problems() {
    let gp = chimera(2);
    let mut checked = 0;
    for seed in 0..12 {
        let wg = weighted(&random_graph(6, 0.5, seed), seed);
        let e = heuristic_embed(wg.graph(), &gp, &EmbedOptions { seed, ..EmbedOptions::default() })
            .unwrap()
            .embedding;
        if e.num_qubits() > 18 {
            continue;
        }
        let q = mwis_to_qubo(&wg, Penalty::Auto).unwrap();
        let (qp, _) = embed_qubo(&q, &e, &gp, &ChainPolicy::default()).unwrap();
        let (qs, _) = scale_to_unit(&qp).unwrap();
        // Restrict the oracle to the qubits that carry terms.
        let used: Vec<usize> = e.chains().iter().flatten().copied().collect();
        let mut compact = embedreuse::QuboMatrix::new(used.len());
        for ((i, j), v) in qs.iter() {
            let a = used.iter().position(|&u| u == i).unwrap();
            let b = used.iter().position(|&u| u == j).unwrap();
            compact.add(a.min(b), a.max(b), v).unwrap();
        }
        let (min, _) = gray_min(&compact);
        let set = sample(&qs, &gp, &SamplerConfig { num_samples: 200, seed, ..SamplerConfig::default() }).unwrap();
        let best = set.best().unwrap();
        assert!((best.energy - min).abs() < 1e-9, "seed {seed}: {} vs {min}", best.energy);
        assert_eq!(set.total, 200);
        checked += 1;
    }
    assert!(checked >= 8, "only {checked} instances small enough");
}

#[test]
fn identical_seeds_give_identical_sets() {
    let gp = chimera(2);
    let wg = weighted(&random_graph(8, 0.4, 2), 2);
    let e = heuristic_embed(wg.graph(), &gp, &EmbedOptions::default()).unwrap().embedding;
    let q = mwis_to_qubo(&wg, Penalty::Auto).unwrap();
    let (qp, _) = embed_qubo(&q, &e, &gp, &ChainPolicy::default()).unwrap();
    let cfg = SamplerConfig { num_samples: 64, seed: 9, ..SamplerConfig::default() };
    let a = sample(&qp, &gp, &cfg).unwrap();
    let b = sample(&qp, &gp, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
    let c = sample(&qp, &gp, &SamplerConfig { seed: 10, ..cfg }).unwrap();
    assert_eq!(c.total, 64);
}
