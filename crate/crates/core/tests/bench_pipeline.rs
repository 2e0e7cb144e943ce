use std::time::Duration;

use embedreuse::anneal::TimingModel;
use embedreuse::bench::{
    gen_weights, ratios, records_to_csv, run_benchmark, run_classical, summary_json, BenchConfig, DwmwisInstance,
    EmbeddingSource, Escalation, Status,
};
use embedreuse::embedding::{EmbedOptions, Embedding};
use embedreuse::graph::{brute_force_mwis, chimera, generate_family, FamilySpec};
use embedreuse::{Graph, WeightedGraph};

fn fig2a() -> Graph {
    Graph::new(5, [(0, 2), (1, 2), (2, 3), (3, 4)]).unwrap()
}

fn small_config(timing: TimingModel) -> BenchConfig {
    BenchConfig {
        escalation: Escalation::standard(200),
        timing,
        ..BenchConfig::default()
    }
}

#[test]
fn worked_example_reuse_pays_off() {
    let inst = DwmwisInstance::new("fig2a", fig2a(), gen_weights(5, 100, 3)).unwrap();
    let (rec, e) = run_benchmark(&inst, &chimera(1), &small_config(TimingModel::dwave2x())).unwrap();
    assert!(rec.all_solved());
    assert_eq!(e.num_qubits(), 5);
    for (a, w) in rec.assignments.iter().zip(inst.assignments()) {
        let oracle = brute_force_mwis(&WeightedGraph::new(fig2a(), w.clone()).unwrap()).unwrap();
        assert!((a.optimal_value - oracle.weight).abs() < 1e-12);
        assert!(a.k99.unwrap().is_finite());
    }
    assert!(rec.identity_holds());
    assert_eq!(rec.t_std - rec.t_h, rec.t_embed * 99);
    let (r_h, _) = ratios(&rec).unwrap();
    assert!(rec.t_embed > Duration::ZERO && r_h > 1.0);
}

#[test]
fn zero_profile_and_stored_embedding_give_unit_ratio() {
    let e = Embedding::new(vec![vec![0], vec![1], vec![4], vec![2], vec![7]], 8);
    let inst = DwmwisInstance::new("fig2a", fig2a(), gen_weights(5, 10, 1)).unwrap();
    for timing in [TimingModel::zero(), TimingModel::dwave2x()] {
        let cfg = BenchConfig {
            embedding: EmbeddingSource::Given(e.clone()),
            ..small_config(timing)
        };
        let (rec, used) = run_benchmark(&inst, &chimera(1), &cfg).unwrap();
        assert_eq!(used, e);
        assert_eq!(rec.t_embed, Duration::ZERO);
        assert_eq!(rec.t_h, rec.t_std);
        assert_eq!(ratios(&rec).unwrap().0, 1.0);
    }
}

#[test]
fn embedding_failure_is_reported() {
    let k5 = generate_family(FamilySpec::Complete { n: 5 }).unwrap();
    let inst = DwmwisInstance::new("k5", k5, gen_weights(5, 1, 0)).unwrap();
    let path = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert!(run_benchmark(&inst, &path, &BenchConfig::default()).is_err());
}

#[test]
fn reembedding_records_each_run() {
    let inst = DwmwisInstance::new("fig2a", fig2a(), gen_weights(5, 4, 2)).unwrap();
    let cfg = BenchConfig {
        reembed_each: true,
        embedding: EmbeddingSource::Heuristic(EmbedOptions::default()),
        ..small_config(TimingModel::dwave2x())
    };
    let (rec, _) = run_benchmark(&inst, &chimera(1), &cfg).unwrap();
    assert_eq!(rec.reembed_times.as_ref().map(Vec::len), Some(4));
    assert!(rec.t_std > rec.t_h);
}

#[test]
fn reports_are_deterministic_outside_wall_clock() {
    let g = generate_family(FamilySpec::Cycle { n: 6 }).unwrap();
    let inst = DwmwisInstance::new("C6", g, gen_weights(6, 5, 4)).unwrap();
    let cfg = small_config(TimingModel::dwave2x());
    let strip_csv = |s: String| -> Vec<String> {
        s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
    };
    let strip_json = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("wall_clock");
        v
    };
    let (a, _) = run_benchmark(&inst, &chimera(2), &cfg).unwrap();
    let (b, _) = run_benchmark(&inst, &chimera(2), &cfg).unwrap();
    assert_eq!(strip_csv(records_to_csv(std::slice::from_ref(&a))), strip_csv(records_to_csv(std::slice::from_ref(&b))));
    assert_eq!(strip_json(summary_json(&a, None)), strip_json(summary_json(&b, None)));
    assert!(a.assignments.iter().all(|x| x.status == Status::Solved));
}

#[test]
fn classical_values_for_structured_graphs() {
    let k8 = generate_family(FamilySpec::Complete { n: 8 }).unwrap();
    let inst = DwmwisInstance::new("K8", k8, gen_weights(8, 100, 6)).unwrap();
    let run = run_classical(&inst).unwrap();
    for (v, w) in run.values.iter().zip(inst.assignments()) {
        assert_eq!(*v, w.iter().copied().fold(0.0, f64::max));
    }
    let fig = DwmwisInstance::new("fig2a", fig2a(), vec![vec![2.0, 3.0, 8.0, 3.0, 1.0]]).unwrap();
    assert_eq!(run_classical(&fig).unwrap().values, vec![9.0]);
}
