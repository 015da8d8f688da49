use meancycle::analytic::{LimitLaw, Objective};
use meancycle::experiments::{
    compare_to_limit, emit, run_trials, ExperimentConfig, Format, TrialLog,
};
use meancycle::instances::{read_instance, sample_complete, write_instance, InstanceFormat};
use meancycle::solvers::{light_search, min_max_cycle};
use meancycle::{Orientation, SolverKind};

#[test]
fn dumped_instances_solve_identically() {
    let dir = tempfile::tempdir().unwrap();
    for o in [Orientation::Directed, Orientation::Undirected] {
        let g = sample_complete(24, o, 99).unwrap();
        for (name, format) in [
            ("g.csv", InstanceFormat::Csv),
            ("g.bin", InstanceFormat::Binary),
        ] {
            let path = dir.path().join(name);
            write_instance(&g, &path, format).unwrap();
            let h = read_instance(&path).unwrap();
            assert_eq!(h.matrix(), g.matrix());
            assert_eq!(h.seed(), 99);
            let a = SolverKind::Karp.solve(&g).unwrap();
            let b = SolverKind::Karp.solve(&h).unwrap();
            assert_eq!(a.min_mean.to_bits(), b.min_mean.to_bits());
        }
    }
}

#[test]
fn every_mean_solver_returns_a_consistent_witness() {
    for o in [Orientation::Directed, Orientation::Undirected] {
        let g = sample_complete(8, o, 3).unwrap();
        let best = SolverKind::BruteForce.solve(&g).unwrap().min_mean;
        for kind in SolverKind::MEAN_SOLVERS {
            let r = kind.solve(&g).unwrap();
            let w = &r.witness;
            assert!(w.len() >= o.min_cycle_len());
            assert!(
                (g.closed_walk_weight(w.vertices()) / w.len() as f64 - r.min_mean).abs()
                    <= 1e-12 * best
            );
            assert!((r.min_mean - best).abs() <= 1e-9 * best, "{kind}");
        }
    }
}

#[test]
fn light_search_matches_karp_at_moderate_n() {
    for seed in 0..5 {
        let g = sample_complete(120, Orientation::Directed, seed).unwrap();
        let a = light_search(&g).unwrap();
        let b = SolverKind::Karp.solve(&g).unwrap();
        assert!((a.min_mean - b.min_mean).abs() <= 1e-12 * b.min_mean);
        assert!(a.certified_exact);
    }
}

#[test]
fn min_max_cycle_is_at_least_the_min_mean() {
    for o in [Orientation::Directed, Orientation::Undirected] {
        let g = sample_complete(300, o, 12).unwrap();
        let max = min_max_cycle(&g).unwrap();
        let mean = light_search(&g).unwrap();
        assert!(max.witness.max_weight() >= mean.min_mean);
    }
}

#[test]
fn experiment_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::new(80, 60, Orientation::Undirected, Objective::Max);
    cfg.base_seed = 21;
    cfg.c_grid = vec![0.25, 0.5, 0.75];
    let records = run_trials(&cfg).unwrap();
    assert_eq!(records.len(), 60);
    assert!(records
        .iter()
        .all(|r| r.length >= 3 && r.solver == SolverKind::ThresholdProcess));
    let rep = compare_to_limit(&records, &cfg, LimitLaw::UndirectedMax).unwrap();
    assert_eq!(rep.cdf.len(), 3);
    let files = emit(&rep, &dir.path().join("cmp.csv"), Format::Csv).unwrap();
    assert!(files.len() >= 2);
    for f in &files {
        assert!(std::fs::metadata(f).unwrap().len() > 0);
    }
    let log = TrialLog::new(&cfg, records);
    let files = emit(&log, &dir.path().join("log.json"), Format::Json).unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(v["meta"]["base_seed"], 21);
    assert_eq!(v["records"].as_array().unwrap().len(), 60);
}
