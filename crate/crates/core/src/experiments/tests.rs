use super::*;
use crate::analytic::LimitLaw;
use crate::instances::sample_complete;
use crate::rng::derive_seed;

fn cfg(n: usize, trials: usize, o: Orientation, obj: Objective) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(n, trials, o, obj);
    c.base_seed = 17;
    c.workers = 1;
    c
}

#[test]
fn single_two_vertex_trial() {
    let c = cfg(2, 1, Orientation::Directed, Objective::Mean);
    let r = run_trials(&c).unwrap();
    assert_eq!(r.len(), 1);
    let g = sample_complete(2, Orientation::Directed, derive_seed(17, 0)).unwrap();
    let want = 2.0 * (g.weight(0, 1) + g.weight(1, 0)) / 2.0;
    assert!((r[0].scaled_weight - want).abs() < 1e-15);
    assert_eq!(r[0].length, 2);
}

#[test]
fn deterministic_across_runs_and_workers() {
    for obj in [Objective::Mean, Objective::Max] {
        for o in [Orientation::Directed, Orientation::Undirected] {
            let mut c = cfg(40, 64, o, obj);
            let a: Vec<_> = run_trials(&c)
                .unwrap()
                .iter()
                .map(TrialRecord::outcome)
                .collect();
            let b: Vec<_> = run_trials(&c)
                .unwrap()
                .iter()
                .map(TrialRecord::outcome)
                .collect();
            c.workers = 8;
            let p: Vec<_> = run_trials(&c)
                .unwrap()
                .iter()
                .map(TrialRecord::outcome)
                .collect();
            assert_eq!(a, b);
            assert_eq!(a, p);
        }
    }
}

#[test]
fn config_validation() {
    let mut c = cfg(10, 0, Orientation::Directed, Objective::Mean);
    assert!(run_trials(&c).is_err());
    c.trials = 5;
    c.c_grid = vec![0.3, 0.1];
    assert!(run_trials(&c).is_err());
    c.c_grid = vec![0.1, f64::NAN];
    assert!(c.validate().is_err());
    let u = cfg(2, 5, Orientation::Undirected, Objective::Max);
    assert!(u.validate().is_err());
}

#[test]
fn comparison_bookkeeping() {
    let mut c = cfg(60, 400, Orientation::Directed, Objective::Mean);
    c.c_grid = vec![0.1, 0.2, 0.3, 0.5];
    let records = run_trials(&c).unwrap();
    let rep = compare_to_limit(&records, &c, LimitLaw::DirectedMean).unwrap();
    let total: f64 = rep.pmf.iter().map(|r| r.empirical).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(rep.below_threshold + rep.above_threshold, 1.0);
    for r in &rep.cdf {
        assert!((0.0..=1.0).contains(&r.empirical));
        assert_eq!(r.stderr, stats::binomial_stderr(r.empirical, 400));
    }
    assert!(rep.cdf.windows(2).all(|w| w[0].empirical <= w[1].empirical));
    assert!(rep.chi_square.bins >= 2);
    assert!(compare_to_limit(&records, &c, LimitLaw::DirectedMax).is_err());
    assert!(compare_to_limit(&records, &c, LimitLaw::UndirectedMean).is_err());
    assert!(compare_to_limit(&[], &c, LimitLaw::DirectedMean).is_err());

    c.c_grid.clear();
    let empty = compare_to_limit(&records, &c, LimitLaw::DirectedMean).unwrap();
    assert!(empty.cdf.is_empty());
    assert!(!empty.pmf.is_empty());
    let csv = emit_string(&empty, Format::Csv).unwrap();
    assert!(csv.starts_with("variant,c,empirical,stderr,analytic\n\nvariant,k,"));
}

#[test]
fn stderr_shrinks_with_trials() {
    let mut c = cfg(30, 500, Orientation::Undirected, Objective::Max);
    c.c_grid = vec![0.5];
    let a = compare_to_limit(&run_trials(&c).unwrap(), &c, LimitLaw::UndirectedMax).unwrap();
    c.trials = 2000;
    let b = compare_to_limit(&run_trials(&c).unwrap(), &c, LimitLaw::UndirectedMax).unwrap();
    let ratio = a.cdf[0].stderr / b.cdf[0].stderr;
    assert!((1.7..2.3).contains(&ratio), "{ratio}");
}

#[test]
fn poisson_with_zero_threshold() {
    let r = poisson_check(30, 0.0, 5, 20, 1, Orientation::Directed, 1).unwrap();
    assert_eq!(r.rows.len(), 1);
    assert_eq!(r.rows[0].empirical_prob, 1.0);
    assert_eq!(r.tv_distance, 0.0);
    assert_eq!(r.exact_mean, 0.0);
}

#[test]
fn poisson_small_run_is_consistent() {
    let r = poisson_check(80, 0.36, 5, 300, 3, Orientation::Directed, 2).unwrap();
    let s: f64 = r.rows.iter().map(|x| x.empirical_prob).sum();
    assert!((s - 1.0).abs() < 1e-12);
    let per_k: f64 = r.per_length.iter().map(|p| p.mean).sum();
    assert!((per_k - r.mean_count).abs() < 1e-9);
    assert!((0.0..=1.0).contains(&r.tv_distance));
    let again = poisson_check(80, 0.36, 5, 300, 3, Orientation::Directed, 1).unwrap();
    assert_eq!(r, again);
}

#[test]
fn walk_band_edges() {
    let r = walk_band_experiment(50, 50.0, 200, 9, 1).unwrap();
    assert_eq!(r.p_hat, 1.0);
    let r = walk_band_experiment(50, 80.0, 200, 9, 3).unwrap();
    assert_eq!(r.p_hat, 1.0);
    assert!(walk_band_experiment(1, 1.0, 10, 0, 1).is_err());
    let small = walk_band_experiment(400, 5.0, 2000, 9, 1).unwrap();
    let parallel = walk_band_experiment(400, 5.0, 2000, 9, 4).unwrap();
    assert_eq!(small, parallel);
    assert!(small.p_hat < 0.5);
}

#[test]
fn longer_cycles_are_less_often_uniformly_light() {
    let ps: Vec<f64> = [100, 200, 400]
        .iter()
        .map(|&l| walk_band_experiment(l, 15.0, 4000, 5, 1).unwrap().p_hat)
        .collect();
    assert!(ps[0] > ps[1] && ps[1] > ps[2], "{ps:?}");
}

#[test]
fn band_walk_near_brownian() {
    let r = band_walk_experiment(400, 20.0, 20_000, 11, 1).unwrap();
    // Coarse walk: allow discretisation bias on top of sampling noise.
    assert!(
        (r.p_hat - r.brownian).abs() < 4.0 * r.stderr + 0.03,
        "{r:?}"
    );
}

#[test]
fn supercritical_bookkeeping() {
    let reps = supercritical_length_experiment(&[60], 200, 4, Orientation::Directed, 1).unwrap();
    let r = &reps[0];
    assert_eq!(r.jump_fraction + r.subcritical_fraction, 1.0);
    assert_eq!(
        r.conditional_lengths.len(),
        (r.jump_fraction * 200.0).round() as usize
    );
    assert!((r.analytic_jump - 0.531464).abs() < 1e-6);
    assert!(supercritical_length_experiment(&[10], 5, 4, Orientation::Directed, 1).is_err());
}

#[test]
fn json_round_trip() {
    let mut c = cfg(30, 100, Orientation::Directed, Objective::Mean);
    c.c_grid = vec![0.1, 0.2, 0.367];
    let records = run_trials(&c).unwrap();
    let rep = compare_to_limit(&records, &c, LimitLaw::DirectedMean).unwrap();
    let back: ComparisonReport =
        serde_json::from_str(&emit_string(&rep, Format::Json).unwrap()).unwrap();
    assert_eq!(back, rep);

    let p = poisson_check(40, 0.3, 4, 50, 2, Orientation::Undirected, 1).unwrap();
    let back: PoissonReport =
        serde_json::from_str(&emit_string(&p, Format::Json).unwrap()).unwrap();
    assert_eq!(back, p);

    let log = TrialLog::new(&c, records);
    let back: TrialLog = serde_json::from_str(&emit_string(&log, Format::Json).unwrap()).unwrap();
    assert_eq!(back.config, c);
    let a: Vec<_> = back.records.iter().map(TrialRecord::outcome).collect();
    let b: Vec<_> = log.records.iter().map(TrialRecord::outcome).collect();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::to_value(&log).unwrap();
    assert_eq!(v["meta"]["base_seed"], 17);
    assert!(v["meta"]["version"].as_str().unwrap().starts_with('v'));
}

#[test]
fn csv_numbers_round_trip() {
    let mut c = cfg(30, 50, Orientation::Directed, Objective::Max);
    c.c_grid = vec![0.1, 1.0 / 3.0];
    let records = run_trials(&c).unwrap();
    let log = TrialLog::new(&c, records);
    let text = emit_string(&log, Format::Csv).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["trial", "scaled_weight", "length", "solver", "elapsed"]
    );
    for (row, rec) in rdr.records().zip(&log.records) {
        let row = row.unwrap();
        assert_eq!(
            row[1].parse::<f64>().unwrap().to_bits(),
            rec.scaled_weight.to_bits()
        );
        assert_eq!(&row[3], "threshold_process");
    }
}

#[test]
fn files_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = cfg(20, 30, Orientation::Undirected, Objective::Max);
    c.c_grid = vec![0.5];
    let rep = compare_to_limit(&run_trials(&c).unwrap(), &c, LimitLaw::UndirectedMax).unwrap();
    let path = dir.path().join("fig.csv");
    let written = emit(&rep, &path, Format::Csv).unwrap();
    assert_eq!(written, vec![path.clone(), dir.path().join("fig_pmf.csv")]);
    let head = std::fs::read_to_string(&path).unwrap();
    assert!(head
        .starts_with("variant,c,empirical,stderr,analytic\nundirected_max,5.0000000000000000e-1,"));
    let bad = dir.path().join("missing").join("x.json");
    match emit(&rep, &bad, Format::Json) {
        Err(crate::Error::Io { path, .. }) => assert_eq!(path, bad),
        other => panic!("expected io error, got {other:?}"),
    }
}
