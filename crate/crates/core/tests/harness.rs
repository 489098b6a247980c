use std::path::Path;

use fcsr_core::harness::{
    build_synthetic, build_synthetic_with_variance, confidence_bands, run_sweep, run_sweep_config, SweepConfig,
    SweepPlan, SweepResult, SyntheticKind, TABLE_HEADER,
};
use fcsr_core::bandit::DistributionKind;
use fcsr_core::{AlgorithmKind, AttributeDistribution, Decision, Instance};

fn deterministic() -> Instance {
    let arms = vec![
        vec![AttributeDistribution::bernoulli(1.0).unwrap(); 2],
        vec![AttributeDistribution::bernoulli(0.0).unwrap(); 2],
    ];
    Instance::new(arms, 0.5).unwrap()
}

fn without_wall_time(mut r: SweepResult) -> SweepResult {
    for c in &mut r.cells {
        c.wall_time_secs = 0.0;
    }
    r
}

#[test]
fn synthetic_instances_match_their_descriptions() {
    let risky = build_synthetic::<f64>(SyntheticKind::Risky, 0.01).unwrap();
    let oracle = risky.oracle();
    assert_eq!(oracle.best_arm, Decision::arm(9));
    assert_eq!(oracle.feasible_set, vec![9]);
    for i in 0..9 {
        assert!((oracle.arm_means[i] - 0.74).abs() < 1e-12);
    }

    let mean = build_synthetic::<f64>(SyntheticKind::Mean, 0.003).unwrap();
    let oracle = mean.oracle();
    assert_eq!(oracle.feasible_set.len(), 10);
    assert_eq!(oracle.best_arm, Decision::arm(0));
    assert!((mean.threshold() - 0.3).abs() < 1e-15);

    let feas = build_synthetic::<f64>(SyntheticKind::Feasibility, 0.01).unwrap();
    assert_eq!(feas.oracle().best_arm, Decision::arm(9));
    assert_eq!(feas.oracle().feasible_set.len(), 10);
    assert!((feas.attribute_mean(9, 4) - 0.51).abs() < 1e-12);

    let combined = build_synthetic::<f64>(SyntheticKind::Combined, 0.01).unwrap();
    let oracle = combined.oracle();
    assert_eq!(oracle.best_arm, Decision::arm(9));
    for i in 0..5 {
        assert!(!combined.is_feasible(i));
        assert!((combined.attribute_mean(i, 4) - 0.49).abs() < 1e-12);
    }
    for (i, want) in (5..9).zip([0.69, 0.68, 0.67, 0.66]) {
        assert!((oracle.arm_means[i] - want).abs() < 1e-12, "arm {}", i + 1);
    }

    for a in [0.001, 0.1, 0.5, -0.01] {
        assert!(build_synthetic::<f64>(SyntheticKind::Risky, a).is_err(), "a = {a}");
    }
}

#[test]
fn synthetic_noise_is_a_variance() {
    let inst = build_synthetic_with_variance::<f64>(SyntheticKind::Mean, 0.003, 0.3).unwrap();
    match inst.arm(0)[0].kind() {
        DistributionKind::Gaussian { variance, .. } => assert_eq!(*variance, 0.3),
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(build_synthetic::<f64>(SyntheticKind::Mean, 0.003).unwrap(), inst);
}

#[test]
fn confidence_band_examples() {
    let b = confidence_bands(0.5f64, 2000);
    assert!((b.bernoulli_ci - 0.021_91).abs() < 1e-5);
    let b = confidence_bands(0.0f64, 100);
    assert_eq!((b.delta_band, b.bernoulli_ci), (Some(0.0), 0.0));
    let b = confidence_bands(0.916f64, 1000);
    assert!((b.bernoulli_ci - 0.0172).abs() < 1e-4);
    assert_eq!(confidence_bands(1.0f64, 10).delta_band, None);
}

#[test]
fn separating_instance_single_trial_is_always_right() {
    let plan = SweepPlan::new(AlgorithmKind::ALL.to_vec(), vec![100], 1);
    let r = run_sweep(&deterministic(), "sep", &plan).unwrap();
    assert_eq!(r.cells.len(), 4);
    for c in &r.cells {
        assert_eq!(c.accuracy, 1.0, "{}", c.algorithm);
        assert_eq!(c.log_error, None);
        assert_eq!(c.delta_band, None);
    }
    assert!(r.to_table().lines().nth(1).unwrap().contains(",-inf,open,"));
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let instance = build_synthetic::<f64>(SyntheticKind::Combined, 0.01).unwrap();
    let mut plan = SweepPlan::new(AlgorithmKind::ALL.to_vec(), vec![500, 2_000], 40);
    plan.base_seed = 99;
    let one = run_sweep(&instance, "combined", &plan).unwrap();
    plan.workers = 8;
    let eight = run_sweep(&instance, "combined", &plan).unwrap();
    let again = run_sweep(&instance, "combined", &plan).unwrap();
    assert_eq!(without_wall_time(one.clone()), without_wall_time(eight));
    assert_eq!(without_wall_time(one.clone()), without_wall_time(again));

    for c in &one.cells {
        assert_eq!(c.correct + c.error_count, c.trials);
        assert!((c.accuracy - (1.0 - c.error_count as f64 / c.trials as f64)).abs() < 1e-15);
        assert_eq!(c.accuracy, c.correct as f64 / c.trials as f64);
        let count = c.accuracy * c.trials as f64;
        assert!((count - count.round()).abs() < 1e-9);
        assert!(c.mean_pulls <= c.budget as f64);
    }
}

#[test]
fn adding_an_algorithm_leaves_other_cells_unchanged() {
    let instance = build_synthetic::<f64>(SyntheticKind::Risky, 0.01).unwrap();
    let plan = SweepPlan::new(vec![AlgorithmKind::Fcsr], vec![1_000], 30);
    let alone = run_sweep(&instance, "risky", &plan).unwrap();
    let plan = SweepPlan::new(vec![AlgorithmKind::Uniform, AlgorithmKind::Fcsr], vec![1_000], 30);
    let both = run_sweep(&instance, "risky", &plan).unwrap();
    let a = alone.cell(AlgorithmKind::Fcsr, 1_000).unwrap();
    let b = both.cell(AlgorithmKind::Fcsr, 1_000).unwrap();
    assert_eq!(a.correct, b.correct);
    assert_eq!(a.mean_pulls, b.mean_pulls);
}

#[test]
fn tiny_budget_is_noted_not_fatal() {
    let instance = build_synthetic::<f64>(SyntheticKind::Mean, 0.003).unwrap();
    let plan = SweepPlan::new(vec![AlgorithmKind::Uniform, AlgorithmKind::Fcsr], vec![0, 10], 5);
    let r = run_sweep(&instance, "mean", &plan).unwrap();
    assert_eq!(r.cells.len(), 4);
    assert!(r.cells.iter().all(|c| c.note.is_some() && c.error.is_none()));
    // from all-zero statistics every arm is empirically infeasible at tau = 0.3
    assert_eq!(r.cell(AlgorithmKind::Uniform, 0).unwrap().accuracy, 0.0);
}

#[test]
fn table_layout() {
    let plan = SweepPlan::new(vec![AlgorithmKind::Uniform], vec![100, 200], 10);
    let r = run_sweep(&deterministic(), "sep", &plan).unwrap();
    let table = r.to_table();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], TABLE_HEADER);
    assert_eq!(lines[0], "algorithm,budget,trials,accuracy,log_error,delta_band,bernoulli_ci");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("us,100,10,1.000000,"));
    let json = r.to_json_value();
    assert_eq!(json["cells"].as_array().unwrap().len(), 2);
    assert_eq!(json["cells"][0]["log_error"], serde_json::json!("-inf"));
}

fn config(text: &str) -> SweepConfig {
    SweepConfig::from_toml(text).unwrap()
}

#[test]
fn config_validation() {
    let ok = config("instance = \"risky\"\nalgorithms = [\"fcsr\", \"sr\"]\nbudgets = [100, 200]\ntrials = 3\n");
    assert_eq!(ok.validate().unwrap(), vec![AlgorithmKind::Fcsr, AlgorithmKind::SuccessiveRejects]);

    let empty = config("instance = \"risky\"\nalgorithms = []\nbudgets = [100]\ntrials = 3\n");
    assert!(empty.validate().unwrap_err().to_string().contains("empty"));

    let unknown = config("instance = \"risky\"\nalgorithms = [\"ucb\"]\nbudgets = [100]\ntrials = 3\n");
    let msg = unknown.validate().unwrap_err().to_string();
    for id in ["fcsr", "us", "sr", "etc"] {
        assert!(msg.contains(id), "{msg}");
    }

    let unsorted = config("instance = \"risky\"\nalgorithms = [\"us\"]\nbudgets = [200, 200]\ntrials = 3\n");
    assert!(unsorted.validate().is_err());
    let no_trials = config("instance = \"risky\"\nalgorithms = [\"us\"]\nbudgets = [200]\ntrials = 0\n");
    assert!(no_trials.validate().is_err());
    let both = config("instance = \"risky\"\ninstance_file = \"x.json\"\nalgorithms = [\"us\"]\nbudgets = [1]\ntrials = 1\n");
    assert!(both.validate().is_err());
    let bad_name = config("instance = \"hard\"\nalgorithms = [\"us\"]\nbudgets = [1]\ntrials = 1\n");
    assert!(bad_name.validate().is_err());
    let file_variance = config("instance_file = \"x.json\"\nvariance = 0.1\nalgorithms = [\"us\"]\nbudgets = [1]\ntrials = 1\n");
    assert!(file_variance.validate().is_err());
    assert!(SweepConfig::from_toml("instance = \"risky\"\nalgorithms = [\"us\"]\nbudgets = [1]\ntrials = 1\nbogus = 1\n").is_err());
}

#[test]
fn config_runs_from_an_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    deterministic().write_json(dir.path().join("sep.json"), false).unwrap();
    let cfg = config(
        "instance_file = \"sep.json\"\nalgorithms = [\"fcsr\", \"etc\"]\nbudgets = [50, 100]\ntrials = 4\nbase_seed = 3\n\n[params]\nexplore_fraction = 0.4\n",
    );
    let r = run_sweep_config(&cfg, dir.path(), 2).unwrap();
    assert_eq!(r.base_seed, 3);
    assert_eq!(r.cells.len(), 4);
    assert!(r.cells.iter().all(|c| c.accuracy == 1.0));
    assert!(run_sweep_config(&cfg, Path::new("/nonexistent"), 1).is_err());
}

#[test]
fn config_variance_override_is_used() {
    let base = "instance = \"mean\"\nalgorithms = [\"us\"]\nbudgets = [500]\ntrials = 20\n";
    let quiet = config(&format!("variance = 0.0\n{base}"));
    let r = run_sweep_config(&quiet, Path::new("."), 1).unwrap();
    // noiseless draws always rank the arms correctly
    assert_eq!(r.cells[0].accuracy, 1.0);
    let noisy = run_sweep_config(&config(base), Path::new("."), 1).unwrap();
    assert!(noisy.cells[0].accuracy < 1.0);
}
