use std::collections::HashSet;

use arc_lab::families::{make_parity_class, FamilyConfig, ParityConfig};
use arc_lab::harness::{
    admitted_tasks, adversarial_experiment, coverage_experiment, run_experiment, run_trial, sweep, EllRule,
    ExperimentConfig, NThetaRule, SelectionFilter, SweepGrid,
};
use arc_lab::io::{read_dataset, write_dataset};
use arc_lab::learner::TrainingMode;
use arc_lab::seed::{mix64, rng_from_seed};
use arc_lab::{generate_dataset, ArcError};

fn small() -> ExperimentConfig {
    ExperimentConfig::new(ParityConfig::new(8, 3), 40, 100, 60, 12).with_seed(77)
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let cfg = small();
    let one = run_experiment(&cfg, Some(1)).unwrap();
    let three = run_experiment(&cfg, Some(3)).unwrap();
    assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&three).unwrap());
    for (i, row) in one.rows.iter().enumerate() {
        assert_eq!(row.trial, i as u64);
        assert_eq!(row.seed, mix64(77, i as u64));
    }
    let again = run_trial(&cfg, one.rows[5].seed).unwrap();
    assert_eq!(again.selected, one.rows[5].selected);
    assert_eq!(again.test_task, one.rows[5].test_task);
}

#[test]
fn a_single_training_task_rarely_generalizes() {
    let cfg = ExperimentConfig::new(ParityConfig::new(8, 3), 1, 100, 60, 40)
        .with_mode(TrainingMode::MleContainment)
        .with_seed(3);
    let report = run_experiment(&cfg, None).unwrap();
    assert!(report.failure.rate > 0.9, "{}", report.failure.rate);
    assert_eq!(report.coverage_failure.rate, 1.0);
}

#[test]
fn invalid_configs_are_usage_errors() {
    let mut cfg = small();
    cfg.trials = 0;
    let e = run_experiment(&cfg, None).unwrap_err();
    assert!(e.is_usage());
    let mut cfg = small();
    cfg.n_x = 0;
    assert!(run_experiment(&cfg, None).unwrap_err().is_usage());
    assert!(run_experiment(&small(), Some(0)).unwrap_err().is_usage());
}

#[test]
fn filters_admit_the_expected_tasks() {
    let class = make_parity_class(&ParityConfig::new(10, 3)).unwrap();
    let all = class.enumerate_tasks(1 << 12).unwrap();
    let coord = SelectionFilter::ExcludeCoordinate { step: 1, value: 4 };
    let pair = SelectionFilter::ExcludePair { a: 3, b: 5 };
    let by_hand_coord = all.iter().filter(|t| t.ids()[1] != 4).count();
    let by_hand_pair = all
        .iter()
        .filter(|t| !(t.ids().contains(&3) && t.ids().contains(&5)))
        .count();
    assert_eq!(admitted_tasks(&class, &coord).unwrap().len(), by_hand_coord);
    assert_eq!(admitted_tasks(&class, &pair).unwrap().len(), by_hand_pair);
    // C(10,3) less the 8 tasks holding both 4 and 6
    assert_eq!(by_hand_pair, 112);
    let everything = SelectionFilter::custom(|_| false);
    assert!(matches!(admitted_tasks(&class, &everything), Err(ArcError::EmptyAdmittedSet)));
}

#[test]
fn adversarial_runs_pair_excluded_with_control() {
    let mut cfg = ExperimentConfig::new(ParityConfig::new(8, 3), 0, 100, 80, 10).with_seed(4);
    cfg.filter = SelectionFilter::ExcludePair { a: 2, b: 4 };
    let r = adversarial_experiment(&cfg, None).unwrap();
    assert_eq!(r.admitted, 56 - 6);
    assert_eq!(r.excluded.config.n_theta, r.admitted);
    assert_eq!(r.control.config.n_theta, r.admitted);
    for row in &r.excluded.rows {
        let test = row.test_task.as_ref().unwrap();
        assert!(test.contains(&2) && test.contains(&4));
        assert_eq!(row.training_tasks, r.admitted);
    }
    cfg.filter = SelectionFilter::IidUniform;
    assert!(adversarial_experiment(&cfg, None).is_err());
}

#[test]
fn sweep_rows_follow_the_grid() {
    let base = ExperimentConfig::new(ParityConfig::new(8, 3), 30, 100, 60, 6).with_seed(10);
    let report = sweep(&base, &SweepGrid::NTheta(vec![10, 30]), NThetaRule::Fixed, EllRule::Fixed, None).unwrap();
    let csv = report.csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("grid_value,n_theta,failure_rate,ci_low,ci_high,bound"));
    assert_eq!(lines.count(), 2);
    assert_eq!(report.reports[1].config.master_seed, 11);
    assert_eq!(report.rows[0].n_theta, 10);

    let by_d = sweep(&base, &SweepGrid::D(vec![8, 9]), NThetaRule::Theorem, EllRule::Theorem, None).unwrap();
    assert_eq!(by_d.rows[0].n_theta, 63);
    assert_eq!(by_d.rows[0].ell, (8.0 * (100.0f64 * 3.0 * 63.0).ln()).ceil() as usize);
    match &by_d.reports[1].config.family {
        FamilyConfig::Parity(p) => assert_eq!(p.d, 9),
        other => panic!("{other:?}"),
    }
}

#[test]
fn coverage_rate_is_reproducible() {
    let class = make_parity_class(&ParityConfig::new(6, 2).ordered()).unwrap();
    let a = coverage_experiment(&class, 12, 500, 5);
    let b = coverage_experiment(&class, 12, 500, 5);
    assert_eq!(a, b);
    assert!(a.rate > 0.0 && a.rate < 1.0);
}

#[test]
fn test_tasks_are_unseen() {
    let report = run_experiment(&small(), None).unwrap();
    let class = make_parity_class(&ParityConfig::new(8, 3)).unwrap();
    for row in &report.rows {
        // rebuild the training draw from the trial seed
        let mut rng = rng_from_seed(row.seed);
        let tasks: HashSet<_> = (0..40).map(|_| class.sample_task(&mut rng).ids().to_vec()).collect();
        assert!(!tasks.contains(row.test_task.as_ref().unwrap()));
    }
}

#[test]
fn malformed_lines_report_their_number() {
    let class = make_parity_class(&ParityConfig::new(4, 2)).unwrap();
    let task = class.task(vec![0, 1]).unwrap();
    let data = generate_dataset(&class, &task, 3, &mut rng_from_seed(0)).unwrap();
    let mut buf = Vec::new();
    write_dataset(&mut buf, &class, &data).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();

    lines[2] = r#"{"x":[1,0,1],"y":[1,1]}"#;
    let e = read_dataset(lines.join("\n").as_bytes(), &class).unwrap_err();
    assert!(matches!(e, ArcError::Parse { line: 3, .. }), "{e}");

    lines[2] = r#"{"x":[1,0,1,0],"y":[1,2]}"#;
    let e = read_dataset(lines.join("\n").as_bytes(), &class).unwrap_err();
    assert!(matches!(e, ArcError::Parse { line: 3, .. }), "{e}");

    let other = make_parity_class(&ParityConfig::new(4, 3)).unwrap();
    assert!(read_dataset(text.as_bytes(), &other).is_err());
    let header_only = text.lines().next().unwrap();
    assert!(matches!(read_dataset(header_only.as_bytes(), &class), Err(ArcError::EmptyDataset)));
}
