mod common;

use common::data_dir;
use hypercover::bench::{run_benchmark, BenchConfig, Method};
use hypercover::data::DatasetId;

#[test]
fn report_statistics_recompute_from_accuracies() {
    let iris = DatasetId::Iris.load(&data_dir(), 0).unwrap();
    let config = BenchConfig::preset(DatasetId::Iris, Some(2), Method::Cover)
        .with_replications(6)
        .with_seed(3);
    let report = run_benchmark(&iris, &config).unwrap();
    let acc = &report.accuracies;
    assert_eq!(acc.len(), 6);
    let mean = acc.iter().sum::<f64>() / 6.0;
    let var = acc.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / 5.0;
    assert!((report.mean_accuracy - mean).abs() < 1e-15);
    assert!((report.std_dev - var.sqrt()).abs() < 1e-15);
    assert!(report.std_dev_defined);
    let seeds: Vec<u64> = report.runs.iter().map(|r| r.seed).collect();
    assert_eq!(seeds, (3..9).collect::<Vec<_>>());
    // 45 evaluation points per split
    for a in acc {
        assert!(((a * 45.0).round() - a * 45.0).abs() < 1e-9);
    }
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(json["config_snapshot"]["base_seed"], 3);
}

#[test]
fn single_replication_has_undefined_spread() {
    let iris = DatasetId::Iris.load(&data_dir(), 0).unwrap();
    let config = BenchConfig::preset(DatasetId::Iris, Some(2), Method::Cover).with_replications(1);
    let report = run_benchmark(&iris, &config).unwrap();
    assert!(!report.std_dev_defined);
    assert_eq!(report.std_dev, 0.0);
}

#[test]
fn thread_count_does_not_change_results() {
    let wine = DatasetId::Wine.load(&data_dir(), 0).unwrap();
    for method in [Method::Cover, Method::Mlp] {
        let mut config = BenchConfig::preset(DatasetId::Wine, Some(4), method)
            .with_replications(5)
            .with_epochs(5);
        config.jobs = 1;
        let serial = run_benchmark(&wine, &config).unwrap();
        config.jobs = 4;
        let parallel = run_benchmark(&wine, &config).unwrap();
        assert_eq!(serial.accuracies, parallel.accuracies);
    }
}
