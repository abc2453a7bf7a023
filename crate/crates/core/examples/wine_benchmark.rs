//! Cover classifier and MLP baseline on the Wine data, 4 PCA dimensions.

use std::path::PathBuf;

use hypercover::bench::{run_benchmark, BenchConfig, BenchmarkReport, Method};
use hypercover::data::DatasetId;

fn main() {
    let dir = std::env::var_os("HYPERCOVER_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"));
    let wine = DatasetId::Wine.load(&dir, 0).unwrap();
    println!("{}", BenchmarkReport::table_header());
    for method in [Method::Cover, Method::Mlp] {
        let config = BenchConfig::preset(DatasetId::Wine, Some(4), method).with_seed(100);
        let report = run_benchmark(&wine, &config).unwrap();
        println!("{}", report.table_row());
        let leaves: Vec<usize> = report.runs.iter().map(|r| r.n_units).collect();
        if method == Method::Cover {
            println!("  leaves per replication {leaves:?}");
        }
    }
}
