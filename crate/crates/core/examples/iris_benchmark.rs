//! Cover classifier and MLP baseline on Iris at 2, 3 and 4 PCA dimensions,
//! 20 replications of a 70/30 split each.

use std::path::PathBuf;

use hypercover::bench::{run_benchmark, BenchConfig, BenchmarkReport, Method};
use hypercover::data::DatasetId;

fn main() {
    let dir = std::env::var_os("HYPERCOVER_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"));
    let iris = DatasetId::Iris.load(&dir, 0).unwrap();
    println!("{}", BenchmarkReport::table_header());
    for method in [Method::Cover, Method::Mlp] {
        for d in 2..=4 {
            let config = BenchConfig::preset(DatasetId::Iris, Some(d), method).with_seed(100);
            let report = run_benchmark(&iris, &config).unwrap();
            println!("{}", report.table_row());
        }
    }
}
