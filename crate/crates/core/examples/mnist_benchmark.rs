//! MNIST digits reduced to 10 PCA dimensions.
//!
//! cargo run --release --example mnist_benchmark -- [points ...]
//! Defaults to 200 and 2000 point subsets.

use std::path::PathBuf;

use hypercover::bench::{run_benchmark, BenchConfig, BenchmarkReport, Method};
use hypercover::data::DatasetId;

fn main() {
    let dir = std::env::var_os("HYPERCOVER_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"));
    let mut sizes: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().unwrap())
        .collect();
    if sizes.is_empty() {
        sizes = vec![200, 2000];
    }
    println!("{}", BenchmarkReport::table_header());
    for points in sizes {
        let id = DatasetId::Mnist { points };
        let digits = id.load(&dir, 0).unwrap();
        for method in [Method::Cover, Method::Mlp] {
            let config = BenchConfig::preset(id, Some(10), method).with_seed(100);
            let report = run_benchmark(&digits, &config).unwrap();
            println!("{}", report.table_row());
        }
    }
}
