//! Principal components of the Iris and Wine measurements.

use std::path::PathBuf;

use hypercover::data::{normalize, pca_fit, pca_transform, DatasetId};

fn data_dir() -> PathBuf {
    std::env::var_os("HYPERCOVER_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

fn main() {
    for id in [DatasetId::Iris, DatasetId::Wine] {
        let data = id.load(&data_dir(), 0).unwrap();
        let full = pca_fit(&data, data.n_dims()).unwrap();
        let total: f64 = full.explained_variance.iter().sum();
        println!(
            "{} ({} points, {} features)",
            id.name(),
            data.len(),
            data.n_dims()
        );
        let mut cumulative = 0.0;
        for (k, v) in full.explained_variance.iter().enumerate().take(5) {
            cumulative += v / total;
            println!(
                "  pc{}: variance {v:>12.4}  cumulative {:5.1}%",
                k + 1,
                100.0 * cumulative
            );
        }
        let heaviest = full.components[0]
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap();
        println!("  pc1 is dominated by {}", data.feature_names[heaviest.0]);

        let model = pca_fit(&data, 2).unwrap();
        let (projected, _) = normalize(&pca_transform(&model, &data));
        let first = &projected.points[0];
        println!(
            "  first sample in normalized 2D PCA space: {:.3?}",
            first.coords
        );
    }
}
