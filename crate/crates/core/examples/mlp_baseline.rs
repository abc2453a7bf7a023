//! Trains the baseline MLP on XOR and prints its loss curve.

use hypercover::mlp::{Mlp, MlpConfig};
use hypercover::LabeledPoint;

fn main() {
    let corners = [
        ([0.0, 0.0], 0),
        ([1.0, 1.0], 0),
        ([0.0, 1.0], 1),
        ([1.0, 0.0], 1),
    ];
    let points: Vec<LabeledPoint> = corners
        .iter()
        .cycle()
        .take(32)
        .map(|(c, l)| LabeledPoint::new(c.to_vec(), *l))
        .collect();
    let config = MlpConfig {
        hidden_layers: vec![8],
        learning_rate: 0.2,
        epochs: 300,
        batch_size: 4,
        init_seed: 5,
    };
    let mut mlp = Mlp::init(2, 2, &config).unwrap();
    let curve = mlp.train(&points, &config).unwrap();
    for (epoch, loss) in curve.iter().enumerate().step_by(50) {
        println!("epoch {epoch:>3}: loss {loss:.4}");
    }
    for (c, l) in &corners {
        let probs = mlp.forward(c).unwrap();
        println!(
            "{c:?} (label {l}) -> {} {:.3?}",
            mlp.predict(c).unwrap(),
            probs
        );
    }
    println!(
        "exported {} parameters as {} bytes of JSON",
        mlp.parameter_count(),
        mlp.to_json().len()
    );
}
