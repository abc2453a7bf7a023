//! Compiles an XOR cover into a ReLU network and checks it against the
//! point-in-box classifier.

use hypercover::cover::{build_cover, CoverConfig};
use hypercover::network::{compile, geometric_classify, CompiledNetwork};
use hypercover::LabeledPoint;

fn main() {
    let points: Vec<LabeledPoint> = [
        ([0.25, 0.25], 0),
        ([0.75, 0.75], 0),
        ([0.25, 0.75], 1),
        ([0.75, 0.25], 1),
    ]
    .iter()
    .map(|(c, l)| LabeledPoint::new(c.to_vec(), *l))
    .collect();
    let config = CoverConfig::new(0.1).with_max_aspect_ratio(f64::INFINITY);
    let cover = build_cover(&points, &config).unwrap();
    let net = compile(&cover, 0.05).unwrap();

    for (k, layer) in net.layers.iter().enumerate() {
        println!(
            "layer {}: {} x {} {} ({} nonzeros)",
            k + 1,
            layer.outputs(),
            layer.inputs(),
            layer.activation.name(),
            layer.weights.nnz()
        );
    }
    for p in &points {
        let (scores, class) = net.forward(&p.coords).unwrap();
        println!("{:?} -> {class} {:.3?}", p.coords, scores);
    }

    let probe = [0.6, 0.3];
    println!(
        "probe {probe:?}: network {}, geometry {:?}, thetas {:.3?}",
        net.predict(&probe).unwrap(),
        geometric_classify(&cover, &probe),
        net.cube_thetas(&probe).unwrap()
    );

    let json = net.to_json();
    let back = CompiledNetwork::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    println!("network JSON: {} bytes, round trip exact", json.len());
}
