//! Network JSON: `{n_inputs, n_classes, epsilon, class_blocks, layers}`,
//! shared by compiled networks and the baseline MLP.

use super::compile::CompiledNetwork;
use super::layer::{Activation, AffineLayer, Weights};
use crate::error::{Error, Result};
use crate::json;

pub(crate) struct NetworkDocument {
    pub n_inputs: usize,
    pub n_classes: usize,
    pub epsilon: Option<f64>,
    pub class_blocks: Vec<Vec<usize>>,
    pub layers: Vec<AffineLayer>,
}

impl NetworkDocument {
    pub fn to_json(&self) -> String {
        let blocks: Vec<String> = self
            .class_blocks
            .iter()
            .map(|b| json::ints(b.iter().copied()))
            .collect();
        let layers: Vec<String> = self
            .layers
            .iter()
            .map(|l| {
                json::object(&[
                    ("activation", json::string(l.activation.name())),
                    ("rows", l.outputs().to_string()),
                    ("cols", l.inputs().to_string()),
                    ("weights", json::reals(&l.weights.to_dense())),
                    ("biases", json::reals(&l.biases)),
                ])
            })
            .collect();
        json::object(&[
            ("n_inputs", self.n_inputs.to_string()),
            ("n_classes", self.n_classes.to_string()),
            (
                "epsilon",
                self.epsilon.map_or_else(|| "null".to_string(), json::real),
            ),
            ("class_blocks", format!("[{}]", blocks.join(","))),
            ("layers", format!("[{}]", layers.join(","))),
        ])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc = json::parse(text)?;
        let root = json::as_object(&doc, "$")?;
        let n_inputs = json::get_usize(root, "$", "n_inputs")?;
        let n_classes = json::get_usize(root, "$", "n_classes")?;
        let epsilon = match json::field(root, "$", "epsilon")? {
            v if v.is_null() => None,
            v => Some(
                v.as_f64()
                    .ok_or_else(|| Error::format("$.epsilon", "expected a number or null"))?,
            ),
        };
        let class_blocks = json::get_array(root, "$", "class_blocks")?
            .iter()
            .enumerate()
            .map(|(i, b)| json::usizes_at(b, &json::index("$.class_blocks", i)))
            .collect::<Result<Vec<_>>>()?;

        let raw_layers = json::get_array(root, "$", "layers")?;
        if raw_layers.is_empty() {
            return Err(Error::format("$.layers", "network has no layers"));
        }
        let mut layers = Vec::with_capacity(raw_layers.len());
        let mut width = n_inputs;
        for (i, v) in raw_layers.iter().enumerate() {
            let path = json::index("$.layers", i);
            let obj = json::as_object(v, &path)?;
            let act_name = json::get_str(obj, &path, "activation")?;
            let activation = Activation::parse(act_name).ok_or_else(|| {
                Error::format(
                    json::join(&path, "activation"),
                    format!("unknown activation `{act_name}`"),
                )
            })?;
            let rows = json::get_usize(obj, &path, "rows")?;
            let cols = json::get_usize(obj, &path, "cols")?;
            if cols != width {
                return Err(Error::format(
                    json::join(&path, "cols"),
                    format!("expected {width} to chain with the previous layer"),
                ));
            }
            let weights = json::reals_at(
                json::field(obj, &path, "weights")?,
                &json::join(&path, "weights"),
            )?;
            if weights.len() != rows * cols {
                return Err(Error::format(
                    json::join(&path, "weights"),
                    format!("expected {} values, found {}", rows * cols, weights.len()),
                ));
            }
            let biases = json::reals_at(
                json::field(obj, &path, "biases")?,
                &json::join(&path, "biases"),
            )?;
            if biases.len() != rows {
                return Err(Error::format(
                    json::join(&path, "biases"),
                    format!("expected {rows} values, found {}", biases.len()),
                ));
            }
            layers.push(AffineLayer::new(
                Weights::from_dense_auto(rows, cols, weights),
                biases,
                activation,
            ));
            width = rows;
        }
        if width != n_classes {
            return Err(Error::format(
                "$.layers",
                format!("final layer has {width} outputs, expected n_classes = {n_classes}"),
            ));
        }
        Ok(Self {
            n_inputs,
            n_classes,
            epsilon,
            class_blocks,
            layers,
        })
    }
}

impl CompiledNetwork {
    pub fn to_json(&self) -> String {
        NetworkDocument {
            n_inputs: self.n_inputs,
            n_classes: self.n_classes,
            epsilon: Some(self.epsilon),
            class_blocks: self.class_blocks.clone(),
            layers: self.layers.clone(),
        }
        .to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc = NetworkDocument::from_json(text)?;
        let epsilon = doc.epsilon.filter(|e| *e > 0.0).ok_or_else(|| {
            Error::format("$.epsilon", "compiled networks need a positive epsilon")
        })?;
        if doc.class_blocks.len() != doc.n_classes {
            return Err(Error::format(
                "$.class_blocks",
                format!("expected {} blocks", doc.n_classes),
            ));
        }
        if doc
            .layers
            .last()
            .is_some_and(|l| l.activation != Activation::Softmax)
        {
            return Err(Error::format("$.layers", "final layer must be softmax"));
        }
        Ok(CompiledNetwork {
            layers: doc.layers,
            n_inputs: doc.n_inputs,
            n_classes: doc.n_classes,
            epsilon,
            class_blocks: doc.class_blocks,
        })
    }
}
