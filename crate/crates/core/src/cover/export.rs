//! Cover serialization: JSON (lossless geometry) and SVG (2D only).

use std::fmt::Write;

use super::builder::{Cover, CoverConfig};
use super::hypercube::{CubeStatus, Hypercube};
use crate::error::{Error, Result};
use crate::json;
use crate::point::LabeledPoint;

impl Cover {
    /// JSON document with fixed key order and 17-significant-digit reals.
    /// An unbounded aspect ratio is written as `null`.
    pub fn to_json(&self) -> String {
        let config = json::object(&[
            ("l", json::real(self.config.min_length)),
            ("r_star", json::real_or_null(self.config.max_aspect_ratio)),
            ("epsilon", json::real(self.config.epsilon)),
            ("seed", self.config.rng_seed.to_string()),
        ]);
        let cubes: Vec<String> = self
            .leaves
            .iter()
            .map(|c| {
                let class = c
                    .status
                    .class()
                    .map_or_else(|| "null".to_string(), |k| k.to_string());
                json::object(&[
                    ("lower", json::reals(&c.lower)),
                    ("upper", json::reals(&c.upper)),
                    ("status", json::string(c.status.name())),
                    ("class", class),
                    ("n_points", c.n_points().to_string()),
                ])
            })
            .collect();
        json::object(&[
            ("n_dims", self.n_dims.to_string()),
            ("n_classes", self.n_classes.to_string()),
            ("config", config),
            ("cubes", format!("[{}]", cubes.join(","))),
        ])
    }

    /// Reads a document written by [`Cover::to_json`]. Leaves carry point
    /// counts but not point indices.
    pub fn from_json(text: &str) -> Result<Cover> {
        let doc = json::parse(text)?;
        let root = json::as_object(&doc, "$")?;
        let n_dims = json::get_usize(root, "$", "n_dims")?;
        let n_classes = json::get_usize(root, "$", "n_classes")?;

        let cfg = json::as_object(json::field(root, "$", "config")?, "$.config")?;
        let mut config = CoverConfig::new(json::get_f64(cfg, "$.config", "l")?);
        config.max_aspect_ratio = json::get_f64_or_inf(cfg, "$.config", "r_star")?;
        config.epsilon = json::get_f64(cfg, "$.config", "epsilon")?;
        config.rng_seed = json::get_u64(cfg, "$.config", "seed")?;

        let cubes = json::get_array(root, "$", "cubes")?;
        if cubes.is_empty() {
            return Err(Error::format("$.cubes", "cover has no cubes"));
        }
        let mut leaves = Vec::with_capacity(cubes.len());
        for (i, v) in cubes.iter().enumerate() {
            let path = json::index("$.cubes", i);
            let obj = json::as_object(v, &path)?;
            let lower = json::reals_at(
                json::field(obj, &path, "lower")?,
                &json::join(&path, "lower"),
            )?;
            let upper = json::reals_at(
                json::field(obj, &path, "upper")?,
                &json::join(&path, "upper"),
            )?;
            if lower.len() != n_dims || upper.len() != n_dims {
                return Err(Error::format(
                    json::join(&path, "lower"),
                    format!("expected {n_dims} bounds"),
                ));
            }
            if lower.iter().zip(&upper).any(|(lo, hi)| !(lo < hi)) {
                return Err(Error::format(&path, "lower bound not below upper bound"));
            }
            let class = match json::field(obj, &path, "class")? {
                v if v.is_null() => None,
                v => Some(v.as_u64().map(|c| c as usize).ok_or_else(|| {
                    Error::format(json::join(&path, "class"), "expected an integer or null")
                })?),
            };
            if class.is_some_and(|c| c >= n_classes) {
                return Err(Error::format(
                    json::join(&path, "class"),
                    "class out of range",
                ));
            }
            let status_name = json::get_str(obj, &path, "status")?;
            let need_class = || {
                class.ok_or_else(|| {
                    Error::format(json::join(&path, "class"), "status requires a class")
                })
            };
            let status = match status_name {
                "homogeneous" => CubeStatus::Homogeneous(need_class()?),
                "violating" => CubeStatus::Violating {
                    majority: need_class()?,
                },
                "filled" => CubeStatus::Filled(need_class()?),
                "empty" => CubeStatus::Empty,
                "inhomogeneous" => CubeStatus::Inhomogeneous,
                other => {
                    return Err(Error::format(
                        json::join(&path, "status"),
                        format!("unknown status `{other}`"),
                    ))
                }
            };
            let n_points = json::get_usize(obj, &path, "n_points")?;
            leaves.push(Hypercube::detached(lower, upper, status, n_points));
        }

        let mut lo = vec![f64::INFINITY; n_dims];
        let mut hi = vec![f64::NEG_INFINITY; n_dims];
        for leaf in &leaves {
            for j in 0..n_dims {
                lo[j] = lo[j].min(leaf.lower[j]);
                hi[j] = hi[j].max(leaf.upper[j]);
            }
        }
        Ok(Cover {
            bounding_cube: Hypercube::new(lo, hi),
            leaves,
            config,
            n_dims,
            n_classes,
            bisections: 0,
        })
    }

    /// Renders a 2D cover: one rect per leaf colored by class, training points
    /// as circles. Empty leaves are white; violating leaves get a dashed outline
    /// and filled leaves a lighter shade.
    pub fn to_svg(&self, points: &[LabeledPoint]) -> Result<String> {
        if self.n_dims != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.n_dims,
            });
        }
        const SIZE: f64 = 600.0;
        const PAD: f64 = 10.0;
        let b = &self.bounding_cube;
        let (w, h) = (b.extent(0), b.extent(1));
        let scale = (SIZE - 2.0 * PAD) / w.max(h);
        let sx = |x: f64| PAD + (x - b.lower[0]) * scale;
        // SVG y grows downward
        let sy = |y: f64| PAD + (b.upper[1] - y) * scale;
        let width = 2.0 * PAD + w * scale;
        let height = 2.0 * PAD + h * scale;

        let mut svg = String::new();
        writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.3} {height:.3}">"#
        )
        .unwrap();
        writeln!(
            svg,
            r##"<g id="leaves" stroke="#404040" stroke-width="0.5">"##
        )
        .unwrap();
        for (id, leaf) in self.leaves.iter().enumerate() {
            let x = sx(leaf.lower[0]);
            let y = sy(leaf.upper[1]);
            let rw = leaf.extent(0) * scale;
            let rh = leaf.extent(1) * scale;
            let (fill, opacity, dash) = match leaf.status {
                CubeStatus::Homogeneous(c) => (palette(c), 0.55, ""),
                CubeStatus::Violating { majority } => {
                    (palette(majority), 0.55, r#" stroke-dasharray="3,2""#)
                }
                CubeStatus::Filled(c) => (palette(c), 0.25, ""),
                CubeStatus::Empty | CubeStatus::Inhomogeneous => ("#ffffff", 1.0, ""),
            };
            writeln!(
                svg,
                r#"<rect data-cube="{id}" x="{x:.3}" y="{y:.3}" width="{rw:.3}" height="{rh:.3}" fill="{fill}" fill-opacity="{opacity}"{dash}/>"#
            )
            .unwrap();
        }
        writeln!(svg, "</g>").unwrap();
        writeln!(
            svg,
            r##"<g id="points" stroke="#000000" stroke-width="0.6">"##
        )
        .unwrap();
        for p in points.iter().filter(|p| p.dim() == 2) {
            writeln!(
                svg,
                r#"<circle cx="{:.3}" cy="{:.3}" r="2.5" fill="{}"/>"#,
                sx(p.coords[0]),
                sy(p.coords[1]),
                palette(p.label)
            )
            .unwrap();
        }
        writeln!(svg, "</g>\n</svg>").unwrap();
        Ok(svg)
    }
}

fn palette(class: usize) -> &'static str {
    const COLORS: [&str; 10] = [
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
        "#bcbd22", "#17becf",
    ];
    COLORS[class % COLORS.len()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_cover;

    fn sample() -> (Vec<LabeledPoint>, Cover) {
        let pts = vec![
            LabeledPoint::new(vec![0.1, 0.1], 0),
            LabeledPoint::new(vec![0.9, 0.2], 1),
            LabeledPoint::new(vec![0.5, 0.9], 2),
            LabeledPoint::new(vec![0.45, 0.5], 0),
        ];
        let cover = build_cover(&pts, &CoverConfig::new(0.05).with_seed(3)).unwrap();
        (pts, cover)
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let (_, cover) = sample();
        let text = cover.to_json();
        let back = Cover::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.bounding_cube.lower, cover.bounding_cube.lower);
        assert_eq!(back.bounding_cube.upper, cover.bounding_cube.upper);
    }

    #[test]
    fn infinite_aspect_ratio_is_null() {
        let (pts, _) = sample();
        let cover = build_cover(
            &pts,
            &CoverConfig::new(0.05).with_max_aspect_ratio(f64::INFINITY),
        )
        .unwrap();
        let text = cover.to_json();
        assert!(text.contains(r#""r_star":null"#));
        let back = Cover::from_json(&text).unwrap();
        assert_eq!(back.config.max_aspect_ratio, f64::INFINITY);
    }

    #[test]
    fn key_order_is_fixed() {
        let (_, cover) = sample();
        let text = cover.to_json();
        let order = ["\"n_dims\"", "\"n_classes\"", "\"config\"", "\"cubes\""];
        let pos: Vec<usize> = order.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(text.starts_with(r#"{"n_dims":2,"n_classes":3,"config":{"l":"#));
    }

    #[test]
    fn malformed_documents_name_the_field() {
        let (_, cover) = sample();
        let text = cover.to_json();
        let truncated = &text[..text.len() / 2];
        assert!(matches!(
            Cover::from_json(truncated),
            Err(Error::Format { .. })
        ));

        let bad = text.replacen("\"status\":\"", "\"status\":\"bogus", 1);
        match Cover::from_json(&bad) {
            Err(Error::Format { field, .. }) => assert_eq!(field, "$.cubes[0].status"),
            other => panic!("unexpected {other:?}"),
        }
        let missing = text.replacen("\"n_classes\"", "\"n_klasses\"", 1);
        match Cover::from_json(&missing) {
            Err(Error::Format { field, .. }) => assert_eq!(field, "$.n_classes"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn svg_has_one_rect_per_leaf() {
        let (pts, cover) = sample();
        let svg = cover.to_svg(&pts).unwrap();
        assert_eq!(svg.matches("<rect").count(), cover.leaves.len());
        assert_eq!(svg.matches("<circle").count(), pts.len());
    }

    #[test]
    fn svg_requires_two_dimensions() {
        let pts = vec![
            LabeledPoint::new(vec![0.1], 0),
            LabeledPoint::new(vec![0.9], 1),
        ];
        let cover = build_cover(&pts, &CoverConfig::new(0.05)).unwrap();
        assert!(cover.to_svg(&pts).is_err());
    }
}
