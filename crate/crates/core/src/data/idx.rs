use std::io::Read;
use std::path::Path;

use flate2::read::GzDecoder;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Dataset;
use crate::error::{Error, Result};
use crate::point::LabeledPoint;

const IMAGES_MAGIC: u32 = 0x0000_0803;
const LABELS_MAGIC: u32 = 0x0000_0801;

/// Reads a whole file, transparently inflating gzip content.
fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    let raw = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    if raw.starts_with(&[0x1f, 0x8b]) {
        let mut out = Vec::new();
        GzDecoder::new(&raw[..])
            .read_to_end(&mut out)
            .map_err(|e| Error::io(path, e))?;
        Ok(out)
    } else {
        Ok(raw)
    }
}

fn idx_error(path: &Path, reason: impl Into<String>) -> Error {
    Error::Idx {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

fn be_u32(bytes: &[u8], at: usize, path: &Path) -> Result<u32> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or_else(|| idx_error(path, "truncated header"))
}

/// Loads IDX image/label files (optionally gzip-compressed). Pixels are
/// scaled to `[0, 1]`. With `max_points`, a seeded uniform subsample without
/// replacement is kept, in file order.
pub fn load_idx(
    images_path: impl AsRef<Path>,
    labels_path: impl AsRef<Path>,
    max_points: Option<usize>,
    seed: u64,
) -> Result<Dataset> {
    let (images_path, labels_path) = (images_path.as_ref(), labels_path.as_ref());
    let images = read_bytes(images_path)?;
    let labels = read_bytes(labels_path)?;

    let magic = be_u32(&images, 0, images_path)?;
    if magic != IMAGES_MAGIC {
        return Err(idx_error(images_path, format!("bad magic {magic:#010x}")));
    }
    let count = be_u32(&images, 4, images_path)? as usize;
    let rows = be_u32(&images, 8, images_path)? as usize;
    let cols = be_u32(&images, 12, images_path)? as usize;
    let pixels = rows * cols;
    if images.len() < 16 + count * pixels {
        return Err(idx_error(
            images_path,
            format!("truncated: expected {} pixel bytes", count * pixels),
        ));
    }

    let magic = be_u32(&labels, 0, labels_path)?;
    if magic != LABELS_MAGIC {
        return Err(idx_error(labels_path, format!("bad magic {magic:#010x}")));
    }
    let label_count = be_u32(&labels, 4, labels_path)? as usize;
    if label_count != count {
        return Err(idx_error(
            labels_path,
            format!("{label_count} labels for {count} images"),
        ));
    }
    if labels.len() < 8 + count {
        return Err(idx_error(labels_path, "truncated label data"));
    }

    let chosen: Vec<usize> = match max_points {
        Some(k) if k < count => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut idx = rand::seq::index::sample(&mut rng, count, k).into_vec();
            idx.sort_unstable();
            idx
        }
        _ => (0..count).collect(),
    };

    let points: Vec<LabeledPoint> = chosen
        .iter()
        .map(|&i| {
            let start = 16 + i * pixels;
            let coords = images[start..start + pixels]
                .iter()
                .map(|&b| f64::from(b) / 255.0)
                .collect();
            LabeledPoint::new(coords, usize::from(labels[8 + i]))
        })
        .collect();

    let n_classes = labels[8..8 + count]
        .iter()
        .map(|&l| usize::from(l) + 1)
        .max()
        .unwrap_or(0);
    Ok(Dataset {
        points,
        feature_names: (0..pixels)
            .map(|p| format!("px{}_{}", p / cols.max(1), p % cols.max(1)))
            .collect(),
        class_names: (0..n_classes).map(|c| c.to_string()).collect(),
    })
}
