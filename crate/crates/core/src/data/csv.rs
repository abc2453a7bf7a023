use std::collections::HashMap;
use std::path::Path;

use super::Dataset;
use crate::error::{Error, Result};
use crate::point::LabeledPoint;

fn reader(path: &Path) -> Result<::csv::Reader<std::fs::File>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(::csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(::csv::Trim::All)
        .flexible(true)
        .from_reader(file))
}

fn csv_error(path: &Path, row: usize, column: usize, reason: impl Into<String>) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        row,
        column,
        reason: reason.into(),
    }
}

/// Reads a labeled CSV. `label_column` defaults to the last column; labels are
/// mapped to class indices in order of first appearance. Rows and columns in
/// errors are 1-based.
pub fn load_csv(
    path: impl AsRef<Path>,
    label_column: Option<usize>,
    has_header: bool,
) -> Result<Dataset> {
    let path = path.as_ref();
    let mut records = reader(path)?.into_records();

    let mut feature_names = None;
    if has_header {
        if let Some(rec) = records.next() {
            let rec = rec.map_err(|e| csv_error(path, 1, 0, e.to_string()))?;
            feature_names = Some(rec.iter().map(str::to_string).collect::<Vec<_>>());
        }
    }

    let mut points = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    let mut class_index: HashMap<String, usize> = HashMap::new();
    let mut width = None;
    let first_row = if has_header { 2 } else { 1 };
    for (k, rec) in records.enumerate() {
        let row = first_row + k;
        let rec = rec.map_err(|e| csv_error(path, row, 0, e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let w = *width.get_or_insert(rec.len());
        if rec.len() != w {
            return Err(csv_error(
                path,
                row,
                rec.len(),
                format!("expected {w} columns"),
            ));
        }
        let label_col = label_column.unwrap_or(w - 1);
        if label_col >= w {
            return Err(csv_error(
                path,
                row,
                label_col + 1,
                "label column out of range",
            ));
        }
        let mut coords = Vec::with_capacity(w - 1);
        for (c, field) in rec.iter().enumerate() {
            if c == label_col {
                continue;
            }
            let v: f64 = field.parse().map_err(|_| {
                csv_error(path, row, c + 1, format!("non-numeric feature `{field}`"))
            })?;
            coords.push(v);
        }
        let name = rec.get(label_col).unwrap_or_default().to_string();
        let label = *class_index.entry(name.clone()).or_insert_with(|| {
            class_names.push(name);
            class_names.len() - 1
        });
        points.push(LabeledPoint::new(coords, label));
    }
    if points.is_empty() {
        return Err(Error::NoDataRows {
            path: path.to_path_buf(),
        });
    }

    let w = width.unwrap_or(0);
    let label_col = label_column.unwrap_or(w.saturating_sub(1));
    let feature_names = match feature_names {
        Some(names) if names.len() == w => names
            .into_iter()
            .enumerate()
            .filter(|&(c, _)| c != label_col)
            .map(|(_, n)| n)
            .collect(),
        _ => (0..w.saturating_sub(1)).map(|j| format!("x{j}")).collect(),
    };
    Ok(Dataset {
        points,
        feature_names,
        class_names,
    })
}

/// Reads unlabeled coordinate rows. A non-numeric first row is treated as a header.
pub fn read_points_csv(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    let path = path.as_ref();
    let mut out = Vec::new();
    for (k, rec) in reader(path)?.into_records().enumerate() {
        let rec = rec.map_err(|e| csv_error(path, k + 1, 0, e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, usize> = rec
            .iter()
            .enumerate()
            .map(|(c, f)| f.parse().map_err(|_| c))
            .collect();
        match parsed {
            Ok(row) => out.push(row),
            Err(_) if k == 0 => continue,
            Err(c) => {
                return Err(csv_error(path, k + 1, c + 1, "non-numeric value"));
            }
        }
    }
    Ok(out)
}
