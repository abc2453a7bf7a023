use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    Identity,
    Softmax,
}

impl Activation {
    pub fn name(self) -> &'static str {
        match self {
            Activation::Relu => "relu",
            Activation::Identity => "identity",
            Activation::Softmax => "softmax",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "relu" => Some(Activation::Relu),
            "identity" => Some(Activation::Identity),
            "softmax" => Some(Activation::Softmax),
            _ => None,
        }
    }

    pub fn apply(self, z: &mut [f64]) {
        match self {
            Activation::Relu => z.iter_mut().for_each(|v| *v = v.max(0.0)),
            Activation::Identity => {}
            Activation::Softmax => softmax_in_place(z),
        }
    }
}

pub fn softmax_in_place(z: &mut [f64]) {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for v in z.iter_mut() {
        *v = (*v - max).exp();
        total += *v;
    }
    for v in z.iter_mut() {
        *v /= total;
    }
}

/// Index of the largest value; ties go to the lowest index.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Compressed sparse rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub rows: usize,
    pub cols: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<f64>,
}

impl CsrMatrix {
    pub fn from_dense(rows: usize, cols: usize, data: &[f64]) -> Self {
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for r in 0..rows {
            for (c, &v) in data[r * cols..(r + 1) * cols].iter().enumerate() {
                if v != 0.0 {
                    col_idx.push(c);
                    values.push(v);
                }
            }
            row_ptr.push(values.len());
        }
        Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Builds from per-row `(col, value)` lists with ascending columns.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(usize, f64)>>) -> Self {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in &rows {
            for &(c, v) in row {
                debug_assert!(c < cols);
                col_idx.push(c);
                values.push(v);
            }
            row_ptr.push(values.len());
        }
        Self {
            rows: rows.len(),
            cols,
            row_ptr,
            col_idx,
            values,
        }
    }
}

/// Weight storage. Both variants describe the same dense row-major matrix;
/// the sparse form skips explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    Dense {
        rows: usize,
        cols: usize,
        data: Vec<f64>,
    },
    Sparse(CsrMatrix),
}

impl Weights {
    pub fn dense(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "dense weight shape");
        Weights::Dense { rows, cols, data }
    }

    /// Dense input, stored sparse when at most a quarter of entries are nonzero.
    pub fn from_dense_auto(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        let nnz = data.iter().filter(|&&v| v != 0.0).count();
        if nnz * 4 <= rows * cols {
            Weights::Sparse(CsrMatrix::from_dense(rows, cols, &data))
        } else {
            Weights::dense(rows, cols, data)
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            Weights::Dense { rows, .. } => *rows,
            Weights::Sparse(m) => m.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Weights::Dense { cols, .. } => *cols,
            Weights::Sparse(m) => m.cols,
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            Weights::Dense { data, .. } => data.iter().filter(|&&v| v != 0.0).count(),
            Weights::Sparse(m) => m.values.len(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        match self {
            Weights::Dense { cols, data, .. } => data[r * cols + c],
            Weights::Sparse(m) => {
                let span = m.row_ptr[r]..m.row_ptr[r + 1];
                m.col_idx[span.clone()]
                    .binary_search(&c)
                    .map_or(0.0, |k| m.values[span.start + k])
            }
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        match self {
            Weights::Dense { data, .. } => data.clone(),
            Weights::Sparse(m) => {
                let mut out = vec![0.0; m.rows * m.cols];
                for r in 0..m.rows {
                    for k in m.row_ptr[r]..m.row_ptr[r + 1] {
                        out[r * m.cols + m.col_idx[k]] = m.values[k];
                    }
                }
                out
            }
        }
    }

    pub fn into_dense(self) -> Self {
        match self {
            Weights::Dense { .. } => self,
            Weights::Sparse(ref m) => Weights::dense(m.rows, m.cols, self.to_dense()),
        }
    }

    /// `out = W x`.
    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        match self {
            Weights::Dense { rows, cols, data } => {
                for r in 0..*rows {
                    out[r] = data[r * cols..(r + 1) * cols]
                        .iter()
                        .zip(x)
                        .fold(0.0, |acc, (w, v)| acc + w * v);
                }
            }
            Weights::Sparse(m) => {
                for r in 0..m.rows {
                    let span = m.row_ptr[r]..m.row_ptr[r + 1];
                    out[r] = m.col_idx[span.clone()]
                        .iter()
                        .zip(&m.values[span])
                        .fold(0.0, |acc, (&c, w)| acc + w * x[c]);
                }
            }
        }
    }
}

/// `activation(W x + b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineLayer {
    pub weights: Weights,
    pub biases: Vec<f64>,
    pub activation: Activation,
}

impl AffineLayer {
    pub fn new(weights: Weights, biases: Vec<f64>, activation: Activation) -> Self {
        assert_eq!(
            weights.rows(),
            biases.len(),
            "bias length must equal row count"
        );
        Self {
            weights,
            biases,
            activation,
        }
    }

    pub fn inputs(&self) -> usize {
        self.weights.cols()
    }

    pub fn outputs(&self) -> usize {
        self.weights.rows()
    }

    /// Pre-activation values `W x + b`.
    pub fn affine(&self, x: &[f64]) -> Vec<f64> {
        let mut z = vec![0.0; self.outputs()];
        self.weights.matvec(x, &mut z);
        for (v, b) in z.iter_mut().zip(&self.biases) {
            *v += b;
        }
        z
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut z = self.affine(x);
        self.activation.apply(&mut z);
        z
    }
}
