//! Minimal dense numeric kernels used by the forward engine.
//!
//! Everything is `f64`, row-major, and shape-checked. These are deliberately
//! plain loops: the engine's additivity and lens invariants need exact,
//! reproducible arithmetic, not throughput.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

/// Dense vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    pub data: Vec<f64>,
}

/// Which normalization formula `normalize` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Rms,
    LayerNorm,
}

impl Matrix {
    /// Checked constructor: length must be `rows * cols` and all entries finite.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape {
                expected: format!("{rows}x{cols} = {} entries", rows * cols),
                actual: format!("{} entries", data.len()),
            });
        }
        if let Some(x) = data.iter().find(|x| !x.is_finite()) {
            return Err(Error::Numeric(format!("non-finite matrix entry {x}")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

impl Vector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if let Some(x) = data.iter().find(|x| !x.is_finite()) {
            return Err(Error::Numeric(format!("non-finite vector entry {x}")));
        }
        Ok(Self { data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: vec![0.0; dim],
        }
    }

    pub fn from_slice(s: &[f64]) -> Self {
        Self { data: s.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Standard matrix product.
pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::Shape {
            expected: format!("inner dims to agree ({}x{} * ?x?)", a.rows, a.cols),
            actual: format!("{}x{}", b.rows, b.cols),
        });
    }
    let mut out = vec![0.0; a.rows * b.cols];
    for i in 0..a.rows {
        let arow = a.row(i);
        for (k, &aik) in arow.iter().enumerate() {
            if aik == 0.0 {
                continue;
            }
            let brow = b.row(k);
            let orow = &mut out[i * b.cols..(i + 1) * b.cols];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    Ok(Matrix {
        rows: a.rows,
        cols: b.cols,
        data: out,
    })
}

/// Matrix-vector product `m * v`, treating `v` as a column vector.
pub fn matvec(m: &Matrix, v: &Vector) -> Result<Vector> {
    if m.cols != v.dim() {
        return Err(Error::Shape {
            expected: format!("vector of dim {}", m.cols),
            actual: format!("dim {}", v.dim()),
        });
    }
    let mut out = vec![0.0; m.rows];
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (a, b) in m.row(i).iter().zip(&v.data) {
            acc += a * b;
        }
        *o = acc;
    }
    Ok(Vector { data: out })
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Temperature softmax with max-subtraction for stability.
///
/// The output is a proper distribution: positive entries summing to 1
/// within 1e-9.
pub fn softmax(logits: &Vector, temperature: f64) -> Result<Vector> {
    if temperature <= 0.0 || !temperature.is_finite() {
        return Err(Error::Argument(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    if logits.data.is_empty() {
        return Err(Error::Argument("softmax of empty vector".into()));
    }
    if let Some(x) = logits.data.iter().find(|x| !x.is_finite()) {
        return Err(Error::Numeric(format!("non-finite logit {x}")));
    }
    let max = logits.data.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits
        .data
        .iter()
        .map(|&x| ((x - max) / temperature).exp())
        .collect();
    let sum: f64 = exps.iter().sum();
    Ok(Vector {
        data: exps.into_iter().map(|e| e / sum).collect(),
    })
}

/// RMS or layer normalization with a learned gain.
pub fn normalize(v: &Vector, gain: &Vector, eps: f64, kind: NormKind) -> Result<Vector> {
    if gain.dim() != v.dim() {
        return Err(Error::Shape {
            expected: format!("gain of dim {}", v.dim()),
            actual: format!("dim {}", gain.dim()),
        });
    }
    let n = v.dim() as f64;
    let data = match kind {
        NormKind::Rms => {
            let ms = v.data.iter().map(|x| x * x).sum::<f64>() / n;
            let denom = (ms + eps).sqrt();
            v.data
                .iter()
                .zip(&gain.data)
                .map(|(x, g)| if denom == 0.0 { 0.0 } else { x / denom * g })
                .collect()
        }
        NormKind::LayerNorm => {
            let mean = v.data.iter().sum::<f64>() / n;
            let var = v.data.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
            let denom = (var + eps).sqrt();
            v.data
                .iter()
                .zip(&gain.data)
                .map(|(x, g)| if denom == 0.0 { 0.0 } else { (x - mean) / denom * g })
                .collect()
        }
    };
    Ok(Vector { data })
}

/// Kahan compensated sum; used where many small probabilities accumulate.
pub fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}
