//! Analytic Hierarchy Process: reciprocal comparison matrices, principal
//! eigenvector priorities with a consistency check, aggregation across the
//! nine qualities and a score-perturbation sensitivity analysis.

mod ranking;
mod sensitivity;

use serde::{Deserialize, Serialize};

pub use ranking::{
    aggregate, criteria_weights_from_matrix, equal_weights, normalize_weights, rank, AggregateOrder, AhpRanking,
    ScoreTable, TIE_TOLERANCE,
};
pub use sensitivity::{sensitivity, Perturbation, SensitivityReport};

pub const POWER_TOLERANCE: f64 = 1e-10;
pub const POWER_MAX_ITERATIONS: usize = 10_000;
/// Consistency ratios above this are flagged, never rejected.
pub const CR_THRESHOLD: f64 = 0.1;
const RECIPROCAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AhpError {
    #[error("need at least two packages to compare, got {0}")]
    DegenerateInput(usize),
    #[error("score {value} at position {index} is outside 1..=10")]
    OutOfRangeScore { index: usize, value: f64 },
    #[error("matrix is not square")]
    NotSquare,
    #[error("entry ({i},{j}) is not a positive finite number")]
    NonPositive { i: usize, j: usize },
    #[error("entries ({i},{j}) and ({j},{i}) are not reciprocal")]
    NotReciprocal { i: usize, j: usize },
    #[error("power iteration did not converge in {} iterations", .0.iterations)]
    NonConvergence(Box<PriorityResult>),
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid criteria weights: {0}")]
    InvalidWeights(String),
    #[error("sensitivity delta must be positive, got {0}")]
    InvalidDelta(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixMode {
    /// `a[i][j] = s_i / s_j`.
    #[default]
    Ratio,
    /// `a[i][j] = min(9, 1 + |s_i - s_j|)` for `s_i >= s_j`, reciprocal otherwise.
    SaatyDiff,
}

impl MatrixMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixMode::Ratio => "ratio",
            MatrixMode::SaatyDiff => "saaty-diff",
        }
    }
}

impl std::fmt::Display for MatrixMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MatrixMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ratio" => Ok(MatrixMode::Ratio),
            "saaty-diff" => Ok(MatrixMode::SaatyDiff),
            other => Err(format!("unknown matrix mode `{other}` (expected ratio or saaty-diff)")),
        }
    }
}

/// Positive matrix with unit diagonal and `a[j][i] = 1 / a[i][j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct ReciprocalMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl ReciprocalMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, AhpError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(AhpError::NotSquare);
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        let m = ReciprocalMatrix { n, entries };
        for i in 0..n {
            for j in 0..n {
                let a = m.get(i, j);
                if !(a.is_finite() && a > 0.0) {
                    return Err(AhpError::NonPositive { i, j });
                }
                let product = a * m.get(j, i);
                if (product - 1.0).abs() > RECIPROCAL_TOLERANCE {
                    return Err(AhpError::NotReciprocal { i, j });
                }
            }
        }
        Ok(m)
    }

    /// The perfectly consistent matrix `a[i][j] = w_i / w_j`.
    pub fn from_weights(weights: &[f64]) -> Result<Self, AhpError> {
        if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(AhpError::NonPositive { i, j: i });
        }
        let n = weights.len();
        if n == 0 {
            return Err(AhpError::NotSquare);
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(if i == j { 1.0 } else { weights[i] / weights[j] });
            }
        }
        Ok(ReciprocalMatrix { n, entries })
    }

    pub fn ones(n: usize) -> Self {
        ReciprocalMatrix {
            n,
            entries: vec![1.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    fn mul(&self, x: &[f64], out: &mut [f64]) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

impl TryFrom<Vec<Vec<f64>>> for ReciprocalMatrix {
    type Error = AhpError;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, AhpError> {
        ReciprocalMatrix::new(rows)
    }
}

impl From<ReciprocalMatrix> for Vec<Vec<f64>> {
    fn from(m: ReciprocalMatrix) -> Self {
        m.rows()
    }
}

/// Builds the comparison matrix for one quality from per-package scores.
///
/// Ratio mode accepts any positive finite score so that rescaled inputs stay
/// valid; Saaty-difference mode needs scores in `1..=10`.
pub fn matrix_from_scores(scores: &[f64], mode: MatrixMode) -> Result<ReciprocalMatrix, AhpError> {
    if scores.len() < 2 {
        return Err(AhpError::DegenerateInput(scores.len()));
    }
    for (index, &value) in scores.iter().enumerate() {
        let ok = match mode {
            MatrixMode::Ratio => value.is_finite() && value > 0.0,
            MatrixMode::SaatyDiff => (1.0..=10.0).contains(&value),
        };
        if !ok {
            return Err(AhpError::OutOfRangeScore { index, value });
        }
    }
    match mode {
        MatrixMode::Ratio => ReciprocalMatrix::from_weights(scores),
        MatrixMode::SaatyDiff => {
            let n = scores.len();
            let mut entries = Vec::with_capacity(n * n);
            for &si in scores {
                for &sj in scores {
                    let judgment = (1.0 + (si - sj).abs()).min(9.0);
                    entries.push(if si >= sj { judgment } else { 1.0 / judgment });
                }
            }
            Ok(ReciprocalMatrix { n, entries })
        }
    }
}

/// Saaty's random consistency index.
pub fn random_index(n: usize) -> f64 {
    match n {
        0..=2 => 0.0,
        3 => 0.58,
        4 => 0.90,
        5 => 1.12,
        6 => 1.24,
        7 => 1.32,
        8 => 1.41,
        9 => 1.45,
        _ => 1.49,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorityResult {
    pub priorities: Vec<f64>,
    pub lambda_max: f64,
    pub consistency_index: f64,
    pub consistency_ratio: f64,
    pub iterations: usize,
}

impl PriorityResult {
    pub fn is_consistent(&self) -> bool {
        self.consistency_ratio <= CR_THRESHOLD
    }
}

/// Principal right eigenvector by power iteration from the uniform vector.
pub fn priority_vector(m: &ReciprocalMatrix) -> Result<PriorityResult, AhpError> {
    let n = m.n();
    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < POWER_MAX_ITERATIONS {
        iterations += 1;
        m.mul(&x, &mut next);
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        let change = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if change < POWER_TOLERANCE {
            converged = true;
            break;
        }
    }
    // With x summing to 1, the entries of Ax sum to lambda.
    m.mul(&x, &mut next);
    let lambda_max: f64 = next.iter().sum();
    let consistency_index = if n > 1 {
        ((lambda_max - n as f64) / (n as f64 - 1.0)).max(0.0)
    } else {
        0.0
    };
    let ri = random_index(n);
    let consistency_ratio = if ri > 0.0 { consistency_index / ri } else { 0.0 };
    let result = PriorityResult {
        priorities: x,
        lambda_max,
        consistency_index,
        consistency_ratio,
        iterations,
    };
    if converged {
        Ok(result)
    } else {
        Err(AhpError::NonConvergence(Box::new(result)))
    }
}
