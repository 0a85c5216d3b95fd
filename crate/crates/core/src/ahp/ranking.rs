use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{matrix_from_scores, priority_vector, AhpError, MatrixMode, PriorityResult, ReciprocalMatrix, CR_THRESHOLD};
use crate::quality::Quality;
use crate::scoring::QualityScores;

/// Aggregate scores closer than this are reported as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Per-package scores for the nine qualities, in [`Quality::ALL`] order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub packages: Vec<String>,
    pub scores: Vec<[f64; 9]>,
}

impl ScoreTable {
    pub fn new(packages: Vec<String>, scores: Vec<[f64; 9]>) -> Result<Self, AhpError> {
        if packages.len() != scores.len() {
            return Err(AhpError::DimensionMismatch {
                expected: packages.len(),
                got: scores.len(),
            });
        }
        Ok(ScoreTable { packages, scores })
    }

    pub fn from_quality_scores(all: &[QualityScores]) -> Result<Self, AhpError> {
        let mut packages = Vec::with_capacity(all.len());
        let mut scores = Vec::with_capacity(all.len());
        for qs in all {
            let mut row = [0.0; 9];
            for q in Quality::ALL {
                row[q.index()] = qs.score(q).ok_or(AhpError::DimensionMismatch {
                    expected: 9,
                    got: qs.scores.len(),
                })? as f64;
            }
            packages.push(qs.package_id.clone());
            scores.push(row);
        }
        Ok(ScoreTable { packages, scores })
    }

    pub fn column(&self, q: Quality) -> Vec<f64> {
        self.scores.iter().map(|row| row[q.index()]).collect()
    }

    pub fn len(&self) -> usize {
        self.packages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packages.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateOrder {
    /// Aggregate priority per package, in input order.
    pub aggregate: Vec<f64>,
    /// Package ids, best first; tied packages appear in id order.
    pub order: Vec<String>,
    /// Groups of two or more packages whose aggregates are equal within [`TIE_TOLERANCE`].
    pub ties: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AhpRanking {
    pub mode: MatrixMode,
    pub packages: Vec<String>,
    pub per_quality: BTreeMap<Quality, PriorityResult>,
    pub criteria_weights: Vec<f64>,
    pub aggregate: Vec<f64>,
    pub order: Vec<String>,
    pub ties: Vec<Vec<String>>,
}

impl AhpRanking {
    /// Qualities whose comparison matrix exceeds the consistency threshold.
    pub fn inconsistent(&self) -> Vec<Quality> {
        self.per_quality
            .iter()
            .filter(|(_, r)| r.consistency_ratio > CR_THRESHOLD)
            .map(|(q, _)| *q)
            .collect()
    }

    pub fn position(&self, package: &str) -> Option<usize> {
        self.order.iter().position(|p| p == package)
    }
}

pub fn equal_weights() -> Vec<f64> {
    vec![1.0 / 9.0; 9]
}

/// Scales nine non-negative weights to sum 1.
pub fn normalize_weights(raw: &[f64]) -> Result<Vec<f64>, AhpError> {
    if raw.len() != 9 {
        return Err(AhpError::DimensionMismatch {
            expected: 9,
            got: raw.len(),
        });
    }
    if raw.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(AhpError::InvalidWeights("weights must be finite and non-negative".into()));
    }
    let total: f64 = raw.iter().sum();
    if total <= 0.0 {
        return Err(AhpError::InvalidWeights("weights sum to zero".into()));
    }
    Ok(raw.iter().map(|w| w / total).collect())
}

/// Criteria weights from a 9x9 comparison of the qualities. Inconsistent
/// judgments are logged, not rejected.
pub fn criteria_weights_from_matrix(m: &ReciprocalMatrix) -> Result<PriorityResult, AhpError> {
    if m.n() != 9 {
        return Err(AhpError::DimensionMismatch {
            expected: 9,
            got: m.n(),
        });
    }
    let result = priority_vector(m)?;
    if !result.is_consistent() {
        log::warn!(
            "criteria comparison matrix has consistency ratio {:.4} (> {CR_THRESHOLD})",
            result.consistency_ratio
        );
    }
    Ok(result)
}

/// Weighted sum of per-quality priorities, then a descending order with
/// lexicographic tie-breaking.
pub fn aggregate(ids: &[String], per_quality: &[Vec<f64>], weights: &[f64]) -> Result<AggregateOrder, AhpError> {
    if per_quality.len() != weights.len() {
        return Err(AhpError::DimensionMismatch {
            expected: weights.len(),
            got: per_quality.len(),
        });
    }
    if let Some(bad) = per_quality.iter().find(|p| p.len() != ids.len()) {
        return Err(AhpError::DimensionMismatch {
            expected: ids.len(),
            got: bad.len(),
        });
    }
    let total: f64 = weights.iter().sum();
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || (total - 1.0).abs() > 1e-9 {
        return Err(AhpError::InvalidWeights(format!("weights must be non-negative and sum to 1 (sum {total})")));
    }

    let aggregate: Vec<f64> = (0..ids.len())
        .map(|i| per_quality.iter().zip(weights).map(|(p, w)| w * p[i]).sum())
        .collect();

    let mut idx: Vec<usize> = (0..ids.len()).collect();
    idx.sort_by(|&a, &b| aggregate[b].total_cmp(&aggregate[a]).then_with(|| ids[a].cmp(&ids[b])));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match groups.last_mut() {
            Some(g) if (aggregate[*g.last().unwrap()] - aggregate[i]).abs() <= TIE_TOLERANCE => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut order = Vec::with_capacity(ids.len());
    let mut ties = Vec::new();
    for mut g in groups {
        g.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        let names: Vec<String> = g.iter().map(|&i| ids[i].clone()).collect();
        if names.len() > 1 {
            ties.push(names.clone());
        }
        order.extend(names);
    }
    Ok(AggregateOrder { aggregate, order, ties })
}

/// Full AHP ranking of the table under the given criteria weights.
pub fn rank(table: &ScoreTable, weights: &[f64], mode: MatrixMode) -> Result<AhpRanking, AhpError> {
    let mut per_quality = BTreeMap::new();
    let mut vectors = Vec::with_capacity(9);
    for q in Quality::ALL {
        let result = priority_vector(&matrix_from_scores(&table.column(q), mode)?)?;
        vectors.push(result.priorities.clone());
        per_quality.insert(q, result);
    }
    let agg = aggregate(&table.packages, &vectors, weights)?;
    Ok(AhpRanking {
        mode,
        packages: table.packages.clone(),
        per_quality,
        criteria_weights: weights.to_vec(),
        aggregate: agg.aggregate,
        order: agg.order,
        ties: agg.ties,
    })
}
