use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{rank, AhpError, MatrixMode, ScoreTable};
use crate::quality::Quality;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub package: String,
    pub quality: Quality,
    /// Requested change, `+delta` or `-delta`.
    pub requested: f64,
    /// Change actually applied after clamping the score to `1..=10`.
    pub applied: f64,
    pub order: Vec<String>,
    pub order_changed: bool,
    pub top_changed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub delta: f64,
    pub mode: MatrixMode,
    pub baseline_order: Vec<String>,
    pub perturbations: Vec<Perturbation>,
    /// Fraction of perturbations that leave the full order unchanged.
    pub stability: f64,
    /// Smallest applied change (in score units) that changes the top-ranked package.
    pub min_top_flip: Option<f64>,
}

impl SensitivityReport {
    pub fn changed(&self) -> impl Iterator<Item = &Perturbation> {
        self.perturbations.iter().filter(|p| p.order_changed)
    }
}

/// Re-ranks after moving each (package, quality) score by `+delta` and
/// `-delta`, one at a time. Perturbations are evaluated in parallel and
/// reported in package, quality, sign order.
pub fn sensitivity(
    table: &ScoreTable,
    weights: &[f64],
    delta: f64,
    mode: MatrixMode,
) -> Result<SensitivityReport, AhpError> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(AhpError::InvalidDelta(delta));
    }
    let baseline = rank(table, weights, mode)?;
    let cases: Vec<(usize, Quality, f64)> = (0..table.len())
        .flat_map(|p| {
            Quality::ALL
                .into_iter()
                .flat_map(move |q| [(p, q, delta), (p, q, -delta)])
        })
        .collect();

    let perturbations = cases
        .par_iter()
        .map(|&(p, q, requested)| {
            let mut moved = table.clone();
            let old = moved.scores[p][q.index()];
            let new = (old + requested).clamp(1.0, 10.0);
            moved.scores[p][q.index()] = new;
            let ranking = rank(&moved, weights, mode)?;
            Ok(Perturbation {
                package: table.packages[p].clone(),
                quality: q,
                requested,
                applied: new - old,
                order_changed: ranking.order != baseline.order,
                top_changed: ranking.order.first() != baseline.order.first(),
                order: ranking.order,
            })
        })
        .collect::<Result<Vec<_>, AhpError>>()?;

    let stable = perturbations.iter().filter(|p| !p.order_changed).count();
    let stability = if perturbations.is_empty() {
        1.0
    } else {
        stable as f64 / perturbations.len() as f64
    };
    let min_top_flip = perturbations
        .iter()
        .filter(|p| p.top_changed)
        .map(|p| p.applied.abs())
        .min_by(f64::total_cmp);
    Ok(SensitivityReport {
        delta,
        mode,
        baseline_order: baseline.order,
        perturbations,
        stability,
        min_top_flip,
    })
}
