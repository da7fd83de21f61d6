//! Equilibrium machinery shared by the classical and quantum analyses:
//! pure-equilibrium enumeration on 2x4 bimatrices, weak-dominance filtering
//! for player 2, and a grid-based unilateral-deviation search over the
//! continuous strategy space of the two-parameter unitary game.
//!
//! The grid search is a falsifier with finite resolution, not a prover: a
//! profile "passes" when no sampled unilateral deviation gains more than
//! `1e-6` of the stake, and reports always carry the step that was used.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::classical::{Bimatrix, PayoffVector, PAYOFF_TOL};
use crate::ewl::{ewl_payoff_closed, EWLGame, EWLProfile};

/// Relative gain (in units of the stake) below which a profile passes the
/// grid deviation search.
pub const GRID_NE_GAIN: f64 = 1e-6;

/// Ratio between player 2's coarse four-dimensional grid step and the fine
/// step used for player 1 and for the local refinement pass.
const COARSE_FACTOR: f64 = 5.0;

/// One strategy cell with its payoff.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedCell {
    pub row: String,
    pub col: String,
    pub payoff: PayoffVector,
}

/// Pure equilibria of a bimatrix plus the two refinement facts used in the
/// analyses: the weakly dominant column (when unique) and the equilibrium
/// whose payoff strictly Pareto-dominates all other equilibria (when one
/// exists).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub pure_ne: Vec<NamedCell>,
    pub dominant_column: Option<String>,
    pub pareto_best: Option<NamedCell>,
}

/// All cells where the row is a best response to the column and the column
/// to the row, ties allowed.
pub fn pure_nash(matrix: &Bimatrix) -> EquilibriumReport {
    let nrows = matrix.rows.len();
    let ncols = matrix.cols.len();

    let col_best: Vec<f64> = (0..ncols)
        .map(|j| (0..nrows).map(|i| matrix.cell(i, j).p1).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let row_best: Vec<f64> = (0..nrows)
        .map(|i| (0..ncols).map(|j| matrix.cell(i, j).p2).fold(f64::NEG_INFINITY, f64::max))
        .collect();

    let mut pure_ne = Vec::new();
    for i in 0..nrows {
        for j in 0..ncols {
            let cell = matrix.cell(i, j);
            if cell.p1 >= col_best[j] - PAYOFF_TOL && cell.p2 >= row_best[i] - PAYOFF_TOL {
                pure_ne.push(NamedCell {
                    row: matrix.rows[i].clone(),
                    col: matrix.cols[j].clone(),
                    payoff: cell,
                });
            }
        }
    }

    let pareto_best = pure_ne
        .iter()
        .find(|candidate| {
            pure_ne.iter().all(|other| {
                std::ptr::eq(*candidate, other)
                    || (candidate.payoff.p1 - other.payoff.p1 > PAYOFF_TOL
                        && candidate.payoff.p2 - other.payoff.p2 > PAYOFF_TOL)
            })
        })
        .cloned();

    EquilibriumReport {
        pure_ne,
        dominant_column: weakly_dominant_column(matrix),
        pareto_best,
    }
}

/// The player-2 strategy that is a best response to every player-1 strategy,
/// if exactly one column qualifies. Ties across whole columns mean no column
/// is reported.
pub fn weakly_dominant_column(matrix: &Bimatrix) -> Option<String> {
    let nrows = matrix.rows.len();
    let ncols = matrix.cols.len();
    let row_best: Vec<f64> = (0..nrows)
        .map(|i| (0..ncols).map(|j| matrix.cell(i, j).p2).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let candidates: Vec<usize> = (0..ncols)
        .filter(|&j| (0..nrows).all(|i| matrix.cell(i, j).p2 >= row_best[i] - PAYOFF_TOL))
        .collect();
    match candidates.as_slice() {
        [only] => Some(matrix.cols[*only].clone()),
        _ => None,
    }
}

/// Result of the unilateral-deviation grid search for one profile.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeviationResult {
    pub max_gain_p1: f64,
    pub max_gain_p2: f64,
    /// Player 1 angles `(θ1, β1)` realizing `max_gain_p1`.
    pub best_p1_deviation: (f64, f64),
    /// Player 2 angles `(θ2, β2, θ3, β3)` realizing `max_gain_p2`.
    pub best_p2_deviation: (f64, f64, f64, f64),
    /// Fine grid step used for player 1 and for refinement, in radians.
    pub step: f64,
    /// Absolute gain threshold (`1e-6` of the stake).
    pub threshold: f64,
}

impl DeviationResult {
    /// True when neither player found a deviation gaining at least the
    /// threshold.
    pub fn is_grid_ne(&self) -> bool {
        self.max_gain_p1 < self.threshold && self.max_gain_p2 < self.threshold
    }
}

fn axis(max: f64, step: f64) -> Vec<f64> {
    let count = (max / step + 1e-9).floor() as usize;
    let mut values: Vec<f64> = (0..=count).map(|k| k as f64 * step).collect();
    if values.last().copied().unwrap_or(0.0) < max - 1e-9 {
        values.push(max);
    }
    values
}

fn local_axis(center: f64, radius: f64, step: f64, max: f64) -> Vec<f64> {
    let span = (radius / step + 1e-9).ceil() as i64;
    let mut values: Vec<f64> = (-span..=span)
        .map(|m| (center + m as f64 * step).clamp(0.0, max))
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values.dedup();
    values
}

/// Searches each player's own grid for a payoff-improving unilateral
/// deviation, holding the opponent fixed. Player 1 sweeps `(θ1, β1)` at
/// `step`; player 2 sweeps her four angles at `5·step` and then refines at
/// `step` around the best coarse point. The incumbent profile itself counts
/// as a candidate, so gains are never negative.
pub fn grid_deviation_search(game: &EWLGame, profile: &EWLProfile, step: f64) -> DeviationResult {
    assert!(step > 0.0, "grid step must be positive");
    let base = ewl_payoff_closed(game, profile);

    let mut max_gain_p1 = 0.0_f64;
    let mut best_p1 = (profile.theta1, profile.beta1);
    for &theta in &axis(PI, step) {
        for &beta in &axis(FRAC_PI_2, step) {
            let gain = ewl_payoff_closed(game, &profile.with_p1(theta, beta)).p1 - base.p1;
            if gain > max_gain_p1 {
                max_gain_p1 = gain;
                best_p1 = (theta, beta);
            }
        }
    }

    let coarse = step * COARSE_FACTOR;
    let mut max_gain_p2 = 0.0_f64;
    let mut best_p2 = (profile.theta2, profile.beta2, profile.theta3, profile.beta3);
    let sweep = |thetas2: &[f64], betas2: &[f64], thetas3: &[f64], betas3: &[f64],
                 max_gain: &mut f64,
                 best: &mut (f64, f64, f64, f64)| {
        for &t2 in thetas2 {
            for &b2 in betas2 {
                for &t3 in thetas3 {
                    for &b3 in betas3 {
                        let gain =
                            ewl_payoff_closed(game, &profile.with_p2(t2, b2, t3, b3)).p2 - base.p2;
                        if gain > *max_gain {
                            *max_gain = gain;
                            *best = (t2, b2, t3, b3);
                        }
                    }
                }
            }
        }
    };
    sweep(
        &axis(PI, coarse),
        &axis(FRAC_PI_2, coarse),
        &axis(PI, coarse),
        &axis(FRAC_PI_2, coarse),
        &mut max_gain_p2,
        &mut best_p2,
    );
    // One refinement pass at fine resolution around the incumbent best.
    let (t2, b2, t3, b3) = best_p2;
    sweep(
        &local_axis(t2, coarse, step, PI),
        &local_axis(b2, coarse, step, FRAC_PI_2),
        &local_axis(t3, coarse, step, PI),
        &local_axis(b3, coarse, step, FRAC_PI_2),
        &mut max_gain_p2,
        &mut best_p2,
    );

    DeviationResult {
        max_gain_p1,
        max_gain_p2,
        best_p1_deviation: best_p1,
        best_p2_deviation: best_p2,
        step,
        threshold: GRID_NE_GAIN * game.params.money,
    }
}
