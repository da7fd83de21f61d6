//! The classical two-proposal ultimatum game: player 1 proposes either a fair
//! split of the money or an unfair one, player 2 accepts or rejects, and a
//! rejection leaves both with nothing. The module builds the extensive form,
//! its outcome function, and the 2x4 normal representation shared with the
//! quantum variants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when comparing payoffs.
pub const PAYOFF_TOL: f64 = 1e-9;

/// Division factor and stake of the game. The unfair proposal gives player 1
/// the share `delta`, so `1/2 < delta < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub delta: f64,
    pub money: f64,
}

impl GameParams {
    pub fn new(delta: f64, money: f64) -> Result<Self> {
        if !(delta > 0.5 && delta < 1.0) {
            return Err(Error::DeltaOutOfRange(delta));
        }
        if !(money.is_finite() && money > 0.0) {
            return Err(Error::MoneyOutOfRange(money));
        }
        Ok(Self { delta, money })
    }

    /// The fair division `(money/2, money/2)`.
    pub fn fair(&self) -> PayoffVector {
        PayoffVector::new(self.money / 2.0, self.money / 2.0)
    }

    /// The unfair division `(delta * money, (1 - delta) * money)`.
    pub fn unfair(&self) -> PayoffVector {
        PayoffVector::new(self.delta * self.money, (1.0 - self.delta) * self.money)
    }

    /// Validates a second division factor with `delta < delta_prime < 1`.
    pub fn check_delta_prime(&self, delta_prime: f64) -> Result<f64> {
        if !(delta_prime > self.delta && delta_prime < 1.0) {
            return Err(Error::DeltaPrimeOutOfRange {
                delta: self.delta,
                delta_prime,
            });
        }
        Ok(delta_prime)
    }
}

impl Default for GameParams {
    fn default() -> Self {
        Self {
            delta: 0.7,
            money: 1.0,
        }
    }
}

/// A pair of player payoffs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", from = "[f64; 2]")]
pub struct PayoffVector {
    pub p1: f64,
    pub p2: f64,
}

impl PayoffVector {
    pub const ZERO: Self = Self { p1: 0.0, p2: 0.0 };

    pub fn new(p1: f64, p2: f64) -> Self {
        Self { p1, p2 }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.p1 * factor, self.p2 * factor)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.p1 + other.p1, self.p2 + other.p2)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.p1 - other.p1).abs() <= tol && (self.p2 - other.p2).abs() <= tol
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.p1 - other.p1).abs().max((self.p2 - other.p2).abs())
    }
}

impl From<PayoffVector> for [f64; 2] {
    fn from(v: PayoffVector) -> Self {
        [v.p1, v.p2]
    }
}

impl From<[f64; 2]> for PayoffVector {
    fn from(v: [f64; 2]) -> Self {
        PayoffVector::new(v[0], v[1])
    }
}

/// A sequence of action labels starting from the empty history.
pub type History = Vec<String>;

/// Who moves after a nonterminal history.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mover {
    Player(usize),
    Chance,
}

/// A finite extensive game: a prefix-closed set of histories, a player
/// function on nonterminal histories, per-player information partitions,
/// payoffs on terminal histories, and distributions at chance histories.
#[derive(Clone, Debug)]
pub struct ExtensiveGame {
    pub histories: Vec<History>,
    pub player_function: BTreeMap<History, Mover>,
    /// Information sets per player, in a fixed order; each set lists the
    /// histories the player cannot distinguish.
    pub information_sets: BTreeMap<usize, Vec<Vec<History>>>,
    pub payoffs: BTreeMap<History, PayoffVector>,
    pub chance_distributions: BTreeMap<History, Vec<(String, f64)>>,
}

impl ExtensiveGame {
    /// Actions available after a nonterminal history, in label order.
    pub fn actions(&self, history: &History) -> Vec<String> {
        let mut actions: Vec<String> = self
            .histories
            .iter()
            .filter(|h| h.len() == history.len() + 1 && h.starts_with(history.as_slice()))
            .map(|h| h.last().expect("nonempty extension").clone())
            .collect();
        actions.sort();
        actions
    }

    pub fn is_terminal(&self, history: &History) -> bool {
        !self
            .histories
            .iter()
            .any(|h| h.len() == history.len() + 1 && h.starts_with(history.as_slice()))
    }

    pub fn terminal_histories(&self) -> Vec<History> {
        self.histories
            .iter()
            .filter(|h| self.is_terminal(h))
            .cloned()
            .collect()
    }

    /// Structural invariants: prefix closure, per-information-set action
    /// agreement, and normalized chance distributions.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for history in &self.histories {
            if !history.is_empty() {
                let prefix = history[..history.len() - 1].to_vec();
                if !self.histories.contains(&prefix) {
                    return Err(format!("history {history:?} lacks its prefix"));
                }
            }
        }
        for sets in self.information_sets.values() {
            for set in sets {
                let mut action_sets = set.iter().map(|h| self.actions(h));
                if let Some(first) = action_sets.next() {
                    if action_sets.any(|a| a != first) {
                        return Err("information set with differing action sets".into());
                    }
                }
            }
        }
        for (history, dist) in &self.chance_distributions {
            let total: f64 = dist.iter().map(|(_, p)| p).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(format!("chance distribution at {history:?} sums to {total}"));
            }
        }
        Ok(())
    }
}

/// A pure strategy profile: player 1's proposal bit and player 2's response
/// bits at her two information sets (after the fair and the unfair proposal).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureProfile {
    pub s1: u8,
    pub s2: (u8, u8),
}

impl PureProfile {
    pub fn new(s1: u8, s2: (u8, u8)) -> Self {
        assert!(s1 <= 1 && s2.0 <= 1 && s2.1 <= 1, "profile bits must be 0 or 1");
        Self { s1, s2 }
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..8u8).map(|bits| Self::new(bits >> 2, ((bits >> 1) & 1, bits & 1)))
    }
}

/// Builds the two-proposal ultimatum game: histories
/// `{∅, c0, c1, (c0,d0), (c0,d1), (c1,e0), (c1,e1)}`, player 1 at the root,
/// player 2 in two singleton information sets, payoffs `fair` at `(c0,d0)`,
/// `unfair` at `(c1,e0)`, and `(0,0)` at the rejections.
pub fn build_gamma1(params: &GameParams) -> ExtensiveGame {
    let h = |labels: &[&str]| -> History { labels.iter().map(|s| s.to_string()).collect() };

    let histories = vec![
        h(&[]),
        h(&["c0"]),
        h(&["c1"]),
        h(&["c0", "d0"]),
        h(&["c0", "d1"]),
        h(&["c1", "e0"]),
        h(&["c1", "e1"]),
    ];

    let mut player_function = BTreeMap::new();
    player_function.insert(h(&[]), Mover::Player(1));
    player_function.insert(h(&["c0"]), Mover::Player(2));
    player_function.insert(h(&["c1"]), Mover::Player(2));

    let mut information_sets = BTreeMap::new();
    information_sets.insert(1, vec![vec![h(&[])]]);
    information_sets.insert(2, vec![vec![h(&["c0"])], vec![h(&["c1"])]]);

    let mut payoffs = BTreeMap::new();
    payoffs.insert(h(&["c0", "d0"]), params.fair());
    payoffs.insert(h(&["c0", "d1"]), PayoffVector::ZERO);
    payoffs.insert(h(&["c1", "e0"]), params.unfair());
    payoffs.insert(h(&["c1", "e1"]), PayoffVector::ZERO);

    ExtensiveGame {
        histories,
        player_function,
        information_sets,
        payoffs,
        chance_distributions: BTreeMap::new(),
    }
}

/// The terminal history reached when both players follow `profile`.
pub fn outcome(game: &ExtensiveGame, profile: &PureProfile) -> History {
    let mut history: History = Vec::new();
    while !game.is_terminal(&history) {
        let mover = game.player_function[&history];
        let actions = game.actions(&history);
        let choice = match mover {
            Mover::Player(1) => profile.s1,
            Mover::Player(2) => {
                let sets = &game.information_sets[&2];
                let set_index = sets
                    .iter()
                    .position(|set| set.contains(&history))
                    .expect("player 2 history belongs to an information set");
                if set_index == 0 {
                    profile.s2.0
                } else {
                    profile.s2.1
                }
            }
            _ => unreachable!("gamma1 has no chance moves"),
        };
        history.push(actions[choice as usize].clone());
    }
    history
}

/// A 2x4 table of payoff vectors: two player-1 strategies against player 2's
/// four plans, columns in binary order of her two response bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bimatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub cells: Vec<Vec<PayoffVector>>,
}

impl Bimatrix {
    pub fn new(rows: Vec<String>, cols: Vec<String>, cells: Vec<Vec<PayoffVector>>) -> Self {
        assert_eq!(rows.len(), 2, "this game family is 2x4");
        assert_eq!(cols.len(), 4, "this game family is 2x4");
        assert!(cells.len() == 2 && cells.iter().all(|r| r.len() == 4));
        Self { rows, cols, cells }
    }

    pub fn cell(&self, row: usize, col: usize) -> PayoffVector {
        self.cells[row][col]
    }

    /// Cell-by-cell payoff agreement, ignoring labels.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.cells
            .iter()
            .zip(other.cells.iter())
            .all(|(a, b)| a.iter().zip(b.iter()).all(|(x, y)| x.approx_eq(y, tol)))
    }

    /// True when some row and column permutation maps `self` onto `other`.
    pub fn equal_up_to_permutation(&self, other: &Self, tol: f64) -> bool {
        let row_perms = [[0usize, 1], [1, 0]];
        let mut col_perm = [0usize, 1, 2, 3];
        let mut found = false;
        permute(&mut col_perm, 0, &mut |perm| {
            for rows in &row_perms {
                let matches = (0..2).all(|i| {
                    (0..4).all(|j| self.cells[i][j].approx_eq(&other.cells[rows[i]][perm[j]], tol))
                });
                if matches {
                    found = true;
                }
            }
        });
        found
    }

    /// Number of distinct payoff vectors among the eight cells.
    pub fn distinct_payoffs(&self, tol: f64) -> usize {
        let mut distinct: Vec<PayoffVector> = Vec::new();
        for row in &self.cells {
            for cell in row {
                if !distinct.iter().any(|seen| seen.approx_eq(cell, tol)) {
                    distinct.push(*cell);
                }
            }
        }
        distinct.len()
    }
}

fn permute(items: &mut [usize; 4], start: usize, visit: &mut impl FnMut(&[usize; 4])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// The normal representation: rows are player 1's proposals, columns player
/// 2's four pure plans, and each cell is the payoff of the reached outcome.
pub fn normal_representation(game: &ExtensiveGame) -> Bimatrix {
    let root_actions = game.actions(&Vec::new());
    let info_sets = &game.information_sets[&2];
    let set_actions: Vec<Vec<String>> = info_sets.iter().map(|set| game.actions(&set[0])).collect();

    let rows = root_actions.clone();
    let mut cols = Vec::with_capacity(4);
    let mut cells = vec![Vec::new(), Vec::new()];
    for k2 in 0..2u8 {
        for k3 in 0..2u8 {
            cols.push(format!(
                "{}{}",
                set_actions[0][k2 as usize], set_actions[1][k3 as usize]
            ));
            for s1 in 0..2u8 {
                let profile = PureProfile::new(s1, (k2, k3));
                let terminal = outcome(game, &profile);
                cells[s1 as usize].push(game.payoffs[&terminal]);
            }
        }
    }
    Bimatrix::new(rows, cols, cells)
}

/// Checks the fair-proposal mixed family: player 1 proposes the fair split
/// while player 2 mixes her always-accept plan with probability `p` and the
/// accept-fair/reject-unfair plan with probability `1 - p`. The profile is an
/// equilibrium exactly when player 1's deviation payoff `p * delta * money`
/// does not exceed `money / 2`.
pub fn verify_mixed_family(params: &GameParams, p: f64) -> bool {
    assert!((0.0..=1.0).contains(&p), "p must be a probability");
    p * params.delta * params.money <= params.money / 2.0 + PAYOFF_TOL
}

/// Checks the unfair-proposal mixed family: player 1 proposes the unfair
/// split while player 2 mixes her two accept-unfair plans with weight `q` on
/// the always-accept plan. Player 1's deviation payoff is `q * money / 2`,
/// which never exceeds `delta * money`, so every `q` passes.
pub fn verify_mixed_family_unfair(params: &GameParams, q: f64) -> bool {
    assert!((0.0..=1.0).contains(&q), "q must be a probability");
    q * params.money / 2.0 <= params.delta * params.money + PAYOFF_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::pure_nash;
    use proptest::prelude::*;

    fn h(labels: &[&str]) -> History {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn gamma1_has_expected_structure() {
        let game = build_gamma1(&GameParams::default());
        assert_eq!(game.histories.len(), 7);
        assert_eq!(game.terminal_histories().len(), 4);
        assert_eq!(game.information_sets[&2].len(), 2);
        game.validate().unwrap();
    }

    #[test]
    fn gamma1_payoffs_match_division_rules() {
        let params = GameParams::new(0.7, 1.0).unwrap();
        let game = build_gamma1(&params);
        let unfair = game.payoffs[&h(&["c1", "e0"])];
        assert!(unfair.approx_eq(&PayoffVector::new(0.7, 0.3), PAYOFF_TOL));
        assert!(game.payoffs[&h(&["c0", "d1"])].approx_eq(&PayoffVector::ZERO, PAYOFF_TOL));
        assert!(game.payoffs[&h(&["c1", "e1"])].approx_eq(&PayoffVector::ZERO, PAYOFF_TOL));
        assert!(game.payoffs[&h(&["c0", "d0"])].approx_eq(&PayoffVector::new(0.5, 0.5), PAYOFF_TOL));
    }

    #[test]
    fn validation_catches_structural_defects() {
        let broken_prefix = h(&["c0"]);
        let mut game = build_gamma1(&GameParams::default());
        game.histories.retain(|history| *history != broken_prefix);
        assert!(game.validate().is_err());

        let mut game = build_gamma1(&GameParams::default());
        game.chance_distributions
            .insert(h(&[]), vec![("c0".into(), 0.4), ("c1".into(), 0.4)]);
        assert!(game.validate().is_err());
    }

    #[test]
    fn params_are_range_checked() {
        assert!(GameParams::new(0.4, 1.0).is_err());
        assert!(GameParams::new(0.5, 1.0).is_err());
        assert!(GameParams::new(1.0, 1.0).is_err());
        assert!(GameParams::new(0.7, 0.0).is_err());
        assert!(GameParams::new(0.7, 1.0).unwrap().check_delta_prime(0.6).is_err());
        assert!(GameParams::new(0.7, 1.0).unwrap().check_delta_prime(1.0).is_err());
        assert!(GameParams::new(0.7, 1.0).unwrap().check_delta_prime(0.8).is_ok());
    }

    #[test]
    fn outcome_follows_the_plans() {
        let game = build_gamma1(&GameParams::default());
        assert_eq!(outcome(&game, &PureProfile::new(1, (0, 0))), h(&["c1", "e0"]));
        assert_eq!(outcome(&game, &PureProfile::new(0, (0, 1))), h(&["c0", "d0"]));
        assert_eq!(outcome(&game, &PureProfile::new(0, (1, 0))), h(&["c0", "d1"]));
    }

    #[test]
    fn normal_representation_agrees_with_outcome_function() {
        let params = GameParams::new(0.7, 1.0).unwrap();
        let game = build_gamma1(&params);
        let matrix = normal_representation(&game);
        assert_eq!(matrix.rows, vec!["c0", "c1"]);
        assert_eq!(matrix.cols, vec!["d0e0", "d0e1", "d1e0", "d1e1"]);
        // Every cell must equal the payoff of the outcome reached by its profile.
        for (row, s1) in (0..2u8).enumerate() {
            for (col, (k2, k3)) in [(0, 0), (0, 1), (1, 0), (1, 1)].iter().enumerate() {
                let terminal = outcome(&game, &PureProfile::new(s1, (*k2, *k3)));
                assert!(matrix.cell(row, col).approx_eq(&game.payoffs[&terminal], PAYOFF_TOL));
            }
        }
        assert!(matrix.cell(0, 0).approx_eq(&params.fair(), PAYOFF_TOL));
        assert!(matrix.cell(1, 1).approx_eq(&PayoffVector::ZERO, PAYOFF_TOL));
        assert!(matrix.cell(1, 2).approx_eq(&params.unfair(), PAYOFF_TOL));
    }

    #[test]
    fn mixed_family_bound_is_half_over_delta() {
        let params = GameParams::new(0.7, 1.0).unwrap();
        assert!(verify_mixed_family(&params, 0.5));
        assert!(!verify_mixed_family(&params, 0.9));
        assert!(verify_mixed_family(&params, 0.0));
        // Boundary p = 1/(2 delta).
        assert!(verify_mixed_family(&params, 1.0 / 1.4));
    }

    #[test]
    fn unfair_mixed_family_always_passes() {
        let params = GameParams::new(0.55, 1.0).unwrap();
        for q in [0.0, 0.25, 0.5, 1.0] {
            assert!(verify_mixed_family_unfair(&params, q));
        }
    }

    #[test]
    fn bimatrix_json_round_trips() {
        let params = GameParams::new(0.7, 1.0).unwrap();
        let matrix = normal_representation(&build_gamma1(&params));
        let json = serde_json::to_string(&matrix).unwrap();
        let back: Bimatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(matrix, back);
    }

    proptest! {
        #[test]
        fn pure_equilibria_are_stable_across_delta(delta in 0.501..0.999f64) {
            let params = GameParams::new(delta, 1.0).unwrap();
            let game = build_gamma1(&params);
            let report = pure_nash(&normal_representation(&game));
            let labels: Vec<(String, String)> = report
                .pure_ne
                .iter()
                .map(|cell| (cell.row.clone(), cell.col.clone()))
                .collect();
            let expected = vec![
                ("c0".to_string(), "d0e1".to_string()),
                ("c1".to_string(), "d0e0".to_string()),
                ("c1".to_string(), "d1e0".to_string()),
            ];
            prop_assert_eq!(labels, expected);
            prop_assert_eq!(report.dominant_column.as_deref(), Some("d0e0"));
            // Every equilibrium payoff is the fair or the unfair division.
            for cell in &report.pure_ne {
                let is_fair = cell.payoff.approx_eq(&params.fair(), PAYOFF_TOL);
                let is_unfair = cell.payoff.approx_eq(&params.unfair(), PAYOFF_TOL);
                prop_assert!(is_fair || is_unfair);
            }
        }
    }
}
