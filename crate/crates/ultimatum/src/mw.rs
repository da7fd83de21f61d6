//! The identity/bit-flip quantization of the ultimatum game.
//!
//! Players share a three-qubit initial state; player 1 applies `σ0` or `σ1`
//! to qubit 1, player 2 applies one to each of qubits 2 and 3. Expected
//! payoffs weight the fair division by the probability of observing the
//! first two qubits in `00` and the unfair division by the probability of
//! observing qubits 1 and 3 in `1...0`:
//!
//! `E1 = (money/2) Σ_{x3} |<0 0 x3|ψ_fin>|^2 + delta·money Σ_{x2} |<1 x2 0|ψ_fin>|^2`
//!
//! and `E2` likewise with `(1 - delta)`. With a computational basis state as
//! the initial state this reproduces the classical game; superposed initial
//! states change both the payoffs and the equilibrium structure.

use serde::{Deserialize, Serialize};

use crate::classical::{Bimatrix, GameParams, PayoffVector};
use crate::error::{Error, Result};
use crate::qstate::{apply, basis_index, pauli, tensor3, PureState, C64, DIM};

/// The quantized game: division parameters plus a shared initial state.
#[derive(Clone, Copy, Debug)]
pub struct MWGame {
    pub params: GameParams,
    pub initial_state: PureState,
}

impl MWGame {
    pub fn new(params: GameParams, initial_state: PureState) -> Self {
        Self {
            params,
            initial_state,
        }
    }
}

/// A strategy profile: operator indices for qubits 1, 2 and 3. Qubit 1
/// belongs to player 1, qubits 2 and 3 to player 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MWProfile {
    pub kappa1: u8,
    pub kappa2: u8,
    pub kappa3: u8,
}

impl MWProfile {
    pub fn new(kappa1: u8, kappa2: u8, kappa3: u8) -> Self {
        assert!(
            kappa1 <= 1 && kappa2 <= 1 && kappa3 <= 1,
            "operator indices must be 0 or 1"
        );
        Self {
            kappa1,
            kappa2,
            kappa3,
        }
    }

    /// All eight profiles in row-major matrix order.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..8u8).map(|bits| Self::new(bits >> 2, (bits >> 1) & 1, bits & 1))
    }

    /// Row index in the payoff matrix (player 1's strategy).
    pub fn row(&self) -> usize {
        self.kappa1 as usize
    }

    /// Column index in the payoff matrix (player 2's strategy pair, binary order).
    pub fn col(&self) -> usize {
        (2 * self.kappa2 + self.kappa3) as usize
    }

    pub fn row_label(&self) -> String {
        format!("σ{}", self.kappa1)
    }

    pub fn col_label(&self) -> String {
        format!("σ{}⊗σ{}", self.kappa2, self.kappa3)
    }
}

/// Probability weights of the fair and the unfair division in a final state:
/// the squared amplitudes at `|00x3>` and at `|1x2,0>` respectively.
pub fn fair_unfair_weights(state: &PureState) -> (f64, f64) {
    let fair = state.amplitude(basis_index(0, 0, 0)).norm_sqr()
        + state.amplitude(basis_index(0, 0, 1)).norm_sqr();
    let unfair = state.amplitude(basis_index(1, 0, 0)).norm_sqr()
        + state.amplitude(basis_index(1, 1, 0)).norm_sqr();
    (fair, unfair)
}

/// Expected payoff of one profile.
pub fn mw_payoff(game: &MWGame, profile: &MWProfile) -> PayoffVector {
    let op = tensor3(
        &pauli(profile.kappa1),
        &pauli(profile.kappa2),
        &pauli(profile.kappa3),
    );
    let final_state = apply(&op, &game.initial_state);
    let (fair, unfair) = fair_unfair_weights(&final_state);
    game.params
        .fair()
        .scaled(fair)
        .add(&game.params.unfair().scaled(unfair))
}

/// The 2x4 payoff matrix over all eight profiles, rows indexed by player 1's
/// operator and columns by player 2's pair in binary order.
pub fn mw_matrix(game: &MWGame) -> Bimatrix {
    let rows = vec!["σ0".to_string(), "σ1".to_string()];
    let cols = vec![
        "σ0⊗σ0".to_string(),
        "σ0⊗σ1".to_string(),
        "σ1⊗σ0".to_string(),
        "σ1⊗σ1".to_string(),
    ];
    let mut cells = vec![vec![PayoffVector::ZERO; 4]; 2];
    for profile in MWProfile::all() {
        cells[profile.row()][profile.col()] = mw_payoff(game, &profile);
    }
    Bimatrix::new(rows, cols, cells)
}

/// Named initial states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PresetName {
    /// A computational basis state `|x1 x2 x3>`.
    Basis(u8, u8, u8),
    /// The four-term superposition `(|000> + |001> + |100> + |110>) / 2`.
    PsiIn1,
    /// The separable state `sqrt(1/(2δ'))|000> + sqrt(1 - 1/(2δ'))|001>`
    /// with `delta < delta_prime < 1`.
    PsiIn2 { delta_prime: f64 },
    /// The product state `|+>|+>|+>`.
    PlusPlusPlus,
}

impl PresetName {
    /// Parses a preset label: `basis000` .. `basis111`, `psi_in1`, `psi_in2`
    /// (using the supplied `delta_prime`), or `plus_plus_plus`.
    pub fn parse(name: &str, delta_prime: f64) -> Result<Self> {
        if let Some(bits) = name.strip_prefix("basis") {
            let bytes: Vec<u8> = bits.bytes().collect();
            if bytes.len() == 3 && bytes.iter().all(|b| *b == b'0' || *b == b'1') {
                return Ok(Self::Basis(bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0'));
            }
            return Err(Error::UnknownPreset(name.to_string()));
        }
        match name {
            "psi_in1" => Ok(Self::PsiIn1),
            "psi_in2" => Ok(Self::PsiIn2 { delta_prime }),
            "plus_plus_plus" => Ok(Self::PlusPlusPlus),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Basis(x1, x2, x3) => format!("basis{x1}{x2}{x3}"),
            Self::PsiIn1 => "psi_in1".to_string(),
            Self::PsiIn2 { delta_prime } => format!("psi_in2(delta_prime={delta_prime})"),
            Self::PlusPlusPlus => "plus_plus_plus".to_string(),
        }
    }
}

/// A named, normalized initial state.
#[derive(Clone, Debug)]
pub struct StatePreset {
    pub name: String,
    pub state: PureState,
}

/// Builds a preset state, validating `delta < delta_prime < 1` where needed.
pub fn preset(name: &PresetName, params: &GameParams) -> Result<StatePreset> {
    let state = match name {
        PresetName::Basis(x1, x2, x3) => {
            assert!(*x1 <= 1 && *x2 <= 1 && *x3 <= 1, "basis bits must be 0 or 1");
            PureState::basis(*x1, *x2, *x3)
        }
        PresetName::PsiIn1 => {
            let mut amps = [C64::new(0.0, 0.0); DIM];
            for x in [
                basis_index(0, 0, 0),
                basis_index(0, 0, 1),
                basis_index(1, 0, 0),
                basis_index(1, 1, 0),
            ] {
                amps[x] = C64::new(0.5, 0.0);
            }
            PureState::new(amps)?
        }
        PresetName::PsiIn2 { delta_prime } => {
            let delta_prime = params.check_delta_prime(*delta_prime)?;
            let weight = 1.0 / (2.0 * delta_prime);
            let mut amps = [C64::new(0.0, 0.0); DIM];
            amps[basis_index(0, 0, 0)] = C64::new(weight.sqrt(), 0.0);
            amps[basis_index(0, 0, 1)] = C64::new((1.0 - weight).sqrt(), 0.0);
            PureState::new(amps)?
        }
        PresetName::PlusPlusPlus => {
            let amp = C64::new(1.0 / 8.0_f64.sqrt(), 0.0);
            PureState::new([amp; DIM])?
        }
    };
    Ok(StatePreset {
        name: name.label(),
        state,
    })
}

/// JSON description of an initial state: either a preset name or eight
/// `[re, im]` amplitude pairs. Amplitudes whose squared norm differs from 1
/// by more than `1e-9` are rejected.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Preset { preset: String },
    Amplitudes { amplitudes: [[f64; 2]; 8] },
}

/// Resolves a state description against the game parameters.
pub fn state_from_spec(spec: &StateSpec, params: &GameParams, delta_prime: f64) -> Result<StatePreset> {
    match spec {
        StateSpec::Preset { preset: name } => {
            let name = PresetName::parse(name, delta_prime)?;
            preset(&name, params)
        }
        StateSpec::Amplitudes { amplitudes } => {
            let mut amps = [C64::new(0.0, 0.0); DIM];
            for (x, pair) in amplitudes.iter().enumerate() {
                amps[x] = C64::new(pair[0], pair[1]);
            }
            Ok(StatePreset {
                name: "custom".to_string(),
                state: PureState::new(amps)?,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{build_gamma1, normal_representation, PAYOFF_TOL};
    use crate::equilibrium::{pure_nash, weakly_dominant_column};
    use crate::qstate::ALGEBRA_TOL;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params() -> GameParams {
        GameParams::new(0.7, 1.0).unwrap()
    }

    fn psi_in1() -> PureState {
        preset(&PresetName::PsiIn1, &params()).unwrap().state
    }

    fn random_state(rng: &mut ChaCha8Rng) -> PureState {
        let mut amps = [C64::new(0.0, 0.0); DIM];
        let mut norm_sqr = 0.0;
        for amp in amps.iter_mut() {
            *amp = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            norm_sqr += amp.norm_sqr();
        }
        let scale = 1.0 / norm_sqr.sqrt();
        for amp in amps.iter_mut() {
            *amp *= scale;
        }
        PureState::new(amps).unwrap()
    }

    /// Direct amplitude bookkeeping: applying bit flips only permutes basis
    /// labels, so the payoff can be read off the initial amplitudes without
    /// any matrix arithmetic.
    fn bookkeeping_payoff(game: &MWGame, profile: &MWProfile) -> PayoffVector {
        let lambda = |x1: u8, x2: u8, x3: u8| {
            game.initial_state
                .amplitude(basis_index(
                    x1 ^ profile.kappa1,
                    x2 ^ profile.kappa2,
                    x3 ^ profile.kappa3,
                ))
                .norm_sqr()
        };
        let fair = lambda(0, 0, 0) + lambda(0, 0, 1);
        let unfair = lambda(1, 0, 0) + lambda(1, 1, 0);
        game.params
            .fair()
            .scaled(fair)
            .add(&game.params.unfair().scaled(unfair))
    }

    #[test]
    fn payoff_matches_amplitude_formula_for_middle_flip() {
        // Against (σ0, (σ1, σ0)) the final amplitudes are the initial ones
        // with qubit 2 negated, so E1 = (money/2)(|λ010|^2 + |λ011|^2)
        // + delta*money*(|λ100|^2 + |λ110|^2).
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let game = MWGame::new(params(), random_state(&mut rng));
            let amp2 = |x: usize| game.initial_state.amplitude(x).norm_sqr();
            let expected_e1 = 0.5 * (amp2(2) + amp2(3)) + 0.7 * (amp2(4) + amp2(6));
            let payoff = mw_payoff(&game, &MWProfile::new(0, 1, 0));
            assert!((payoff.p1 - expected_e1).abs() <= ALGEBRA_TOL);
        }
    }

    #[test]
    fn basis_state_reproduces_unfair_acceptance() {
        let game = MWGame::new(params(), PureState::basis(0, 0, 0));
        let payoff = mw_payoff(&game, &MWProfile::new(1, 0, 0));
        assert!(payoff.approx_eq(&params().unfair(), ALGEBRA_TOL));
    }

    #[test]
    fn four_term_state_splits_fair_and_unfair_evenly() {
        let game = MWGame::new(params(), psi_in1());
        let payoff = mw_payoff(&game, &MWProfile::new(0, 0, 0));
        let expected = params().fair().add(&params().unfair()).scaled(0.5);
        assert!(payoff.approx_eq(&expected, ALGEBRA_TOL));
    }

    #[test]
    fn basis_000_matrix_equals_classical_table() {
        let game = MWGame::new(params(), PureState::basis(0, 0, 0));
        let classical = normal_representation(&build_gamma1(&params()));
        assert!(mw_matrix(&game).approx_eq(&classical, ALGEBRA_TOL));
    }

    #[test]
    fn other_basis_states_permute_the_classical_table() {
        let classical = normal_representation(&build_gamma1(&params()));
        for x in 1..DIM {
            let (x1, x2, x3) = crate::qstate::basis_bits(x);
            let game = MWGame::new(params(), PureState::basis(x1, x2, x3));
            let matrix = mw_matrix(&game);
            assert!(matrix.equal_up_to_permutation(&classical, ALGEBRA_TOL));
            // The permutation is the XOR relabeling by the basis bits.
            for profile in MWProfile::all() {
                let classical_cell = classical.cell(
                    (profile.kappa1 ^ x1) as usize,
                    (2 * (profile.kappa2 ^ x2) + (profile.kappa3 ^ x3)) as usize,
                );
                assert!(matrix
                    .cell(profile.row(), profile.col())
                    .approx_eq(&classical_cell, ALGEBRA_TOL));
            }
        }
    }

    #[test]
    fn four_term_state_matrix_has_five_distinct_payoffs() {
        let game = MWGame::new(params(), psi_in1());
        assert_eq!(mw_matrix(&game).distinct_payoffs(PAYOFF_TOL), 5);
    }

    #[test]
    fn four_term_state_equilibria() {
        let game = MWGame::new(params(), psi_in1());
        let report = pure_nash(&mw_matrix(&game));
        let labels: Vec<(&str, &str)> = report
            .pure_ne
            .iter()
            .map(|cell| (cell.row.as_str(), cell.col.as_str()))
            .collect();
        assert_eq!(
            labels,
            vec![("σ0", "σ0⊗σ0"), ("σ1", "σ0⊗σ1"), ("σ1", "σ1⊗σ1")]
        );
        let half_sum = params().fair().add(&params().unfair()).scaled(0.5);
        let quarter_sum = half_sum.scaled(0.5);
        assert!(report.pure_ne[0].payoff.approx_eq(&half_sum, ALGEBRA_TOL));
        assert!(report.pure_ne[1].payoff.approx_eq(&quarter_sum, ALGEBRA_TOL));
        assert!(report.pure_ne[2].payoff.approx_eq(&quarter_sum, ALGEBRA_TOL));
        assert_eq!(report.dominant_column.as_deref(), Some("σ0⊗σ0"));
        let pareto = report.pareto_best.as_ref().unwrap();
        assert_eq!((pareto.row.as_str(), pareto.col.as_str()), ("σ0", "σ0⊗σ0"));
    }

    #[test]
    fn separable_state_yields_fair_division_equilibrium() {
        let preset = preset(&PresetName::PsiIn2 { delta_prime: 0.8 }, &params()).unwrap();
        let game = MWGame::new(params(), preset.state);
        let matrix = mw_matrix(&game);
        let report = pure_nash(&matrix);
        assert!(report
            .pure_ne
            .iter()
            .any(|cell| cell.row == "σ0" && cell.col == "σ0⊗σ0"));
        assert!(matrix.cell(0, 0).approx_eq(&PayoffVector::new(0.5, 0.5), ALGEBRA_TOL));
        assert_eq!(weakly_dominant_column(&matrix).as_deref(), Some("σ0⊗σ0"));
        // Player 1's deviation to σ1 earns delta/(2 delta') < 1/2.
        let deviation = mw_payoff(&game, &MWProfile::new(1, 0, 0));
        assert!((deviation.p1 - 0.7 / 1.6).abs() <= ALGEBRA_TOL);
        assert!(deviation.p1 < 0.5);
    }

    #[test]
    fn plus_plus_plus_payoffs_do_not_depend_on_strategies() {
        let preset = preset(&PresetName::PlusPlusPlus, &params()).unwrap();
        let game = MWGame::new(params(), preset.state);
        let matrix = mw_matrix(&game);
        let first = matrix.cell(0, 0);
        for row in 0..2 {
            for col in 0..4 {
                assert!(matrix.cell(row, col).approx_eq(&first, ALGEBRA_TOL));
            }
        }
    }

    #[test]
    fn preset_amplitudes_match_their_definitions() {
        let four = psi_in1();
        for x in [0, 1, 4, 6] {
            assert!((four.amplitude(x).norm_sqr() - 0.25).abs() <= ALGEBRA_TOL);
        }
        let separable = preset(&PresetName::PsiIn2 { delta_prime: 0.8 }, &params())
            .unwrap()
            .state;
        assert!((separable.amplitude(0).norm_sqr() - 0.625).abs() <= ALGEBRA_TOL);
        assert!((separable.amplitude(1).norm_sqr() - 0.375).abs() <= ALGEBRA_TOL);
        let plus = preset(&PresetName::PlusPlusPlus, &params()).unwrap().state;
        for x in 0..DIM {
            assert!((plus.amplitude(x).norm_sqr() - 0.125).abs() <= ALGEBRA_TOL);
        }
    }

    #[test]
    fn separable_preset_requires_valid_delta_prime() {
        assert!(preset(&PresetName::PsiIn2 { delta_prime: 0.7 }, &params()).is_err());
        assert!(preset(&PresetName::PsiIn2 { delta_prime: 0.6 }, &params()).is_err());
        assert!(preset(&PresetName::PsiIn2 { delta_prime: 1.0 }, &params()).is_err());
    }

    #[test]
    fn payoff_agrees_with_bookkeeping_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let game = MWGame::new(params(), random_state(&mut rng));
            for profile in MWProfile::all() {
                let simulated = mw_payoff(&game, &profile);
                let direct = bookkeeping_payoff(&game, &profile);
                assert!(simulated.approx_eq(&direct, ALGEBRA_TOL));
            }
        }
    }

    #[test]
    fn state_spec_accepts_presets_and_amplitudes() {
        let spec: StateSpec = serde_json::from_str(r#"{"preset": "psi_in1"}"#).unwrap();
        let loaded = state_from_spec(&spec, &params(), 0.8).unwrap();
        assert_eq!(loaded.name, "psi_in1");

        let json = r#"{"amplitudes": [[0.5,0],[0.5,0],[0,0],[0,0],[0.5,0],[0,0],[0.5,0],[0,0]]}"#;
        let spec: StateSpec = serde_json::from_str(json).unwrap();
        let loaded = state_from_spec(&spec, &params(), 0.8).unwrap();
        assert!((loaded.state.amplitude(0).norm_sqr() - 0.25).abs() <= ALGEBRA_TOL);

        let bad = r#"{"amplitudes": [[0.9,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#;
        let spec: StateSpec = serde_json::from_str(bad).unwrap();
        assert!(state_from_spec(&spec, &params(), 0.8).is_err());

        assert!(PresetName::parse("basis10", 0.8).is_err());
        assert!(PresetName::parse("unknown", 0.8).is_err());
    }

    prop_compose! {
        fn arb_state()(parts in prop::array::uniform16(-1.0..1.0f64)) -> PureState {
            let mut amps = [C64::new(0.0, 0.0); DIM];
            let mut norm_sqr = 0.0;
            for x in 0..DIM {
                amps[x] = C64::new(parts[2 * x], parts[2 * x + 1]);
                norm_sqr += amps[x].norm_sqr();
            }
            if norm_sqr < 1e-9 {
                amps[0] = C64::new(1.0, 0.0);
                norm_sqr += 1.0;
            }
            let scale = 1.0 / norm_sqr.sqrt();
            for amp in amps.iter_mut() {
                *amp *= scale;
            }
            PureState::new(amps).unwrap()
        }
    }

    proptest! {
        #[test]
        fn payoff_bounds_hold(state in arb_state(), delta in 0.501..0.999f64, bits in 0..8u8) {
            let params = GameParams::new(delta, 1.0).unwrap();
            let game = MWGame::new(params, state);
            let profile = MWProfile::new(bits >> 2, (bits >> 1) & 1, bits & 1);
            let payoff = mw_payoff(&game, &profile);

            // Player 1 never earns less than player 2, and the total never
            // exceeds the stake; the total equals the stake exactly when the
            // fair and unfair weights exhaust the distribution.
            prop_assert!(payoff.p1 >= payoff.p2 - ALGEBRA_TOL);
            prop_assert!(payoff.p1 + payoff.p2 <= params.money + ALGEBRA_TOL);
            prop_assert!(payoff.p2 <= params.money / 2.0 + ALGEBRA_TOL);

            let op = tensor3(&pauli(profile.kappa1), &pauli(profile.kappa2), &pauli(profile.kappa3));
            let (fair, unfair) = fair_unfair_weights(&apply(&op, &game.initial_state));
            let total = payoff.p1 + payoff.p2;
            prop_assert!((total - params.money * (fair + unfair)).abs() <= ALGEBRA_TOL);
        }
    }
}
