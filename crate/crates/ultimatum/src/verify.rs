//! The verification suite: every quantitative claim the library is built
//! around, packaged as named, seeded checks that report pass/fail with
//! measured values. The `verify` subcommand and the acceptance test target
//! both run [`run_all`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::classical::{build_gamma1, normal_representation, GameParams, PayoffVector};
use crate::equilibrium::{grid_deviation_search, pure_nash, weakly_dominant_column};
use crate::ewl::{
    classical_embedding, ewl_payoff_closed, ewl_payoff_numeric, sample_subset1, sample_subset2,
    EWLGame, EWLProfile,
};
use crate::mw::{mw_matrix, mw_payoff, preset, MWGame, MWProfile, PresetName};
use crate::qstate::{basis_bits, to_density, PureState, C64, DIM};
use crate::sequential::{build_tree, check_outcome_equivalence, OutcomeOperator};

/// Tolerance for claims checked to machine precision.
const EXACT_TOL: f64 = 1e-12;
/// Tolerance for the closed-form / simulation comparison.
const ROUTE_TOL: f64 = 1e-9;

/// Settings shared by all randomized checks.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct VerifySettings {
    /// Base seed; each claim derives its own stream from it.
    pub seed: u64,
    /// Fine grid step (radians) for deviation searches.
    pub grid_step: f64,
    /// Stake used throughout the suite.
    pub money: f64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        Self {
            seed: 0,
            grid_step: PI / 60.0,
            money: 1.0,
        }
    }
}

/// Outcome of one claim.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl ClaimResult {
    fn new(id: usize, name: &'static str, passed: bool, details: String) -> Self {
        Self {
            id,
            name,
            passed,
            details,
        }
    }
}

fn claim_rng(settings: &VerifySettings, claim: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(claim.wrapping_mul(0x9E3779B97F4A7C15)))
}

fn random_state(rng: &mut ChaCha8Rng) -> PureState {
    let mut amps = [C64::new(0.0, 0.0); DIM];
    let mut norm_sqr = 0.0;
    for amp in amps.iter_mut() {
        *amp = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        norm_sqr += amp.norm_sqr();
    }
    if norm_sqr < 1e-9 {
        amps[0] = C64::new(1.0, 0.0);
        norm_sqr += 1.0;
    }
    let scale = 1.0 / norm_sqr.sqrt();
    for amp in amps.iter_mut() {
        *amp *= scale;
    }
    PureState::new(amps).expect("normalized by construction")
}

/// Runs every claim in order.
pub fn run_all(settings: &VerifySettings) -> Vec<ClaimResult> {
    vec![
        claim_classical_equilibria(settings),
        claim_mw_classical_limit(settings),
        claim_mw_four_term_state(settings),
        claim_mw_separable_state(settings),
        claim_mw_uniform_superposition(settings),
        claim_ewl_routes_agree(settings),
        claim_ewl_classical_embedding(settings),
        claim_ewl_fair_families(settings),
        claim_ewl_annihilation(settings),
        claim_outcome_equivalence(settings),
        claim_tree_extraction(settings),
        claim_payoff_bounds(settings),
    ]
}

/// Claim 1: The classical game has exactly the three pure equilibria
/// `(c0,d0e1)`, `(c1,d0e0)`, `(c1,d1e0)`, and weak dominance selects
/// `(c1,d0e0)`, for several division factors.
pub fn claim_classical_equilibria(settings: &VerifySettings) -> ClaimResult {
    let mut passed = true;
    let mut details = Vec::new();
    for delta in [0.55, 0.7, 0.9] {
        let params = GameParams::new(delta, settings.money).expect("valid params");
        let report = pure_nash(&normal_representation(&build_gamma1(&params)));
        let labels: Vec<(String, String)> = report
            .pure_ne
            .iter()
            .map(|cell| (cell.row.clone(), cell.col.clone()))
            .collect();
        let expected = [
            ("c0".to_string(), "d0e1".to_string()),
            ("c1".to_string(), "d0e0".to_string()),
            ("c1".to_string(), "d1e0".to_string()),
        ];
        let set_ok = labels == expected;
        let dominant_ok = report.dominant_column.as_deref() == Some("d0e0");
        let selected_ok = report
            .pure_ne
            .iter()
            .any(|cell| cell.row == "c1" && Some(cell.col.as_str()) == report.dominant_column.as_deref());
        passed &= set_ok && dominant_ok && selected_ok;
        details.push(format!(
            "delta={delta}: equilibria {}, dominance selects (c1,d0e0) {}",
            if set_ok { "exact" } else { "WRONG" },
            if dominant_ok && selected_ok { "yes" } else { "NO" }
        ));
    }
    ClaimResult::new(
        1,
        "classical pure equilibria and weak dominance",
        passed,
        details.join("; "),
    )
}

/// Claim 2: With `|000>` the quantum matrix equals the classical table cell by
/// cell; with any other basis state it equals it up to a row/column
/// permutation.
pub fn claim_mw_classical_limit(settings: &VerifySettings) -> ClaimResult {
    let params = GameParams::new(0.7, settings.money).expect("valid params");
    let classical = normal_representation(&build_gamma1(&params));

    let zero_game = MWGame::new(params, PureState::basis(0, 0, 0));
    let exact = mw_matrix(&zero_game).approx_eq(&classical, EXACT_TOL);

    let mut permuted = true;
    for x in 1..DIM {
        let (x1, x2, x3) = basis_bits(x);
        let game = MWGame::new(params, PureState::basis(x1, x2, x3));
        permuted &= mw_matrix(&game).equal_up_to_permutation(&classical, EXACT_TOL);
    }
    ClaimResult::new(
        2,
        "basis-state quantum games reduce to the classical game",
        exact && permuted,
        format!(
            "|000> table identical: {exact}; other 7 basis states permutation-equivalent: {permuted}"
        ),
    )
}

/// Claim 3: With the four-term superposition: `(σ0, σ0⊗σ0)` is a pure equilibrium
/// paying `(fair+unfair)/2` and Pareto-dominates the two further equilibria
/// paying `(fair+unfair)/4`; player 2's `σ0⊗σ0` weakly dominates.
pub fn claim_mw_four_term_state(settings: &VerifySettings) -> ClaimResult {
    let params = GameParams::new(0.7, settings.money).expect("valid params");
    let state = preset(&PresetName::PsiIn1, &params).expect("preset").state;
    let matrix = mw_matrix(&MWGame::new(params, state));
    let report = pure_nash(&matrix);

    let labels: Vec<(String, String)> = report
        .pure_ne
        .iter()
        .map(|cell| (cell.row.clone(), cell.col.clone()))
        .collect();
    let expected = [
        ("σ0".to_string(), "σ0⊗σ0".to_string()),
        ("σ1".to_string(), "σ0⊗σ1".to_string()),
        ("σ1".to_string(), "σ1⊗σ1".to_string()),
    ];
    let set_ok = labels == expected;

    let half = params.fair().add(&params.unfair()).scaled(0.5);
    let quarter = half.scaled(0.5);
    let payoff_ok = set_ok
        && report.pure_ne[0].payoff.approx_eq(&half, EXACT_TOL)
        && report.pure_ne[1].payoff.approx_eq(&quarter, EXACT_TOL)
        && report.pure_ne[2].payoff.approx_eq(&quarter, EXACT_TOL);

    let pareto_ok = report
        .pareto_best
        .as_ref()
        .is_some_and(|cell| cell.row == "σ0" && cell.col == "σ0⊗σ0");
    let dominant_ok = report.dominant_column.as_deref() == Some("σ0⊗σ0");

    ClaimResult::new(
        3,
        "four-term superposition reshapes the equilibria",
        set_ok && payoff_ok && pareto_ok && dominant_ok,
        format!(
            "equilibrium set exact: {set_ok}; payoffs (fair+unfair)/2 and /4: {payoff_ok}; \
             Pareto-best (σ0,σ0⊗σ0): {pareto_ok}; dominant column σ0⊗σ0: {dominant_ok}"
        ),
    )
}

/// Claim 4: With the separable two-term state (`delta = 0.7`, `delta' = 0.8`):
/// `(σ0, σ0⊗σ0)` is an equilibrium paying exactly half the stake to each
/// player, player 1's deviation earns `delta/(2 delta') = 0.4375` of the
/// stake, and `σ0⊗σ0` is the unique weakly dominant column.
pub fn claim_mw_separable_state(settings: &VerifySettings) -> ClaimResult {
    let params = GameParams::new(0.7, settings.money).expect("valid params");
    let state = preset(&PresetName::PsiIn2 { delta_prime: 0.8 }, &params)
        .expect("preset")
        .state;
    let game = MWGame::new(params, state);
    let matrix = mw_matrix(&game);
    let report = pure_nash(&matrix);

    let fair = PayoffVector::new(settings.money / 2.0, settings.money / 2.0);
    let ne_ok = report
        .pure_ne
        .iter()
        .any(|cell| cell.row == "σ0" && cell.col == "σ0⊗σ0" && cell.payoff.approx_eq(&fair, EXACT_TOL));

    let deviation = mw_payoff(&game, &MWProfile::new(1, 0, 0));
    let expected_deviation = 0.4375 * settings.money;
    let deviation_ok = (deviation.p1 - expected_deviation).abs() <= EXACT_TOL
        && deviation.p1 < settings.money / 2.0;

    let dominant_ok = weakly_dominant_column(&matrix).as_deref() == Some("σ0⊗σ0");

    ClaimResult::new(
        4,
        "separable state secures the fair division",
        ne_ok && deviation_ok && dominant_ok,
        format!(
            "(σ0,σ0⊗σ0) equilibrium at (money/2, money/2): {ne_ok}; \
             deviation payoff {:.6} < money/2: {deviation_ok}; unique dominant column: {dominant_ok}",
            deviation.p1
        ),
    )
}

/// Claim 5: With `|+>|+>|+>` all eight profiles give the identical payoff vector.
pub fn claim_mw_uniform_superposition(settings: &VerifySettings) -> ClaimResult {
    let params = GameParams::new(0.7, settings.money).expect("valid params");
    let state = preset(&PresetName::PlusPlusPlus, &params).expect("preset").state;
    let matrix = mw_matrix(&MWGame::new(params, state));
    let first = matrix.cell(0, 0);
    let mut worst: f64 = 0.0;
    for row in 0..2 {
        for col in 0..4 {
            worst = worst.max(matrix.cell(row, col).max_abs_diff(&first));
        }
    }
    ClaimResult::new(
        5,
        "uniform superposition makes strategies irrelevant",
        worst <= EXACT_TOL,
        format!("max cell-to-cell deviation {worst:e}"),
    )
}

/// Claim 6: The closed-form payoff expression agrees with entangled-basis state
/// evolution on 1000 seeded random profiles.
pub fn claim_ewl_routes_agree(settings: &VerifySettings) -> ClaimResult {
    let game = EWLGame::new(GameParams::new(0.7, settings.money).expect("valid params"));
    let mut rng = claim_rng(settings, 6);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let profile = EWLProfile::random(&mut rng);
        let closed = ewl_payoff_closed(&game, &profile);
        let numeric = ewl_payoff_numeric(&game, &profile);
        worst = worst.max(closed.max_abs_diff(&numeric));
    }
    ClaimResult::new(
        6,
        "closed form matches state-vector simulation",
        worst <= ROUTE_TOL,
        format!("1000 profiles, max disagreement {worst:e}"),
    )
}

/// Claim 7: Restricting to `θ ∈ {0, π}`, `β = 0` reproduces the classical table,
/// and the behavioral embedding `(p, q, r)` matches
/// `fair·p·q + unfair·(1-p)·r` on a 5x5x5 probability grid.
pub fn claim_ewl_classical_embedding(settings: &VerifySettings) -> ClaimResult {
    let params = GameParams::new(0.7, settings.money).expect("valid params");
    let game = EWLGame::new(params);
    let classical = normal_representation(&build_gamma1(&params));

    let mut corners_ok = true;
    for k1 in 0..2usize {
        for k2 in 0..2usize {
            for k3 in 0..2usize {
                let profile = EWLProfile::new(
                    k1 as f64 * PI,
                    0.0,
                    k2 as f64 * PI,
                    0.0,
                    k3 as f64 * PI,
                    0.0,
                )
                .expect("corner profile");
                let cell = classical.cell(k1, 2 * k2 + k3);
                corners_ok &= ewl_payoff_closed(&game, &profile).approx_eq(&cell, EXACT_TOL);
            }
        }
    }

    let mut worst: f64 = 0.0;
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    for p in grid {
        for q in grid {
            for r in grid {
                let (expected, profile) = classical_embedding(&params, p, q, r).expect("probabilities");
                let formula = params
                    .fair()
                    .scaled(p * q)
                    .add(&params.unfair().scaled((1.0 - p) * r));
                worst = worst.max(expected.max_abs_diff(&formula));
                worst = worst.max(ewl_payoff_closed(&game, &profile).max_abs_diff(&formula));
            }
        }
    }
    ClaimResult::new(
        7,
        "classical strategies embed exactly",
        corners_ok && worst <= EXACT_TOL,
        format!("8 corner profiles match table: {corners_ok}; 125-point behavioral grid max error {worst:e}"),
    )
}

/// Claim 8: Seeded members of both fair families earn exactly the fair division
/// and pass the grid deviation search for several division factors, while
/// the profile mirroring the classical unfair equilibrium fails it: player 2
/// improves from `(1-δ)` to `1/2` of the stake via `(π, π/2, π, 0)`.
pub fn claim_ewl_fair_families(settings: &VerifySettings) -> ClaimResult {
    let mut rng = claim_rng(settings, 8);
    let mut passed = true;
    let mut details = Vec::new();
    for delta in [0.6, 0.7, 0.9] {
        let params = GameParams::new(delta, settings.money).expect("valid params");
        let game = EWLGame::new(params);
        let fair = params.fair();

        let mut family_ok = true;
        for _ in 0..50 {
            for member in [sample_subset1(&mut rng), sample_subset2(&mut rng)] {
                let payoff = ewl_payoff_closed(&game, &member);
                family_ok &= payoff.approx_eq(&fair, EXACT_TOL);
                family_ok &= grid_deviation_search(&game, &member, settings.grid_step).is_grid_ne();
            }
        }

        let unfair_profile = EWLProfile::new(PI, 0.0, 0.0, 0.0, 0.0, 0.0).expect("profile");
        let result = grid_deviation_search(&game, &unfair_profile, settings.grid_step);
        let required_gain = (delta - 0.5) * settings.money;
        let fails_ok = !result.is_grid_ne() && result.max_gain_p2 >= required_gain - 1e-9;
        let witness = ewl_payoff_closed(&game, &unfair_profile.with_p2(PI, FRAC_PI_2, PI, 0.0));
        let witness_ok = (witness.p2 - settings.money / 2.0).abs() <= EXACT_TOL;

        passed &= family_ok && fails_ok && witness_ok;
        details.push(format!(
            "delta={delta}: 100 family members fair and grid-stable: {family_ok}; \
             unfair profile refuted with gain {:.6} via (π,π/2,π,0): {}",
            result.max_gain_p2,
            fails_ok && witness_ok
        ));
    }
    ClaimResult::new(8, "fair equilibrium families", passed, details.join("; "))
}

/// Claim 9: `E((π,β1), (0,β2,π,0)) = (0,0)` across an 11x11 grid of `β1, β2`.
pub fn claim_ewl_annihilation(settings: &VerifySettings) -> ClaimResult {
    let game = EWLGame::new(GameParams::new(0.7, settings.money).expect("valid params"));
    let mut worst: f64 = 0.0;
    for i in 0..11 {
        for j in 0..11 {
            let beta1 = FRAC_PI_2 * i as f64 / 10.0;
            let beta2 = FRAC_PI_2 * j as f64 / 10.0;
            let profile = EWLProfile::new(PI, beta1, 0.0, beta2, PI, 0.0).expect("profile");
            let payoff = ewl_payoff_closed(&game, &profile);
            worst = worst.max(payoff.p1.abs()).max(payoff.p2.abs());
        }
    }
    ClaimResult::new(
        9,
        "crossed family deviations annihilate the payoff",
        worst <= EXACT_TOL,
        format!("121 profiles, max |payoff| {worst:e}"),
    )
}

/// Claim 10: Sequential and simultaneous play give the same expected outcome for
/// 1000 seeded random pure initial states and all eight profiles.
pub fn claim_outcome_equivalence(settings: &VerifySettings) -> ClaimResult {
    let params = GameParams::new(0.7, settings.money).expect("valid params");
    let x = OutcomeOperator::from_params(&params);
    let mut rng = claim_rng(settings, 10);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let rho = to_density(&random_state(&mut rng));
        for profile in MWProfile::all() {
            worst = worst.max(check_outcome_equivalence(&x, &rho, &profile));
        }
    }
    ClaimResult::new(
        10,
        "sequential measurement play is outcome-equivalent",
        worst <= EXACT_TOL,
        format!("1000 states x 8 profiles, max gap {worst:e}"),
    )
}

/// Claim 11: The extracted tree degenerates to the classical two-stage tree on
/// `|000>` and its chance-weighted fold reproduces the quantum payoffs on
/// 100 seeded random initial states.
pub fn claim_tree_extraction(settings: &VerifySettings) -> ClaimResult {
    let params = GameParams::new(0.7, settings.money).expect("valid params");
    let x = OutcomeOperator::from_params(&params);

    let tree = build_tree(&to_density(&PureState::basis(0, 0, 0)), &x);
    let mut degenerate_ok = tree.is_deterministic();
    degenerate_ok &= (tree.branches[0].chance[0].probability - 1.0).abs() <= EXACT_TOL
        && tree.branches[0].chance[1].probability == 0.0
        && tree.branches[1].chance[0].probability == 0.0
        && (tree.branches[1].chance[1].probability - 1.0).abs() <= EXACT_TOL;
    if let (Some(fair_side), Some(unfair_side)) = (
        tree.branches[0].chance[0].leaves,
        tree.branches[1].chance[1].leaves,
    ) {
        degenerate_ok &= fair_side[0].approx_eq(&x.o00, EXACT_TOL)
            && fair_side[1].approx_eq(&x.o01, EXACT_TOL)
            && unfair_side[0].approx_eq(&x.o10, EXACT_TOL)
            && unfair_side[1].approx_eq(&x.o11, EXACT_TOL);
    } else {
        degenerate_ok = false;
    }

    let mut rng = claim_rng(settings, 11);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let state = random_state(&mut rng);
        let game = MWGame::new(params, state);
        let tree = build_tree(&to_density(&state), &x);
        for profile in MWProfile::all() {
            worst = worst.max(
                tree.expected_payoff(&profile)
                    .max_abs_diff(&mw_payoff(&game, &profile)),
            );
        }
    }
    ClaimResult::new(
        11,
        "game-tree extraction degenerates and folds correctly",
        degenerate_ok && worst <= EXACT_TOL,
        format!(
            "basis-state tree classical: {degenerate_ok}; fold vs payoff max gap {worst:e} over 100 states"
        ),
    )
}

/// Claim 12: Across 10^4 random samples per scheme, player 1 never trails player
/// 2, player 2 never exceeds half the stake, and totals never exceed the
/// stake.
pub fn claim_payoff_bounds(settings: &VerifySettings) -> ClaimResult {
    let mut rng = claim_rng(settings, 12);
    let money = settings.money;
    let mut ok = true;
    let mut checked = 0usize;

    for _ in 0..10_000 {
        let delta = rng.gen_range(0.501..0.999);
        let params = GameParams::new(delta, money).expect("valid params");

        let state = random_state(&mut rng);
        let bits: u8 = rng.gen_range(0..8);
        let profile = MWProfile::new(bits >> 2, (bits >> 1) & 1, bits & 1);
        let payoff = mw_payoff(&MWGame::new(params, state), &profile);
        ok &= payoff.p1 >= payoff.p2 - EXACT_TOL;
        ok &= payoff.p2 <= money / 2.0 + EXACT_TOL;
        ok &= payoff.p1 + payoff.p2 <= money + EXACT_TOL;

        let unitary_profile = EWLProfile::random(&mut rng);
        let payoff = ewl_payoff_closed(&EWLGame::new(params), &unitary_profile);
        ok &= payoff.p1 >= payoff.p2 - EXACT_TOL;
        ok &= payoff.p2 <= money / 2.0 + EXACT_TOL;
        ok &= payoff.p1 + payoff.p2 <= money + EXACT_TOL;

        checked += 2;
    }
    ClaimResult::new(
        12,
        "payoff bounds hold on random samples",
        ok,
        format!("{checked} samples: E1 >= E2, E2 <= money/2, E1 + E2 <= money"),
    )
}
