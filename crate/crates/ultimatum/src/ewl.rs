//! The two-parameter unitary quantization of the ultimatum game.
//!
//! The register starts in the entangled state `(|000> + i|111>)/√2`. Player 1
//! applies `U(θ1, β1)` to qubit 1; player 2 applies `U(θ2, β2) ⊗ U(θ3, β3)`
//! to qubits 2 and 3, with `θ ∈ [0, π]` and `β ∈ [0, π/2]`. Payoffs are the
//! fair/unfair functionals evaluated against the entangled basis
//! `|ψ_x> = (|x> + i|x̄>)/√2`, so the game reduces to the classical one at
//! `β = 0`, `θ ∈ {0, π}` while richer strategies unlock fair equilibria the
//! classical game does not have.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::classical::{GameParams, PayoffVector};
use crate::error::{Error, Result};
use crate::qstate::{apply, basis_index, check_angle, tensor3, u_theta_beta, PureState, C64, DIM};

/// Tolerance for the angle identities that define the equilibrium families.
const FAMILY_TOL: f64 = 1e-12;

/// A strategy profile: `(θ1, β1)` for player 1 and `(θ2, β2, θ3, β3)` for
/// player 2, in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileSpec", into = "ProfileSpec")]
pub struct EWLProfile {
    pub theta1: f64,
    pub beta1: f64,
    pub theta2: f64,
    pub beta2: f64,
    pub theta3: f64,
    pub beta3: f64,
}

/// Wire format: `{"theta": [t1, t2, t3], "beta": [b1, b2, b3]}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
struct ProfileSpec {
    theta: [f64; 3],
    beta: [f64; 3],
}

impl TryFrom<ProfileSpec> for EWLProfile {
    type Error = Error;

    fn try_from(spec: ProfileSpec) -> Result<Self> {
        EWLProfile::new(
            spec.theta[0],
            spec.beta[0],
            spec.theta[1],
            spec.beta[1],
            spec.theta[2],
            spec.beta[2],
        )
    }
}

impl From<EWLProfile> for ProfileSpec {
    fn from(profile: EWLProfile) -> Self {
        Self {
            theta: [profile.theta1, profile.theta2, profile.theta3],
            beta: [profile.beta1, profile.beta2, profile.beta3],
        }
    }
}

impl EWLProfile {
    pub fn new(theta1: f64, beta1: f64, theta2: f64, beta2: f64, theta3: f64, beta3: f64) -> Result<Self> {
        Ok(Self {
            theta1: check_angle("theta1", theta1, 0.0, PI)?,
            beta1: check_angle("beta1", beta1, 0.0, FRAC_PI_2)?,
            theta2: check_angle("theta2", theta2, 0.0, PI)?,
            beta2: check_angle("beta2", beta2, 0.0, FRAC_PI_2)?,
            theta3: check_angle("theta3", theta3, 0.0, PI)?,
            beta3: check_angle("beta3", beta3, 0.0, FRAC_PI_2)?,
        })
    }

    /// Replaces player 1's angles.
    pub fn with_p1(&self, theta1: f64, beta1: f64) -> Self {
        Self {
            theta1,
            beta1,
            ..*self
        }
    }

    /// Replaces player 2's angles.
    pub fn with_p2(&self, theta2: f64, beta2: f64, theta3: f64, beta3: f64) -> Self {
        Self {
            theta2,
            beta2,
            theta3,
            beta3,
            ..*self
        }
    }

    /// Uniformly random angles over the full strategy space.
    pub fn random(rng: &mut impl Rng) -> Self {
        Self {
            theta1: rng.gen_range(0.0..=PI),
            beta1: rng.gen_range(0.0..=FRAC_PI_2),
            theta2: rng.gen_range(0.0..=PI),
            beta2: rng.gen_range(0.0..=FRAC_PI_2),
            theta3: rng.gen_range(0.0..=PI),
            beta3: rng.gen_range(0.0..=FRAC_PI_2),
        }
    }
}

/// The quantized game; the initial state is fixed to the entangled basis
/// state with all bits zero.
#[derive(Clone, Copy, Debug)]
pub struct EWLGame {
    pub params: GameParams,
}

impl EWLGame {
    pub fn new(params: GameParams) -> Self {
        Self { params }
    }
}

/// A member of the entangled basis, `(|x1 x2 x3> + i|x̄1 x̄2 x̄3>)/√2`.
#[derive(Clone, Copy, Debug)]
pub struct EntangledBasisState {
    pub bits: (u8, u8, u8),
    pub state: PureState,
}

pub fn entangled_basis(x1: u8, x2: u8, x3: u8) -> EntangledBasisState {
    assert!(x1 <= 1 && x2 <= 1 && x3 <= 1, "bits must be 0 or 1");
    let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
    let mut amps = [C64::new(0.0, 0.0); DIM];
    amps[basis_index(x1, x2, x3)] = C64::new(inv_sqrt2, 0.0);
    amps[basis_index(1 - x1, 1 - x2, 1 - x3)] = C64::new(0.0, inv_sqrt2);
    EntangledBasisState {
        bits: (x1, x2, x3),
        state: PureState::new(amps).expect("entangled basis state is normalized"),
    }
}

/// Applies `U(θ1,β1) ⊗ U(θ2,β2) ⊗ U(θ3,β3)` to the initial entangled state.
pub fn ewl_final_state(profile: &EWLProfile) -> PureState {
    let op = tensor3(
        &u_theta_beta(profile.theta1, profile.beta1).expect("validated profile"),
        &u_theta_beta(profile.theta2, profile.beta2).expect("validated profile"),
        &u_theta_beta(profile.theta3, profile.beta3).expect("validated profile"),
    );
    apply(&op, &entangled_basis(0, 0, 0).state)
}

/// Fair and unfair weights of a final state measured against the entangled
/// basis: `Σ_{x3} |<ψ_{00x3}|ψ>|^2` and `Σ_{x2} |<ψ_{1x2,0}|ψ>|^2`.
pub fn entangled_fair_unfair_weights(state: &PureState) -> (f64, f64) {
    let overlap = |x1: u8, x2: u8, x3: u8| {
        entangled_basis(x1, x2, x3).state.inner(state).norm_sqr()
    };
    let fair = overlap(0, 0, 0) + overlap(0, 0, 1);
    let unfair = overlap(1, 0, 0) + overlap(1, 1, 0);
    (fair, unfair)
}

/// Expected payoff by simulating the state evolution.
pub fn ewl_payoff_numeric(game: &EWLGame, profile: &EWLProfile) -> PayoffVector {
    let (fair, unfair) = entangled_fair_unfair_weights(&ewl_final_state(profile));
    combine(game, fair, unfair)
}

/// Fair and unfair weights in closed form as trigonometric polynomials of
/// the six angles.
pub fn closed_form_weights(profile: &EWLProfile) -> (f64, f64) {
    let c = |theta: f64| (theta / 2.0).cos().powi(2);
    let s = |theta: f64| (theta / 2.0).sin().powi(2);
    let cos2 = |beta: f64| beta.cos().powi(2);
    let sin2 = |beta: f64| beta.sin().powi(2);
    let EWLProfile {
        theta1: t1,
        beta1: b1,
        theta2: t2,
        beta2: b2,
        theta3: t3,
        beta3: b3,
    } = *profile;

    let fair = c(t1) * c(t2) * (c(t3) + s(t3) * cos2(b3))
        + s(t1) * s(t2) * (s(t3) * sin2(b1 + b2 + b3) + c(t3) * sin2(b1 + b2));
    let unfair = s(t1) * c(t3) * (c(t2) * cos2(b1) + s(t2) * cos2(b1 + b2))
        + c(t1) * s(t3) * (s(t2) * sin2(b2 + b3) + c(t2) * sin2(b3));
    (fair, unfair)
}

/// Expected payoff from the closed-form expression.
pub fn ewl_payoff_closed(game: &EWLGame, profile: &EWLProfile) -> PayoffVector {
    let (fair, unfair) = closed_form_weights(profile);
    combine(game, fair, unfair)
}

fn combine(game: &EWLGame, fair: f64, unfair: f64) -> PayoffVector {
    game.params
        .fair()
        .scaled(fair)
        .add(&game.params.unfair().scaled(unfair))
}

/// Payoff report for one profile (closed-form route).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PayoffReport {
    #[serde(rename = "E1")]
    pub e1: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
    pub fair_weight: f64,
    pub unfair_weight: f64,
}

pub fn payoff_report(game: &EWLGame, profile: &EWLProfile) -> PayoffReport {
    let (fair_weight, unfair_weight) = closed_form_weights(profile);
    let payoff = combine(game, fair_weight, unfair_weight);
    PayoffReport {
        e1: payoff.p1,
        e2: payoff.p2,
        fair_weight,
        unfair_weight,
    }
}

/// Embeds a behavioral strategy `(p, q, r)` — the probabilities of the fair
/// proposal and of acceptance at each of player 2's information sets — as
/// the profile `θ_j = 2·arccos(√·)`, `β = 0`. Returns the expected payoff
/// `fair·p·q + unfair·(1-p)·r` together with that profile.
pub fn classical_embedding(
    params: &GameParams,
    p: f64,
    q: f64,
    r: f64,
) -> Result<(PayoffVector, EWLProfile)> {
    for (name, value) in [("p", p), ("q", q), ("r", r)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::ProbabilityOutOfRange { name, value });
        }
    }
    let angle = |prob: f64| 2.0 * prob.sqrt().acos();
    let profile = EWLProfile::new(angle(p), 0.0, angle(q), 0.0, angle(r), 0.0)?;
    let expected = params
        .fair()
        .scaled(p * q)
        .add(&params.unfair().scaled((1.0 - p) * r));
    Ok((expected, profile))
}

/// Membership in the fair equilibrium family with all rotations maximal:
/// `θ1 = θ2 = θ3 = π`, `β2 + β3 ≤ π/4`, `β1 + β2 + β3 = π/2`.
pub fn in_subset1(profile: &EWLProfile) -> bool {
    (profile.theta1 - PI).abs() <= FAMILY_TOL
        && (profile.theta2 - PI).abs() <= FAMILY_TOL
        && (profile.theta3 - PI).abs() <= FAMILY_TOL
        && profile.beta2 + profile.beta3 <= FRAC_PI_4 + FAMILY_TOL
        && (profile.beta1 + profile.beta2 + profile.beta3 - FRAC_PI_2).abs() <= FAMILY_TOL
}

/// Membership in the fair equilibrium family where both proposals stand
/// still and player 2 flips her second qubit: `θ1 = θ2 = 0`, `θ3 = π`,
/// `β3 = 0` (β1 and β2 are free).
pub fn in_subset2(profile: &EWLProfile) -> bool {
    profile.theta1.abs() <= FAMILY_TOL
        && profile.theta2.abs() <= FAMILY_TOL
        && (profile.theta3 - PI).abs() <= FAMILY_TOL
        && profile.beta3.abs() <= FAMILY_TOL
}

/// A random member of the first fair family.
pub fn sample_subset1(rng: &mut impl Rng) -> EWLProfile {
    let beta2 = rng.gen_range(0.0..=FRAC_PI_4);
    let beta3 = rng.gen_range(0.0..=(FRAC_PI_4 - beta2));
    let beta1 = FRAC_PI_2 - beta2 - beta3;
    EWLProfile::new(PI, beta1, PI, beta2, PI, beta3).expect("angles in range")
}

/// A random member of the second fair family.
pub fn sample_subset2(rng: &mut impl Rng) -> EWLProfile {
    let beta1 = rng.gen_range(0.0..=FRAC_PI_2);
    let beta2 = rng.gen_range(0.0..=FRAC_PI_2);
    EWLProfile::new(0.0, beta1, 0.0, beta2, PI, 0.0).expect("angles in range")
}

/// Player 1's analytic best response against `(π, β2, π, β3)` when
/// `β2 + β3 ≤ π/4`: the angles `(π, π/2 - β2 - β3)`, which earn exactly
/// half the stake.
pub fn best_response_p1_family(beta2: f64, beta3: f64) -> Result<(f64, f64)> {
    let sum = beta2 + beta3;
    if sum > FRAC_PI_4 + FAMILY_TOL {
        return Err(Error::BestResponseDomain(sum));
    }
    Ok((PI, FRAC_PI_2 - sum))
}

/// The rotation interval on player 2's second qubit that realizes the
/// classical acceptance mixture against the fair proposal:
/// `θ ∈ [2·arccos(1/√(2δ)), π/2]`.
pub fn mixed_family_theta_interval(delta: f64) -> (f64, f64) {
    (2.0 * (1.0 / (2.0 * delta).sqrt()).acos(), FRAC_PI_2)
}
