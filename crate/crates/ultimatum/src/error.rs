use thiserror::Error;

/// Errors produced when constructing games, states, or strategy profiles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division factor delta must satisfy 1/2 < delta < 1, got {0}")]
    DeltaOutOfRange(f64),

    #[error("delta_prime must satisfy delta < delta_prime < 1, got delta_prime = {delta_prime} with delta = {delta}")]
    DeltaPrimeOutOfRange { delta: f64, delta_prime: f64 },

    #[error("money must be positive and finite, got {0}")]
    MoneyOutOfRange(f64),

    #[error("angle {name} = {value} outside [{min}, {max}]")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("probability {name} = {value} outside [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },

    #[error("state is not normalized: |sum of squared moduli - 1| = {0:e} exceeds 1e-9")]
    NotNormalized(f64),

    #[error("amplitude at index {0} is not finite")]
    NonFiniteAmplitude(usize),

    #[error("unknown state preset {0:?}")]
    UnknownPreset(String),

    #[error("best-response formula requires beta2 + beta3 <= pi/4, got {0}")]
    BestResponseDomain(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
