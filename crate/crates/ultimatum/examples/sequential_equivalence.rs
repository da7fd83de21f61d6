//! Sequential measured play gives the same expected outcomes as applying all
//! operators at once: player 1 acts, the first qubit is measured, player 2
//! acts on the qubit the outcome selects. The check runs the two procedures
//! side by side over random initial states and all eight profiles.
//!
//! Run with: `cargo run --example sequential_equivalence`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ultimatum::classical::GameParams;
use ultimatum::mw::MWProfile;
use ultimatum::qstate::{measure_first_qubit, to_density, PureState, C64, DIM};
use ultimatum::sequential::{
    check_outcome_equivalence, direct_final, expected_outcome, sequential_final, OutcomeOperator,
};

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
    PureState::new(amps).expect("normalized")
}

fn main() -> ultimatum::Result<()> {
    let params = GameParams::new(0.7, 1.0)?;
    let x = OutcomeOperator::from_params(&params);
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    // One state in detail.
    let state = random_state(&mut rng);
    let rho = to_density(&state);
    let profile = MWProfile::new(0, 1, 0);

    let [branch0, branch1] = measure_first_qubit(&to_density(&state));
    println!(
        "measurement of the first qubit: p0 = {:.6}, p1 = {:.6}",
        branch0.probability, branch1.probability
    );

    let direct = expected_outcome(&x, &direct_final(&rho, &profile));
    let sequential = expected_outcome(&x, &sequential_final(&rho, &profile));
    println!(
        "profile {profile:?}: direct ({:.6}, {:.6}) vs sequential ({:.6}, {:.6})",
        direct.p1, direct.p2, sequential.p1, sequential.p2
    );
    println!();

    // All profiles, many states.
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let rho = to_density(&random_state(&mut rng));
        for profile in MWProfile::all() {
            worst = worst.max(check_outcome_equivalence(&x, &rho, &profile));
        }
    }
    println!("500 random states x 8 profiles: max outcome gap {worst:.3e}");
    Ok(())
}
