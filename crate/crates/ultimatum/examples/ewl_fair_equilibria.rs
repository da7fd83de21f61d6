//! The two-parameter unitary game: the closed-form payoff against the
//! simulated one, the embedding of classical strategies, the refutation of
//! the unfair equilibrium, and the two families of fair equilibria.
//!
//! Run with: `cargo run --example ewl_fair_equilibria`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use ultimatum::classical::GameParams;
use ultimatum::equilibrium::grid_deviation_search;
use ultimatum::ewl::{
    best_response_p1_family, classical_embedding, ewl_payoff_closed, ewl_payoff_numeric,
    in_subset1, in_subset2, sample_subset1, sample_subset2, EWLGame, EWLProfile,
};

fn main() -> ultimatum::Result<()> {
    let params = GameParams::new(0.7, 1.0)?;
    let game = EWLGame::new(params);
    let step = PI / 60.0;

    // The two payoff routes agree.
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let profile = EWLProfile::random(&mut rng);
        let gap = ewl_payoff_closed(&game, &profile).max_abs_diff(&ewl_payoff_numeric(&game, &profile));
        worst = worst.max(gap);
    }
    println!("closed form vs simulation, 200 random profiles: max gap {worst:.3e}");
    println!();

    // Classical behavior embeds: theta = 2 arccos(sqrt(probability)).
    let (expected, profile) = classical_embedding(&params, 0.5, 1.0, 1.0)?;
    println!(
        "behavioral (p, q, r) = (0.5, 1, 1): expected ({:.4}, {:.4}), via angles ({:.4}, {:.4})",
        expected.p1,
        expected.p2,
        ewl_payoff_closed(&game, &profile).p1,
        ewl_payoff_closed(&game, &profile).p2,
    );
    println!();

    // The profile mirroring the classical unfair equilibrium is refuted:
    // player 2 deviates to (pi, pi/2, pi, 0) and recovers the fair share.
    let unfair = EWLProfile::new(PI, 0.0, 0.0, 0.0, 0.0, 0.0)?;
    let base = ewl_payoff_closed(&game, &unfair);
    let result = grid_deviation_search(&game, &unfair, step);
    println!(
        "unfair acceptance pays ({:.4}, {:.4}); grid search finds player-2 gain {:.4} -> {}",
        base.p1,
        base.p2,
        result.max_gain_p2,
        if result.is_grid_ne() { "stable" } else { "refuted" }
    );
    let named = ewl_payoff_closed(&game, &unfair.with_p2(PI, FRAC_PI_2, PI, 0.0));
    println!(
        "the deviation (pi, pi/2, pi, 0) indeed pays her {:.4}",
        named.p2
    );
    println!();

    // Sampled members of both fair families earn (1/2, 1/2) and survive the
    // deviation search.
    for (label, member) in [
        ("subset1", sample_subset1(&mut rng)),
        ("subset2", sample_subset2(&mut rng)),
    ] {
        let payoff = ewl_payoff_closed(&game, &member);
        let search = grid_deviation_search(&game, &member, step);
        println!(
            "{label} member (in1 = {}, in2 = {}): payoff ({:.4}, {:.4}), grid equilibrium: {}",
            in_subset1(&member),
            in_subset2(&member),
            payoff.p1,
            payoff.p2,
            search.is_grid_ne()
        );
    }
    println!();

    // A fair equilibrium outside both families.
    let extra = EWLProfile::new(PI, FRAC_PI_4, PI, FRAC_PI_4, FRAC_PI_2, 0.0)?;
    let payoff = ewl_payoff_closed(&game, &extra);
    println!(
        "((pi, pi/4), (pi, pi/4, pi/2, 0)): payoff ({:.4}, {:.4}), grid equilibrium: {}",
        payoff.p1,
        payoff.p2,
        grid_deviation_search(&game, &extra, step).is_grid_ne()
    );

    // Player 1's analytic best response against (pi, b2, pi, b3).
    let (theta, beta) = best_response_p1_family(PI / 8.0, PI / 8.0)?;
    println!(
        "best response against (pi, pi/8, pi, pi/8): theta = {theta:.4}, beta = {beta:.4}"
    );
    Ok(())
}
