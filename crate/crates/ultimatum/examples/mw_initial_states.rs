//! How the initial state reshapes the identity/bit-flip quantization: basis
//! states reproduce the classical game, the four-term superposition creates
//! a fairer dominant equilibrium, the separable two-term state secures the
//! even split, and the uniform superposition makes strategies irrelevant.
//!
//! Run with: `cargo run --example mw_initial_states`

use ultimatum::classical::{build_gamma1, normal_representation, GameParams};
use ultimatum::equilibrium::pure_nash;
use ultimatum::mw::{mw_matrix, mw_payoff, preset, MWGame, MWProfile, PresetName};

fn show(game: &MWGame, label: &str) {
    let matrix = mw_matrix(game);
    println!("initial state {label}:");
    for (i, row) in matrix.rows.iter().enumerate() {
        let cells: Vec<String> = (0..4)
            .map(|j| format!("({:.4}, {:.4})", matrix.cell(i, j).p1, matrix.cell(i, j).p2))
            .collect();
        println!("  {row}: {}", cells.join("  "));
    }
    let report = pure_nash(&matrix);
    let labels: Vec<String> = report
        .pure_ne
        .iter()
        .map(|cell| format!("({}, {})", cell.row, cell.col))
        .collect();
    println!("  pure equilibria: {}", labels.join(", "));
    if let Some(col) = &report.dominant_column {
        println!("  weakly dominant player-2 strategy: {col}");
    }
    println!("  distinct payoff vectors: {}", matrix.distinct_payoffs(1e-9));
    println!();
}

fn main() -> ultimatum::Result<()> {
    let params = GameParams::new(0.7, 1.0)?;

    // |000> reproduces the classical table cell by cell.
    let basis = MWGame::new(params, preset(&PresetName::Basis(0, 0, 0), &params)?.state);
    show(&basis, "|000>");
    let classical = normal_representation(&build_gamma1(&params));
    println!(
        "matches the classical table: {}",
        mw_matrix(&basis).approx_eq(&classical, 1e-12)
    );
    println!();

    // The four-term superposition: five distinct outcomes, and the dominant
    // equilibrium now shares the stake 60/40.
    let four_term = MWGame::new(params, preset(&PresetName::PsiIn1, &params)?.state);
    show(&four_term, "(|000> + |001> + |100> + |110>)/2");

    // A separable state already suffices for the even split: superposing
    // player 2's second qubit caps player 1's unfair payoff at
    // delta/(2 delta') < 1/2.
    let separable = MWGame::new(
        params,
        preset(&PresetName::PsiIn2 { delta_prime: 0.8 }, &params)?.state,
    );
    show(&separable, "sqrt(0.625)|000> + sqrt(0.375)|001>");
    let deviation = mw_payoff(&separable, &MWProfile::new(1, 0, 0));
    println!(
        "player 1's unfair deviation earns only {:.4} < 0.5",
        deviation.p1
    );
    println!();

    // With |+>|+>|+> no bit flip changes any amplitude weight.
    let plus = MWGame::new(params, preset(&PresetName::PlusPlusPlus, &params)?.state);
    show(&plus, "|+>|+>|+>");
    Ok(())
}
