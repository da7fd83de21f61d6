//! Classical analysis of the two-proposal ultimatum game: build the
//! extensive form, derive the 2x4 normal representation, enumerate the pure
//! equilibria, and check the two mixed equilibrium families.
//!
//! Run with: `cargo run --example classical_equilibria`

use ultimatum::classical::{
    build_gamma1, normal_representation, outcome, verify_mixed_family, verify_mixed_family_unfair,
    GameParams, PureProfile,
};
use ultimatum::equilibrium::pure_nash;

fn main() -> ultimatum::Result<()> {
    let params = GameParams::new(0.7, 1.0)?;
    let game = build_gamma1(&params);

    println!("histories: {}", game.histories.len());
    println!("terminal histories: {:?}", game.terminal_histories());
    println!();

    println!("outcomes of a few pure profiles:");
    for profile in [
        PureProfile::new(0, (0, 0)),
        PureProfile::new(1, (0, 0)),
        PureProfile::new(1, (0, 1)),
    ] {
        println!("  {profile:?} -> {:?}", outcome(&game, &profile));
    }
    println!();

    let matrix = normal_representation(&game);
    println!("normal representation (rows {:?}, cols {:?}):", matrix.rows, matrix.cols);
    for (i, row) in matrix.rows.iter().enumerate() {
        let cells: Vec<String> = (0..4)
            .map(|j| format!("({:.2}, {:.2})", matrix.cell(i, j).p1, matrix.cell(i, j).p2))
            .collect();
        println!("  {row}: {}", cells.join("  "));
    }
    println!();

    let report = pure_nash(&matrix);
    println!("pure Nash equilibria:");
    for cell in &report.pure_ne {
        println!(
            "  ({}, {}) with payoff ({:.2}, {:.2})",
            cell.row, cell.col, cell.payoff.p1, cell.payoff.p2
        );
    }
    println!(
        "weak dominance keeps only (c1, {}) credible",
        report.dominant_column.as_deref().unwrap_or("?")
    );
    println!();

    // Player 2 may mix her accepting plans against the fair proposal as long
    // as the always-accept weight stays below 1/(2 delta); against the unfair
    // proposal any mixture of her accepting plans works.
    let bound = 1.0 / (2.0 * params.delta);
    println!("fair-proposal mixture bound: p <= {bound:.6}");
    for p in [0.0, 0.5, bound, 0.9] {
        println!(
            "  p = {p:.3}: equilibrium? {}",
            verify_mixed_family(&params, p.min(1.0))
        );
    }
    println!(
        "unfair-proposal mixtures always pass: q = 0.5 -> {}",
        verify_mixed_family_unfair(&params, 0.5)
    );
    Ok(())
}
