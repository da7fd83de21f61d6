//! Extracting the extensive form of sequential measured play. With `|000>`
//! as input the tree collapses to the classical two-stage tree; with a
//! superposed input every chance branch survives and the tree is strictly
//! larger. The chance-weighted fold over the leaves reproduces the payoff
//! matrix of simultaneous play.
//!
//! Run with: `cargo run --example quantum_game_tree`

use ultimatum::classical::GameParams;
use ultimatum::mw::{mw_payoff, preset, MWGame, MWProfile, PresetName};
use ultimatum::qstate::{to_density, PureState};
use ultimatum::sequential::{build_tree, OutcomeOperator};

fn main() -> ultimatum::Result<()> {
    let params = GameParams::new(0.7, 1.0)?;
    let x = OutcomeOperator::from_params(&params);

    // Basis input: one surviving chance branch per proposal.
    let basis_tree = build_tree(&to_density(&PureState::basis(0, 0, 0)), &x);
    println!(
        "tree from |000> is deterministic: {}",
        basis_tree.is_deterministic()
    );
    println!("{}", serde_json::to_string_pretty(&basis_tree.to_json()).unwrap());
    println!();

    // Superposed input: both branches live at every chance node.
    let state = preset(&PresetName::PsiIn1, &params)?.state;
    let tree = build_tree(&to_density(&state), &x);
    println!(
        "tree from the four-term superposition is deterministic: {}",
        tree.is_deterministic()
    );

    // Folding the tree per profile reproduces simultaneous play.
    let game = MWGame::new(params, state);
    let mut worst: f64 = 0.0;
    for profile in MWProfile::all() {
        let gap = tree
            .expected_payoff(&profile)
            .max_abs_diff(&mw_payoff(&game, &profile));
        worst = worst.max(gap);
    }
    println!("fold vs simultaneous payoff, all 8 profiles: max gap {worst:.3e}");
    println!();

    println!("DOT rendering (pipe into `dot -Tsvg`):");
    print!("{}", tree.to_dot());
    Ok(())
}
