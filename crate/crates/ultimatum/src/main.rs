//! Command-line front end. All analysis lives in the library; this binary
//! parses arguments, loads JSON inputs, and prints reports.
//!
//! Exit codes: 0 on success, 1 when the verification suite fails, 2 on
//! input errors.

use std::f64::consts::PI;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ultimatum::classical::{build_gamma1, normal_representation, GameParams};
use ultimatum::equilibrium::{grid_deviation_search, pure_nash, EquilibriumReport};
use ultimatum::ewl::{
    ewl_payoff_closed, ewl_payoff_numeric, in_subset1, in_subset2, mixed_family_theta_interval,
    payoff_report, sample_subset1, sample_subset2, EWLGame, EWLProfile,
};
use ultimatum::mw::{mw_matrix, state_from_spec, MWGame, PresetName, StatePreset, StateSpec};
use ultimatum::qstate::to_density;
use ultimatum::sequential::{build_tree, OutcomeOperator};
use ultimatum::verify::{run_all, VerifySettings};
use ultimatum::classical::Bimatrix;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "ultimatum",
    version,
    about = "Two-proposal ultimatum game: classical and quantum equilibrium analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical game: payoff table, pure equilibria, dominance, mixed bound.
    Classical(ClassicalArgs),
    /// Identity/bit-flip quantization: payoff matrix from an initial state.
    Mw(MwArgs),
    /// Two-parameter unitary quantization: payoffs and deviation analysis.
    Ewl(EwlArgs),
    /// Game tree induced by sequential measured play.
    Tree(TreeArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Args)]
struct GameOpts {
    /// Division factor of the unfair proposal, in (1/2, 1).
    #[arg(long, default_value_t = 0.7)]
    delta: f64,
    /// Second division factor used by the separable preset, in (delta, 1).
    #[arg(long, default_value_t = 0.8)]
    delta_prime: f64,
    /// Total amount at stake.
    #[arg(long, default_value_t = 1.0)]
    money: f64,
}

impl GameOpts {
    fn params(&self) -> Result<GameParams, CliError> {
        GameParams::new(self.delta, self.money).map_err(CliError::input)
    }
}

#[derive(Args)]
struct ClassicalArgs {
    #[command(flatten)]
    game: GameOpts,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct MwArgs {
    #[command(flatten)]
    game: GameOpts,
    /// Initial state: a preset (basis000..basis111, psi_in1, psi_in2,
    /// plus_plus_plus) or a path to a JSON state file.
    #[arg(long, default_value = "basis000")]
    state: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct EwlArgs {
    #[command(flatten)]
    game: GameOpts,
    /// Path to a JSON profile {"theta": [t1,t2,t3], "beta": [b1,b2,b3]}.
    #[arg(long, conflicts_with = "family")]
    profile: Option<String>,
    /// Analyze seeded samples of a fair equilibrium family instead.
    #[arg(long, value_parser = ["subset1", "subset2"])]
    family: Option<String>,
    /// Number of family samples.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    /// Seed for sampled families.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fine grid step for the deviation search, in radians.
    #[arg(long, default_value_t = PI / 60.0)]
    grid_step: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct TreeArgs {
    #[command(flatten)]
    game: GameOpts,
    /// Initial state: a preset name or a path to a JSON state file.
    #[arg(long, default_value = "basis000")]
    state: String,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Base seed for the randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fine grid step for deviation searches, in radians.
    #[arg(long, default_value_t = PI / 60.0)]
    grid_step: f64,
    /// Total amount at stake.
    #[arg(long, default_value_t = 1.0)]
    money: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

enum CliError {
    /// Bad parameters or unreadable/invalid input files (exit 2).
    Input(String),
    /// Verification suite failure (exit 1).
    Verification,
}

impl CliError {
    fn input(err: impl std::fmt::Display) -> Self {
        Self::Input(err.to_string())
    }
}

fn reject_dot(format: Format) -> Result<(), CliError> {
    if format == Format::Dot {
        return Err(CliError::Input(
            "dot format is only available for the tree subcommand".into(),
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classical(args) => cmd_classical(&args),
        Command::Mw(args) => cmd_mw(&args),
        Command::Ewl(args) => cmd_ewl(&args),
        Command::Tree(args) => cmd_tree(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification) => ExitCode::from(1),
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_state(spec: &str, params: &GameParams, delta_prime: f64) -> Result<StatePreset, CliError> {
    let parsed = PresetName::parse(spec, delta_prime);
    match parsed {
        Ok(name) => ultimatum::mw::preset(&name, params).map_err(CliError::input),
        Err(_) if Path::new(spec).exists() => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| CliError::Input(format!("cannot read state file {spec}: {e}")))?;
            let spec: StateSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("invalid state file: {e}")))?;
            state_from_spec(&spec, params, delta_prime).map_err(CliError::input)
        }
        Err(err) => Err(CliError::Input(format!(
            "{err}; not an existing file either"
        ))),
    }
}

fn pad(text: &str, width: usize) -> String {
    // Pad by character count; byte-based width misaligns σ and ⊗.
    let chars = text.chars().count();
    format!("{text}{}", " ".repeat(width.saturating_sub(chars)))
}

fn print_bimatrix(matrix: &Bimatrix) {
    let width = 22;
    print!("{}", pad("", 8));
    for col in &matrix.cols {
        print!("{}", pad(col, width));
    }
    println!();
    for (i, row) in matrix.rows.iter().enumerate() {
        print!("{}", pad(row, 8));
        for j in 0..matrix.cols.len() {
            let cell = matrix.cell(i, j);
            print!("{}", pad(&format!("({:.6}, {:.6})", cell.p1, cell.p2), width));
        }
        println!();
    }
}

fn print_equilibria(report: &EquilibriumReport) {
    println!("pure Nash equilibria:");
    for cell in &report.pure_ne {
        println!(
            "  ({}, {})  payoff ({:.6}, {:.6})",
            cell.row, cell.col, cell.payoff.p1, cell.payoff.p2
        );
    }
    match &report.dominant_column {
        Some(col) => println!("weakly dominant player-2 strategy: {col}"),
        None => println!("weakly dominant player-2 strategy: none"),
    }
    if let Some(best) = &report.pareto_best {
        println!("Pareto-best equilibrium: ({}, {})", best.row, best.col);
    }
}

fn cmd_classical(args: &ClassicalArgs) -> Result<(), CliError> {
    reject_dot(args.format)?;
    let params = args.game.params()?;
    let matrix = normal_representation(&build_gamma1(&params));
    let report = pure_nash(&matrix);
    let mixed_bound = 1.0 / (2.0 * params.delta);

    match args.format {
        Format::Json => {
            let value = json!({
                "delta": params.delta,
                "money": params.money,
                "bimatrix": matrix,
                "equilibrium": report,
                "mixed_family_max_p": mixed_bound,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        _ => {
            println!(
                "two-proposal ultimatum game (delta = {:.6}, money = {:.6})",
                params.delta, params.money
            );
            println!();
            print_bimatrix(&matrix);
            println!();
            print_equilibria(&report);
            println!(
                "fair-proposal mixture is an equilibrium for p <= 1/(2 delta) = {mixed_bound:.6}"
            );
        }
    }
    Ok(())
}

fn cmd_mw(args: &MwArgs) -> Result<(), CliError> {
    reject_dot(args.format)?;
    let params = args.game.params()?;
    let preset = load_state(&args.state, &params, args.game.delta_prime)?;
    let game = MWGame::new(params, preset.state);
    let matrix = mw_matrix(&game);
    let report = pure_nash(&matrix);

    match args.format {
        Format::Json => {
            let value = json!({
                "state": preset.name,
                "delta": params.delta,
                "money": params.money,
                "bimatrix": matrix,
                "equilibrium": report,
                "distinct_payoffs": matrix.distinct_payoffs(1e-9),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        _ => {
            println!(
                "quantum payoff matrix, initial state {} (delta = {:.6}, money = {:.6})",
                preset.name, params.delta, params.money
            );
            println!();
            print_bimatrix(&matrix);
            println!();
            print_equilibria(&report);
            println!("distinct payoff vectors: {}", matrix.distinct_payoffs(1e-9));
        }
    }
    Ok(())
}

fn describe_profile(game: &EWLGame, profile: &EWLProfile, grid_step: f64) -> serde_json::Value {
    let closed = ewl_payoff_closed(game, profile);
    let numeric = ewl_payoff_numeric(game, profile);
    let report = payoff_report(game, profile);
    let deviation = grid_deviation_search(game, profile, grid_step);
    json!({
        "profile": profile,
        "payoff": report,
        "route_disagreement": closed.max_abs_diff(&numeric),
        "in_subset1": in_subset1(profile),
        "in_subset2": in_subset2(profile),
        "deviation": deviation,
        "grid_ne": deviation.is_grid_ne(),
    })
}

fn print_profile_analysis(value: &serde_json::Value) {
    let payoff = &value["payoff"];
    println!(
        "payoff: E1 = {:.6}, E2 = {:.6} (fair weight {:.6}, unfair weight {:.6})",
        payoff["E1"].as_f64().unwrap_or(f64::NAN),
        payoff["E2"].as_f64().unwrap_or(f64::NAN),
        payoff["fair_weight"].as_f64().unwrap_or(f64::NAN),
        payoff["unfair_weight"].as_f64().unwrap_or(f64::NAN),
    );
    println!(
        "closed form vs simulation gap: {:.3e}",
        value["route_disagreement"].as_f64().unwrap_or(f64::NAN)
    );
    println!(
        "family membership: subset1 = {}, subset2 = {}",
        value["in_subset1"], value["in_subset2"]
    );
    let deviation = &value["deviation"];
    println!(
        "grid deviation search (step {:.6}): max gain p1 = {:.3e}, p2 = {:.3e} -> {}",
        deviation["step"].as_f64().unwrap_or(f64::NAN),
        deviation["max_gain_p1"].as_f64().unwrap_or(f64::NAN),
        deviation["max_gain_p2"].as_f64().unwrap_or(f64::NAN),
        if value["grid_ne"].as_bool().unwrap_or(false) {
            "passes (grid equilibrium)"
        } else {
            "fails (profitable deviation found)"
        }
    );
}

fn cmd_ewl(args: &EwlArgs) -> Result<(), CliError> {
    reject_dot(args.format)?;
    let params = args.game.params()?;
    let game = EWLGame::new(params);

    let analyses: Vec<serde_json::Value> = if let Some(path) = &args.profile {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read profile file {path}: {e}")))?;
        let profile: EWLProfile = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("invalid profile file: {e}")))?;
        vec![describe_profile(&game, &profile, args.grid_step)]
    } else if let Some(family) = &args.family {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        (0..args.samples)
            .map(|_| {
                let member = if family == "subset1" {
                    sample_subset1(&mut rng)
                } else {
                    sample_subset2(&mut rng)
                };
                describe_profile(&game, &member, args.grid_step)
            })
            .collect()
    } else {
        return Err(CliError::Input(
            "pass --profile <file.json> or --family subset1|subset2".into(),
        ));
    };

    match args.format {
        Format::Json => {
            let (lo, hi) = mixed_family_theta_interval(params.delta);
            let value = json!({
                "delta": params.delta,
                "money": params.money,
                "seed": args.seed,
                "mixed_family_theta_interval": [lo, hi],
                "profiles": analyses,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        _ => {
            println!(
                "two-parameter unitary game (delta = {:.6}, money = {:.6}, seed = {})",
                params.delta, params.money, args.seed
            );
            for (index, analysis) in analyses.iter().enumerate() {
                println!();
                if analyses.len() > 1 {
                    println!("sample {index}:");
                }
                print_profile_analysis(analysis);
            }
        }
    }
    Ok(())
}

fn cmd_tree(args: &TreeArgs) -> Result<(), CliError> {
    let params = args.game.params()?;
    let preset = load_state(&args.state, &params, args.game.delta_prime)?;
    let x = OutcomeOperator::from_params(&params);
    let tree = build_tree(&to_density(&preset.state), &x);

    match args.format {
        Format::Dot => print!("{}", tree.to_dot()),
        Format::Json => {
            let value = json!({
                "state": preset.name,
                "delta": params.delta,
                "money": params.money,
                "tree": tree.to_json(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Format::Table => {
            println!("game tree from initial state {}", preset.name);
            for branch in &tree.branches {
                println!("player 1 plays σ{}", branch.kappa1);
                for chance in &branch.chance {
                    match chance.leaves {
                        Some(leaves) => {
                            println!(
                                "  outcome {} with p = {:.6} (information set I{})",
                                chance.outcome, chance.probability, chance.outcome
                            );
                            for (action, leaf) in leaves.iter().enumerate() {
                                println!(
                                    "    player 2 plays σ{action}: ({:.6}, {:.6})",
                                    leaf.p1, leaf.p2
                                );
                            }
                        }
                        None => println!("  outcome {} pruned (probability 0)", chance.outcome),
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    if args.grid_step.is_nan() || args.grid_step <= 0.0 {
        return Err(CliError::Input("grid step must be positive".into()));
    }
    if args.money.is_nan() || args.money <= 0.0 {
        return Err(CliError::Input("money must be positive".into()));
    }
    let settings = VerifySettings {
        seed: args.seed,
        grid_step: args.grid_step,
        money: args.money,
    };
    let results = run_all(&settings);
    let all_passed = results.iter().all(|r| r.passed);

    match args.format {
        Format::Json => {
            let value = json!({
                "seed": settings.seed,
                "grid_step": settings.grid_step,
                "money": settings.money,
                "passed": all_passed,
                "claims": results,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        _ => {
            println!(
                "verification suite (seed = {}, grid step = {:.6})",
                settings.seed, settings.grid_step
            );
            for result in &results {
                println!(
                    "[{:2}/12] {}  {}",
                    result.id,
                    if result.passed { "ok  " } else { "FAIL" },
                    result.name
                );
                println!("        {}", result.details);
            }
            println!();
            println!("{}", if all_passed { "all claims hold" } else { "FAILURES detected" });
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}
