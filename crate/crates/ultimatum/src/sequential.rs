//! Sequential measured play and the game tree it induces.
//!
//! Instead of applying all three operators at once, player 1 acts on qubit 1,
//! the first qubit is measured projectively, and player 2 then acts on qubit
//! 2 or qubit 3 depending on the observed outcome. The expected outcome under
//! an outcome operator `X = X^0 + X^1` is identical either way, because
//! `X^κ M_ι = δ_{κι} X^κ`: flipping the qubit the other branch would have
//! used cannot move weight between the blocks `X` distinguishes.
//!
//! Folding the procedure into an extensive form yields a tree whose chance
//! nodes carry the measurement probabilities and whose leaves carry expected
//! outcomes conditioned on the branch; with a computational basis state as
//! input it degenerates to the classical two-stage tree.

use serde::Serialize;
use serde_json::json;

use crate::classical::{GameParams, PayoffVector};
use crate::error::Result;
use crate::mw::MWProfile;
use crate::qstate::{
    basis_bits, conjugate_density, first_qubit_projector, measure_first_qubit, pauli, tensor3,
    DensityMatrix, Operator8, C64, DIM, ZERO_BRANCH_TOL,
};

/// The pair-valued observable of the two-stage game: abstract outcomes
/// attached to the four terminal histories. The diagonal components are
/// `X^0 = O00·|00><00|⊗I + O01·|01><01|⊗I` and
/// `X^1 = O10·|1><1|⊗I⊗|0><0| + O11·|1><1|⊗I⊗|1><1|`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OutcomeOperator {
    pub o00: PayoffVector,
    pub o01: PayoffVector,
    pub o10: PayoffVector,
    pub o11: PayoffVector,
}

impl OutcomeOperator {
    pub fn new(o00: PayoffVector, o01: PayoffVector, o10: PayoffVector, o11: PayoffVector) -> Self {
        Self { o00, o01, o10, o11 }
    }

    /// Outcomes of the concrete ultimatum game: fair division on accepted
    /// fair proposals, unfair division on accepted unfair ones, nothing on
    /// rejections.
    pub fn from_params(params: &GameParams) -> Self {
        Self::new(params.fair(), PayoffVector::ZERO, params.unfair(), PayoffVector::ZERO)
    }

    /// The outcome attached to basis index `x`: `O00`/`O01` by the second
    /// bit when the first bit is 0, `O10`/`O11` by the third bit otherwise.
    fn outcome_at(&self, x: usize) -> PayoffVector {
        let (x1, x2, x3) = basis_bits(x);
        if x1 == 0 {
            if x2 == 0 {
                self.o00
            } else {
                self.o01
            }
        } else if x3 == 0 {
            self.o10
        } else {
            self.o11
        }
    }

    /// Diagonal of `X = X^0 + X^1` in the computational basis.
    pub fn diagonal(&self) -> [PayoffVector; DIM] {
        std::array::from_fn(|x| self.outcome_at(x))
    }

    /// Diagonal of the component `X^κ` (zero outside its first-qubit block).
    pub fn component_diagonal(&self, kappa: u8) -> [PayoffVector; DIM] {
        std::array::from_fn(|x| {
            if basis_bits(x).0 == kappa {
                self.outcome_at(x)
            } else {
                PayoffVector::ZERO
            }
        })
    }

    /// `X^κ` for one player as an explicit diagonal matrix, for checking the
    /// operator identities.
    pub fn component_matrix(&self, kappa: u8, player: usize) -> Operator8 {
        let diagonal = self.component_diagonal(kappa);
        let mut op = Operator8::zero();
        for x in 0..DIM {
            let value = if player == 1 { diagonal[x].p1 } else { diagonal[x].p2 };
            op.entries[x][x] = C64::new(value, 0.0);
        }
        op
    }
}

/// Expected outcome `tr(X ρ)`, evaluated componentwise for the two players.
pub fn expected_outcome(x: &OutcomeOperator, rho: &DensityMatrix) -> PayoffVector {
    let diagonal = x.diagonal();
    let mut total = PayoffVector::ZERO;
    for (index, outcome) in diagonal.iter().enumerate() {
        total = total.add(&outcome.scaled(rho.entries[index][index].re));
    }
    total
}

fn sigma_on_qubit(qubit: usize, kappa: u8) -> Operator8 {
    match qubit {
        1 => tensor3(&pauli(kappa), &pauli(0), &pauli(0)),
        2 => tensor3(&pauli(0), &pauli(kappa), &pauli(0)),
        3 => tensor3(&pauli(0), &pauli(0), &pauli(kappa)),
        _ => unreachable!("three qubits"),
    }
}

/// Simultaneous play: conjugation by `σ_{κ1} ⊗ σ_{κ2} ⊗ σ_{κ3}`.
pub fn direct_final(rho_in: &DensityMatrix, profile: &MWProfile) -> DensityMatrix {
    let op = tensor3(
        &pauli(profile.kappa1),
        &pauli(profile.kappa2),
        &pauli(profile.kappa3),
    );
    conjugate_density(&op, rho_in)
}

/// Sequential play: player 1 acts on qubit 1, the first qubit is measured,
/// and player 2 acts on qubit `ι + 2` in the branch with outcome `ι`. The
/// branches are accumulated unnormalized (`Σ_ι σ M_ι ρ M_ι σ`), which equals
/// the probability-weighted mixture and avoids normalizing empty branches.
pub fn sequential_final(rho_in: &DensityMatrix, profile: &MWProfile) -> DensityMatrix {
    let rho_k1 = conjugate_density(&sigma_on_qubit(1, profile.kappa1), rho_in);
    let mut out = DensityMatrix::zero();
    for iota in 0..2u8 {
        let piece = conjugate_density(&first_qubit_projector(iota), &rho_k1);
        if piece.trace() < ZERO_BRANCH_TOL {
            continue;
        }
        let response = if iota == 0 {
            sigma_on_qubit(2, profile.kappa2)
        } else {
            sigma_on_qubit(3, profile.kappa3)
        };
        out = out.add(&conjugate_density(&response, &piece));
    }
    out
}

/// Componentwise gap `|tr(X ρ'_fin) - tr(X ρ_fin)|` between the sequential
/// and the simultaneous expected outcome for one profile.
pub fn check_outcome_equivalence(
    x: &OutcomeOperator,
    rho_in: &DensityMatrix,
    profile: &MWProfile,
) -> f64 {
    let direct = expected_outcome(x, &direct_final(rho_in, profile));
    let sequential = expected_outcome(x, &sequential_final(rho_in, profile));
    direct.max_abs_diff(&sequential)
}

/// A chance branch after player 1's move: the measurement outcome, its
/// probability, and the two conditional leaf outcomes (one per player-2
/// action). Branches of probability zero are pruned and carry no leaves.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChanceOutcome {
    pub outcome: u8,
    pub probability: f64,
    pub leaves: Option<[PayoffVector; 2]>,
}

/// The subtree after one player-1 action.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProposalBranch {
    pub kappa1: u8,
    pub chance: [ChanceOutcome; 2],
}

/// The extensive form of sequential play: player 1's two actions, a chance
/// node per action carrying the measurement distribution, player 2's
/// decision nodes grouped into one information set per measurement outcome,
/// and leaves with expected outcome vectors.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuantumGameTree {
    pub branches: [ProposalBranch; 2],
}

/// Builds the tree: for each `κ1`, conjugate by `σ_{κ1}`, measure the first
/// qubit, and attach to outcome `ι` the leaves
/// `tr(X σ^{ι+2}_κ ρ_{κ1,ι} σ^{ι+2}_κ)` for player 2's two actions.
pub fn build_tree(rho_in: &DensityMatrix, x: &OutcomeOperator) -> QuantumGameTree {
    let branches = [0u8, 1u8].map(|kappa1| {
        let rho_k1 = conjugate_density(&sigma_on_qubit(1, kappa1), rho_in);
        let chance = measure_first_qubit(&rho_k1).map(|branch| {
            let leaves = branch.post_state.map(|post| {
                [0u8, 1u8].map(|kappa| {
                    let qubit = branch.outcome as usize + 2;
                    let final_rho = conjugate_density(&sigma_on_qubit(qubit, kappa), &post);
                    expected_outcome(x, &final_rho)
                })
            });
            ChanceOutcome {
                outcome: branch.outcome,
                probability: branch.probability,
                leaves,
            }
        });
        ProposalBranch { kappa1, chance }
    });
    QuantumGameTree { branches }
}

impl QuantumGameTree {
    /// Chance-weighted fold of the leaves selected by a profile.
    pub fn expected_payoff(&self, profile: &MWProfile) -> PayoffVector {
        let branch = &self.branches[profile.kappa1 as usize];
        let mut total = PayoffVector::ZERO;
        for chance in &branch.chance {
            if let Some(leaves) = chance.leaves {
                let action = if chance.outcome == 0 {
                    profile.kappa2
                } else {
                    profile.kappa3
                };
                total = total.add(&leaves[action as usize].scaled(chance.probability));
            }
        }
        total
    }

    /// True when every chance node has a single surviving branch, i.e. the
    /// tree has the deterministic two-stage shape.
    pub fn is_deterministic(&self) -> bool {
        self.branches
            .iter()
            .all(|b| b.chance.iter().filter(|c| c.leaves.is_some()).count() == 1)
    }

    /// Structural invariants: each chance distribution sums to one and both
    /// measurement outcomes define an information set with live nodes unless
    /// pruned everywhere.
    pub fn validate(&self) -> Result<()> {
        for branch in &self.branches {
            let total: f64 = branch.chance.iter().map(|c| c.probability).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(crate::error::Error::NotNormalized((total - 1.0).abs()));
            }
        }
        Ok(())
    }

    fn node_id(kappa1: u8, outcome: Option<u8>, action: Option<u8>) -> String {
        match (outcome, action) {
            (None, _) => format!("c{kappa1}"),
            (Some(iota), None) => format!("c{kappa1}/chance{iota}"),
            (Some(iota), Some(a)) => format!("c{kappa1}/chance{iota}/a{a}"),
        }
    }

    /// JSON form with stable node ids: `root`, `c{κ1}`, `c{κ1}/chance{ι}`,
    /// `c{κ1}/chance{ι}/a{κ}`. Pruned chance branches are listed under
    /// `pruned` and omitted from `nodes`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut nodes = vec![json!({"id": "root", "kind": "player", "player": 1})];
        let mut edges = Vec::new();
        let mut info_sets: [Vec<String>; 2] = [Vec::new(), Vec::new()];
        let mut pruned = Vec::new();

        for branch in &self.branches {
            let chance_id = Self::node_id(branch.kappa1, None, None);
            nodes.push(json!({"id": chance_id, "kind": "chance"}));
            edges.push(json!({
                "from": "root",
                "to": chance_id,
                "label": format!("σ{}", branch.kappa1),
            }));
            for chance in &branch.chance {
                let decision_id = Self::node_id(branch.kappa1, Some(chance.outcome), None);
                let Some(leaves) = chance.leaves else {
                    pruned.push(json!(decision_id));
                    continue;
                };
                let info_set = format!("I{}", chance.outcome);
                info_sets[chance.outcome as usize].push(decision_id.clone());
                nodes.push(json!({
                    "id": decision_id,
                    "kind": "player",
                    "player": 2,
                    "info_set": info_set,
                }));
                edges.push(json!({
                    "from": chance_id,
                    "to": decision_id,
                    "label": format!("outcome {}", chance.outcome),
                    "probability": chance.probability,
                }));
                for (action, leaf) in leaves.iter().enumerate() {
                    let leaf_id =
                        Self::node_id(branch.kappa1, Some(chance.outcome), Some(action as u8));
                    nodes.push(json!({
                        "id": leaf_id,
                        "kind": "leaf",
                        "payoff": [leaf.p1, leaf.p2],
                    }));
                    edges.push(json!({
                        "from": decision_id,
                        "to": leaf_id,
                        "label": format!("σ{action}"),
                    }));
                }
            }
        }

        let info_sets: Vec<serde_json::Value> = info_sets
            .iter()
            .enumerate()
            .filter(|(_, members)| !members.is_empty())
            .map(|(iota, members)| json!({"id": format!("I{iota}"), "nodes": members}))
            .collect();

        json!({
            "root": "root",
            "nodes": nodes,
            "edges": edges,
            "info_sets": info_sets,
            "pruned": pruned,
        })
    }

    /// DOT rendering: chance nodes as diamonds, leaves as boxes, information
    /// sets as dashed clusters.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quantum_game_tree {\n");
        out.push_str("  rankdir=TB;\n");
        out.push_str("  \"root\" [shape=ellipse, label=\"player 1\"];\n");
        let mut info_sets: [Vec<String>; 2] = [Vec::new(), Vec::new()];

        for branch in &self.branches {
            let chance_id = Self::node_id(branch.kappa1, None, None);
            out.push_str(&format!(
                "  \"{chance_id}\" [shape=diamond, label=\"chance\"];\n"
            ));
            out.push_str(&format!(
                "  \"root\" -> \"{chance_id}\" [label=\"σ{}\"];\n",
                branch.kappa1
            ));
            for chance in &branch.chance {
                let decision_id = Self::node_id(branch.kappa1, Some(chance.outcome), None);
                let Some(leaves) = chance.leaves else {
                    continue;
                };
                info_sets[chance.outcome as usize].push(decision_id.clone());
                out.push_str(&format!(
                    "  \"{decision_id}\" [shape=ellipse, label=\"player 2\"];\n"
                ));
                out.push_str(&format!(
                    "  \"{chance_id}\" -> \"{decision_id}\" [label=\"{} (p={:.6})\"];\n",
                    chance.outcome, chance.probability
                ));
                for (action, leaf) in leaves.iter().enumerate() {
                    let leaf_id =
                        Self::node_id(branch.kappa1, Some(chance.outcome), Some(action as u8));
                    out.push_str(&format!(
                        "  \"{leaf_id}\" [shape=box, label=\"({:.6}, {:.6})\"];\n",
                        leaf.p1, leaf.p2
                    ));
                    out.push_str(&format!(
                        "  \"{decision_id}\" -> \"{leaf_id}\" [label=\"σ{action}\"];\n"
                    ));
                }
            }
        }

        for (iota, members) in info_sets.iter().enumerate() {
            if members.is_empty() {
                continue;
            }
            out.push_str(&format!(
                "  subgraph cluster_I{iota} {{\n    style=dashed;\n    label=\"I{iota}\";\n"
            ));
            for member in members {
                out.push_str(&format!("    \"{member}\";\n"));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}
