//! Machine-checkable nonexistence proofs.
//!
//! A [`ProofScript`] is a DAG of steps, each pairing a [`Claim`] with a
//! [`Justification`] that names its premise steps. [`run_script`] checks
//! every step — solving LPs where the justification calls for them — and
//! emits a [`ProofLog`] carrying certificates for everything it did;
//! [`check_log`] re-verifies a log by pure arithmetic, with no solver in the
//! loop. The bundled [`sextic66_script`] replays the full nonexistence
//! argument for a `[66, 13, {24, 32, 40, 56}]` code, and
//! [`sextic_corollary`] combines its conclusion with the surface-geometry
//! inputs.

mod engine;
mod sextic;

pub use engine::{check_log, run_script, CheckReport, RunOptions};
pub use sextic::{
    sextic66_script, sextic_corollary, AxiomToggles, CorollaryInputs, CorollaryReport,
    SCRIPT_NAME as SEXTIC_SCRIPT_NAME,
};

use crate::expr::Expr;
use crate::gate::Mode;
use crate::rat::Rat;
use crate::spec::CodeSpec;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

pub type StepId = String;

/// What a proof step asserts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// No binary linear code matches the spec.
    NoCode { spec: CodeSpec },
    /// Every code matching the spec has at least `bound` dual words of
    /// weight `m`.
    DualAtLeast { spec: CodeSpec, m: usize, bound: u64 },
    /// The expression evaluates to exactly this value.
    Arithmetic { expr: Expr, equals: Rat },
    /// In any code matching the spec, words of weights `j1` and `j2` cannot
    /// coexist — except, when `j1 == j2`, as one and the same word.
    PairExcluded { spec: CodeSpec, j1: usize, j2: usize },
    /// An input taken on faith, stated in full.
    Assumption { statement: String },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::NoCode { spec } => write!(f, "no code matches {spec}"),
            Claim::DualAtLeast { spec, m, bound } => {
                write!(f, "every code matching {spec} has mu{m} >= {bound}")
            }
            Claim::Arithmetic { expr, equals } => write!(f, "{expr} = {equals}"),
            Claim::PairExcluded { spec, j1, j2 } => {
                if j1 == j2 {
                    write!(f, "under {spec}, any two weight-{j1} words coincide")
                } else {
                    write!(f, "under {spec}, weights {j1} and {j2} cannot coexist")
                }
            }
            Claim::Assumption { statement } => write!(f, "assume: {statement}"),
        }
    }
}

/// How a step's claim follows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    /// The feasibility gate refutes the spec outright.
    LpVerdict { mode: Mode },
    /// The gate's exact minimum of `mu_m`, rounded up (dual counts of real
    /// codes are integers), yields the bound.
    LpBound { mode: Mode },
    /// The Griesmer length bound refutes the spec.
    Griesmer,
    /// Nonexistence transfers from the premise's spec (same length, lower
    /// or equal dimension, larger weight set, no side conditions).
    Monotone { from: StepId },
    /// Case split on a weight-`w` word: if one occurs, pass to the residual
    /// code, whose spec the `residual` premise refutes; if none occurs the
    /// code matches the spec without `w`, refuted by `without`. A spec that
    /// forces `w` needs no second case.
    Residual {
        w: usize,
        residual: StepId,
        without: Option<StepId>,
    },
    /// Case split on low-weight dual words: for every listed `m`, a dual
    /// word of weight `m` shortens the code onto the named premise's spec;
    /// with all listed weights excluded, the `lp` premise refutes the spec
    /// with those dual counts pinned to zero.
    DualSplit { cases: Vec<(usize, StepId)>, lp: StepId },
    /// The spec's dual-count lower bound guarantees a dual word to shorten
    /// on; the `reduced` premise refutes the shortened spec. Components are
    /// `[1]` (a vanishing coordinate) or `[2]` (a deuce).
    Shorten { components: Vec<usize>, reduced: StepId },
    /// A code matching the claim's spec extends, by the full-support word,
    /// to a code matching the premise's spec.
    Adjoin { from: StepId },
    /// With `mu1 = 0` (a weight-1 dual word would shorten onto `shorten1`'s
    /// refuted spec) the `bound` premise gives two distinct deuces; disjoint
    /// ones shorten onto `disjoint`'s spec, overlapping ones form a triangle
    /// and shorten onto `overlap`'s.
    DeucePair {
        shorten1: StepId,
        bound: StepId,
        disjoint: StepId,
        overlap: StepId,
    },
    /// The deuce-graph endgame: `mu1 = 0` via `shorten1`; at least `B`
    /// deuces via `bound`; the four clique cases refuted force the deuce
    /// graph into disjoint edges; a unique heaviest word plus pigeonhole
    /// arithmetic locate a deuce inside its support; shortening there and
    /// re-adjoining the full-support word lands on `subcode`'s refuted spec.
    DeuceGraph {
        shorten1: StepId,
        bound: StepId,
        cases: Vec<StepId>,
        heavy: usize,
        unique_heavy: StepId,
        free_positions: StepId,
        survivors: StepId,
        subcode: StepId,
    },
    /// Support-overlap arithmetic on the ambient spec proves the pair
    /// exclusion.
    PairInteraction,
    /// Evaluating the expression proves the arithmetic claim.
    Arithmetic,
    /// The claim is an assumption; `citation` names its classical source.
    Axiom { citation: String },
}

impl Justification {
    /// Premise steps, in a fixed documented order.
    pub fn dependencies(&self) -> Vec<StepId> {
        match self {
            Justification::LpVerdict { .. }
            | Justification::LpBound { .. }
            | Justification::Griesmer
            | Justification::PairInteraction
            | Justification::Arithmetic
            | Justification::Axiom { .. } => Vec::new(),
            Justification::Monotone { from } | Justification::Adjoin { from } => {
                vec![from.clone()]
            }
            Justification::Residual { residual, without, .. } => {
                let mut deps = vec![residual.clone()];
                deps.extend(without.clone());
                deps
            }
            Justification::DualSplit { cases, lp } => {
                let mut deps: Vec<StepId> = cases.iter().map(|(_, id)| id.clone()).collect();
                deps.push(lp.clone());
                deps
            }
            Justification::Shorten { reduced, .. } => vec![reduced.clone()],
            Justification::DeucePair {
                shorten1,
                bound,
                disjoint,
                overlap,
            } => vec![
                shorten1.clone(),
                bound.clone(),
                disjoint.clone(),
                overlap.clone(),
            ],
            Justification::DeuceGraph {
                shorten1,
                bound,
                cases,
                unique_heavy,
                free_positions,
                survivors,
                subcode,
                ..
            } => {
                let mut deps = vec![shorten1.clone(), bound.clone()];
                deps.extend(cases.iter().cloned());
                deps.push(unique_heavy.clone());
                deps.push(free_positions.clone());
                deps.push(survivors.clone());
                deps.push(subcode.clone());
                deps
            }
        }
    }

    /// Short name for messages.
    pub fn kind(&self) -> &'static str {
        match self {
            Justification::LpVerdict { .. } => "lp_verdict",
            Justification::LpBound { .. } => "lp_bound",
            Justification::Griesmer => "griesmer",
            Justification::Monotone { .. } => "monotone",
            Justification::Residual { .. } => "residual",
            Justification::DualSplit { .. } => "dual_split",
            Justification::Shorten { .. } => "shorten",
            Justification::Adjoin { .. } => "adjoin",
            Justification::DeucePair { .. } => "deuce_pair",
            Justification::DeuceGraph { .. } => "deuce_graph",
            Justification::PairInteraction => "pair_interaction",
            Justification::Arithmetic => "arithmetic",
            Justification::Axiom { .. } => "axiom",
        }
    }
}

/// One node of a proof DAG.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub id: StepId,
    pub claim: Claim,
    pub justification: Justification,
    /// Premises; must equal `justification.dependencies()`.
    pub depends_on: Vec<StepId>,
}

impl ProofStep {
    pub fn new(id: impl Into<StepId>, claim: Claim, justification: Justification) -> ProofStep {
        let depends_on = justification.dependencies();
        ProofStep {
            id: id.into(),
            claim,
            justification,
            depends_on,
        }
    }
}

/// A named, ordered, validated collection of steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofScript {
    pub name: String,
    pub description: String,
    pub steps: Vec<ProofStep>,
    pub conclusion: StepId,
}

impl ProofScript {
    /// Structural validation: unique nonempty ids, premises defined before
    /// use, dependency lists faithful to the justifications, and a
    /// conclusion that exists.
    pub fn validate(&self) -> Result<(), ProverError> {
        let mut seen: HashSet<&str> = HashSet::new();
        for step in &self.steps {
            if step.id.is_empty() {
                return Err(ProverError::InvalidScript("a step has an empty id".into()));
            }
            if step.depends_on != step.justification.dependencies() {
                return Err(ProverError::InvalidScript(format!(
                    "step {}: depends_on does not match the justification's premises",
                    step.id
                )));
            }
            for dep in &step.depends_on {
                if !seen.contains(dep.as_str()) {
                    return Err(ProverError::InvalidScript(format!(
                        "step {}: premise {dep} is not defined earlier in the script",
                        step.id
                    )));
                }
            }
            if !seen.insert(&step.id) {
                return Err(ProverError::InvalidScript(format!(
                    "duplicate step id {}",
                    step.id
                )));
            }
        }
        if !seen.contains(self.conclusion.as_str()) {
            return Err(ProverError::InvalidScript(format!(
                "conclusion {} is not a step",
                self.conclusion
            )));
        }
        Ok(())
    }

    pub fn step(&self, id: &str) -> Option<&ProofStep> {
        self.steps.iter().find(|s| s.id == id)
    }
}

/// Outcome of checking one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    /// The claim was checked and holds.
    Verified,
    /// The claim is a declared assumption.
    Axiom,
    /// The claim was checked and the check did not go through.
    Failed,
}

/// Checkable material a step's verification produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Full gate report with certificates (LP verdicts).
    Gate { report: crate::gate::GateReport },
    /// Optimality certificate for the dual-count minimum (LP bounds).
    BoundCert {
        mode: Mode,
        cert: crate::lp::OptimalSolution,
    },
    /// The Griesmer numbers.
    GriesmerTrace {
        min_distance: u64,
        required_length: u64,
    },
    /// Recomputed structural facts, one line each.
    Derived { facts: Vec<String> },
    /// The exact value an expression evaluated to.
    ArithmeticValue { value: Rat },
    /// The admissible support overlaps behind a pair exclusion.
    PairOverlaps { overlaps: std::collections::BTreeSet<usize> },
}

/// A step together with its verification outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: ProofStep,
    pub status: StepStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub wall_ms: u64,
}

/// Everything a run produced: the script, per-step evidence, and the global
/// verdict. Self-contained for offline re-checking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofLog {
    pub script_name: String,
    pub description: String,
    pub conclusion: StepId,
    /// True when every step is verified (or a declared assumption).
    pub verified: bool,
    pub records: Vec<StepRecord>,
    pub total_wall_ms: u64,
}

impl ProofLog {
    pub fn record(&self, id: &str) -> Option<&StepRecord> {
        self.records.iter().find(|r| r.step.id == id)
    }

    /// The record for a verified (non-assumption) occurrence of `claim`.
    pub fn verified_claim(&self, claim: &Claim) -> Option<&StepRecord> {
        self.records
            .iter()
            .find(|r| r.status == StepStatus::Verified && &r.step.claim == claim)
    }
}

#[derive(Debug, Error)]
pub enum ProverError {
    #[error("invalid script: {0}")]
    InvalidScript(String),
    #[error("step {id}: {what}")]
    Step { id: StepId, what: String },
    #[error("corollary: {0}")]
    Corollary(String),
}
