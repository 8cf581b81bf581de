//! The bundled nonexistence script and its surface-geometry corollary.
//!
//! [`sextic66_script`] wires the complete argument that no binary linear
//! code of length 66 and dimension 13 has all its nonzero weights in
//! `{24, 32, 40, 56}`. [`sextic_corollary`] combines the verified log with
//! the classical facts about even node sets on sextic surfaces — each one a
//! declared, individually withdrawable assumption — into a statement about
//! a hypothetical 66-node sextic.

use super::engine::check_log;
use super::{Claim, Justification, ProofLog, ProofScript, ProofStep, ProverError, StepStatus};
use crate::expr::Expr;
use crate::gate::Mode;
use crate::geometry::{
    admissible_even_weights_with, code_dim_lower_bound, min_even_weight, GeometryAssumptions,
    SEXTIC_MIDDLE_RANK,
};
use crate::rat::Rat;
use crate::spec::CodeSpec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Name of the bundled script.
pub const SCRIPT_NAME: &str = "sextic66";

fn heavy(n: usize, k: usize) -> CodeSpec {
    CodeSpec::new(n, k, [24, 32, 40, 56])
}

fn light(n: usize, k: usize) -> CodeSpec {
    CodeSpec::new(n, k, [24, 32, 56])
}

fn fifths(n: usize, k: usize) -> CodeSpec {
    CodeSpec::new(n, k, [4, 8, 12, 16, 20])
}

fn no(spec: CodeSpec) -> Claim {
    Claim::NoCode { spec }
}

fn lp_verdict(id: &str, spec: CodeSpec) -> ProofStep {
    ProofStep::new(id, no(spec), Justification::LpVerdict { mode: Mode::Half })
}

fn axiom(id: &str, statement: &str, citation: &str) -> ProofStep {
    ProofStep::new(
        id,
        Claim::Assumption {
            statement: statement.to_owned(),
        },
        Justification::Axiom {
            citation: citation.to_owned(),
        },
    )
}

/// The complete proof that no `[66, 13]` binary code has all nonzero
/// weights in `{24, 32, 40, 56}`, plus the pair-exclusion facts and declared
/// geometric assumptions the corollary draws on.
pub fn sextic66_script() -> ProofScript {
    let mut steps: Vec<ProofStep> = Vec::new();

    // Declared classical inputs. None of them feeds the coding-theory chain;
    // they are consumed by the corollary and can be withdrawn one by one.
    steps.push(axiom(
        "axiom-basset-66",
        "A nodal sextic surface in projective 3-space has at most 66 nodes.",
        "Basset's node-count bound",
    ));
    steps.push(axiom(
        "axiom-dim-bound",
        "For a sextic with s nodes, the even node sets form a binary linear code of \
         dimension at least s - 53.",
        "Beauville's count via the rank-106 middle lattice of the resolution",
    ));
    steps.push(axiom(
        "axiom-divisible-8",
        "Every even node set on a nodal sextic has size divisible by 8.",
        "Reid's divisibility for even sets of nodes",
    ));
    steps.push(axiom(
        "axiom-min-weight-geom",
        "A nonempty even node set on a nodal sextic has at least 24 nodes.",
        "section count of the associated double cover (Catanese's even-set framework)",
    ));
    steps.push(axiom(
        "axiom-no-48",
        "A sextic with 66 nodes carries no even node set of exactly 48 nodes.",
        "contact-surface analysis of the associated double cover",
    ));

    // Linear-programming bedrock: small weight sets the gate refutes
    // outright.
    steps.push(lp_verdict("lp-21-10-T", fifths(21, 10)));
    steps.push(lp_verdict("lp-22-11-T", fifths(22, 11)));
    steps.push(lp_verdict("lp-20-10-T", fifths(20, 10)));
    steps.push(lp_verdict("lp-58-11", light(58, 11)));

    // The 56-light family [n, 11, {24,32,56}] falls for n = 59, 60, 61 by
    // peeling one vanishing coordinate at a time.
    steps.push(lp_verdict("lp-59-11-mu1", light(59, 11).with_dual_zero(1)));
    steps.push(ProofStep::new(
        "no-59-11-light",
        no(light(59, 11)),
        Justification::DualSplit {
            cases: vec![(1, "lp-58-11".into())],
            lp: "lp-59-11-mu1".into(),
        },
    ));
    steps.push(lp_verdict("lp-60-11-mu1", light(60, 11).with_dual_zero(1)));
    steps.push(ProofStep::new(
        "no-60-11-light",
        no(light(60, 11)),
        Justification::DualSplit {
            cases: vec![(1, "no-59-11-light".into())],
            lp: "lp-60-11-mu1".into(),
        },
    ));
    steps.push(lp_verdict("lp-61-11-mu1", light(61, 11).with_dual_zero(1)));
    steps.push(ProofStep::new(
        "no-61-11-light",
        no(light(61, 11)),
        Justification::DualSplit {
            cases: vec![(1, "no-60-11-light".into())],
            lp: "lp-61-11-mu1".into(),
        },
    ));

    // Full weight set at [61, 11]: split on a weight-40 word.
    steps.push(ProofStep::new(
        "no-61-11",
        no(heavy(61, 11)),
        Justification::Residual {
            w: 40,
            residual: "lp-21-10-T".into(),
            without: Some("no-61-11-light".into()),
        },
    ));

    // The same for [62, 12].
    steps.push(lp_verdict("lp-62-12-mu1", light(62, 12).with_dual_zero(1)));
    steps.push(ProofStep::new(
        "mono-61-12-light",
        no(light(61, 12)),
        Justification::Monotone {
            from: "no-61-11-light".into(),
        },
    ));
    steps.push(ProofStep::new(
        "no-62-12-light",
        no(light(62, 12)),
        Justification::DualSplit {
            cases: vec![(1, "mono-61-12-light".into())],
            lp: "lp-62-12-mu1".into(),
        },
    ));
    steps.push(ProofStep::new(
        "no-62-12",
        no(heavy(62, 12)),
        Justification::Residual {
            w: 40,
            residual: "lp-22-11-T".into(),
            without: Some("no-62-12-light".into()),
        },
    ));

    // [60, 11] with the full weight set, needed by the later dual splits.
    steps.push(ProofStep::new(
        "no-60-11-R",
        no(heavy(60, 11)),
        Justification::Residual {
            w: 40,
            residual: "lp-20-10-T".into(),
            without: Some("no-60-11-light".into()),
        },
    ));

    // Dimension transfers.
    steps.push(ProofStep::new(
        "mono-62-13",
        no(heavy(62, 13)),
        Justification::Monotone {
            from: "no-62-12".into(),
        },
    ));
    steps.push(ProofStep::new(
        "mono-61-12",
        no(heavy(61, 12)),
        Justification::Monotone {
            from: "no-61-11".into(),
        },
    ));

    // [63, 13] and [64, 13]: split on dual words of weight 1, 2, 3; the
    // remainder is refuted by the gate.
    steps.push(lp_verdict(
        "lp-63-13-mu123",
        heavy(63, 13)
            .with_dual_zero(1)
            .with_dual_zero(2)
            .with_dual_zero(3),
    ));
    steps.push(ProofStep::new(
        "no-63-13",
        no(heavy(63, 13)),
        Justification::DualSplit {
            cases: vec![
                (1, "mono-62-13".into()),
                (2, "mono-61-12".into()),
                (3, "no-60-11-R".into()),
            ],
            lp: "lp-63-13-mu123".into(),
        },
    ));
    steps.push(lp_verdict(
        "lp-64-13-mu123",
        heavy(64, 13)
            .with_dual_zero(1)
            .with_dual_zero(2)
            .with_dual_zero(3),
    ));
    steps.push(ProofStep::new(
        "no-64-13",
        no(heavy(64, 13)),
        Justification::DualSplit {
            cases: vec![
                (1, "no-63-13".into()),
                (2, "no-62-12".into()),
                (3, "no-61-11".into()),
            ],
            lp: "lp-64-13-mu123".into(),
        },
    ));

    // [65, 13]: no vanishing coordinate, at least five deuces, and both
    // two-deuce configurations land on refuted specs.
    steps.push(ProofStep::new(
        "bound-65-mu2",
        Claim::DualAtLeast {
            spec: heavy(65, 13).with_dual_zero(1),
            m: 2,
            bound: 5,
        },
        Justification::LpBound { mode: Mode::Half },
    ));
    steps.push(ProofStep::new(
        "no-65-13",
        no(heavy(65, 13)),
        Justification::DeucePair {
            shorten1: "no-64-13".into(),
            bound: "bound-65-mu2".into(),
            disjoint: "no-61-11".into(),
            overlap: "no-62-12".into(),
        },
    ));

    // [66, 13]: the deuce-graph endgame.
    steps.push(ProofStep::new(
        "bound-66-mu2",
        Claim::DualAtLeast {
            spec: heavy(66, 13).with_dual_zero(1),
            m: 2,
            bound: 7,
        },
        Justification::LpBound { mode: Mode::Half },
    ));
    steps.push(ProofStep::new(
        "pair-56-56",
        Claim::PairExcluded {
            spec: heavy(66, 13),
            j1: 56,
            j2: 56,
        },
        Justification::PairInteraction,
    ));
    steps.push(ProofStep::new(
        "arith-free-positions",
        Claim::Arithmetic {
            expr: Expr::floor(Expr::div(
                Expr::sub(Expr::int(66), Expr::int(56)),
                Expr::int(2),
            )),
            equals: Rat::from(5i64),
        },
        Justification::Arithmetic,
    ));
    steps.push(ProofStep::new(
        "arith-survivors",
        Claim::Arithmetic {
            expr: Expr::sub(Expr::int(7), Expr::int(1)),
            equals: Rat::from(6i64),
        },
        Justification::Arithmetic,
    ));
    steps.push(ProofStep::new(
        "mono-62-12-sub",
        no(CodeSpec::new(62, 12, [24, 32, 40])),
        Justification::Monotone {
            from: "no-62-12".into(),
        },
    ));
    steps.push(ProofStep::new(
        "shorten-64-13-E",
        no(CodeSpec::new(64, 13, [24, 32, 40, 64])
            .forcing(64)
            .with_dual_lower(2, Rat::one())),
        Justification::Shorten {
            components: vec![2],
            reduced: "mono-62-12-sub".into(),
        },
    ));
    steps.push(ProofStep::new(
        "adjoin-64-12-D",
        no(CodeSpec::new(64, 12, [24, 32, 40]).with_dual_lower(2, Rat::one())),
        Justification::Adjoin {
            from: "shorten-64-13-E".into(),
        },
    ));
    steps.push(ProofStep::new(
        "no-66-13",
        no(heavy(66, 13)),
        Justification::DeuceGraph {
            shorten1: "no-65-13".into(),
            bound: "bound-66-mu2".into(),
            cases: vec![
                "no-62-12".into(),
                "mono-61-12".into(),
                "no-60-11-R".into(),
                "no-61-11".into(),
            ],
            heavy: 56,
            unique_heavy: "pair-56-56".into(),
            free_positions: "arith-free-positions".into(),
            survivors: "arith-survivors".into(),
            subcode: "adjoin-64-12-D".into(),
        },
    ));

    // Pair-exclusion facts on the full admissible weight set, consumed by
    // the corollary's endgame.
    let admissible = CodeSpec::new(66, 13, [24, 32, 40, 56, 64]);
    steps.push(ProofStep::new(
        "pair-56-64",
        Claim::PairExcluded {
            spec: admissible.clone(),
            j1: 56,
            j2: 64,
        },
        Justification::PairInteraction,
    ));
    steps.push(ProofStep::new(
        "pair-64-64",
        Claim::PairExcluded {
            spec: admissible,
            j1: 64,
            j2: 64,
        },
        Justification::PairInteraction,
    ));

    ProofScript {
        name: SCRIPT_NAME.to_owned(),
        description: "No binary linear code of length 66 and dimension 13 has all its \
                      nonzero weights in {24, 32, 40, 56}; with the declared surface \
                      assumptions, constraints on a hypothetical 66-node sextic follow."
            .to_owned(),
        steps,
        conclusion: "no-66-13".to_owned(),
    }
}

/// Which classical surface facts the corollary may use. Withdrawing one
/// degrades the conclusion instead of silently keeping it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomToggles {
    /// No sextic exceeds 66 nodes.
    pub basset_bound: bool,
    /// The even-set code of an s-nodal sextic has dimension >= s - 53.
    pub dim_provenance: bool,
    /// Even node sets have size divisible by 8.
    pub divisibility_by_8: bool,
    /// Nonempty even node sets have at least 24 nodes.
    pub min_weight_geometry: bool,
    /// A 66-node sextic has no even set of size 48.
    pub weight_48_excluded: bool,
}

impl Default for AxiomToggles {
    fn default() -> Self {
        AxiomToggles {
            basset_bound: true,
            dim_provenance: true,
            divisibility_by_8: true,
            min_weight_geometry: true,
            weight_48_excluded: true,
        }
    }
}

impl AxiomToggles {
    fn entries(&self) -> [(&'static str, bool); 5] {
        [
            ("axiom-basset-66", self.basset_bound),
            ("axiom-dim-bound", self.dim_provenance),
            ("axiom-divisible-8", self.divisibility_by_8),
            ("axiom-min-weight-geom", self.min_weight_geometry),
            ("axiom-no-48", self.weight_48_excluded),
        ]
    }
}

/// Inputs of [`sextic_corollary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryInputs {
    /// Node count of the hypothetical surface.
    pub nodes: u64,
    pub axioms: AxiomToggles,
}

impl Default for CorollaryInputs {
    fn default() -> Self {
        CorollaryInputs {
            nodes: 66,
            axioms: AxiomToggles::default(),
        }
    }
}

impl CorollaryInputs {
    pub fn surface(nodes: u64) -> Self {
        CorollaryInputs {
            nodes,
            ..CorollaryInputs::default()
        }
    }
}

/// What the verified log plus the chosen assumptions yield for a surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub nodes: u64,
    /// Lower bound on the even-set code's dimension, when its provenance is
    /// granted.
    pub dim_lower_bound: Option<u64>,
    /// Sizes an even node set may still have under the granted assumptions.
    pub admissible_weights: Vec<u64>,
    /// True when the full conclusion is established.
    pub asserted: bool,
    pub conclusion: String,
    /// The reasoning, one step per line.
    pub details: Vec<String>,
    /// Everything that weakened or blocked the conclusion.
    pub caveats: Vec<String>,
}

/// Combines a verified run of [`sextic66_script`] with the granted surface
/// assumptions.
///
/// With everything granted and `nodes = 66`, the full conclusion is
/// asserted: the even-set code is exactly 13-dimensional, contains exactly
/// one even set of size 64, and none of size 56. Withdrawing assumptions, or
/// asking about fewer nodes, degrades the conclusion honestly.
pub fn sextic_corollary(
    log: &ProofLog,
    inputs: &CorollaryInputs,
) -> Result<CorollaryReport, ProverError> {
    let check = check_log(log);
    if !check.verified {
        return Err(ProverError::Corollary(format!(
            "the proof log does not verify: {}",
            check
                .failures
                .first()
                .map(String::as_str)
                .unwrap_or("it reports unverified steps")
        )));
    }

    let nodes = inputs.nodes;
    let mut details: Vec<String> = Vec::new();
    let mut caveats: Vec<String> = Vec::new();

    // An assumption is in force only when granted by the caller AND declared
    // by the log.
    let mut granted = inputs.axioms;
    for (id, flag) in inputs.axioms.entries() {
        let declared = log.record(id).is_some_and(|r| {
            r.status == StepStatus::Axiom && matches!(r.step.claim, Claim::Assumption { .. })
        });
        match (flag, declared) {
            (true, true) => {
                if let Some(Claim::Assumption { statement }) = log.record(id).map(|r| &r.step.claim)
                {
                    details.push(format!("assuming: {statement} [{id}]"));
                }
            }
            (true, false) => {
                caveats.push(format!(
                    "assumption {id} is not declared by the log; treated as withdrawn"
                ));
                match id {
                    "axiom-basset-66" => granted.basset_bound = false,
                    "axiom-dim-bound" => granted.dim_provenance = false,
                    "axiom-divisible-8" => granted.divisibility_by_8 = false,
                    "axiom-min-weight-geom" => granted.min_weight_geometry = false,
                    "axiom-no-48" => granted.weight_48_excluded = false,
                    _ => unreachable!("entries() lists known ids"),
                }
            }
            (false, _) => caveats.push(format!("assumption {id} withdrawn by request")),
        }
    }

    // The weight-48 exclusion is stated for 66-node surfaces only.
    let exclude_48 = granted.weight_48_excluded && nodes == 66;
    if granted.weight_48_excluded && nodes != 66 {
        caveats.push(
            "the weight-48 exclusion is stated for 66-node surfaces and is not applied"
                .to_owned(),
        );
    }

    let assumptions = GeometryAssumptions {
        divisible_by_8: granted.divisibility_by_8,
        exclude_48,
        min_weight_24: granted.min_weight_geometry,
    };
    let (admissible, geometry_caveats) = admissible_even_weights_with(nodes, &assumptions)
        .map_err(|e| ProverError::Corollary(e.to_string()))?;
    caveats.extend(geometry_caveats);
    details.push(format!(
        "admissible even-set sizes for {nodes} nodes: {admissible:?}"
    ));

    if granted.min_weight_geometry {
        let trace =
            min_even_weight(6).map_err(|e| ProverError::Corollary(e.to_string()))?;
        if trace.min_weight != 24 {
            return Err(ProverError::Corollary(format!(
                "the section count yields minimum weight {}, not 24",
                trace.min_weight
            )));
        }
        let rejected: Vec<u64> = trace.rejected.iter().map(|r| r.weight).collect();
        details.push(format!(
            "cross-check: the double-cover section count rejects sizes {rejected:?} and \
             admits 24"
        ));
    }

    let dim_lower_bound = if granted.dim_provenance {
        let dim = code_dim_lower_bound(nodes);
        details.push(format!(
            "the even-set code has dimension >= {nodes} - {}/2 = {dim}",
            SEXTIC_MIDDLE_RANK
        ));
        Some(dim)
    } else {
        None
    };

    if granted.basset_bound {
        details.push("no sextic carries more than 66 nodes, so 66 is the extremal case".into());
    }

    // Ingredients from the log.
    let theorem_spec = heavy(66, 13);
    let have_theorem = log
        .verified_claim(&Claim::NoCode {
            spec: theorem_spec.clone(),
        })
        .is_some();
    let admissible_usize: BTreeSet<usize> = admissible.iter().map(|&w| w as usize).collect();
    let ambient = CodeSpec::new(66, 13, admissible_usize.clone());
    let unique_64 = log
        .verified_claim(&Claim::PairExcluded {
            spec: ambient.clone(),
            j1: 64,
            j2: 64,
        })
        .is_some();
    let no_56_beside_64 = log
        .verified_claim(&Claim::PairExcluded {
            spec: ambient,
            j1: 56,
            j2: 64,
        })
        .is_some();

    // The assertion needs: a 66-node surface, the dimension bound reaching
    // 13, the admissible sizes splitting into the refuted set plus {64}, and
    // the two pair exclusions on exactly that admissible set.
    let mut blockers: Vec<String> = Vec::new();
    if nodes != 66 {
        blockers.push(format!("the argument is about 66-node surfaces, not {nodes}"));
    }
    match dim_lower_bound {
        Some(dim) if dim >= 13 => {}
        Some(dim) => blockers.push(format!(
            "the dimension bound reaches only {dim}, below the 13 the refutation needs"
        )),
        None => blockers.push("without its provenance, no dimension bound is available".into()),
    }
    if !admissible_usize.contains(&64) {
        blockers.push("size 64 is not admissible, so the split argument does not start".into());
    }
    let escaping: Vec<usize> = admissible_usize
        .iter()
        .copied()
        .filter(|w| *w != 64 && !theorem_spec.weights.contains(w))
        .collect();
    if !escaping.is_empty() {
        blockers.push(format!(
            "admissible sizes {escaping:?} are not covered by the refuted weight set \
             {{24,32,40,56}}"
        ));
    }
    if !have_theorem {
        blockers.push("the log does not establish the [66,13,{24,32,40,56}] refutation".into());
    }
    if !unique_64 && blockers.is_empty() {
        blockers.push("the log lacks the uniqueness of weight-64 words".into());
    }
    if !no_56_beside_64 && blockers.is_empty() {
        blockers.push("the log lacks the 56/64 exclusion".into());
    }

    let asserted = blockers.is_empty();
    let conclusion = if asserted {
        details.push(
            "every 13-dimensional subcode must contain a size-64 set: otherwise its \
             weights would lie in {24,32,40,56}, which is refuted"
                .into(),
        );
        details.push(
            "any two size-64 sets coincide, so the code contains exactly one size-64 set \
             [pair-64-64: no admissible overlap]"
                .into(),
        );
        details.push(
            "were the dimension above 13, a hyperplane avoiding that set would contain a \
             13-dimensional subcode without size 64 — impossible; the dimension is \
             exactly 13"
                .into(),
        );
        details.push(
            "no size-56 set coexists with the size-64 set, so size 56 never occurs \
             [pair-56-64: no admissible overlap]"
                .into(),
        );
        "A 66-node sextic would have an even-set code of dimension exactly 13, with \
         exactly one even set of size 64, none of size 56, and all others of size 24, \
         32, or 40."
            .to_owned()
    } else if nodes == 65 {
        caveats.extend(blockers);
        "No conclusion for 65 nodes: the dimension bound stops at 12, and 65-node \
         sextics are in fact known to exist."
            .to_owned()
    } else {
        caveats.extend(blockers);
        format!("No conclusion for {nodes} nodes under the granted assumptions.")
    };

    Ok(CorollaryReport {
        nodes,
        dim_lower_bound,
        admissible_weights: admissible,
        asserted,
        conclusion,
        details,
        caveats,
    })
}
