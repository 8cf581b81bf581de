//! Script execution and solver-free log re-checking.
//!
//! Both entry points funnel through one per-step verifier so that a claim
//! can never pass at run time under a weaker rule than at re-check time.
//! Steps justified by linear programming are the only ones treated
//! differently: [`run_script`] solves and stores certificates, while
//! [`check_log`] verifies the stored certificates arithmetically.

use super::{
    Claim, Evidence, Justification, ProofLog, ProofScript, ProofStep, ProverError, StepRecord,
    StepStatus,
};
use crate::bounds::{griesmer_check, implies_nonexistence, GriesmerVerdict};
use crate::gate::{self, Mode, Quantity};
use crate::lp::{self, LpOutcome, Sense};
use crate::rat::Rat;
use crate::reductions::{
    adjoin_complement, deuce_graph_cases, dual_word_shorten, pair_interaction, shorten_components,
};
use crate::spec::CodeSpec;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

/// How a step check can go wrong.
///
/// Structural faults mean the script itself is malformed (a premise has the
/// wrong shape, a reduction's side condition fails); they abort the whole
/// run. Falsified means the step was well-posed but the mathematics did not
/// go through; the step is recorded as failed and the run continues.
enum Fault {
    Structural(String),
    Falsified(String),
}

type Claims<'a> = HashMap<&'a str, &'a Claim>;

fn claim_map(steps: &[ProofStep]) -> Claims<'_> {
    steps.iter().map(|s| (s.id.as_str(), &s.claim)).collect()
}

fn as_no_code<'a>(claim: &'a Claim, role: &str) -> Result<&'a CodeSpec, Fault> {
    match claim {
        Claim::NoCode { spec } => Ok(spec),
        other => Err(Fault::Structural(format!(
            "{role} must be a nonexistence claim, found: {other}"
        ))),
    }
}

fn premise<'a>(claims: &Claims<'a>, id: &str) -> Result<&'a Claim, Fault> {
    claims
        .get(id)
        .copied()
        .ok_or_else(|| Fault::Structural(format!("premise {id} is not part of the script")))
}

/// Checks that the premise step refutes every code matching `target`, and
/// appends the fact line.
fn premise_refutes(
    claims: &Claims<'_>,
    id: &str,
    target: &CodeSpec,
    role: &str,
    facts: &mut Vec<String>,
) -> Result<(), Fault> {
    let refuted = as_no_code(premise(claims, id)?, &format!("premise {id}"))?;
    if !implies_nonexistence(refuted, target) {
        return Err(Fault::Falsified(format!(
            "{role}: premise {id} refutes {refuted}, which does not cover {target}"
        )));
    }
    facts.push(format!("{role}: {target} is refuted via {id}"));
    Ok(())
}

/// Verifies one step whose justification needs no solver. Returns the status
/// (`Verified` or `Axiom`) and explanatory evidence.
///
/// This function is the shared core of running and re-checking; it must stay
/// free of any state beyond the script's claims.
fn check_structural_step(
    step: &ProofStep,
    claims: &Claims<'_>,
) -> Result<(StepStatus, Option<Evidence>), Fault> {
    let mut facts: Vec<String> = Vec::new();
    match &step.justification {
        Justification::LpVerdict { .. } | Justification::LpBound { .. } => Err(Fault::Structural(
            "internal: LP-backed step routed to the structural checker".into(),
        )),

        Justification::Griesmer => {
            let spec = as_no_code(&step.claim, "the claim")?;
            match griesmer_check(spec).map_err(|e| Fault::Structural(e.to_string()))? {
                GriesmerVerdict::Refuted {
                    min_distance,
                    required_length,
                } => Ok((
                    StepStatus::Verified,
                    Some(Evidence::GriesmerTrace {
                        min_distance,
                        required_length,
                    }),
                )),
                GriesmerVerdict::Inconclusive {
                    min_distance,
                    required_length,
                } => Err(Fault::Falsified(format!(
                    "the length bound for distance {min_distance} is {required_length} <= {}",
                    spec.n
                ))),
            }
        }

        Justification::Monotone { from } => {
            let spec = as_no_code(&step.claim, "the claim")?;
            premise_refutes(claims, from, spec, "transfer", &mut facts)?;
            Ok((StepStatus::Verified, Some(Evidence::Derived { facts })))
        }

        Justification::Residual {
            w,
            residual,
            without,
        } => {
            let spec = as_no_code(&step.claim, "the claim")?;
            if !spec.has_no_side_constraints() {
                return Err(Fault::Structural(
                    "a residual case split needs a spec without side constraints".into(),
                ));
            }
            let res = residual_spec_for(spec, *w)?;
            facts.push(format!("a weight-{w} word projects {spec} onto {res}"));
            premise_refutes(claims, residual, &res, "with the word", &mut facts)?;

            let mut remaining = spec.weights.clone();
            remaining.remove(w);
            if spec.forced.contains(w) {
                if without.is_some() {
                    return Err(Fault::Structural(format!(
                        "weight {w} is forced, so the no-word case cannot occur and must have \
                         no premise"
                    )));
                }
                facts.push(format!("weight {w} is forced; no other case exists"));
            } else if remaining.is_empty() {
                if without.is_some() {
                    return Err(Fault::Structural(format!(
                        "without weight {w} no weights remain, so the no-word case needs \
                         no premise"
                    )));
                }
                facts.push(format!(
                    "without weight {w} no weights remain, and a code of dimension {} \
                     cannot be weightless",
                    spec.k
                ));
            } else {
                let Some(without) = without else {
                    return Err(Fault::Structural(format!(
                        "weight {w} is not forced; the case without it needs a premise"
                    )));
                };
                let mut no_word = CodeSpec::new(spec.n, spec.k, remaining);
                no_word.forced = spec.forced.clone();
                premise_refutes(claims, without, &no_word, "without the word", &mut facts)?;
            }
            Ok((StepStatus::Verified, Some(Evidence::Derived { facts })))
        }

        Justification::DualSplit { cases, lp } => {
            let spec = as_no_code(&step.claim, "the claim")?;
            if !spec.is_plain() {
                return Err(Fault::Structural(
                    "a dual case split needs a plain spec".into(),
                ));
            }
            if cases.is_empty() {
                return Err(Fault::Structural("a dual case split needs cases".into()));
            }
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            for &(m, _) in cases {
                if m == 0 {
                    return Err(Fault::Structural(
                        "a weight-0 dual word is the zero word and splits nothing".into(),
                    ));
                }
                if !seen.insert(m) {
                    return Err(Fault::Structural(format!(
                        "dual weight {m} is split on twice"
                    )));
                }
            }
            for (m, id) in cases {
                let reduced = dual_word_shorten(spec, *m)
                    .map_err(|e| Fault::Structural(format!("dual weight {m}: {e}")))?;
                premise_refutes(
                    claims,
                    id,
                    &reduced,
                    &format!("a weight-{m} dual word shortens {spec} to"),
                    &mut facts,
                )?;
            }
            let mut pinned = spec.clone();
            for &m in &seen {
                pinned = pinned.with_dual_zero(m);
            }
            let lp_claimed = as_no_code(premise(claims, lp)?, &format!("premise {lp}"))?;
            if lp_claimed != &pinned {
                return Err(Fault::Structural(format!(
                    "the residual case must refute exactly {pinned}, but premise {lp} \
                     refutes {lp_claimed}"
                )));
            }
            facts.push(format!(
                "with all split dual counts zero, {pinned} is refuted via {lp}"
            ));
            Ok((StepStatus::Verified, Some(Evidence::Derived { facts })))
        }

        Justification::Shorten {
            components,
            reduced,
        } => {
            let spec = as_no_code(&step.claim, "the claim")?;
            let [c] = components[..] else {
                return Err(Fault::Structural(
                    "shortening is justified by one guaranteed dual word: exactly one \
                     component"
                        .into(),
                ));
            };
            if c != 1 && c != 2 {
                return Err(Fault::Structural(format!(
                    "a single dual word only yields a component of size 1 or 2, not {c}"
                )));
            }
            let guaranteed = spec
                .dual_lower
                .get(&c)
                .is_some_and(|v| *v >= Rat::one());
            if !guaranteed {
                return Err(Fault::Structural(format!(
                    "the spec does not guarantee a weight-{c} dual word to shorten on"
                )));
            }
            let short = shorten_components(spec, components)
                .map_err(|e| Fault::Structural(e.to_string()))?;
            facts.push(format!(
                "a guaranteed weight-{c} dual word shortens {spec} to {short}"
            ));
            premise_refutes(claims, reduced, &short, "shortened", &mut facts)?;
            Ok((StepStatus::Verified, Some(Evidence::Derived { facts })))
        }

        Justification::Adjoin { from } => {
            let spec = as_no_code(&step.claim, "the claim")?;
            let extended =
                adjoin_complement(spec).map_err(|e| Fault::Structural(e.to_string()))?;
            let target = as_no_code(premise(claims, from)?, &format!("premise {from}"))?;
            if target != &extended {
                return Err(Fault::Structural(format!(
                    "adjoining the full-support word to {spec} yields {extended}, but \
                     premise {from} refutes {target}"
                )));
            }
            facts.push(format!(
                "a code matching {spec} extends by the full-support word to one \
                 matching {extended}, refuted via {from}"
            ));
            Ok((StepStatus::Verified, Some(Evidence::Derived { facts })))
        }

        Justification::DeucePair {
            shorten1,
            bound,
            disjoint,
            overlap,
        } => {
            let spec = as_no_code(&step.claim, "the claim")?;
            if !spec.is_plain() {
                return Err(Fault::Structural("the deuce split needs a plain spec".into()));
            }
            let b = check_deuce_bound(claims, bound, spec, shorten1, &mut facts)?;
            if b < 2 {
                return Err(Fault::Falsified(format!(
                    "two distinct deuces are needed; the bound premise gives only {b}"
                )));
            }
            let disjoint_spec = shorten_components(spec, &[2, 2])
                .map_err(|e| Fault::Structural(e.to_string()))?;
            premise_refutes(
                claims,
                disjoint,
                &disjoint_spec,
                "two disjoint deuces shorten to",
                &mut facts,
            )?;
            let overlap_spec =
                shorten_components(spec, &[3]).map_err(|e| Fault::Structural(e.to_string()))?;
            premise_refutes(
                claims,
                overlap,
                &overlap_spec,
                "two overlapping deuces close to a triangle and shorten to",
                &mut facts,
            )?;
            Ok((StepStatus::Verified, Some(Evidence::Derived { facts })))
        }

        Justification::DeuceGraph {
            shorten1,
            bound,
            cases,
            heavy,
            unique_heavy,
            free_positions,
            survivors,
            subcode,
        } => {
            let spec = as_no_code(&step.claim, "the claim")?;
            if !spec.is_plain() {
                return Err(Fault::Structural(
                    "the deuce-graph endgame needs a plain spec".into(),
                ));
            }
            if !spec.weights.contains(heavy) {
                return Err(Fault::Structural(format!(
                    "the distinguished weight {heavy} is not in the weight set"
                )));
            }
            let b = check_deuce_bound(claims, bound, spec, shorten1, &mut facts)?;
            if b < 4 {
                return Err(Fault::Falsified(format!(
                    "at least 4 deuces are needed to force the all-edges shape; the bound \
                     premise gives only {b}"
                )));
            }
            let analysis = deuce_graph_cases(spec, b as usize)
                .map_err(|e| Fault::Structural(e.to_string()))?;
            let conclusion = analysis.all_k2_conclusion.as_ref().ok_or_else(|| {
                Fault::Structural("the case table does not close at this edge count".into())
            })?;
            if cases.len() != analysis.cases.len() {
                return Err(Fault::Structural(format!(
                    "the clique case table has {} cases, the script wires {}",
                    analysis.cases.len(),
                    cases.len()
                )));
            }
            for (id, case) in cases.iter().zip(&analysis.cases) {
                premise_refutes(
                    claims,
                    id,
                    &case.reduced,
                    &format!("clique shape {:?} shortens to", case.shape),
                    &mut facts,
                )?;
            }
            facts.push(conclusion.clone());

            match premise(claims, unique_heavy)? {
                Claim::PairExcluded { spec: pspec, j1, j2 }
                    if pspec == spec && j1 == heavy && j2 == heavy =>
                {
                    facts.push(format!(
                        "any two weight-{heavy} words coincide, via {unique_heavy}"
                    ));
                }
                other => {
                    return Err(Fault::Structural(format!(
                        "premise {unique_heavy} must state that two weight-{heavy} words \
                         coincide under {spec}, found: {other}"
                    )));
                }
            }

            // Deuces are dual words, so every codeword meets each deuce in an
            // even number of positions: a deuce either avoids the support of a
            // weight-`heavy` word or sits entirely inside it. Disjoint deuces
            // avoiding it fit into the other n - heavy coordinates.
            let free = (spec.n - heavy) / 2;
            check_arith_premise(
                claims,
                free_positions,
                &Rat::from(free),
                "disjoint deuces avoiding the heavy support",
            )?;
            check_arith_premise(
                claims,
                survivors,
                &Rat::from(b - 1),
                "deuces surviving the shortening",
            )?;
            if free as u64 >= b {
                return Err(Fault::Falsified(format!(
                    "{free} free positions could host all {b} disjoint deuces, so none \
                     need meet the heavy support"
                )));
            }
            facts.push(format!(
                "at most {free} disjoint deuces avoid a weight-{heavy} support, but there \
                 are at least {b}: some deuce lies inside it (or no weight-{heavy} word \
                 exists and any deuce serves)"
            ));

            let sub = as_no_code(premise(claims, subcode)?, &format!("premise {subcode}"))?;
            let expected_n = spec.n - 2;
            let expected_k = spec.k - 1;
            let expected_weights: BTreeSet<usize> = spec
                .weights
                .iter()
                .copied()
                .filter(|&j| j != *heavy && j <= expected_n)
                .collect();
            if sub.n != expected_n || sub.k != expected_k {
                return Err(Fault::Structural(format!(
                    "shortening on an inside deuce yields parameters [{expected_n},{expected_k}], \
                     but premise {subcode} refutes {sub}"
                )));
            }
            if sub.weights != expected_weights {
                return Err(Fault::Structural(format!(
                    "the shortened code's weights lie in {:?}, but premise {subcode} \
                     requires {:?}",
                    expected_weights, sub.weights
                )));
            }
            if !sub.forced.is_empty() || !sub.fixed_counts.is_empty() || !sub.dual_fixed.is_empty()
            {
                return Err(Fault::Structural(format!(
                    "premise {subcode} imposes conditions the shortened code is not known \
                     to satisfy"
                )));
            }
            for (&m, v) in &sub.dual_lower {
                if m != 2 {
                    return Err(Fault::Structural(format!(
                        "the shortening only certifies weight-2 dual words, not weight-{m}"
                    )));
                }
                if *v > Rat::from(b - 1) {
                    return Err(Fault::Falsified(format!(
                        "only {} deuces survive the shortening, premise {subcode} needs {v}",
                        b - 1
                    )));
                }
            }
            facts.push(format!(
                "shortening there removes the unique weight-{heavy} word and keeps {} \
                 disjoint deuces: {sub} is refuted via {subcode}",
                b - 1
            ));
            Ok((StepStatus::Verified, Some(Evidence::Derived { facts })))
        }

        Justification::PairInteraction => {
            let Claim::PairExcluded { spec, j1, j2 } = &step.claim else {
                return Err(Fault::Structural(
                    "overlap arithmetic proves pair-exclusion claims only".into(),
                ));
            };
            let overlaps =
                pair_interaction(spec, *j1, *j2).map_err(|e| Fault::Structural(e.to_string()))?;
            let excluded = if j1 == j2 {
                overlaps.iter().all(|t| t == j1)
            } else {
                overlaps.is_empty()
            };
            if !excluded {
                return Err(Fault::Falsified(format!(
                    "support overlaps {overlaps:?} remain possible"
                )));
            }
            Ok((
                StepStatus::Verified,
                Some(Evidence::PairOverlaps { overlaps }),
            ))
        }

        Justification::Arithmetic => {
            let Claim::Arithmetic { expr, equals } = &step.claim else {
                return Err(Fault::Structural(
                    "evaluation proves arithmetic claims only".into(),
                ));
            };
            let value = expr.eval().map_err(|e| Fault::Structural(e.to_string()))?;
            if &value != equals {
                return Err(Fault::Falsified(format!(
                    "{expr} evaluates to {value}, not {equals}"
                )));
            }
            Ok((
                StepStatus::Verified,
                Some(Evidence::ArithmeticValue { value }),
            ))
        }

        Justification::Axiom { citation } => {
            let Claim::Assumption { .. } = &step.claim else {
                return Err(Fault::Structural(
                    "only explicitly stated assumptions may cite an external source".into(),
                ));
            };
            if citation.trim().is_empty() {
                return Err(Fault::Structural("an assumption needs a source".into()));
            }
            Ok((StepStatus::Axiom, None))
        }
    }
}

fn residual_spec_for(spec: &CodeSpec, w: usize) -> Result<CodeSpec, Fault> {
    crate::reductions::residual_spec(spec, w).map_err(|e| Fault::Structural(e.to_string()))
}

/// Shared premise check for the deuce arguments: `shorten1` refutes the spec
/// with a vanishing coordinate (hence `mu_1 = 0`), and `bound` gives a lower
/// bound on the deuce count under `mu_1 = 0`. Returns the bound.
fn check_deuce_bound(
    claims: &Claims<'_>,
    bound: &str,
    spec: &CodeSpec,
    shorten1: &str,
    facts: &mut Vec<String>,
) -> Result<u64, Fault> {
    let one_short = dual_word_shorten(spec, 1).map_err(|e| Fault::Structural(e.to_string()))?;
    premise_refutes(
        claims,
        shorten1,
        &one_short,
        "a weight-1 dual word shortens to",
        facts,
    )?;
    facts.push("hence no weight-1 dual word exists".to_owned());
    let expected_spec = spec.clone().with_dual_zero(1);
    match premise(claims, bound)? {
        Claim::DualAtLeast {
            spec: bspec,
            m: 2,
            bound: b,
        } if bspec == &expected_spec => {
            facts.push(format!("at least {b} deuces exist, via {bound}"));
            Ok(*b)
        }
        other => Err(Fault::Structural(format!(
            "premise {bound} must bound the deuce count of {expected_spec} from below, \
             found: {other}"
        ))),
    }
}

/// Checks that an arithmetic premise step pins exactly the expected value.
fn check_arith_premise(
    claims: &Claims<'_>,
    id: &str,
    expected: &Rat,
    role: &str,
) -> Result<(), Fault> {
    match premise(claims, id)? {
        Claim::Arithmetic { equals, .. } if equals == expected => Ok(()),
        Claim::Arithmetic { equals, .. } => Err(Fault::Structural(format!(
            "premise {id} ({role}) pins {equals}, expected {expected}"
        ))),
        other => Err(Fault::Structural(format!(
            "premise {id} ({role}) must be an arithmetic claim, found: {other}"
        ))),
    }
}

/// Options for [`run_script`].
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Check independent steps on the rayon thread pool. The log is
    /// identical either way; only wall-clock timings differ.
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { parallel: true }
    }
}

type Appraisal = (StepStatus, Option<Evidence>, Option<String>, u64);

fn appraise_step(step: &ProofStep, claims: &Claims<'_>) -> Result<Appraisal, ProverError> {
    let start = Instant::now();
    let (status, evidence, note) = match &step.justification {
        Justification::LpVerdict { mode } => run_lp_verdict(step, *mode)?,
        Justification::LpBound { mode } => run_lp_bound(step, *mode)?,
        _ => match check_structural_step(step, claims) {
            Ok((status, evidence)) => (status, evidence, None),
            Err(Fault::Structural(what)) => {
                return Err(ProverError::Step {
                    id: step.id.clone(),
                    what,
                })
            }
            Err(Fault::Falsified(what)) => (StepStatus::Failed, None, Some(what)),
        },
    };
    let wall_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    Ok((status, evidence, note, wall_ms))
}

fn run_lp_verdict(
    step: &ProofStep,
    mode: Mode,
) -> Result<(StepStatus, Option<Evidence>, Option<String>), ProverError> {
    let spec = match &step.claim {
        Claim::NoCode { spec } => spec,
        other => {
            return Err(ProverError::Step {
                id: step.id.clone(),
                what: format!("an LP verdict proves nonexistence claims only, found: {other}"),
            })
        }
    };
    let report = gate::feasibility_verdict(spec, mode).map_err(|e| ProverError::Step {
        id: step.id.clone(),
        what: e.to_string(),
    })?;
    if report.verdict.is_contradiction() {
        Ok((StepStatus::Verified, Some(Evidence::Gate { report }), None))
    } else {
        let note = format!("the gate finds no contradiction: {}", report.verdict.headline());
        Ok((StepStatus::Failed, Some(Evidence::Gate { report }), Some(note)))
    }
}

fn run_lp_bound(
    step: &ProofStep,
    mode: Mode,
) -> Result<(StepStatus, Option<Evidence>, Option<String>), ProverError> {
    let (spec, m, bound) = match &step.claim {
        Claim::DualAtLeast { spec, m, bound } => (spec, *m, *bound),
        other => {
            return Err(ProverError::Step {
                id: step.id.clone(),
                what: format!("an LP bound proves dual-count claims only, found: {other}"),
            })
        }
    };
    let outcome = gate::bound_quantity(spec, Quantity::Dual(m), Sense::Minimize, mode).map_err(
        |e| ProverError::Step {
            id: step.id.clone(),
            what: e.to_string(),
        },
    )?;
    match outcome {
        LpOutcome::Optimal(sol) => {
            // Dual weight counts of actual codes are integers, so the exact
            // LP minimum rounds up.
            let certified = Rat::from(sol.value.ceil_int());
            if Rat::from(bound) <= certified {
                Ok((
                    StepStatus::Verified,
                    Some(Evidence::BoundCert { mode, cert: sol }),
                    None,
                ))
            } else {
                let note = format!(
                    "the relaxation only certifies mu{m} >= {certified}, short of {bound}"
                );
                Ok((
                    StepStatus::Failed,
                    Some(Evidence::BoundCert { mode, cert: sol }),
                    Some(note),
                ))
            }
        }
        LpOutcome::Infeasible(_) => Ok((
            StepStatus::Failed,
            None,
            Some(
                "the relaxation is infeasible; state the step as a nonexistence claim \
                 instead of a vacuous bound"
                    .to_owned(),
            ),
        )),
        LpOutcome::Unbounded(_) => Err(ProverError::Step {
            id: step.id.clone(),
            what: "a dual count came back unbounded despite the total-size equality".into(),
        }),
    }
}

/// Runs every step of the script, solving LPs where called for, and returns
/// the full evidence log.
///
/// Structural defects in the script abort with an error; steps whose
/// mathematics fails to check out are recorded as failed and leave the log
/// unverified. A step is only as good as its premises: a verified check atop
/// an unverified premise is downgraded.
pub fn run_script(script: &ProofScript, options: &RunOptions) -> Result<ProofLog, ProverError> {
    script.validate()?;
    let claims = claim_map(&script.steps);
    let start = Instant::now();
    let appraisals: Vec<Result<Appraisal, ProverError>> = if options.parallel {
        script
            .steps
            .par_iter()
            .map(|step| appraise_step(step, &claims))
            .collect()
    } else {
        script
            .steps
            .iter()
            .map(|step| appraise_step(step, &claims))
            .collect()
    };

    let mut records = Vec::with_capacity(script.steps.len());
    for (step, appraisal) in script.steps.iter().zip(appraisals) {
        let (status, evidence, note, wall_ms) = appraisal?;
        records.push(StepRecord {
            step: step.clone(),
            status,
            evidence,
            note,
            wall_ms,
        });
    }
    downgrade_unsupported(&mut records);

    let verified = records.iter().all(|r| r.status != StepStatus::Failed);
    Ok(ProofLog {
        script_name: script.name.clone(),
        description: script.description.clone(),
        conclusion: script.conclusion.clone(),
        verified,
        records,
        total_wall_ms: u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX),
    })
}

/// Downgrades steps whose premises did not verify. Records must be in script
/// order (premises first).
fn downgrade_unsupported(records: &mut [StepRecord]) {
    let mut sound: HashSet<String> = HashSet::new();
    for record in records.iter_mut() {
        let supported = record
            .step
            .depends_on
            .iter()
            .all(|dep| sound.contains(dep.as_str()));
        if !supported && record.status == StepStatus::Verified {
            record.status = StepStatus::Failed;
            let reason = "a premise did not verify".to_owned();
            record.note = Some(match record.note.take() {
                Some(note) => format!("{note}; {reason}"),
                None => reason,
            });
        }
        if supported && record.status != StepStatus::Failed {
            sound.insert(record.step.id.clone());
        }
    }
}

/// Result of re-checking a [`ProofLog`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    /// True when the log is internally consistent, every record reproduces,
    /// and the log claims (correctly) to be verified.
    pub verified: bool,
    pub steps_checked: usize,
    pub failures: Vec<String>,
}

/// Re-checks a proof log without solving anything: stored LP certificates
/// are verified arithmetically, and every other step is re-derived from the
/// claims alone.
pub fn check_log(log: &ProofLog) -> CheckReport {
    let mut failures = Vec::new();
    let script = ProofScript {
        name: log.script_name.clone(),
        description: log.description.clone(),
        steps: log.records.iter().map(|r| r.step.clone()).collect(),
        conclusion: log.conclusion.clone(),
    };
    if let Err(e) = script.validate() {
        return CheckReport {
            verified: false,
            steps_checked: 0,
            failures: vec![e.to_string()],
        };
    }
    let claims = claim_map(&script.steps);

    for record in &log.records {
        if let Err(what) = recheck_record(record, &claims) {
            failures.push(format!("step {}: {what}", record.step.id));
        }
    }

    // Premise propagation must match the recorded statuses.
    let mut sound: HashSet<&str> = HashSet::new();
    for record in &log.records {
        let supported = record
            .step
            .depends_on
            .iter()
            .all(|dep| sound.contains(dep.as_str()));
        if !supported && record.status == StepStatus::Verified {
            failures.push(format!(
                "step {}: recorded as verified atop an unverified premise",
                record.step.id
            ));
        }
        if supported && record.status != StepStatus::Failed {
            sound.insert(&record.step.id);
        }
    }

    let all_good = log.records.iter().all(|r| r.status != StepStatus::Failed);
    if log.verified != all_good {
        failures.push(format!(
            "the log claims verified = {}, but its records say {}",
            log.verified, all_good
        ));
    }

    CheckReport {
        verified: failures.is_empty() && log.verified,
        steps_checked: log.records.len(),
        failures,
    }
}

fn recheck_record(record: &StepRecord, claims: &Claims<'_>) -> Result<(), String> {
    match &record.step.justification {
        Justification::LpVerdict { mode } => {
            let spec = match &record.step.claim {
                Claim::NoCode { spec } => spec,
                other => return Err(format!("an LP verdict cannot prove: {other}")),
            };
            let Some(Evidence::Gate { report }) = &record.evidence else {
                return Err("missing gate evidence".into());
            };
            if &report.spec != spec {
                return Err(format!(
                    "the gate report is about {}, not the claimed {spec}",
                    report.spec
                ));
            }
            if report.mode != *mode {
                return Err("the gate report was produced under a different mode".into());
            }
            gate::verify_gate_report(report)?;
            expect_status(record, report.verdict.is_contradiction())
        }
        Justification::LpBound { mode } => {
            let (spec, m, bound) = match &record.step.claim {
                Claim::DualAtLeast { spec, m, bound } => (spec, *m, *bound),
                other => return Err(format!("an LP bound cannot prove: {other}")),
            };
            let Some(Evidence::BoundCert { mode: emode, cert }) = &record.evidence else {
                // A failed bound step may legitimately carry no certificate
                // (infeasible relaxation); nothing to certify then.
                return match record.status {
                    StepStatus::Failed => Ok(()),
                    _ => Err("missing bound certificate".into()),
                };
            };
            if emode != mode {
                return Err("the certificate was produced under a different mode".into());
            }
            let mut problem = gate::build_lp(spec, *mode).map_err(|e| e.to_string())?;
            problem.objective =
                gate::quantity_objective(spec, Quantity::Dual(m), *mode).map_err(|e| e.to_string())?;
            if !lp::verify_optimal(&problem, Sense::Minimize, cert) {
                return Err("the optimality certificate does not verify".into());
            }
            let covered = Rat::from(bound) <= Rat::from(cert.value.ceil_int());
            expect_status(record, covered)
        }
        _ => {
            let expected = match check_structural_step(&record.step, claims) {
                Ok((status, _)) => status,
                Err(Fault::Falsified(_)) => StepStatus::Failed,
                Err(Fault::Structural(what)) => {
                    return Err(format!("structurally invalid: {what}"))
                }
            };
            // Premise downgrades are checked globally; here the record must
            // match the step's own verdict.
            let own = effective_own_status(record);
            if own != expected {
                return Err(format!(
                    "recorded as {:?}, but re-checking yields {:?}",
                    own, expected
                ));
            }
            Ok(())
        }
    }
}

/// The record's status before premise propagation: a step downgraded for an
/// unverified premise announces that in its note.
fn effective_own_status(record: &StepRecord) -> StepStatus {
    if record.status == StepStatus::Failed
        && record
            .note
            .as_deref()
            .is_some_and(|n| n.contains("a premise did not verify"))
    {
        StepStatus::Verified
    } else {
        record.status
    }
}

fn expect_status(record: &StepRecord, own_check_passed: bool) -> Result<(), String> {
    let expected = if own_check_passed {
        StepStatus::Verified
    } else {
        StepStatus::Failed
    };
    let own = effective_own_status(record);
    if own != expected {
        return Err(format!(
            "recorded as {:?}, but the evidence supports {:?}",
            own, expected
        ));
    }
    Ok(())
}
