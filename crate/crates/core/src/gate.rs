//! The linear-programming feasibility gate.
//!
//! For a [`CodeSpec`] the gate builds the Delsarte relaxation: one
//! nonnegative variable `a_j` per allowed weight, the size constraint
//! `1 + sum a_j = 2^k`, and nonnegativity of every tracked dual count
//! `mu_m = (K_m(0) + sum_j a_j K_m(j)) / 2^k`. On top of plain feasibility it
//! computes exact windows `[min, max]` for weight counts and dual counts, and
//! runs an integer-tightening fixpoint: a window that pins a quantity to a
//! single integer is added as an equality (sound because the true counts of a
//! real code are integers inside every window of the relaxation), and a
//! window that excludes all integers — or forces a single non-integer — is a
//! contradiction.
//!
//! Every verdict carries certificates ([`FarkasCertificate`] for
//! infeasibility, optimal primal/dual pairs for windows) that
//! [`verify_gate_report`] re-checks without running any solver.

use crate::combin::krawtchouk;
use crate::lp::{
    self, Constraint, FarkasCertificate, LinearExpr, LpError, LpOutcome, LpProblem,
    OptimalSolution, Relation, Sense,
};
use crate::rat::Rat;
use crate::spec::{CodeSpec, SpecError};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Which dual-count rows the relaxation imposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `mu_m >= 0` for `m <= floor(n/2)` — the range used by the bundled
    /// replay script.
    Half,
    /// `mu_m >= 0` for `m <= n` — the strongest relaxation, default for new
    /// queries.
    Full,
}

impl Mode {
    /// Largest dual index with a nonnegativity row.
    pub fn max_dual(self, n: usize) -> usize {
        match self {
            Mode::Half => n / 2,
            Mode::Full => n,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Half => "half",
            Mode::Full => "full",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "half" => Ok(Mode::Half),
            "full" => Ok(Mode::Full),
            other => Err(format!("unknown mode {other:?}, expected half or full")),
        }
    }
}

/// A quantity the gate can bound: a weight count `a_j` or a dual weight
/// count `mu_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    Count(usize),
    Dual(usize),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Count(j) => write!(f, "a{j}"),
            Quantity::Dual(m) => write!(f, "mu{m}"),
        }
    }
}

impl FromStr for Quantity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(m) = s.strip_prefix("mu") {
            m.parse()
                .map(Quantity::Dual)
                .map_err(|_| format!("invalid dual index in {s:?}"))
        } else if let Some(j) = s.strip_prefix('a') {
            j.parse()
                .map(Quantity::Count)
                .map_err(|_| format!("invalid weight in {s:?}"))
        } else {
            Err(format!("invalid quantity {s:?}, expected aJ or muM"))
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Error)]
pub enum GateError {
    #[error("invalid spec: {0}")]
    Spec(#[from] SpecError),
    #[error("lp failure: {0}")]
    Lp(#[from] LpError),
    #[error("{0} is not tracked for this spec and mode")]
    Untracked(Quantity),
    #[error("internal gate invariant broken while bounding {quantity}: {what}")]
    Internal { quantity: Quantity, what: String },
}

/// One pinning event of the tightening loop: both window certificates prove
/// `min = max = value` (or `ceil(min) = floor(max) = value`) over the LP that
/// was current when the pin was made.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinEvent {
    pub quantity: Quantity,
    pub value: Rat,
    pub min: OptimalSolution,
    pub max: OptimalSolution,
}

/// Final `[min, max]` window for a tracked quantity, with both certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantityWindow {
    pub quantity: Quantity,
    pub min: OptimalSolution,
    pub max: OptimalSolution,
}

/// Evidence backing a [`GateVerdict::ForcedConflict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConflictEvidence {
    /// `ceil(min) > floor(max)`: no integer fits the window.
    EmptyWindow {
        min: OptimalSolution,
        max: OptimalSolution,
    },
    /// A forced weight cannot reach count 1: `max` is the optimum of the
    /// count over the relaxation with all forced lower bounds removed.
    ForcedUnreachable { max: OptimalSolution },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateVerdict {
    /// The relaxation itself is empty.
    InfeasibleLp { certificate: FarkasCertificate },
    /// A quantity is forced to a single non-integer value.
    ForcedNonInteger {
        quantity: Quantity,
        value: Rat,
        min: OptimalSolution,
        max: OptimalSolution,
    },
    /// An integral quantity has no integer in its window, or a forced weight
    /// cannot occur.
    ForcedConflict {
        quantity: Quantity,
        required: Rat,
        available: Rat,
        evidence: ConflictEvidence,
    },
    /// The gate finds nothing wrong; final windows for all tracked
    /// quantities are reported.
    NoContradiction { windows: Vec<QuantityWindow> },
}

impl GateVerdict {
    pub fn is_contradiction(&self) -> bool {
        !matches!(self, GateVerdict::NoContradiction { .. })
    }

    /// Short human-readable verdict line.
    pub fn headline(&self) -> String {
        match self {
            GateVerdict::InfeasibleLp { .. } => "INFEASIBLE (LP)".to_owned(),
            GateVerdict::ForcedNonInteger {
                quantity, value, ..
            } => match quantity {
                Quantity::Count(j) => format!("CONTRADICTION: A_{j} forced to {value}"),
                Quantity::Dual(m) => format!("CONTRADICTION: mu_{m} forced to {value}"),
            },
            GateVerdict::ForcedConflict {
                quantity,
                required,
                available,
                ..
            } => format!(
                "CONTRADICTION: {quantity} needs {required} but at most {available} is attainable"
            ),
            GateVerdict::NoContradiction { .. } => "NO CONTRADICTION".to_owned(),
        }
    }
}

/// Complete record of a gate run: inputs, pin trail, the spec with all pins
/// applied, and the verdict. Everything needed to re-check the run offline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateReport {
    pub spec: CodeSpec,
    pub mode: Mode,
    pub tracked: Vec<Quantity>,
    pub pins: Vec<PinEvent>,
    pub final_spec: CodeSpec,
    pub verdict: GateVerdict,
}

/// Options for the tightening loop.
#[derive(Debug, Clone)]
pub struct TightenOptions {
    /// Dual indices to track, before clipping to the mode's row range.
    pub tracked_duals: Vec<usize>,
}

impl Default for TightenOptions {
    fn default() -> Self {
        TightenOptions {
            tracked_duals: vec![0, 1, 2, 3, 4],
        }
    }
}

fn pow2k(k: usize) -> Rat {
    Rat::pow2(k as u32)
}

/// The dual count `mu_m` as an affine expression in the count variables
/// (ordered by ascending weight): `(K_m(0) + sum_j a_j K_m(j)) / 2^k`.
fn dual_expr(spec: &CodeSpec, m: usize) -> LinearExpr {
    let scale = pow2k(spec.k);
    let coeffs = spec
        .weights
        .iter()
        .map(|&j| {
            Rat::from(krawtchouk(spec.n, m, j))
                .checked_div(&scale)
                .expect("2^k is nonzero")
        })
        .collect();
    let constant = Rat::from(krawtchouk(spec.n, m, 0))
        .checked_div(&scale)
        .expect("2^k is nonzero");
    LinearExpr { coeffs, constant }
}

fn unit_expr(spec: &CodeSpec, j: usize) -> LinearExpr {
    let mut expr = LinearExpr::zero(spec.weights.len());
    let idx = spec
        .weights
        .iter()
        .position(|&w| w == j)
        .expect("weight is in the spec");
    expr.coeffs[idx] = Rat::one();
    expr
}

fn is_tracked(spec: &CodeSpec, quantity: Quantity, mode: Mode) -> bool {
    match quantity {
        Quantity::Count(j) => spec.weights.contains(&j),
        Quantity::Dual(m) => m <= mode.max_dual(spec.n),
    }
}

/// Objective expression for a tracked quantity.
pub fn quantity_objective(
    spec: &CodeSpec,
    quantity: Quantity,
    mode: Mode,
) -> Result<LinearExpr, GateError> {
    if !is_tracked(spec, quantity, mode) {
        return Err(GateError::Untracked(quantity));
    }
    Ok(match quantity {
        Quantity::Count(j) => unit_expr(spec, j),
        Quantity::Dual(m) => dual_expr(spec, m),
    })
}

/// Builds the Delsarte relaxation for `spec`.
///
/// Constraint order is fixed and load-bearing for certificate replay:
/// the size equality first, then `mu_m >= 0` for ascending `m` over the
/// mode's range, then forced-weight rows, pinned counts, pinned duals, and
/// dual lower bounds, each in ascending key order. The objective is zero;
/// callers overwrite it per query.
pub fn build_lp(spec: &CodeSpec, mode: Mode) -> Result<LpProblem, GateError> {
    spec.validate()?;
    let nvars = spec.weights.len();
    let variables = spec.weights.iter().map(|j| format!("a{j}")).collect();
    let mut constraints = Vec::new();

    // 1 + sum_j a_j = 2^k.
    constraints.push(Constraint::new(
        "total",
        vec![Rat::one(); nvars],
        Relation::Eq,
        pow2k(spec.k) - Rat::one(),
    ));
    for m in 0..=mode.max_dual(spec.n) {
        let expr = dual_expr(spec, m);
        constraints.push(Constraint::new(
            format!("mu{m}_nonneg"),
            expr.coeffs,
            Relation::Ge,
            -expr.constant,
        ));
    }
    for &j in &spec.forced {
        constraints.push(Constraint::new(
            format!("forced_a{j}"),
            unit_expr(spec, j).coeffs,
            Relation::Ge,
            Rat::one(),
        ));
    }
    for (&j, value) in &spec.fixed_counts {
        constraints.push(Constraint::new(
            format!("fix_a{j}"),
            unit_expr(spec, j).coeffs,
            Relation::Eq,
            value.clone(),
        ));
    }
    for (&m, value) in &spec.dual_fixed {
        let expr = dual_expr(spec, m);
        constraints.push(Constraint::new(
            format!("fix_mu{m}"),
            expr.coeffs,
            Relation::Eq,
            value - &expr.constant,
        ));
    }
    for (&m, value) in &spec.dual_lower {
        let expr = dual_expr(spec, m);
        constraints.push(Constraint::new(
            format!("min_mu{m}"),
            expr.coeffs,
            Relation::Ge,
            value - &expr.constant,
        ));
    }

    Ok(LpProblem {
        variables,
        objective: LinearExpr::zero(nvars),
        constraints,
    })
}

/// Exact optimum of a tracked quantity over the relaxation.
pub fn bound_quantity(
    spec: &CodeSpec,
    quantity: Quantity,
    sense: Sense,
    mode: Mode,
) -> Result<LpOutcome, GateError> {
    let mut problem = build_lp(spec, mode)?;
    problem.objective = quantity_objective(spec, quantity, mode)?;
    // The dual expression's constant shifts value but not optimizer; keep it
    // so reported optima are the quantity itself.
    Ok(lp::solve(&problem, sense)?)
}

enum WindowOutcome {
    Infeasible(FarkasCertificate),
    Window(OptimalSolution, OptimalSolution),
}

fn window(spec: &CodeSpec, quantity: Quantity, mode: Mode) -> Result<WindowOutcome, GateError> {
    let lo = match bound_quantity(spec, quantity, Sense::Minimize, mode)? {
        LpOutcome::Infeasible(cert) => return Ok(WindowOutcome::Infeasible(cert)),
        LpOutcome::Unbounded(_) => {
            return Err(GateError::Internal {
                quantity,
                what: "minimum unbounded although all quantities are bounded below".into(),
            })
        }
        LpOutcome::Optimal(sol) => sol,
    };
    let hi = match bound_quantity(spec, quantity, Sense::Maximize, mode)? {
        LpOutcome::Infeasible(_) => {
            return Err(GateError::Internal {
                quantity,
                what: "maximum infeasible after a feasible minimum".into(),
            })
        }
        LpOutcome::Unbounded(_) => {
            return Err(GateError::Internal {
                quantity,
                what: "maximum unbounded despite the total-size equality".into(),
            })
        }
        LpOutcome::Optimal(sol) => sol,
    };
    Ok(WindowOutcome::Window(lo, hi))
}

fn tracked_quantities(spec: &CodeSpec, mode: Mode, options: &TightenOptions) -> Vec<Quantity> {
    // Counts by descending weight first (heavy counts are the narrative
    // drivers), then dual counts ascending.
    let mut tracked: Vec<Quantity> = spec
        .weights
        .iter()
        .rev()
        .map(|&j| Quantity::Count(j))
        .collect();
    let mut duals: Vec<usize> = options
        .tracked_duals
        .iter()
        .copied()
        .filter(|&m| m <= mode.max_dual(spec.n))
        .collect();
    duals.sort_unstable();
    duals.dedup();
    tracked.extend(duals.into_iter().map(Quantity::Dual));
    tracked
}

fn is_pinned(spec: &CodeSpec, quantity: Quantity) -> bool {
    match quantity {
        Quantity::Count(j) => spec.fixed_counts.contains_key(&j),
        Quantity::Dual(m) => spec.dual_fixed.contains_key(&m),
    }
}

fn apply_pin(spec: &mut CodeSpec, quantity: Quantity, value: Rat) {
    match quantity {
        Quantity::Count(j) => {
            spec.fixed_counts.insert(j, value);
        }
        Quantity::Dual(m) => {
            spec.dual_fixed.insert(m, value);
        }
    }
}

/// Integer-tightening fixpoint with full evidence. See module docs.
pub fn tighten_report_with(
    spec: &CodeSpec,
    mode: Mode,
    options: &TightenOptions,
) -> Result<GateReport, GateError> {
    spec.validate()?;
    let tracked = tracked_quantities(spec, mode, options);
    let mut working = spec.clone();
    let mut pins: Vec<PinEvent> = Vec::new();

    let report = |working: CodeSpec, pins: Vec<PinEvent>, verdict: GateVerdict| GateReport {
        spec: spec.clone(),
        mode,
        tracked: tracked.clone(),
        pins,
        final_spec: working,
        verdict,
    };

    loop {
        let mut pinned_this_pass = false;
        for &quantity in &tracked {
            if is_pinned(&working, quantity) {
                continue;
            }
            let (lo, hi) = match window(&working, quantity, mode)? {
                WindowOutcome::Infeasible(certificate) => {
                    return Ok(report(
                        working,
                        pins,
                        GateVerdict::InfeasibleLp { certificate },
                    ));
                }
                WindowOutcome::Window(lo, hi) => (lo, hi),
            };
            // Contradiction cascade: a pinched non-integer value first, then
            // an integer-free window, then a pin.
            if lo.value == hi.value && !lo.value.is_integer() {
                let value = lo.value.clone();
                return Ok(report(
                    working,
                    pins,
                    GateVerdict::ForcedNonInteger {
                        quantity,
                        value,
                        min: lo,
                        max: hi,
                    },
                ));
            }
            let ceil_min = lo.value.ceil_int();
            let floor_max = hi.value.floor_int();
            if ceil_min > floor_max {
                return Ok(report(
                    working,
                    pins,
                    GateVerdict::ForcedConflict {
                        quantity,
                        required: Rat::from(ceil_min),
                        available: Rat::from(floor_max),
                        evidence: ConflictEvidence::EmptyWindow { min: lo, max: hi },
                    },
                ));
            }
            if ceil_min == floor_max {
                let value = Rat::from(ceil_min);
                apply_pin(&mut working, quantity, value.clone());
                pins.push(PinEvent {
                    quantity,
                    value,
                    min: lo,
                    max: hi,
                });
                pinned_this_pass = true;
            }
        }
        if !pinned_this_pass {
            break;
        }
    }

    // Fixpoint, nothing contradictory: report final windows for every
    // tracked quantity (pinned ones collapse to their pin).
    let mut windows = Vec::with_capacity(tracked.len());
    let mut sorted = tracked.clone();
    sorted.sort_unstable();
    for quantity in sorted {
        match window(&working, quantity, mode)? {
            WindowOutcome::Infeasible(_) => {
                return Err(GateError::Internal {
                    quantity,
                    what: "infeasible while summarizing a feasible fixpoint".into(),
                })
            }
            WindowOutcome::Window(min, max) => windows.push(QuantityWindow { quantity, min, max }),
        }
    }
    Ok(report(
        working,
        pins,
        GateVerdict::NoContradiction { windows },
    ))
}

pub fn tighten_report(spec: &CodeSpec, mode: Mode) -> Result<GateReport, GateError> {
    tighten_report_with(spec, mode, &TightenOptions::default())
}

/// Verdict-only form of [`tighten_report`].
pub fn tighten(spec: &CodeSpec, mode: Mode) -> Result<GateVerdict, GateError> {
    Ok(tighten_report(spec, mode)?.verdict)
}

/// [`tighten_report`] plus forced-weight diagnosis: when the constrained
/// relaxation is infeasible and the spec forces weights, check whether some
/// forced weight simply cannot occur (its count maxes out below 1 once the
/// forcing rows are dropped) and report that sharper verdict.
pub fn feasibility_verdict(spec: &CodeSpec, mode: Mode) -> Result<GateReport, GateError> {
    let report = tighten_report(spec, mode)?;
    if !matches!(report.verdict, GateVerdict::InfeasibleLp { .. }) || spec.forced.is_empty() {
        return Ok(report);
    }
    let mut relaxed = spec.clone();
    relaxed.forced.clear();
    for &j in &spec.forced {
        if relaxed.fixed_counts.contains_key(&j) {
            continue; // the count is pinned; forcing is not the obstruction
        }
        match bound_quantity(&relaxed, Quantity::Count(j), Sense::Maximize, mode)? {
            LpOutcome::Optimal(max) if max.value < Rat::one() => {
                return Ok(GateReport {
                    spec: spec.clone(),
                    mode,
                    tracked: report.tracked,
                    pins: Vec::new(),
                    final_spec: relaxed,
                    verdict: GateVerdict::ForcedConflict {
                        quantity: Quantity::Count(j),
                        required: Rat::one(),
                        available: max.value.clone(),
                        evidence: ConflictEvidence::ForcedUnreachable { max },
                    },
                });
            }
            _ => continue,
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Solver-free replay of a gate report
// ---------------------------------------------------------------------------

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verify_window_certs(
    spec: &CodeSpec,
    mode: Mode,
    quantity: Quantity,
    min: &OptimalSolution,
    max: &OptimalSolution,
) -> Result<(), String> {
    let mut problem = build_lp(spec, mode).map_err(|e| e.to_string())?;
    problem.objective = quantity_objective(spec, quantity, mode).map_err(|e| e.to_string())?;
    check(lp::verify_optimal(&problem, Sense::Minimize, min), || {
        format!("minimum certificate for {quantity} over {spec} does not verify")
    })?;
    check(lp::verify_optimal(&problem, Sense::Maximize, max), || {
        format!("maximum certificate for {quantity} over {spec} does not verify")
    })?;
    Ok(())
}

/// Re-checks every certificate in a [`GateReport`] by pure arithmetic:
/// replays the pin trail (each pin justified by its two optimality
/// certificates over the LP current at that point) and then the verdict
/// evidence against the final constraint set. No solver is invoked.
pub fn verify_gate_report(report: &GateReport) -> Result<(), String> {
    report.spec.validate().map_err(|e| e.to_string())?;
    let mode = report.mode;
    let mut working = report.spec.clone();

    if let GateVerdict::ForcedConflict {
        quantity,
        required,
        available,
        evidence: ConflictEvidence::ForcedUnreachable { max },
    } = &report.verdict
    {
        // This verdict is stated over the forcing-free relaxation of the
        // original spec; no pins are involved.
        check(report.pins.is_empty(), || {
            "forced-weight conflicts must not carry pins".into()
        })?;
        let Quantity::Count(j) = quantity else {
            return Err("forced-weight conflict names a dual quantity".into());
        };
        check(report.spec.forced.contains(j), || {
            format!("weight {j} is not forced by the spec")
        })?;
        let mut relaxed = report.spec.clone();
        relaxed.forced.clear();
        check(report.final_spec == relaxed, || {
            "final spec is not the forcing-free relaxation".into()
        })?;
        let mut problem = build_lp(&relaxed, mode).map_err(|e| e.to_string())?;
        problem.objective =
            quantity_objective(&relaxed, *quantity, mode).map_err(|e| e.to_string())?;
        check(lp::verify_optimal(&problem, Sense::Maximize, max), || {
            format!("relaxed maximum certificate for {quantity} does not verify")
        })?;
        check(&max.value < &Rat::one(), || {
            format!("relaxed maximum {} does not preclude the forced weight", max.value)
        })?;
        check(required == &Rat::one() && available == &max.value, || {
            "conflict bounds do not match the certificate".into()
        })?;
        return Ok(());
    }

    for pin in &report.pins {
        verify_window_certs(&working, mode, pin.quantity, &pin.min, &pin.max)?;
        let ceil_min = pin.min.value.ceil_int();
        let floor_max = pin.max.value.floor_int();
        check(ceil_min == floor_max, || {
            format!("pin window for {} admits more than one integer", pin.quantity)
        })?;
        check(pin.value == Rat::from(ceil_min), || {
            format!("pin value for {} is not the window integer", pin.quantity)
        })?;
        apply_pin(&mut working, pin.quantity, pin.value.clone());
    }
    check(working == report.final_spec, || {
        "final spec does not equal the spec plus the pin trail".into()
    })?;

    match &report.verdict {
        GateVerdict::InfeasibleLp { certificate } => {
            let problem = build_lp(&working, mode).map_err(|e| e.to_string())?;
            check(lp::verify_certificate(&problem, certificate), || {
                format!("infeasibility certificate for {working} does not verify")
            })
        }
        GateVerdict::ForcedNonInteger {
            quantity,
            value,
            min,
            max,
        } => {
            verify_window_certs(&working, mode, *quantity, min, max)?;
            check(&min.value == value && &max.value == value, || {
                format!("window for {quantity} is not pinched at {value}")
            })?;
            check(!value.is_integer(), || {
                format!("claimed non-integer value {value} is an integer")
            })
        }
        GateVerdict::ForcedConflict {
            quantity,
            required,
            available,
            evidence: ConflictEvidence::EmptyWindow { min, max },
        } => {
            verify_window_certs(&working, mode, *quantity, min, max)?;
            let ceil_min = min.value.ceil_int();
            let floor_max = max.value.floor_int();
            check(ceil_min > floor_max, || {
                format!("window for {quantity} still contains an integer")
            })?;
            check(
                required == &Rat::from(ceil_min) && available == &Rat::from(floor_max),
                || "conflict bounds do not match the certificates".into(),
            )
        }
        GateVerdict::ForcedConflict {
            evidence: ConflictEvidence::ForcedUnreachable { .. },
            ..
        } => unreachable!("handled above"),
        GateVerdict::NoContradiction { windows } => {
            for w in windows {
                verify_window_certs(&working, mode, w.quantity, &w.min, &w.max)?;
                check(w.min.value <= w.max.value, || {
                    format!("inverted window for {}", w.quantity)
                })?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn mode_ranges() {
        assert_eq!(Mode::Half.max_dual(21), 10);
        assert_eq!(Mode::Full.max_dual(21), 21);
        assert_eq!(Mode::Half.max_dual(2), 1);
    }

    #[test]
    fn quantity_round_trips_through_text() {
        for q in [Quantity::Count(56), Quantity::Dual(0), Quantity::Dual(12)] {
            assert_eq!(q.to_string().parse::<Quantity>().unwrap(), q);
        }
        assert!("b3".parse::<Quantity>().is_err());
        assert!("mux".parse::<Quantity>().is_err());
    }

    #[test]
    fn smallest_lp_has_expected_shape() {
        let spec = CodeSpec::new(2, 1, [2]);
        let p = build_lp(&spec, Mode::Half).unwrap();
        assert_eq!(p.variables, vec!["a2"]);
        // total, mu0 >= 0, mu1 >= 0.
        assert_eq!(p.constraints.len(), 3);
        assert_eq!(p.constraints[0].label, "total");
        assert_eq!(p.constraints[0].rhs, r("1"));
        // mu1 = (K_1(0) + a_2 K_1(2)) / 2 = (2 - 2 a_2) / 2.
        assert_eq!(p.constraints[2].coeffs, vec![r("-1")]);
        assert_eq!(p.constraints[2].rhs, r("-1"));
    }

    #[test]
    fn lp_constraint_count_matches_dual_range() {
        let spec = CodeSpec::new(21, 10, [4, 8, 12, 16, 20]);
        let p = build_lp(&spec, Mode::Half).unwrap();
        assert_eq!(p.variables.len(), 5);
        assert_eq!(p.constraints.len(), 12); // total + mu_0..mu_10

        let pinned = CodeSpec::new(64, 13, [24, 32, 40, 56])
            .with_dual_zero(1)
            .with_dual_zero(2)
            .with_dual_zero(3);
        let p = build_lp(&pinned, Mode::Half).unwrap();
        assert_eq!(p.constraints.len(), 1 + 33 + 3);
        assert_eq!(p.constraints[33].label, "mu32_nonneg");
        assert_eq!(p.constraints[34].label, "fix_mu1");
    }

    #[test]
    fn trivial_spec_pins_completely() {
        let spec = CodeSpec::new(2, 1, [2]);
        let report = tighten_report(&spec, Mode::Half).unwrap();
        let pinned: Vec<(Quantity, Rat)> = report
            .pins
            .iter()
            .map(|p| (p.quantity, p.value.clone()))
            .collect();
        assert_eq!(
            pinned,
            vec![
                (Quantity::Count(2), r("1")),
                (Quantity::Dual(0), r("1")),
                (Quantity::Dual(1), r("0")),
            ]
        );
        match &report.verdict {
            GateVerdict::NoContradiction { windows } => {
                assert_eq!(windows.len(), 3);
                for w in windows {
                    assert_eq!(w.min.value, w.max.value);
                }
            }
            other => panic!("expected no contradiction, got {}", other.headline()),
        }
        verify_gate_report(&report).unwrap();
    }

    #[test]
    fn bound_quantity_rejects_untracked_targets() {
        let spec = CodeSpec::new(10, 2, [4, 6]);
        assert!(matches!(
            bound_quantity(&spec, Quantity::Count(8), Sense::Minimize, Mode::Half),
            Err(GateError::Untracked(Quantity::Count(8)))
        ));
        assert!(matches!(
            bound_quantity(&spec, Quantity::Dual(6), Sense::Minimize, Mode::Half),
            Err(GateError::Untracked(Quantity::Dual(6)))
        ));
        assert!(bound_quantity(&spec, Quantity::Dual(6), Sense::Minimize, Mode::Full).is_ok());
    }

    #[test]
    fn forced_weight_diagnosis_upgrades_the_verdict() {
        // [4,2] with all three nonzero words at weight 2 leaves no room for a
        // weight-4 word, so forcing weight 4 is unreachable, not merely
        // jointly infeasible.
        let spec = CodeSpec::new(4, 2, [2, 4])
            .with_fixed_count(2, Rat::from(3i64))
            .forcing(4);
        let report = feasibility_verdict(&spec, Mode::Full).unwrap();
        match &report.verdict {
            GateVerdict::ForcedConflict {
                quantity,
                required,
                available,
                evidence: ConflictEvidence::ForcedUnreachable { .. },
            } => {
                assert_eq!(*quantity, Quantity::Count(4));
                assert_eq!(required, &r("1"));
                assert_eq!(available, &r("0"));
            }
            other => panic!("expected forced conflict, got {}", other.headline()),
        }
        verify_gate_report(&report).unwrap();
    }

    #[test]
    fn tampered_reports_fail_replay() {
        let spec = CodeSpec::new(2, 1, [2]);
        let mut report = tighten_report(&spec, Mode::Half).unwrap();
        report.pins[0].value = r("2");
        assert!(verify_gate_report(&report).is_err());
    }
}
