//! Exact rational linear programming with verifiable certificates.
//!
//! The solver is a two-phase primal simplex over [`Rat`] using Bland's rule,
//! so every run is deterministic and terminates. Outcomes carry evidence that
//! can be checked independently of the solver:
//!
//! * infeasibility ships a Farkas certificate (a signed combination of the
//!   constraints whose aggregate is unsatisfiable over nonnegative variables),
//! * optimality ships the primal point **and** the dual multipliers proving
//!   the bound, so `verify_optimal` needs nothing but arithmetic.
//!
//! All variables are implicitly constrained to be nonnegative; that is the
//! only variable domain the feasibility gate ever needs.

use crate::rat::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Affine expression `coeffs . x + constant` over the problem variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearExpr {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl LinearExpr {
    pub fn zero(nvars: usize) -> Self {
        LinearExpr {
            coeffs: vec![Rat::zero(); nvars],
            constant: Rat::zero(),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        debug_assert_eq!(self.coeffs.len(), point.len());
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(point) {
            acc += &(c * x);
        }
        acc
    }

    pub fn negated(&self) -> Self {
        LinearExpr {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }
}

/// Direction of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

/// One linear constraint `coeffs . x  <relation>  rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(label: impl Into<String>, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Constraint {
            label: label.into(),
            coeffs,
            relation,
            rhs,
        }
    }
}

/// A linear program over nonnegative variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpProblem {
    /// Variable names, defining the column order of every coefficient vector.
    pub variables: Vec<String>,
    pub objective: LinearExpr,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Proof of infeasibility: multipliers (by constraint index) whose aggregate
/// constraint cannot hold for any nonnegative point. See [`verify_certificate`]
/// for the exact convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    /// `(constraint index, multiplier)`, sorted by index, zeros omitted.
    /// Multipliers on inequality rows must be nonnegative; equality rows may
    /// carry either sign.
    pub multipliers: Vec<(usize, Rat)>,
}

/// Optimal outcome: the optimum value, a feasible point achieving it, and
/// dual multipliers certifying that no feasible point does better.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalSolution {
    pub value: Rat,
    pub point: Vec<Rat>,
    /// `(constraint index, multiplier)`, sorted by index, zeros omitted.
    pub dual: Vec<(usize, Rat)>,
}

/// A recession direction along which the objective improves without bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub direction: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpOutcome {
    Optimal(OptimalSolution),
    Infeasible(FarkasCertificate),
    Unbounded(Ray),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint {index} ({label:?}) has {got} coefficients, expected {expected}")]
    ConstraintDimension {
        index: usize,
        label: String,
        expected: usize,
        got: usize,
    },
    #[error("objective has {got} coefficients, expected {expected}")]
    ObjectiveDimension { expected: usize, got: usize },
}

impl LpProblem {
    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.objective.coeffs.len() != n {
            return Err(LpError::ObjectiveDimension {
                expected: n,
                got: self.objective.coeffs.len(),
            });
        }
        for (index, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::ConstraintDimension {
                    index,
                    label: c.label.clone(),
                    expected: n,
                    got: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Certificate verification (pure arithmetic; never calls the solver)
// ---------------------------------------------------------------------------

/// Folds multipliers into an aggregate `(coeffs, rhs)` in ">=" orientation:
/// `Ge` rows contribute `+m * (a, b)`, `Le` rows `-m * (a, b)` (both with
/// `m >= 0`), `Eq` rows `+m * (a, b)` with `m` sign-free. Returns `None` if
/// indices are out of range, unsorted, duplicated, or a sign condition fails.
fn aggregate_multipliers(
    problem: &LpProblem,
    multipliers: &[(usize, Rat)],
) -> Option<(Vec<Rat>, Rat)> {
    let mut coeffs = vec![Rat::zero(); problem.num_vars()];
    let mut rhs = Rat::zero();
    let mut last: Option<usize> = None;
    for (index, m) in multipliers {
        if last.is_some_and(|prev| prev >= *index) {
            return None;
        }
        last = Some(*index);
        let constraint = problem.constraints.get(*index)?;
        let signed = match constraint.relation {
            Relation::Ge => {
                if m.is_negative() {
                    return None;
                }
                m.clone()
            }
            Relation::Le => {
                if m.is_negative() {
                    return None;
                }
                -m
            }
            Relation::Eq => m.clone(),
        };
        if signed.is_zero() {
            continue;
        }
        for (acc, a) in coeffs.iter_mut().zip(&constraint.coeffs) {
            *acc += &(&signed * a);
        }
        rhs += &(&signed * &constraint.rhs);
    }
    Some((coeffs, rhs))
}

/// Checks a Farkas certificate: the aggregated constraint must read
/// `(something with only nonpositive coefficients) >= (something positive)`,
/// which no nonnegative point can satisfy.
pub fn verify_certificate(problem: &LpProblem, cert: &FarkasCertificate) -> bool {
    match aggregate_multipliers(problem, &cert.multipliers) {
        Some((coeffs, rhs)) => coeffs.iter().all(|c| !c.is_positive()) && rhs.is_positive(),
        None => false,
    }
}

/// Checks that `point` is nonnegative and satisfies every constraint.
pub fn verify_feasible_point(problem: &LpProblem, point: &[Rat]) -> bool {
    if point.len() != problem.num_vars() || point.iter().any(Rat::is_negative) {
        return false;
    }
    problem.constraints.iter().all(|c| {
        let lhs: Rat = c.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
        match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Eq => lhs == c.rhs,
            Relation::Ge => lhs >= c.rhs,
        }
    })
}

fn verify_min_bound(problem: &LpProblem, objective: &LinearExpr, value: &Rat, multipliers: &[(usize, Rat)]) -> bool {
    match aggregate_multipliers(problem, multipliers) {
        Some((coeffs, rhs)) => {
            // objective(x) >= aggregate(x) + constant >= rhs + constant = value
            // for every feasible x >= 0.
            coeffs.iter().zip(&objective.coeffs).all(|(a, c)| a <= c)
                && &(rhs + &objective.constant) == value
        }
        None => false,
    }
}

/// Checks dual multipliers proving that no feasible point beats `value`
/// (below it when minimizing, above it when maximizing).
pub fn verify_optimal_bound(
    problem: &LpProblem,
    sense: Sense,
    value: &Rat,
    multipliers: &[(usize, Rat)],
) -> bool {
    match sense {
        Sense::Minimize => verify_min_bound(problem, &problem.objective, value, multipliers),
        Sense::Maximize => {
            verify_min_bound(problem, &problem.objective.negated(), &(-value), multipliers)
        }
    }
}

/// Full optimality check: feasible point, objective value, and matching
/// dual bound.
pub fn verify_optimal(problem: &LpProblem, sense: Sense, sol: &OptimalSolution) -> bool {
    verify_feasible_point(problem, &sol.point)
        && problem.objective.eval(&sol.point) == sol.value
        && verify_optimal_bound(problem, sense, &sol.value, &sol.dual)
}

/// Checks that `ray.direction` is a recession direction improving the
/// objective: nonnegative, compatible with every constraint's direction, and
/// strictly improving.
pub fn verify_ray(problem: &LpProblem, sense: Sense, ray: &Ray) -> bool {
    if ray.direction.len() != problem.num_vars() || ray.direction.iter().any(Rat::is_negative) {
        return false;
    }
    let compatible = problem.constraints.iter().all(|c| {
        let along: Rat = c.coeffs.iter().zip(&ray.direction).map(|(a, d)| a * d).sum();
        match c.relation {
            Relation::Le => !along.is_positive(),
            Relation::Eq => along.is_zero(),
            Relation::Ge => !along.is_negative(),
        }
    });
    let drift: Rat = problem
        .objective
        .coeffs
        .iter()
        .zip(&ray.direction)
        .map(|(c, d)| c * d)
        .sum();
    let improving = match sense {
        Sense::Minimize => drift.is_negative(),
        Sense::Maximize => drift.is_positive(),
    };
    compatible && improving
}

// ---------------------------------------------------------------------------
// Two-phase primal simplex with Bland's rule
// ---------------------------------------------------------------------------

/// Entry point. Deterministic: identical problems yield identical outcomes.
pub fn solve(problem: &LpProblem, sense: Sense) -> Result<LpOutcome, LpError> {
    problem.validate()?;
    let outcome = match sense {
        Sense::Minimize => solve_min(problem, problem.objective.clone()),
        Sense::Maximize => match solve_min(problem, problem.objective.negated()) {
            LpOutcome::Optimal(sol) => LpOutcome::Optimal(OptimalSolution {
                value: -&sol.value,
                point: sol.point,
                dual: sol.dual,
            }),
            other => other,
        },
    };
    #[cfg(debug_assertions)]
    match &outcome {
        LpOutcome::Optimal(sol) => debug_assert!(
            verify_optimal(problem, sense, sol),
            "solver produced an unverifiable optimum"
        ),
        LpOutcome::Infeasible(cert) => debug_assert!(
            verify_certificate(problem, cert),
            "solver produced an unverifiable Farkas certificate"
        ),
        LpOutcome::Unbounded(ray) => debug_assert!(
            verify_ray(problem, sense, ray),
            "solver produced an unverifiable ray"
        ),
    }
    Ok(outcome)
}

#[derive(Clone, Copy)]
struct RowInfo {
    /// Index of the constraint as stated in the problem.
    stated: usize,
    /// Whether the row was negated to make its right-hand side nonnegative.
    flipped: bool,
    /// Relation after any flip.
    relation: Relation,
    slack: Option<usize>,
    artificial: Option<usize>,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    info: Vec<RowInfo>,
    basis: Vec<usize>,
    ncols: usize,
    nvars: usize,
    first_artificial: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize, zrow: &mut Vec<Rat>) {
        let factor = self.rows[row][col].clone();
        debug_assert!(!factor.is_zero());
        let inv = factor.recip().expect("pivot entry is nonzero");
        for entry in &mut self.rows[row] {
            *entry *= &inv;
        }
        let pivot_row = self.rows[row].clone();
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r == row || target[col].is_zero() {
                continue;
            }
            let f = target[col].clone();
            for (t, p) in target.iter_mut().zip(&pivot_row) {
                *t -= &(&f * p);
            }
        }
        if !zrow[col].is_zero() {
            let f = zrow[col].clone();
            for (z, p) in zrow.iter_mut().zip(&pivot_row) {
                *z -= &(&f * p);
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: enter at the lowest-index allowed column with negative
    /// reduced cost; leave by the ratio test with ties broken toward the
    /// lowest basic variable index. Returns the entering column on
    /// unboundedness.
    fn bland_min(&mut self, zrow: &mut Vec<Rat>, allow: impl Fn(usize) -> bool) -> Option<usize> {
        loop {
            let Some(enter) = (0..self.ncols).find(|&c| allow(c) && zrow[c].is_negative()) else {
                return None; // optimal
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let t = &self.rows[r][enter];
                if !t.is_positive() {
                    continue;
                }
                let ratio = self
                    .rhs(r)
                    .checked_div(t)
                    .expect("positive pivot candidate");
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter, zrow),
                None => return Some(enter), // unbounded along `enter`
            }
        }
    }

    /// Dual value of each normalized row, read off the cost row through that
    /// row's initial identity column. `initial_cost` is the phase's cost on
    /// that column (1 for phase-one artificials, else 0).
    fn row_duals(&self, zrow: &[Rat], phase_one: bool) -> Vec<Rat> {
        self.info
            .iter()
            .map(|info| match info.relation {
                // Equality rows: artificial column is +e_r.
                Relation::Eq => {
                    let col = info.artificial.expect("equality rows carry an artificial");
                    let cost = if phase_one { Rat::one() } else { Rat::zero() };
                    cost - &zrow[col]
                }
                // Normalized Le rows: slack column is +e_r with cost 0.
                Relation::Le => {
                    let col = info.slack.expect("inequality rows carry a slack");
                    -&zrow[col]
                }
                // Normalized Ge rows: surplus column is -e_r with cost 0.
                Relation::Ge => {
                    let col = info.slack.expect("inequality rows carry a slack");
                    zrow[col].clone()
                }
            })
            .collect()
    }

    /// Converts normalized-row dual values into stated-constraint multipliers
    /// under the convention of [`aggregate_multipliers`].
    fn stated_multipliers(&self, problem: &LpProblem, row_duals: &[Rat]) -> Vec<(usize, Rat)> {
        let mut out: Vec<(usize, Rat)> = Vec::new();
        for (info, y) in self.info.iter().zip(row_duals) {
            let t = if info.flipped { -y } else { y.clone() };
            let lambda = match problem.constraints[info.stated].relation {
                Relation::Ge | Relation::Eq => t,
                Relation::Le => -t,
            };
            if !lambda.is_zero() {
                out.push((info.stated, lambda));
            }
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }
}

fn build_tableau(problem: &LpProblem) -> Tableau {
    let nvars = problem.num_vars();
    let mut normalized: Vec<(Vec<Rat>, Relation, Rat, bool, usize)> = Vec::new();
    for (stated, c) in problem.constraints.iter().enumerate() {
        if c.rhs.is_negative() {
            let relation = match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            let coeffs = c.coeffs.iter().map(|a| -a).collect();
            normalized.push((coeffs, relation, -&c.rhs, true, stated));
        } else {
            normalized.push((c.coeffs.clone(), c.relation, c.rhs.clone(), false, stated));
        }
    }

    let mut next_col = nvars;
    let mut info = Vec::with_capacity(normalized.len());
    for (_, relation, _, flipped, stated) in &normalized {
        let slack = match relation {
            Relation::Le | Relation::Ge => {
                let col = next_col;
                next_col += 1;
                Some(col)
            }
            Relation::Eq => None,
        };
        info.push(RowInfo {
            stated: *stated,
            flipped: *flipped,
            relation: *relation,
            slack,
            artificial: None,
        });
    }
    let first_artificial = next_col;
    for row_info in info.iter_mut() {
        if matches!(row_info.relation, Relation::Ge | Relation::Eq) {
            row_info.artificial = Some(next_col);
            next_col += 1;
        }
    }
    let ncols = next_col;

    let mut rows = Vec::with_capacity(normalized.len());
    let mut basis = Vec::with_capacity(normalized.len());
    for ((coeffs, relation, rhs, _, _), row_info) in normalized.into_iter().zip(&info) {
        let mut row = vec![Rat::zero(); ncols + 1];
        row[..nvars].clone_from_slice(&coeffs);
        if let Some(col) = row_info.slack {
            row[col] = match relation {
                Relation::Le => Rat::one(),
                Relation::Ge => -Rat::one(),
                Relation::Eq => unreachable!(),
            };
        }
        if let Some(col) = row_info.artificial {
            row[col] = Rat::one();
        }
        row[ncols] = rhs;
        basis.push(row_info.artificial.or(row_info.slack).expect(
            "every row has an initial basis column",
        ));
        rows.push(row);
    }

    Tableau {
        rows,
        info,
        basis,
        ncols,
        nvars,
        first_artificial,
    }
}

fn solve_min(problem: &LpProblem, objective: LinearExpr) -> LpOutcome {
    let mut tab = build_tableau(problem);
    let ncols = tab.ncols;
    let has_artificials = tab.first_artificial < ncols;

    if has_artificials {
        // Phase one: minimize the sum of artificials.
        let mut zrow = vec![Rat::zero(); ncols + 1];
        for col in tab.first_artificial..ncols {
            zrow[col] = Rat::one();
        }
        for r in 0..tab.rows.len() {
            if !zrow[tab.basis[r]].is_zero() {
                let f = zrow[tab.basis[r]].clone();
                let row = tab.rows[r].clone();
                for (z, t) in zrow.iter_mut().zip(&row) {
                    *z -= &(&f * t);
                }
            }
        }
        let unbounded = tab.bland_min(&mut zrow, |_| true);
        debug_assert!(unbounded.is_none(), "phase one is bounded below by zero");
        let infeasibility = -&zrow[ncols];
        if infeasibility.is_positive() {
            let duals = tab.row_duals(&zrow, true);
            let multipliers = tab.stated_multipliers(problem, &duals);
            return LpOutcome::Infeasible(FarkasCertificate { multipliers });
        }
        // Drive artificials out of the basis where possible; rows that resist
        // are redundant (all zero outside the artificial columns) and stay
        // inert: no allowed column has a nonzero entry there.
        for r in 0..tab.rows.len() {
            if tab.basis[r] < tab.first_artificial {
                continue;
            }
            let pivot_col =
                (0..tab.first_artificial).find(|&c| !tab.rows[r][c].is_zero());
            if let Some(col) = pivot_col {
                let mut scratch = vec![Rat::zero(); ncols + 1];
                tab.pivot(r, col, &mut scratch);
            }
        }
    }

    // Phase two with the real objective.
    let mut zrow = vec![Rat::zero(); ncols + 1];
    zrow[..tab.nvars].clone_from_slice(&objective.coeffs);
    for r in 0..tab.rows.len() {
        if !zrow[tab.basis[r]].is_zero() {
            let f = zrow[tab.basis[r]].clone();
            let row = tab.rows[r].clone();
            for (z, t) in zrow.iter_mut().zip(&row) {
                *z -= &(&f * t);
            }
        }
    }
    let first_artificial = tab.first_artificial;
    if let Some(enter) = tab.bland_min(&mut zrow, |c| c < first_artificial) {
        let mut direction = vec![Rat::zero(); tab.nvars];
        if enter < tab.nvars {
            direction[enter] = Rat::one();
        }
        for r in 0..tab.rows.len() {
            if tab.basis[r] < tab.nvars && !tab.rows[r][enter].is_zero() {
                direction[tab.basis[r]] = -&tab.rows[r][enter];
            }
        }
        return LpOutcome::Unbounded(Ray { direction });
    }

    let mut point = vec![Rat::zero(); tab.nvars];
    for r in 0..tab.rows.len() {
        if tab.basis[r] < tab.nvars {
            point[tab.basis[r]] = tab.rhs(r).clone();
        }
    }
    let value = objective.eval(&point);
    let duals = tab.row_duals(&zrow, false);
    let dual = tab.stated_multipliers(problem, &duals);
    LpOutcome::Optimal(OptimalSolution { value, point, dual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn rv(parts: &[&str]) -> Vec<Rat> {
        parts.iter().map(|s| r(s)).collect()
    }

    fn problem(
        nvars: usize,
        objective: (&[&str], &str),
        constraints: &[(&[&str], Relation, &str)],
    ) -> LpProblem {
        LpProblem {
            variables: (0..nvars).map(|i| format!("x{i}")).collect(),
            objective: LinearExpr {
                coeffs: rv(objective.0),
                constant: r(objective.1),
            },
            constraints: constraints
                .iter()
                .enumerate()
                .map(|(i, (coeffs, rel, rhs))| {
                    Constraint::new(format!("c{i}"), rv(coeffs), *rel, r(rhs))
                })
                .collect(),
        }
    }

    #[test]
    fn minimizes_with_verified_optimum() {
        let p = problem(
            2,
            (&["1", "1"], "0"),
            &[
                (&["1", "1"], Relation::Ge, "2"),
                (&["1", "0"], Relation::Le, "5"),
            ],
        );
        match solve(&p, Sense::Minimize).unwrap() {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, r("2"));
                assert!(verify_optimal(&p, Sense::Minimize, &sol));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn equalities_force_the_point() {
        let p = problem(
            2,
            (&["1", "0"], "0"),
            &[
                (&["1", "1"], Relation::Eq, "2"),
                (&["1", "-1"], Relation::Eq, "0"),
            ],
        );
        for sense in [Sense::Minimize, Sense::Maximize] {
            match solve(&p, sense).unwrap() {
                LpOutcome::Optimal(sol) => {
                    assert_eq!(sol.value, r("1"));
                    assert_eq!(sol.point, rv(&["1", "1"]));
                    assert!(verify_optimal(&p, sense, &sol));
                }
                other => panic!("expected optimum, got {other:?}"),
            }
        }
    }

    #[test]
    fn infeasible_yields_valid_farkas_certificate() {
        let p = problem(
            1,
            (&["1"], "0"),
            &[
                (&["1"], Relation::Ge, "3"),
                (&["1"], Relation::Le, "1"),
            ],
        );
        match solve(&p, Sense::Minimize).unwrap() {
            LpOutcome::Infeasible(cert) => {
                assert!(verify_certificate(&p, &cert));
                assert!(!cert.multipliers.is_empty());
            }
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_yields_valid_ray() {
        let p = problem(1, (&["1"], "0"), &[(&["1"], Relation::Ge, "1")]);
        match solve(&p, Sense::Maximize).unwrap() {
            LpOutcome::Unbounded(ray) => assert!(verify_ray(&p, Sense::Maximize, &ray)),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_rows_are_normalized() {
        // -x <= -3 is x >= 3.
        let p = problem(1, (&["1"], "0"), &[(&["-1"], Relation::Le, "-3")]);
        match solve(&p, Sense::Minimize).unwrap() {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, r("3"));
                assert!(verify_optimal(&p, Sense::Minimize, &sol));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn objective_constant_is_carried_through() {
        let p = problem(1, (&["2"], "5"), &[(&["1"], Relation::Ge, "3")]);
        match solve(&p, Sense::Minimize).unwrap() {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, r("11"));
                assert!(verify_optimal(&p, Sense::Minimize, &sol));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities_are_harmless() {
        let p = problem(
            2,
            (&["1", "0"], "0"),
            &[
                (&["1", "1"], Relation::Eq, "2"),
                (&["1", "1"], Relation::Eq, "2"),
                (&["2", "2"], Relation::Eq, "4"),
            ],
        );
        match solve(&p, Sense::Minimize).unwrap() {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, r("0"));
                assert!(verify_optimal(&p, Sense::Minimize, &sol));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn beale_example_terminates_under_bland() {
        // A classic degenerate program that cycles under naive pivoting.
        let p = problem(
            4,
            (&["-3/4", "150", "-1/50", "6"], "0"),
            &[
                (&["1/4", "-60", "-1/25", "9"], Relation::Le, "0"),
                (&["1/2", "-90", "-1/50", "3"], Relation::Le, "0"),
                (&["0", "0", "1", "0"], Relation::Le, "1"),
            ],
        );
        match solve(&p, Sense::Minimize).unwrap() {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, r("-1/20"));
                assert!(verify_optimal(&p, Sense::Minimize, &sol));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn zero_variable_problems_are_handled() {
        let feasible = LpProblem {
            variables: vec![],
            objective: LinearExpr::zero(0),
            constraints: vec![Constraint::new("trivial", vec![], Relation::Eq, r("0"))],
        };
        assert!(matches!(
            solve(&feasible, Sense::Minimize).unwrap(),
            LpOutcome::Optimal(_)
        ));

        let infeasible = LpProblem {
            variables: vec![],
            objective: LinearExpr::zero(0),
            constraints: vec![Constraint::new("absurd", vec![], Relation::Eq, r("1"))],
        };
        match solve(&infeasible, Sense::Minimize).unwrap() {
            LpOutcome::Infeasible(cert) => assert!(verify_certificate(&infeasible, &cert)),
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let p = problem(
            3,
            (&["1", "2", "-1"], "0"),
            &[
                (&["1", "1", "1"], Relation::Le, "10"),
                (&["1", "-1", "0"], Relation::Ge, "1"),
                (&["0", "1", "3"], Relation::Eq, "6"),
            ],
        );
        let first = solve(&p, Sense::Minimize).unwrap();
        let second = solve(&p, Sense::Minimize).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn rejects_dimension_mismatches() {
        let p = problem(2, (&["1", "1"], "0"), &[(&["1"], Relation::Ge, "1")]);
        assert!(matches!(
            solve(&p, Sense::Minimize),
            Err(LpError::ConstraintDimension { index: 0, .. })
        ));
    }

    #[test]
    fn bogus_certificates_are_rejected() {
        let p = problem(
            1,
            (&["1"], "0"),
            &[
                (&["1"], Relation::Ge, "3"),
                (&["1"], Relation::Le, "1"),
            ],
        );
        // Negative multiplier on an inequality row.
        assert!(!verify_certificate(
            &p,
            &FarkasCertificate {
                multipliers: vec![(0, r("-1")), (1, r("1"))]
            }
        ));
        // Aggregate that fails to be contradictory.
        assert!(!verify_certificate(
            &p,
            &FarkasCertificate {
                multipliers: vec![(0, r("1"))]
            }
        ));
        // Out-of-range index.
        assert!(!verify_certificate(
            &p,
            &FarkasCertificate {
                multipliers: vec![(7, r("1"))]
            }
        ));
        // Duplicate index.
        assert!(!verify_certificate(
            &p,
            &FarkasCertificate {
                multipliers: vec![(0, r("1")), (0, r("1"))]
            }
        ));
    }
}
