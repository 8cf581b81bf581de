//! [`CodeSpec`]: the parameters of a putative binary linear code.
//!
//! A spec `[n, k, J]` describes codes of length `n` and dimension `k` whose
//! nonzero words all have weights in `J`. Optional refinements narrow the
//! family: weights that must occur, pinned weight counts, and constraints on
//! the dual code's weight counts. Specs are the lingua franca of the gate,
//! the reductions, and the prover.

use crate::rat::Rat;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("invalid dimensions: need 1 <= k <= n, got n={n}, k={k}")]
    DimensionRange { n: usize, k: usize },
    #[error("weight {weight} outside [1, {n}]")]
    WeightOutOfRange { weight: usize, n: usize },
    #[error("forced weight {weight} is not in the weight set")]
    ForcedNotAllowed { weight: usize },
    #[error("fixed count for weight {weight} which is not in the weight set")]
    FixedNotAllowed { weight: usize },
    #[error("negative value {value} for {quantity}")]
    NegativeValue { quantity: String, value: Rat },
    #[error("weight {weight} is forced but its count is fixed to {value} < 1")]
    ForcedFixedConflict { weight: usize, value: Rat },
    #[error("dual index {m} outside [0, {n}]")]
    DualIndexOutOfRange { m: usize, n: usize },
}

/// Parameters of a putative `[n, k, J]` binary linear code, with optional
/// forced weights and pinned primal/dual counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    /// Block length.
    pub n: usize,
    /// Dimension.
    pub k: usize,
    /// Allowed nonzero weights `J`.
    pub weights: BTreeSet<usize>,
    /// Weights that must occur (count >= 1).
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub forced: BTreeSet<usize>,
    /// Pinned weight counts `A_j = value`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fixed_counts: BTreeMap<usize, Rat>,
    /// Pinned dual weight counts `mu_m = value`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dual_fixed: BTreeMap<usize, Rat>,
    /// Dual weight count lower bounds `mu_m >= value`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dual_lower: BTreeMap<usize, Rat>,
}

impl CodeSpec {
    pub fn new(n: usize, k: usize, weights: impl IntoIterator<Item = usize>) -> Self {
        CodeSpec {
            n,
            k,
            weights: weights.into_iter().collect(),
            forced: BTreeSet::new(),
            fixed_counts: BTreeMap::new(),
            dual_fixed: BTreeMap::new(),
            dual_lower: BTreeMap::new(),
        }
    }

    pub fn forcing(mut self, weight: usize) -> Self {
        self.forced.insert(weight);
        self
    }

    pub fn with_fixed_count(mut self, weight: usize, value: Rat) -> Self {
        self.fixed_counts.insert(weight, value);
        self
    }

    pub fn with_dual_fixed(mut self, m: usize, value: Rat) -> Self {
        self.dual_fixed.insert(m, value);
        self
    }

    /// Pins `mu_m = 0`, the most common dual constraint.
    pub fn with_dual_zero(self, m: usize) -> Self {
        self.with_dual_fixed(m, Rat::zero())
    }

    pub fn with_dual_lower(mut self, m: usize, value: Rat) -> Self {
        self.dual_lower.insert(m, value);
        self
    }

    /// True when the spec carries no pinned counts and no dual-side
    /// constraints (forced weights may still be present).
    pub fn has_no_side_constraints(&self) -> bool {
        self.fixed_counts.is_empty() && self.dual_fixed.is_empty() && self.dual_lower.is_empty()
    }

    /// True when the spec is a bare `[n, k, J]` family: no forced weights and
    /// no side constraints.
    pub fn is_plain(&self) -> bool {
        self.forced.is_empty() && self.has_no_side_constraints()
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.k < 1 || self.k > self.n {
            return Err(SpecError::DimensionRange {
                n: self.n,
                k: self.k,
            });
        }
        for &w in &self.weights {
            if w < 1 || w > self.n {
                return Err(SpecError::WeightOutOfRange {
                    weight: w,
                    n: self.n,
                });
            }
        }
        for &w in &self.forced {
            if !self.weights.contains(&w) {
                return Err(SpecError::ForcedNotAllowed { weight: w });
            }
        }
        for (&w, value) in &self.fixed_counts {
            if !self.weights.contains(&w) {
                return Err(SpecError::FixedNotAllowed { weight: w });
            }
            if value.is_negative() {
                return Err(SpecError::NegativeValue {
                    quantity: format!("A_{w}"),
                    value: value.clone(),
                });
            }
            if self.forced.contains(&w) && *value < Rat::one() {
                return Err(SpecError::ForcedFixedConflict {
                    weight: w,
                    value: value.clone(),
                });
            }
        }
        for (map, name) in [(&self.dual_fixed, "mu"), (&self.dual_lower, "mu lower bound")] {
            for (&m, value) in map {
                if m > self.n {
                    return Err(SpecError::DualIndexOutOfRange { m, n: self.n });
                }
                if value.is_negative() {
                    return Err(SpecError::NegativeValue {
                        quantity: format!("{name} {m}"),
                        value: value.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "[{},{},{{{}}}]", self.n, self.k, weights.join(","))?;
        if !self.forced.is_empty() {
            let forced: Vec<String> = self.forced.iter().map(|w| w.to_string()).collect();
            write!(f, " forced{{{}}}", forced.join(","))?;
        }
        if !self.fixed_counts.is_empty() {
            let items: Vec<String> = self
                .fixed_counts
                .iter()
                .map(|(w, v)| format!("A{w}={v}"))
                .collect();
            write!(f, " fixed{{{}}}", items.join(","))?;
        }
        if !self.dual_fixed.is_empty() {
            let items: Vec<String> = self
                .dual_fixed
                .iter()
                .map(|(m, v)| format!("mu{m}={v}"))
                .collect();
            write!(f, " dual{{{}}}", items.join(","))?;
        }
        if !self.dual_lower.is_empty() {
            let items: Vec<String> = self
                .dual_lower
                .iter()
                .map(|(m, v)| format!("mu{m}>={v}"))
                .collect();
            write!(f, " dual_min{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_each_defect() {
        assert!(CodeSpec::new(10, 3, [2, 4]).validate().is_ok());
        assert!(matches!(
            CodeSpec::new(5, 6, [2]).validate(),
            Err(SpecError::DimensionRange { .. })
        ));
        assert!(matches!(
            CodeSpec::new(5, 0, [2]).validate(),
            Err(SpecError::DimensionRange { .. })
        ));
        assert!(matches!(
            CodeSpec::new(5, 2, [6]).validate(),
            Err(SpecError::WeightOutOfRange { .. })
        ));
        assert!(matches!(
            CodeSpec::new(5, 2, [2]).forcing(4).validate(),
            Err(SpecError::ForcedNotAllowed { weight: 4 })
        ));
        assert!(matches!(
            CodeSpec::new(5, 2, [2])
                .with_fixed_count(4, Rat::one())
                .validate(),
            Err(SpecError::FixedNotAllowed { weight: 4 })
        ));
        assert!(matches!(
            CodeSpec::new(5, 2, [2])
                .with_fixed_count(2, "-1".parse().unwrap())
                .validate(),
            Err(SpecError::NegativeValue { .. })
        ));
        assert!(matches!(
            CodeSpec::new(5, 2, [2])
                .forcing(2)
                .with_fixed_count(2, "1/2".parse().unwrap())
                .validate(),
            Err(SpecError::ForcedFixedConflict { .. })
        ));
        assert!(matches!(
            CodeSpec::new(5, 2, [2]).with_dual_zero(9).validate(),
            Err(SpecError::DualIndexOutOfRange { .. })
        ));
        assert!(matches!(
            CodeSpec::new(5, 2, [2])
                .with_dual_lower(2, "-1".parse().unwrap())
                .validate(),
            Err(SpecError::NegativeValue { .. })
        ));
    }

    #[test]
    fn display_is_compact() {
        let spec = CodeSpec::new(66, 13, [24, 32, 40, 56]);
        assert_eq!(spec.to_string(), "[66,13,{24,32,40,56}]");
        let spec = CodeSpec::new(66, 13, [24, 32, 40, 64])
            .forcing(64)
            .with_dual_zero(1)
            .with_dual_lower(2, "7".parse().unwrap());
        assert_eq!(
            spec.to_string(),
            "[66,13,{24,32,40,64}] forced{64} dual{mu1=0} dual_min{mu2>=7}"
        );
    }

    #[test]
    fn plainness_predicates() {
        let plain = CodeSpec::new(10, 2, [4, 6]);
        assert!(plain.is_plain());
        assert!(plain.has_no_side_constraints());
        let forced = plain.clone().forcing(4);
        assert!(!forced.is_plain());
        assert!(forced.has_no_side_constraints());
        let pinned = plain.with_dual_zero(1);
        assert!(!pinned.is_plain());
        assert!(!pinned.has_no_side_constraints());
    }
}
