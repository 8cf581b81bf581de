//! Classical length bounds and the implication order between code
//! specifications.
//!
//! [`griesmer_min_length`] is the textbook lower bound
//! `n >= sum_{i<k} ceil(d / 2^i)` on the length of a binary `[n, k, d]`
//! code; [`griesmer_check`] turns it into a refutation when the spec's
//! smallest allowed weight already violates it. [`implies_nonexistence`]
//! captures when ruling out one spec rules out another for free (subcodes
//! and weight subsets).

use crate::spec::CodeSpec;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("the weight set is empty, so no minimum distance is implied")]
    EmptyWeights,
}

/// Minimum length of a binary linear code of dimension `k` and minimum
/// distance `d`: `sum_{i=0}^{k-1} ceil(d / 2^i)`.
///
/// Dividing by `2^i` saturates to a final `ceil = 1` once `2^i >= d`, so the
/// sum never overflows for sane inputs.
pub fn griesmer_min_length(k: usize, d: u64) -> u64 {
    (0..k as u32)
        .map(|i| {
            if i >= 63 || (1u64 << i) >= d {
                u64::from(d > 0)
            } else {
                let p = 1u64 << i;
                d.div_ceil(p)
            }
        })
        .sum()
}

/// Outcome of testing a spec against the Griesmer bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GriesmerVerdict {
    /// The spec's length is below the bound: no such code exists.
    Refuted { min_distance: u64, required_length: u64 },
    /// The bound is satisfied; nothing follows.
    Inconclusive { min_distance: u64, required_length: u64 },
}

impl GriesmerVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, GriesmerVerdict::Refuted { .. })
    }
}

/// Applies the Griesmer bound with `d = min(weights)`.
///
/// Sound for any spec: every nonzero word of a code matching the spec has
/// weight at least `min(weights)`, so the code is an `[n, k, >= d]` code,
/// and the bound is monotone in `d`.
pub fn griesmer_check(spec: &CodeSpec) -> Result<GriesmerVerdict, BoundError> {
    let d = *spec.weights.iter().next().ok_or(BoundError::EmptyWeights)? as u64;
    let required_length = griesmer_min_length(spec.k, d);
    if (spec.n as u64) < required_length {
        Ok(GriesmerVerdict::Refuted {
            min_distance: d,
            required_length,
        })
    } else {
        Ok(GriesmerVerdict::Inconclusive {
            min_distance: d,
            required_length,
        })
    }
}

/// Does nonexistence for `refuted` imply nonexistence for `query`?
///
/// True when every code matching `query` would contain a code matching
/// `refuted`: same length, at least the dimension (pass to a subcode), a
/// weight set at least as permissive on the refuted side, and no side
/// constraints on the refuted side that a subcode might not inherit. Forced
/// weights transfer to a subcode only while the forced words are few enough
/// to sit inside every subcode of the stated dimension, hence the
/// `forced.len() <= refuted.k` guard: `|forced|` independent-or-not words
/// span at most a `|forced|`-dimensional space, which fits in any
/// `refuted.k`-dimensional subcode chosen to contain them.
pub fn implies_nonexistence(refuted: &CodeSpec, query: &CodeSpec) -> bool {
    refuted.n == query.n
        && query.k >= refuted.k
        && query.weights.is_subset(&refuted.weights)
        && refuted.fixed_counts.is_empty()
        && refuted.dual_fixed.is_empty()
        && refuted.dual_lower.is_empty()
        && refuted.forced.is_subset(&query.forced)
        && refuted.forced.len() <= refuted.k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_bound_is_the_distance() {
        for d in [1u64, 2, 24, 56] {
            assert_eq!(griesmer_min_length(1, d), d);
        }
    }

    #[test]
    fn known_bound_values() {
        // [n, 7, 24] needs n >= 24+12+6+3+2+1+1 = 49.
        assert_eq!(griesmer_min_length(7, 24), 49);
        // [n, 4, 3] needs n >= 3+2+1+1 = 7.
        assert_eq!(griesmer_min_length(4, 3), 7);
        // Saturation: k far beyond log2(d) adds 1 per dimension.
        assert_eq!(griesmer_min_length(10, 4), 4 + 2 + 8);
        assert_eq!(griesmer_min_length(0, 24), 0);
        assert_eq!(griesmer_min_length(70, 1), 70);
    }

    #[test]
    fn bound_is_monotone_in_distance_and_dimension() {
        for k in 1..12 {
            for d in 1..100 {
                assert!(griesmer_min_length(k, d) <= griesmer_min_length(k, d + 1));
                assert!(griesmer_min_length(k, d) <= griesmer_min_length(k + 1, d));
            }
        }
    }

    #[test]
    fn griesmer_refutes_short_specs() {
        // A 7-dimensional code with all weights >= 24 needs length 49.
        let spec = CodeSpec::new(48, 7, [24, 32, 40, 48]);
        let verdict = griesmer_check(&spec).unwrap();
        assert_eq!(
            verdict,
            GriesmerVerdict::Refuted {
                min_distance: 24,
                required_length: 49
            }
        );
        let ok = CodeSpec::new(49, 7, [24, 32, 40, 48]);
        assert!(!griesmer_check(&ok).unwrap().is_refuted());
    }

    #[test]
    fn implication_is_reflexive_for_plain_specs() {
        let spec = CodeSpec::new(66, 13, [24, 32, 40, 56]);
        assert!(implies_nonexistence(&spec, &spec));
    }

    #[test]
    fn implication_covers_subcodes_and_weight_subsets() {
        let refuted = CodeSpec::new(62, 12, [24, 32, 40, 56]);
        let higher_dim = CodeSpec::new(62, 13, [24, 32, 40, 56]);
        let fewer_weights = CodeSpec::new(62, 12, [24, 32, 40]);
        assert!(implies_nonexistence(&refuted, &higher_dim));
        assert!(implies_nonexistence(&refuted, &fewer_weights));
        // Not the other way around.
        assert!(!implies_nonexistence(&higher_dim, &refuted));
        assert!(!implies_nonexistence(&fewer_weights, &refuted));
        // Different length never transfers.
        let other_n = CodeSpec::new(63, 13, [24, 32, 40, 56]);
        assert!(!implies_nonexistence(&refuted, &other_n));
    }

    #[test]
    fn side_constraints_block_transfer() {
        let plain = CodeSpec::new(62, 12, [24, 32, 40, 56]);
        let with_dual = plain.clone().with_dual_zero(1);
        let with_fixed = plain.clone().with_fixed_count(24, 3i64.into());
        // A constrained refutation says nothing about the plain spec...
        assert!(!implies_nonexistence(&with_dual, &plain));
        assert!(!implies_nonexistence(&with_fixed, &plain));
        // ...but a plain refutation covers constrained queries.
        assert!(implies_nonexistence(&plain, &with_dual));
    }

    #[test]
    fn forced_weights_transfer_only_downward() {
        let refuted_forcing = CodeSpec::new(64, 13, [24, 32, 40, 64]).forcing(64);
        let query_forcing = CodeSpec::new(64, 13, [24, 32, 40, 64]).forcing(64);
        let query_plain = CodeSpec::new(64, 13, [24, 32, 40, 64]);
        assert!(implies_nonexistence(&refuted_forcing, &query_forcing));
        // The query must force everything the refuted spec forces.
        assert!(!implies_nonexistence(&refuted_forcing, &query_plain));
        // Forcing more than the dimension can hold blocks the subcode step.
        let tiny = CodeSpec::new(6, 1, [2, 4]).forcing(2).forcing(4);
        assert!(!implies_nonexistence(&tiny, &CodeSpec::new(6, 2, [2, 4]).forcing(2).forcing(4)));
    }
}
