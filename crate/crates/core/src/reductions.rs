//! Structural reductions between code specifications.
//!
//! Each operation maps a spec to one or more smaller specs such that a code
//! matching the input would yield a code matching an output. Refuting the
//! outputs therefore refutes the input (possibly case by case). All
//! soundness side conditions are enforced as errors, never silently waived.

use crate::spec::CodeSpec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("weight {0} is not in the spec's weight set")]
    WeightNotInSpec(usize),
    #[error("the reduction would drop the dimension below 1")]
    DimensionExhausted,
    #[error("the reduction would leave fewer coordinates than dimensions")]
    LengthExhausted,
    #[error(
        "weights {j1} + {j2} = {w} allow words supported inside a weight-{w} word, \
         so the projection kernel may exceed the two-element subgroup"
    )]
    SubwordSplit { w: usize, j1: usize, j2: usize },
    #[error("the residual weight set is empty although the residual dimension is positive")]
    EmptyResidual,
    #[error("the full-support weight is already allowed, so adjoining may not grow the code")]
    AllOnesPresent,
}

/// Spec of the residual code of a weight-`w` codeword: project onto the
/// complement of the word's support.
///
/// The result is `[n - w, k - 1, J']` where `J'` collects every residual
/// weight `j - t` consistent with the group structure: a word of weight `j`
/// overlapping the support in `t` positions sums with the weight-`w` word to
/// a word of weight `j + w - 2t`, which must be an allowed weight (or zero).
///
/// Side conditions enforced:
/// - `w` must be an allowed weight;
/// - the residual dimension `k - 1` must stay positive and fit in `n - w`
///   coordinates;
/// - no two allowed weights may sum to `w` ([`ReductionError::SubwordSplit`]):
///   otherwise words supported entirely inside the weight-`w` support could
///   exist and the projection could lose more than one dimension;
/// - the residual weight set must be nonempty.
///
/// Forced weights and side constraints of the input do not transfer and are
/// not carried.
pub fn residual_spec(spec: &CodeSpec, w: usize) -> Result<CodeSpec, ReductionError> {
    if !spec.weights.contains(&w) {
        return Err(ReductionError::WeightNotInSpec(w));
    }
    if spec.k < 2 {
        return Err(ReductionError::DimensionExhausted);
    }
    let new_n = spec.n - w; // w <= n because weights are validated into [1, n]
    let new_k = spec.k - 1;
    if new_n < new_k {
        return Err(ReductionError::LengthExhausted);
    }
    for &j1 in &spec.weights {
        if j1 > w {
            break;
        }
        let j2 = w - j1;
        if j2 >= j1 && spec.weights.contains(&j2) {
            return Err(ReductionError::SubwordSplit { w, j1, j2 });
        }
    }

    let mut residual_weights = BTreeSet::new();
    let mut sums: BTreeSet<usize> = spec.weights.iter().copied().collect();
    sums.insert(0);
    for &j in &spec.weights {
        let t_min = (j + w).saturating_sub(spec.n);
        let t_max = j.min(w);
        for &sum in &sums {
            // t solves j + w - 2t = sum.
            let twice_t = match (j + w).checked_sub(sum) {
                Some(v) => v,
                None => continue,
            };
            if twice_t % 2 != 0 {
                continue;
            }
            let t = twice_t / 2;
            if t < t_min || t > t_max {
                continue;
            }
            let residual = j - t;
            if residual >= 1 && residual <= new_n {
                residual_weights.insert(residual);
            }
        }
    }
    if residual_weights.is_empty() {
        return Err(ReductionError::EmptyResidual);
    }
    Ok(CodeSpec::new(new_n, new_k, residual_weights))
}

/// Feasible support-overlap sizes between two codewords of weights `j1` and
/// `j2`.
///
/// An overlap `t` is feasible when the sum of the two words — of weight
/// `j1 + j2 - 2t` — is itself an allowed weight, or zero in case `j1 == j2`
/// (the two words being equal). An empty result for distinct weights means
/// no code under the spec contains words of both weights; a result of
/// exactly `{j}` for `j1 == j2 == j` means any two weight-`j` words are
/// equal.
pub fn pair_interaction(
    spec: &CodeSpec,
    j1: usize,
    j2: usize,
) -> Result<BTreeSet<usize>, ReductionError> {
    for j in [j1, j2] {
        if !spec.weights.contains(&j) {
            return Err(ReductionError::WeightNotInSpec(j));
        }
    }
    let mut sums: BTreeSet<usize> = spec.weights.iter().copied().collect();
    if j1 == j2 {
        sums.insert(0);
    }
    let t_min = (j1 + j2).saturating_sub(spec.n);
    let t_max = j1.min(j2);
    let mut overlaps = BTreeSet::new();
    for &sum in &sums {
        let twice_t = match (j1 + j2).checked_sub(sum) {
            Some(v) => v,
            None => continue,
        };
        if twice_t % 2 != 0 {
            continue;
        }
        let t = twice_t / 2;
        if t >= t_min && t <= t_max {
            overlaps.insert(t);
        }
    }
    Ok(overlaps)
}

/// Spec after shortening on disjoint dual-word supports.
///
/// Each entry of `components` is the size of one group of coordinates that
/// is pairwise tied by weight-2 dual words (a clique in the deuce graph), or
/// a single coordinate on which the whole code vanishes (size 1). Inside a
/// clique all coordinates of every codeword agree, so projecting the code
/// onto a group has rank at most 1; the subcode vanishing on all groups then
/// has dimension at least `k - #(groups of size >= 2)` and lives on
/// `n - sum(sizes)` coordinates. Weights above the new length are discarded;
/// forced weights and side constraints do not transfer.
pub fn shorten_components(
    spec: &CodeSpec,
    components: &[usize],
) -> Result<CodeSpec, ReductionError> {
    assert!(
        components.iter().all(|&c| c >= 1),
        "component sizes must be positive"
    );
    let removed: usize = components.iter().sum();
    let dim_drop = components.iter().filter(|&&c| c >= 2).count();
    if spec.k <= dim_drop {
        return Err(ReductionError::DimensionExhausted);
    }
    let new_k = spec.k - dim_drop;
    if spec.n < removed + new_k {
        return Err(ReductionError::LengthExhausted);
    }
    let new_n = spec.n - removed;
    let weights: BTreeSet<usize> = spec
        .weights
        .iter()
        .copied()
        .filter(|&j| j <= new_n)
        .collect();
    Ok(CodeSpec::new(new_n, new_k, weights))
}

/// Spec after shortening on the support of a single dual word of weight `m`.
///
/// A dual word of weight `m >= 1` confines the projection of the code onto
/// its support `S` to the even-weight hyperplane of the `m` coordinates, so
/// that projection has rank at most `m - 1`. The subcode vanishing on `S`,
/// restricted to the remaining `n - m` coordinates, has dimension at least
/// `k - (m - 1)`. Weights above the new length are discarded; forced weights
/// and side constraints do not transfer.
pub fn dual_word_shorten(spec: &CodeSpec, m: usize) -> Result<CodeSpec, ReductionError> {
    assert!(m >= 1, "dual word weight must be positive");
    let dim_drop = m - 1;
    if spec.k <= dim_drop {
        return Err(ReductionError::DimensionExhausted);
    }
    let new_k = spec.k - dim_drop;
    if spec.n < m + new_k {
        return Err(ReductionError::LengthExhausted);
    }
    let new_n = spec.n - m;
    let weights: BTreeSet<usize> = spec
        .weights
        .iter()
        .copied()
        .filter(|&j| j <= new_n)
        .collect();
    Ok(CodeSpec::new(new_n, new_k, weights))
}

/// Spec after adjoining the all-ones word to a code that lacks it.
///
/// A code matching `spec` without a full-support word extends to a code of
/// dimension `k + 1` whose weights are the originals, their complements,
/// and `n` itself; the full-support weight is forced, original forced
/// weights persist, and dual-count lower bounds at even indices carry over
/// (an even-weight dual word is automatically orthogonal to the all-ones
/// word). Pinned counts and pinned dual counts do not carry and must be
/// absent for the even-index argument to be stated cleanly; odd-index dual
/// lower bounds are dropped.
pub fn adjoin_complement(spec: &CodeSpec) -> Result<CodeSpec, ReductionError> {
    if spec.weights.contains(&spec.n) {
        return Err(ReductionError::AllOnesPresent);
    }
    if spec.n < spec.k + 1 {
        return Err(ReductionError::LengthExhausted);
    }
    let mut weights = spec.weights.clone();
    for &j in &spec.weights {
        weights.insert(spec.n - j); // j < n, so the complement is >= 1
    }
    weights.insert(spec.n);
    let mut out = CodeSpec::new(spec.n, spec.k + 1, weights);
    out.forced = spec.forced.clone();
    out.forced.insert(spec.n);
    for (&m, value) in &spec.dual_lower {
        if m % 2 == 0 {
            out.dual_lower.insert(m, value.clone());
        }
    }
    Ok(out)
}

/// One refutation case of the deuce-graph analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeuceGraphCase {
    /// Sizes of the disjoint coordinate cliques shortened away.
    pub shape: Vec<usize>,
    /// The spec a code would reduce to in this case.
    pub reduced: CodeSpec,
    pub rationale: String,
}

/// Case analysis of the graph whose edges are weight-2 dual words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeuceGraphAnalysis {
    pub cases: Vec<DeuceGraphCase>,
    /// Present when `min_edges` suffices to make the case split exhaustive:
    /// refuting every case forces all components of the graph to be single
    /// disjoint edges.
    pub all_k2_conclusion: Option<String>,
}

/// Enumerates the refutation cases needed to force a deuce graph with at
/// least `min_edges` edges into all-disjoint-edges shape.
///
/// Edges of the graph are weight-2 dual words; since the sum of two deuces
/// sharing a coordinate is again a deuce, every connected component is a
/// clique. If some component has three or more vertices, one of four
/// configurations of disjoint cliques exists — a 4-clique, a 5-clique, two
/// triangles, or a triangle plus a disjoint edge (this last needs a fourth
/// edge outside a lone triangle, hence `min_edges >= 4`) — and each yields a
/// shortened spec via [`shorten_components`]. Refuting all four certifies
/// that every component is a single edge.
pub fn deuce_graph_cases(
    spec: &CodeSpec,
    min_edges: usize,
) -> Result<DeuceGraphAnalysis, ReductionError> {
    let shapes: [(&[usize], &str); 4] = [
        (
            &[4],
            "a clique on four or more coordinates contains a 4-clique; shorten it",
        ),
        (
            &[5],
            "a clique on five or more coordinates contains a 5-clique; shorten it",
        ),
        (
            &[3, 3],
            "two components with three or more coordinates contain disjoint triangles",
        ),
        (
            &[3, 2],
            "a lone triangle plus at least one more edge gives a triangle and a disjoint edge",
        ),
    ];
    let mut cases = Vec::with_capacity(shapes.len());
    for (shape, rationale) in shapes {
        cases.push(DeuceGraphCase {
            shape: shape.to_vec(),
            reduced: shorten_components(spec, shape)?,
            rationale: rationale.to_owned(),
        });
    }
    let all_k2_conclusion = (min_edges >= 4).then(|| {
        format!(
            "with at least {min_edges} edges, refuting all four cases leaves every \
             component a single edge: at least {min_edges} pairwise disjoint deuces"
        )
    });
    Ok(DeuceGraphAnalysis {
        cases,
        all_k2_conclusion,
    })
}

/// All multisets of clique sizes (each at least 2) using at most
/// `max_vertices` coordinates, for exploratory sweeps. Sizes are listed
/// descending inside each shape; shapes are ordered by total size, then
/// lexicographically.
pub fn enumerate_clique_shapes(max_vertices: usize) -> Vec<Vec<usize>> {
    fn extend(total: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for part in (2..=max_part.min(total)).rev() {
            prefix.push(part);
            out.push(prefix.clone());
            extend(total - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 2..=max_vertices {
        let mut shapes = Vec::new();
        let mut prefix = Vec::new();
        extend(total, total, &mut prefix, &mut shapes);
        // Keep only shapes that use exactly `total` vertices.
        shapes.retain(|s| s.iter().sum::<usize>() == total);
        shapes.sort();
        out.extend(shapes);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heavy() -> CodeSpec {
        CodeSpec::new(66, 13, [24, 32, 40, 56])
    }

    #[test]
    fn residual_of_the_middle_weight() {
        let spec = CodeSpec::new(61, 11, [24, 32, 40, 56]);
        let residual = residual_spec(&spec, 40).unwrap();
        assert_eq!(residual, CodeSpec::new(21, 10, [4, 8, 12, 16, 20]));
    }

    #[test]
    fn residual_weight_floor() {
        // Every residual weight is at least min(J) - floor(w/2): overlap t
        // is capped by the sum weight being another allowed weight.
        for w in [24, 32, 40] {
            let spec = CodeSpec::new(80, 5, [24, 32, 40, 56]);
            let residual = residual_spec(&spec, w).unwrap();
            let floor = 24usize.saturating_sub(w / 2);
            assert!(
                residual.weights.iter().all(|&j| j >= floor.max(1)),
                "residual of {w} dips below {floor}: {residual}"
            );
        }
    }

    #[test]
    fn split_weights_are_rejected() {
        let spec = CodeSpec::new(10, 3, [2, 4, 6]);
        assert_eq!(
            residual_spec(&spec, 6),
            Err(ReductionError::SubwordSplit { w: 6, j1: 2, j2: 4 })
        );
    }

    #[test]
    fn residual_edge_errors() {
        let spec = CodeSpec::new(61, 1, [24, 32, 40, 56]);
        assert_eq!(residual_spec(&spec, 40), Err(ReductionError::DimensionExhausted));
        assert_eq!(
            residual_spec(&heavy(), 12),
            Err(ReductionError::WeightNotInSpec(12))
        );
        // Nothing survives projection: all overlaps kill the word.
        let tight = CodeSpec::new(10, 2, [9, 10]);
        assert_eq!(residual_spec(&tight, 9), Err(ReductionError::EmptyResidual));
        let long = CodeSpec::new(12, 8, [10]);
        assert_eq!(residual_spec(&long, 10), Err(ReductionError::LengthExhausted));
    }

    #[test]
    fn pair_overlaps_match_hand_computation() {
        assert_eq!(
            pair_interaction(&heavy(), 24, 24).unwrap(),
            BTreeSet::from([4, 8, 12, 24])
        );
        // Two weight-56 words can only be equal.
        assert_eq!(
            pair_interaction(&heavy(), 56, 56).unwrap(),
            BTreeSet::from([56])
        );
        let wide = CodeSpec::new(66, 13, [24, 32, 40, 56, 64]);
        assert_eq!(pair_interaction(&wide, 56, 64).unwrap(), BTreeSet::new());
        assert_eq!(
            pair_interaction(&wide, 64, 64).unwrap(),
            BTreeSet::from([64])
        );
        assert_eq!(
            pair_interaction(&heavy(), 24, 12),
            Err(ReductionError::WeightNotInSpec(12))
        );
    }

    #[test]
    fn shortening_composes() {
        let once = shorten_components(&heavy(), &[2]).unwrap();
        assert_eq!(once, CodeSpec::new(64, 12, [24, 32, 40, 56]));
        let twice = shorten_components(&once, &[2]).unwrap();
        assert_eq!(twice, shorten_components(&heavy(), &[2, 2]).unwrap());
        // A singleton drops a coordinate but no dimension.
        let singleton = shorten_components(&heavy(), &[1]).unwrap();
        assert_eq!(singleton, CodeSpec::new(65, 13, [24, 32, 40, 56]));
        // Weights above the new length fall away.
        let deep = shorten_components(&CodeSpec::new(10, 4, [2, 9, 10]), &[2]).unwrap();
        assert_eq!(deep, CodeSpec::new(8, 3, [2]));
    }

    #[test]
    fn shortening_edge_errors() {
        assert_eq!(
            shorten_components(&CodeSpec::new(6, 1, [2]), &[2]),
            Err(ReductionError::DimensionExhausted)
        );
        assert_eq!(
            shorten_components(&CodeSpec::new(4, 3, [2]), &[2, 2]),
            Err(ReductionError::LengthExhausted)
        );
    }

    #[test]
    fn dual_word_shortening_by_weight() {
        // A weight-m dual word costs m coordinates and m - 1 dimensions.
        assert_eq!(
            dual_word_shorten(&heavy(), 1).unwrap(),
            CodeSpec::new(65, 13, [24, 32, 40, 56])
        );
        assert_eq!(
            dual_word_shorten(&heavy(), 2).unwrap(),
            CodeSpec::new(64, 12, [24, 32, 40, 56])
        );
        assert_eq!(
            dual_word_shorten(&heavy(), 3).unwrap(),
            CodeSpec::new(63, 11, [24, 32, 40, 56])
        );
        // Agreement with the clique-based shortening where both apply.
        assert_eq!(
            dual_word_shorten(&heavy(), 2).unwrap(),
            shorten_components(&heavy(), &[2]).unwrap()
        );
        // Weights above the new length fall away.
        assert_eq!(
            dual_word_shorten(&CodeSpec::new(10, 2, [9, 10]), 1).unwrap(),
            CodeSpec::new(9, 2, [9])
        );
    }

    #[test]
    fn dual_word_shortening_edge_errors() {
        assert_eq!(
            dual_word_shorten(&CodeSpec::new(5, 2, [2]), 4),
            Err(ReductionError::DimensionExhausted)
        );
        assert_eq!(
            dual_word_shorten(&CodeSpec::new(4, 4, [2]), 2),
            Err(ReductionError::LengthExhausted)
        );
    }

    #[test]
    fn adjoining_the_full_support_word() {
        let tiny = adjoin_complement(&CodeSpec::new(6, 1, [2])).unwrap();
        let mut expected = CodeSpec::new(6, 2, [2, 4, 6]);
        expected.forced.insert(6);
        assert_eq!(tiny, expected);

        let sub = CodeSpec::new(64, 12, [24, 32, 40]).with_dual_lower(2, 1i64.into());
        let adjoined = adjoin_complement(&sub).unwrap();
        assert_eq!(adjoined.n, 64);
        assert_eq!(adjoined.k, 13);
        // Complements of 24, 32, 40 are 40, 32, 24: the set closes on itself.
        assert_eq!(adjoined.weights, BTreeSet::from([24, 32, 40, 64]));
        assert_eq!(adjoined.forced, BTreeSet::from([64]));
        assert_eq!(adjoined.dual_lower.get(&2), Some(&1i64.into()));
        adjoined.validate().unwrap();

        assert_eq!(
            adjoin_complement(&CodeSpec::new(6, 1, [6])),
            Err(ReductionError::AllOnesPresent)
        );
    }

    #[test]
    fn complement_weights_are_symmetric() {
        let spec = CodeSpec::new(20, 3, [4, 6, 9]);
        let adjoined = adjoin_complement(&spec).unwrap();
        for &j in &adjoined.weights {
            if j == 20 {
                continue;
            }
            assert!(
                adjoined.weights.contains(&(20 - j)),
                "weight {j} lacks its complement"
            );
        }
    }

    #[test]
    fn deuce_case_table() {
        let analysis = deuce_graph_cases(&heavy(), 7).unwrap();
        let reduced: Vec<&CodeSpec> = analysis.cases.iter().map(|c| &c.reduced).collect();
        assert_eq!(
            reduced,
            vec![
                &CodeSpec::new(62, 12, [24, 32, 40, 56]),
                &CodeSpec::new(61, 12, [24, 32, 40, 56]),
                &CodeSpec::new(60, 11, [24, 32, 40, 56]),
                &CodeSpec::new(61, 11, [24, 32, 40, 56]),
            ]
        );
        assert!(analysis.all_k2_conclusion.is_some());
        assert!(deuce_graph_cases(&heavy(), 3).unwrap().all_k2_conclusion.is_none());
    }

    #[test]
    fn clique_shape_enumeration() {
        let shapes = enumerate_clique_shapes(6);
        assert_eq!(shapes.len(), 10);
        assert!(shapes.contains(&vec![2]));
        assert!(shapes.contains(&vec![3, 2]));
        assert!(shapes.contains(&vec![2, 2, 2]));
        for shape in &shapes {
            assert!(shape.iter().all(|&c| c >= 2));
            assert!(shape.iter().sum::<usize>() <= 6);
            assert!(shape.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
