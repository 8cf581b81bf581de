//! Numeric invariants for even node sets on nodal sextic surfaces.
//!
//! An even set of `p` nodes on a degree-`s` nodal surface determines a
//! double cover; its twisted Euler characteristics, together with the
//! Castelnuovo genus bound and a section-count cap, pin down which sizes an
//! even set can have. These are closed-form evaluations — the exactness
//! burden is carried by [`crate::rat::Rat`].

use crate::combin::binomial;
use crate::rat::Rat;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest node count a sextic surface admits (Basset's bound).
pub const MAX_SEXTIC_NODES: u64 = 66;

/// Rank of the middle cohomology of a smooth sextic surface.
pub const SEXTIC_MIDDLE_RANK: u64 = 106;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("minimum even-set weight is only computed for degree 6, not {0}")]
    UnsupportedDegree(u64),
    #[error("the genus bound needs a projective space of dimension at least 2, got {0}")]
    BadProjectiveRank(u64),
    #[error("a nondegenerate curve in projective {r}-space has degree at least {r}, got {d}")]
    DegreeBelowRank { d: u64, r: u64 },
    #[error("a sextic surface has at most {MAX_SEXTIC_NODES} nodes, got {0}")]
    NodeCountOutOfRange(u64),
    #[error("the dimension bound needs an even middle rank, got {0}")]
    OddMiddleRank(u64),
}

/// Euler characteristic `chi(O_X(n))` of the double cover `X` attached to an
/// even set of `p` nodes on a degree-`s` nodal surface:
///
/// `n(n + 4 - s)s + 2(1 + C(s-1, 3)) - p/4`.
///
/// The twist `n` may be negative. The result is integral whenever `p` is a
/// multiple of 4, which holds for every even node set.
pub fn chi_double_cover(s: u64, n: i64, p: u64) -> Rat {
    assert!(s >= 1, "the surface degree must be positive");
    let n = Rat::from(n);
    let s_rat = Rat::from(s);
    let twist = &n * (&n + Rat::from(4i64) - &s_rat) * &s_rat;
    let structural = Rat::from(2i64) * (Rat::one() + Rat::from(binomial(s - 1, 3)));
    let nodes = Rat::from(p)
        .checked_div(&Rat::from(4i64))
        .expect("4 is nonzero");
    twist + structural - nodes
}

/// Castelnuovo's bound on the genus of a nondegenerate degree-`d` curve in
/// projective `r`-space: `C(m, 2)(r - 1) + m * e` with
/// `m = floor((d-1)/(r-1))` and `e = (d-1) - m(r-1)`.
pub fn castelnuovo_genus_bound(d: u64, r: u64) -> Result<Rat, GeometryError> {
    if r < 2 {
        return Err(GeometryError::BadProjectiveRank(r));
    }
    if d < r {
        return Err(GeometryError::DegreeBelowRank { d, r });
    }
    let m = (d - 1) / (r - 1);
    let e = (d - 1) - m * (r - 1);
    Ok(Rat::from(binomial(m, 2)) * Rat::from(r - 1) + Rat::from(m) * Rat::from(e))
}

/// The inequality `2(r-1)(s^2 - 3s + 1) <= (2s-1)(2s + r - 4)` that a
/// birational degree-`2s` image of the double cover of a degree-`s`
/// hyperplane section forces on the dimension `r` of its span, via the
/// Castelnuovo bound on the genus `(s-1)(s-2) - 1`.
pub fn embedding_dim_inequality(s: u64, r: u64) -> bool {
    assert!(s >= 5, "stated for degree at least 5");
    assert!(r >= 3, "a nondegenerate space curve spans at least 3 dimensions");
    let (s, r) = (i128::from(s), i128::from(r));
    2 * (r - 1) * (s * s - 3 * s + 1) <= (2 * s - 1) * (2 * s + r - 4)
}

/// One candidate size excluded on the way to the minimum even-set weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedWeight {
    pub weight: u64,
    /// `chi(O_X(1))` for the would-be double cover.
    pub chi: Rat,
    /// Sections forced by `chi = h0 - h1 + h2 <= 2 h0` (degree-1 twists of
    /// these covers satisfy `h0 = h2`).
    pub forced_sections: u64,
    /// The cap: such a cover carries at most 5 sections in degree 1.
    pub max_sections: u64,
}

/// The minimum-weight computation with its per-candidate exclusion trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinWeightTrace {
    pub degree: u64,
    pub min_weight: u64,
    pub rejected: Vec<RejectedWeight>,
}

/// Smallest possible size of a nonempty even node set on a degree-`s`
/// surface, with the exclusion trace. Sizes are multiples of 8; any
/// candidate below the answer forces too many degree-1 sections on its
/// double cover.
///
/// Only degree 6 is supported: the section cap and divisibility input are
/// specific to sextics.
pub fn min_even_weight(s: u64) -> Result<MinWeightTrace, GeometryError> {
    if s != 6 {
        return Err(GeometryError::UnsupportedDegree(s));
    }
    let max_sections = 5u64;
    let mut rejected = Vec::new();
    let mut candidate = 8;
    loop {
        let chi = chi_double_cover(s, 1, candidate);
        // h0 >= ceil(chi / 2).
        let forced_sections = (chi.clone() / Rat::from(2i64)).ceil_int();
        let forced_sections = u64::try_from(forced_sections).expect("small nonnegative count");
        if forced_sections <= max_sections {
            return Ok(MinWeightTrace {
                degree: s,
                min_weight: candidate,
                rejected,
            });
        }
        rejected.push(RejectedWeight {
            weight: candidate,
            chi,
            forced_sections,
            max_sections,
        });
        candidate += 8;
    }
}

/// Which classical inputs the admissible-weight enumeration assumes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryAssumptions {
    /// Even node sets on a sextic have size divisible by 8.
    pub divisible_by_8: bool,
    /// A 66-node sextic has no even set of size 48.
    pub exclude_48: bool,
    /// No nonempty even set is smaller than 24.
    pub min_weight_24: bool,
}

impl Default for GeometryAssumptions {
    fn default() -> Self {
        GeometryAssumptions {
            divisible_by_8: true,
            exclude_48: true,
            min_weight_24: true,
        }
    }
}

/// Sizes a nonempty even node set can have on a sextic with at most
/// `max_nodes` nodes, under the default assumptions: multiples of 8 from 24
/// to `max_nodes`, excluding 48.
pub fn admissible_even_weights(max_nodes: u64) -> Result<Vec<u64>, GeometryError> {
    Ok(admissible_even_weights_with(max_nodes, &GeometryAssumptions::default())?.0)
}

/// [`admissible_even_weights`] under explicitly chosen assumptions; each
/// weakened assumption contributes a caveat describing how the list grew.
/// Without divisibility by 8 the enumeration falls back to divisibility by
/// 4, which holds for every even node set.
pub fn admissible_even_weights_with(
    max_nodes: u64,
    assumptions: &GeometryAssumptions,
) -> Result<(Vec<u64>, Vec<String>), GeometryError> {
    if max_nodes > MAX_SEXTIC_NODES {
        return Err(GeometryError::NodeCountOutOfRange(max_nodes));
    }
    let mut caveats = Vec::new();
    let step = if assumptions.divisible_by_8 {
        8
    } else {
        caveats.push(
            "divisibility by 8 withdrawn: falling back to divisibility by 4".to_owned(),
        );
        4
    };
    let floor = if assumptions.min_weight_24 {
        24
    } else {
        caveats.push("minimum weight 24 withdrawn: sizes below 24 are not excluded".to_owned());
        step
    };
    if !assumptions.exclude_48 {
        caveats.push("weight-48 exclusion withdrawn: 48 remains admissible".to_owned());
    }
    let weights = (1..)
        .map(|i| i * step)
        .take_while(|&w| w <= max_nodes)
        .filter(|&w| w >= floor)
        .filter(|&w| w != 48 || !assumptions.exclude_48)
        .collect();
    Ok((weights, caveats))
}

/// Lower bound on the dimension of the code of even node sets of a sextic
/// with `nodes` nodes: `max(0, nodes - 106/2)`.
pub fn code_dim_lower_bound(nodes: u64) -> u64 {
    code_dim_lower_bound_with(nodes, SEXTIC_MIDDLE_RANK).expect("106 is even")
}

/// The same bound for a stated middle rank `b2`: the classes of the
/// exceptional curves are independent in a quotient of rank `b2`, and even
/// sets are the relations modulo 2 beyond rank `b2/2`.
pub fn code_dim_lower_bound_with(nodes: u64, b2: u64) -> Result<u64, GeometryError> {
    if b2 % 2 != 0 {
        return Err(GeometryError::OddMiddleRank(b2));
    }
    Ok(nodes.saturating_sub(b2 / 2))
}
