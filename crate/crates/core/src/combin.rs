//! Binomial coefficients, Krawtchouk polynomials, and the MacWilliams
//! transform — the combinatorial substrate for the linear-programming gate.

use crate::rat::Rat;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use thiserror::Error;

/// Errors from distribution construction and transforms.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinError {
    #[error("weight {weight} exceeds block length {length}")]
    WeightOutOfRange { weight: usize, length: usize },
    #[error("distribution total {got} is not 2^{k}")]
    TotalMismatch { k: u32, got: Rat },
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    let Ok(k) = u64::try_from(k) else {
        return BigUint::zero();
    };
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 1..=k {
        // Exact at every step: C(n-k+1..n-k+i) is divisible by i!.
        result = result * BigUint::from(n - k + i) / BigUint::from(i);
    }
    result
}

/// `C(n, k)` as an exact rational, for use in LP coefficient arithmetic.
pub fn binomial_rat(n: u64, k: i64) -> Rat {
    Rat::from(binomial(n, k))
}

// Krawtchouk tables are reused heavily while building LPs for one block
// length, so cache the full (m, i) table per n.
static KRAWTCHOUK_TABLES: Lazy<Mutex<HashMap<usize, Arc<Vec<Vec<BigInt>>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn krawtchouk_table(n: usize) -> Arc<Vec<Vec<BigInt>>> {
    let mut cache = KRAWTCHOUK_TABLES.lock().expect("krawtchouk cache poisoned");
    cache
        .entry(n)
        .or_insert_with(|| {
            // table[m][i] = K_m(i; n), built per column i by the three-term
            // recurrence (m+1) K_{m+1} = (n - 2i) K_m - (n - m + 1) K_{m-1}.
            let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
            for i in 0..=n {
                let lin = BigInt::from(n as i64 - 2 * i as i64);
                table[0][i] = BigInt::one();
                if n >= 1 {
                    table[1][i] = lin.clone();
                }
                for m in 1..n {
                    let numer = &lin * &table[m][i]
                        - BigInt::from((n - m + 1) as u64) * &table[m - 1][i];
                    let div = BigInt::from((m + 1) as u64);
                    debug_assert!((&numer % &div).is_zero());
                    table[m + 1][i] = numer / div;
                }
            }
            Arc::new(table)
        })
        .clone()
}

/// Binary Krawtchouk polynomial value `K_m(i)` for block length `n`.
///
/// Panics if `m > n` or `i > n`; those arguments are outside the polynomial
/// family's domain and always indicate a caller bug.
pub fn krawtchouk(n: usize, m: usize, i: usize) -> BigInt {
    assert!(
        m <= n && i <= n,
        "krawtchouk arguments out of range: n={n}, m={m}, i={i}"
    );
    krawtchouk_table(n)[m][i].clone()
}

/// `K_m(i)` from the defining alternating sum, with no recurrence or caching.
///
/// Deliberately a second, independent evaluation route for cross-checks.
pub fn krawtchouk_by_sum(n: usize, m: usize, i: usize) -> BigInt {
    assert!(
        m <= n && i <= n,
        "krawtchouk arguments out of range: n={n}, m={m}, i={i}"
    );
    let mut acc = BigInt::zero();
    for j in 0..=m {
        let term = BigInt::from(binomial(i as u64, j as i64))
            * BigInt::from(binomial((n - i) as u64, (m - j) as i64));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// A weight distribution over `{0, ..., length}` with exact rational counts.
///
/// Counts are stored sparsely; absent weights have count zero. The type does
/// not force counts to be nonnegative — transforms of relaxed (fractional)
/// distributions may pass through signed intermediate values — but
/// constructors reject weights beyond the block length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    length: usize,
    counts: BTreeMap<usize, Rat>,
}

impl WeightDistribution {
    pub fn from_counts<I>(length: usize, counts: I) -> Result<Self, CombinError>
    where
        I: IntoIterator<Item = (usize, Rat)>,
    {
        let mut map = BTreeMap::new();
        for (weight, count) in counts {
            if weight > length {
                return Err(CombinError::WeightOutOfRange { weight, length });
            }
            if !count.is_zero() {
                *map.entry(weight).or_insert_with(Rat::zero) += count;
            }
        }
        Ok(WeightDistribution {
            length,
            counts: map,
        })
    }

    pub fn from_integer_counts<I>(length: usize, counts: I) -> Result<Self, CombinError>
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        Self::from_counts(length, counts.into_iter().map(|(w, c)| (w, Rat::from(c))))
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn count(&self, weight: usize) -> Rat {
        self.counts.get(&weight).cloned().unwrap_or_else(Rat::zero)
    }

    /// Weights with a nonzero count, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.counts.iter().map(|(w, c)| (*w, c))
    }

    pub fn total(&self) -> Rat {
        self.counts.values().sum()
    }
}

/// MacWilliams transform of a distribution whose total is `2^k`:
/// `B_m = 2^{-k} * sum_i A_i K_m(i)`.
///
/// For the weight distribution of an `[n, k]` binary linear code this is the
/// weight distribution of the dual code; applying the transform again with
/// dimension `n - k` recovers the original distribution.
pub fn macwilliams(dist: &WeightDistribution, k: u32) -> Result<WeightDistribution, CombinError> {
    let n = dist.length();
    let scale = Rat::pow2(k);
    if dist.total() != scale {
        return Err(CombinError::TotalMismatch {
            k,
            got: dist.total(),
        });
    }
    let table = krawtchouk_table(n);
    let mut counts = BTreeMap::new();
    for m in 0..=n {
        let mut acc = Rat::zero();
        for (i, a_i) in dist.iter() {
            acc += a_i * &Rat::from(table[m][i].clone());
        }
        let b_m = acc
            .checked_div(&scale)
            .expect("2^k is nonzero");
        if !b_m.is_zero() {
            counts.insert(m, b_m);
        }
    }
    Ok(WeightDistribution { length: n, counts })
}
