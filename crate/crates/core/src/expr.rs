//! Tiny checked arithmetic expressions.
//!
//! Proof steps that rest on a numeric identity — a pigeonhole count, a
//! ceiling of a bound — state the computation as an [`Expr`] so the claimed
//! value can be re-evaluated exactly during verification instead of being
//! trusted.

use crate::combin::binomial;
use crate::rat::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("division by zero in {0}")]
    DivisionByZero(String),
    #[error("binomial argument {0} is not an integer")]
    NonIntegerArgument(Rat),
    #[error("binomial upper argument {0} is negative or too large")]
    BadUpperArgument(Rat),
}

/// An exact arithmetic expression over integers and rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Int(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Floor(Box<Expr>),
    Ceil(Box<Expr>),
    /// `C(n, k)`: `n` must evaluate to a nonnegative integer, `k` to any
    /// integer (out-of-range `k` gives 0).
    Binom(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Int(v)
    }
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }
    pub fn floor(a: Expr) -> Expr {
        Expr::Floor(Box::new(a))
    }
    pub fn ceil(a: Expr) -> Expr {
        Expr::Ceil(Box::new(a))
    }
    pub fn binom(n: Expr, k: Expr) -> Expr {
        Expr::Binom(Box::new(n), Box::new(k))
    }

    pub fn eval(&self) -> Result<Rat, ExprError> {
        Ok(match self {
            Expr::Int(v) => Rat::from(*v),
            Expr::Add(a, b) => a.eval()? + b.eval()?,
            Expr::Sub(a, b) => a.eval()? - b.eval()?,
            Expr::Mul(a, b) => a.eval()? * b.eval()?,
            Expr::Div(a, b) => {
                let denom = b.eval()?;
                a.eval()?
                    .checked_div(&denom)
                    .ok_or_else(|| ExprError::DivisionByZero(self.to_string()))?
            }
            Expr::Floor(a) => Rat::from(a.eval()?.floor_int()),
            Expr::Ceil(a) => Rat::from(a.eval()?.ceil_int()),
            Expr::Binom(n, k) => {
                let n = n.eval()?;
                let k = k.eval()?;
                if !n.is_integer() {
                    return Err(ExprError::NonIntegerArgument(n));
                }
                if !k.is_integer() {
                    return Err(ExprError::NonIntegerArgument(k));
                }
                let n = u64::try_from(n.floor_int())
                    .map_err(|_| ExprError::BadUpperArgument(n.clone()))?;
                let k = i64::try_from(k.floor_int()).map_err(|_| ExprError::BadUpperArgument(k))?;
                Rat::from(binomial(n, k))
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Floor(a) => write!(f, "floor({a})"),
            Expr::Ceil(a) => write!(f, "ceil({a})"),
            Expr::Binom(n, k) => write!(f, "C({n}, {k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Expr as E;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn evaluates_exactly() {
        let free = E::floor(E::div(E::sub(E::int(66), E::int(56)), E::int(2)));
        assert_eq!(free.eval().unwrap(), r("5"));
        let survivors = E::sub(E::int(7), E::int(1));
        assert_eq!(survivors.eval().unwrap(), r("6"));
        let lifted = E::ceil(E::div(E::int(13), E::int(2)));
        assert_eq!(lifted.eval().unwrap(), r("7"));
        assert_eq!(E::binom(E::int(5), E::int(3)).eval().unwrap(), r("10"));
        assert_eq!(E::binom(E::int(4), E::int(-1)).eval().unwrap(), r("0"));
        assert_eq!(
            E::mul(E::div(E::int(1), E::int(3)), E::int(3)).eval().unwrap(),
            r("1")
        );
    }

    #[test]
    fn rejects_bad_operations() {
        assert!(matches!(
            E::div(E::int(1), E::sub(E::int(2), E::int(2))).eval(),
            Err(ExprError::DivisionByZero(_))
        ));
        assert!(matches!(
            E::binom(E::div(E::int(1), E::int(2)), E::int(1)).eval(),
            Err(ExprError::NonIntegerArgument(_))
        ));
        assert!(matches!(
            E::binom(E::int(-3), E::int(1)).eval(),
            Err(ExprError::BadUpperArgument(_))
        ));
    }

    #[test]
    fn renders_infix() {
        let e = E::floor(E::div(E::sub(E::int(66), E::int(56)), E::int(2)));
        assert_eq!(e.to_string(), "floor(((66 - 56) / 2))");
        assert_eq!(E::binom(E::int(5), E::int(3)).to_string(), "C(5, 3)");
    }

    #[test]
    fn serde_round_trip() {
        let e = E::ceil(E::div(E::int(13), E::int(2)));
        let json = serde_json::to_string(&e).unwrap();
        let back: Expr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.eval().unwrap(), r("7"));
    }
}
