//! Absolute values `p^(-q)` stored by their exponent `q`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{int, parse_rational, rat};
use crate::error::{Error, Result};

/// An absolute value `|x| = p^(-q)` with `q` rational, or exactly zero.
///
/// The ordering is the ordering of absolute values: `Val::Zero` is the
/// smallest element and a larger exponent means a smaller value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Zero,
    Exp(BigRational),
}

impl Val {
    pub fn zero() -> Val {
        Val::Zero
    }

    pub fn one() -> Val {
        Val::Exp(BigRational::zero())
    }

    pub fn from_exp(q: BigRational) -> Val {
        Val::Exp(q)
    }

    /// `|p|^k`, i.e. exponent `k`.
    pub fn p_pow(k: i64) -> Val {
        Val::Exp(int(k))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Val::Zero)
    }

    /// The exponent `q`, or `None` for the zero value.
    pub fn exp(&self) -> Option<&BigRational> {
        match self {
            Val::Zero => None,
            Val::Exp(q) => Some(q),
        }
    }

    /// The exponent of a nonzero value; panics on zero.
    pub fn q(&self) -> &BigRational {
        self.exp().expect("exponent of the zero absolute value")
    }

    pub fn mul(&self, other: &Val) -> Val {
        match (self, other) {
            (Val::Exp(a), Val::Exp(b)) => Val::Exp(a + b),
            _ => Val::Zero,
        }
    }

    /// Quotient `self / other`; `other` must be nonzero.
    pub fn div(&self, other: &Val) -> Val {
        match self {
            Val::Zero => Val::Zero,
            Val::Exp(a) => Val::Exp(a - other.q()),
        }
    }

    /// Ultrametric sum bound: the larger of the two absolute values.
    pub fn add_ultra(&self, other: &Val) -> Val {
        std::cmp::max(self, other).clone()
    }

    /// Rational power `|x|^e` for `e > 0`.
    pub fn pow(&self, e: &BigRational) -> Val {
        debug_assert!(e.is_positive());
        match self {
            Val::Zero => Val::Zero,
            Val::Exp(a) => Val::Exp(a * e),
        }
    }

    pub fn pow_int(&self, e: i64) -> Val {
        self.pow(&int(e))
    }

    /// Renders as `p^(-q)` with `q` in lowest terms, or `0`.
    pub fn render(&self) -> String {
        match self {
            Val::Zero => "0".to_string(),
            Val::Exp(q) if q.is_negative() => format!("p^(-({q}))"),
            Val::Exp(q) => format!("p^(-{q})"),
        }
    }

    /// Parses the rendering produced by [`Val::render`].
    pub fn parse(s: &str) -> Result<Val> {
        let t = s.trim();
        if t == "0" {
            return Ok(Val::Zero);
        }
        let inner = t
            .strip_prefix("p^(-")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("invalid absolute value '{s}'")))?;
        let inner = inner.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(inner);
        Ok(Val::Exp(parse_rational(inner)?))
    }

    /// Decimal approximation for display only.
    pub fn display_decimal(&self, p: u64) -> String {
        match self {
            Val::Zero => "0".to_string(),
            Val::Exp(q) => {
                let qf = q.to_f64().unwrap_or(f64::NAN);
                let x = (p as f64).powf(-qf);
                if q.is_integer() && x.fract() == 0.0 {
                    format!("{x}")
                } else {
                    format!("{x:.6}")
                }
            }
        }
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Val) -> Ordering {
        match (self, other) {
            (Val::Zero, Val::Zero) => Ordering::Equal,
            (Val::Zero, _) => Ordering::Less,
            (_, Val::Zero) => Ordering::Greater,
            (Val::Exp(a), Val::Exp(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Val) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The constant `omega = |p|^(1/(p-1))`.
pub fn omega(p: u64) -> Val {
    Val::Exp(rat(1, p as i64 - 1))
}

/// Exponent of `omega`.
pub fn omega_exp(p: u64) -> BigRational {
    rat(1, p as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: i64, d: i64) -> Val {
        Val::Exp(rat(n, d))
    }

    #[test]
    fn multiplication_adds_exponents() {
        assert_eq!(v(1, 1).mul(&v(1, 2)), v(3, 2));
        assert_eq!(Val::Zero.mul(&v(0, 1)), Val::Zero);
        assert_eq!(omega(2).mul(&omega(2)), v(2, 1));
    }

    #[test]
    fn ultrametric_addition_takes_min_exponent() {
        assert_eq!(v(1, 1).add_ultra(&v(1, 2)), v(1, 2));
        assert_eq!(Val::Zero.add_ultra(&v(3, 1)), v(3, 1));
        assert_eq!(Val::p_pow(1).add_ultra(&omega(3)), v(1, 2));
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega(2), v(1, 1));
        assert_eq!(omega(3), v(1, 2));
        assert_eq!(omega(5), v(1, 4));
    }

    #[test]
    fn omega_power_identity() {
        for p in [2u64, 3, 5, 7] {
            let lhs = omega(p).pow_int(p as i64).div(&Val::p_pow(1));
            assert_eq!(lhs, omega(p));
        }
    }

    #[test]
    fn ordering_is_by_absolute_value() {
        assert!(Val::Zero < v(100, 1));
        assert!(v(2, 1) < v(1, 1));
        assert!(v(-1, 1) > Val::one());
    }

    #[test]
    fn render_round_trip() {
        for x in [Val::Zero, v(3, 4), v(-1, 1), v(0, 1), v(-5, 3)] {
            assert_eq!(Val::parse(&x.render()).unwrap(), x);
        }
        assert_eq!(v(-1, 1).render(), "p^(-(-1))");
        assert_eq!(v(3, 4).render(), "p^(-3/4)");
        assert!(Val::parse("p^(1)").is_err());
    }

    #[test]
    fn decimal_display() {
        assert_eq!(v(-1, 1).display_decimal(5), "5");
        assert_eq!(Val::Zero.display_decimal(5), "0");
    }
}
