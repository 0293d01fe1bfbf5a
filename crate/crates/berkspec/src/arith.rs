//! Rational and p-adic helpers shared by the algebraic modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Builds the rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("invalid rational '{s}'")))?;
    let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("invalid rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn vp(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        None
    } else {
        Some(vp_int(q.numer(), p) - vp_int(q.denom(), p))
    }
}

pub fn pow_p(p: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

fn pow_p_int(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Splits a nonzero rational as `p^v * u` with `u` a p-adic unit.
fn split_unit(q: &BigRational, p: u64) -> (i64, BigRational) {
    let v = vp(q, p).expect("nonzero");
    (v, q * pow_p(p, -v))
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> BigInt {
    let g = a.extended_gcd(modulus);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(modulus)
}

/// Rounds `q` to the canonical rational agreeing with it modulo `p^k`.
///
/// The result is `p^v * d` with `0 <= d < p^(k-v)` an integer, or zero when
/// `v_p(q) >= k`. It depends only on the class of `q` modulo `p^k Z_(p)`.
pub fn padic_round(q: &BigRational, p: u64, k: i64) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    let (v, u) = split_unit(q, p);
    if v >= k {
        return BigRational::zero();
    }
    let modulus = pow_p_int(p, (k - v) as u64);
    let inv = mod_inverse(&u.denom().mod_floor(&modulus), &modulus);
    let digits = (u.numer() * inv).mod_floor(&modulus);
    BigRational::from_integer(digits) * pow_p(p, v)
}

/// The p-adic fractional part of `q`: the unique rational in `[0, 1)` with a
/// p-power denominator whose difference from `q` lies in `Z_(p)`.
pub fn frac_p(q: &BigRational, p: u64) -> BigRational {
    match vp(q, p) {
        None => BigRational::zero(),
        Some(v) if v >= 0 => BigRational::zero(),
        Some(v) => {
            let scale = pow_p_int(p, (-v) as u64);
            let shifted = q * BigRational::from_integer(scale.clone());
            let r = padic_round(&shifted, p, -v);
            r / BigRational::from_integer(scale)
        }
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Largest `l <= cap` such that `p^l` divides `n` (every `l` divides zero).
pub fn vp_i64_capped(n: i64, p: u64, cap: u32) -> u32 {
    if n == 0 {
        return cap;
    }
    let mut m = n.unsigned_abs();
    let mut l = 0;
    while l < cap && m.is_multiple_of(p) {
        m /= p;
        l += 1;
    }
    l
}

pub fn to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_value() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&rat(12, 5), 2), Some(2));
        assert_eq!(vp(&rat(3, 8), 2), Some(-3));
        assert_eq!(vp(&int(0), 3), None);
    }

    #[test]
    fn rounding_is_a_congruence() {
        for (n, d) in [(1, 3), (-7, 5), (22, 9), (5, 12)] {
            let q = rat(n, d);
            let r = padic_round(&q, 2, 6);
            let diff = &q - &r;
            assert!(vp(&diff, 2).is_none_or(|v| v >= 6));
            assert!(r >= int(0));
        }
        assert_eq!(padic_round(&rat(8, 3), 2, 3), int(0));
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac_p(&rat(3, 2), 2), rat(1, 2));
        assert_eq!(frac_p(&rat(1, 3), 2), int(0));
        assert_eq!(frac_p(&rat(-1, 4), 2), rat(3, 4));
        let f = frac_p(&rat(7, 75), 5);
        assert!(vp(&(rat(7, 75) - &f), 5).is_none_or(|v| v >= 0));
    }

    #[test]
    fn primes_and_binomials() {
        assert!(is_prime(2) && is_prime(5) && !is_prime(9) && !is_prime(1));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(vp_i64_capped(12, 2, 8), 2);
        assert_eq!(vp_i64_capped(0, 2, 8), 8);
    }
}
