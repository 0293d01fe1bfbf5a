//! Laurent polynomials in `S` over [`Scalar`], with Gauss norms at `x_{0,r}`
//! and the three derivations used as gauges.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::arith::{int, pow_p};
use crate::scalars::Scalar;
use crate::valuation::Val;

/// The derivation `d/dS`, `S d/dS` or `p^l S d/dS`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gauge {
    DdS,
    SDdS,
    PlSDdS(u32),
}

impl Gauge {
    /// `p^l S d/dS`, with `l = 0` normalized to [`Gauge::SDdS`].
    pub fn pl_sds(l: u32) -> Gauge {
        if l == 0 {
            Gauge::SDdS
        } else {
            Gauge::PlSDdS(l)
        }
    }

    /// The level `l` of a gauge of the form `p^l S d/dS`.
    pub fn level(&self) -> Option<u32> {
        match self {
            Gauge::DdS => None,
            Gauge::SDdS => Some(0),
            Gauge::PlSDdS(l) => Some(*l),
        }
    }

    /// Operator norm of the derivation on `H(x_{0,r})`, `r = p^(-rho)`.
    pub fn derivation_norm(&self, rho: &BigRational) -> Val {
        match self {
            Gauge::DdS => Val::Exp(-rho.clone()),
            Gauge::SDdS => Val::one(),
            Gauge::PlSDdS(l) => Val::p_pow(*l as i64),
        }
    }
}

/// A finite sum `sum_i c_i S^i` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    p: u64,
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(p: u64) -> LaurentPoly {
        LaurentPoly { p, terms: BTreeMap::new() }
    }

    pub fn one(p: u64) -> LaurentPoly {
        LaurentPoly::constant(Scalar::one(p))
    }

    pub fn constant(c: Scalar) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    /// The monomial `c S^k`.
    pub fn monomial(c: Scalar, k: i64) -> LaurentPoly {
        let p = c.p();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { p, terms }
    }

    pub fn from_terms(p: u64, terms: impl IntoIterator<Item = (i64, Scalar)>) -> LaurentPoly {
        let mut out = LaurentPoly::zero(p);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<i64, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(|| Scalar::zero(self.p))
    }

    fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&k) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { p: self.p, terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.p);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i + j, &a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.p);
        }
        LaurentPoly { p: self.p, terms: self.terms.iter().map(|(k, a)| (*k, a.mul(c))).collect() }
    }

    pub fn scale_rational(&self, q: &BigRational) -> LaurentPoly {
        self.scale(&Scalar::from_rational(self.p, q.clone()))
    }

    /// Multiplication by `S^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { p: self.p, terms: self.terms.iter().map(|(i, c)| (i + k, c.clone())).collect() }
    }

    /// Gauss norm at `x_{0,r}` with `r = p^(-rho)`: exponent `min_i v(c_i) + i*rho`.
    pub fn gauss_norm(&self, rho: &BigRational) -> Val {
        self.terms.iter().map(|(i, c)| term_val(c, *i, rho)).max().unwrap_or(Val::Zero)
    }

    /// Applies the derivation of the given gauge.
    pub fn derive(&self, gauge: Gauge) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.p);
        for (i, c) in &self.terms {
            if *i == 0 {
                continue;
            }
            let factor = int(*i);
            match gauge {
                Gauge::DdS => out.add_term(i - 1, &c.scale(&factor)),
                Gauge::SDdS => out.add_term(*i, &c.scale(&factor)),
                Gauge::PlSDdS(l) => out.add_term(*i, &c.scale(&(factor * pow_p(self.p, l as i64)))),
            }
        }
        out
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent support.
    pub fn span(&self) -> i64 {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    /// The unique term of maximal absolute value at radius `p^(-rho)`, if one
    /// strictly dominates all others.
    pub fn dominant_term(&self, rho: &BigRational) -> Option<(i64, Scalar)> {
        let mut best: Option<(Val, i64)> = None;
        let mut tie = false;
        for (i, c) in &self.terms {
            let v = term_val(c, *i, rho);
            match &best {
                Some((bv, _)) if v < *bv => {}
                Some((bv, _)) if v == *bv => tie = true,
                _ => {
                    best = Some((v, *i));
                    tie = false;
                }
            }
        }
        match best {
            Some((_, i)) if !tie => Some((i, self.terms[&i].clone())),
            _ => None,
        }
    }

    /// Substitutes `S -> S^e`.
    pub fn inflate(&self, e: i64) -> LaurentPoly {
        LaurentPoly { p: self.p, terms: self.terms.iter().map(|(i, c)| (i * e, c.clone())).collect() }
    }

    /// Substitutes `S^e -> S`; every exponent must be divisible by `e`.
    pub fn deflate(&self, e: i64) -> Option<LaurentPoly> {
        if self.terms.keys().any(|i| i % e != 0) {
            return None;
        }
        Some(LaurentPoly { p: self.p, terms: self.terms.iter().map(|(i, c)| (i / e, c.clone())).collect() })
    }

    /// Drops everything of absolute value at most `p^(-bound)` at radius
    /// `p^(-rho)`: whole terms below the bound disappear and the p-adic digits
    /// of the remaining coefficients are cut at the same level.
    pub fn truncate(&self, rho: &BigRational, bound: &BigRational) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.p);
        for (i, c) in &self.terms {
            let level = bound - int(*i) * rho;
            out.add_term(*i, &c.truncate(&level));
        }
        out
    }
}

fn term_val(c: &Scalar, i: i64, rho: &BigRational) -> Val {
    match c.val() {
        Val::Zero => Val::Zero,
        Val::Exp(q) => Val::Exp(q + int(i) * rho),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*S"),
                _ => format!("({c})*S^{i}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn sc(p: u64, s: &str) -> Scalar {
        Scalar::parse_str(p, s).unwrap()
    }

    fn s_pow(p: u64, k: i64) -> LaurentPoly {
        LaurentPoly::monomial(Scalar::one(p), k)
    }

    #[test]
    fn gauss_norm_examples() {
        assert_eq!(s_pow(2, 1).gauss_norm(&int(1)), Val::Exp(int(1)));
        let f = LaurentPoly::constant(Scalar::from_int(2, 2)).add(&s_pow(2, 2));
        assert_eq!(f.gauss_norm(&rat(1, 2)), Val::Exp(int(1)));
        let g = LaurentPoly::one(3).sub(&s_pow(3, 1));
        assert_eq!(g.gauss_norm(&int(0)), Val::one());
        assert_eq!(LaurentPoly::zero(3).gauss_norm(&int(0)), Val::Zero);
    }

    #[test]
    fn derivation_examples() {
        let s3 = s_pow(2, 3);
        assert_eq!(s_pow(2, 5).derive(Gauge::SDdS), s_pow(2, 5).scale_rational(&int(5)));
        assert!(LaurentPoly::constant(sc(2, "7")).derive(Gauge::DdS).is_zero());
        assert_eq!(s3.derive(Gauge::PlSDdS(1)), s3.scale_rational(&int(6)));
        assert_eq!(s3.derive(Gauge::DdS), s_pow(2, 2).scale_rational(&int(3)));
    }

    #[test]
    fn derivation_norms() {
        assert_eq!(Gauge::SDdS.derivation_norm(&int(7)), Val::one());
        assert_eq!(Gauge::DdS.derivation_norm(&int(1)), Val::Exp(int(-1)));
        assert_eq!(Gauge::PlSDdS(2).derivation_norm(&int(0)), Val::Exp(int(2)));
        assert_eq!(Gauge::pl_sds(0), Gauge::SDdS);
    }

    #[test]
    fn dominant_terms_and_truncation() {
        let f = LaurentPoly::from_terms(2, [(0, Scalar::from_int(2, 4)), (2, sc(2, "1/2"))]);
        assert_eq!(f.dominant_term(&int(0)), Some((2, sc(2, "1/2"))));
        let g = LaurentPoly::one(2).sub(&s_pow(2, 1));
        assert_eq!(g.dominant_term(&int(0)), None);
        let t = f.truncate(&int(0), &int(1));
        assert_eq!(t, LaurentPoly::monomial(sc(2, "1/2"), 2));
    }

    #[test]
    fn inflate_and_deflate() {
        let f = LaurentPoly::from_terms(2, [(-1, Scalar::one(2)), (3, sc(2, "5"))]);
        let g = f.inflate(4);
        assert_eq!(g.deflate(4).unwrap(), f);
        assert!(f.deflate(2).is_none());
    }
}
