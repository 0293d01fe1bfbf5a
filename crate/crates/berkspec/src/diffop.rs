//! Differential polynomials `sum_i g_i D^i` over Laurent coefficients, where
//! `D` is one of the gauges and `D f = f D + D(f)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial, int, pow_p, vp_i64_capped};
use crate::error::{Error, Result};
use crate::laurent::{Gauge, LaurentPoly};
use crate::newton::NewtonPolygon;
use crate::scalars::Scalar;
use crate::valuation::Val;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffOp {
    p: u64,
    gauge: Gauge,
    coeffs: Vec<LaurentPoly>,
}

impl DiffOp {
    /// Builds `sum_i coeffs[i] D^i`, dropping vanishing top coefficients.
    pub fn new(p: u64, gauge: Gauge, mut coeffs: Vec<LaurentPoly>) -> DiffOp {
        while coeffs.len() > 1 && coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(LaurentPoly::zero(p));
        }
        let gauge = match gauge {
            Gauge::PlSDdS(0) => Gauge::SDdS,
            g => g,
        };
        DiffOp { p, gauge, coeffs }
    }

    /// Monic operator from its lower coefficients: `D^n + sum_{i<n} lower[i] D^i`.
    pub fn monic(p: u64, gauge: Gauge, lower: Vec<LaurentPoly>) -> DiffOp {
        let mut coeffs = lower;
        coeffs.push(LaurentPoly::one(p));
        DiffOp::new(p, gauge, coeffs)
    }

    pub fn one(p: u64, gauge: Gauge) -> DiffOp {
        DiffOp::new(p, gauge, vec![LaurentPoly::one(p)])
    }

    /// The operator `D`.
    pub fn d(p: u64, gauge: Gauge) -> DiffOp {
        DiffOp::monic(p, gauge, vec![LaurentPoly::zero(p)])
    }

    /// The order-zero operator given by a function.
    pub fn function(gauge: Gauge, f: LaurentPoly) -> DiffOp {
        DiffOp::new(f.p(), gauge, vec![f])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(LaurentPoly::is_one)
    }

    pub fn require_monic(&self) -> Result<()> {
        if self.is_monic() {
            Ok(())
        } else {
            Err(Error::NotMonic(format!("leading coefficient is {}", self.coeffs[self.degree()])))
        }
    }

    /// Whether every coefficient is a constant.
    pub fn has_constant_coeffs(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_constant)
    }

    fn check_gauge(&self, other: &DiffOp) -> Result<()> {
        if self.gauge == other.gauge {
            Ok(())
        } else {
            Err(Error::GaugeMismatch)
        }
    }

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_gauge(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = LaurentPoly::zero(self.p);
        let coeffs =
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero).add(other.coeffs.get(i).unwrap_or(&zero))).collect();
        Ok(DiffOp::new(self.p, self.gauge, coeffs))
    }

    pub fn sub(&self, other: &DiffOp) -> Result<DiffOp> {
        let neg = DiffOp::new(other.p, other.gauge, other.coeffs.iter().map(LaurentPoly::neg).collect());
        self.add(&neg)
    }

    /// Non-commutative product, using `D^i f = sum_k C(i,k) D^k(f) D^(i-k)`.
    pub fn mul(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_gauge(other)?;
        let n = self.degree() + other.degree() + 1;
        let mut out = vec![LaurentPoly::zero(self.p); n];
        for (j, b) in other.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            // derivs[k] = D^k(b)
            let mut derivs = vec![b.clone()];
            for _ in 0..self.degree() {
                let next = derivs.last().unwrap().derive(self.gauge);
                derivs.push(next);
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, dk) in derivs.iter().enumerate().take(i + 1) {
                    if dk.is_zero() {
                        continue;
                    }
                    let c = BigRational::from_integer(binomial(i, k));
                    out[i - k + j] = out[i - k + j].add(&a.mul(dk).scale_rational(&c));
                }
            }
        }
        Ok(DiffOp::new(self.p, self.gauge, out))
    }

    /// Commutative substitution `T -> T + a`: the operator attached to `nabla - a`.
    pub fn twist(&self, a: &Scalar) -> DiffOp {
        let n = self.degree();
        let mut out = vec![LaurentPoly::zero(self.p); n + 1];
        // powers[k] = a^k
        let mut powers = vec![Scalar::one(self.p)];
        for _ in 0..n {
            powers.push(powers.last().unwrap().mul(a));
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let factor = powers[i - j].scale(&BigRational::from_integer(binomial(i, j)));
                *slot = slot.add(&c.scale(&factor));
            }
        }
        DiffOp::new(self.p, self.gauge, out)
    }

    /// Exponents `(i, |g_i|_rho)` of the commutative coefficients.
    pub fn coeff_vals(&self, rho: &BigRational) -> Vec<(usize, Val)> {
        self.coeffs.iter().enumerate().map(|(i, c)| (i, c.gauss_norm(rho))).collect()
    }

    /// Newton polygon of the commutative polynomial `P(T)` under the Gauss
    /// norm at `rho`.
    pub fn polygon(&self, rho: &BigRational) -> Result<NewtonPolygon> {
        NewtonPolygon::new(&self.coeff_vals(rho))
    }

    /// Max Gauss norm of the coefficients.
    pub fn norm(&self, rho: &BigRational) -> Val {
        self.coeffs.iter().map(|c| c.gauss_norm(rho)).max().unwrap_or(Val::Zero)
    }

    /// Largest `l <= cap` with every Laurent exponent divisible by `p^l`.
    pub fn descent_level(&self, cap: u32) -> u32 {
        self.coeffs
            .iter()
            .flat_map(|c| c.terms().keys().copied())
            .map(|k| vp_i64_capped(k, self.p, cap))
            .min()
            .unwrap_or(cap)
    }

    /// The operator over `y = Frob^l(x)`: substitutes `S^(p^l) -> S_y` and
    /// reinterprets `S d/dS` as `p^l S_y d/dS_y`. Requires gauge `S d/dS`.
    pub fn descend(&self, l: u32) -> Option<DiffOp> {
        if self.gauge != Gauge::SDdS {
            return None;
        }
        let e = (self.p as i64).checked_pow(l)?;
        let coeffs = self.coeffs.iter().map(|c| c.deflate(e)).collect::<Option<Vec<_>>>()?;
        Some(DiffOp::new(self.p, Gauge::pl_sds(l), coeffs))
    }

    /// Inverse of [`DiffOp::descend`].
    pub fn lift(&self) -> Option<DiffOp> {
        let l = self.gauge.level()?;
        let e = (self.p as i64).checked_pow(l)?;
        let coeffs = self.coeffs.iter().map(|c| c.inflate(e)).collect();
        Some(DiffOp::new(self.p, Gauge::SDdS, coeffs))
    }

    /// Replaces each coefficient by its truncation at Gauss level `bound`.
    pub fn truncate(&self, rho: &BigRational, bound: &BigRational) -> DiffOp {
        DiffOp::new(self.p, self.gauge, self.coeffs.iter().map(|c| c.truncate(rho, bound)).collect())
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("[{c}]"),
                _ => format!("[{c}]*D^{i}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StirlingKind {
    First,
    Second,
}

/// Signed Stirling numbers of the first kind `s(i,j)` and Stirling numbers of
/// the second kind `S(i,j)`, by their recurrences.
pub fn stirling(kind: StirlingKind, i: usize, j: usize) -> Result<BigInt> {
    if j > i {
        return Err(Error::IndexOutOfRange(i, j));
    }
    Ok(stirling_table(kind, i)[i][j].clone())
}

/// Rows `0..=n` of the Stirling triangle of the given kind.
pub fn stirling_table(kind: StirlingKind, n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    t[0][0] = BigInt::one();
    for i in 1..=n {
        for j in 1..=i {
            let prev_same = t[i - 1][j].clone();
            let prev_diag = t[i - 1][j - 1].clone();
            t[i][j] = match kind {
                StirlingKind::First => prev_diag - BigInt::from(i - 1) * prev_same,
                StirlingKind::Second => prev_diag + BigInt::from(j) * prev_same,
            };
        }
    }
    t
}

/// Rewrites a monic `d/dS` operator `P` of degree `n` in the gauge
/// `p^l S d/dS`, returning the monic operator `p^(ln) S^n P`.
pub fn gauge_up(op: &DiffOp, l: u32) -> Result<DiffOp> {
    if op.gauge() != Gauge::DdS {
        return Err(Error::GaugeMismatch);
    }
    op.require_monic()?;
    let n = op.degree();
    let p = op.p();
    let s = stirling_table(StirlingKind::First, n);
    let li = l as i64;
    let coeffs = (0..=n)
        .map(|i| {
            let mut acc = LaurentPoly::zero(p);
            for (j, (row, g)) in s.iter().zip(op.coeffs()).enumerate().skip(i) {
                let c = BigRational::from_integer(row[i].clone());
                acc = acc.add(&g.shift((n - j) as i64).scale_rational(&c));
            }
            acc.scale_rational(&pow_p(p, (n - i) as i64 * li))
        })
        .collect();
    Ok(DiffOp::new(p, Gauge::pl_sds(l), coeffs))
}

/// Inverse of [`gauge_up`]: rewrites a monic `p^l S d/dS` operator in `d/dS`.
pub fn gauge_down(op: &DiffOp) -> Result<DiffOp> {
    let l = op.gauge().level().ok_or(Error::GaugeMismatch)? as i64;
    op.require_monic()?;
    let n = op.degree();
    let p = op.p();
    let s = stirling_table(StirlingKind::Second, n);
    let coeffs = (0..=n)
        .map(|i| {
            let mut acc = LaurentPoly::zero(p);
            for (j, (row, g)) in s.iter().zip(op.coeffs()).enumerate().skip(i) {
                let c = BigRational::from_integer(row[i].clone()) * pow_p(p, l * (j as i64 - n as i64));
                acc = acc.add(&g.scale_rational(&c));
            }
            acc.shift(i as i64 - n as i64)
        })
        .collect();
    Ok(DiffOp::new(p, Gauge::DdS, coeffs))
}

/// Splits a monic `P = Q R` where the commutative roots of `R` are exactly
/// the roots of `P` of absolute value below `threshold`, at working point
/// `rho`, with recomposition residual at most `p^(-precision) |P|`.
///
/// The iteration lifts the commutative Newton-polygon split. Writing the
/// error `E = P - Q R` as a low part (degree below `deg R`) and a high part,
/// the low part corrects `R` after division by the dominant monomial of
/// `Q(0)` and the high part corrects `Q`; both corrections shrink the error by
/// the dominance ratio of the split, since the derivation norm is below the
/// threshold.
pub fn slope_factor(op: &DiffOp, rho: &BigRational, threshold: &Val, precision: u32) -> Result<(DiffOp, DiffOp)> {
    op.require_monic()?;
    let p = op.p();
    let gauge = op.gauge();
    let dnorm = gauge.derivation_norm(rho);
    if threshold.is_zero() || dnorm >= *threshold {
        return Err(Error::DerivationNotBelowThreshold);
    }
    let tau = threshold.q().clone();
    let n = op.degree();
    let weighted: Vec<(usize, BigRational)> =
        op.coeff_vals(rho).into_iter().filter_map(|(i, v)| v.exp().map(|q| (i, q + int(i as i64) * &tau))).collect();
    let best = weighted.iter().map(|(_, w)| w.clone()).min().expect("monic operator");
    let argmins: Vec<usize> = weighted.iter().filter(|(_, w)| *w == best).map(|(i, _)| *i).collect();
    if argmins.len() != 1 {
        return Err(Error::PolygonBoundaryRoot);
    }
    let m = argmins[0];
    if m == 0 {
        return Ok((op.clone(), DiffOp::one(p, gauge)));
    }
    if m == n {
        return Ok((DiffOp::one(p, gauge), op.clone()));
    }

    let op_norm = op.norm(rho);
    let target = op_norm.q() + int(precision as i64);
    let d_loss = match dnorm.exp() {
        Some(d) if d < &BigRational::zero() => -d * int(n as i64),
        _ => BigRational::zero(),
    };

    let a = op.coeffs();
    let mut q_op = DiffOp::new(p, gauge, a[m..].to_vec());
    let u0 = dominant_inverse(&a[m], rho)?;
    let mut r_coeffs: Vec<LaurentPoly> = a[..m].iter().map(|c| c.mul(&u0)).collect();
    r_coeffs.push(LaurentPoly::one(p));
    let mut r_op = DiffOp::new(p, gauge, r_coeffs);

    let max_iter = 64 * precision.max(1) as usize;
    for _ in 0..max_iter {
        let err = op.sub(&q_op.mul(&r_op)?)?;
        if err.is_zero() || err.norm(rho) <= Val::Exp(target.clone()) {
            return Ok((q_op, r_op));
        }
        let u = dominant_inverse(&q_op.coeffs()[0], rho)?;
        let e = err.coeffs();
        let zero = LaurentPoly::zero(p);
        let y: Vec<LaurentPoly> = (0..m).map(|i| e.get(i).unwrap_or(&zero).mul(&u)).collect();
        let x: Vec<LaurentPoly> = (m..n).map(|i| e.get(i).unwrap_or(&zero).clone()).collect();
        let q_next = q_op.add(&DiffOp::new(p, gauge, x))?;
        let r_next = r_op.add(&DiffOp::new(p, gauge, y))?;
        // Digits below the residual target cannot affect the certificate once
        // the other factor's norm and the derivation loss are accounted for.
        let slack = &d_loss + int(2);
        let q_bound = &target - min_exp(r_next.norm(rho)) + &slack;
        let r_bound = &target - min_exp(q_next.norm(rho)) + &slack;
        q_op = q_next.truncate(rho, &q_bound);
        r_op = r_next.truncate(rho, &r_bound);
        restore_monic(&mut q_op);
        restore_monic(&mut r_op);
    }
    Err(Error::NoConvergence(max_iter))
}

fn min_exp(v: Val) -> BigRational {
    match v {
        Val::Exp(q) if q < BigRational::zero() => q,
        _ => BigRational::zero(),
    }
}

fn restore_monic(op: &mut DiffOp) {
    let n = op.degree();
    if !op.coeffs[n].is_one() {
        op.coeffs[n] = LaurentPoly::one(op.p);
    }
}

/// Inverse of the dominant monomial of `f` at radius `p^(-rho)`.
fn dominant_inverse(f: &LaurentPoly, rho: &BigRational) -> Result<LaurentPoly> {
    let (k, c) = f.dominant_term(rho).ok_or(Error::NoDominantMonomial)?;
    Ok(LaurentPoly::monomial(c.inv()?, -k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn cst(p: u64, n: i64) -> LaurentPoly {
        LaurentPoly::constant(Scalar::from_int(p, n))
    }

    fn s(p: u64) -> LaurentPoly {
        LaurentPoly::monomial(Scalar::one(p), 1)
    }

    #[test]
    fn leibniz_products() {
        let p = 3;
        let d = DiffOp::d(p, Gauge::DdS);
        let sf = DiffOp::function(Gauge::DdS, s(p));
        let prod = d.mul(&sf).unwrap();
        assert_eq!(prod, DiffOp::new(p, Gauge::DdS, vec![cst(p, 1), s(p)]));
        let d2 = DiffOp::d(p, Gauge::SDdS);
        let sf2 = DiffOp::function(Gauge::SDdS, s(p));
        assert_eq!(d2.mul(&sf2).unwrap(), DiffOp::new(p, Gauge::SDdS, vec![s(p), s(p)]));
        let a = DiffOp::monic(p, Gauge::DdS, vec![cst(p, -1)]);
        let b = DiffOp::monic(p, Gauge::DdS, vec![cst(p, 1)]);
        assert_eq!(a.mul(&b).unwrap(), DiffOp::monic(p, Gauge::DdS, vec![cst(p, -1), cst(p, 0)]));
        assert_eq!(a.mul(&d2), Err(Error::GaugeMismatch));
    }

    #[test]
    fn twists() {
        let p = 5;
        let a = Scalar::from_rational(p, rat(2, 3));
        let c = Scalar::from_int(p, 7);
        let op = DiffOp::monic(p, Gauge::DdS, vec![LaurentPoly::constant(c.neg())]);
        let tw = op.twist(&a);
        assert_eq!(tw, DiffOp::monic(p, Gauge::DdS, vec![LaurentPoly::constant(c.sub(&a).neg())]));
        let d2 = DiffOp::monic(p, Gauge::SDdS, vec![LaurentPoly::zero(p), LaurentPoly::zero(p)]);
        let t2 = d2.twist(&a);
        let expect =
            DiffOp::monic(p, Gauge::SDdS, vec![LaurentPoly::constant(a.mul(&a)), LaurentPoly::constant(a.add(&a))]);
        assert_eq!(t2, expect);
        assert_eq!(t2.twist(&a.neg()), d2);
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling(StirlingKind::First, 2, 1).unwrap(), BigInt::from(-1));
        assert_eq!(stirling(StirlingKind::Second, 2, 1).unwrap(), BigInt::from(1));
        assert_eq!(stirling(StirlingKind::First, 4, 2).unwrap(), BigInt::from(11));
        assert_eq!(stirling(StirlingKind::Second, 5, 3).unwrap(), BigInt::from(25));
        assert_eq!(stirling(StirlingKind::First, 1, 2), Err(Error::IndexOutOfRange(1, 2)));
    }

    #[test]
    fn gauge_change_examples() {
        let p = 2;
        let d2 = DiffOp::monic(p, Gauge::DdS, vec![LaurentPoly::zero(p), LaurentPoly::zero(p)]);
        let up = gauge_up(&d2, 0).unwrap();
        assert_eq!(up, DiffOp::monic(p, Gauge::SDdS, vec![LaurentPoly::zero(p), cst(p, -1)]));
        assert_eq!(gauge_down(&up).unwrap(), d2);
        let d1 = DiffOp::d(p, Gauge::DdS);
        assert_eq!(gauge_up(&d1, 0).unwrap(), DiffOp::d(p, Gauge::SDdS));
        assert_eq!(gauge_down(&DiffOp::d(p, Gauge::SDdS)).unwrap(), d1);
    }

    #[test]
    fn gauge_up_matches_operator_identity() {
        // p^(ln) S^n P computed as an operator product in the target gauge.
        let p = 3;
        let l = 1;
        let f = LaurentPoly::from_terms(p, [(-1, Scalar::from_int(p, 2)), (2, Scalar::from_int(p, 5))]);
        let op = DiffOp::monic(p, Gauge::DdS, vec![f.clone(), s(p)]);
        let up = gauge_up(&op, l).unwrap();
        // In gauge p S d/dS, d/dS = p^-1 S^-1 D.
        let g = Gauge::PlSDdS(l);
        let dd = DiffOp::new(
            p,
            g,
            vec![LaurentPoly::zero(p), LaurentPoly::monomial(Scalar::from_rational(p, rat(1, 3)), -1)],
        );
        let mut expect = dd.mul(&dd).unwrap();
        expect = expect.add(&DiffOp::function(g, s(p)).mul(&dd).unwrap()).unwrap();
        expect = expect.add(&DiffOp::function(g, f)).unwrap();
        let scale = DiffOp::function(g, LaurentPoly::monomial(Scalar::from_int(p, 9), 2));
        assert_eq!(scale.mul(&expect).unwrap(), up);
    }

    #[test]
    fn descent_levels_and_lifts() {
        let p = 2;
        let c = Scalar::parse_str(p, "1*p^(1/2)").unwrap();
        let op = DiffOp::monic(p, Gauge::SDdS, vec![LaurentPoly::monomial(c.neg(), 2)]);
        assert_eq!(op.descent_level(8), 1);
        let y = op.descend(1).unwrap();
        assert_eq!(y.gauge(), Gauge::PlSDdS(1));
        assert_eq!(y.coeffs()[0], LaurentPoly::monomial(c.neg(), 1));
        assert_eq!(y.lift().unwrap(), op);
        let constant = DiffOp::monic(p, Gauge::SDdS, vec![cst(p, 3)]);
        assert_eq!(constant.descent_level(8), 8);
        let with_s = DiffOp::monic(p, Gauge::SDdS, vec![s(p)]);
        assert_eq!(with_s.descent_level(8), 0);
    }

    #[test]
    fn factor_threshold_below_all_roots() {
        let p = 2;
        let c = LaurentPoly::monomial(Scalar::from_rational(p, rat(1, 16)), 2);
        let op = DiffOp::monic(p, Gauge::SDdS, vec![c.neg()]);
        let (q, r) = slope_factor(&op, &int(0), &Val::Exp(int(-1)), 10).unwrap();
        assert_eq!(q, op);
        assert_eq!(r, DiffOp::one(p, Gauge::SDdS));
    }

    #[test]
    fn factor_with_exact_split() {
        // P = (D^2 - c S^2) D: the split at |z| = 2 is exact at the first step.
        let p = 2;
        let c = LaurentPoly::monomial(Scalar::from_rational(p, rat(1, 16)), 2);
        let big = DiffOp::monic(p, Gauge::SDdS, vec![c.neg(), LaurentPoly::zero(p)]);
        let small = DiffOp::d(p, Gauge::SDdS);
        let op = big.mul(&small).unwrap();
        let (q, r) = slope_factor(&op, &int(0), &Val::Exp(int(-1)), 20).unwrap();
        assert_eq!(q, big);
        assert_eq!(r, small);
    }

    #[test]
    fn factor_converges_on_products() {
        let p = 2;
        let rho = int(0);
        let big = LaurentPoly::monomial(Scalar::from_rational(p, rat(1, 8)), 1);
        let small = LaurentPoly::monomial(Scalar::from_int(p, 2), -1);
        let fa = DiffOp::monic(p, Gauge::SDdS, vec![big.neg()]);
        let fb = DiffOp::monic(p, Gauge::SDdS, vec![small.neg()]);
        for op in [fa.mul(&fb).unwrap(), fb.mul(&fa).unwrap()] {
            let (q, r) = slope_factor(&op, &rho, &Val::Exp(int(-1)), 20).unwrap();
            let res = op.sub(&q.mul(&r).unwrap()).unwrap();
            assert!(res.is_zero() || res.norm(&rho) <= Val::Exp(op.norm(&rho).q() + int(20)));
            let split = op.polygon(&rho).unwrap().slope_split(&Val::Exp(int(-1))).unwrap();
            assert_eq!(r.polygon(&rho).unwrap().root_abs(), split.lower_roots());
            assert_eq!(q.polygon(&rho).unwrap().root_abs(), split.upper_roots());
        }
    }

    #[test]
    fn factor_rejects_boundary_and_large_derivation() {
        let p = 2;
        let op = DiffOp::monic(p, Gauge::SDdS, vec![LaurentPoly::monomial(Scalar::from_int(p, 1), 1)]);
        assert_eq!(slope_factor(&op, &int(0), &Val::one(), 10), Err(Error::DerivationNotBelowThreshold));
        let op2 = DiffOp::monic(p, Gauge::SDdS, vec![LaurentPoly::constant(Scalar::from_rational(p, rat(1, 4)))]);
        assert_eq!(slope_factor(&op2, &int(0), &Val::Exp(int(-2)), 10), Err(Error::PolygonBoundaryRoot));
    }
}
