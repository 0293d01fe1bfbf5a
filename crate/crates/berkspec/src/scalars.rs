//! Exact arithmetic in the totally ramified field `K_m = Q(p^(1/m))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{frac_p, int, padic_round, parse_rational, pow_p, rat, vp};
use crate::error::{Error, Result};
use crate::valuation::Val;

/// An element `sum_j c_j * pi^j` of `K_m`, where `pi = p^(1/m)` and `m` is the
/// number of stored coefficients.
///
/// The ramification index is always reduced to the smallest `m` that can hold
/// the element, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    p: u64,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn new(p: u64, coeffs: Vec<BigRational>) -> Scalar {
        assert!(!coeffs.is_empty(), "a scalar needs at least one coefficient");
        let mut s = Scalar { p, coeffs };
        s.normalize();
        s
    }

    pub fn zero(p: u64) -> Scalar {
        Scalar { p, coeffs: vec![BigRational::zero()] }
    }

    pub fn one(p: u64) -> Scalar {
        Scalar::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u64, q: BigRational) -> Scalar {
        Scalar { p, coeffs: vec![q] }
    }

    pub fn from_int(p: u64, n: i64) -> Scalar {
        Scalar::from_rational(p, int(n))
    }

    /// The element `u * p^e` for a rational exponent `e`.
    pub fn monomial(p: u64, u: BigRational, e: &BigRational) -> Scalar {
        let m = e.denom().clone();
        let m_usize = m.to_usize().expect("ramification index fits usize");
        let k = e.floor();
        let j = ((e - &k) * BigRational::from_integer(m)).to_integer();
        let j = j.to_usize().expect("index fits usize");
        let k = k.to_integer().to_i64().expect("exponent fits i64");
        let mut coeffs = vec![BigRational::zero(); m_usize];
        coeffs[j] = u * pow_p(p, k);
        Scalar::new(p, coeffs)
    }

    /// The element `p^e`.
    pub fn p_power(p: u64, e: &BigRational) -> Scalar {
        Scalar::monomial(p, BigRational::one(), e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Ramification index `m` of the stored representation.
    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.m() == 1 && self.coeffs[0].is_one()
    }

    /// Whether the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.m() == 1
    }

    /// The rational coordinate `c_0`.
    pub fn rational_part(&self) -> &BigRational {
        &self.coeffs[0]
    }

    fn normalize(&mut self) {
        let m = self.coeffs.len();
        let g = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(m, |g, (j, _)| g.gcd(&j));
        if g == m && self.coeffs[0].is_zero() {
            self.coeffs = vec![BigRational::zero()];
            return;
        }
        if g > 1 {
            self.coeffs = self.coeffs.iter().step_by(g).cloned().collect();
        }
    }

    /// Coefficients re-indexed to ramification index `m` (a multiple of `self.m()`).
    fn promoted(&self, m: usize) -> Vec<BigRational> {
        let step = m / self.m();
        debug_assert_eq!(step * self.m(), m);
        let mut out = vec![BigRational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j * step] = c.clone();
        }
        out
    }

    fn check_prime(&self, other: &Scalar) {
        assert_eq!(self.p, other.p, "scalars over different primes");
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_prime(other);
        let m = self.m().lcm(&other.m());
        let a = self.promoted(m);
        let b = other.promoted(m);
        Scalar::new(self.p, a.iter().zip(&b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self) -> Scalar {
        Scalar { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_prime(other);
        let m = self.m().lcm(&other.m());
        let a = self.promoted(m);
        let b = other.promoted(m);
        let pq = int(self.p as i64);
        let mut out = vec![BigRational::zero(); m];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let prod = x * y;
                if i + j < m {
                    out[i + j] += prod;
                } else {
                    out[i + j - m] += prod * &pq;
                }
            }
        }
        Scalar::new(self.p, out)
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        Scalar::new(self.p, self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse, found by solving `a * x = 1` over the basis `pi^j`.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::InversionOfZero);
        }
        let m = self.m();
        if m == 1 {
            return Ok(Scalar::from_rational(self.p, self.coeffs[0].recip()));
        }
        // Column j holds the coordinates of a * pi^j.
        let pq = int(self.p as i64);
        let mut mat = vec![vec![BigRational::zero(); m + 1]; m];
        for j in 0..m {
            for (i, c) in self.coeffs.iter().enumerate() {
                if i + j < m {
                    mat[i + j][j] = c.clone();
                } else {
                    mat[i + j - m][j] = c * &pq;
                }
            }
        }
        mat[0][m] = BigRational::one();
        let x = solve(mat).ok_or(Error::InversionOfZero)?;
        Ok(Scalar::new(self.p, x))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Exact valuation: `min_j v_p(c_j) + j/m`.
    pub fn val(&self) -> Val {
        let m = self.m() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, c)| vp(c, self.p).map(|v| int(v) + rat(j as i64, m)))
            .min()
            .map_or(Val::Zero, Val::Exp)
    }

    /// The ramified part `sum_{j >= 1} c_j pi^j`.
    pub fn ramified_part(&self) -> Scalar {
        let mut c = self.coeffs.clone();
        c[0] = BigRational::zero();
        Scalar::new(self.p, c)
    }

    /// Distance from the element to `Z_p`.
    pub fn delta(&self) -> Val {
        let c0 = &self.coeffs[0];
        let d0 = match vp(c0, self.p) {
            Some(v) if v < 0 => Val::Exp(int(v)),
            _ => Val::Zero,
        };
        d0.add_ultra(&self.ramified_part().val())
    }

    /// Canonical representative of the class modulo `Z_p`: the rational
    /// coordinate is replaced by its p-adic fractional part.
    pub fn mod_zp(&self) -> Scalar {
        let mut c = self.coeffs.clone();
        c[0] = frac_p(&c[0], self.p);
        Scalar::new(self.p, c)
    }

    /// Canonical representative of the disk of radius `p^(-rho)` around the
    /// element: every term of valuation at least `rho` is dropped.
    pub fn truncate(&self, rho: &BigRational) -> Scalar {
        let m = self.m() as i64;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let k = (rho - rat(j as i64, m)).ceil().to_integer();
                let k = k.to_i64().expect("precision fits i64");
                padic_round(c, self.p, k)
            })
            .collect();
        Scalar::new(self.p, c)
    }

    /// Parses a plain rational `"a/b"` or a single term `"u*p^(a/b)"`.
    pub fn parse_str(p: u64, s: &str) -> Result<Scalar> {
        let t = s.trim();
        match t.split_once("*p^(") {
            Some((u, rest)) => {
                let e = rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("invalid scalar '{s}'")))?;
                Ok(Scalar::monomial(p, parse_rational(u)?, &parse_rational(e)?))
            }
            None => Ok(Scalar::from_rational(p, parse_rational(t)?)),
        }
    }

    /// Short string form when one exists: a plain rational, or `u*p^(e)` for a
    /// single ramified term.
    pub fn render_short(&self) -> Option<String> {
        if self.m() == 1 {
            return Some(self.coeffs[0].to_string());
        }
        let nonzero: Vec<_> = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        match nonzero.as_slice() {
            [(j, c)] => Some(format!("{}*p^({})", c, rat(*j as i64, self.m() as i64))),
            _ => None,
        }
    }
}

/// Gaussian elimination on an augmented `m x (m+1)` matrix.
fn solve(mut a: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let m = a.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[m].clone()).collect())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render_short() {
            Some(s) => f.write_str(&s),
            None => {
                let terms: Vec<String> = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| format!("{}*p^({})", c, rat(j as i64, self.m() as i64)))
                    .collect();
                f.write_str(&terms.join(" + "))
            }
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(p: u64, s: &str) -> Scalar {
        Scalar::parse_str(p, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = sq(2, "1*p^(1/2)");
        assert_eq!(r.add(&r).coeffs(), &[int(0), int(2)]);
        assert_eq!(r.mul(&r), Scalar::from_int(2, 2));
        let s3 = sq(3, "1*p^(1/2)");
        let inv = s3.inv().unwrap();
        assert_eq!(inv.coeffs(), &[int(0), rat(1, 3)]);
        // Direct expansion: (pi / 3) * pi = pi^2 / 3 = 3 / 3 = 1.
        assert_eq!(inv.mul(&s3), Scalar::one(3));
    }

    #[test]
    fn inverse_of_general_element() {
        let a = Scalar::new(3, vec![rat(2, 5), int(1), rat(-7, 2), int(4)]);
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), Scalar::one(3));
        assert_eq!(Scalar::zero(3).inv(), Err(Error::InversionOfZero));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(Scalar::from_rational(5, rat(1, 5)).val(), Val::Exp(int(-1)));
        let a = sq(2, "1*p^(1/2)").add(&Scalar::from_int(2, 2));
        assert_eq!(a.val(), Val::Exp(rat(1, 2)));
        assert_eq!(Scalar::from_int(2, 6).val(), Val::Exp(int(1)));
        assert_eq!(Scalar::zero(2).val(), Val::Zero);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(Scalar::from_int(5, 7).delta(), Val::Zero);
        assert_eq!(Scalar::from_rational(5, rat(1, 5)).delta(), Val::Exp(int(-1)));
        assert_eq!(sq(2, "1*p^(1/2)").delta(), Val::Exp(rat(1, 2)));
        assert_eq!(Scalar::from_rational(2, rat(1, 3)).delta(), Val::Zero);
    }

    #[test]
    fn normalization_reduces_ramification() {
        let a = Scalar::new(2, vec![int(1), int(0), int(3), int(0)]);
        assert_eq!(a.m(), 2);
        assert_eq!(a, Scalar::new(2, vec![int(1), int(3)]));
        assert_eq!(Scalar::new(2, vec![int(0), int(0)]), Scalar::zero(2));
    }

    #[test]
    fn monomial_parsing() {
        let a = sq(2, "3*p^(5/2)");
        assert_eq!(a.coeffs(), &[int(0), int(12)]);
        assert_eq!(a.val(), Val::Exp(rat(5, 2)));
        assert_eq!(sq(2, "1/16").val(), Val::Exp(int(-4)));
        assert_eq!(sq(2, "5*p^(-3)"), Scalar::from_rational(2, rat(5, 8)));
        assert_eq!(a.render_short().unwrap(), "12*p^(1/2)");
        assert_eq!(sq(2, &a.render_short().unwrap()), a);
    }

    #[test]
    fn truncation_and_mod_zp() {
        let a = Scalar::from_rational(2, rat(13, 4));
        assert_eq!(a.mod_zp(), Scalar::from_rational(2, rat(1, 4)));
        assert_eq!(a.truncate(&int(1)), Scalar::from_rational(2, rat(5, 4)));
        let b = sq(3, "1*p^(1/2)").add(&Scalar::from_int(3, 9));
        assert_eq!(b.truncate(&int(1)), sq(3, "1*p^(1/2)"));
    }
}
