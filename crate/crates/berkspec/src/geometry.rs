//! Points of the Berkovich affine line with exact radii, and the images of
//! points under the Frobenius, tame power and logarithm maps.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::int;
use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::valuation::{omega_exp, Val};

/// The point `x_{c,r}` with `r = p^(-rho)`, or the type-1 point `c` when
/// `rho` is `None`.
///
/// Equality is equality of points: `x_{c,r} = x_{c',r'}` iff `r = r'` and
/// `|c - c'| <= r`.
#[derive(Clone, Debug)]
pub struct PointDescriptor {
    pub center: Scalar,
    pub rho: Option<BigRational>,
}

impl PointDescriptor {
    pub fn new(center: Scalar, rho: BigRational) -> PointDescriptor {
        PointDescriptor { center, rho: Some(rho) }
    }

    pub fn type1(center: Scalar) -> PointDescriptor {
        PointDescriptor { center, rho: None }
    }

    /// The point `x_{0,r}`.
    pub fn gauss(p: u64, rho: BigRational) -> PointDescriptor {
        PointDescriptor::new(Scalar::zero(p), rho)
    }

    pub fn p(&self) -> u64 {
        self.center.p()
    }

    pub fn is_type1(&self) -> bool {
        self.rho.is_none()
    }

    /// The radius `r_k(x)`.
    pub fn radius(&self) -> Val {
        match &self.rho {
            None => Val::Zero,
            Some(rho) => Val::Exp(rho.clone()),
        }
    }

    /// Whether the point is `x_{0,r}` for some `r`.
    pub fn is_centered(&self) -> bool {
        self.center.val() <= self.radius()
    }

    /// The same point with the center reduced to its canonical representative.
    pub fn canonical(&self) -> PointDescriptor {
        match &self.rho {
            None => self.clone(),
            Some(rho) => PointDescriptor::new(self.center.truncate(rho), rho.clone()),
        }
    }

    pub fn translate(&self, a: &Scalar) -> PointDescriptor {
        PointDescriptor { center: self.center.add(a), rho: self.rho.clone() }
    }
}

impl PartialEq for PointDescriptor {
    fn eq(&self, other: &PointDescriptor) -> bool {
        self.rho == other.rho && self.center.sub(&other.center).val() <= self.radius()
    }
}

impl Eq for PointDescriptor {}

impl Hash for PointDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        c.center.hash(state);
        c.rho.hash(state);
    }
}

impl fmt::Display for PointDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rho {
            None => write!(f, "{}", self.center),
            Some(rho) => write!(f, "x({}, {})", self.center, Val::Exp(rho.clone())),
        }
    }
}

/// Image of a point under a finite map, with the degree `[H(y) : H(x)]` of the
/// residue field extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapImage {
    pub point: PointDescriptor,
    pub degree: u64,
}

/// Image under `T -> T^p`: `x_{a^p, max(|p| |a|^(p-1) r, r^p)}`, of degree `p`
/// when `r >= omega |a|`.
pub fn frobenius_image(x: &PointDescriptor) -> MapImage {
    let p = x.p();
    let a = &x.center;
    let center = a.pow(p as u32);
    let Some(rho) = &x.rho else {
        return MapImage { point: PointDescriptor::type1(center), degree: 1 };
    };
    let pi = int(p as i64);
    let power_branch = &pi * rho;
    let (new_rho, degree) = match a.val() {
        Val::Zero => (power_branch, p),
        Val::Exp(va) => {
            let linear_branch = int(1) + (&pi - int(1)) * &va + rho;
            let degree = if *rho <= omega_exp(p) + &va { p } else { 1 };
            (std::cmp::min(linear_branch, power_branch), degree)
        }
    };
    MapImage { point: PointDescriptor::new(center, new_rho), degree }
}

/// Image under `T -> T^n` for `n` prime to `p`: `x_{a^n, max(|a|^(n-1) r, r^n)}`,
/// of degree `n` when `r >= |a|`.
pub fn tame_power_image(x: &PointDescriptor, n: u64) -> Result<MapImage> {
    let p = x.p();
    if n == 0 || n.gcd(&p) != 1 {
        return Err(Error::NotCoprime(n));
    }
    let a = &x.center;
    let center = a.pow(n as u32);
    let Some(rho) = &x.rho else {
        return Ok(MapImage { point: PointDescriptor::type1(center), degree: 1 });
    };
    let ni = int(n as i64);
    let power_branch = &ni * rho;
    let (new_rho, degree) = match a.val() {
        Val::Zero => (power_branch, n),
        Val::Exp(va) => {
            let linear_branch = (&ni - int(1)) * &va + rho;
            let degree = if *rho <= va { n } else { 1 };
            (std::cmp::min(linear_branch, power_branch), degree)
        }
    };
    Ok(MapImage { point: PointDescriptor::new(center, new_rho), degree })
}

/// Exponent of `phi(r)` for the logarithm on `D(a, |a|)^-`, where
/// `r = |a| p^(-rho_rel)`: `min_{j >= 0} (p^j rho_rel - j)`.
pub fn log_radius(p: u64, rho_rel: &BigRational) -> Result<BigRational> {
    if !rho_rel.is_positive() {
        return Err(Error::NonPositiveRelativeRadius);
    }
    let pi = int(p as i64);
    let mut pj = BigRational::one();
    let mut j = 0i64;
    // The differences p^j (p-1) rho_rel - 1 increase with j, so the first
    // non-negative one marks the minimum.
    while &pj * (&pi - int(1)) * rho_rel < int(1) {
        pj *= &pi;
        j += 1;
    }
    Ok(pj * rho_rel - int(j))
}

/// The exponent `n` with `[H(y) : H(Log(y))] = p^n`: `n = 0` when
/// `rho_rel > 1/(p-1)`, and otherwise `1/((p-1)p^n) < rho_rel <= 1/((p-1)p^(n-1))`.
pub fn log_degree_exponent(p: u64, rho_rel: &BigRational) -> Result<u32> {
    if !rho_rel.is_positive() {
        return Err(Error::NonPositiveRelativeRadius);
    }
    let pi = int(p as i64);
    let mut bound = omega_exp(p);
    let mut n = 0u32;
    while rho_rel <= &bound {
        bound /= &pi;
        n += 1;
    }
    Ok(n)
}

/// The degree `p^n` of [`log_degree_exponent`].
pub fn log_degree(p: u64, rho_rel: &BigRational) -> Result<BigInt> {
    let n = log_degree_exponent(p, rho_rel)?;
    Ok(num_traits::pow(BigInt::from(p), n as usize))
}

/// Distance from `T(z)` to `Z`: `max(r, delta(center))`.
pub fn delta_point(z: &PointDescriptor) -> Val {
    std::cmp::max(z.radius(), z.center.delta())
}

/// `l` applications of [`frobenius_image`] to `x_{0,r}` give `x_{0,r^(p^l)}`.
pub fn frobenius_gauss_rho(p: u64, rho: &BigRational, l: u32) -> BigRational {
    rho * num_traits::pow(int(p as i64), l as usize)
}

/// Relative exponent `rho - v(c)` of an off-center point inside `D(c, |c|)^-`.
pub fn relative_rho(x: &PointDescriptor) -> Result<BigRational> {
    let rho = x.rho.as_ref().ok_or_else(|| Error::UnsupportedPoint("type-1 point".into()))?;
    match x.center.val() {
        Val::Zero => Err(Error::UnsupportedPoint("point is centered at 0".into())),
        Val::Exp(vc) => {
            let rel = rho - vc;
            if rel.is_positive() {
                Ok(rel)
            } else {
                Err(Error::UnsupportedPoint(format!("{x} is of the form x_(0,r)")))
            }
        }
    }
}
