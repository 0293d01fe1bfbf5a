//! Subsidiary radii of convergence of cyclic differential modules at
//! `x_{0,r}`: polygon formulas, gauge rescaling, Frobenius push-forward and
//! the rank-one closed form.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{int, rat};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::laurent::Gauge;
use crate::scalars::Scalar;
use crate::valuation::{omega_exp, Val};

/// The normalization a radius is expressed in: the natural `d/dS` scale, or
/// the scale attached to the derivation `p^l S d/dS`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RadiiScale {
    DdS,
    PlSDdS(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RadiusFlag {
    /// Strictly below `omega r` (in `d/dS` scale): certified by the polygon.
    Small,
    /// Exactly `omega r`: the polygon only bounds the radius here.
    Boundary,
    /// Strictly between `omega r` and `r`.
    Intermediate,
    /// Equal to `r`.
    Solvable,
}

impl RadiusFlag {
    pub fn name(&self) -> &'static str {
        match self {
            RadiusFlag::Small => "small",
            RadiusFlag::Boundary => "boundary",
            RadiusFlag::Intermediate => "intermediate",
            RadiusFlag::Solvable => "solvable",
        }
    }

    pub fn parse(s: &str) -> Result<RadiusFlag> {
        match s {
            "small" => Ok(RadiusFlag::Small),
            "boundary" => Ok(RadiusFlag::Boundary),
            "intermediate" => Ok(RadiusFlag::Intermediate),
            "solvable" => Ok(RadiusFlag::Solvable),
            _ => Err(Error::Parse(format!("unknown radius flag '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radius {
    pub value: Val,
    pub flag: RadiusFlag,
}

/// Multiset of subsidiary radii at the point `x_{0,r}`, `r = p^(-rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiiReport {
    pub p: u64,
    pub rho: BigRational,
    pub scale: RadiiScale,
    /// Non-decreasing.
    pub radii: Vec<Radius>,
    /// Set when a Frobenius push met a radius exactly at `omega r`.
    pub boundary_ambiguity: bool,
}

impl RadiiReport {
    /// Builds a report, sorting the radii and computing their flags.
    pub fn new(p: u64, rho: BigRational, scale: RadiiScale, values: Vec<Val>) -> RadiiReport {
        let mut values = values;
        values.sort();
        let radii = values
            .into_iter()
            .map(|v| {
                let flag = classify(p, &rho, scale, &v);
                Radius { value: v, flag }
            })
            .collect();
        RadiiReport { p, rho, scale, radii, boundary_ambiguity: false }
    }

    pub fn values(&self) -> Vec<Val> {
        self.radii.iter().map(|r| r.value.clone()).collect()
    }

    /// The smallest radius `R_1`.
    pub fn first(&self) -> Option<&Val> {
        self.radii.first().map(|r| &r.value)
    }
}

/// Exponent shift from the `p^l S d/dS` scale to the `d/dS` scale.
fn shift_to_dds(rho: &BigRational, l: u32) -> BigRational {
    int(l as i64) + rho
}

fn classify(p: u64, rho: &BigRational, scale: RadiiScale, v: &Val) -> RadiusFlag {
    let q = match v.exp() {
        Some(q) => match scale {
            RadiiScale::DdS => q.clone(),
            RadiiScale::PlSDdS(l) => q + shift_to_dds(rho, l),
        },
        None => return RadiusFlag::Small,
    };
    let boundary = omega_exp(p) + rho;
    if q > boundary {
        RadiusFlag::Small
    } else if q == boundary {
        RadiusFlag::Boundary
    } else if &q == rho {
        RadiusFlag::Solvable
    } else {
        RadiusFlag::Intermediate
    }
}

/// Radii `omega / max(|D|, |lambda_i|)` from the Newton polygon of the
/// commutative `P(T)`, expressed in the operator's own gauge scale.
pub fn radii_young_native(op: &DiffOp, rho: &BigRational) -> Result<RadiiReport> {
    op.require_monic()?;
    let p = op.p();
    let dnorm = op.gauge().derivation_norm(rho);
    let w = omega_exp(p);
    let values =
        op.polygon(rho)?.root_abs().into_iter().map(|lam| Val::Exp(&w - std::cmp::max(&dnorm, &lam).q())).collect();
    let scale = match op.gauge() {
        Gauge::DdS => RadiiScale::DdS,
        g => RadiiScale::PlSDdS(g.level().expect("gauge with a level")),
    };
    Ok(RadiiReport::new(p, rho.clone(), scale, values))
}

/// Subsidiary radii of the module attached to `op`, in the `d/dS` scale.
pub fn radii_young(op: &DiffOp, rho: &BigRational) -> Result<RadiiReport> {
    let native = radii_young_native(op, rho)?;
    match native.scale {
        RadiiScale::DdS => Ok(native),
        RadiiScale::PlSDdS(l) => radii_gauge_rescale(&native, l, RescaleDirection::ToDdS),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RescaleDirection {
    /// From the `p^l S d/dS` scale to the `d/dS` scale.
    ToDdS,
    /// From the `d/dS` scale to the `p^l S d/dS` scale.
    FromDdS,
}

/// `R^{d/dS} = |p|^l r R^{p^l S d/dS}`.
pub fn radii_gauge_rescale(report: &RadiiReport, l: u32, direction: RescaleDirection) -> Result<RadiiReport> {
    let shift = shift_to_dds(&report.rho, l);
    let (expected, target, sign) = match direction {
        RescaleDirection::ToDdS => (RadiiScale::PlSDdS(l), RadiiScale::DdS, 1),
        RescaleDirection::FromDdS => (RadiiScale::DdS, RadiiScale::PlSDdS(l), -1),
    };
    if report.scale != expected {
        return Err(Error::ScaleMismatch);
    }
    let values = report.radii.iter().map(|r| Val::Exp(r.value.q() + &shift * int(sign))).collect();
    let mut out = RadiiReport::new(report.p, report.rho.clone(), target, values);
    out.boundary_ambiguity = report.boundary_ambiguity;
    Ok(out)
}

/// Pushes one radius exponent `q` at `rho` forward along `S -> S^p`.
fn push_one(p: u64, rho: &BigRational, q: &BigRational) -> Vec<BigRational> {
    let pi = int(p as i64);
    let boundary = omega_exp(p) + rho;
    if q < &boundary {
        let mut out = vec![&pi * q];
        let other = rat(p as i64, p as i64 - 1) + &pi * rho;
        out.extend(std::iter::repeat_n(other, p as usize - 1));
        out
    } else {
        let v = int(1) + (&pi - int(1)) * rho + q;
        vec![v; p as usize]
    }
}

/// Radii of the push-forward along the Frobenius `S -> S^p`, at `x_{0,r^p}`.
pub fn radii_frobenius_push(report: &RadiiReport) -> Result<RadiiReport> {
    if report.scale != RadiiScale::DdS {
        return Err(Error::ScaleMismatch);
    }
    let p = report.p;
    let boundary = omega_exp(p) + &report.rho;
    let mut ambiguous = report.boundary_ambiguity;
    let mut values = Vec::new();
    for r in &report.radii {
        let q = r.value.q();
        if *q == boundary {
            ambiguous = true;
        }
        values.extend(push_one(p, &report.rho, q).into_iter().map(Val::Exp));
    }
    let mut out = RadiiReport::new(p, &report.rho * int(p as i64), RadiiScale::DdS, values);
    out.boundary_ambiguity = ambiguous;
    Ok(out)
}

/// Closed form for `l` successive pushes of a pure report whose radius lies
/// in `[omega^(1/p^(l-1)) r, omega^(1/p^l) r]`.
pub fn radii_frobenius_push_iter(report: &RadiiReport, l: u32) -> Result<RadiiReport> {
    if report.scale != RadiiScale::DdS {
        return Err(Error::ScaleMismatch);
    }
    if l == 0 {
        return Err(Error::PurityViolated("the number of pushes must be positive".into()));
    }
    let p = report.p;
    let n = report.radii.len();
    let Some(first) = report.first() else {
        return Err(Error::PurityViolated("empty report".into()));
    };
    if report.radii.iter().any(|r| &r.value != first) {
        return Err(Error::PurityViolated("radii are not all equal".into()));
    }
    let q = first.q();
    let rho = &report.rho;
    let pl = num_traits::pow(int(p as i64), l as usize);
    let w = omega_exp(p);
    let lo = &w / &pl + rho;
    let hi = &w * int(p as i64) / &pl + rho;
    if q < &lo || q > &hi {
        return Err(Error::PurityViolated(format!("radius p^(-{q}) outside the bracket for {l} pushes")));
    }
    let new_rho = rho * &pl;
    let mut values = Vec::new();
    for i in 2..=l {
        let count = n * (p as usize - 1) * (p as usize).pow(i - 1);
        let v = int(i as i64) + &w + &new_rho;
        values.extend(std::iter::repeat_n(Val::Exp(v), count));
    }
    values.extend(std::iter::repeat_n(Val::Exp(int(1) + &w + &new_rho), n * (p as usize - 1)));
    values.extend(std::iter::repeat_n(Val::Exp(q * &pl), n));
    Ok(RadiiReport::new(p, new_rho, RadiiScale::DdS, values))
}

/// Level `l` and radius attached to a distance `delta` from `Z_p` at `x_{0,r}`:
/// `r` when `delta = 0`, `omega r / delta` when `delta > 1`, and otherwise
/// `(|p|^l omega r^(p^l) / delta)^(1/p^l)` with `|p|^l < delta <= |p|^(l-1)`.
pub fn radius_from_delta(p: u64, delta: &Val, rho: &BigRational) -> (u32, Val) {
    let w = omega_exp(p);
    match delta.exp() {
        None => (0, Val::Exp(rho.clone())),
        Some(d) if d < &BigRational::zero() => (0, Val::Exp(w + rho - d)),
        Some(d) => {
            let l = (d.floor().to_integer() + 1u32).to_u32().expect("level fits u32");
            let pl = num_traits::pow(int(p as i64), l as usize);
            let e = (int(l as i64) + w + &pl * rho - d) / &pl;
            (l, Val::Exp(e))
        }
    }
}

/// Radius of the rank-one module `S d/dS - a` at `x_{0,r}`.
pub fn rank_one_radius(a: &Scalar, rho: &BigRational) -> Val {
    radius_from_delta(a.p(), &a.delta(), rho).1
}

/// Either the exact spectral norm, or only the bound `<= |D|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralNorm {
    Exact(Val),
    AtMost(Val),
}

/// `max(|D|, |nabla|_sp) = omega / R_1`, with `R_1` taken in the gauge's scale.
pub fn spectral_norm_from_radius(report: &RadiiReport, gauge: Gauge) -> Result<SpectralNorm> {
    let r1 = report.first().ok_or_else(|| Error::PurityViolated("empty report".into()))?;
    let q_dds = match report.scale {
        RadiiScale::DdS => r1.q().clone(),
        RadiiScale::PlSDdS(l) => r1.q() + shift_to_dds(&report.rho, l),
    };
    let q_gauge = match gauge {
        Gauge::DdS => q_dds,
        g => q_dds - shift_to_dds(&report.rho, g.level().expect("gauge with a level")),
    };
    let norm = Val::Exp(omega_exp(report.p) - q_gauge);
    let dnorm = gauge.derivation_norm(&report.rho);
    if norm > dnorm {
        Ok(SpectralNorm::Exact(norm))
    } else {
        Ok(SpectralNorm::AtMost(dnorm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn ve(n: i64, d: i64) -> Val {
        Val::Exp(rat(n, d))
    }

    #[test]
    fn young_examples() {
        let p = 2;
        let c = LaurentPoly::constant(Scalar::from_rational(p, rat(1, 4)));
        let op = DiffOp::monic(p, Gauge::DdS, vec![c.neg()]);
        let rep = radii_young(&op, &int(0)).unwrap();
        // omega / p^2
        assert_eq!(rep.values(), vec![ve(3, 1)]);
        assert_eq!(rep.radii[0].flag, RadiusFlag::Small);

        let d = DiffOp::d(p, Gauge::DdS);
        let rep = radii_young(&d, &int(3)).unwrap();
        assert_eq!(rep.values(), vec![ve(4, 1)]);
        assert_eq!(rep.radii[0].flag, RadiusFlag::Boundary);

        let two = LaurentPoly::constant(Scalar::from_int(p, 2));
        let op = DiffOp::monic(p, Gauge::DdS, vec![two.neg(), LaurentPoly::zero(p)]);
        let rep = radii_young(&op, &int(0)).unwrap();
        assert_eq!(rep.values(), vec![ve(1, 1), ve(1, 1)]);
    }

    #[test]
    fn rescale_examples() {
        let p = 2;
        let rep = RadiiReport::new(p, int(0), RadiiScale::PlSDdS(0), vec![ve(3, 1)]);
        let dds = radii_gauge_rescale(&rep, 0, RescaleDirection::ToDdS).unwrap();
        assert_eq!(dds.values(), vec![ve(3, 1)]);
        let l = 2;
        let rho = rat(1, 3);
        let boundary = RadiiReport::new(p, rho.clone(), RadiiScale::PlSDdS(l), vec![ve(1 - 2, 1)]);
        assert_eq!(boundary.radii[0].flag, RadiusFlag::Boundary);
        let dds = radii_gauge_rescale(&boundary, l, RescaleDirection::ToDdS).unwrap();
        assert_eq!(dds.values(), vec![Val::Exp(int(1) + &rho)]);
        assert_eq!(dds.radii[0].flag, RadiusFlag::Boundary);
        let back = radii_gauge_rescale(&dds, l, RescaleDirection::FromDdS).unwrap();
        assert_eq!(back, boundary);
        assert_eq!(radii_gauge_rescale(&dds, l, RescaleDirection::ToDdS), Err(Error::ScaleMismatch));
    }

    #[test]
    fn push_examples() {
        let p = 3;
        let rho = int(1);
        let w = omega_exp(p);
        // R = omega r: p copies of |p| omega r^p
        let rep = RadiiReport::new(p, rho.clone(), RadiiScale::DdS, vec![Val::Exp(&w + &rho)]);
        let out = radii_frobenius_push(&rep).unwrap();
        assert!(out.boundary_ambiguity);
        assert_eq!(out.values(), vec![Val::Exp(int(1) + &w + int(3)); 3]);
        // R = r lies above omega r: {r^p, omega^p r^p x (p-1)}
        let rep = RadiiReport::new(p, rho.clone(), RadiiScale::DdS, vec![Val::Exp(rho.clone())]);
        let out = radii_frobenius_push(&rep).unwrap();
        assert_eq!(out.values(), vec![Val::Exp(rat(9, 2)), Val::Exp(rat(9, 2)), Val::Exp(int(3))]);
        assert_eq!(out.radii[2].flag, RadiusFlag::Solvable);
        // omega r < R: {R^p, omega^p r^p x (p-1)}
        let q = &rho + rat(1, 4);
        let rep = RadiiReport::new(p, rho.clone(), RadiiScale::DdS, vec![Val::Exp(q.clone())]);
        let out = radii_frobenius_push(&rep).unwrap();
        let mut expect = vec![Val::Exp(&q * int(3)), Val::Exp(rat(3, 2) + int(3)), Val::Exp(rat(3, 2) + int(3))];
        expect.sort();
        assert_eq!(out.values(), expect);
        assert!(!out.boundary_ambiguity);
    }

    #[test]
    fn closed_form_examples() {
        let p = 2;
        let rho = int(0);
        // l = 1, n = 1, R in (omega r, r]
        let rep = RadiiReport::new(p, rho.clone(), RadiiScale::DdS, vec![ve(1, 2)]);
        let cf = radii_frobenius_push_iter(&rep, 1).unwrap();
        assert_eq!(cf.values(), vec![ve(2, 1), ve(1, 1)]);
        assert_eq!(cf, radii_frobenius_push(&rep).unwrap());
        let rep = RadiiReport::new(p, rho.clone(), RadiiScale::DdS, vec![ve(1, 3)]);
        let cf = radii_frobenius_push_iter(&rep, 2).unwrap();
        assert_eq!(cf.values(), vec![ve(3, 1), ve(3, 1), ve(2, 1), ve(4, 3)]);
        assert!(radii_frobenius_push_iter(&rep, 1).is_err());
        let mixed = RadiiReport::new(p, rho, RadiiScale::DdS, vec![ve(1, 3), ve(1, 2)]);
        assert!(matches!(radii_frobenius_push_iter(&mixed, 2), Err(Error::PurityViolated(_))));
    }

    #[test]
    fn rank_one_examples() {
        let p = 2;
        let rho = int(1);
        let a = Scalar::from_rational(p, rat(1, 2));
        assert_eq!(rank_one_radius(&a, &rho), ve(3, 1));
        let a = Scalar::from_rational(p, rat(1, 3));
        assert_eq!(rank_one_radius(&a, &rho), ve(1, 1));
        let a = Scalar::parse_str(p, "1*p^(1/2)").unwrap();
        assert_eq!(rank_one_radius(&a, &rho), ve(7, 4));
    }

    #[test]
    fn spectral_norms() {
        let p = 3;
        let w = omega_exp(p);
        let rep = RadiiReport::new(p, int(0), RadiiScale::PlSDdS(0), vec![Val::Exp(&w + int(2))]);
        assert_eq!(spectral_norm_from_radius(&rep, Gauge::SDdS).unwrap(), SpectralNorm::Exact(ve(-2, 1)));
        let solv = RadiiReport::new(p, int(0), RadiiScale::DdS, vec![Val::one()]);
        assert_eq!(spectral_norm_from_radius(&solv, Gauge::SDdS).unwrap(), SpectralNorm::AtMost(Val::one()));
        let bd = RadiiReport::new(p, int(0), RadiiScale::PlSDdS(0), vec![Val::Exp(w)]);
        assert_eq!(spectral_norm_from_radius(&bd, Gauge::SDdS).unwrap(), SpectralNorm::AtMost(Val::one()));
    }
}
