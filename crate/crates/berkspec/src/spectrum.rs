//! Berkovich spectra of cyclic differential modules over `x_{0,r}` in
//! residue characteristic `p`.
//!
//! Spectra are finite unions of `Z_p`-translates of points. Points are found
//! by projecting the roots of the commutative polynomial `P(T)` through a set
//! of probe shifts, after descending the operator along the Frobenius far
//! enough for the derivation norm to drop below every root. Every accepted
//! run is cross-checked: the radii predicted from the spectrum through the
//! `delta` formula are pushed forward along the Frobenius and compared with
//! the radii read off the twisted descended polygons.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::int;
use crate::diffop::{slope_factor, DiffOp};
use crate::error::{Error, Result};
use crate::geometry::{delta_point, frobenius_gauss_rho, log_radius, relative_rho, PointDescriptor};
use crate::laurent::Gauge;
use crate::radii::{radii_frobenius_push, radii_young, radius_from_delta, RadiiReport, RadiiScale, RadiusFlag};
use crate::scalars::Scalar;
use crate::valuation::{omega_exp, Val};

/// Default probe level `L`: probes `0, 1, ..., p^L - 1`.
pub const DEFAULT_PROBE_LEVEL: u32 = 3;
/// Default cap on the Frobenius descent level.
pub const DEFAULT_L_MAX: u32 = 8;

/// One piece of a spectrum, always stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumComponent {
    /// A single point.
    Point(PointDescriptor),
    /// The set `{z} + Z_p` for a point `z` of radius below 1 or of type 1.
    ZpTranslate(PointDescriptor),
    /// The union of the closed disks `D(base + i, p^(-disk_rho))` for
    /// `0 <= i < count`, where `count` is the number of distinct disks.
    DiskTrain { base: Scalar, count: BigInt, disk_rho: BigRational },
}

impl SpectrumComponent {
    pub fn point(z: PointDescriptor) -> SpectrumComponent {
        SpectrumComponent::Point(z.canonical())
    }

    /// `{z} + Z_p`, collapsing to the point `z` when its radius is at least 1.
    pub fn zp_translate(z: PointDescriptor) -> SpectrumComponent {
        match &z.rho {
            None => SpectrumComponent::ZpTranslate(PointDescriptor::type1(z.center.mod_zp())),
            Some(rho) if !rho.is_positive() => SpectrumComponent::point(z),
            Some(rho) => {
                let center = z.center.mod_zp().truncate(rho);
                SpectrumComponent::ZpTranslate(PointDescriptor::new(center, rho.clone()))
            }
        }
    }

    /// The disk train `U_i D(base + i, p^(-disk_rho))`.
    pub fn disk_train(base: Scalar, disk_rho: BigRational) -> SpectrumComponent {
        let p = base.p();
        let n = if disk_rho.is_positive() { disk_rho.ceil().to_integer() } else { BigInt::zero() };
        let n = n.to_usize().expect("disk count exponent fits usize");
        let count = num_traits::pow(BigInt::from(p), n);
        let base = base.mod_zp().truncate(&disk_rho);
        SpectrumComponent::DiskTrain { base, count, disk_rho }
    }

    /// The component moved by `a`.
    pub fn translate(&self, a: &Scalar) -> SpectrumComponent {
        match self {
            SpectrumComponent::Point(z) => SpectrumComponent::point(z.translate(a)),
            SpectrumComponent::ZpTranslate(z) => SpectrumComponent::zp_translate(z.translate(a)),
            SpectrumComponent::DiskTrain { base, disk_rho, .. } => {
                SpectrumComponent::disk_train(base.add(a), disk_rho.clone())
            }
        }
    }

    /// The point `z` of a point or translate component.
    pub fn base_point(&self) -> Option<&PointDescriptor> {
        match self {
            SpectrumComponent::Point(z) | SpectrumComponent::ZpTranslate(z) => Some(z),
            SpectrumComponent::DiskTrain { .. } => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            SpectrumComponent::Point(_) => 0,
            SpectrumComponent::ZpTranslate(_) => 1,
            SpectrumComponent::DiskTrain { .. } => 2,
        }
    }

    fn sort_key(&self) -> (u8, String) {
        (self.rank(), self.to_string())
    }
}

impl fmt::Display for SpectrumComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumComponent::Point(z) => write!(f, "{z}"),
            SpectrumComponent::ZpTranslate(z) => write!(f, "{z} + Z_p"),
            SpectrumComponent::DiskTrain { base, count, disk_rho } => {
                write!(f, "U_(i<{count}) D({base} + i, {})", Val::Exp(disk_rho.clone()))
            }
        }
    }
}

/// Radius data of one component twisted by a probe shift `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiiRow {
    pub a: Scalar,
    /// Distance from `T(z) - a` to `Z`.
    pub delta: Val,
    /// Frobenius level attached to `delta`.
    pub l: u32,
    /// Radius `R_1` of the component twisted by `a`, in the `d/dS` scale.
    pub r1: Val,
}

/// A component with its share of the polygon mass and its radii rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub component: SpectrumComponent,
    pub multiplicity: usize,
    pub rows: Vec<RadiiRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub p: u64,
    /// The working point.
    pub point: PointDescriptor,
    /// Canonical components in sorted order, each listed once.
    pub entries: Vec<SpectrumEntry>,
    /// Frobenius level at which the components were certified.
    pub descent_level: Option<u32>,
    /// Names of the checks that certified the result.
    pub checks: Vec<String>,
}

impl SpectrumReport {
    /// Builds a report, merging equal components and sorting.
    pub fn new(
        p: u64,
        point: PointDescriptor,
        entries: Vec<SpectrumEntry>,
        descent_level: Option<u32>,
        checks: Vec<String>,
    ) -> SpectrumReport {
        let mut merged: Vec<SpectrumEntry> = Vec::new();
        for e in entries {
            match merged.iter_mut().find(|m| m.component == e.component) {
                Some(m) => {
                    m.multiplicity += e.multiplicity;
                    for row in e.rows {
                        if !m.rows.iter().any(|r| r.a == row.a) {
                            m.rows.push(row);
                        }
                    }
                }
                None => merged.push(e),
            }
        }
        merged.sort_by_key(|e| e.component.sort_key());
        let mut checks = checks;
        checks.sort();
        checks.dedup();
        SpectrumReport { p, point, entries: merged, descent_level, checks }
    }

    pub fn components(&self) -> Vec<SpectrumComponent> {
        self.entries.iter().map(|e| e.component.clone()).collect()
    }

    /// Total multiplicity, equal to the order of the operator.
    pub fn mass(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// The report with every component and probe moved by `a`.
    pub fn translate(&self, a: &Scalar) -> SpectrumReport {
        let entries = self
            .entries
            .iter()
            .map(|e| SpectrumEntry {
                component: e.component.translate(a),
                multiplicity: e.multiplicity,
                rows: e.rows.iter().map(|r| RadiiRow { a: r.a.add(a), ..r.clone() }).collect(),
            })
            .collect();
        SpectrumReport::new(self.p, self.point.clone(), entries, self.descent_level, self.checks.clone())
    }
}

/// Probes `0, 1, ..., p^level - 1` followed by the extra scalars not already
/// present.
pub fn default_probes(p: u64, level: u32, extra: &[Scalar]) -> Vec<Scalar> {
    let n = p.checked_pow(level).expect("probe count fits u64");
    let mut out: Vec<Scalar> = (0..n).map(|i| Scalar::from_int(p, i as i64)).collect();
    for s in extra {
        if !out.contains(s) {
            out.push(s.clone());
        }
    }
    out
}

/// Groups the roots of the commutative `P(T)` at `x_{0,r}` into projected
/// points, using the distance profiles `{|z_i - a|}` of the probes `a`.
///
/// The globally smallest distance `d`, seen at a probe `a`, identifies a group
/// centered at `a` of radius `d`. Its members sit at distance `max(d, |a - b|)`
/// from every other probe `b`; those entries are removed before the next round.
pub fn project_roots(op: &DiffOp, rho: &BigRational, probes: &[Scalar]) -> Result<Vec<(PointDescriptor, usize)>> {
    op.require_monic()?;
    if probes.is_empty() {
        return Err(Error::InsufficientProbes("no probes".into()));
    }
    let mut profiles: Vec<Vec<Val>> =
        probes.iter().map(|a| op.twist(a).polygon(rho).map(|np| np.root_abs())).collect::<Result<_>>()?;
    let mut groups: Vec<(PointDescriptor, usize)> = Vec::new();
    while !profiles[0].is_empty() {
        let (idx, d) = profiles
            .iter()
            .enumerate()
            .map(|(i, prof)| (i, prof[0].clone()))
            .min_by(|x, y| x.1.cmp(&y.1))
            .expect("probe list is non-empty");
        let mult = profiles[idx].iter().take_while(|v| **v == d).count();
        let center = &probes[idx];
        for (b, prof) in probes.iter().zip(profiles.iter_mut()) {
            let expected = std::cmp::max(d.clone(), center.sub(b).val());
            for _ in 0..mult {
                let pos = prof.iter().position(|v| *v == expected).ok_or_else(|| {
                    Error::InsufficientProbes(format!(
                        "profile at probe {b} has no root at distance {expected} for the group around {center}"
                    ))
                })?;
                prof.remove(pos);
            }
        }
        let point = PointDescriptor { center: center.clone(), rho: d.exp().cloned() };
        match groups.iter_mut().find(|(z, _)| *z == point) {
            Some((_, m)) => *m += mult,
            None => groups.push((point, mult)),
        }
    }
    Ok(groups)
}

/// Radius exponent `omega / dist` in the gauge's own scale, converted to the
/// `d/dS` scale at `rho`.
fn young_radius_dds(p: u64, gauge: Gauge, rho: &BigRational, dist: &Val) -> Val {
    let native = omega_exp(p) - dist.q();
    match gauge.level() {
        None => Val::Exp(native),
        Some(l) => Val::Exp(native + int(l as i64) + rho),
    }
}

fn rank_one_rows(p: u64, z: &PointDescriptor, rho: &BigRational, probes: &[Scalar]) -> Vec<RadiiRow> {
    probes
        .iter()
        .map(|a| {
            let delta = delta_point(&z.translate(&a.neg()));
            let (l, r1) = radius_from_delta(p, &delta, rho);
            RadiiRow { a: a.clone(), delta, l, r1 }
        })
        .collect()
}

/// Spectrum of `S d/dS` on `H(x_{0,r})`: the component `Z_p`.
pub fn spectrum_sds(p: u64, rho: &BigRational) -> SpectrumReport {
    spectrum_regular_singular(&PointDescriptor::gauss(p, rho.clone()), &[Scalar::zero(p)])
        .expect("x_(0,r) is a supported point")
}

/// Spectrum of a regular singular module `S d/dS - G` with constant `G` of
/// eigenvalues `eigenvalues`.
///
/// At `x_{0,r}` this is the union of the classes `a_i + Z_p`. At a point
/// `x` inside `D(c, |c|)^-` it is a union of disk trains of radius
/// `omega / r(Log_c(x))`.
pub fn spectrum_regular_singular(x: &PointDescriptor, eigenvalues: &[Scalar]) -> Result<SpectrumReport> {
    let p = x.p();
    let Some(rho) = &x.rho else {
        return Err(Error::UnsupportedPoint("type-1 working point".into()));
    };
    if eigenvalues.iter().any(|a| a.p() != p) {
        return Err(Error::Parse("eigenvalue over a different prime".into()));
    }
    if x.is_centered() {
        let entries = eigenvalues
            .iter()
            .map(|a| {
                let z = PointDescriptor::type1(a.clone());
                SpectrumEntry {
                    component: SpectrumComponent::zp_translate(z.clone()),
                    multiplicity: 1,
                    rows: rank_one_rows(p, &z.canonical(), rho, &[Scalar::zero(p)]),
                }
            })
            .collect();
        let point = PointDescriptor::gauss(p, rho.clone());
        return Ok(SpectrumReport::new(p, point, entries, None, vec!["regular_singular".into()]));
    }
    let rel = relative_rho(x)?;
    let disk_rho = omega_exp(p) - log_radius(p, &rel)?;
    let entries = eigenvalues
        .iter()
        .map(|a| SpectrumEntry {
            component: SpectrumComponent::disk_train(a.clone(), disk_rho.clone()),
            multiplicity: 1,
            rows: Vec::new(),
        })
        .collect();
    Ok(SpectrumReport::new(p, x.clone(), entries, None, vec!["regular_singular_off_center".into()]))
}

/// Spectrum through the strong Young theorem: every projected root must be
/// farther than `|D|` from every probe.
pub fn spectrum_small(op: &DiffOp, rho: &BigRational, probes: &[Scalar]) -> Result<SpectrumReport> {
    let p = op.p();
    let groups = project_roots(op, rho, probes)?;
    let dnorm = op.gauge().derivation_norm(rho);
    let mut entries = Vec::new();
    for (z, mult) in groups {
        if z.radius() <= dnorm {
            return Err(Error::HypothesisNotCertified(format!(
                "probe proxy: roots near {} are within {} <= |D| = {} of a probe",
                z.center,
                z.radius(),
                dnorm
            )));
        }
        let rows = probes
            .iter()
            .map(|a| {
                let dist = std::cmp::max(z.radius(), z.center.sub(a).val());
                let r1 = young_radius_dds(p, op.gauge(), rho, &dist);
                RadiiRow { a: a.clone(), delta: dist, l: 0, r1 }
            })
            .collect();
        entries.push(SpectrumEntry { component: SpectrumComponent::point(z), multiplicity: mult, rows });
    }
    let point = PointDescriptor::gauss(p, rho.clone());
    Ok(SpectrumReport::new(p, point, entries, None, vec!["probe_proxy".into()]))
}

/// Spectrum of a monic operator in the gauge `S d/dS` at `x_{0,r}`.
///
/// Constant-coefficient operators whose eigenvalues are all probes give the
/// regular singular classes `a_i + Z_p`. Otherwise the smallest Frobenius
/// level `l <= descent_level(l_max)` at which every projected root is farther
/// than `|p|^l` from the probes is used, and each root group `z` contributes
/// `{z} + Z_p`. The radii predicted for every probe twist are then checked
/// against the push-forward radii of the descended operator.
pub fn spectrum_general(op: &DiffOp, rho: &BigRational, probes: &[Scalar], l_max: u32) -> Result<SpectrumReport> {
    if op.gauge() != Gauge::SDdS {
        return Err(Error::GaugeMismatch);
    }
    op.require_monic()?;
    if op.has_constant_coeffs() {
        return constant_spectrum(op, rho, probes);
    }
    let p = op.p();
    let top = op.descent_level(l_max);
    let mut mixed = false;
    for l in 0..=top {
        let desc = op.descend(l).expect("level within the descent level");
        let rho_y = frobenius_gauss_rho(p, rho, l);
        let groups = project_roots(&desc, &rho_y, probes)?;
        let threshold = Val::p_pow(l as i64);
        let certified = groups.iter().filter(|(z, _)| z.radius() > threshold).count();
        if certified == groups.len() {
            return descended_spectrum(op, rho, probes, l, &desc, groups);
        }
        mixed = certified > 0;
    }
    if mixed {
        Err(Error::SolvableMixedWithNonSolvable)
    } else {
        Err(Error::HypothesisNotCertified(format!(
            "probe proxy: some root stays within |p|^l of a probe for every level l <= {top}"
        )))
    }
}

fn constant_spectrum(op: &DiffOp, rho: &BigRational, probes: &[Scalar]) -> Result<SpectrumReport> {
    let p = op.p();
    let groups = project_roots(op, rho, probes)?;
    if let Some((z, _)) = groups.iter().find(|(z, _)| !z.is_type1()) {
        return Err(Error::HypothesisNotCertified(format!("eigenvalues near {} are not among the probes", z.center)));
    }
    let entries = groups
        .into_iter()
        .map(|(z, mult)| SpectrumEntry {
            rows: rank_one_rows(p, &z, rho, probes),
            component: SpectrumComponent::zp_translate(z),
            multiplicity: mult,
        })
        .collect();
    let point = PointDescriptor::gauss(p, rho.clone());
    Ok(SpectrumReport::new(p, point, entries, None, vec!["constant_eigenvalues".into()]))
}

fn descended_spectrum(
    op: &DiffOp,
    rho: &BigRational,
    probes: &[Scalar],
    l: u32,
    desc: &DiffOp,
    groups: Vec<(PointDescriptor, usize)>,
) -> Result<SpectrumReport> {
    let p = op.p();
    let entries = groups
        .into_iter()
        .map(|(z, mult)| {
            let component = SpectrumComponent::zp_translate(z);
            let base = component.base_point().expect("translate component").clone();
            SpectrumEntry { rows: rank_one_rows(p, &base, rho, probes), component, multiplicity: mult }
        })
        .collect();
    let report = SpectrumReport::new(
        p,
        PointDescriptor::gauss(p, rho.clone()),
        entries,
        Some(l),
        vec!["probe_proxy".into(), "radii_cross_check".into()],
    );
    if report.mass() != op.degree() {
        return Err(Error::RadiiMismatch(format!("components carry mass {} for order {}", report.mass(), op.degree())));
    }
    for a in probes {
        cross_check(&report, rho, l, desc, a)?;
    }
    Ok(report)
}

/// Compares the `l`-fold push-forward of the predicted radii of `nabla - a`
/// with the radii of the descended twists `P_y(T + a - i)`, `0 <= i < p^l`.
fn cross_check(report: &SpectrumReport, rho: &BigRational, l: u32, desc: &DiffOp, a: &Scalar) -> Result<()> {
    let p = report.p;
    let mut predicted = Vec::new();
    for e in &report.entries {
        let row = e.rows.iter().find(|r| r.a == *a).expect("rows cover every probe");
        predicted.extend(std::iter::repeat_n(row.r1.clone(), e.multiplicity));
    }
    let mut pushed = RadiiReport::new(p, rho.clone(), RadiiScale::DdS, predicted);
    for _ in 0..l {
        pushed = radii_frobenius_push(&pushed)?;
    }
    let rho_y = frobenius_gauss_rho(p, rho, l);
    let count = p.pow(l);
    let mut observed = Vec::new();
    for i in 0..count {
        let shift = a.sub(&Scalar::from_int(p, i as i64));
        let radii = radii_young(&desc.twist(&shift), &rho_y)?;
        if radii.radii.iter().any(|r| r.flag != RadiusFlag::Small) {
            return Err(Error::HypothesisNotCertified(format!(
                "descended twist by {shift} has a radius the polygon does not determine"
            )));
        }
        observed.extend(radii.values());
    }
    observed.sort();
    if observed != pushed.values() {
        let fmt = |v: &[Val]| v.iter().map(Val::render).collect::<Vec<_>>().join(", ");
        return Err(Error::RadiiMismatch(format!(
            "probe {a}: predicted [{}], observed [{}]",
            fmt(&pushed.values()),
            fmt(&observed)
        )));
    }
    Ok(())
}

/// Union of the spectra of two modules over the same working point.
pub fn spectrum_union(a: &SpectrumReport, b: &SpectrumReport) -> Result<SpectrumReport> {
    if a.p != b.p || a.point != b.point || a.point.rho != b.point.rho {
        return Err(Error::PointMismatch);
    }
    let entries = a.entries.iter().chain(&b.entries).cloned().collect();
    let level = if a.descent_level == b.descent_level { a.descent_level } else { None };
    let checks = a.checks.iter().chain(&b.checks).cloned().collect();
    Ok(SpectrumReport::new(a.p, a.point.clone(), entries, level, checks))
}

/// [`spectrum_general`], splitting a mixed operator first.
///
/// When some root groups are certified and others stay within `|p|^l` of the
/// probes, the descended operator is factored by [`slope_factor`] at a
/// threshold separating the two groups at the probe `0`, and the spectra of
/// the lifted factors are joined.
pub fn spectrum_auto(
    op: &DiffOp,
    rho: &BigRational,
    probes: &[Scalar],
    l_max: u32,
    precision: u32,
) -> Result<SpectrumReport> {
    match spectrum_general(op, rho, probes, l_max) {
        Err(Error::SolvableMixedWithNonSolvable) => {}
        other => return other,
    }
    let (q, r) = split_mixed(op, rho, probes, l_max, precision)?;
    let sq = spectrum_auto(&q, rho, probes, l_max, precision)?;
    let sr = spectrum_auto(&r, rho, probes, l_max, precision)?;
    let mut out = spectrum_union(&sq, &sr)?;
    out.checks.push("slope_split".into());
    out.checks.sort();
    Ok(out)
}

/// Factors a mixed operator into `Q R`, with `R` carrying the roots that are
/// not certified at the top descent level. Both factors are returned lifted
/// back to the gauge `S d/dS`.
pub fn split_mixed(
    op: &DiffOp,
    rho: &BigRational,
    probes: &[Scalar],
    l_max: u32,
    precision: u32,
) -> Result<(DiffOp, DiffOp)> {
    let p = op.p();
    let l = op.descent_level(l_max);
    let desc = op.descend(l).expect("level within the descent level");
    let rho_y = frobenius_gauss_rho(p, rho, l);
    let level = Val::p_pow(l as i64);
    let low_mass: usize =
        project_roots(&desc, &rho_y, probes)?.iter().filter(|(z, _)| z.radius() <= level).map(|(_, m)| m).sum();
    let roots = desc.polygon(&rho_y)?.root_abs();
    if low_mass == 0 || low_mass >= roots.len() {
        return Err(Error::SolvableMixedWithNonSolvable);
    }
    let q_upper = roots[low_mass].q().clone();
    let ceiling = match roots[low_mass - 1].exp() {
        Some(q) => std::cmp::min(q.clone(), int(l as i64)),
        None => int(l as i64),
    };
    if q_upper >= ceiling {
        return Err(Error::SolvableMixedWithNonSolvable);
    }
    let e = (q_upper + ceiling) / int(2);
    let (qf, rf) = slope_factor(&desc, &rho_y, &Val::Exp(e), precision)?;
    let lift = |f: DiffOp| if l == 0 { Some(f) } else { f.lift() };
    let qf = lift(qf).expect("factor in a level gauge");
    let rf = lift(rf).expect("factor in a level gauge");
    Ok((qf, rf))
}

/// `(|p| omega)^(1/p^l)` and `omega^(1/p^(l-1))` as exponents.
pub fn boundary_identity(p: u64, l: u32) -> (BigRational, BigRational) {
    let pl = num_traits::pow(int(p as i64), l as usize);
    let w = omega_exp(p);
    let lhs = (int(1) + &w) / &pl;
    let rhs = &w * int(p as i64) / &pl;
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::laurent::LaurentPoly;

    fn mono(c: Scalar, k: i64) -> LaurentPoly {
        LaurentPoly::monomial(c, k)
    }

    fn probes(p: u64) -> Vec<Scalar> {
        default_probes(p, DEFAULT_PROBE_LEVEL, &[])
    }

    /// `T^2 - S^2 / 16` over `p = 2`.
    fn square_op() -> DiffOp {
        let c = Scalar::from_rational(2, rat(-1, 16));
        DiffOp::monic(2, Gauge::SDdS, vec![mono(c, 2), LaurentPoly::zero(2)])
    }

    /// `T - 2^(1/2) S^2` over `p = 2`.
    fn ramified_op() -> DiffOp {
        let c = Scalar::p_power(2, &rat(1, 2)).neg();
        DiffOp::monic(2, Gauge::SDdS, vec![mono(c, 2)])
    }

    fn zp_zero(p: u64) -> SpectrumComponent {
        SpectrumComponent::zp_translate(PointDescriptor::type1(Scalar::zero(p)))
    }

    #[test]
    fn sds_spectrum_is_zp() {
        for p in [2u64, 3, 5] {
            for rho in [int(-2), int(0), int(1)] {
                let rep = spectrum_sds(p, &rho);
                assert_eq!(rep.components(), vec![zp_zero(p)]);
                assert_eq!(rep.entries[0].rows[0].r1, Val::Exp(rho.clone()));
            }
        }
    }

    #[test]
    fn regular_singular_classes() {
        let x = PointDescriptor::gauss(5, int(0));
        let a = Scalar::from_rational(5, rat(1, 5));
        let merged = spectrum_regular_singular(&x, &[a.clone(), a.add(&Scalar::from_int(5, 5))]).unwrap();
        assert_eq!(merged.entries.len(), 1);
        assert_eq!(merged.entries[0].multiplicity, 2);
        let split = spectrum_regular_singular(&x, &[Scalar::zero(5), a]).unwrap();
        assert_eq!(split.entries.len(), 2);
        let same = spectrum_regular_singular(&x, &[Scalar::zero(5), Scalar::from_rational(5, rat(1, 2))]).unwrap();
        assert_eq!(same.entries.len(), 1);
    }

    #[test]
    fn regular_singular_off_center() {
        // x = x_(1, r) with r = |1| p^(-rho_rel)
        let p = 3u64;
        let cases = [(int(1), 1u32), (rat(1, 2), 1), (rat(1, 3), 3), (rat(1, 6), 3), (rat(1, 7), 9)];
        for (rel, count) in cases {
            let x = PointDescriptor::new(Scalar::one(p), rel.clone());
            let rep = spectrum_regular_singular(&x, &[Scalar::zero(p)]).unwrap();
            match &rep.entries[0].component {
                SpectrumComponent::DiskTrain { count: c, disk_rho, .. } => {
                    assert_eq!(*c, BigInt::from(count), "rho_rel = {rel}");
                    assert_eq!(*disk_rho, omega_exp(p) - log_radius(p, &rel).unwrap());
                }
                other => panic!("unexpected component {other}"),
            }
        }
        let bad = PointDescriptor::type1(Scalar::one(p));
        assert!(spectrum_regular_singular(&bad, &[Scalar::zero(p)]).is_err());
    }

    #[test]
    fn projected_roots() {
        let op = DiffOp::monic(2, Gauge::SDdS, vec![mono(Scalar::from_rational(2, rat(-1, 16)), 2)]);
        let groups = project_roots(&op, &int(0), &probes(2)).unwrap();
        assert_eq!(groups, vec![(PointDescriptor::gauss(2, int(-4)), 1)]);
        let groups = project_roots(&square_op(), &int(0), &probes(2)).unwrap();
        assert_eq!(groups, vec![(PointDescriptor::gauss(2, int(-2)), 2)]);
        // (T - 1)(T - 3) over p = 5
        let c0 = LaurentPoly::constant(Scalar::from_int(5, 3));
        let c1 = LaurentPoly::constant(Scalar::from_int(5, -4));
        let op = DiffOp::monic(5, Gauge::SDdS, vec![c0, c1]);
        let groups = project_roots(&op, &int(0), &probes(5)).unwrap();
        assert_eq!(
            groups,
            vec![(PointDescriptor::type1(Scalar::one(5)), 1), (PointDescriptor::type1(Scalar::from_int(5, 3)), 1)]
        );
    }

    #[test]
    fn small_spectrum_examples() {
        let rep = spectrum_small(&square_op(), &int(0), &probes(2)).unwrap();
        assert_eq!(rep.components(), vec![SpectrumComponent::point(PointDescriptor::gauss(2, int(-2)))]);
        assert_eq!(rep.entries[0].rows[0].r1, Val::Exp(int(3)));
        // d/dS at r = p: the root S has norm p > |d/dS| = 1/p
        let op = DiffOp::monic(2, Gauge::DdS, vec![mono(Scalar::from_int(2, -1), 1)]);
        let rep = spectrum_small(&op, &int(-1), &probes(2)).unwrap();
        assert_eq!(rep.components(), vec![SpectrumComponent::point(PointDescriptor::gauss(2, int(-1)))]);
        let op = DiffOp::monic(2, Gauge::SDdS, vec![LaurentPoly::constant(Scalar::from_int(2, -3))]);
        assert!(matches!(spectrum_small(&op, &int(0), &probes(2)), Err(Error::HypothesisNotCertified(_))));
    }

    #[test]
    fn general_spectrum_worked_examples() {
        let rep = spectrum_general(&square_op(), &int(0), &probes(2), DEFAULT_L_MAX).unwrap();
        assert_eq!(rep.components(), vec![SpectrumComponent::point(PointDescriptor::gauss(2, int(-2)))]);
        assert_eq!(rep.entries[0].multiplicity, 2);
        assert_eq!(rep.descent_level, Some(0));
        assert!(rep.entries[0].rows.iter().all(|r| r.r1 == Val::Exp(int(3))));

        let rep = spectrum_general(&ramified_op(), &int(0), &probes(2), DEFAULT_L_MAX).unwrap();
        let z = PointDescriptor::gauss(2, rat(1, 2));
        assert_eq!(rep.components(), vec![SpectrumComponent::zp_translate(z)]);
        assert_eq!(rep.descent_level, Some(1));
        let row0 = &rep.entries[0].rows[0];
        assert_eq!(row0.a, Scalar::zero(2));
        assert_eq!((row0.l, row0.r1.clone()), (1, Val::Exp(rat(3, 4))));

        let op = DiffOp::d(3, Gauge::SDdS);
        let rep = spectrum_general(&op, &int(1), &probes(3), DEFAULT_L_MAX).unwrap();
        assert_eq!(rep.components(), vec![zp_zero(3)]);
    }

    #[test]
    fn shift_equivariance() {
        for op in [square_op(), ramified_op()] {
            let base = spectrum_general(&op, &int(0), &probes(2), DEFAULT_L_MAX).unwrap();
            for a in [0i64, 1, 2] {
                let a = Scalar::from_int(2, a);
                let shifted = spectrum_general(&op.twist(&a), &int(0), &probes(2), DEFAULT_L_MAX).unwrap();
                assert_eq!(shifted.components(), base.translate(&a.neg()).components());
            }
        }
    }

    #[test]
    fn mixed_operator_is_split() {
        let op = square_op().mul(&DiffOp::d(2, Gauge::SDdS)).unwrap();
        assert_eq!(spectrum_general(&op, &int(0), &probes(2), DEFAULT_L_MAX), Err(Error::SolvableMixedWithNonSolvable));
        let rep = spectrum_auto(&op, &int(0), &probes(2), DEFAULT_L_MAX, 20).unwrap();
        let expected = vec![SpectrumComponent::point(PointDescriptor::gauss(2, int(-2))), zp_zero(2)];
        assert_eq!(rep.components(), expected);
        assert_eq!(rep.mass(), 3);
    }

    #[test]
    fn union_dedups() {
        let a = spectrum_sds(2, &int(0));
        let u = spectrum_union(&a, &a).unwrap();
        assert_eq!(u.components(), vec![zp_zero(2)]);
        let b = spectrum_general(&square_op(), &int(0), &probes(2), DEFAULT_L_MAX).unwrap();
        assert_eq!(spectrum_union(&a, &b).unwrap().entries.len(), 2);
        let c = spectrum_sds(2, &int(1));
        assert_eq!(spectrum_union(&a, &c), Err(Error::PointMismatch));
    }

    #[test]
    fn translate_collapse() {
        let z = PointDescriptor::new(Scalar::from_int(3, 7), int(-1));
        assert_eq!(SpectrumComponent::zp_translate(z.clone()), SpectrumComponent::point(z));
        let w = PointDescriptor::new(Scalar::from_rational(3, rat(4, 3)), int(2));
        let shifted = w.translate(&Scalar::from_int(3, 5));
        assert_eq!(SpectrumComponent::zp_translate(w), SpectrumComponent::zp_translate(shifted));
    }

    #[test]
    fn boundary_identity_holds() {
        for p in [2u64, 3, 5, 7] {
            for l in 1..=6 {
                let (lhs, rhs) = boundary_identity(p, l);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
