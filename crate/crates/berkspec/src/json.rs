//! JSON encoding of the library's values.
//!
//! Rationals and absolute values are strings (`"3/4"`, `"p^(-3/4)"`), so the
//! output is exact and independent of float formatting. Objects use
//! `serde_json`'s sorted maps, which makes every rendering canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::arith::{int, parse_rational};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::geometry::PointDescriptor;
use crate::laurent::{Gauge, LaurentPoly};
use crate::radii::{RadiiReport, RadiiScale, Radius, RadiusFlag};
use crate::scalars::Scalar;
use crate::spectrum::{RadiiRow, SpectrumComponent, SpectrumEntry, SpectrumReport};
use crate::valuation::Val;

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field '{key}' in {obj}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, v))
}

pub fn usize_from_json(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| parse_err("a non-negative integer", v))
}

pub fn rational_to_json(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

/// Accepts `"a/b"` strings and JSON integers.
pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n.as_i64().map(int).ok_or_else(|| parse_err("an integer or a rational string", v)),
        _ => Err(parse_err("a rational", v)),
    }
}

pub fn val_to_json(v: &Val) -> Value {
    Value::String(v.render())
}

pub fn val_from_json(v: &Value) -> Result<Val> {
    match v {
        Value::String(s) => Val::parse(s),
        _ => Err(parse_err("an absolute value string", v)),
    }
}

/// A short string when the scalar has one, else `{"m": m, "coeffs": [...]}`.
pub fn scalar_to_json(s: &Scalar) -> Value {
    match s.render_short() {
        Some(short) => Value::String(short),
        None => json!({
            "m": s.m(),
            "coeffs": s.coeffs().iter().map(rational_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn scalar_from_json(p: u64, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse_str(p, s),
        Value::Number(_) => Ok(Scalar::from_rational(p, rational_from_json(v)?)),
        Value::Object(_) => {
            let coeffs = array(field(v, "coeffs")?, "a coefficient list")?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?;
            if coeffs.is_empty() {
                return Err(Error::Parse("scalar with no coefficients".into()));
            }
            if let Some(m) = v.get("m") {
                if usize_from_json(m)? != coeffs.len() {
                    return Err(Error::Parse(format!("scalar {v}: m does not match the coefficient count")));
                }
            }
            Ok(Scalar::new(p, coeffs))
        }
        _ => Err(parse_err("a scalar", v)),
    }
}

pub fn point_to_json(x: &PointDescriptor) -> Value {
    let rho = match &x.rho {
        None => Value::String("inf".into()),
        Some(r) => rational_to_json(r),
    };
    json!({ "center": scalar_to_json(&x.center), "rho": rho })
}

pub fn point_from_json(p: u64, v: &Value) -> Result<PointDescriptor> {
    let center = scalar_from_json(p, field(v, "center")?)?;
    let rho = field(v, "rho")?;
    if rho.as_str() == Some("inf") {
        Ok(PointDescriptor::type1(center))
    } else {
        Ok(PointDescriptor::new(center, rational_from_json(rho)?))
    }
}

/// A list of terms `{"exp": k, "coeff": c}` in increasing exponent order.
pub fn laurent_to_json(f: &LaurentPoly) -> Value {
    Value::Array(f.terms().iter().map(|(k, c)| json!({ "exp": k, "coeff": scalar_to_json(c) })).collect())
}

/// Accepts a term list or a bare scalar for a constant.
pub fn laurent_from_json(p: u64, v: &Value) -> Result<LaurentPoly> {
    match v {
        Value::Array(terms) => {
            let mut out = LaurentPoly::zero(p);
            for t in terms {
                let k = field(t, "exp")?.as_i64().ok_or_else(|| parse_err("an integer exponent", t))?;
                let c = scalar_from_json(p, field(t, "coeff")?)?;
                out = out.add(&LaurentPoly::monomial(c, k));
            }
            Ok(out)
        }
        _ => Ok(LaurentPoly::constant(scalar_from_json(p, v)?)),
    }
}

fn gauge_fields(g: Gauge, obj: &mut Map<String, Value>) {
    let name = match g {
        Gauge::DdS => "dds",
        Gauge::SDdS => "sdds",
        Gauge::PlSDdS(l) => {
            obj.insert("level".into(), json!(l));
            "plsdds"
        }
    };
    obj.insert("gauge".into(), json!(name));
}

fn gauge_from_fields(v: &Value) -> Result<Gauge> {
    match field(v, "gauge")?.as_str() {
        Some("dds") => Ok(Gauge::DdS),
        Some("sdds") => Ok(Gauge::SDdS),
        Some("plsdds") => {
            let l = usize_from_json(field(v, "level")?)?;
            Ok(Gauge::pl_sds(u32::try_from(l).map_err(|_| parse_err("a small level", v))?))
        }
        _ => Err(parse_err("gauge 'dds', 'sdds' or 'plsdds'", field(v, "gauge")?)),
    }
}

/// `{"gauge": ..., "coeffs": [g_0, ..., g_n]}` for `sum_i g_i D^i`.
pub fn op_to_json(op: &DiffOp) -> Value {
    let mut obj = Map::new();
    gauge_fields(op.gauge(), &mut obj);
    obj.insert("coeffs".into(), Value::Array(op.coeffs().iter().map(laurent_to_json).collect()));
    Value::Object(obj)
}

pub fn op_from_json(p: u64, v: &Value) -> Result<DiffOp> {
    let gauge = gauge_from_fields(v)?;
    let coeffs = array(field(v, "coeffs")?, "a coefficient list")?
        .iter()
        .map(|c| laurent_from_json(p, c))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(Error::Parse("operator with no coefficients".into()));
    }
    Ok(DiffOp::new(p, gauge, coeffs))
}

pub fn radii_to_json(r: &RadiiReport) -> Value {
    let mut obj = Map::new();
    obj.insert("rho".into(), rational_to_json(&r.rho));
    match r.scale {
        RadiiScale::DdS => {
            obj.insert("scale".into(), json!("dds"));
        }
        RadiiScale::PlSDdS(l) => {
            obj.insert("scale".into(), json!("plsdds"));
            obj.insert("level".into(), json!(l));
        }
    }
    let radii = r.radii.iter().map(|x| json!({ "value": val_to_json(&x.value), "flag": x.flag.name() })).collect();
    obj.insert("radii".into(), Value::Array(radii));
    obj.insert("boundary_ambiguity".into(), json!(r.boundary_ambiguity));
    Value::Object(obj)
}

pub fn radii_from_json(p: u64, v: &Value) -> Result<RadiiReport> {
    let rho = rational_from_json(field(v, "rho")?)?;
    let scale = match field(v, "scale")?.as_str() {
        Some("dds") => RadiiScale::DdS,
        Some("plsdds") => {
            let l = usize_from_json(field(v, "level")?)?;
            RadiiScale::PlSDdS(u32::try_from(l).map_err(|_| parse_err("a small level", v))?)
        }
        _ => return Err(parse_err("scale 'dds' or 'plsdds'", v)),
    };
    let radii = array(field(v, "radii")?, "a radius list")?
        .iter()
        .map(|x| {
            let value = val_from_json(field(x, "value")?)?;
            let flag = RadiusFlag::parse(field(x, "flag")?.as_str().unwrap_or(""))?;
            Ok(Radius { value, flag })
        })
        .collect::<Result<Vec<_>>>()?;
    let boundary_ambiguity = v.get("boundary_ambiguity").and_then(Value::as_bool).unwrap_or(false);
    let mut out = RadiiReport::new(p, rho, scale, radii.iter().map(|r| r.value.clone()).collect());
    if out.radii != radii {
        return Err(Error::Parse("radii list is not sorted or carries inconsistent flags".into()));
    }
    out.boundary_ambiguity = boundary_ambiguity;
    Ok(out)
}

pub fn component_to_json(c: &SpectrumComponent) -> Value {
    match c {
        SpectrumComponent::Point(z) => json!({ "type": "point", "z": point_to_json(z) }),
        SpectrumComponent::ZpTranslate(z) => json!({ "type": "zp_translate", "z": point_to_json(z) }),
        SpectrumComponent::DiskTrain { base, count, disk_rho } => json!({
            "type": "disk_train",
            "base": scalar_to_json(base),
            "count": count.to_string(),
            "disk_rho": rational_to_json(disk_rho),
        }),
    }
}

pub fn component_from_json(p: u64, v: &Value) -> Result<SpectrumComponent> {
    match field(v, "type")?.as_str() {
        Some("point") => Ok(SpectrumComponent::point(point_from_json(p, field(v, "z")?)?)),
        Some("zp_translate") => Ok(SpectrumComponent::zp_translate(point_from_json(p, field(v, "z")?)?)),
        Some("disk_train") => {
            let base = scalar_from_json(p, field(v, "base")?)?;
            let disk_rho = rational_from_json(field(v, "disk_rho")?)?;
            let out = SpectrumComponent::disk_train(base, disk_rho);
            let count: BigInt = field(v, "count")?
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err("an integer count string", v))?;
            match &out {
                SpectrumComponent::DiskTrain { count: c, .. } if *c == count => Ok(out),
                _ => Err(Error::Parse(format!("disk count {count} does not match the disk radius"))),
            }
        }
        _ => Err(parse_err("component type 'point', 'zp_translate' or 'disk_train'", v)),
    }
}

/// Components, a flat radii table and the mass decomposition, each indexed by
/// component position.
pub fn spectrum_to_json(r: &SpectrumReport) -> Value {
    let components: Vec<Value> = r.entries.iter().map(|e| component_to_json(&e.component)).collect();
    let mut table = Vec::new();
    let mut decomposition = Vec::new();
    for (i, e) in r.entries.iter().enumerate() {
        decomposition.push(json!({ "component": i, "multiplicity": e.multiplicity }));
        for row in &e.rows {
            table.push(json!({
                "component": i,
                "a": scalar_to_json(&row.a),
                "delta": val_to_json(&row.delta),
                "l": row.l,
                "R1": val_to_json(&row.r1),
            }));
        }
    }
    json!({
        "point": point_to_json(&r.point),
        "components": components,
        "radii_table": table,
        "decomposition": decomposition,
        "descent_level": r.descent_level,
        "checks": r.checks,
    })
}

pub fn spectrum_from_json(p: u64, v: &Value) -> Result<SpectrumReport> {
    let point = point_from_json(p, field(v, "point")?)?;
    let components = array(field(v, "components")?, "a component list")?
        .iter()
        .map(|c| component_from_json(p, c))
        .collect::<Result<Vec<_>>>()?;
    let mut entries: Vec<SpectrumEntry> = components
        .into_iter()
        .map(|component| SpectrumEntry { component, multiplicity: 0, rows: Vec::new() })
        .collect();
    let index = |x: &Value| -> Result<usize> {
        let i = usize_from_json(field(x, "component")?)?;
        if i < entries.len() {
            Ok(i)
        } else {
            Err(Error::Parse(format!("component index {i} out of range")))
        }
    };
    let mut mults = Vec::new();
    for d in array(field(v, "decomposition")?, "a decomposition list")? {
        mults.push((index(d)?, usize_from_json(field(d, "multiplicity")?)?));
    }
    let mut rows = Vec::new();
    for row in array(field(v, "radii_table")?, "a radii table")? {
        let l = usize_from_json(field(row, "l")?)?;
        rows.push((
            index(row)?,
            RadiiRow {
                a: scalar_from_json(p, field(row, "a")?)?,
                delta: val_from_json(field(row, "delta")?)?,
                l: u32::try_from(l).map_err(|_| parse_err("a small level", row))?,
                r1: val_from_json(field(row, "R1")?)?,
            },
        ));
    }
    for (i, m) in mults {
        entries[i].multiplicity += m;
    }
    for (i, row) in rows {
        entries[i].rows.push(row);
    }
    let descent_level = match v.get("descent_level") {
        None | Some(Value::Null) => None,
        Some(l) => Some(u32::try_from(usize_from_json(l)?).map_err(|_| parse_err("a small level", l))?),
    };
    let checks = match v.get("checks") {
        None => Vec::new(),
        Some(c) => array(c, "a list of check names")?
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| parse_err("a check name", s)))
            .collect::<Result<_>>()?,
    };
    Ok(SpectrumReport::new(p, point, entries, descent_level, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::radii::radii_young;
    use crate::spectrum::{default_probes, spectrum_general, spectrum_regular_singular, DEFAULT_L_MAX};

    #[test]
    fn scalar_round_trip() {
        let p = 3;
        let samples = [
            Scalar::from_rational(p, rat(-7, 9)),
            Scalar::p_power(p, &rat(2, 3)),
            Scalar::new(p, vec![int(1), int(2)]),
            Scalar::zero(p),
        ];
        for s in samples {
            assert_eq!(scalar_from_json(p, &scalar_to_json(&s)).unwrap(), s);
        }
        assert_eq!(scalar_from_json(p, &json!(4)).unwrap(), Scalar::from_int(p, 4));
        assert!(scalar_from_json(p, &json!({"m": 3, "coeffs": ["1"]})).is_err());
    }

    #[test]
    fn point_round_trip() {
        let x = PointDescriptor::new(Scalar::from_rational(5, rat(1, 5)), rat(-1, 2));
        assert_eq!(point_from_json(5, &point_to_json(&x)).unwrap(), x);
        let y = PointDescriptor::type1(Scalar::from_int(5, 7));
        let j = point_to_json(&y);
        assert_eq!(j["rho"], json!("inf"));
        assert_eq!(point_from_json(5, &j).unwrap(), y);
    }

    #[test]
    fn operator_and_radii_round_trip() {
        let c = LaurentPoly::from_terms(2, [(-1, Scalar::from_int(2, 3)), (2, Scalar::p_power(2, &rat(1, 2)))]);
        for g in [Gauge::DdS, Gauge::SDdS, Gauge::PlSDdS(2)] {
            let op = DiffOp::monic(2, g, vec![c.clone(), LaurentPoly::zero(2)]);
            assert_eq!(op_from_json(2, &op_to_json(&op)).unwrap(), op);
            let rep = radii_young(&op, &int(0)).unwrap();
            assert_eq!(radii_from_json(2, &radii_to_json(&rep)).unwrap(), rep);
        }
        let bad = json!({"gauge": "weird", "coeffs": []});
        assert!(matches!(op_from_json(2, &bad), Err(Error::Parse(_))));
    }

    #[test]
    fn spectrum_round_trip() {
        let c = Scalar::p_power(2, &rat(1, 2)).neg();
        let op = DiffOp::monic(2, Gauge::SDdS, vec![LaurentPoly::monomial(c, 2)]);
        let rep = spectrum_general(&op, &int(0), &default_probes(2, 3, &[]), DEFAULT_L_MAX).unwrap();
        let j = spectrum_to_json(&rep);
        assert_eq!(j["components"][0]["type"], json!("zp_translate"));
        assert_eq!(j["components"][0]["z"]["rho"], json!("1/2"));
        assert_eq!(spectrum_from_json(2, &j).unwrap(), rep);
        let off = PointDescriptor::new(Scalar::one(3), rat(1, 7));
        let rep = spectrum_regular_singular(&off, &[Scalar::zero(3)]).unwrap();
        assert_eq!(spectrum_from_json(3, &spectrum_to_json(&rep)).unwrap(), rep);
    }
}
