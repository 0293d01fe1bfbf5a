//! JSON job runner behind the `berkspec` binary.
//!
//! A job names a prime, a command, an optional working point, a
//! command-specific payload and options. The output is a single JSON
//! document with sorted keys, so equal jobs give byte-identical output.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::arith::check_prime;
use crate::diffop::{slope_factor, DiffOp};
use crate::error::{Error, ErrorClass, Result};
use crate::geometry::{
    delta_point, frobenius_image, log_degree, log_radius, tame_power_image, MapImage, PointDescriptor,
};
use crate::json::{
    op_to_json, point_from_json, point_to_json, radii_to_json, rational_from_json, rational_to_json, scalar_from_json,
    spectrum_to_json, usize_from_json, val_from_json, val_to_json,
};
use crate::oracle::run_random;
use crate::radii::{radii_frobenius_push, radii_young, radii_young_native, spectral_norm_from_radius, SpectralNorm};
use crate::scalars::Scalar;
use crate::spectrum::{
    default_probes, spectrum_auto, spectrum_regular_singular, spectrum_sds, spectrum_small, DEFAULT_L_MAX,
    DEFAULT_PROBE_LEVEL,
};
use crate::valuation::omega_exp;

/// Default `slope_factor` precision.
pub const DEFAULT_PRECISION: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Radii,
    Spectrum,
    Regsing,
    Factor,
    Map,
    Delta,
    Oracle,
}

impl Command {
    pub fn parse(s: &str) -> Result<Command> {
        match s {
            "radii" => Ok(Command::Radii),
            "spectrum" => Ok(Command::Spectrum),
            "regsing" => Ok(Command::Regsing),
            "factor" => Ok(Command::Factor),
            "map" => Ok(Command::Map),
            "delta" => Ok(Command::Delta),
            "oracle" => Ok(Command::Oracle),
            _ => Err(Error::Parse(format!("unknown command '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub probe_level: u32,
    pub precision: u32,
    pub l_max: u32,
}

impl Default for Options {
    fn default() -> Options {
        Options { probe_level: DEFAULT_PROBE_LEVEL, precision: DEFAULT_PRECISION, l_max: DEFAULT_L_MAX }
    }
}

/// Option values given on the command line; they take precedence over the job.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub probe_level: Option<u32>,
    pub precision: Option<u32>,
    pub l_max: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub p: u64,
    pub command: Command,
    pub point: Option<PointDescriptor>,
    pub payload: Value,
    pub options: Options,
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::Parse(format!("unknown field '{k}' in {what}"))),
        None => Ok(()),
    }
}

fn small_u32(v: &Value) -> Result<u32> {
    u32::try_from(usize_from_json(v)?).map_err(|_| Error::Parse(format!("{v} is too large")))
}

impl JobSpec {
    pub fn from_json(v: &Value) -> Result<JobSpec> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("a job must be a JSON object".into()))?;
        check_keys(obj, &["p", "command", "point", "payload", "options"], "the job")?;
        let p = obj
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("field 'p' must be a positive integer".into()))?;
        check_prime(p).map_err(|_| Error::Parse(format!("p = {p} is not a prime")))?;
        let command = obj
            .get("command")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("field 'command' must be a string".into()))
            .and_then(Command::parse)?;
        let point = obj.get("point").map(|x| point_from_json(p, x)).transpose()?;
        let payload = obj.get("payload").cloned().unwrap_or_else(|| json!({}));
        if !payload.is_object() {
            return Err(Error::Parse("field 'payload' must be an object".into()));
        }
        let mut options = Options::default();
        if let Some(o) = obj.get("options") {
            let o = o.as_object().ok_or_else(|| Error::Parse("field 'options' must be an object".into()))?;
            check_keys(o, &["probe_level", "precision", "l_max"], "options")?;
            if let Some(x) = o.get("probe_level") {
                options.probe_level = small_u32(x)?;
            }
            if let Some(x) = o.get("precision") {
                options.precision = small_u32(x)?;
            }
            if let Some(x) = o.get("l_max") {
                options.l_max = small_u32(x)?;
            }
        }
        Ok(JobSpec { p, command, point, payload, options })
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(x) = o.probe_level {
            self.options.probe_level = x;
        }
        if let Some(x) = o.precision {
            self.options.precision = x;
        }
        if let Some(x) = o.l_max {
            self.options.l_max = x;
        }
    }

    fn payload_field(&self, key: &str) -> Result<&Value> {
        self.payload
            .get(key)
            .ok_or_else(|| Error::Parse(format!("payload of '{}' needs field '{key}'", self.command_name())))
    }

    fn command_name(&self) -> &'static str {
        match self.command {
            Command::Radii => "radii",
            Command::Spectrum => "spectrum",
            Command::Regsing => "regsing",
            Command::Factor => "factor",
            Command::Map => "map",
            Command::Delta => "delta",
            Command::Oracle => "oracle",
        }
    }

    fn operator(&self) -> Result<DiffOp> {
        crate::json::op_from_json(self.p, self.payload_field("operator")?)
    }

    fn point(&self) -> Result<&PointDescriptor> {
        self.point
            .as_ref()
            .ok_or_else(|| Error::Parse(format!("command '{}' needs a working point", self.command_name())))
    }

    /// `rho` of a working point of the form `x_{0,r}`.
    fn gauss_rho(&self) -> Result<BigRational> {
        let x = self.point()?;
        match &x.rho {
            Some(rho) if x.is_centered() => Ok(rho.clone()),
            _ => Err(Error::UnsupportedPoint(format!("{x} is not of the form x_(0,r)"))),
        }
    }
}

/// Runs a job and returns its JSON result.
pub fn run(job: &JobSpec) -> Result<Value> {
    match job.command {
        Command::Radii => run_radii(job),
        Command::Spectrum => run_spectrum(job),
        Command::Regsing => run_regsing(job),
        Command::Factor => run_factor(job),
        Command::Map => run_map(job),
        Command::Delta => run_delta(job),
        Command::Oracle => run_oracle(job),
    }
}

fn run_radii(job: &JobSpec) -> Result<Value> {
    let rho = job.gauss_rho()?;
    let op = job.operator()?;
    let native = radii_young_native(&op, &rho)?;
    let dds = radii_young(&op, &rho)?;
    let norm = match spectral_norm_from_radius(&native, op.gauge())? {
        SpectralNorm::Exact(v) => json!({ "exact": val_to_json(&v) }),
        SpectralNorm::AtMost(v) => json!({ "at_most": val_to_json(&v) }),
    };
    let mut out = json!({
        "radii": radii_to_json(&dds),
        "native": radii_to_json(&native),
        "spectral_norm": norm,
    });
    if let Some(n) = job.payload.get("push") {
        let mut pushed = dds.clone();
        for _ in 0..small_u32(n)? {
            pushed = radii_frobenius_push(&pushed)?;
        }
        out["pushed"] = radii_to_json(&pushed);
    }
    Ok(out)
}

fn probes(job: &JobSpec) -> Result<Vec<Scalar>> {
    let extra = match job.payload.get("probes") {
        None => Vec::new(),
        Some(v) => v
            .as_array()
            .ok_or_else(|| Error::Parse("'probes' must be a list of scalars".into()))?
            .iter()
            .map(|s| scalar_from_json(job.p, s))
            .collect::<Result<_>>()?,
    };
    Ok(default_probes(job.p, job.options.probe_level, &extra))
}

fn run_spectrum(job: &JobSpec) -> Result<Value> {
    let rho = job.gauss_rho()?;
    let mode = job.payload.get("mode").and_then(Value::as_str).unwrap_or("general");
    let report = match mode {
        "sds" => spectrum_sds(job.p, &rho),
        "general" => {
            let op = job.operator()?;
            spectrum_auto(&op, &rho, &probes(job)?, job.options.l_max, job.options.precision)?
        }
        "small" => spectrum_small(&job.operator()?, &rho, &probes(job)?)?,
        other => return Err(Error::Parse(format!("unknown spectrum mode '{other}'"))),
    };
    Ok(spectrum_to_json(&report))
}

fn run_regsing(job: &JobSpec) -> Result<Value> {
    let eigenvalues = job
        .payload_field("eigenvalues")?
        .as_array()
        .ok_or_else(|| Error::Parse("'eigenvalues' must be a list of scalars".into()))?
        .iter()
        .map(|s| scalar_from_json(job.p, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(spectrum_to_json(&spectrum_regular_singular(job.point()?, &eigenvalues)?))
}

fn run_factor(job: &JobSpec) -> Result<Value> {
    let rho = job.gauss_rho()?;
    let op = job.operator()?;
    let threshold = val_from_json(job.payload_field("threshold")?)?;
    let (q, r) = slope_factor(&op, &rho, &threshold, job.options.precision)?;
    let residual = op.sub(&q.mul(&r)?)?.norm(&rho);
    Ok(json!({
        "left": op_to_json(&q),
        "right": op_to_json(&r),
        "residual": val_to_json(&residual),
    }))
}

fn image_json(img: &MapImage) -> Value {
    json!({ "point": point_to_json(&img.point), "degree": img.degree })
}

fn run_map(job: &JobSpec) -> Result<Value> {
    let kind = job.payload_field("map")?.as_str().unwrap_or("");
    let point = || -> Result<PointDescriptor> {
        match job.payload.get("point") {
            Some(x) => point_from_json(job.p, x),
            None => job.point().cloned(),
        }
    };
    match kind {
        "frobenius" => Ok(image_json(&frobenius_image(&point()?))),
        "tame" => {
            let n = job
                .payload_field("n")?
                .as_u64()
                .ok_or_else(|| Error::Parse("'n' must be a positive integer".into()))?;
            Ok(image_json(&tame_power_image(&point()?, n)?))
        }
        "log" => {
            let rel = rational_from_json(job.payload_field("rho_rel")?)?;
            let phi = log_radius(job.p, &rel)?;
            Ok(json!({
                "log_radius": rational_to_json(&phi),
                "disk_rho": rational_to_json(&(omega_exp(job.p) - &phi)),
                "degree": log_degree(job.p, &rel)?.to_string(),
            }))
        }
        other => Err(Error::Parse(format!("unknown map '{other}'"))),
    }
}

fn run_delta(job: &JobSpec) -> Result<Value> {
    let delta = match (job.payload.get("a"), job.payload.get("point")) {
        (Some(a), _) => scalar_from_json(job.p, a)?.delta(),
        (None, Some(x)) => delta_point(&point_from_json(job.p, x)?),
        (None, None) => return Err(Error::Parse("payload of 'delta' needs 'a' or 'point'".into())),
    };
    Ok(json!({ "delta": val_to_json(&delta), "display": delta.display_decimal(job.p) }))
}

fn run_oracle(job: &JobSpec) -> Result<Value> {
    let get = |key: &str, default: u64| -> Result<u64> {
        match job.payload.get(key) {
            None => Ok(default),
            Some(v) => v.as_u64().ok_or_else(|| Error::Parse(format!("'{key}' must be a non-negative integer"))),
        }
    };
    let runs = get("runs", 100)? as usize;
    let seed = get("seed", 0)?;
    let max_degree = get("max_degree", 4)?.max(1) as usize;
    let max_m = get("max_m", 4)?.max(1) as usize;
    let summary = run_random(job.p, seed, runs, max_degree, max_m)?;
    let failures: Vec<Value> = summary
        .failures
        .iter()
        .map(|(i, o)| {
            json!({
                "run": i,
                "expected": o.expected.iter().map(val_to_json).collect::<Vec<_>>(),
                "observed": o.observed.iter().map(val_to_json).collect::<Vec<_>>(),
                "widths_match": o.widths_match,
            })
        })
        .collect();
    Ok(json!({
        "runs": summary.runs,
        "passed": summary.passed,
        "ok": summary.passed == summary.runs,
        "failures": failures,
    }))
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "detail": e.to_string() } })
}

pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Parse => 2,
        ErrorClass::Domain => 3,
        ErrorClass::Hypothesis => 4,
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    s.expect("JSON values always serialize")
}

/// Parses, runs and renders one job; returns the output text and exit code.
pub fn run_text(input: &str, overrides: &Overrides, pretty: bool) -> (String, i32) {
    let result = serde_json::from_str::<Value>(input)
        .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
        .and_then(|v| JobSpec::from_json(&v))
        .and_then(|mut job| {
            job.apply(overrides);
            run(&job)
        });
    match result {
        Ok(v) => (render(&v, pretty), 0),
        Err(e) => (render(&error_json(&e), pretty), exit_code(&e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(s: &str) -> (Value, i32) {
        let (out, code) = run_text(s, &Overrides::default(), false);
        (serde_json::from_str(&out).unwrap(), code)
    }

    #[test]
    fn delta_job() {
        let (v, code) = run_str(r#"{"command":"delta","payload":{"a":"1/5"},"p":5}"#);
        assert_eq!(code, 0);
        assert_eq!(v, json!({"delta": "p^(-(-1))", "display": "5"}));
    }

    #[test]
    fn frobenius_map_job() {
        let (v, code) =
            run_str(r#"{"command":"map","payload":{"map":"frobenius","point":{"center":"1","rho":"2"}},"p":3}"#);
        assert_eq!(code, 0);
        assert_eq!(v["point"], json!({"center": "1", "rho": "3"}));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str("not json").1, 2);
        assert_eq!(run_str(r#"{"p":4,"command":"delta","payload":{"a":"1"}}"#).1, 2);
        assert_eq!(run_str(r#"{"p":2,"command":"delta","payload":{"a":"1"},"extra":1}"#).1, 2);
        let (v, code) =
            run_str(r#"{"p":2,"command":"map","payload":{"map":"tame","n":2,"point":{"center":"1","rho":"0"}}}"#);
        assert_eq!(code, 3);
        assert_eq!(v["error"]["kind"], json!("NotCoprime"));
        let job = r#"{"p":2,"command":"spectrum","point":{"center":"0","rho":"0"},
            "payload":{"mode":"small","operator":{"gauge":"sdds","coeffs":["-3","1"]}}}"#;
        let (v, code) = run_str(job);
        assert_eq!(code, 4);
        assert_eq!(v["error"]["kind"], json!("HypothesisNotCertified"));
    }
}
