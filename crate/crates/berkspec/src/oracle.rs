//! Product-reconstruction oracle for Newton polygons: build the commutative
//! product of linear factors `T - lambda_i` with known Laurent-monomial roots,
//! then check that the polygon recovers `{|lambda_i|}` and that the width at
//! every root radius equals the segment length.

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::arith::{int, rat};
use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::newton::{width_at, NewtonPolygon};
use crate::scalars::Scalar;
use crate::valuation::Val;

/// A polynomial with prescribed roots, examined at `x_{0,r}`, `r = p^(-rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCase {
    pub p: u64,
    pub rho: BigRational,
    pub roots: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub expected: Vec<Val>,
    pub observed: Vec<Val>,
    pub widths_match: bool,
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        self.expected == self.observed && self.widths_match
    }
}

/// Coefficients of `prod_i (T - roots[i])`, lowest degree first.
pub fn product_coefficients(p: u64, roots: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut coeffs = vec![LaurentPoly::one(p)];
    for lam in roots {
        let mut next = vec![LaurentPoly::zero(p); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(lam));
        }
        coeffs = next;
    }
    coeffs
}

pub fn check_case(case: &OracleCase) -> Result<OracleOutcome> {
    let coeffs = product_coefficients(case.p, &case.roots);
    let cv: Vec<(usize, Val)> = coeffs.iter().enumerate().map(|(i, c)| (i, c.gauss_norm(&case.rho))).collect();
    let np = NewtonPolygon::new(&cv)?;
    let mut expected: Vec<Val> = case.roots.iter().map(|l| l.gauss_norm(&case.rho)).collect();
    expected.sort();
    let observed = np.root_abs();
    let widths_match = np.segments().iter().all(|s| width_at(&cv, &-s.slope.clone()) == s.length);
    Ok(OracleOutcome { expected, observed, widths_match })
}

/// A random case: up to `max_degree` roots `u p^(j/m) S^k` with `m <= max_m`.
pub fn random_case(p: u64, rng: &mut StdRng, max_degree: usize, max_m: usize) -> OracleCase {
    let degree = rng.gen_range(1..=max_degree);
    let rhos = [int(-1), int(0), rat(1, 2), int(1)];
    let rho = rhos[rng.gen_range(0..rhos.len())].clone();
    let roots = (0..degree)
        .map(|_| {
            let m = rng.gen_range(1..=max_m) as i64;
            let e = rat(rng.gen_range(-2 * m..=2 * m), m);
            let u = int(rng.gen_range(1..p as i64 * 3));
            let k = rng.gen_range(-2..=2);
            LaurentPoly::monomial(Scalar::monomial(p, u, &e), k)
        })
        .collect();
    OracleCase { p, rho, roots }
}

/// Summary of a batch of random runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSummary {
    pub runs: usize,
    pub passed: usize,
    pub failures: Vec<(usize, OracleOutcome)>,
}

pub fn run_random(p: u64, seed: u64, runs: usize, max_degree: usize, max_m: usize) -> Result<OracleSummary> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..runs {
        let outcome = check_case(&random_case(p, &mut rng, max_degree, max_m))?;
        if !outcome.passed() {
            failures.push((i, outcome));
        }
    }
    Ok(OracleSummary { runs, passed: runs - failures.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_two_roots() {
        let p = 2;
        let roots = vec![LaurentPoly::constant(Scalar::from_int(p, 2)), LaurentPoly::monomial(Scalar::one(p), 1)];
        let coeffs = product_coefficients(p, &roots);
        assert_eq!(coeffs.len(), 3);
        assert!(coeffs[2].is_one());
        let out = check_case(&OracleCase { p, rho: int(0), roots }).unwrap();
        assert!(out.passed());
        assert_eq!(out.observed, vec![Val::Exp(int(1)), Val::one()]);
    }

    #[test]
    fn random_batch_passes() {
        for p in [2u64, 3, 5] {
            let summary = run_random(p, 11, 20, 4, 4).unwrap();
            assert_eq!(summary.passed, summary.runs, "failures: {:?}", summary.failures);
        }
    }
}
