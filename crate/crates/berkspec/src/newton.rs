//! Newton polygons of polynomials whose coefficients carry exact valuations.
//!
//! A polynomial `sum_i a_i T^i` is given by the points `(i, q_i)` where
//! `|a_i| = p^(-q_i)`. A hull segment from `(i, q_i)` to `(j, q_j)` accounts for
//! `j - i` roots `z` with `v(z) = -(q_j - q_i)/(j - i)`.

use num_rational::BigRational;

use crate::arith::int;
use crate::error::{Error, Result};
use crate::valuation::Val;

/// A hull segment: its slope and horizontal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub slope: BigRational,
    pub length: usize,
}

impl Segment {
    /// Absolute value shared by the roots this segment accounts for.
    pub fn root_abs(&self) -> Val {
        Val::Exp(-self.slope.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    points: Vec<(usize, BigRational)>,
    hull: Vec<(usize, BigRational)>,
    segments: Vec<Segment>,
    zero_roots: usize,
}

impl NewtonPolygon {
    /// Builds the lower convex hull of the finite points.
    pub fn new(coeff_vals: &[(usize, Val)]) -> Result<NewtonPolygon> {
        let mut points: Vec<(usize, BigRational)> =
            coeff_vals.iter().filter_map(|(i, v)| v.exp().map(|q| (*i, q.clone()))).collect();
        points.sort_by_key(|(i, _)| *i);
        points.dedup_by_key(|(i, _)| *i);
        if points.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        let top = coeff_vals.iter().map(|(i, _)| *i).max().unwrap_or(0);
        if points.last().map(|(i, _)| *i) != Some(top) {
            return Err(Error::EmptyPolynomial);
        }
        let mut hull: Vec<(usize, BigRational)> = Vec::new();
        for pt in &points {
            while hull.len() >= 2 {
                let (i1, q1) = &hull[hull.len() - 2];
                let (i2, q2) = &hull[hull.len() - 1];
                // Drop the middle point unless it lies strictly below the chord.
                let lhs = (q2 - q1) * int((pt.0 - i2) as i64);
                let rhs = (&pt.1 - q2) * int((i2 - i1) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt.clone());
        }
        let segments = hull
            .windows(2)
            .map(|w| Segment { slope: (&w[1].1 - &w[0].1) / int((w[1].0 - w[0].0) as i64), length: w[1].0 - w[0].0 })
            .collect();
        let zero_roots = points[0].0;
        Ok(NewtonPolygon { points, hull, segments, zero_roots })
    }

    pub fn points(&self) -> &[(usize, BigRational)] {
        &self.points
    }

    pub fn hull(&self) -> &[(usize, BigRational)] {
        &self.hull
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of roots equal to zero (the lowest index with a finite point).
    pub fn zero_roots(&self) -> usize {
        self.zero_roots
    }

    pub fn degree(&self) -> usize {
        self.points.last().map_or(0, |(i, _)| *i)
    }

    /// Absolute values of all roots, non-decreasing, zeros first.
    pub fn root_abs(&self) -> Vec<Val> {
        let mut out = vec![Val::Zero; self.zero_roots];
        for s in &self.segments {
            out.extend(std::iter::repeat_n(s.root_abs(), s.length));
        }
        out
    }

    /// Splits the roots at `threshold` into those strictly below and strictly
    /// above it.
    pub fn slope_split(&self, threshold: &Val) -> Result<SlopeSplit> {
        let mut split = SlopeSplit { lower_zero_roots: 0, lower: Vec::new(), upper: Vec::new() };
        match threshold {
            Val::Zero => {
                if self.zero_roots > 0 {
                    return Err(Error::ThresholdHitsRoot);
                }
                split.upper = self.segments.clone();
            }
            Val::Exp(_) => {
                split.lower_zero_roots = self.zero_roots;
                for s in &self.segments {
                    let abs = s.root_abs();
                    if abs == *threshold {
                        return Err(Error::ThresholdHitsRoot);
                    }
                    if abs < *threshold {
                        split.lower.push(s.clone());
                    } else {
                        split.upper.push(s.clone());
                    }
                }
            }
        }
        Ok(split)
    }
}

/// The two halves of a polygon cut at a threshold absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeSplit {
    pub lower_zero_roots: usize,
    pub lower: Vec<Segment>,
    pub upper: Vec<Segment>,
}

impl SlopeSplit {
    /// Number of roots below the threshold.
    pub fn lower_mass(&self) -> usize {
        self.lower_zero_roots + self.lower.iter().map(|s| s.length).sum::<usize>()
    }

    pub fn upper_mass(&self) -> usize {
        self.upper.iter().map(|s| s.length).sum()
    }

    pub fn lower_roots(&self) -> Vec<Val> {
        let mut out = vec![Val::Zero; self.lower_zero_roots];
        for s in &self.lower {
            out.extend(std::iter::repeat_n(s.root_abs(), s.length));
        }
        out
    }

    pub fn upper_roots(&self) -> Vec<Val> {
        let mut out = Vec::new();
        for s in &self.upper {
            out.extend(std::iter::repeat_n(s.root_abs(), s.length));
        }
        out
    }
}

/// Width `W_r` at `r = p^(-rho_t)`: the spread of indices where
/// `|a_i| r^i` is maximal.
pub fn width_at(coeff_vals: &[(usize, Val)], rho_t: &BigRational) -> usize {
    let weighted: Vec<(usize, BigRational)> =
        coeff_vals.iter().filter_map(|(i, v)| v.exp().map(|q| (*i, q + int(*i as i64) * rho_t))).collect();
    let Some(best) = weighted.iter().map(|(_, w)| w).min() else {
        return 0;
    };
    let idx: Vec<usize> = weighted.iter().filter(|(_, w)| w == best).map(|(i, _)| *i).collect();
    idx.iter().max().unwrap() - idx.iter().min().unwrap()
}
