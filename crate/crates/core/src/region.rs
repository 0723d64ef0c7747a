//! Triangle-inequality regions for pure three-mode states, parametrized by
//! the local symplectic invariants `a = sqrt(det V_A)`, `b`, `c`.

use serde::Serialize;

use crate::entropy::EntropyKind;
use crate::error::{CmError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub in_h: bool,
    pub in_m: bool,
    pub in_d: bool,
}

impl RegionPoint {
    pub fn member(&self, kind: EntropyKind) -> bool {
        match kind {
            EntropyKind::VonNeumann => self.in_h,
            EntropyKind::LogDet => self.in_m,
            EntropyKind::SqrtDet => self.in_d,
        }
    }

    /// `in_D <= in_M <= in_H`.
    pub fn is_nested(&self) -> bool {
        (!self.in_d || self.in_m) && (!self.in_m || self.in_h)
    }
}

fn check_invariants(a: f64, b: f64, c: f64) -> Result<()> {
    for x in [a, b, c] {
        if !(x >= 1.0 && x.is_finite()) {
            return Err(CmError::InvalidArgument(format!(
                "symplectic invariants must be >= 1, got {x}"
            )));
        }
    }
    Ok(())
}

fn triangle_holds(sa: f64, sb: f64, sc: f64) -> bool {
    (sa - sb).abs() <= sc && sc <= sa + sb
}

/// Whether `|S_X - S_Y| <= S_Z <= S_X + S_Y` holds for every assignment of
/// roles, with `S` the single-mode functional of `kind`. Boundary points
/// count as members.
pub fn three_mode_region_member(kind: EntropyKind, a: f64, b: f64, c: f64) -> Result<bool> {
    check_invariants(a, b, c)?;
    let [sa, sb, sc] = [a, b, c].map(|x| kind.of_single_mode(x));
    Ok(triangle_holds(sa, sb, sc) && triangle_holds(sb, sc, sa) && triangle_holds(sc, sa, sb))
}

pub fn region_point(a: f64, b: f64, c: f64) -> Result<RegionPoint> {
    Ok(RegionPoint {
        a,
        b,
        c,
        in_h: three_mode_region_member(EntropyKind::VonNeumann, a, b, c)?,
        in_m: three_mode_region_member(EntropyKind::LogDet, a, b, c)?,
        in_d: three_mode_region_member(EntropyKind::SqrtDet, a, b, c)?,
    })
}

/// `points` equally spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if points == 0 || !(min.is_finite() && max.is_finite()) || max < min {
            return Err(CmError::InvalidArgument(format!(
                "bad grid [{min}, {max}] with {points} points"
            )));
        }
        if points == 1 && max != min {
            return Err(CmError::InvalidArgument(
                "a one-point grid needs min == max".into(),
            ));
        }
        Ok(Self { min, max, points })
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.points == 1 {
            return self.min;
        }
        let t = i as f64 / (self.points - 1) as f64;
        if i + 1 == self.points {
            self.max
        } else {
            self.min + t * (self.max - self.min)
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

/// Evaluates all three regions on the `a x b` grid at fixed `c`.
///
/// Rows come out in row-major order (`a` outer, `b` inner) whether or not
/// the evaluation runs in parallel.
pub fn scan_region(c: f64, a_grid: &GridSpec, b_grid: &GridSpec) -> Result<Vec<RegionPoint>> {
    check_invariants(a_grid.min, b_grid.min, c)?;
    let bs = b_grid.values();
    let row = |i: usize| -> Result<Vec<RegionPoint>> {
        let a = a_grid.value(i);
        bs.iter().map(|&b| region_point(a, b, c)).collect()
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<RegionPoint>> = {
        use rayon::prelude::*;
        (0..a_grid.points)
            .into_par_iter()
            .map(row)
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<RegionPoint>> = (0..a_grid.points).map(row).collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}
