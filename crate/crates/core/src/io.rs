//! File and report formats.
//!
//! * Covariance matrix JSON: `{"modes": n, "matrix": [[...], ...]}`, row-major.
//! * Region CSV: `a,b,c,in_H,in_M,in_D`.
//! * Steering report JSON: `{"direction": [[A], [B]], "schur_spectrum": [...], "G": x, "steerable": b}`
//!   with one-based mode indices.

use std::io::Write;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::cm::CovarianceMatrix;
use crate::error::{CmError, Result};
use crate::region::RegionPoint;
use crate::steering::SteeringReport;

/// Asymmetry accepted when reading covariance matrix files.
pub const FILE_SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CmFile {
    pub modes: usize,
    pub matrix: Vec<Vec<f64>>,
}

impl CmFile {
    pub fn from_cm(v: &CovarianceMatrix) -> Self {
        let m = v.matrix();
        Self {
            modes: v.modes(),
            matrix: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }

    pub fn into_cm(self) -> Result<CovarianceMatrix> {
        if self.modes == 0 {
            return Err(CmError::ZeroModes);
        }
        let dim = 2 * self.modes;
        if self.matrix.len() != dim || self.matrix.iter().any(|r| r.len() != dim) {
            return Err(CmError::ModeMismatch {
                modes: self.modes,
                dim: self.matrix.len(),
            });
        }
        let m = DMatrix::from_row_iterator(dim, dim, self.matrix.into_iter().flatten());
        CovarianceMatrix::with_symmetry_tol(m, FILE_SYMMETRY_TOL)
    }
}

pub fn cm_from_json(text: &str) -> Result<CovarianceMatrix> {
    serde_json::from_str::<CmFile>(text)?.into_cm()
}

pub fn cm_to_json(v: &CovarianceMatrix) -> String {
    serde_json::to_string(&CmFile::from_cm(v)).expect("finite matrix serializes")
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

/// Formats with 12 significant digits, e.g. `0.0`, `1.38629436112`, `1e-20`.
pub fn fmt_num(x: f64) -> String {
    format!("{:?}", round_sig(x, 12))
}

#[derive(Debug, Clone, Serialize)]
pub struct SteeringReportJson {
    pub direction: [Vec<usize>; 2],
    pub schur_spectrum: Vec<f64>,
    #[serde(rename = "G")]
    pub g: f64,
    pub steerable: bool,
}

impl From<&SteeringReport> for SteeringReportJson {
    fn from(r: &SteeringReport) -> Self {
        let one_based = |v: &[usize]| v.iter().map(|k| k + 1).collect();
        Self {
            direction: [one_based(&r.steering), one_based(&r.steered)],
            schur_spectrum: r
                .schur_spectrum
                .values()
                .iter()
                .map(|&x| round_sig(x, 12))
                .collect(),
            g: round_sig(r.g, 12),
            steerable: r.steerable,
        }
    }
}

pub const REGION_CSV_HEADER: &str = "a,b,c,in_H,in_M,in_D";

pub fn write_region_csv<W: Write>(mut out: W, points: &[RegionPoint]) -> std::io::Result<()> {
    writeln!(out, "{REGION_CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_num(p.a),
            fmt_num(p.b),
            fmt_num(p.c),
            u8::from(p.in_h),
            u8::from(p.in_m),
            u8::from(p.in_d)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_cm;
    use crate::region::region_point;
    use crate::steering::gaussian_steerability;
    use crate::symplectic::tmsv;

    #[test]
    fn parse_and_reject() {
        let v = cm_from_json(r#"{"modes": 1, "matrix": [[2, 0.5], [0.5, 1]]}"#).unwrap();
        assert_eq!(v.modes(), 1);
        assert!(cm_from_json(r#"{"modes": 1, "matrix": [[2, 0.5], [0.4, 1]]}"#).is_err());
        assert!(cm_from_json(r#"{"modes": 2, "matrix": [[1, 0], [0, 1]]}"#).is_err());
        assert!(cm_from_json(r#"{"modes": 1, "matrix": [[1, 2], [2, 1]]}"#).is_err());
        assert!(cm_from_json(r#"{"modes": 1}"#).is_err());
        assert!(cm_from_json("not json").is_err());
        // tiny asymmetry is tolerated
        let v = cm_from_json(r#"{"modes": 1, "matrix": [[1, 1e-12], [0, 1]]}"#).unwrap();
        assert_eq!(v.matrix()[(0, 1)], v.matrix()[(1, 0)]);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let v = random_cm(3, 17, 4.0).unwrap();
        let back = cm_from_json(&cm_to_json(&v)).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.0), "0.0");
        assert_eq!(fmt_num(2.0 * 2f64.ln()), "1.38629436112");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(-2.5e-20), "-2.5e-20");
    }

    #[test]
    fn steering_json_shape() {
        let rep = gaussian_steerability(&tmsv(0.5), &[0]).unwrap();
        let text = serde_json::to_string(&SteeringReportJson::from(&rep)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["direction"], serde_json::json!([[1], [2]]));
        assert_eq!(value["steerable"], serde_json::json!(true));
        assert!((value["G"].as_f64().unwrap() - 1f64.cosh().ln()).abs() < 1e-11);
        assert_eq!(value["schur_spectrum"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        write_region_csv(&mut buf, &[region_point(2.0, 2.0, 2.0).unwrap()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "a,b,c,in_H,in_M,in_D\n2.0,2.0,2.0,1,1,1\n");
    }
}
