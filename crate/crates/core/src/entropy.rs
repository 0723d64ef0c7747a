//! Entropy-like functionals of covariance matrices.
//!
//! * `M` — log-determinant, `ln det V`
//! * `H` — von Neumann entropy of the Gaussian state with CM `V`
//! * `D` — sqrt-determinant, `sqrt(det V) - 1`
//!
//! Natural logarithms throughout.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cm::CovarianceMatrix;
use crate::error::{CmError, Result};
use crate::symplectic::{purity, symplectic_spectrum};

/// Symplectic eigenvalues in `[1 - CLAMP_TOL, 1]` are treated as exactly 1.
pub const CLAMP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntropyKind {
    #[serde(rename = "H")]
    VonNeumann,
    #[serde(rename = "M")]
    LogDet,
    #[serde(rename = "D")]
    SqrtDet,
}

impl EntropyKind {
    pub const ALL: [EntropyKind; 3] = [Self::VonNeumann, Self::LogDet, Self::SqrtDet];

    pub fn symbol(self) -> &'static str {
        match self {
            Self::VonNeumann => "H",
            Self::LogDet => "M",
            Self::SqrtDet => "D",
        }
    }

    /// Evaluates the functional on a covariance matrix.
    pub fn of(self, v: &CovarianceMatrix) -> Result<f64> {
        match self {
            Self::VonNeumann => von_neumann_entropy(v),
            Self::LogDet => Ok(logdet_entropy(v)),
            Self::SqrtDet => Ok(sqrt_det_entropy(v)),
        }
    }

    /// The functional on a single mode with symplectic invariant `x = sqrt(det V)`.
    pub fn of_single_mode(self, x: f64) -> f64 {
        match self {
            Self::VonNeumann => single_mode_entropy(x),
            Self::LogDet => 2.0 * x.ln(),
            Self::SqrtDet => x - 1.0,
        }
    }
}

impl fmt::Display for EntropyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for EntropyKind {
    type Err = CmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" | "h" | "von-neumann" => Ok(Self::VonNeumann),
            "M" | "m" | "log-det" => Ok(Self::LogDet),
            "D" | "d" | "sqrt-det" => Ok(Self::SqrtDet),
            _ => Err(CmError::InvalidArgument(format!(
                "unknown entropy kind '{s}' (expected H, M or D)"
            ))),
        }
    }
}

/// `ln det V`, via Cholesky.
pub fn logdet_entropy(v: &CovarianceMatrix) -> f64 {
    v.ln_det()
}

/// Rényi-2 entropy of the Gaussian state, `ln det V / 2`.
pub fn renyi2_entropy(v: &CovarianceMatrix) -> f64 {
    0.5 * logdet_entropy(v)
}

pub fn sqrt_det_entropy(v: &CovarianceMatrix) -> f64 {
    (0.5 * v.ln_det()).exp() - 1.0
}

/// `g(ν) = ((ν+1)/2) ln((ν+1)/2) - ((ν-1)/2) ln((ν-1)/2)` written in terms
/// of `t = ν - 1` so that it stays accurate as `ν → 1`.
fn entropy_of_excess(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let half = 0.5 * t;
    (1.0 + half) * half.ln_1p() - half * half.ln()
}

/// Von Neumann entropy of a single mode with symplectic eigenvalue `nu >= 1`.
pub fn single_mode_entropy(nu: f64) -> f64 {
    entropy_of_excess(nu - 1.0)
}

/// Von Neumann entropy from the symplectic spectrum.
///
/// Fails if some symplectic eigenvalue is below `1 - CLAMP_TOL`.
pub fn von_neumann_entropy(v: &CovarianceMatrix) -> Result<f64> {
    let spectrum = symplectic_spectrum(v)?;
    let min_nu = spectrum.min();
    if min_nu < 1.0 - CLAMP_TOL {
        return Err(CmError::NotBonaFide { min_nu });
    }
    Ok(spectrum
        .values()
        .iter()
        .map(|&nu| single_mode_entropy(nu.max(1.0)))
        .sum())
}

/// Bound function relating `H` and `M` for `n` modes:
///
/// `f_n(m) = (n/2) [ ln((e^{m/n} - 1)/4) + e^{m/2n} ln coth(m/4n) ]`,
/// with `f_n(0) = 0`.
///
/// Evaluated as `n g(e^{m/2n})`, the single-mode entropy at
/// `ν = e^{m/2n}`, which is algebraically identical and has no
/// cancelling singular terms near `m = 0`.
pub fn f_bound(n: usize, m: f64) -> Result<f64> {
    if n == 0 {
        return Err(CmError::ZeroModes);
    }
    if !(m >= 0.0) {
        return Err(CmError::InvalidArgument(format!(
            "bound function needs m >= 0, got {m}"
        )));
    }
    let n = n as f64;
    Ok(n * entropy_of_excess((m / (2.0 * n)).exp_m1()))
}

/// Slacks of `f_1(M) <= H <= f_n(M)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSlacks {
    /// `H - f_1(M)`
    pub lower: f64,
    /// `f_n(M) - H`
    pub upper: f64,
}

pub fn entropy_bounds_residuals(v: &CovarianceMatrix) -> Result<BoundSlacks> {
    let h = von_neumann_entropy(v)?;
    let m = logdet_entropy(v).max(0.0);
    Ok(BoundSlacks {
        lower: h - f_bound(1, m)?,
        upper: f_bound(v.modes(), m)? - h,
    })
}

/// `-ln(purity)`; equal to [`renyi2_entropy`].
pub fn neg_log_purity(v: &CovarianceMatrix) -> f64 {
    -purity(v).ln()
}
