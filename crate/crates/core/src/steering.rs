//! EPR steering by Gaussian measurements at the covariance-matrix level.
//!
//! The conditional covariance matrix of the steered group `B` after Gaussian
//! measurements on `A` is the Schur complement of `V_A`. Steering `A → B` is
//! signalled by that matrix failing the bona fide condition, and quantified by
//! `G = -Σ ln ν̄_j` over its symplectic eigenvalues below one.

use serde::Serialize;

use crate::cm::{check_modes, CovarianceMatrix, Partition};
use crate::entropy::logdet_entropy;
use crate::error::{CmError, Result};
use crate::inequalities::ssa_logdet_residual;
use crate::symplectic::{
    conditional_cm, schur_complement, symplectic_spectrum, two_mode_squeezer, SymplecticMatrix,
    SymplecticSpectrum,
};

/// A direction is steerable when `G` exceeds this.
pub const STEERABLE_TOL: f64 = 1e-7;
/// Allowed shortfall of the monogamy determinant product below one.
pub const MONOGAMY_PRODUCT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SteeringReport {
    pub steering: Vec<usize>,
    pub steered: Vec<usize>,
    pub schur_spectrum: SymplecticSpectrum,
    pub g: f64,
    pub steerable: bool,
}

/// `-Σ_{ν < 1} ln ν`, zero when every value is at least one.
pub fn steerability_from_spectrum(spectrum: &SymplecticSpectrum) -> f64 {
    spectrum
        .values()
        .iter()
        .filter(|&&nu| nu < 1.0)
        .fold(0.0, |acc, nu| acc - nu.ln())
}

/// Product of the optimally inferred `q` and `p` variances of mode 2 given
/// mode 1, for a two-mode covariance matrix.
///
/// Each quadrature of the steered mode is inferred from the same quadrature
/// of the steering mode with the best linear gain
/// `g_q = V_{q_A q_B} / V_{q_A q_A}`. Values below one signal steering.
pub fn reid_product(v: &CovarianceMatrix) -> Result<f64> {
    if v.modes() != 2 {
        return Err(CmError::InvalidArgument(format!(
            "the Reid product needs two single-mode groups, got {} modes",
            v.modes()
        )));
    }
    let m = v.matrix();
    let inferred = |k: usize| {
        let gain = m[(k, 2 + k)] / m[(k, k)];
        m[(2 + k, 2 + k)] - gain * m[(k, 2 + k)]
    };
    Ok(inferred(0) * inferred(1))
}

/// `det V_AB / det V_A`: the Reid product minimized over local symplectic
/// frames, equal to the determinant of the Schur complement.
pub fn min_reid(v: &CovarianceMatrix, measured: &[usize]) -> Result<f64> {
    Ok(schur_complement(v, measured)?.determinant())
}

/// True iff the smallest symplectic eigenvalue of the Schur complement of
/// the measured modes is below `1 - tol`.
pub fn steering_criterion(v: &CovarianceMatrix, measured: &[usize], tol: f64) -> Result<bool> {
    let schur = schur_complement(v, measured)?;
    Ok(symplectic_spectrum(&schur)?.min() < 1.0 - tol)
}

/// Gaussian steerability from the measured modes to every other mode.
pub fn gaussian_steerability(v: &CovarianceMatrix, measured: &[usize]) -> Result<SteeringReport> {
    check_modes(measured, v.modes())?;
    let steered: Vec<usize> = (0..v.modes()).filter(|k| !measured.contains(k)).collect();
    directional_steerability(v, measured, &steered)
}

/// Gaussian steerability `steering → steered`, tracing out all other modes.
pub fn directional_steerability(
    v: &CovarianceMatrix,
    steering: &[usize],
    steered: &[usize],
) -> Result<SteeringReport> {
    let schur = conditional_cm(v, steering, steered)?;
    let schur_spectrum = symplectic_spectrum(&schur)?;
    let g = steerability_from_spectrum(&schur_spectrum);
    Ok(SteeringReport {
        steering: steering.to_vec(),
        steered: steered.to_vec(),
        schur_spectrum,
        g,
        steerable: g > STEERABLE_TOL,
    })
}

/// Single-mode steered group: `max(0, (M_A - M_AB) / 2)`.
///
/// Works from reduced log-determinants only; used to cross-check
/// [`directional_steerability`].
pub fn single_mode_steerability_logdet(
    v: &CovarianceMatrix,
    steering: &[usize],
    steered: usize,
) -> Result<f64> {
    let ab: Vec<usize> = steering.iter().copied().chain([steered]).collect();
    let m_a = logdet_entropy(&v.reduce(steering)?);
    let m_ab = logdet_entropy(&v.reduce(&ab)?);
    Ok((0.5 * (m_a - m_ab)).max(0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonogamyVerdict {
    pub g_ab: f64,
    pub g_cb: f64,
    /// `det V̄_{AB\A} · det V̄_{CB\C}`
    pub product_of_conditionals: f64,
    pub consistent: bool,
}

/// Checks that a single mode `B` is not steered by both `A` and `C`.
///
/// The determinant product equals `exp` of the log-determinant SSA residual
/// and so cannot drop below one for a bona fide state.
pub fn monogamy_check(v: &CovarianceMatrix, p: &Partition) -> Result<MonogamyVerdict> {
    p.expect_groups(3, v.modes())?;
    let [a, b, c] = [0, 1, 2].map(|k| p.groups()[k].clone());
    if b.len() != 1 {
        return Err(CmError::InvalidPartition(format!(
            "the steered group must be a single mode, got {}",
            b.len()
        )));
    }
    let ab = directional_steerability(v, &a, &b)?;
    let cb = directional_steerability(v, &c, &b)?;
    let product_of_conditionals =
        conditional_cm(v, &a, &b)?.determinant() * conditional_cm(v, &c, &b)?.determinant();
    let consistent = product_of_conditionals >= 1.0 - MONOGAMY_PRODUCT_TOL
        && !(ab.g > STEERABLE_TOL && cb.g > STEERABLE_TOL);
    Ok(MonogamyVerdict {
        g_ab: ab.g,
        g_cb: cb.g,
        product_of_conditionals,
        consistent,
    })
}

/// The pure four-mode family
/// `S_34(a) S_12(a) S_23(s) S_23(s)^T S_12(a)^T S_34(a)^T`.
pub fn four_mode_example_cm(a: f64, s: f64) -> Result<CovarianceMatrix> {
    let sq = |i, j, r| two_mode_squeezer(4, i, j, r);
    let total: SymplecticMatrix = sq(2, 3, a)?.compose(&sq(0, 1, a)?)?.compose(&sq(1, 2, s)?)?;
    Ok(total.apply_to_vacuum())
}

/// Steerability `{1} → {2,3}` and `{4} → {2,3}` on [`four_mode_example_cm`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointSteering {
    pub g_ab: f64,
    pub g_cb: f64,
    pub ssa_residual: f64,
}

pub fn joint_steerability_demo(a: f64, s: f64) -> Result<JointSteering> {
    let v = four_mode_example_cm(a, s)?;
    let b = [1, 2];
    Ok(JointSteering {
        g_ab: directional_steerability(&v, &[0], &b)?.g,
        g_cb: directional_steerability(&v, &[3], &b)?.g,
        ssa_residual: ssa_logdet_residual(&v, &Partition::new(vec![vec![0], vec![1, 2], vec![3]])?)?,
    })
}
