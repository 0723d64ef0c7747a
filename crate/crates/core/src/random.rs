//! Seeded generators for symplectic matrices and covariance matrices.
//!
//! Every generator is a pure function of its seed (ChaCha8 stream).

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cm::{symmetrize, CovarianceMatrix};
use crate::error::{CmError, Result};
use crate::symplectic::{omega, SymplecticMatrix};

pub const DEFAULT_STRENGTH: f64 = 1.0;
/// Membership tolerance guaranteed for generated symplectic matrices.
pub const RANDOM_SYMPLECTIC_TOL: f64 = 1e-8;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw_symplectic(modes: usize, strength: f64, rng: &mut ChaCha8Rng) -> Result<SymplecticMatrix> {
    if modes == 0 {
        return Err(CmError::ZeroModes);
    }
    if !(strength > 0.0 && strength.is_finite()) {
        return Err(CmError::InvalidArgument(format!(
            "strength must be positive, got {strength}"
        )));
    }
    let d = 2 * modes;
    let mut a = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let x = rng.gen_range(-strength..=strength);
            a[(i, j)] = x;
            a[(j, i)] = x;
        }
    }
    // Ω A is Hamiltonian, so its exponential is symplectic.
    let s = (omega(modes)? * a).exp();
    SymplecticMatrix::with_tol(s, RANDOM_SYMPLECTIC_TOL)
}

/// `exp(Ω A)` with `A` symmetric, entries uniform in `[-strength, strength]`.
pub fn random_symplectic(modes: usize, seed: u64, strength: f64) -> Result<SymplecticMatrix> {
    draw_symplectic(modes, strength, &mut rng(seed))
}

/// A random bona fide covariance matrix `S D S^T` in Williamson form.
///
/// `D = diag(ν_1, ν_1, ..., ν_n, ν_n)` with `ν_j` uniform in `[1, nu_max]`;
/// `nu_max = 1` gives a pure state. `S` is the matrix
/// [`random_symplectic`] returns for the same seed and strength 1.
pub fn random_cm(modes: usize, seed: u64, nu_max: f64) -> Result<CovarianceMatrix> {
    random_williamson(modes, seed, nu_max, DEFAULT_STRENGTH).map(|(v, _)| v)
}

/// Like [`random_cm`], also returning the drawn symplectic eigenvalues
/// (descending) and taking an explicit symplectic strength.
pub fn random_williamson(
    modes: usize,
    seed: u64,
    nu_max: f64,
    strength: f64,
) -> Result<(CovarianceMatrix, Vec<f64>)> {
    if !(nu_max >= 1.0 && nu_max.is_finite()) {
        return Err(CmError::InvalidArgument(format!(
            "nu_max must be at least 1, got {nu_max}"
        )));
    }
    let mut rng = rng(seed);
    let s = draw_symplectic(modes, strength, &mut rng)?;
    let mut nus: Vec<f64> = (0..modes)
        .map(|_| {
            if nu_max > 1.0 {
                rng.gen_range(1.0..=nu_max)
            } else {
                1.0
            }
        })
        .collect();
    let diag = DVector::from_iterator(2 * modes, nus.iter().flat_map(|&nu| [nu, nu]));
    let m = s.matrix() * DMatrix::from_diagonal(&diag) * s.matrix().transpose();
    let v = CovarianceMatrix::new(symmetrize(m))?;
    nus.sort_by(|a, b| b.total_cmp(a));
    Ok((v, nus))
}

/// Random orthogonal matrix from the QR factorization of a uniform matrix.
pub fn random_orthogonal(dim: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = rng(seed);
    let m = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    m.qr().q()
}

/// Symmetric positive definite matrix `Q^T diag(u) Q`, `u` uniform in
/// `[0.1, 4]`. Usually not bona fide.
pub fn random_pd_matrix(modes: usize, seed: u64) -> Result<CovarianceMatrix> {
    if modes == 0 {
        return Err(CmError::ZeroModes);
    }
    let d = 2 * modes;
    let q = random_orthogonal(d, seed);
    let mut rng = rng(seed ^ 0x9E37_79B9_7F4A_7C15);
    let u = DVector::from_fn(d, |_, _| rng.gen_range(0.1..=4.0));
    CovarianceMatrix::new(symmetrize(q.transpose() * DMatrix::from_diagonal(&u) * q))
}
