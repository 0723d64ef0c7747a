//! Symplectic form, symplectic matrices, symplectic spectra and Schur
//! complements.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::cm::{check_modes, quadrature_indices, symmetrize, CovarianceMatrix};
use crate::error::{CmError, Result};

/// Membership tolerance for [`SymplecticMatrix::new`].
pub const SYMPLECTIC_TOL: f64 = 1e-9;
/// Relative tolerance for pairing the doubly degenerate singular values.
pub const PAIRING_TOL: f64 = 1e-7;
/// Default tolerance of the bona fide test on the smallest symplectic eigenvalue.
pub const BONA_FIDE_TOL: f64 = 1e-8;

/// The symplectic form `σ ⊕ ... ⊕ σ` with `σ = [[0, 1], [-1, 0]]`.
pub fn omega(modes: usize) -> Result<DMatrix<f64>> {
    if modes == 0 {
        return Err(CmError::ZeroModes);
    }
    let mut w = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    Ok(w)
}

/// `max |S Ω S^T - Ω| <= tol`. Non-square or odd-sized inputs are never symplectic.
pub fn is_symplectic(s: &DMatrix<f64>, tol: f64) -> bool {
    symplectic_defect(s).is_some_and(|d| d <= tol)
}

/// `max |S Ω S^T - Ω|`, or `None` for shapes that cannot be symplectic.
pub fn symplectic_defect(s: &DMatrix<f64>) -> Option<f64> {
    let (r, c) = s.shape();
    if r != c || r % 2 != 0 || r == 0 {
        return None;
    }
    let w = omega(r / 2).ok()?;
    Some((s * &w * s.transpose() - &w).amax())
}

/// A real `2n x 2n` matrix preserving the symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticMatrix {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tol(matrix, SYMPLECTIC_TOL)
    }

    pub fn with_tol(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        match symplectic_defect(&matrix) {
            Some(d) if d <= tol => Ok(Self {
                modes: matrix.nrows() / 2,
                matrix,
            }),
            Some(d) => Err(CmError::InvalidArgument(format!(
                "matrix is not symplectic (defect {d:.3e})"
            ))),
            None => Err(CmError::BadShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            }),
        }
    }

    pub fn identity(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(CmError::ZeroModes);
        }
        Ok(Self {
            modes,
            matrix: DMatrix::identity(2 * modes, 2 * modes),
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        if self.modes != rhs.modes {
            return Err(CmError::ModeMismatch {
                modes: self.modes,
                dim: rhs.matrix.nrows(),
            });
        }
        Ok(SymplecticMatrix {
            modes: self.modes,
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    /// Direct sum acting on the first modes with `self`, the rest with `other`.
    pub fn direct_sum(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        let (d1, d2) = (2 * self.modes, 2 * other.modes);
        let mut m = DMatrix::zeros(d1 + d2, d1 + d2);
        m.view_mut((0, 0), (d1, d1)).copy_from(&self.matrix);
        m.view_mut((d1, d1), (d2, d2)).copy_from(&other.matrix);
        SymplecticMatrix {
            modes: self.modes + other.modes,
            matrix: m,
        }
    }

    /// `S V S^T`.
    pub fn apply(&self, v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        v.transform(&self.matrix)
    }

    /// `S S^T`, the covariance matrix of the transformed vacuum.
    pub fn apply_to_vacuum(&self) -> CovarianceMatrix {
        CovarianceMatrix::new(symmetrize(&self.matrix * self.matrix.transpose()))
            .expect("S S^T is positive definite for invertible S")
    }
}

/// Two-mode squeezer on modes `i < j` (zero-based) of an `n`-mode system.
///
/// On the `(i, j)` block: `cosh r · I₂` on the diagonal, `sinh r · Z` off the
/// diagonal with `Z = diag(1, -1)`; identity elsewhere.
pub fn two_mode_squeezer(modes: usize, i: usize, j: usize, r: f64) -> Result<SymplecticMatrix> {
    if modes == 0 {
        return Err(CmError::ZeroModes);
    }
    check_modes(&[i, j], modes)?;
    if i >= j {
        return Err(CmError::InvalidArgument(format!(
            "squeezer modes must satisfy i < j, got ({}, {})",
            i + 1,
            j + 1
        )));
    }
    if !r.is_finite() {
        return Err(CmError::InvalidArgument("squeezing must be finite".into()));
    }
    let (ch, sh) = (r.cosh(), r.sinh());
    let mut s = DMatrix::identity(2 * modes, 2 * modes);
    for (a, b) in [(i, j), (j, i)] {
        s[(2 * a, 2 * a)] = ch;
        s[(2 * a + 1, 2 * a + 1)] = ch;
        s[(2 * a, 2 * b)] = sh;
        s[(2 * a + 1, 2 * b + 1)] = -sh;
    }
    Ok(SymplecticMatrix { modes, matrix: s })
}

/// Two-mode squeezed vacuum covariance matrix on two modes.
pub fn tmsv(r: f64) -> CovarianceMatrix {
    two_mode_squeezer(2, 0, 1, r)
        .expect("valid squeezer indices")
        .apply_to_vacuum()
}

/// Symplectic eigenvalues `ν_1 >= ... >= ν_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// Symmetric square root through the eigendecomposition.
fn sqrtm_spd(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let roots = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
    let u = &eig.eigenvectors;
    u * DMatrix::from_diagonal(&roots) * u.transpose()
}

/// Symplectic eigenvalues of `V`, sorted descending.
///
/// With `R = V^{1/2}`, the matrix `K = R Ω R` satisfies
/// `K K^T = R Ω V Ω^T R`, whose eigenvalues are the squared symplectic
/// eigenvalues with double degeneracy. The singular values of `K` are taken
/// directly, which avoids squaring the condition number. Values below one
/// are reported as they are.
pub fn symplectic_spectrum(v: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let root = sqrtm_spd(v.matrix());
    let w = omega(v.modes())?;
    let k = &root * w * &root;
    let mut sv: Vec<f64> = k.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let values = sv
        .chunks_exact(2)
        .map(|pair| {
            let (hi, lo) = (pair[0], pair[1]);
            if hi - lo > PAIRING_TOL * hi {
                Err(CmError::UnpairedSpectrum(hi, lo))
            } else {
                Ok(0.5 * (hi + lo))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymplecticSpectrum { values })
}

/// Bona fide test: the smallest symplectic eigenvalue is at least `1 - tol`.
///
/// For a positive definite `V` this is equivalent to `V + iΩ >= 0`.
pub fn is_bona_fide(v: &CovarianceMatrix, tol: f64) -> Result<bool> {
    Ok(symplectic_spectrum(v)?.min() >= 1.0 - tol)
}

/// Schur complement of the `measured` modes: `V_B - V_off^T V_A^{-1} V_off`,
/// where `B` is every other mode in ascending order.
pub fn schur_complement(v: &CovarianceMatrix, measured: &[usize]) -> Result<CovarianceMatrix> {
    check_modes(measured, v.modes())?;
    let kept: Vec<usize> = (0..v.modes()).filter(|k| !measured.contains(k)).collect();
    if measured.is_empty() || kept.is_empty() {
        return Err(CmError::InvalidArgument(
            "measured modes must be a nonempty proper subset".into(),
        ));
    }
    conditional_cm(v, measured, &kept)
}

/// Schur complement of `measured` inside the reduced matrix on `measured ∪ kept`.
pub fn conditional_cm(
    v: &CovarianceMatrix,
    measured: &[usize],
    kept: &[usize],
) -> Result<CovarianceMatrix> {
    let all: Vec<usize> = measured.iter().chain(kept).copied().collect();
    check_modes(&all, v.modes())?;
    if measured.is_empty() || kept.is_empty() {
        return Err(CmError::InvalidArgument(
            "measured and kept mode sets must both be nonempty".into(),
        ));
    }
    let (ia, ib) = (quadrature_indices(measured), quadrature_indices(kept));
    let m = v.matrix();
    let va = m.select_rows(&ia).select_columns(&ia);
    let vb = m.select_rows(&ib).select_columns(&ib);
    let off = m.select_rows(&ia).select_columns(&ib);
    let chol = va
        .cholesky()
        .expect("principal block of a positive definite matrix is positive definite");
    let solved = chol.solve(&off);
    let schur = symmetrize(vb - off.transpose() * solved);
    CovarianceMatrix::with_symmetry_tol(schur, f64::INFINITY)
}

/// Purity `(det V)^{-1/2}` of the Gaussian state with this covariance matrix.
pub fn purity(v: &CovarianceMatrix) -> f64 {
    (-0.5 * v.ln_det()).exp()
}
