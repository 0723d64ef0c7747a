//! Covariance matrices and mode partitions.
//!
//! Covariance matrices use the convention in which the vacuum is the
//! identity and rows are ordered `(q1, p1, q2, p2, ..., qn, pn)`. Mode
//! indices are zero-based throughout the library; only the text formats
//! (CLI partitions, JSON reports) are one-based.

use nalgebra::{Cholesky, DMatrix};

use crate::error::{CmError, Result};

/// Relative symmetry tolerance accepted by [`CovarianceMatrix::new`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A real symmetric positive definite `2n x 2n` matrix over `n` modes.
///
/// Positive definiteness is checked on construction. The bona fide
/// (uncertainty) condition is not: see [`crate::is_bona_fide`].
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_symmetry_tol(matrix, SYMMETRY_TOL)
    }

    /// Builds a covariance matrix, accepting asymmetry up to
    /// `tol * max(1, |V_jk|)` and symmetrizing the result.
    pub fn with_symmetry_tol(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols || rows % 2 != 0 {
            return Err(CmError::BadShape { rows, cols });
        }
        if rows == 0 {
            return Err(CmError::ZeroModes);
        }
        check_symmetric(&matrix, tol)?;
        let matrix = symmetrize(matrix);
        if !matrix.iter().all(|x| x.is_finite()) || Cholesky::new(matrix.clone()).is_none() {
            return Err(CmError::NotPositiveDefinite);
        }
        Ok(Self {
            modes: rows / 2,
            matrix,
        })
    }

    /// The vacuum (identity) covariance matrix.
    pub fn vacuum(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(CmError::ZeroModes);
        }
        Ok(Self {
            modes,
            matrix: DMatrix::identity(2 * modes, 2 * modes),
        })
    }

    /// Thermal-like state `nu * I` on `modes` modes.
    pub fn scaled_identity(modes: usize, nu: f64) -> Result<Self> {
        Self::new(DMatrix::identity(2 * modes, 2 * modes) * nu)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        2 * self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// Lower Cholesky factor. Exists for every value of this type.
    pub(crate) fn cholesky(&self) -> Cholesky<f64, nalgebra::Dyn> {
        Cholesky::new(self.matrix.clone()).expect("covariance matrix is positive definite")
    }

    pub fn determinant(&self) -> f64 {
        self.ln_det().exp()
    }

    /// `ln det V` from the Cholesky pivots.
    pub fn ln_det(&self) -> f64 {
        let chol = self.cholesky();
        chol.l_dirty().diagonal().iter().map(|d| 2.0 * d.ln()).sum()
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> CovarianceMatrix {
        let (d1, d2) = (self.dim(), other.dim());
        let mut m = DMatrix::zeros(d1 + d2, d1 + d2);
        m.view_mut((0, 0), (d1, d1)).copy_from(&self.matrix);
        m.view_mut((d1, d1), (d2, d2)).copy_from(&other.matrix);
        CovarianceMatrix {
            modes: self.modes + other.modes,
            matrix: m,
        }
    }

    /// Principal submatrix on the given modes, in the order given.
    pub fn reduce(&self, modes: &[usize]) -> Result<CovarianceMatrix> {
        check_modes(modes, self.modes)?;
        if modes.is_empty() {
            return Err(CmError::InvalidArgument("empty mode set".into()));
        }
        let rows = quadrature_indices(modes);
        Ok(CovarianceMatrix {
            modes: modes.len(),
            matrix: self.matrix.select_rows(&rows).select_columns(&rows),
        })
    }

    /// Conjugation `S V S^T`.
    pub fn transform(&self, s: &DMatrix<f64>) -> Result<CovarianceMatrix> {
        if s.nrows() != self.dim() || s.ncols() != self.dim() {
            return Err(CmError::ModeMismatch {
                modes: self.modes,
                dim: s.nrows(),
            });
        }
        CovarianceMatrix::new(symmetrize(s * &self.matrix * s.transpose()))
    }

    /// Reorders modes so that new mode `k` is old mode `order[k]`.
    pub fn permute_modes(&self, order: &[usize]) -> Result<CovarianceMatrix> {
        if order.len() != self.modes {
            return Err(CmError::InvalidArgument(format!(
                "permutation of length {} for {} modes",
                order.len(),
                self.modes
            )));
        }
        self.reduce(order)
    }
}

/// Row/column indices `(2k, 2k+1)` for each mode `k`.
pub(crate) fn quadrature_indices(modes: &[usize]) -> Vec<usize> {
    modes.iter().flat_map(|&k| [2 * k, 2 * k + 1]).collect()
}

pub(crate) fn check_modes(modes: &[usize], total: usize) -> Result<()> {
    for (i, &k) in modes.iter().enumerate() {
        if k >= total {
            return Err(CmError::ModeOutOfRange {
                index: k,
                modes: total,
            });
        }
        if modes[..i].contains(&k) {
            return Err(CmError::InvalidPartition(format!("mode {k} listed twice")));
        }
    }
    Ok(())
}

fn check_symmetric(m: &DMatrix<f64>, tol: f64) -> Result<()> {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (m[(i, j)], m[(j, i)]);
            let dev = (a - b).abs();
            if dev > tol * a.abs().max(b.abs()).max(1.0) || dev.is_nan() {
                return Err(CmError::NotSymmetric {
                    row: i,
                    col: j,
                    deviation: dev,
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// Ordered, pairwise disjoint, nonempty groups of modes.
///
/// Modes not covered by any group are traced out by the evaluators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    groups: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(groups: Vec<Vec<usize>>) -> Result<Self> {
        if groups.is_empty() {
            return Err(CmError::InvalidPartition("no groups".into()));
        }
        let mut seen = Vec::new();
        for g in &groups {
            if g.is_empty() {
                return Err(CmError::InvalidPartition("empty group".into()));
            }
            for &k in g {
                if seen.contains(&k) {
                    return Err(CmError::InvalidPartition(format!(
                        "mode {} appears in more than one group",
                        k + 1
                    )));
                }
                seen.push(k);
            }
        }
        Ok(Self { groups })
    }

    /// Parses `"1;2;3,4"`: groups split by `;`, one-based modes split by `,`.
    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let groups = cleaned
            .split(';')
            .map(parse_mode_list)
            .collect::<Result<Vec<_>>>()?;
        Self::new(groups)
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn validate(&self, modes: usize) -> Result<()> {
        let all: Vec<usize> = self.groups.iter().flatten().copied().collect();
        check_modes(&all, modes)
    }

    /// Concatenation of the selected groups.
    pub fn union(&self, which: &[usize]) -> Vec<usize> {
        which
            .iter()
            .flat_map(|&g| self.groups[g].iter().copied())
            .collect()
    }

    pub(crate) fn expect_groups(&self, count: usize, modes: usize) -> Result<()> {
        if self.groups.len() != count {
            return Err(CmError::InvalidPartition(format!(
                "expected {count} groups, got {}",
                self.groups.len()
            )));
        }
        self.validate(modes)
    }
}

/// Parses a comma-separated list of one-based mode indices into zero-based ones.
pub fn parse_mode_list(text: &str) -> Result<Vec<usize>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(CmError::InvalidPartition("empty group".into()));
    }
    cleaned
        .split(',')
        .map(|tok| match tok.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(CmError::InvalidPartition(format!("bad mode index '{tok}'"))),
        })
        .collect()
}
