//! # cvinfo
//!
//! Information measures on covariance matrices of continuous-variable
//! (bosonic mode) systems.
//!
//! - [`symplectic`]: symplectic form, symplectic matrices, symplectic
//!   spectra, Schur complements.
//! - [`entropy`]: log-determinant `M = ln det V`, von Neumann entropy `H`,
//!   sqrt-determinant `D = sqrt(det V) - 1`, and the bounds `f_1(M) <= H <= f_n(M)`.
//! - [`inequalities`]: residuals of subadditivity, strong subadditivity and
//!   triangle inequalities over mode partitions.
//! - [`region`]: the three-mode triangle regions for `H`, `M`, `D`.
//! - [`steering`]: Reid products, Schur-complement steering criterion,
//!   Gaussian steerability and its monogamy for a single steered mode.
//!
//! Covariance matrices are normalized so that the vacuum is the identity.
//! Mode indices are zero-based in the API.
//!
//! ```
//! use cvinfo::{gaussian_steerability, symplectic::tmsv};
//!
//! let report = gaussian_steerability(&tmsv(0.5), &[0]).unwrap();
//! assert!((report.g - 1f64.cosh().ln()).abs() < 1e-12);
//! ```

#![forbid(unsafe_code)]

pub mod cm;
pub mod entropy;
pub mod error;
pub mod inequalities;
pub mod io;
pub mod random;
pub mod region;
pub mod steering;
pub mod symplectic;

pub use cm::{CovarianceMatrix, Partition};
pub use entropy::{
    entropy_bounds_residuals, f_bound, logdet_entropy, renyi2_entropy, sqrt_det_entropy,
    von_neumann_entropy, BoundSlacks, EntropyKind,
};
pub use error::{CmError, Result};
pub use inequalities::{
    hierarchy_check, ssa_conditional_residual, ssa_logdet_residual, subadditivity_residual,
    triangle_residuals, tripartite_residuals, vn_ssa_residual, HierarchyReport,
    TripartiteResiduals,
};
pub use random::{random_cm, random_pd_matrix, random_symplectic};
pub use region::{scan_region, three_mode_region_member, GridSpec, RegionPoint};
pub use steering::{
    four_mode_example_cm, gaussian_steerability, joint_steerability_demo, min_reid,
    monogamy_check, reid_product, steering_criterion, MonogamyVerdict, SteeringReport,
};
pub use symplectic::{
    is_bona_fide, is_symplectic, omega, purity, schur_complement, symplectic_spectrum,
    two_mode_squeezer, SymplecticMatrix, SymplecticSpectrum,
};
