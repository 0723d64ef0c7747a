//! Residuals `lhs - rhs` of entropy inequalities over partitioned
//! covariance matrices. A residual is nonnegative when the inequality holds;
//! tolerances are left to the caller.

use serde::Serialize;

use crate::cm::{CovarianceMatrix, Partition};
use crate::entropy::{f_bound, logdet_entropy, von_neumann_entropy, EntropyKind};
use crate::error::{CmError, Result};
use crate::symplectic::symplectic_spectrum;

/// Purity and spectral-shape tolerance for [`hierarchy_check`].
pub const HIERARCHY_HYPOTHESIS_TOL: f64 = 1e-6;

fn entropy_on(kind: EntropyKind, v: &CovarianceMatrix, modes: &[usize]) -> Result<f64> {
    kind.of(&v.reduce(modes)?)
}

fn m_on(v: &CovarianceMatrix, modes: &[usize]) -> Result<f64> {
    Ok(logdet_entropy(&v.reduce(modes)?))
}

/// `S_AB + S_BC - S_A - S_C` for a tripartition `A|B|C`.
pub fn ssa_residual(kind: EntropyKind, v: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    p.expect_groups(3, v.modes())?;
    let s = |which: &[usize]| entropy_on(kind, v, &p.union(which));
    Ok(s(&[0, 1])? + s(&[1, 2])? - s(&[0])? - s(&[2])?)
}

/// `S_AB + S_AC - S_A - S_ABC` for a tripartition `A|B|C`.
pub fn ssa_conditional_residual_of(
    kind: EntropyKind,
    v: &CovarianceMatrix,
    p: &Partition,
) -> Result<f64> {
    p.expect_groups(3, v.modes())?;
    let s = |which: &[usize]| entropy_on(kind, v, &p.union(which));
    Ok(s(&[0, 1])? + s(&[0, 2])? - s(&[0])? - s(&[0, 1, 2])?)
}

/// `S_AB - |S_A - S_B|` for a bipartition `A|B`.
pub fn triangle_residual_of(kind: EntropyKind, v: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    p.expect_groups(2, v.modes())?;
    let s = |which: &[usize]| entropy_on(kind, v, &p.union(which));
    Ok(s(&[0, 1])? - (s(&[0])? - s(&[1])?).abs())
}

/// Strong subadditivity of the log-determinant: `M_AB + M_BC - M_A - M_C`.
///
/// Nonnegative for every bona fide covariance matrix.
pub fn ssa_logdet_residual(v: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    p.expect_groups(3, v.modes())?;
    let m = |which: &[usize]| m_on(v, &p.union(which));
    Ok(m(&[0, 1])? + m(&[1, 2])? - m(&[0])? - m(&[2])?)
}

/// `M_A + M_B - M_AB`; zero iff the off-diagonal block vanishes.
pub fn subadditivity_residual(v: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    p.expect_groups(2, v.modes())?;
    let m = |which: &[usize]| m_on(v, &p.union(which));
    Ok(m(&[0])? + m(&[1])? - m(&[0, 1])?)
}

/// `M_AB + M_AC - M_A - M_ABC`. Needs only positive definiteness.
pub fn ssa_conditional_residual(v: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    ssa_conditional_residual_of(EntropyKind::LogDet, v, p)
}

/// `M_AB - |M_A - M_B|`.
pub fn triangle_residuals(v: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    triangle_residual_of(EntropyKind::LogDet, v, p)
}

/// `H_AB + H_BC - H_A - H_C` with von Neumann entropies.
pub fn vn_ssa_residual(v: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    ssa_residual(EntropyKind::VonNeumann, v, p)
}

/// All residuals of one functional over a tripartition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripartiteResiduals {
    pub kind: EntropyKind,
    /// `S_AB + S_BC - S_A - S_C`
    pub ssa: f64,
    /// `S_AB + S_AC - S_A - S_ABC`
    pub ssa_conditional: f64,
    /// `S_XY - |S_X - S_Y|` for the pairs `(A,B)`, `(B,C)`, `(A,C)`.
    pub triangle: [f64; 3],
}

pub fn tripartite_residuals(
    kind: EntropyKind,
    v: &CovarianceMatrix,
    p: &Partition,
) -> Result<TripartiteResiduals> {
    p.expect_groups(3, v.modes())?;
    let g = p.groups();
    let mut triangle = [0.0; 3];
    for (slot, (x, y)) in triangle.iter_mut().zip([(0, 1), (1, 2), (0, 2)]) {
        let pair = Partition::new(vec![g[x].clone(), g[y].clone()])?;
        *slot = triangle_residual_of(kind, v, &pair)?;
    }
    Ok(TripartiteResiduals {
        kind,
        ssa: ssa_residual(kind, v, p)?,
        ssa_conditional: ssa_conditional_residual_of(kind, v, p)?,
        triangle,
    })
}

/// The chain `H_A = f_1(M_A) <= f_1(M_B + M_C) <= f_1(M_B) + f_1(M_C) <= H_B + H_C`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HierarchyReport {
    pub h_a: f64,
    /// Successive slacks:
    /// `f_1(M_B + M_C) - f_1(M_A)`,
    /// `f_1(M_B) + f_1(M_C) - f_1(M_B + M_C)`,
    /// `H_B + H_C - f_1(M_B) - f_1(M_C)`.
    pub chain: [f64; 3],
}

impl HierarchyReport {
    /// Sum of the chain, `H_B + H_C - H_A`.
    pub fn total(&self) -> f64 {
        self.chain.iter().sum()
    }
}

/// Evaluates the von Neumann SSA chain for a pure tripartite state whose
/// `A` marginal has symplectic spectrum `{1, ..., 1, ν}`.
///
/// Both hypotheses are checked to [`HIERARCHY_HYPOTHESIS_TOL`]; a violation
/// is an error.
pub fn hierarchy_check(v: &CovarianceMatrix, p: &Partition) -> Result<HierarchyReport> {
    p.expect_groups(3, v.modes())?;
    let total = p.union(&[0, 1, 2]);
    let m_abc = m_on(v, &total)?;
    if m_abc.abs() > HIERARCHY_HYPOTHESIS_TOL {
        return Err(CmError::Hypothesis(format!(
            "state is not pure (ln det V = {m_abc:.3e})"
        )));
    }
    let va = v.reduce(&p.groups()[0])?;
    let spectrum = symplectic_spectrum(&va)?;
    let extra = spectrum.values()[1..]
        .iter()
        .map(|nu| (nu - 1.0).abs())
        .fold(0.0, f64::max);
    if extra > HIERARCHY_HYPOTHESIS_TOL {
        return Err(CmError::Hypothesis(format!(
            "A marginal has more than one non-vacuum symplectic eigenvalue ({:?})",
            spectrum.values()
        )));
    }
    let vb = v.reduce(&p.groups()[1])?;
    let vc = v.reduce(&p.groups()[2])?;
    let (m_a, m_b, m_c) = (logdet_entropy(&va), logdet_entropy(&vb), logdet_entropy(&vc));
    let f1 = |m: f64| f_bound(1, m.max(0.0));
    let h_a = von_neumann_entropy(&va)?;
    let h_bc = von_neumann_entropy(&vb)? + von_neumann_entropy(&vc)?;
    Ok(HierarchyReport {
        h_a,
        chain: [
            f1(m_b + m_c)? - f1(m_a)?,
            f1(m_b)? + f1(m_c)? - f1(m_b + m_c)?,
            h_bc - f1(m_b)? - f1(m_c)?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_cm;
    use crate::symplectic::{tmsv, two_mode_squeezer};

    fn part(text: &str) -> Partition {
        Partition::parse(text).unwrap()
    }

    #[test]
    fn ssa_saturation_cases() {
        for seed in 0..10 {
            let v = random_cm(4, seed, 1.0).unwrap();
            let r = ssa_logdet_residual(&v, &part("1;2;3,4")).unwrap();
            assert!(r.abs() <= 1e-7, "seed {seed}: {r}");
        }
        let vac = random_cm(2, 3, 3.0).unwrap();
        let vb = random_cm(1, 4, 1.0).unwrap();
        let v = vac.direct_sum(&vb).permute_modes(&[0, 2, 1]).unwrap();
        let r = ssa_logdet_residual(&v, &part("1;2;3")).unwrap();
        assert!(r.abs() <= 1e-8, "{r}");
    }

    #[test]
    fn ssa_rejects_wrong_group_count() {
        let v = CovarianceMatrix::vacuum(3).unwrap();
        assert!(ssa_logdet_residual(&v, &part("1;2")).is_err());
        assert!(subadditivity_residual(&v, &part("1;2;3")).is_err());
        assert!(ssa_logdet_residual(&v, &part("1;2;4")).is_err());
    }

    #[test]
    fn subadditivity_cases() {
        let a = random_cm(1, 1, 3.0).unwrap();
        let b = random_cm(2, 2, 3.0).unwrap();
        let r = subadditivity_residual(&a.direct_sum(&b), &part("1;2,3")).unwrap();
        assert!(r.abs() <= 1e-12);
        let rr: f64 = 0.6;
        let r = subadditivity_residual(&tmsv(rr), &part("1;2")).unwrap();
        assert!((r - 4.0 * (2.0 * rr).cosh().ln()).abs() < 1e-12);
    }

    #[test]
    fn conditional_ssa_cases() {
        let v = CovarianceMatrix::vacuum(3).unwrap();
        assert_eq!(ssa_conditional_residual(&v, &part("1;2;3")).unwrap(), 0.0);
        let v = random_cm(3, 9, 1.0).unwrap();
        let r = ssa_conditional_residual(&v, &part("1;2;3")).unwrap();
        let direct = m_on(&v, &[0, 1]).unwrap() + m_on(&v, &[0, 2]).unwrap() - m_on(&v, &[0]).unwrap();
        assert!((r - direct).abs() < 1e-8 && r >= -1e-8);
    }

    #[test]
    fn triangle_cases() {
        let a = CovarianceMatrix::scaled_identity(1, 2.0).unwrap();
        let v = a.direct_sum(&a);
        let r = triangle_residuals(&v, &part("1;2")).unwrap();
        assert!((r - logdet_entropy(&v)).abs() < 1e-14);
        let r = triangle_residuals(&tmsv(0.9), &part("1;2")).unwrap();
        assert!(r.abs() < 1e-10);
    }

    #[test]
    fn vn_ssa_pure_state_is_zero() {
        let r = vn_ssa_residual(&CovarianceMatrix::vacuum(3).unwrap(), &part("1;2;3")).unwrap();
        assert!(r.abs() < 1e-12);
        for seed in 0..5 {
            let v = random_cm(3, seed, 1.0).unwrap();
            let r = vn_ssa_residual(&v, &part("1;2;3")).unwrap();
            assert!(r.abs() <= 1e-7, "seed {seed}: {r}");
        }
    }

    #[test]
    fn tripartite_bundle_matches_individual_residuals() {
        let v = random_cm(4, 11, 2.0).unwrap();
        let p = part("1;2;3,4");
        let t = tripartite_residuals(EntropyKind::LogDet, &v, &p).unwrap();
        assert_eq!(t.ssa, ssa_logdet_residual(&v, &p).unwrap());
        assert_eq!(t.ssa_conditional, ssa_conditional_residual(&v, &p).unwrap());
        assert_eq!(t.triangle[0], triangle_residuals(&v, &part("1;2")).unwrap());
        assert!(t.triangle.iter().all(|&x| x >= -1e-8));
    }

    #[test]
    fn hierarchy_on_vacuum_and_pure_states() {
        let rep = hierarchy_check(&CovarianceMatrix::vacuum(3).unwrap(), &part("1;2;3")).unwrap();
        assert_eq!(rep.h_a, 0.0);
        assert!(rep.chain.iter().all(|&x| x.abs() < 1e-15));
        for seed in 0..10 {
            let rep = hierarchy_check(&random_cm(3, seed, 1.0).unwrap(), &part("1;2;3")).unwrap();
            assert!(rep.chain.iter().all(|&x| x >= -1e-8), "{rep:?}");
        }
    }

    #[test]
    fn hierarchy_with_two_mode_a() {
        // mode 1 stays vacuum; mode 2 is entangled with modes 3 and 4
        let s = two_mode_squeezer(4, 2, 3, 0.5)
            .unwrap()
            .compose(&two_mode_squeezer(4, 1, 2, 0.8).unwrap())
            .unwrap();
        let v = s.apply_to_vacuum();
        let rep = hierarchy_check(&v, &part("1,2;3;4")).unwrap();
        assert!(rep.h_a > 0.1);
        assert!(rep.chain.iter().all(|&x| x >= -1e-8), "{rep:?}");
        assert!(rep.total() >= -1e-8);
    }

    #[test]
    fn hierarchy_reports_hypothesis_violations() {
        let mixed = random_cm(3, 1, 3.0).unwrap();
        assert!(matches!(
            hierarchy_check(&mixed, &part("1;2;3")),
            Err(CmError::Hypothesis(_))
        ));
        // both A modes entangled with the rest
        let s = two_mode_squeezer(4, 0, 2, 0.5)
            .unwrap()
            .compose(&two_mode_squeezer(4, 1, 3, 0.8).unwrap())
            .unwrap();
        assert!(matches!(
            hierarchy_check(&s.apply_to_vacuum(), &part("1,2;3;4")),
            Err(CmError::Hypothesis(_))
        ));
    }
}
