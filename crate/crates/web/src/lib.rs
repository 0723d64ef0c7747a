//! WebAssembly bindings behind `www/index.html`.
//!
//! Each exported function has a plain Rust counterpart in [`demo`] that
//! returns flat `Vec`s, so the numerics can be tested natively.

use wasm_bindgen::prelude::*;

pub mod demo {
    use cvinfo::random::random_williamson;
    use cvinfo::{f_bound, joint_steerability_demo, logdet_entropy, scan_region, von_neumann_entropy};
    use cvinfo::{GridSpec, Result};

    pub const IN_H: u8 = 1;
    pub const IN_M: u8 = 2;
    pub const IN_D: u8 = 4;

    /// Membership flags of the three-mode triangle regions on a
    /// `points × points` grid over `[1, max]²`, row-major with `a` outer.
    pub fn region_flags(c: f64, max: f64, points: usize) -> Result<Vec<u8>> {
        let grid = GridSpec::new(1.0, max, points)?;
        Ok(scan_region(c, &grid, &grid)?
            .iter()
            .map(|p| {
                (p.in_h as u8 * IN_H) | (p.in_m as u8 * IN_M) | (p.in_d as u8 * IN_D)
            })
            .collect())
    }

    /// `[G(A→B), G(C→B), SSA residual]` for the four-mode family.
    pub fn joint_steering(a: f64, s: f64) -> Result<Vec<f64>> {
        let j = joint_steerability_demo(a, s)?;
        Ok(vec![j.g_ab, j.g_cb, j.ssa_residual])
    }

    /// `(M, H)` pairs of `count` random `modes`-mode states, interleaved.
    pub fn entropy_samples(modes: usize, count: usize, seed: u64, nu_max: f64) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(2 * count);
        for k in 0..count as u64 {
            let (v, _) = random_williamson(modes, seed.wrapping_add(k), nu_max, 1.0)?;
            out.push(logdet_entropy(&v).max(0.0));
            out.push(von_neumann_entropy(&v)?);
        }
        Ok(out)
    }

    /// `(m, f_n(m))` on `points` evenly spaced values of `m ∈ [0, m_max]`.
    pub fn bound_curve(n: usize, m_max: f64, points: usize) -> Result<Vec<f64>> {
        let grid = GridSpec::new(0.0, m_max, points)?;
        let mut out = Vec::with_capacity(2 * points);
        for m in grid.values() {
            out.push(m);
            out.push(f_bound(n, m)?);
        }
        Ok(out)
    }
}

fn js(e: cvinfo::CmError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = regionFlags)]
pub fn region_flags(c: f64, max: f64, points: usize) -> Result<Vec<u8>, JsError> {
    demo::region_flags(c, max, points).map_err(js)
}

#[wasm_bindgen(js_name = jointSteering)]
pub fn joint_steering(a: f64, s: f64) -> Result<Vec<f64>, JsError> {
    demo::joint_steering(a, s).map_err(js)
}

#[wasm_bindgen(js_name = entropySamples)]
pub fn entropy_samples(modes: usize, count: usize, seed: u32, nu_max: f64) -> Result<Vec<f64>, JsError> {
    demo::entropy_samples(modes, count, seed as u64, nu_max).map_err(js)
}

#[wasm_bindgen(js_name = boundCurve)]
pub fn bound_curve(n: usize, m_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    demo::bound_curve(n, m_max, points).map_err(js)
}
