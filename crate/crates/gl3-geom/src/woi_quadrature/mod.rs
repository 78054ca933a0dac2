//! Archimedean weighted orbital integrals of unipotent elements with their
//! closed-form logarithmic weights, evaluated by adaptive quadrature.
//!
//! Coordinates on N₀ are n(ν₁₂, ν₁₃, ν₂₃), the upper unitriangular matrix
//! with those entries. Every integrand is a test function evaluated at z·n
//! times a weight that is polynomial in log|ν| and in the truncation
//! parameter T = T₁(e₁ − e₂) + T₂(e₂ − e₃).

pub mod engine;
pub mod test_function;

use std::f64::consts::LN_2;

use serde::Serialize;

pub use engine::{integrate_line, integrate_rn, pairwise_sum, Estimate, QuadratureSpec};
pub use test_function::{EulerRule, Family, GaussianTerm, Mat3, TestFunction};

use crate::error::{Error, Result};
use crate::orbit_classifier::UnipotentSubtype;

/// How the bounded, undetermined part of a weight is treated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ConstantMode {
    /// The constant is omitted.
    DropO1,
    /// The constant c is added to the weight.
    UserConstant(f64),
}

/// Truncation parameter and constant handling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightParams {
    /// Coefficient of e₁ − e₂ in T.
    pub t1: f64,
    /// Coefficient of e₂ − e₃ in T.
    pub t2: f64,
    /// Treatment of the additive constant.
    pub constant_mode: ConstantMode,
}

impl Default for WeightParams {
    fn default() -> Self {
        WeightParams { t1: 0.0, t2: 0.0, constant_mode: ConstantMode::DropO1 }
    }
}

fn require_zero_split(spec: &QuadratureSpec) -> Result<()> {
    spec.validate()?;
    if spec.singularity_splits.contains(&0.0) {
        Ok(())
    } else {
        Err(Error::InvalidInput("singularity_splits must contain 0 for logarithmic weights".into()))
    }
}

fn ln_abs(x: f64) -> f64 {
    x.abs().ln()
}

fn with_constant(
    base: Estimate,
    mode: ConstantMode,
    plain: impl FnOnce() -> Result<Estimate>,
) -> Result<Estimate> {
    match mode {
        ConstantMode::DropO1 => Ok(base),
        ConstantMode::UserConstant(c) => {
            let p = plain()?;
            Ok(Estimate { value: base.value + c * p.value, error: base.error + c.abs() * p.error })
        }
    }
}

/// ½((ln|v₁|)² + (ln|v₃|)²) + 2 ln|v₁| ln|v₃| + 3 ln2 ln|v₁v₃|.
pub fn weight_m0(v1: f64, v3: f64) -> f64 {
    let (l1, l3) = (ln_abs(v1), ln_abs(v3));
    0.5 * (l1 * l1 + l3 * l3) + 2.0 * l1 * l3 + 3.0 * LN_2 * (l1 + l3)
}

/// ½ ln(4(v₂² + v₃²)).
pub fn weight_m21(v2: f64, v3: f64) -> f64 {
    0.5 * (4.0 * (v2 * v2 + v3 * v3)).ln()
}

/// The M₀ weight with truncation parameter, without its constant.
pub fn weight_m0_t(n12: f64, n23: f64, t1: f64, t2: f64) -> f64 {
    let (l12, l23) = (ln_abs(n12), ln_abs(n23));
    0.5 * (l12 * l12 + l23 * l23 + 4.0 * l12 * l23)
        + 3.0 * t2 * (LN_2 + l12)
        + 3.0 * t1 * (LN_2 + l23)
        + 3.0 * ln_abs(2.0 * n12 * n23)
        - 1.5 * t1 * t1
        - 1.5 * t2 * t2
        + 6.0 * t1 * t2
}

/// The M₂₁ weight with truncation parameter; `with_u` selects the weight
/// attached to z·n(u₁₂, 0, 0), whose u₁₂ is the ν₁₂ coordinate of N₀.
pub fn weight_m21_t(n12: f64, n13: f64, n23: f64, t1: f64, t2: f64, with_u: bool) -> f64 {
    if with_u {
        ln_abs(n12 * n23) + t1 + t2 + 2.0 * LN_2
    } else {
        0.5 * (n13 * n13 + n23 * n23).ln() + LN_2 + t1 + t2
    }
}

/// J_{M₀}(1, f) = ∫∫ f(n(v₁, 0, v₃)) g(v₁, v₃) dv₁ dv₃.
pub fn j_m0(f: &TestFunction, spec: &QuadratureSpec, params: &WeightParams) -> Result<Estimate> {
    require_zero_split(spec)?;
    let g = |x: &[f64; 3]| f.eval_zn(1.0, x[0], 0.0, x[1]) * weight_m0(x[0], x[1]);
    let base = integrate_rn(&g, 2, spec)?;
    with_constant(base, params.constant_mode, || {
        integrate_rn(&|x: &[f64; 3]| f.eval_zn(1.0, x[0], 0.0, x[1]), 2, spec)
    })
}

/// J_{M₂₁}(1, f) = ∫∫ f(n(0, v₂, v₃)) ½ ln(4(v₂² + v₃²)) dv₂ dv₃.
pub fn j_m21(f: &TestFunction, spec: &QuadratureSpec) -> Result<Estimate> {
    require_zero_split(spec)?;
    let g = |x: &[f64; 3]| f.eval_zn(1.0, 0.0, x[0], x[1]) * weight_m21(x[0], x[1]);
    integrate_rn(&g, 2, spec)
}

/// J^T_{M₀}(z, f) over N₀ = {n(ν₁₂, ν₁₃, ν₂₃)}, ν₁₃ unweighted.
pub fn j_m0_t(z: f64, f: &TestFunction, spec: &QuadratureSpec, params: &WeightParams) -> Result<Estimate> {
    require_zero_split(spec)?;
    let (t1, t2) = (params.t1, params.t2);
    let g = |x: &[f64; 3]| f.eval_zn(z, x[0], x[2], x[1]) * weight_m0_t(x[0], x[1], t1, t2);
    let base = integrate_rn(&g, 3, spec)?;
    with_constant(base, params.constant_mode, || j_g_unipotent(z, UnipotentSubtype::Reg, f, spec))
}

/// J^T_{M₂₁}(z, f) over N₂₁ (with_u = false) or J^T_{M₂₁}(z·u, f) over N₀
/// (with_u = true, with c_∞ = 1).
pub fn j_m21_t(z: f64, f: &TestFunction, spec: &QuadratureSpec, params: &WeightParams, with_u: bool) -> Result<Estimate> {
    require_zero_split(spec)?;
    let (t1, t2) = (params.t1, params.t2);
    if with_u {
        let g = |x: &[f64; 3]| f.eval_zn(z, x[0], x[2], x[1]) * weight_m21_t(x[0], x[2], x[1], t1, t2, true);
        integrate_rn(&g, 3, spec)
    } else {
        let g = |x: &[f64; 3]| f.eval_zn(z, 0.0, x[0], x[1]) * weight_m21_t(0.0, x[0], x[1], t1, t2, false);
        integrate_rn(&g, 2, spec)
    }
}

/// Plain integrals J_G(z·n(0,1,0), f) over N₂₁ (Min) and J_G(z·n(1,0,1), f)
/// over N₀ (Reg), with c_∞ = 1.
pub fn j_g_unipotent(z: f64, subtype: UnipotentSubtype, f: &TestFunction, spec: &QuadratureSpec) -> Result<Estimate> {
    match subtype {
        UnipotentSubtype::Min => integrate_rn(&|x: &[f64; 3]| f.eval_zn(z, 0.0, x[0], x[1]), 2, spec),
        UnipotentSubtype::Reg => integrate_rn(&|x: &[f64; 3]| f.eval_zn(z, x[0], x[2], x[1]), 3, spec),
        UnipotentSubtype::Tri => Err(Error::InvalidInput(
            "the trivial class has no orbital integral over N; use the trivial class term".into(),
        )),
    }
}
