//! Conjugation-invariant Gaussian test functions in Frobenius distance.

use std::f64::consts::PI;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit_classifier::RationalMatrix3;

/// Real 3×3 matrix, row-major.
pub type Mat3 = [[f64; 3]; 3];

/// Test-function family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// exp(−‖x − C‖²_F / 2σ²), averaged over conjugation by SO(3).
    GaussianFrobenius,
}

/// Tensor Euler-angle (ZYZ) rule on SO(3): Gauss–Legendre in cos β and the
/// trapezoid rule in α and γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerRule {
    /// Gauss–Legendre nodes in cos β.
    pub polar: usize,
    /// Trapezoid nodes in each of α and γ.
    pub azimuth: usize,
}

impl Default for EulerRule {
    fn default() -> Self {
        EulerRule { polar: 10, azimuth: 12 }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let n = n.max(1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn rot_z(a: f64) -> Mat3 {
    let (s, c) = a.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

fn rot_y(cb: f64) -> Mat3 {
    let sb = (1.0 - cb * cb).max(0.0).sqrt();
    [[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]]
}

/// Matrix product of real 3×3 matrices.
pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Transpose of a real 3×3 matrix.
pub fn transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

impl EulerRule {
    /// Rotations with Haar weights summing to 1.
    pub fn rotations(&self) -> Vec<(f64, Mat3)> {
        let gl = gauss_legendre(self.polar);
        let m = self.azimuth;
        let mut out = Vec::with_capacity(gl.len() * m * m);
        for &(cb, wb) in &gl {
            for i in 0..m {
                let a = 2.0 * PI * i as f64 / m as f64;
                for j in 0..m {
                    let g = 2.0 * PI * j as f64 / m as f64;
                    let r = mat_mul(&mat_mul(&rot_z(a), &rot_y(cb)), &rot_z(g));
                    out.push((wb / (2.0 * (m * m) as f64), r));
                }
            }
        }
        out
    }
}

/// One Gaussian term w·exp(−‖x − C‖²_F / 2σ²), pre-averaged over SO(3).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianTerm {
    /// Linear weight of the term.
    pub weight: f64,
    /// Center matrix C.
    pub center: RationalMatrix3,
    /// Width σ > 0.
    pub sigma: f64,
    /// Averaging rule; None for scalar centers, where averaging is trivial.
    pub k_average: Option<EulerRule>,
    #[serde(skip)]
    nodes: Vec<(f64, Mat3)>,
}

/// A finite linear combination of Gaussian terms. Every term is invariant
/// under conjugation by orthogonal matrices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestFunction {
    /// The family of every term.
    pub family: Family,
    /// Terms; the empty list is the zero function.
    pub terms: Vec<GaussianTerm>,
    /// Always true; recorded for the output echo.
    pub conjugation_invariant: bool,
}

fn is_scalar(m: &RationalMatrix3) -> bool {
    let e = &m.entries;
    (0..3).all(|i| (0..3).all(|j| i == j || e[i][j].is_zero())) && e[0][0] == e[1][1] && e[1][1] == e[2][2]
}

impl TestFunction {
    /// The zero function.
    pub fn zero() -> Self {
        TestFunction { family: Family::GaussianFrobenius, terms: Vec::new(), conjugation_invariant: true }
    }

    /// A single Gaussian with the default averaging rule for non-scalar centers.
    pub fn gaussian(center: RationalMatrix3, sigma: f64) -> Result<Self> {
        Self::gaussian_with_rule(center, sigma, EulerRule::default())
    }

    /// A single Gaussian with an explicit SO(3) averaging rule.
    pub fn gaussian_with_rule(center: RationalMatrix3, sigma: f64, rule: EulerRule) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidInput(format!("sigma must be positive, got {sigma}")));
        }
        let c = center.to_f64();
        let (k_average, nodes) = if is_scalar(&center) {
            (None, vec![(1.0, c)])
        } else {
            let nodes = rule
                .rotations()
                .into_iter()
                .map(|(w, k)| (w, mat_mul(&mat_mul(&k, &c), &transpose(&k))))
                .collect();
            (Some(rule), nodes)
        };
        let term = GaussianTerm { weight: 1.0, center, sigma, k_average, nodes };
        Ok(TestFunction { family: Family::GaussianFrobenius, terms: vec![term], conjugation_invariant: true })
    }

    /// Multiplies every term by `w`.
    pub fn scaled(mut self, w: f64) -> Self {
        for t in &mut self.terms {
            t.weight *= w;
        }
        self
    }

    /// The sum of two test functions.
    pub fn plus(mut self, other: TestFunction) -> Self {
        self.terms.extend(other.terms);
        self
    }

    /// Evaluates at a real matrix.
    pub fn eval(&self, x: &Mat3) -> f64 {
        let mut total = 0.0;
        for t in &self.terms {
            let inv = 1.0 / (2.0 * t.sigma * t.sigma);
            total += t.weight * Self::term_at(t, x, inv);
        }
        total
    }

    /// Evaluates at z·n(ν₁₂, ν₁₃, ν₂₃).
    pub fn eval_zn(&self, z: f64, n12: f64, n13: f64, n23: f64) -> f64 {
        let off = z * z * (n12 * n12 + n13 * n13 + n23 * n23);
        let mut total = 0.0;
        for t in &self.terms {
            let inv = 1.0 / (2.0 * t.sigma * t.sigma);
            if t.k_average.is_none() {
                let d = z - t.nodes[0].1[0][0];
                total += t.weight * (-(3.0 * d * d + off) * inv).exp();
            } else {
                let x = [[z, z * n12, z * n13], [0.0, z, z * n23], [0.0, 0.0, z]];
                total += t.weight * Self::term_at(t, &x, inv);
            }
        }
        total
    }

    fn term_at(t: &GaussianTerm, x: &Mat3, inv: f64) -> f64 {
        let mut acc = 0.0;
        for (w, c) in &t.nodes {
            let mut d2 = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    let d = x[i][j] - c[i][j];
                    d2 += d * d;
                }
            }
            acc += w * (-d2 * inv).exp();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{q, qi};

    #[test]
    fn legendre_rule_is_exact() {
        let gl = gauss_legendre(6);
        for d in 0..12 {
            let s: f64 = gl.iter().map(|(x, w)| w * x.powi(d)).sum();
            let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
            assert!((s - exact).abs() < 1e-14, "degree {d}");
        }
    }

    #[test]
    fn rotations_are_orthogonal_and_weights_sum_to_one() {
        let r = EulerRule { polar: 4, azimuth: 5 }.rotations();
        let w: f64 = r.iter().map(|(w, _)| w).sum();
        assert!((w - 1.0).abs() < 1e-14);
        for (_, k) in &r {
            let p = mat_mul(k, &transpose(k));
            for i in 0..3 {
                for j in 0..3 {
                    assert!((p[i][j] - (i == j) as u8 as f64).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn upper_triangular_fast_path_matches_general() {
        let f = TestFunction::gaussian(RationalMatrix3::scalar(q(3, 2)), 0.8).unwrap();
        let g = TestFunction::gaussian_with_rule(RationalMatrix3::unipotent(qi(1), qi(0), qi(0)), 1.1, EulerRule { polar: 3, azimuth: 4 }).unwrap();
        let h = f.plus(g);
        let (z, a, b, c) = (1.3, 0.4, -0.7, 0.2);
        let x = [[z, z * a, z * b], [0.0, z, z * c], [0.0, 0.0, z]];
        assert!((h.eval_zn(z, a, b, c) - h.eval(&x)).abs() < 1e-15);
    }

    #[test]
    fn scalar_center_values() {
        let f = TestFunction::gaussian(RationalMatrix3::identity(), 1.0).unwrap();
        assert_eq!(f.eval_zn(1.0, 0.0, 0.0, 0.0), 1.0);
        assert!((f.eval_zn(1.0, 1.0, 0.0, 2.0) - (-2.5f64).exp()).abs() < 1e-15);
        assert!(f.terms[0].k_average.is_none());
        assert_eq!(TestFunction::zero().eval_zn(1.0, 0.3, 0.2, 0.1), 0.0);
        assert!(TestFunction::gaussian(RationalMatrix3::identity(), 0.0).is_err());
    }

    #[test]
    fn linear_combinations() {
        let a = TestFunction::gaussian(RationalMatrix3::identity(), 1.0).unwrap();
        let b = TestFunction::gaussian(RationalMatrix3::scalar(q(1, 2)), 0.7).unwrap();
        let s = a.clone().scaled(2.0).plus(b.clone());
        let x = [[1.0, 0.3, -0.2], [0.0, 1.0, 0.5], [0.0, 0.0, 1.0]];
        assert!((s.eval(&x) - 2.0 * a.eval(&x) - b.eval(&x)).abs() < 1e-15);
    }

    #[test]
    fn averaged_center_is_nearly_conjugation_invariant() {
        let c = RationalMatrix3::unipotent(qi(1), qi(0), qi(0));
        let f = TestFunction::gaussian(c, 1.0).unwrap();
        let x = [[1.0, 0.4, 0.1], [0.0, 1.0, -0.3], [0.0, 0.0, 1.0]];
        let k = mat_mul(&mat_mul(&rot_z(0.37), &rot_y(0.2f64.cos())), &rot_z(1.9));
        let y = mat_mul(&mat_mul(&transpose(&k), &x), &k);
        let (fx, fy) = (f.eval(&x), f.eval(&y));
        assert!((fx - fy).abs() < 1e-6 * fx, "{fx} vs {fy}");
    }
}
