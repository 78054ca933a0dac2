//! Convex-hull weight functions on 𝔞₀^G.
//!
//! * [`hull_volume_direct`]: area of the convex hull of a vertex family by
//!   monotone-chain hull and the shoelace formula.
//! * [`hull_volume_limit`]: the same area from the chamber sum
//!   Σ_s exp⟨λ,Y_s⟩ / (⟨λ,s⁻¹α⟩⟨λ,s⁻¹β⟩) in the limit λ → 0 along a ray,
//!   scaled by √3, the area of the parallelogram spanned by the simple coroots.
//!   The denominators use ⟨λ,η⟩ (not exp⟨λ,η⟩).
//! * [`interval_weight_m21`] and [`c_m0_weight`]: the weights for the M₂₁ hull
//!   and for the unipotent M₀ case.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::{gram_constant, positive_roots, Parabolic, WeylElement};

/// Real vector in 𝔞₀ ≅ ℝ³.
pub type Vec3 = [f64; 3];

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Orthogonal projection onto the sum-zero plane 𝔞₀^G.
pub fn project_sum_zero(v: &Vec3) -> Vec3 {
    let m = (v[0] + v[1] + v[2]) / 3.0;
    [v[0] - m, v[1] - m, v[2] - m]
}

/// Isometry 𝔞₀^G → ℝ² in the orthonormal basis (1,−1,0)/√2, (1,1,−2)/√6.
pub fn embed(v: &Vec3) -> [f64; 2] {
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    [(v[0] - v[1]) / s2, (v[0] + v[1] - 2.0 * v[2]) / s6]
}

/// A vertex family {Y_s : s ∈ S₃} in the sum-zero plane, indexed in the order
/// of [`WeylElement::all`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullSpec {
    /// Y_s for each s, coordinate sum 0.
    pub vertices: [Vec3; 6],
}

fn f64_matrix_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// H₀(g) for the Iwasawa decomposition g = n·a·k with n upper unitriangular,
/// a positive diagonal and k orthogonal; returns log a.
///
/// Uses g·gᵀ = n a² nᵀ: a₃² is the (3,3) entry, a₂²a₃² the lower-right 2×2
/// minor and a₁²a₂²a₃² the determinant.
pub fn iwasawa_h0(g: &[[f64; 3]; 3]) -> Result<Vec3> {
    let mut s = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            s[i][j] = (0..3).map(|k| g[i][k] * g[j][k]).sum();
        }
    }
    let m1 = s[2][2];
    let m2 = s[1][1] * s[2][2] - s[1][2] * s[2][1];
    let m3 = s[0][0] * m2 - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
        + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
    if !(m1 > 0.0 && m2 > 0.0 && m3 > 0.0) {
        return Err(Error::SingularMatrix);
    }
    Ok([0.5 * (m3 / m2).ln(), 0.5 * (m2 / m1).ln(), 0.5 * m1.ln()])
}

impl HullSpec {
    /// Builds a spec from explicit vertices, projecting each onto 𝔞₀^G.
    pub fn from_vertices(vertices: [Vec3; 6]) -> Self {
        Self { vertices: vertices.map(|v| project_sum_zero(&v)) }
    }

    /// Builds Y_s = s⁻¹T − s⁻¹H_s from T and the family H_s = H₀(w_s x).
    pub fn from_group_data(t: &Vec3, h: &[Vec3; 6]) -> Self {
        let all = WeylElement::all();
        let mut vertices = [[0.0; 3]; 6];
        for (i, s) in all.iter().enumerate() {
            vertices[i] = s.inverse().act_f64(&sub(t, &h[i]));
        }
        Self::from_vertices(vertices)
    }

    /// Builds the family of an element x ∈ GL(3, ℝ) and truncation point T.
    pub fn from_element(x: &[[f64; 3]; 3], t: &Vec3) -> Result<Self> {
        let mut h = [[0.0; 3]; 6];
        for (i, s) in WeylElement::all().iter().enumerate() {
            let w = s.matrix().map(|row| row.map(|e| e as f64));
            h[i] = iwasawa_h0(&f64_matrix_mul(&w, x))?;
        }
        Ok(Self::from_group_data(t, &h))
    }

    /// Checks that the family is positive and orthogonal: for each s and each
    /// simple root γ, Y_s − Y_{r_γ s} is a non-negative multiple of s⁻¹γ.
    pub fn is_positive_orthogonal(&self, tol: f64) -> bool {
        let all = WeylElement::all();
        let reflections = [WeylElement { perm: [1, 0, 2] }, WeylElement { perm: [0, 2, 1] }];
        let simple = [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0]];
        for (i, s) in all.iter().enumerate() {
            for (r, gamma) in reflections.iter().zip(simple.iter()) {
                let neighbour = r.compose(s);
                let j = all.iter().position(|w| *w == neighbour).expect("closed");
                let d = sub(&self.vertices[i], &self.vertices[j]);
                let root = s.inverse().act_f64(gamma);
                let c = dot(&d, &root) / 2.0;
                let residual = sub(&d, &[c * root[0], c * root[1], c * root[2]]);
                if c < -tol || dot(&residual, &residual).sqrt() > tol * (1.0 + c.abs()) {
                    return false;
                }
            }
        }
        true
    }

    /// Translates every vertex by `v` (projected to 𝔞₀^G).
    pub fn translated(&self, v: &Vec3) -> Self {
        let p = project_sum_zero(v);
        Self { vertices: self.vertices.map(|y| [y[0] + p[0], y[1] + p[1], y[2] + p[2]]) }
    }

    /// Multiplies every vertex by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self { vertices: self.vertices.map(|y| y.map(|x| c * x)) }
    }
}

fn cross(o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull of planar points (Andrew's monotone chain), counter-clockwise.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for p in pts.iter() {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    hull
}

/// Shoelace area of a simple polygon given in order.
pub fn shoelace_area(poly: &[[f64; 2]]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    0.5 * twice.abs()
}

/// Area of the convex hull of the embedded vertices; 0 for degenerate hulls.
pub fn hull_volume_direct(spec: &HullSpec) -> f64 {
    let pts: Vec<[f64; 2]> = spec.vertices.iter().map(embed).collect();
    shoelace_area(&convex_hull_2d(&pts))
}

/// The chamber sum F(λ) = Σ_s exp⟨λ,Y_s⟩ / (⟨λ,s⁻¹α⟩⟨λ,s⁻¹β⟩).
pub fn chamber_sum(spec: &HullSpec, lambda: &Vec3) -> Result<f64> {
    let alpha = [1.0, -1.0, 0.0];
    let beta = [0.0, 1.0, -1.0];
    let mut total = 0.0;
    for (i, s) in WeylElement::all().iter().enumerate() {
        let inv = s.inverse();
        let ra = inv.act_f64(&alpha);
        let rb = inv.act_f64(&beta);
        let da = dot(lambda, &ra);
        let db = dot(lambda, &rb);
        if da == 0.0 {
            return Err(Error::DegenerateDirection { root: ra, pairing: da });
        }
        if db == 0.0 {
            return Err(Error::DegenerateDirection { root: rb, pairing: db });
        }
        total += dot(lambda, &spec.vertices[i]).exp() / (da * db);
    }
    Ok(total)
}

/// √3: area of the parallelogram spanned by the simple coroots, equal to 1/a_{P₀}.
pub fn coroot_covolume() -> f64 {
    1.0 / gram_constant(Parabolic::P0).expect("P0 is proper")
}

/// Unit vector along the projection of `direction` onto 𝔞₀^G, rejecting
/// directions orthogonal to a root.
pub fn normalized_direction(direction: &Vec3) -> Result<Vec3> {
    let d = project_sum_zero(direction);
    let n = dot(&d, &d).sqrt();
    if n == 0.0 {
        return Err(Error::DegenerateDirection { root: [0.0; 3], pairing: 0.0 });
    }
    let d = d.map(|x| x / n);
    for r in positive_roots() {
        let rv = r.vector.to_f64();
        let p = dot(&d, &rv);
        if p.abs() < 1e-9 {
            return Err(Error::DegenerateDirection { root: rv, pairing: p });
        }
    }
    Ok(d)
}

/// The default generic direction (3, 1, −4).
pub const DEFAULT_DIRECTION: Vec3 = [3.0, 1.0, -4.0];

/// Default step ladder h_k = h₀ 2^{−k}, k = 0..6, with h₀·max|⟨d,Y_s⟩| = 1/2.
pub fn default_steps(spec: &HullSpec, direction: &Vec3) -> Result<Vec<f64>> {
    let d = normalized_direction(direction)?;
    let reach = spec.vertices.iter().map(|y| dot(&d, y).abs()).fold(0.0, f64::max);
    let h0 = if reach > 0.0 { 0.5 / reach } else { 0.5 };
    Ok((0..6).map(|k| h0 * 0.5f64.powi(k)).collect())
}

/// Neville extrapolation of the points (x_k, y_k) to x = 0.
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..(n - m) {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// Hull area from the chamber-sum limit along the ray λ = h·d.
///
/// The even part (F(hd) + F(−hd))/2 is a power series in h²; its values at
/// the supplied steps are extrapolated to h = 0 by Neville's scheme, and the
/// limit is multiplied by [`coroot_covolume`].
pub fn hull_volume_limit(spec: &HullSpec, direction: &Vec3, steps: &[f64]) -> Result<f64> {
    let d = normalized_direction(direction)?;
    if steps.is_empty() || steps.iter().any(|h| h.is_nan() || *h <= 0.0) {
        return Err(Error::InvalidInput("steps must be positive".into()));
    }
    let mut xs = Vec::with_capacity(steps.len());
    let mut ys = Vec::with_capacity(steps.len());
    for &h in steps {
        let plus = chamber_sum(spec, &d.map(|x| h * x))?;
        let minus = chamber_sum(spec, &d.map(|x| -h * x))?;
        xs.push(h * h);
        ys.push(0.5 * (plus + minus));
    }
    Ok(coroot_covolume() * neville_at_zero(&xs, &ys))
}

/// The M₂₁ section [−ϖ_α(T) − ϖ_β(H_m) + ϖ_α(H_n), ϖ_β(T) − ϖ_β(H_m)].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntervalWeight {
    /// Left endpoint.
    pub lower: f64,
    /// Right endpoint.
    pub upper: f64,
    /// Length, clamped at 0 for an empty interval.
    pub length: f64,
}

const VARPI_ALPHA: Vec3 = [2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0];
const VARPI_BETA: Vec3 = [1.0 / 3.0, 1.0 / 3.0, -2.0 / 3.0];

/// Interval weight for the M₂₁ hull from H₀(m), H₀(w_s n) and T.
pub fn interval_weight_m21(hm: &Vec3, hn_flip: &Vec3, t: &Vec3) -> IntervalWeight {
    let lower = -dot(&VARPI_ALPHA, t) - dot(&VARPI_BETA, hm) + dot(&VARPI_ALPHA, hn_flip);
    let upper = dot(&VARPI_BETA, t) - dot(&VARPI_BETA, hm);
    IntervalWeight { lower, upper, length: (upper - lower).max(0.0) }
}

/// Coordinates (n₁, n₂, n₃) of the unipotent element [[1,n₁,n₂],[0,1,n₃],[0,0,1]].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormWeightInput {
    /// Entry (1,2).
    pub n1: f64,
    /// Entry (1,3).
    pub n2: f64,
    /// Entry (2,3).
    pub n3: f64,
}

/// The four Euclidean norms (A, B, C, D) entering [`c_m0_weight`].
pub fn norm_quadruple(n: &NormWeightInput) -> [f64; 4] {
    let a = (1.0 + n.n3 * n.n3 + (n.n1 * n.n3 - n.n2).powi(2)).sqrt();
    let b = (1.0 + n.n1 * n.n1 + n.n2 * n.n2).sqrt();
    let c = (1.0 + n.n1 * n.n1).sqrt();
    let d = (1.0 + n.n3 * n.n3).sqrt();
    [a, b, c, d]
}

/// c_{M₀}(n) = (a_{P₀}/2)[2 ln A ln B − (ln A/D)² − (ln B/C)²].
pub fn c_m0_weight(n: &NormWeightInput) -> f64 {
    let [a, b, c, d] = norm_quadruple(n);
    let ap0 = gram_constant(Parabolic::P0).expect("P0 is proper");
    let (la, lb) = (a.ln(), b.ln());
    0.5 * ap0 * (2.0 * la * lb - (a / d).ln().powi(2) - (b / c).ln().powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hexagon(scale: f64) -> HullSpec {
        let mut v = [[0.0; 3]; 6];
        for (i, s) in WeylElement::all().iter().enumerate() {
            v[i] = s.inverse().act_f64(&[scale, 0.0, -scale]);
        }
        HullSpec::from_vertices(v)
    }

    /// Area of the hexagon with vertices the permutations of (c,0,−c):
    /// circumradius √2·c, area (3√3/2)·2c².
    fn hexagon_area(c: f64) -> f64 {
        1.5 * 3f64.sqrt() * 2.0 * c * c
    }

    fn rotation(theta: f64, i: usize, j: usize) -> [[f64; 3]; 3] {
        let mut m = [[0.0; 3]; 3];
        for k in 0..3 {
            m[k][k] = 1.0;
        }
        m[i][i] = theta.cos();
        m[j][j] = theta.cos();
        m[i][j] = -theta.sin();
        m[j][i] = theta.sin();
        m
    }

    #[test]
    fn hexagon_direct() {
        assert!((hull_volume_direct(&hexagon(1.0)) - 3.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((hull_volume_direct(&hexagon(2.0)) - 12.0 * 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(hull_volume_direct(&HullSpec::from_vertices([[0.0; 3]; 6])), 0.0);
        assert!((hexagon_area(1.0) - 3.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hexagon_limit() {
        let spec = hexagon(1.0);
        let steps = default_steps(&spec, &DEFAULT_DIRECTION).unwrap();
        let v = hull_volume_limit(&spec, &DEFAULT_DIRECTION, &steps).unwrap();
        assert!((v - 3.0 * 3f64.sqrt()).abs() < 1e-9, "{v}");
    }

    #[test]
    fn degenerate_direction_rejected() {
        let spec = hexagon(1.0);
        let r = hull_volume_limit(&spec, &[2.0, -1.0, -1.0], &[0.1]);
        assert!(matches!(r, Err(Error::DegenerateDirection { .. })));
        assert!(normalized_direction(&[1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn origin_chamber_sum_vanishes() {
        let spec = HullSpec::from_vertices([[0.0; 3]; 6]);
        let d = normalized_direction(&DEFAULT_DIRECTION).unwrap();
        for k in 0..6 {
            let h = 0.5f64.powi(k);
            let f = chamber_sum(&spec, &d.map(|x| h * x)).unwrap();
            let scale = 1.0 / (h * h);
            assert!(f.abs() <= 1e-14 * scale, "{f}");
        }
    }

    #[test]
    fn iwasawa_of_upper_triangular() {
        let g = [[2.0, 5.0, -1.0], [0.0, 3.0, 7.0], [0.0, 0.0, 0.5]];
        let h = iwasawa_h0(&g).unwrap();
        let expect = [2f64.ln(), 3f64.ln(), 0.5f64.ln()];
        for i in 0..3 {
            assert!((h[i] - expect[i]).abs() < 1e-12);
        }
        let k = rotation(0.7, 0, 2);
        let h2 = iwasawa_h0(&f64_matrix_mul(&g, &k)).unwrap();
        for i in 0..3 {
            assert!((h2[i] - expect[i]).abs() < 1e-12);
        }
        assert!(iwasawa_h0(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]]).is_err());
    }

    #[test]
    fn identity_element_gives_t_orbit() {
        let t = [3.0, 0.5, -3.5];
        let identity = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let spec = HullSpec::from_element(&identity, &t).unwrap();
        for (i, s) in WeylElement::all().iter().enumerate() {
            let expect = s.inverse().act_f64(&t);
            for k in 0..3 {
                assert!((spec.vertices[i][k] - expect[k]).abs() < 1e-12);
            }
        }
        assert!(spec.is_positive_orthogonal(1e-9));
    }

    #[test]
    fn interval_examples() {
        let z = [0.0; 3];
        let w = interval_weight_m21(&z, &z, &[1.0, 0.0, -1.0]);
        assert!((w.length - 2.0).abs() < 1e-15);
        assert!((w.upper - 1.0).abs() < 1e-15 && (w.lower + 1.0).abs() < 1e-15);
        assert_eq!(interval_weight_m21(&z, &z, &z).length, 0.0);
        let hm = [1.0 / 3.0, 1.0 / 3.0, -2.0 / 3.0];
        let shifted = interval_weight_m21(&hm, &z, &[1.0, 0.0, -1.0]);
        assert!((shifted.upper - (1.0 - 2.0 / 3.0)).abs() < 1e-15);
        let empty = interval_weight_m21(&z, &[30.0, 0.0, -30.0], &[1.0, 0.0, -1.0]);
        assert_eq!(empty.length, 0.0);
    }

    #[test]
    fn c_m0_examples() {
        let zero = NormWeightInput { n1: 0.0, n2: 0.0, n3: 0.0 };
        assert_eq!(c_m0_weight(&zero), 0.0);
        let ray = NormWeightInput { n1: 1.0, n2: 0.0, n3: 0.0 };
        assert!(c_m0_weight(&ray).abs() < 1e-15);
        // n = (0,1,0): A = B = √2, C = D = 1, value (a/2)·[2·(ln√2)² − 2·(ln√2)²] = 0
        let mid = NormWeightInput { n1: 0.0, n2: 1.0, n3: 0.0 };
        assert!(c_m0_weight(&mid).abs() < 1e-15);
        // n = (1,1,1): A = 1·√2 (entries 1,1,0), B = √3, C = D = √2
        let n = NormWeightInput { n1: 1.0, n2: 1.0, n3: 1.0 };
        let (la, lb) = (0.5 * 2f64.ln(), 0.5 * 3f64.ln());
        let lc = 0.5 * 2f64.ln();
        let expect = 0.5 / 3f64.sqrt() * (2.0 * la * lb - (la - lc).powi(2) - (lb - lc).powi(2));
        assert!((c_m0_weight(&n) - expect).abs() < 1e-15);
    }

    fn random_group_element(seed: [f64; 9]) -> [[f64; 3]; 3] {
        let lower = [[1.0, 0.0, 0.0], [seed[0], 1.0, 0.0], [seed[1], seed[2], 1.0]];
        let diag = [[seed[3].exp(), 0.0, 0.0], [0.0, seed[4].exp(), 0.0], [0.0, 0.0, 1.0]];
        let k = f64_matrix_mul(&rotation(seed[5], 0, 1), &rotation(seed[6], 1, 2));
        f64_matrix_mul(&f64_matrix_mul(&lower, &diag), &k)
    }

    proptest! {
        #[test]
        fn group_families_are_orthogonal_and_limits_match(
            seed in proptest::array::uniform9(-1.0f64..1.0),
        ) {
            let x = random_group_element(seed);
            let t = [6.0 + seed[7], 0.5 * seed[8], -6.0 - seed[7] - 0.5 * seed[8]];
            let spec = HullSpec::from_element(&x, &t).unwrap();
            prop_assert!(spec.is_positive_orthogonal(1e-8));
            let direct = hull_volume_direct(&spec);
            let steps = default_steps(&spec, &DEFAULT_DIRECTION).unwrap();
            let limit = hull_volume_limit(&spec, &DEFAULT_DIRECTION, &steps).unwrap();
            prop_assert!((direct - limit).abs() < 1e-8, "{} vs {}", direct, limit);
        }

        #[test]
        fn translation_and_scaling(c in 0.2f64..3.0, shift in proptest::array::uniform3(-5.0f64..5.0)) {
            let spec = hexagon(1.3);
            let base = hull_volume_direct(&spec);
            prop_assert!((hull_volume_direct(&spec.translated(&shift)) - base).abs() < 1e-9);
            prop_assert!((hull_volume_direct(&spec.scaled(c)) - c * c * base).abs() < 1e-9);
        }

        #[test]
        fn c_m0_flip_symmetry(n in proptest::array::uniform3(-4.0f64..4.0)) {
            let a = NormWeightInput { n1: n[0], n2: n[1], n3: n[2] };
            let b = NormWeightInput { n1: n[2], n2: n[0] * n[2] - n[1], n3: n[0] };
            let qa = norm_quadruple(&a);
            let qb = norm_quadruple(&b);
            prop_assert!((qa[0] - qb[1]).abs() < 1e-12 && (qa[2] - qb[3]).abs() < 1e-12);
            prop_assert!((c_m0_weight(&a) - c_m0_weight(&b)).abs() < 1e-12);
        }
    }

    #[test]
    fn weyl_relabeling_invariance() {
        let x = random_group_element([0.3, -0.2, 0.5, 0.1, -0.4, 0.9, 0.2, 0.0, 0.0]);
        let spec = HullSpec::from_element(&x, &[5.0, 1.0, -6.0]).unwrap();
        let all = WeylElement::all();
        let direct = hull_volume_direct(&spec);
        for s0 in all {
            let mut v = [[0.0; 3]; 6];
            for (i, s) in all.iter().enumerate() {
                let j = all.iter().position(|w| *w == s.compose(&s0)).unwrap();
                v[i] = spec.vertices[j];
            }
            let relabeled = HullSpec { vertices: v };
            assert!((hull_volume_direct(&relabeled) - direct).abs() < 1e-12);
        }
    }
}
