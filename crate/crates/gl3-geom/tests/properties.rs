//! Property tests across the public API of `gl3-geom`.

#![allow(clippy::needless_range_loop)]

use gl3_geom::convex_weight::{default_steps, hull_volume_direct, hull_volume_limit, HullSpec, DEFAULT_DIRECTION};
use gl3_geom::orbit_classifier::{classify, conjugacy_probe, Probe, RationalMatrix3};
use gl3_geom::woi_quadrature::{integrate_line, integrate_rn, Estimate, QuadratureSpec};
use gl3_geom::zeta_engine::{zeta_em, zeta_partial, PrimeSet};
use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use std::f64::consts::PI;

fn elementary(i: usize, j: usize, k: i64) -> RationalMatrix3 {
    let mut m = [[0i64; 3]; 3];
    for (d, row) in m.iter_mut().enumerate() {
        row[d] = 1;
    }
    m[i][j] = k;
    RationalMatrix3::from_ints(m)
}

fn unimodular() -> impl Strategy<Value = RationalMatrix3> {
    proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 1..6).prop_map(|ops| {
        ops.into_iter()
            .filter(|(i, j, _)| i != j)
            .fold(RationalMatrix3::identity(), |acc, (i, j, k)| &acc * &elementary(i, j, k))
    })
}

fn invertible() -> impl Strategy<Value = RationalMatrix3> {
    proptest::array::uniform3(proptest::array::uniform3(-4i64..=4))
        .prop_map(RationalMatrix3::from_ints)
        .prop_filter("invertible", |m| !m.det().is_zero())
}

/// ζ(s) from the alternating series with the Cohen–Rodriguez Villegas–Zagier
/// acceleration, valid for Re s > 0, s ≠ 1.
fn zeta_alternating(s: Complex64) -> Complex64 {
    let n = 60usize;
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0 / n as f64;
    let mut sum = term;
    d[0] = sum;
    for i in 1..=n {
        term *= ((n + i - 1) * 4 * (n - i + 1)) as f64 / ((2 * i - 1) * 2 * i) as f64;
        sum += term;
        d[i] = sum;
    }
    let mut eta = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let nk = Complex64::new((k + 1) as f64, 0.0).powc(-s);
        eta += sign * (d[n] - d[k]) * nk;
    }
    eta /= d[n];
    eta / (1.0 - Complex64::new(2.0, 0.0).powc(1.0 - s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_conjugation_invariant(m in invertible(), g in unimodular()) {
        let c = m.conjugate_by(&g).unwrap();
        let (a, b) = (classify(&m).unwrap(), classify(&c).unwrap());
        prop_assert_eq!(a.kind, b.kind);
        prop_assert_eq!(a.eigenvalues, b.eigenvalues);
        prop_assert_eq!(a.unipotent_subtype, b.unipotent_subtype);
        prop_assert_eq!(a.semisimple, b.semisimple);
        prop_assert_eq!(conjugacy_probe(&m, &c).unwrap(), Probe::Equivalent);
    }

    #[test]
    fn hull_area_scales_quadratically_and_ignores_translation(
        x in proptest::array::uniform9(-1.0f64..1.0),
        shift in proptest::array::uniform3(-2.0f64..2.0),
        c in 0.25f64..3.0,
    ) {
        let g = [
            [1.0 + 0.3 * x[0], 0.3 * x[1], 0.3 * x[2]],
            [0.3 * x[3], 1.0 + 0.3 * x[4], 0.3 * x[5]],
            [0.3 * x[6], 0.3 * x[7], 1.0 + 0.3 * x[8]],
        ];
        let spec = HullSpec::from_element(&g, &[4.0, 1.0, -5.0]).unwrap();
        let base = hull_volume_direct(&spec);
        let moved = hull_volume_direct(&spec.translated(&shift));
        let scaled = hull_volume_direct(&spec.scaled(c));
        prop_assert!((moved - base).abs() <= 1e-10 * base.max(1.0));
        prop_assert!((scaled - c * c * base).abs() <= 1e-10 * (c * c * base).max(1.0));
        let moved_spec = spec.translated(&shift);
        let steps = default_steps(&moved_spec, &DEFAULT_DIRECTION).unwrap();
        let limit = hull_volume_limit(&moved_spec, &DEFAULT_DIRECTION, &steps).unwrap();
        prop_assert!((limit - base).abs() <= 1e-6 * base.max(1.0), "{} vs {}", limit, base);
    }

    #[test]
    fn zeta_matches_alternating_series(re in 1.2f64..6.0, im in -10.0f64..10.0) {
        let s = Complex64::new(re, im);
        let ours = zeta_em(s, 1e-13).value;
        let oracle = zeta_alternating(s);
        prop_assert!((ours - oracle).norm() < 1e-10 * oracle.norm().max(1.0), "{} vs {}", ours, oracle);
    }

    #[test]
    fn partial_zeta_removes_euler_factors(re in 1.5f64..5.0, im in -5.0f64..5.0) {
        let s = Complex64::new(re, im);
        let set = PrimeSet::new(&[2, 3]).unwrap();
        let full = zeta_alternating(s);
        let expected = full * (1.0 - Complex64::new(2.0, 0.0).powc(-s)) * (1.0 - Complex64::new(3.0, 0.0).powc(-s));
        let got = zeta_partial(s, &set, 1e-13).unwrap();
        prop_assert!((got - expected).norm() < 1e-10 * expected.norm().max(1.0));
    }

    #[test]
    fn line_quadrature_reproduces_gaussian_moments(mu in -3.0f64..3.0, sigma in 0.3f64..3.0) {
        let spec = QuadratureSpec::default();
        let g = |x: f64| Ok(Estimate::exact(x * x * (-(x - mu) * (x - mu) / (2.0 * sigma * sigma)).exp()));
        let r = integrate_line(&g, &spec, 1e-11, 1e-11, false).unwrap();
        let exact = (2.0 * PI).sqrt() * sigma * (sigma * sigma + mu * mu);
        prop_assert!((r.value - exact).abs() <= 1e-9 * exact, "{} vs {}", r.value, exact);
        prop_assert!(r.error <= 1e-11f64.max(1e-11 * exact) * 1.0000001);
    }
}

#[test]
fn two_dimensional_quadrature_of_correlated_gaussian() {
    let g = |x: &[f64; 3]| (-(x[0] * x[0] + x[0] * x[1] + x[1] * x[1])).exp();
    let r = integrate_rn(&g, 2, &QuadratureSpec::with_tol(1e-10)).unwrap();
    let exact = 2.0 * PI / 3f64.sqrt();
    assert!((r.value - exact).abs() < 1e-9, "{} vs {}", r.value, exact);
}
