//! Partial zeta functions ζ^S(s) = ζ(s)·Π_{p∈S}(1 − p^{−s}), their Laurent
//! data at s = 1, a local log-norm integral, and the assembly of the
//! unipotent coefficients from volumes and zeta data.
//!
//! Only the trivial character is supported.

pub mod euler_maclaurin;
pub mod local;

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

pub use euler_maclaurin::{bernoulli_numbers, zeta_em, zeta_regular_part_at_one, Series3, ZetaValue};
pub use local::{local_log_norm_brute_force, local_log_norm_enumeration, local_log_norm_integral, LocalIntegral};

use crate::error::{Error, Result};

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite set of places containing ∞: the sorted distinct finite primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PrimeSet {
    finite: Vec<u64>,
}

impl PrimeSet {
    /// The set {∞}.
    pub fn infinity_only() -> Self {
        PrimeSet { finite: Vec::new() }
    }

    /// {∞} together with the given primes, which must be distinct primes.
    pub fn new(primes: &[u64]) -> Result<Self> {
        let mut finite = primes.to_vec();
        if let Some(&p) = finite.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        finite.sort_unstable();
        if finite.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate prime in S".into()));
        }
        Ok(PrimeSet { finite })
    }

    /// The finite primes, ascending.
    pub fn finite(&self) -> &[u64] {
        &self.finite
    }

    /// Always true: ∞ belongs to every S.
    pub fn includes_infinity(&self) -> bool {
        true
    }

    /// S ∪ {p}.
    pub fn with(&self, p: u64) -> Result<Self> {
        let mut v = self.finite.clone();
        v.push(p);
        Self::new(&v)
    }
}

impl FromStr for PrimeSet {
    type Err = Error;
    /// Parses a comma-separated list of primes; "", "inf" and "∞" entries
    /// denote the archimedean place.
    fn from_str(s: &str) -> Result<Self> {
        let mut primes = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if tok.eq_ignore_ascii_case("inf") || tok == "∞" {
                continue;
            }
            primes.push(tok.parse::<u64>().map_err(|_| Error::InvalidInput(format!("bad prime {tok:?}")))?);
        }
        Self::new(&primes)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{inf")?;
        for p in &self.finite {
            write!(f, ",{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PrimeSet", 2)?;
        st.serialize_field("finite", &self.finite)?;
        st.serialize_field("includes_infinity", &true)?;
        st.end()
    }
}

/// p^{−s}, through `powf` on the real axis so that integral powers are exact.
pub fn p_pow_neg(p: u64, s: Complex64) -> Complex64 {
    let pf = p as f64;
    if s.im == 0.0 {
        Complex64::new(pf.powf(-s.re), 0.0)
    } else {
        (-s * pf.ln()).exp()
    }
}

fn check_precision(precision: f64) -> Result<()> {
    if precision >= 1e-15 && precision.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("precision {precision:e} is outside [1e-15, ∞)")))
    }
}

fn check_not_pole(s: Complex64) -> Result<()> {
    if s == Complex64::new(1.0, 0.0) {
        Err(Error::Pole)
    } else {
        Ok(())
    }
}

/// ζ^S(s) = ζ(s)·Π_{p∈S}(1 − p^{−s}).
pub fn zeta_partial(s: Complex64, set: &PrimeSet, precision: f64) -> Result<Complex64> {
    check_not_pole(s)?;
    check_precision(precision)?;
    let z = zeta_em(s, precision).value;
    Ok(set.finite.iter().fold(z, |acc, &p| acc * (1.0 - p_pow_neg(p, s))))
}

/// d/ds ζ^S(s), by the product rule with the exact factor derivatives
/// d/ds(1 − p^{−s}) = p^{−s} ln p.
pub fn zeta_partial_derivative(s: Complex64, set: &PrimeSet, precision: f64) -> Result<Complex64> {
    check_not_pole(s)?;
    check_precision(precision)?;
    let zv = zeta_em(s, precision);
    let factors: Vec<Complex64> = set.finite.iter().map(|&p| 1.0 - p_pow_neg(p, s)).collect();
    let product: Complex64 = factors.iter().product();
    let mut dproduct = Complex64::new(0.0, 0.0);
    for (i, &p) in set.finite.iter().enumerate() {
        let d = p_pow_neg(p, s) * (p as f64).ln();
        let others: Complex64 = factors.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| *f).product();
        dproduct += d * others;
    }
    Ok(zv.derivative * product + zv.value * dproduct)
}

/// Laurent data of L^S at s = 1: (s − 1)L^S(s) = c0 + c1(s−1) + c2(s−1)² + ….
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaLaurent {
    /// Residue c_ℚ^S.
    pub c0: f64,
    /// First derivative of (s − 1)L^S at 1.
    pub c1: f64,
    /// Half the second derivative of (s − 1)L^S at 1.
    pub c2: f64,
}

/// Taylor data of Π_{p∈S}(1 − p^{−s}) at s = 1, in u = s − 1.
pub fn euler_factor_series(set: &PrimeSet) -> Series3 {
    set.finite.iter().fold(Series3::constant(1.0), |acc, &p| {
        let pf = p as f64;
        let l = pf.ln();
        acc * Series3([1.0 - 1.0 / pf, l / pf, -l * l / (2.0 * pf)])
    })
}

/// Laurent data from the Stieltjes constants of ζ combined with the Taylor
/// data of the removed Euler factors.
pub fn laurent_at_one(set: &PrimeSet, precision: f64) -> Result<ZetaLaurent> {
    check_precision(precision)?;
    let a = zeta_regular_part_at_one();
    let zeta_part = Series3([1.0, a.0[0], a.0[1]]);
    let l = zeta_part * euler_factor_series(set);
    Ok(ZetaLaurent { c0: l.0[0], c1: l.0[1], c2: l.0[2] })
}

/// Independent oracle: central differences of F(s) = (s − 1)ζ^S(s) at
/// s = 1 ± h, h/2, h/4 with Richardson extrapolation; F(1) is never used.
/// The step is rounded down to a power of two so that every s = 1 ± x and
/// every s − 1 are exact in binary.
pub fn laurent_finite_difference(set: &PrimeSet, h: f64) -> Result<ZetaLaurent> {
    if !(h > 1e-6 && h < 0.1) {
        return Err(Error::InvalidInput(format!("step {h:e} must lie in (1e-6, 0.1)")));
    }
    let h = 2f64.powi(h.log2().floor() as i32);
    let f = |x: f64| -> Result<f64> { Ok(x * zeta_partial(Complex64::new(1.0 + x, 0.0), set, 1e-15)?.re) };
    let pair = |x: f64| -> Result<(f64, f64)> { Ok((f(x)?, f(-x)?)) };
    let steps = [h, h / 2.0, h / 4.0];
    let mut odd = [0.0; 3];
    let mut even = [0.0; 3];
    let mut second = [0.0; 3];
    for (i, &x) in steps.iter().enumerate() {
        let (p1, m1) = pair(x)?;
        let (p2, m2) = pair(2.0 * x)?;
        odd[i] = (p1 - m1) / (2.0 * x);
        even[i] = (p1 + m1) / 2.0;
        second[i] = ((p2 + m2) - (p1 + m1)) / (6.0 * x * x);
    }
    let rich = |v: [f64; 3]| {
        let r1 = (4.0 * v[1] - v[0]) / 3.0;
        let r2 = (4.0 * v[2] - v[1]) / 3.0;
        (16.0 * r2 - r1) / 15.0
    };
    Ok(ZetaLaurent { c0: rich(even), c1: rich(odd), c2: rich(second) })
}

/// Where ln 2 enters the coefficient of z·n(0,1,0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ln2Placement {
    /// vol_M21·(ζ^S′(2)/ζ^S(2) − ln 2).
    Inside,
    /// vol_M21·ζ^S′(2)/ζ^S(2) − ln 2.
    Outside,
}

impl FromStr for Ln2Placement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inside" => Ok(Ln2Placement::Inside),
            "outside" => Ok(Ln2Placement::Outside),
            _ => Err(Error::InvalidInput(format!("ln2 placement must be inside or outside, got {s:?}"))),
        }
    }
}

impl fmt::Display for Ln2Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ln2Placement::Inside => "inside",
            Ln2Placement::Outside => "outside",
        })
    }
}

/// Volumes vol(M(ℚ)∖M(𝔸)¹); normalisation dependent, always configured.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Volumes {
    /// For the minimal Levi M₀.
    pub vol_m0: f64,
    /// For the Levi M₂₁.
    pub vol_m21: f64,
    /// For G.
    pub vol_g: f64,
}

impl Default for Volumes {
    fn default() -> Self {
        Volumes { vol_m0: 1.0, vol_m21: 1.0, vol_g: 1.0 }
    }
}

/// Configuration of the coefficient assembly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientConfig {
    /// The set S.
    pub s: PrimeSet,
    /// Volumes.
    pub volumes: Volumes,
    /// c_ℚ = vol(ℚ∖𝔸¹).
    pub c_q: f64,
    /// The additive constant C in the regular coefficient.
    pub c: f64,
    /// Target precision of the zeta data.
    pub precision: f64,
    /// ln 2 placement for the minimal coefficient of G.
    pub ln2_placement: Ln2Placement,
}

impl Default for CoefficientConfig {
    fn default() -> Self {
        CoefficientConfig {
            s: PrimeSet::infinity_only(),
            volumes: Volumes::default(),
            c_q: 1.0,
            c: 0.0,
            precision: 1e-12,
            ln2_placement: Ln2Placement::Outside,
        }
    }
}

/// The unipotent coefficients a^M(S, u).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientSet {
    /// a^{M₀}(S, 1) = vol_M0.
    pub a_m0_1: f64,
    /// a^{M₂₁}(S, 1) = vol_M21.
    pub a_m21_1: f64,
    /// a^G(S, 1) = vol_G.
    pub a_g_1: f64,
    /// Coefficient of z·n(1,0,0) in M₂₁.
    pub a_m21_min: f64,
    /// Coefficient of z·n(0,1,0) in G.
    pub a_g_min: f64,
    /// Coefficient of z·n(1,0,1) in G.
    pub a_g_reg: f64,
    /// d a_G_reg / dC = vol_M0/(3c_ℚ²).
    pub a_g_reg_slope: f64,
    /// c_ℚ^S = c_ℚ·Π_{p∈S}(1 − 1/p).
    pub c_q_s: f64,
    /// ζ^S′(2)/ζ^S(2).
    pub zeta_log_derivative_at_2: f64,
    /// Laurent data of L^S at 1.
    pub laurent: ZetaLaurent,
    /// Echo of every configured input.
    pub config_echo: CoefficientConfig,
}

/// Assembles every unipotent coefficient from volumes and zeta data.
pub fn assemble_coefficients(config: &CoefficientConfig) -> Result<CoefficientSet> {
    let v = config.volumes;
    if !(v.vol_m0 > 0.0 && v.vol_m21 > 0.0 && v.vol_g > 0.0 && config.c_q > 0.0) {
        return Err(Error::InvalidInput("volumes and c_Q must be positive".into()));
    }
    if !config.c.is_finite() {
        return Err(Error::InvalidInput("C must be finite".into()));
    }
    let laurent = laurent_at_one(&config.s, config.precision)?;
    let c_q_s = config.c_q * laurent.c0;
    let two = Complex64::new(2.0, 0.0);
    let ratio = zeta_partial_derivative(two, &config.s, config.precision)?.re
        / zeta_partial(two, &config.s, config.precision)?.re;
    let a_g_min = match config.ln2_placement {
        Ln2Placement::Outside => v.vol_m21 * ratio - LN_2,
        Ln2Placement::Inside => v.vol_m21 * (ratio - LN_2),
    };
    let slope = v.vol_m0 / (3.0 * config.c_q * config.c_q);
    Ok(CoefficientSet {
        a_m0_1: v.vol_m0,
        a_m21_1: v.vol_m21,
        a_g_1: v.vol_g,
        a_m21_min: v.vol_m0 / (2.0 * config.c_q) * (laurent.c1 - c_q_s * LN_2),
        a_g_min,
        a_g_reg: slope * (laurent.c1 * laurent.c1 + laurent.c2 * c_q_s + config.c),
        a_g_reg_slope: slope,
        c_q_s,
        zeta_log_derivative_at_2: ratio,
        laurent,
        config_echo: config.clone(),
    })
}

/// Contribution vol_G·f(z) of the trivial class.
pub fn trivial_class_term(f_value_at_z: f64, vol_g: f64) -> f64 {
    vol_g * f_value_at_z
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    const STIELTJES_1: f64 = -0.072_815_845_483_676_72;
    const ZETA_PRIME_2: f64 = -0.937_548_254_315_843_8;
    const ZETA_3: f64 = 1.202_056_903_159_594_3;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn set(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p).unwrap()
    }

    #[test]
    fn prime_sets() {
        assert!(PrimeSet::new(&[4]).is_err());
        assert!(PrimeSet::new(&[3, 3]).is_err());
        assert_eq!(set(&[5, 2]).finite(), &[2, 5]);
        assert_eq!("2, 3,inf".parse::<PrimeSet>().unwrap(), set(&[2, 3]));
        assert_eq!("".parse::<PrimeSet>().unwrap(), PrimeSet::infinity_only());
        assert_eq!(set(&[2, 3]).to_string(), "{inf,2,3}");
        assert!(set(&[2]).with(2).is_err());
    }

    #[test]
    fn partial_zeta_examples() {
        let inf = PrimeSet::infinity_only();
        assert!((zeta_partial(re(2.0), &inf, 1e-12).unwrap().re - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta_partial(re(2.0), &set(&[2]), 1e-12).unwrap().re - PI * PI / 8.0).abs() < 1e-14);
        assert!((zeta_partial(re(3.0), &inf, 1e-12).unwrap().re - ZETA_3).abs() < 1e-14);
        assert_eq!(zeta_partial(re(1.0), &inf, 1e-12), Err(Error::Pole));
        assert_eq!(zeta_partial_derivative(re(1.0), &inf, 1e-12), Err(Error::Pole));
    }

    #[test]
    fn derivative_examples() {
        let inf = PrimeSet::infinity_only();
        let d = zeta_partial_derivative(re(2.0), &inf, 1e-12).unwrap().re;
        assert!((d - ZETA_PRIME_2).abs() < 1e-14);
        let d2 = zeta_partial_derivative(re(2.0), &set(&[2]), 1e-12).unwrap().re;
        let expect = ZETA_PRIME_2 * 0.75 + PI * PI / 6.0 * 0.25 * LN_2;
        assert!((d2 - expect).abs() < 1e-14);
    }

    #[test]
    fn euler_factor_consistency() {
        let base = set(&[3]);
        for p in [2u64, 5, 7] {
            for s in [re(2.0), re(0.5), Complex64::new(1.5, 3.0)] {
                let lhs = zeta_partial(s, &base.with(p).unwrap(), 1e-12).unwrap();
                let rhs = zeta_partial(s, &base, 1e-12).unwrap() * (1.0 - p_pow_neg(p, s));
                assert!((lhs - rhs).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn laurent_infinity() {
        let l = laurent_at_one(&PrimeSet::infinity_only(), 1e-12).unwrap();
        assert_eq!(l.c0, 1.0);
        assert!((l.c1 - EULER_GAMMA).abs() < 1e-14);
        assert!((l.c2 + STIELTJES_1).abs() < 1e-14);
    }

    #[test]
    fn laurent_matches_finite_differences() {
        for s in [vec![], vec![2], vec![2, 3, 5]] {
            let set = set(&s);
            let a = laurent_at_one(&set, 1e-12).unwrap();
            let b = laurent_finite_difference(&set, 1e-2).unwrap();
            assert!((a.c0 - b.c0).abs() < 1e-10, "{s:?}");
            assert!((a.c1 - b.c1).abs() < 1e-10, "{s:?}");
            assert!((a.c2 - b.c2).abs() < 1e-7, "{s:?} {} {}", a.c2, b.c2);
        }
        let fine = laurent_finite_difference(&PrimeSet::infinity_only(), 1e-3).unwrap();
        assert!((fine.c1 - EULER_GAMMA).abs() < 1e-10, "{}", fine.c1 - EULER_GAMMA);
        assert!((laurent_at_one(&set(&[2, 3, 5]), 1e-12).unwrap().c0 - 4.0 / 15.0).abs() < 1e-15);
        assert!((laurent_at_one(&set(&[2]), 1e-12).unwrap().c0 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coefficient_examples() {
        let c = assemble_coefficients(&CoefficientConfig::default()).unwrap();
        assert!((c.a_m21_min - (EULER_GAMMA - LN_2) / 2.0).abs() < 1e-14);
        assert!((c.a_g_min - (ZETA_PRIME_2 / (PI * PI / 6.0) - LN_2)).abs() < 1e-14);
        assert!((c.a_g_reg - (EULER_GAMMA * EULER_GAMMA - STIELTJES_1) / 3.0).abs() < 1e-14);
        assert_eq!(c.a_g_reg_slope, 1.0 / 3.0);
        assert_eq!((c.a_m0_1, c.a_m21_1, c.a_g_1), (1.0, 1.0, 1.0));
        let inside = assemble_coefficients(&CoefficientConfig {
            ln2_placement: Ln2Placement::Inside,
            volumes: Volumes { vol_m21: 2.0, ..Default::default() },
            ..Default::default()
        })
        .unwrap();
        assert!((inside.a_g_min - 2.0 * (c.zeta_log_derivative_at_2 - LN_2)).abs() < 1e-14);
        assert!(assemble_coefficients(&CoefficientConfig { c_q: 0.0, ..Default::default() }).is_err());
    }

    #[test]
    fn coefficient_is_affine_in_c() {
        let base = assemble_coefficients(&CoefficientConfig::default()).unwrap();
        for c in [1.0, -2.5, 10.0] {
            let moved = assemble_coefficients(&CoefficientConfig { c, ..Default::default() }).unwrap();
            assert!(((moved.a_g_reg - base.a_g_reg) / c - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn log_derivative_round_trip() {
        for s in [vec![], vec![2], vec![3, 7]] {
            let cfg = CoefficientConfig { s: set(&s), ..Default::default() };
            let c = assemble_coefficients(&cfg).unwrap();
            let direct = zeta_partial_derivative(re(2.0), &cfg.s, 1e-12).unwrap().re
                / zeta_partial(re(2.0), &cfg.s, 1e-12).unwrap().re;
            assert!((c.a_g_min + LN_2 - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn trivial_class() {
        assert_eq!(trivial_class_term(0.0, 3.0), 0.0);
        assert_eq!(trivial_class_term(1.0, 1.0), 1.0);
        assert_eq!(trivial_class_term(2.0 + 3.0, 1.5), trivial_class_term(2.0, 1.5) + trivial_class_term(3.0, 1.5));
    }
}
