//! Euler–Maclaurin evaluation of ζ(s) and ζ′(s), and of the Laurent data of
//! ζ at s = 1.

use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::root_system::{q_to_f64, Q};

/// Number of correction terms available.
pub const MAX_TERMS: usize = 60;

/// Exact Bernoulli numbers B_0, …, B_n (with B_1 = −1/2).
pub fn bernoulli_numbers(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    b.push(Q::one());
    for m in 1..=n {
        let mut acc = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Q::from_integer(binomial(BigInt::from(m + 1), BigInt::from(j))) * bj;
        }
        b.push(-acc / Q::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// B_{2k}/(2k)! for k = 1, …, MAX_TERMS, computed once from exact values.
fn correction_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let b = bernoulli_numbers(2 * MAX_TERMS);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(MAX_TERMS);
        for k in 1..=MAX_TERMS {
            fact *= BigInt::from((2 * k - 1) * (2 * k));
            out.push(q_to_f64(&(b[2 * k].clone() / Q::from_integer(fact.clone()))));
        }
        out
    })
}

/// A complex number with its first derivative in s.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Dual {
    v: Complex64,
    d: Complex64,
}

impl Dual {
    fn constant(v: Complex64) -> Self {
        Dual { v, d: Complex64::zero() }
    }
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.v * o.d + self.d * o.v }
    }
    fn scale(self, c: Complex64) -> Dual {
        Dual { v: self.v * c, d: self.d * c }
    }
    fn recip(self) -> Dual {
        let r = self.v.inv();
        Dual { v: r, d: -self.d * r * r }
    }
    /// n^{−x} for a dual x with real n > 0.
    fn pow_neg(n: f64, x: Dual) -> Dual {
        let l = n.ln();
        let v = (-x.v * l).exp();
        Dual { v, d: -l * x.d * v }
    }
}

/// ζ(s) and ζ′(s) with an estimate of the truncation error of ζ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaValue {
    /// ζ(s).
    pub value: Complex64,
    /// ζ′(s).
    pub derivative: Complex64,
    /// Magnitude of the first omitted correction term.
    pub truncation: f64,
}

type CacheKey = (u64, u64, u64);

fn cache() -> &'static RwLock<HashMap<CacheKey, ZetaValue>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, ZetaValue>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Evaluates ζ and ζ′ at s ≠ 1 to roughly `precision` (absolute, bounded
/// below by double rounding). Results are memoised per (s, precision).
pub fn zeta_em(s: Complex64, precision: f64) -> ZetaValue {
    let key = (s.re.to_bits(), s.im.to_bits(), precision.to_bits());
    if let Some(v) = cache().read().expect("zeta cache poisoned").get(&key) {
        return *v;
    }
    let v = zeta_em_uncached(s, precision);
    cache().write().expect("zeta cache poisoned").entry(key).or_insert(v);
    v
}

fn zeta_em_uncached(s: Complex64, precision: f64) -> ZetaValue {
    let n_cut = 20 + s.im.abs().ceil() as usize + (-s.re).max(0.0).ceil() as usize;
    let nf = n_cut as f64;
    let x = Dual { v: s, d: Complex64::new(1.0, 0.0) };
    let mut head = Dual::constant(Complex64::zero());
    for n in 1..n_cut {
        head = head.add(Dual::pow_neg(n as f64, x));
    }
    let one = Dual::constant(Complex64::new(1.0, 0.0));
    let s_minus_1 = x.add(one.scale(Complex64::new(-1.0, 0.0)));
    let n_pow = Dual::pow_neg(nf, x);
    let mut total = head
        .add(n_pow.scale(Complex64::new(nf, 0.0)).mul(s_minus_1.recip()))
        .add(n_pow.scale(Complex64::new(0.5, 0.0)));
    let coeffs = correction_coefficients();
    // rising product s(s+1)…(s+2k−2), advanced two factors per step
    let mut rising = x;
    let mut power = n_pow.scale(Complex64::new(1.0 / nf, 0.0));
    let mut truncation = f64::INFINITY;
    for (k, &c) in coeffs.iter().enumerate() {
        let term = rising.mul(power).scale(Complex64::new(c, 0.0));
        let size = term.v.norm() + term.d.norm();
        if k > 0 && size < 1e-3 * precision.max(f64::EPSILON * total.v.norm()) {
            truncation = size;
            break;
        }
        total = total.add(term);
        let k = k as f64 + 1.0;
        let a = x.add(Dual::constant(Complex64::new(2.0 * k - 1.0, 0.0)));
        let b = x.add(Dual::constant(Complex64::new(2.0 * k, 0.0)));
        rising = rising.mul(a).mul(b);
        power = power.scale(Complex64::new(1.0 / (nf * nf), 0.0));
    }
    ZetaValue { value: total.v, derivative: total.d, truncation }
}

/// Truncated power series a₀ + a₁u + a₂u².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series3(pub [f64; 3]);

impl Series3 {
    /// The constant series c.
    pub fn constant(c: f64) -> Self {
        Series3([c, 0.0, 0.0])
    }
    /// Scalar multiple.
    pub fn scale(self, c: f64) -> Series3 {
        Series3([self.0[0] * c, self.0[1] * c, self.0[2] * c])
    }
    /// e^{−uL} truncated.
    pub fn exp_neg(l: f64) -> Series3 {
        Series3([1.0, -l, l * l / 2.0])
    }
}

impl Add for Series3 {
    type Output = Series3;
    fn add(self, o: Series3) -> Series3 {
        Series3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Mul for Series3 {
    type Output = Series3;
    /// Product truncated at u².
    fn mul(self, o: Series3) -> Series3 {
        let (a, b) = (self.0, o.0);
        Series3([a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[0] * b[2] + a[1] * b[1] + a[2] * b[0]])
    }
}

/// Taylor coefficients [a₀, a₁, a₂] of ζ(1+u) − 1/u at u = 0; a₀ = γ₀,
/// a₁ = −γ₁, a₂ = γ₂/2 in terms of the Stieltjes constants.
pub fn zeta_regular_part_at_one() -> Series3 {
    static PART: OnceLock<Series3> = OnceLock::new();
    *PART.get_or_init(|| {
        let n_cut = 30usize;
        let nf = n_cut as f64;
        let l = nf.ln();
        let mut total = Series3::constant(0.0);
        for n in 1..n_cut {
            total = total + Series3::exp_neg((n as f64).ln()).scale(1.0 / n as f64);
        }
        // (N^{−u} − 1)/u
        total = total + Series3([-l, l * l / 2.0, -l * l * l / 6.0]);
        total = total + Series3::exp_neg(l).scale(0.5 / nf);
        let coeffs = correction_coefficients();
        let u = Series3([1.0, 1.0, 0.0]);
        let mut rising = u;
        for (k, &c) in coeffs.iter().enumerate() {
            let k1 = k as i32 + 1;
            let term = (rising * Series3::exp_neg(l)).scale(c * nf.powi(-2 * k1));
            if term.0.iter().all(|t| t.abs() < 1e-20) {
                break;
            }
            total = total + term;
            let a = Series3([2.0 * k1 as f64, 1.0, 0.0]);
            let b = Series3([2.0 * k1 as f64 + 1.0, 1.0, 0.0]);
            rising = rising * a * b;
        }
        total
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::q;
    use std::f64::consts::PI;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(10);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
        assert_eq!(b[10], q(5, 66));
        assert_eq!(b[7], q(0, 1));
    }

    #[test]
    fn classical_values() {
        let z2 = zeta_em(Complex64::new(2.0, 0.0), 1e-14);
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-14);
        let z4 = zeta_em(Complex64::new(4.0, 0.0), 1e-14);
        assert!((z4.value.re - PI.powi(4) / 90.0).abs() < 1e-14);
        let z0 = zeta_em(Complex64::new(0.0, 0.0), 1e-14);
        assert!((z0.value.re + 0.5).abs() < 1e-14);
        let zm1 = zeta_em(Complex64::new(-1.0, 0.0), 1e-14);
        assert!((zm1.value.re + 1.0 / 12.0).abs() < 1e-13);
        // ζ′(0) = −ln(2π)/2
        assert!((z0.derivative.re + (2.0 * PI).ln() / 2.0).abs() < 1e-13);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        for s in [Complex64::new(2.5, 0.0), Complex64::new(0.5, 14.0), Complex64::new(3.0, -2.0)] {
            let h = 1e-5;
            let up = zeta_em(s + h, 1e-15).value;
            let dn = zeta_em(s - h, 1e-15).value;
            let fd = (up - dn) / (2.0 * h);
            assert!((fd - zeta_em(s, 1e-15).derivative).norm() < 1e-8, "{s}");
        }
    }

    #[test]
    fn first_nontrivial_zero() {
        let rho = Complex64::new(0.5, 14.134_725_141_734_693);
        assert!(zeta_em(rho, 1e-14).value.norm() < 1e-11);
    }

    #[test]
    fn regular_part_matches_nearby_values() {
        let a = zeta_regular_part_at_one();
        for u in [1e-3, -2e-3] {
            let s = 1.0 + u;
            let u = s - 1.0;
            let z = zeta_em(Complex64::new(s, 0.0), 1e-15).value.re - 1.0 / u;
            let approx = a.0[0] + a.0[1] * u + a.0[2] * u * u;
            assert!((z - approx).abs() < 1e-10, "{u} {z} {approx}");
        }
    }
}
