//! The local integral of log‖(n₁₃, n₂₃)‖_p over ℤ_p², in closed form and by
//! residue-class enumeration.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::{q_to_f64, Q};

use super::is_prime;

/// Closed form of the local integral with its exact expression.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalIntegral {
    /// The prime p.
    pub p: u64,
    /// Exact expression −ln(p)/(p² − 1).
    pub exact: String,
    /// Numerical value.
    pub value: f64,
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// ∫_{ℤ_p²} log max(|x|_p, |y|_p) dx dy = p^{−2} log(p^{−1}) / (1 − p^{−2}).
pub fn local_log_norm_integral(p: u64) -> Result<LocalIntegral> {
    require_prime(p)?;
    let pf = p as f64;
    Ok(LocalIntegral {
        p,
        exact: format!("-ln({p})/{}", p as u128 * p as u128 - 1),
        value: -pf.ln() / (pf * pf - 1.0),
    })
}

/// Enumeration at depth k with classes grouped by the valuation j of their
/// max-norm: a class of valuation j < k occurs p^{2(k−j)} − p^{2(k−j−1)}
/// times among the p^{2k} classes mod p^k and contributes −j·ln p; the zero
/// class contributes −k·ln p.
pub fn local_log_norm_enumeration(p: u64, k: u32) -> Result<f64> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    let p2 = BigInt::from(p) * BigInt::from(p);
    let total = p2.pow(k);
    let mut acc = Q::from_integer(BigInt::from(0));
    for j in 0..k {
        let count = p2.pow(k - j) - p2.pow(k - j - 1);
        acc += Q::from_integer(count * BigInt::from(j));
    }
    acc += Q::from_integer(BigInt::from(k));
    let mean_valuation = q_to_f64(&(acc / Q::from_integer(total)));
    Ok(-(p as f64).ln() * mean_valuation)
}

/// Limit on p^{2k} for [`local_log_norm_brute_force`].
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 24;

/// Enumerates every pair (x, y) mod p^k one by one.
pub fn local_log_norm_brute_force(p: u64, k: u32) -> Result<f64> {
    require_prime(p)?;
    let m = BigInt::from(p).pow(k);
    let m = m.to_u64().filter(|m| m.checked_mul(*m).is_some_and(|mm| mm <= BRUTE_FORCE_LIMIT));
    let Some(m) = m else {
        return Err(Error::InvalidInput(format!("p^(2k) exceeds {BRUTE_FORCE_LIMIT}")));
    };
    let val = |mut x: u64| -> u32 {
        if x == 0 {
            return k;
        }
        let mut v = 0;
        while x.is_multiple_of(p) {
            x /= p;
            v += 1;
        }
        v
    };
    let vals: Vec<u32> = (0..m).map(val).collect();
    let mut sum: u64 = 0;
    for &vx in &vals {
        for &vy in &vals {
            sum += vx.min(vy) as u64;
        }
    }
    let mean = q_to_f64(&Q::new(BigInt::from(sum), BigInt::from(m) * BigInt::from(m)));
    Ok(-(p as f64).ln() * mean)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let two = local_log_norm_integral(2).unwrap();
        assert!((two.value + 2f64.ln() / 3.0).abs() < 1e-15);
        assert_eq!(two.exact, "-ln(2)/3");
        let three = local_log_norm_integral(3).unwrap();
        assert!((three.value + 3f64.ln() / 8.0).abs() < 1e-15);
        assert!(local_log_norm_integral(4).is_err());
    }

    #[test]
    fn values_tend_to_zero_monotonically() {
        let ps = [2u64, 3, 5, 7, 11, 13, 101, 1009];
        let v: Vec<f64> = ps.iter().map(|&p| local_log_norm_integral(p).unwrap().value).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1] && w[1] < 0.0));
    }

    #[test]
    fn grouping_matches_brute_force() {
        for (p, k) in [(2, 1), (2, 3), (2, 6), (3, 2), (3, 4), (5, 2), (7, 2)] {
            let g = local_log_norm_enumeration(p, k).unwrap();
            let b = local_log_norm_brute_force(p, k).unwrap();
            assert!((g - b).abs() < 1e-15, "p={p} k={k}");
        }
        assert!(local_log_norm_brute_force(7, 10).is_err());
    }

    #[test]
    fn enumeration_converges_with_bounded_gap() {
        for p in [2u64, 3, 5, 7] {
            let exact = local_log_norm_integral(p).unwrap().value;
            let mut last = f64::INFINITY;
            for k in 1..=12 {
                let gap = (local_log_norm_enumeration(p, k).unwrap() - exact).abs();
                let bound = 2.0 * (p as f64).powi(-(k as i32)) * (p as f64).ln();
                assert!(gap <= bound && (gap < last || gap < 1e-16), "p={p} k={k}");
                last = gap;
            }
        }
    }
}
