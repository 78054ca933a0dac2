//! Cone indicators on 𝔞₀ and machine verification of their alternating-sum
//! identities.
//!
//! Conventions on walls: τ and τ̂ use strict inequalities, τ̂′ uses `≤ 0`, and
//! the direct characterisation of σ uses `> 0` on Δ₁², `≤ 0` on Δ₁ ∖ Δ₁² and
//! `> 0` on Δ̂₂. Every evaluation is exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::{delta_between, dual_weights, positive_roots, AVector, Parabolic, Q};

/// Which indicator a [`ConeIndicator`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IndicatorKind {
    /// τ_{P1}^{P2}.
    Tau,
    /// τ̂_P.
    TauHat,
    /// τ̂′_P.
    TauHatPrime,
    /// σ_{P1}^{P2}.
    Sigma,
}

/// A cone indicator bound to its parabolic data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeIndicator {
    /// The smaller parabolic (or the only one for τ̂, τ̂′).
    pub p1: Parabolic,
    /// The larger parabolic; ignored for τ̂ and τ̂′.
    pub p2: Parabolic,
    /// Which function to evaluate.
    pub kind: IndicatorKind,
}

impl ConeIndicator {
    /// Evaluates the indicator at `h` as 0 or 1.
    pub fn eval(&self, h: &AVector) -> Result<i64> {
        Ok(match self.kind {
            IndicatorKind::Tau => tau(self.p1, self.p2, h)? as i64,
            IndicatorKind::TauHat => tau_hat(self.p1, h) as i64,
            IndicatorKind::TauHatPrime => tau_hat_prime(self.p1, h) as i64,
            IndicatorKind::Sigma => sigma(self.p1, self.p2, h)?,
        })
    }
}

fn ensure_nested(p1: Parabolic, p2: Parabolic) -> Result<()> {
    if p1.is_contained_in(p2) {
        Ok(())
    } else {
        Err(Error::NotNested(p1.to_string(), p2.to_string()))
    }
}

/// τ_{P1}^{P2}(H): 1 iff α(H) > 0 for every α ∈ Δ_{P1}^{P2}.
pub fn tau(p1: Parabolic, p2: Parabolic, h: &AVector) -> Result<bool> {
    Ok(delta_between(p1, p2)?.iter().all(|r| r.eval(h).is_positive()))
}

/// τ̂_P(H): 1 iff ϖ(H) > 0 for every ϖ ∈ Δ̂_P.
pub fn tau_hat(p: Parabolic, h: &AVector) -> bool {
    p.delta_hat().iter().all(|w| w.dot(h).is_positive())
}

/// τ̂′_P(H): 1 iff ϖ(H) ≤ 0 for every ϖ ∈ Δ̂_P.
pub fn tau_hat_prime(p: Parabolic, h: &AVector) -> bool {
    p.delta_hat().iter().all(|w| !w.dot(h).is_positive())
}

fn parity_sign(exponent: u32) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// σ_{P1}^{P2}(H) from its defining alternating sum
/// Σ_{P3 ⊇ P2} (−1)^{dim(A_{P2}/A_{P3})} τ_{P1}^{P3}(H) τ̂_{P3}(H).
///
/// The raw integer sum is returned; it is {0,1}-valued exactly when the
/// direct characterisation holds.
pub fn sigma(p1: Parabolic, p2: Parabolic, h: &AVector) -> Result<i64> {
    ensure_nested(p1, p2)?;
    let mut total = 0;
    for p3 in Parabolic::ALL {
        if !p2.is_contained_in(p3) {
            continue;
        }
        if tau(p1, p3, h)? && tau_hat(p3, h) {
            total += parity_sign(p2.corank() - p3.corank());
        }
    }
    Ok(total)
}

/// The direct characterisation of σ_{P1}^{P2}: α(H) > 0 on Δ₁², α(H) ≤ 0 on
/// Δ₁ ∖ Δ₁², and ϖ(H) > 0 on Δ̂₂.
pub fn sigma_direct(p1: Parabolic, p2: Parabolic, h: &AVector) -> Result<bool> {
    ensure_nested(p1, p2)?;
    let inside = delta_between(p1, p2)?;
    let all = delta_between(p1, Parabolic::G)?;
    let positive = inside.iter().all(|r| r.eval(h).is_positive());
    let nonpositive = all
        .iter()
        .filter(|r| !inside.iter().any(|s| s.name == r.name))
        .all(|r| !r.eval(h).is_positive());
    Ok(positive && nonpositive && tau_hat(p2, h))
}

/// A point where an identity failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    /// The sample H, coordinates as exact rational strings.
    pub h: [String; 3],
    /// First parabolic of the checked instance.
    pub p1: Parabolic,
    /// Second parabolic, when the identity involves a pair.
    pub p2: Option<Parabolic>,
    /// Value of the left-hand side.
    pub lhs: i64,
    /// Value of the right-hand side.
    pub rhs: i64,
}

/// Outcome of a sampled or exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    /// Name of the checked identity.
    pub identity: String,
    /// Number of random sample points.
    pub samples: usize,
    /// Number of structured wall points (0 when not applicable).
    pub wall_points: usize,
    /// Total number of pointwise comparisons.
    pub checks: usize,
    /// Every failing instance.
    pub failures: Vec<Counterexample>,
}

impl VerificationReport {
    /// True when no failures were found.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All nested pairs P1 ⊆ P2 of standard parabolics.
pub fn nested_pairs() -> Vec<(Parabolic, Parabolic)> {
    let mut out = Vec::new();
    for p1 in Parabolic::ALL {
        for p2 in Parabolic::ALL {
            if p1.is_contained_in(p2) {
                out.push((p1, p2));
            }
        }
    }
    out
}

/// The functionals whose zero sets are the walls of the arrangement.
pub fn wall_functionals() -> Vec<AVector> {
    let (wa, wb) = dual_weights();
    let mut v: Vec<AVector> = positive_roots().into_iter().map(|r| r.vector).collect();
    v.push(wa);
    v.push(wb);
    v
}

/// True if no wall functional vanishes at `h`.
pub fn is_generic(h: &AVector) -> bool {
    wall_functionals().iter().all(|w| !w.dot(h).is_zero())
}

/// Draws a generic rational H: integer lattice point in [−50, 50]³ over a
/// random denominator in [1, 12], rejecting points on a wall.
pub fn sample_generic_h<R: Rng>(rng: &mut R) -> AVector {
    loop {
        let den = rng.gen_range(1..=12);
        let h = AVector::new(
            Q::new(BigInt::from(rng.gen_range(-50..=50)), BigInt::from(den)),
            Q::new(BigInt::from(rng.gen_range(-50..=50)), BigInt::from(den)),
            Q::new(BigInt::from(rng.gen_range(-50..=50)), BigInt::from(den)),
        );
        if is_generic(&h) {
            return h;
        }
    }
}

/// Integer points of [−r, r]³ lying on at least one wall.
pub fn wall_sweep_points(r: i64) -> Vec<AVector> {
    let walls = wall_functionals();
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let h = AVector::from_ints(a, b, c);
                if walls.iter().any(|w| w.dot(&h).is_zero()) {
                    out.push(h);
                }
            }
        }
    }
    out
}

const CHUNK: usize = 512;

/// Half-width of the integer box used by the wall sweep.
pub const WALL_RADIUS: i64 = 10;

/// Draws `samples` generic points, chunked so that each chunk has its own
/// deterministic ChaCha stream; the result does not depend on thread count.
fn sampled_points(samples: usize, seed: u64) -> Vec<AVector> {
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            (0..n).map(|_| sample_generic_h(&mut rng)).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn h_strings(h: &AVector) -> [String; 3] {
    [h.coords[0].to_string(), h.coords[1].to_string(), h.coords[2].to_string()]
}

fn check_sigma_at(h: &AVector) -> Vec<Counterexample> {
    let mut out = Vec::new();
    for (p1, p2) in nested_pairs() {
        let lhs = sigma(p1, p2, h).expect("nested pair");
        let rhs = sigma_direct(p1, p2, h).expect("nested pair") as i64;
        if lhs != rhs {
            out.push(Counterexample { h: h_strings(h), p1, p2: Some(p2), lhs, rhs });
        }
    }
    out
}

/// Checks σ == σ_direct for every nested pair on `samples` generic points,
/// on the origin, and on a wall sweep of integer points in [−10, 10]³.
pub fn verify_sigma_identity(samples: usize, seed: u64) -> VerificationReport {
    let points = sampled_points(samples, seed);
    let walls = wall_sweep_points(WALL_RADIUS);
    let pairs = nested_pairs().len();
    let mut failures: Vec<Counterexample> = points
        .par_iter()
        .chain(walls.par_iter())
        .map(check_sigma_at)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    failures.extend(check_sigma_at(&AVector::zero()));
    VerificationReport {
        identity: "sigma_alternating_sum_equals_direct".into(),
        samples,
        wall_points: walls.len() + 1,
        checks: (samples + walls.len() + 1) * pairs,
        failures,
    }
}

/// Left-hand side 1 + Σ_{P ⊇ P1, P ≠ G} (−1)^{dim A_P/Z} τ̂_P(H).
pub fn tau_hat_prime_alternating_sum(p1: Parabolic, h: &AVector) -> i64 {
    let mut total = 1;
    for p in Parabolic::ALL {
        if p != Parabolic::G && p1.is_contained_in(p) && tau_hat(p, h) {
            total += parity_sign(p.corank());
        }
    }
    total
}

/// Checks 1 + Σ_{P ⊇ P1, P ≠ G}(−1)^{dim A_P/Z} τ̂_P(H) = τ̂′_{P1}(H) on
/// generic samples and on the wall sweep.
pub fn verify_tau_hat_prime_identity(p1: Parabolic, samples: usize, seed: u64) -> Result<VerificationReport> {
    if p1 == Parabolic::G {
        return Err(Error::ProperParabolicRequired);
    }
    let points = sampled_points(samples, seed);
    let walls = wall_sweep_points(WALL_RADIUS);
    let failures: Vec<Counterexample> = points
        .par_iter()
        .chain(walls.par_iter())
        .filter_map(|h| {
            let lhs = tau_hat_prime_alternating_sum(p1, h);
            let rhs = tau_hat_prime(p1, h) as i64;
            (lhs != rhs).then(|| Counterexample { h: h_strings(h), p1, p2: None, lhs, rhs })
        })
        .collect();
    Ok(VerificationReport {
        identity: format!("tau_hat_prime_inclusion_exclusion_{p1}"),
        samples,
        wall_points: walls.len(),
        checks: samples + walls.len(),
        failures,
    })
}

/// Σ_{P1 ⊆ P ⊆ P2} (−1)^{dim(A_P/A_{P2})}.
pub fn moebius_sum(p1: Parabolic, p2: Parabolic) -> Result<i64> {
    ensure_nested(p1, p2)?;
    Ok(Parabolic::ALL
        .iter()
        .filter(|&&p| p1.is_contained_in(p) && p.is_contained_in(p2))
        .map(|p| parity_sign(p.corank() - p2.corank()))
        .sum())
}

/// Exhaustively checks the parabolic Möbius identity over all nested pairs.
pub fn verify_parabolic_moebius() -> VerificationReport {
    let pairs = nested_pairs();
    let failures = pairs
        .iter()
        .filter_map(|&(p1, p2)| {
            let lhs = moebius_sum(p1, p2).expect("nested pair");
            let rhs = (p1 == p2) as i64;
            (lhs != rhs).then(|| Counterexample {
                h: [String::new(), String::new(), String::new()],
                p1,
                p2: Some(p2),
                lhs,
                rhs,
            })
        })
        .collect();
    VerificationReport {
        identity: "parabolic_moebius".into(),
        samples: 0,
        wall_points: 0,
        checks: pairs.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::q;
    use proptest::prelude::*;
    use Parabolic::*;

    fn v(a: i64, b: i64, c: i64) -> AVector {
        AVector::from_ints(a, b, c)
    }

    #[test]
    fn tau_examples() {
        assert!(tau(P0, G, &v(1, 0, -1)).unwrap());
        assert!(!tau(P0, G, &v(0, 1, -1)).unwrap());
        assert!(tau(P21, P21, &v(5, -3, 2)).unwrap());
        assert!(tau(P21, P12, &v(0, 0, 0)).is_err());
    }

    #[test]
    fn tau_hat_examples() {
        assert!(tau_hat(P21, &v(1, 1, -2)));
        assert!(tau_hat(P0, &v(1, 0, -1)));
        assert!(!tau_hat(P0, &v(-1, 2, -1)));
        assert!(tau_hat(G, &v(-4, 0, 0)));
    }

    #[test]
    fn tau_hat_prime_examples() {
        assert!(tau_hat_prime(P0, &v(-1, 0, 1)));
        assert!(tau_hat_prime(P0, &v(0, 0, 0)));
        assert!(!tau_hat_prime(P21, &v(1, 1, -2)));
    }

    #[test]
    fn sigma_examples_both_routes() {
        for (h, expected) in [(v(1, 0, -1), 0), (v(1, -2, 1), 0), (v(2, -1, -1), 1)] {
            assert_eq!(sigma(P0, P21, &h).unwrap(), expected);
            assert_eq!(sigma_direct(P0, P21, &h).unwrap() as i64, expected);
        }
    }

    #[test]
    fn sigma_direct_special_cases() {
        let h = v(3, 1, -4);
        assert_eq!(sigma_direct(P0, G, &h).unwrap(), tau(P0, G, &h).unwrap());
        for h in [v(1, 1, -2), v(-1, -1, 2), v(3, 5, 1), v(0, 0, 0)] {
            assert!(!sigma_direct(P21, P21, &h).unwrap());
            assert_eq!(sigma(P21, P21, &h).unwrap(), 0);
        }
        assert!(sigma(P12, P21, &h).is_err());
    }

    #[test]
    fn origin_agrees() {
        assert!(check_sigma_at(&AVector::zero()).is_empty());
    }

    #[test]
    fn tau_hat_prime_sum_example() {
        assert_eq!(tau_hat_prime_alternating_sum(P0, &v(-1, 0, 1)), 1);
        assert!(tau_hat_prime(P0, &v(-1, 0, 1)));
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius_sum(P0, G).unwrap(), 0);
        assert_eq!(moebius_sum(P21, P21).unwrap(), 1);
        assert_eq!(moebius_sum(P21, G).unwrap(), 0);
        assert!(verify_parabolic_moebius().passed());
    }

    #[test]
    fn small_sampled_reports_pass() {
        let r = verify_sigma_identity(300, 42);
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.wall_points >= 1000);
        for p in [P0, P21, P12] {
            assert!(verify_tau_hat_prime_identity(p, 300, 7).unwrap().passed());
        }
        assert!(verify_tau_hat_prime_identity(G, 10, 7).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_generic() {
        let a = sampled_points(1100, 5);
        let b = sampled_points(1100, 5);
        assert_eq!(a, b);
        assert_eq!(a.len(), 1100);
        assert!(a.iter().all(is_generic));
        assert_ne!(a, sampled_points(1100, 6));
    }

    fn rational_h() -> impl Strategy<Value = AVector> {
        (-40i64..=40, -40i64..=40, -40i64..=40, 1i64..=9)
            .prop_map(|(a, b, c, d)| AVector::new(q(a, d), q(b, d), q(c, d)))
    }

    proptest! {
        #[test]
        fn sigma_routes_agree(h in rational_h()) {
            prop_assert!(check_sigma_at(&h).is_empty());
        }

        #[test]
        fn inclusion_exclusion_holds(h in rational_h()) {
            for p in [P0, P21, P12] {
                prop_assert_eq!(tau_hat_prime_alternating_sum(p, &h), tau_hat_prime(p, &h) as i64);
            }
        }

        #[test]
        fn root_cone_inside_weight_cone(h in rational_h()) {
            if tau(P0, G, &h).unwrap() {
                prop_assert!(tau_hat(P0, &h));
            }
        }

        #[test]
        fn indicators_are_bits(h in rational_h()) {
            for (p1, p2) in nested_pairs() {
                let s = sigma(p1, p2, &h).unwrap();
                prop_assert!(s == 0 || s == 1);
            }
        }
    }
}
