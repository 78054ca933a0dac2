//! Dense univariate polynomials over ℚ and rational-root factorisation of
//! polynomials of degree at most three.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::RationalMatrix3;
use crate::root_system::{q_to_f64, Q};

/// Polynomial with rational coefficients, stored low degree first and
/// normalised so that the leading coefficient is non-zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    /// Builds a polynomial from coefficients, low degree first.
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Builds a polynomial from integer coefficients, low degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
    }

    /// The monic linear polynomial x − r.
    pub fn linear(r: &Q) -> Self {
        Self::new(vec![-r.clone(), Q::one()])
    }

    /// The constant 1.
    pub fn one() -> Self {
        Self::new(vec![Q::one()])
    }

    /// Coefficients, low degree first.
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 by convention.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Scales to leading coefficient 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Sum.
    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    /// Difference.
    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Product.
    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(vec![]);
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dl = divisor.lead();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly::new(vec![]), self.clone());
        }
        let mut quot = vec![Q::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Squarefree part p / gcd(p, p′), monic.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Exact evaluation at a rational.
    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + q_to_f64(c))
    }

    /// Evaluation at a matrix by Horner's scheme.
    pub fn eval_matrix(&self, m: &RationalMatrix3) -> RationalMatrix3 {
        self.coeffs.iter().rev().fold(RationalMatrix3::zero(), |acc, c| {
            &(&acc * m) + &RationalMatrix3::scalar(c.clone())
        })
    }

    /// Primitive integer polynomial proportional to `self` with positive
    /// leading coefficient.
    pub fn primitive_integral(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| &c / &g * &sign).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "({})", mag)?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Bound below which divisors are enumerated by trial division.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > TRIAL_DIVISION_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let r = n.sqrt();
    for d in 1..=r {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d != n / d {
                large.push(BigInt::from(n / d));
            }
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Candidates c_n·x rounded to integers near the real roots of a squarefree
/// polynomial, used when the coefficients are too large to factor.
fn numeric_candidates(p: &Poly, lead: &BigInt) -> Vec<Q> {
    let pf: Vec<f64> = p.coeffs().iter().map(q_to_f64).collect();
    let bound = 1.0 + pf.iter().rev().skip(1).map(|c| (c / pf[pf.len() - 1]).abs()).fold(0.0, f64::max);
    let samples = 20_000;
    let f = |x: f64| pf.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let mut out = Vec::new();
    let mut prev_x = -bound;
    let mut prev = f(prev_x);
    let l = q_to_f64(&Q::from_integer(lead.clone()));
    for k in 1..=samples {
        let x = -bound + 2.0 * bound * (k as f64) / (samples as f64);
        let y = f(x);
        if prev == 0.0 || prev.signum() != y.signum() {
            let (mut a, mut b) = (prev_x, x);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if f(a).signum() == f(m).signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            let centre = (0.5 * (a + b) * l).round();
            for delta in -2..=2 {
                let num = BigInt::from((centre + delta as f64) as i64);
                out.push(Q::new(num, lead.clone()));
            }
        }
        prev_x = x;
        prev = y;
    }
    out
}

/// Distinct rational roots of a non-zero polynomial, ascending.
///
/// Uses the rational-root theorem on the primitive integral rescaling
/// c_n xⁿ + … + c_0: every root is ±a/b with a | c_0 and b | c_n.
pub fn rational_roots(p: &Poly) -> Vec<Q> {
    let mut roots = Vec::new();
    let mut work = p.clone();
    if work.is_zero() || work.degree() == 0 {
        return roots;
    }
    if work.coeff(0).is_zero() {
        roots.push(Q::zero());
        while work.coeff(0).is_zero() && work.degree() > 0 {
            work = Poly::new(work.coeffs()[1..].to_vec());
        }
    }
    if work.degree() == 0 {
        return roots;
    }
    let ints = work.primitive_integral();
    let c0 = ints[0].clone();
    let cn = ints[ints.len() - 1].clone();
    let candidates: Vec<Q> = match (divisors(&c0), divisors(&cn)) {
        (Some(num), Some(den)) => {
            let mut c = Vec::with_capacity(2 * num.len() * den.len());
            for a in &num {
                for b in &den {
                    let r = Q::new(a.clone(), b.clone());
                    c.push(-r.clone());
                    c.push(r);
                }
            }
            c
        }
        _ => numeric_candidates(&work.squarefree_part(), &cn),
    };
    for c in candidates {
        if work.eval(&c).is_zero() && !roots.contains(&c) {
            roots.push(c);
        }
    }
    roots.sort();
    roots
}

/// An irreducible monic factor with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Monic irreducible factor over ℚ.
    pub poly: Poly,
    /// Multiplicity in the factorised polynomial.
    pub multiplicity: u32,
}

/// True if `x` is the square of a rational.
pub fn is_rational_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    &(&rn * &rn) == n && &(&rd * &rd) == d
}

/// Factorisation over ℚ of a non-zero polynomial of degree at most 3 into
/// monic irreducibles: linear factors first (ascending root), then the rest.
pub fn factor_cubic(p: &Poly) -> Vec<Factor> {
    assert!(p.degree() <= 3, "factor_cubic expects degree at most 3");
    let mut rest = p.monic();
    let mut out = Vec::new();
    for r in rational_roots(&rest) {
        let lin = Poly::linear(&r);
        let mut m = 0;
        loop {
            let (quot, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            m += 1;
        }
        out.push(Factor { poly: lin, multiplicity: m });
    }
    if rest.degree() >= 1 {
        // No rational roots remain, so a quadratic or cubic remainder is irreducible.
        out.push(Factor { poly: rest.monic(), multiplicity: 1 });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{q, qi};

    #[test]
    fn arithmetic_roundtrip() {
        let a = Poly::from_ints(&[1, 2, 3]);
        let b = Poly::from_ints(&[-1, 1]);
        let (qq, r) = a.mul(&b).add(&Poly::from_ints(&[5])).div_rem(&b);
        assert_eq!(qq, a);
        assert_eq!(r, Poly::from_ints(&[5]));
        assert_eq!(a.derivative(), Poly::from_ints(&[2, 6]));
        let sq = b.pow(2).mul(&Poly::from_ints(&[3, 1]));
        assert_eq!(sq.squarefree_part(), b.mul(&Poly::from_ints(&[3, 1])));
        assert_eq!(format!("{}", Poly::from_ints(&[-2, 0, 0, 1])), "x^3 - 2");
    }

    #[test]
    fn factor_examples() {
        let f = factor_cubic(&Poly::from_ints(&[-2, 0, 0, 1]));
        assert_eq!(f, vec![Factor { poly: Poly::from_ints(&[-2, 0, 0, 1]), multiplicity: 1 }]);
        let p = Poly::linear(&qi(2)).mul(&Poly::from_ints(&[1, 0, 1]));
        let f = factor_cubic(&p);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].poly, Poly::linear(&qi(2)));
        assert_eq!(f[1].poly, Poly::from_ints(&[1, 0, 1]));
        let p = Poly::linear(&qi(1)).pow(2).mul(&Poly::linear(&qi(5)));
        let f = factor_cubic(&p);
        assert_eq!(f[0], Factor { poly: Poly::linear(&qi(1)), multiplicity: 2 });
        assert_eq!(f[1], Factor { poly: Poly::linear(&qi(5)), multiplicity: 1 });
    }

    #[test]
    fn rational_roots_with_fractions() {
        let p = Poly::linear(&q(2, 3)).mul(&Poly::linear(&q(-7, 5))).mul(&Poly::linear(&q(1, 2)));
        assert_eq!(rational_roots(&p), vec![q(-7, 5), q(1, 2), q(2, 3)]);
        let big = Poly::linear(&q(1_000_003 * 1_000_033, 7)).mul(&Poly::from_ints(&[1, 0, 1]));
        assert_eq!(rational_roots(&big), vec![q(1_000_003 * 1_000_033, 7)]);
    }

    #[test]
    fn squares() {
        assert!(is_rational_square(&q(9, 4)));
        assert!(!is_rational_square(&q(2, 1)));
        assert!(!is_rational_square(&qi(-4)));
    }
}
