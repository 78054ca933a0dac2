//! Exact root data of GL(3): the space 𝔞₀ ≅ ℝ³, roots, dual weights, the four
//! standard parabolics and the Weyl group S₃.
//!
//! The invariant bilinear form on 𝔞₀ is the standard dot product. Every pairing
//! here is computed in exact rational arithmetic.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// Builds the rational `num/den`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Converts an exact rational to the nearest `f64`.
pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Element of 𝔞₀ in the basis e₁, e₂, e₃.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AVector {
    /// Coordinates in e₁, e₂, e₃.
    pub coords: [Q; 3],
}

impl AVector {
    /// Vector with the given rational coordinates.
    pub fn new(a: Q, b: Q, c: Q) -> Self {
        Self { coords: [a, b, c] }
    }

    /// Vector with integer coordinates.
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new(qi(a), qi(b), qi(c))
    }

    /// Vector `(a, b, c) / den`.
    pub fn from_ratio(a: i64, b: i64, c: i64, den: i64) -> Self {
        Self::new(q(a, den), q(b, den), q(c, den))
    }

    /// The zero vector.
    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    /// Standard dot product.
    pub fn dot(&self, other: &AVector) -> Q {
        let c = &self.coords;
        let d = &other.coords;
        &c[0] * &d[0] + &c[1] * &d[1] + &c[2] * &d[2]
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Q) -> AVector {
        AVector::new(&self.coords[0] * s, &self.coords[1] * s, &self.coords[2] * s)
    }

    /// Sum of the coordinates.
    pub fn coordinate_sum(&self) -> Q {
        &self.coords[0] + &self.coords[1] + &self.coords[2]
    }

    /// True if every coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Floating-point coordinates.
    pub fn to_f64(&self) -> [f64; 3] {
        [
            q_to_f64(&self.coords[0]),
            q_to_f64(&self.coords[1]),
            q_to_f64(&self.coords[2]),
        ]
    }
}

impl Add for &AVector {
    type Output = AVector;
    fn add(self, rhs: &AVector) -> AVector {
        AVector::new(
            &self.coords[0] + &rhs.coords[0],
            &self.coords[1] + &rhs.coords[1],
            &self.coords[2] + &rhs.coords[2],
        )
    }
}

impl Sub for &AVector {
    type Output = AVector;
    fn sub(self, rhs: &AVector) -> AVector {
        AVector::new(
            &self.coords[0] - &rhs.coords[0],
            &self.coords[1] - &rhs.coords[1],
            &self.coords[2] - &rhs.coords[2],
        )
    }
}

impl Neg for &AVector {
    type Output = AVector;
    fn neg(self) -> AVector {
        AVector::new(-&self.coords[0], -&self.coords[1], -&self.coords[2])
    }
}

impl fmt::Display for AVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// A root of GL(3), or the projection of one onto some 𝔞_P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// The vector representing the functional H ↦ ⟨vector, H⟩.
    pub vector: AVector,
    /// Human-readable label.
    pub name: &'static str,
}

impl Root {
    /// Evaluates the root at `h`.
    pub fn eval(&self, h: &AVector) -> Q {
        self.vector.dot(h)
    }

    /// The coroot 2α/⟨α,α⟩.
    pub fn coroot(&self) -> AVector {
        let n = self.vector.dot(&self.vector);
        self.vector.scale(&(qi(2) / n))
    }
}

/// The simple roots α = e₁ − e₂ and β = e₂ − e₃.
pub fn simple_roots() -> (Root, Root) {
    (
        Root { vector: AVector::from_ints(1, -1, 0), name: "alpha" },
        Root { vector: AVector::from_ints(0, 1, -1), name: "beta" },
    )
}

/// The three positive roots α, β, α + β.
pub fn positive_roots() -> [Root; 3] {
    let (a, b) = simple_roots();
    let ab = Root { vector: &a.vector + &b.vector, name: "alpha+beta" };
    [a, b, ab]
}

/// The dual weights ϖ_α = (2/3, −1/3, −1/3) and ϖ_β = (1/3, 1/3, −2/3).
pub fn dual_weights() -> (AVector, AVector) {
    (AVector::from_ratio(2, -1, -1, 3), AVector::from_ratio(1, 1, -2, 3))
}

/// The four standard parabolic subgroups of GL(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parabolic {
    /// The minimal (Borel) parabolic.
    P0,
    /// Block sizes (2, 1).
    P21,
    /// Block sizes (1, 2).
    P12,
    /// The whole group.
    G,
}

impl fmt::Display for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Parabolic::P0 => "P0",
            Parabolic::P21 => "P21",
            Parabolic::P12 => "P12",
            Parabolic::G => "G",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Parabolic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P0" => Ok(Parabolic::P0),
            "P21" => Ok(Parabolic::P21),
            "P12" => Ok(Parabolic::P12),
            "G" => Ok(Parabolic::G),
            other => Err(Error::InvalidInput(format!("unknown parabolic {other:?}"))),
        }
    }
}

impl Parabolic {
    /// All four standard parabolics, ordered by inclusion-compatible order.
    pub const ALL: [Parabolic; 4] = [Parabolic::P0, Parabolic::P21, Parabolic::P12, Parabolic::G];

    /// dim(A_P / Z).
    pub fn corank(self) -> u32 {
        match self {
            Parabolic::P0 => 2,
            Parabolic::P21 | Parabolic::P12 => 1,
            Parabolic::G => 0,
        }
    }

    /// True if `self ⊆ other`.
    pub fn is_contained_in(self, other: Parabolic) -> bool {
        match (self, other) {
            (a, b) if a == b => true,
            (Parabolic::P0, _) => true,
            (_, Parabolic::G) => true,
            _ => false,
        }
    }

    /// The simple roots Δ₀^P of the Levi component.
    pub fn levi_simple_roots(self) -> Vec<Root> {
        let (a, b) = simple_roots();
        match self {
            Parabolic::P0 => vec![],
            Parabolic::P21 => vec![a],
            Parabolic::P12 => vec![b],
            Parabolic::G => vec![a, b],
        }
    }

    /// Orthogonal projection onto 𝔞_P.
    pub fn project_to_a_p(self, h: &AVector) -> AVector {
        let [a, b, c] = &h.coords;
        let half = q(1, 2);
        let third = q(1, 3);
        match self {
            Parabolic::P0 => h.clone(),
            Parabolic::P21 => {
                let m = (a + b) * &half;
                AVector::new(m.clone(), m, c.clone())
            }
            Parabolic::P12 => {
                let m = (b + c) * &half;
                AVector::new(a.clone(), m.clone(), m)
            }
            Parabolic::G => {
                let m = (a + b + c) * &third;
                AVector::new(m.clone(), m.clone(), m)
            }
        }
    }

    /// True if `h` lies in 𝔞_P.
    pub fn contains_vector(self, h: &AVector) -> bool {
        let [a, b, c] = &h.coords;
        match self {
            Parabolic::P0 => true,
            Parabolic::P21 => a == b,
            Parabolic::P12 => b == c,
            Parabolic::G => a == b && b == c,
        }
    }

    /// A basis of 𝔞_P.
    pub fn a_p_basis(self) -> Vec<AVector> {
        match self {
            Parabolic::P0 => vec![
                AVector::from_ints(1, 0, 0),
                AVector::from_ints(0, 1, 0),
                AVector::from_ints(0, 0, 1),
            ],
            Parabolic::P21 => vec![AVector::from_ints(1, 1, 0), AVector::from_ints(0, 0, 1)],
            Parabolic::P12 => vec![AVector::from_ints(1, 0, 0), AVector::from_ints(0, 1, 1)],
            Parabolic::G => vec![AVector::from_ints(1, 1, 1)],
        }
    }

    /// Δ_P = Δ_P^G: simple roots of (P, A_P) as vectors in 𝔞_P.
    pub fn delta(self) -> Vec<Root> {
        delta_between(self, Parabolic::G).expect("every parabolic is contained in G")
    }

    /// Δ̂_P: the dual weights ϖ_α for α ∈ Δ₀ ∖ Δ₀^P.
    pub fn delta_hat(self) -> Vec<AVector> {
        let (wa, wb) = dual_weights();
        match self {
            Parabolic::P0 => vec![wa, wb],
            Parabolic::P21 => vec![wb],
            Parabolic::P12 => vec![wa],
            Parabolic::G => vec![],
        }
    }

    /// ρ_P: half the sum of the roots of A_P on the unipotent radical.
    pub fn rho(self) -> AVector {
        match self {
            Parabolic::P0 => AVector::from_ints(1, 0, -1),
            Parabolic::P21 => AVector::from_ratio(1, 1, -2, 2),
            Parabolic::P12 => AVector::from_ratio(2, -1, -1, 2),
            Parabolic::G => AVector::zero(),
        }
    }
}

/// Δ_{P1}^{P2}: projections onto 𝔞_{P1} of the roots in Δ₀^{P2} ∖ Δ₀^{P1}.
pub fn delta_between(p1: Parabolic, p2: Parabolic) -> Result<Vec<Root>> {
    if !p1.is_contained_in(p2) {
        return Err(Error::NotNested(p1.to_string(), p2.to_string()));
    }
    let inner = p1.levi_simple_roots();
    Ok(p2
        .levi_simple_roots()
        .into_iter()
        .filter(|r| !inner.contains(r))
        .map(|r| Root { vector: p1.project_to_a_p(&r.vector), name: r.name })
        .collect())
}

/// Exact Gram determinant det(⟨ϖ_m, ϖ_n⟩) over ϖ ∈ Δ̂_P.
pub fn gram_determinant(p: Parabolic) -> Result<Q> {
    let w = p.delta_hat();
    match w.len() {
        0 => Err(Error::GramUndefined),
        1 => Ok(w[0].dot(&w[0])),
        _ => Ok(w[0].dot(&w[0]) * w[1].dot(&w[1]) - w[0].dot(&w[1]) * w[1].dot(&w[0])),
    }
}

/// The constant a_P = det(⟨ϖ_m, ϖ_n⟩)^{1/2}; undefined for P = G.
pub fn gram_constant(p: Parabolic) -> Result<f64> {
    gram_determinant(p).map(|d| q_to_f64(&d).sqrt())
}

/// Orthogonal decomposition H = H^P + H_P with H^P ∈ 𝔞₀^P and H_P ∈ 𝔞_P.
pub fn project(h: &AVector, p: Parabolic) -> (AVector, AVector) {
    let on_a_p = p.project_to_a_p(h);
    (h - &on_a_p, on_a_p)
}

/// An element of S₃ acting on 𝔞₀ by permuting coordinates.
///
/// `perm[j] = σ(j)` (0-based). The action is `(sH)_{σ(j)} = H_j`, which is
/// conjugation of diag(e^H) by the permutation matrix `w_s` with
/// `w_s e_j = e_{σ(j)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    /// Images of 0, 1, 2.
    pub perm: [usize; 3],
}

impl WeylElement {
    /// The identity permutation.
    pub const IDENTITY: WeylElement = WeylElement { perm: [0, 1, 2] };

    /// The six elements of S₃ in a fixed order.
    pub fn all() -> [WeylElement; 6] {
        [
            WeylElement { perm: [0, 1, 2] },
            WeylElement { perm: [1, 0, 2] },
            WeylElement { perm: [0, 2, 1] },
            WeylElement { perm: [1, 2, 0] },
            WeylElement { perm: [2, 0, 1] },
            WeylElement { perm: [2, 1, 0] },
        ]
    }

    /// Parses one-line notation such as `"213"` (images of 1, 2, 3).
    pub fn from_label(label: &str) -> Result<WeylElement> {
        let digits: Vec<usize> = label
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidInput(format!("bad Weyl label {label:?}")))?;
        if digits.len() != 3 {
            return Err(Error::InvalidInput(format!("bad Weyl label {label:?}")));
        }
        let perm = [digits[0].wrapping_sub(1), digits[1].wrapping_sub(1), digits[2].wrapping_sub(1)];
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p] {
                return Err(Error::InvalidInput(format!("bad Weyl label {label:?}")));
            }
            seen[p] = true;
        }
        Ok(WeylElement { perm })
    }

    /// One-line notation, e.g. `"213"`.
    pub fn label(&self) -> String {
        self.perm.iter().map(|p| char::from(b'1' + *p as u8)).collect()
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { perm: [self.perm[other.perm[0]], self.perm[other.perm[1]], self.perm[other.perm[2]]] }
    }

    /// Group inverse.
    pub fn inverse(&self) -> WeylElement {
        let mut inv = [0; 3];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p] = j;
        }
        WeylElement { perm: inv }
    }

    /// Action on an exact vector.
    pub fn act(&self, h: &AVector) -> AVector {
        let mut out = [Q::zero(), Q::zero(), Q::zero()];
        for j in 0..3 {
            out[self.perm[j]] = h.coords[j].clone();
        }
        AVector { coords: out }
    }

    /// Action on a floating-point vector.
    pub fn act_f64(&self, h: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for j in 0..3 {
            out[self.perm[j]] = h[j];
        }
        out
    }

    /// The permutation matrix w_s with w_s e_j = e_{σ(j)}.
    pub fn matrix(&self) -> [[i64; 3]; 3] {
        let mut m = [[0; 3]; 3];
        for j in 0..3 {
            m[self.perm[j]][j] = 1;
        }
        m
    }

    /// Sign of the permutation.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if self.perm[i] > self.perm[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// All of S₃ together with its multiplication table `table[i][j] = index(all[i] ∘ all[j])`.
pub fn weyl_group() -> ([WeylElement; 6], [[usize; 6]; 6]) {
    let all = WeylElement::all();
    let mut table = [[0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let prod = all[i].compose(&all[j]);
            table[i][j] = all.iter().position(|w| *w == prod).expect("S3 is closed");
        }
    }
    (all, table)
}

/// Ω(𝔞_source; target): Weyl elements s, taken up to their restriction to
/// 𝔞_source, such that s𝔞_source = 𝔞_{P'} for a standard P' ⊆ target and
/// s⁻¹α is positive on 𝔞_source⁺ for every α ∈ Δ₀^{target} ∖ Δ₀^{P'}.
pub fn omega_restricted(source: Parabolic, target: Parabolic) -> Result<Vec<WeylElement>> {
    if source == Parabolic::G {
        return Err(Error::ProperParabolicRequired);
    }
    let basis = source.a_p_basis();
    let rho = source.rho();
    let mut kept: Vec<(WeylElement, Vec<AVector>)> = Vec::new();
    for s in WeylElement::all() {
        let image: Vec<AVector> = basis.iter().map(|b| s.act(b)).collect();
        let s_inv = s.inverse();
        let admissible = Parabolic::ALL.iter().any(|&p_prime| {
            if p_prime.corank() != source.corank() || !p_prime.is_contained_in(target) {
                return false;
            }
            if !image.iter().all(|v| p_prime.contains_vector(v)) {
                return false;
            }
            let inner = p_prime.levi_simple_roots();
            target
                .levi_simple_roots()
                .iter()
                .filter(|r| !inner.contains(r))
                .all(|r| s_inv.act(&r.vector).dot(&rho).is_positive())
        });
        if admissible && !kept.iter().any(|(_, img)| *img == image) {
            kept.push((s, image));
        }
    }
    Ok(kept.into_iter().map(|(s, _)| s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots_and_pairings() {
        let (a, b) = simple_roots();
        assert_eq!(a.vector, AVector::from_ints(1, -1, 0));
        assert_eq!(b.vector, AVector::from_ints(0, 1, -1));
        assert_eq!(a.vector.dot(&b.vector), qi(-1));
        assert_eq!(a.vector.dot(&a.coroot()), qi(2));
        for r in positive_roots() {
            assert_eq!(r.vector.dot(&r.coroot()), qi(2));
        }
    }

    #[test]
    fn dual_weights_are_dual_to_coroots() {
        let (wa, wb) = dual_weights();
        let (a, b) = simple_roots();
        assert_eq!(wa, AVector::from_ratio(2, -1, -1, 3));
        assert_eq!(wa.dot(&a.coroot()), qi(1));
        assert_eq!(wa.dot(&b.coroot()), qi(0));
        assert_eq!(wb.dot(&a.coroot()), qi(0));
        assert_eq!(wb.dot(&b.coroot()), qi(1));
    }

    #[test]
    fn rho_values() {
        assert_eq!(Parabolic::P0.rho(), AVector::from_ints(1, 0, -1));
        assert_eq!(Parabolic::G.rho(), AVector::zero());
        assert_eq!(Parabolic::P21.rho(), AVector::from_ratio(1, 1, -2, 2));
        let sum = positive_roots().iter().fold(AVector::zero(), |acc, r| &acc + &r.vector);
        assert_eq!(sum, Parabolic::P0.rho().scale(&qi(2)));
    }

    #[test]
    fn gram_constants() {
        assert_eq!(gram_determinant(Parabolic::P0).unwrap(), q(1, 3));
        assert!((gram_constant(Parabolic::P0).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((gram_constant(Parabolic::P21).unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(gram_constant(Parabolic::P12), gram_constant(Parabolic::P21));
        assert_eq!(gram_constant(Parabolic::G), Err(Error::GramUndefined));
    }

    #[test]
    fn delta_sets() {
        let d21 = Parabolic::P21.delta();
        assert_eq!(d21.len(), 1);
        assert_eq!(d21[0].name, "beta");
        assert_eq!(d21[0].vector, AVector::from_ratio(1, 1, -2, 2));
        let (_, wb) = dual_weights();
        assert_eq!(d21[0].vector, wb.scale(&q(3, 2)));
        assert_eq!(Parabolic::P21.delta_hat(), vec![wb]);
        assert_eq!(Parabolic::P0.delta().len(), 2);
        assert!(Parabolic::G.delta().is_empty());
        assert!(delta_between(Parabolic::P21, Parabolic::P12).is_err());
    }

    #[test]
    fn projections() {
        let (inner, outer) = project(&AVector::from_ints(1, -1, 0), Parabolic::P21);
        assert_eq!(outer, AVector::zero());
        assert_eq!(inner, AVector::from_ints(1, -1, 0));
        let (inner, outer) = project(&AVector::from_ints(1, 1, -2), Parabolic::P21);
        assert_eq!(outer, AVector::from_ints(1, 1, -2));
        assert!(inner.is_zero());
        let (_, outer) = project(&AVector::from_ints(1, 0, -1), Parabolic::G);
        assert!(outer.is_zero());
    }

    #[test]
    fn weyl_group_closure_and_action() {
        let (all, table) = weyl_group();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(all[table[i][j]], all[i].compose(&all[j]));
            }
            assert_eq!(all[i].compose(&all[i].inverse()), WeylElement::IDENTITY);
        }
        let swap13 = WeylElement::from_label("321").unwrap();
        assert_eq!(swap13.act(&AVector::from_ints(1, 0, -1)), AVector::from_ints(-1, 0, 1));
        let h = AVector::from_ints(3, 5, 7);
        assert_eq!(WeylElement::IDENTITY.act(&h), h);
        for s in all {
            for t in all {
                let lhs = s.compose(&t).act(&h);
                assert_eq!(lhs, s.act(&t.act(&h)));
            }
        }
    }

    #[test]
    fn weyl_matrix_realises_action() {
        let h = [1.0, 2.0, 4.0];
        for s in WeylElement::all() {
            let w = s.matrix();
            let image = s.act_f64(&h);
            // w diag(h) w^{-1} has diagonal image
            for i in 0..3 {
                let mut entry = 0.0;
                for j in 0..3 {
                    entry += (w[i][j] as f64) * h[j] * (w[i][j] as f64);
                }
                assert_eq!(entry, image[i]);
            }
        }
    }

    #[test]
    fn omega_restricted_counts() {
        use Parabolic::*;
        assert_eq!(omega_restricted(P0, G).unwrap(), vec![WeylElement::IDENTITY]);
        assert_eq!(omega_restricted(P0, P0).unwrap().len(), 6);
        assert_eq!(omega_restricted(P0, P21).unwrap().len(), 3);
        assert_eq!(omega_restricted(P21, P21).unwrap(), vec![WeylElement::IDENTITY]);
        assert_eq!(omega_restricted(P21, G).unwrap().len(), 1);
        assert_eq!(omega_restricted(G, G), Err(Error::ProperParabolicRequired));
    }

    #[test]
    fn weyl_labels_roundtrip() {
        for s in WeylElement::all() {
            assert_eq!(WeylElement::from_label(&s.label()).unwrap(), s);
        }
        assert!(WeylElement::from_label("112").is_err());
        assert!(WeylElement::from_label("12").is_err());
    }
}
