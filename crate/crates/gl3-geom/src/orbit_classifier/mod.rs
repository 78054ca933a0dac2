//! Exact classification of elements of GL(3, ℚ) into the five orbit kinds,
//! with Jordan decomposition computed inside ℚ.
//!
//! Two elements lie in the same orbit when their semisimple parts are
//! GL(3, ℚ)-conjugate. For semisimple matrices over ℚ this happens exactly
//! when the characteristic polynomials agree, so the classification is
//! driven by the factorisation of the characteristic polynomial.

pub mod matrix;
pub mod poly;

use num_traits::Zero;
use serde::{Serialize, Serializer};

pub use matrix::{parse_q, RationalMatrix3};
pub use poly::{factor_cubic, rational_roots, Factor, Poly};

use crate::error::{Error, Result};
use crate::root_system::{Parabolic, Q};

/// The five orbit kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitKind {
    /// Irreducible characteristic polynomial.
    EllipticG,
    /// Linear factor times an irreducible quadratic.
    Elliptic21,
    /// Three distinct rational eigenvalues.
    SplitRegular,
    /// Rational eigenvalues, exactly two equal.
    TwoEqual,
    /// A single rational eigenvalue: the semisimple part is scalar.
    Central,
}

/// Unipotent subtype of a central element z·u, from rank(γ − zI).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum UnipotentSubtype {
    /// γ = zI.
    Tri,
    /// rank(γ − zI) = 1.
    Min,
    /// rank(γ − zI) = 2.
    Reg,
}

fn serialize_eigen<S: Serializer>(v: &[(Q, u32)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<(String, u32)> = v.iter().map(|(q, m)| (q.to_string(), *m)).collect();
    strs.serialize(s)
}

fn serialize_factors<S: Serializer>(v: &[Factor], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<(String, u32)> = v.iter().map(|f| (f.poly.to_string(), f.multiplicity)).collect();
    strs.serialize(s)
}

/// Classification result.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitClass {
    /// Orbit kind.
    pub kind: OrbitKind,
    /// Rational eigenvalues with algebraic multiplicity, ascending.
    #[serde(serialize_with = "serialize_eigen")]
    pub eigenvalues: Vec<(Q, u32)>,
    /// Full factorisation of the characteristic polynomial.
    #[serde(serialize_with = "serialize_factors")]
    pub factors: Vec<Factor>,
    /// Populated only for [`OrbitKind::Central`].
    pub unipotent_subtype: Option<UnipotentSubtype>,
    /// True for the kinds whose centraliser exceeds the attached Levi.
    pub ramified: bool,
    /// True when γ is semisimple (squarefree minimal polynomial).
    pub semisimple: bool,
    /// The minimal standard parabolic whose Levi meets the orbit.
    pub parabolic: Parabolic,
}

/// Jordan decomposition γ = γ_s γ_u.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JordanPair {
    /// Semisimple part, a polynomial in γ.
    pub semisimple: RationalMatrix3,
    /// Unipotent part γ_s⁻¹γ.
    pub unipotent: RationalMatrix3,
}

/// Characteristic polynomial det(xI − γ) of an invertible γ.
pub fn char_poly(g: &RationalMatrix3) -> Result<Poly> {
    let det = g.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(Poly::new(vec![-det, g.principal_minor_sum(), -g.trace(), Q::from_integer(1.into())]))
}

/// Minimal polynomial: the lowest-degree monic divisor of the characteristic
/// polynomial, built from its irreducible factors, that annihilates γ.
pub fn minimal_polynomial(g: &RationalMatrix3) -> Result<Poly> {
    let factors = factor_cubic(&char_poly(g)?);
    let mut best: Option<Poly> = None;
    let mut exps = vec![1u32; factors.len()];
    loop {
        let cand = factors
            .iter()
            .zip(exps.iter())
            .fold(Poly::one(), |acc, (f, &e)| acc.mul(&f.poly.pow(e)));
        if cand.eval_matrix(g).is_zero() && best.as_ref().is_none_or(|b| cand.degree() < b.degree()) {
            best = Some(cand);
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok(best.expect("the characteristic polynomial annihilates γ"));
            }
            if exps[i] < factors[i].multiplicity {
                exps[i] += 1;
                break;
            }
            exps[i] = 1;
            i += 1;
        }
    }
}

/// Jordan decomposition by Newton iteration s ← s − p(s)·p′(s)⁻¹ on the
/// squarefree part p of the characteristic polynomial, exact in ℚ.
pub fn jordan_decompose(g: &RationalMatrix3) -> Result<JordanPair> {
    let p = char_poly(g)?.squarefree_part();
    let dp = p.derivative();
    let mut s = g.clone();
    for _ in 0..8 {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            let unipotent = &s.inverse()? * g;
            return Ok(JordanPair { semisimple: s, unipotent });
        }
        let step = &ps * &dp.eval_matrix(&s).inverse()?;
        s = &s - &step;
    }
    Err(Error::InvalidInput("Newton iteration for the semisimple part did not terminate".into()))
}

/// Classifies γ into one of the five orbit kinds.
pub fn classify(g: &RationalMatrix3) -> Result<OrbitClass> {
    let cp = char_poly(g)?;
    let factors = factor_cubic(&cp);
    let eigenvalues: Vec<(Q, u32)> = factors
        .iter()
        .filter(|f| f.poly.degree() == 1)
        .map(|f| (-f.poly.coeff(0), f.multiplicity))
        .collect();
    let minimal = minimal_polynomial(g)?;
    let semisimple = minimal.squarefree_part() == minimal.monic();
    let nonlinear = factors.iter().find(|f| f.poly.degree() > 1);
    let (kind, parabolic) = match (nonlinear.map(|f| f.poly.degree()), eigenvalues.len()) {
        (Some(3), _) => (OrbitKind::EllipticG, Parabolic::G),
        (Some(_), _) => (OrbitKind::Elliptic21, Parabolic::P21),
        (None, 3) => (OrbitKind::SplitRegular, Parabolic::P0),
        (None, 2) => (OrbitKind::TwoEqual, Parabolic::P0),
        _ => (OrbitKind::Central, Parabolic::P0),
    };
    let unipotent_subtype = (kind == OrbitKind::Central).then(|| {
        let z = &eigenvalues[0].0;
        match (g - &RationalMatrix3::scalar(z.clone())).rank() {
            0 => UnipotentSubtype::Tri,
            1 => UnipotentSubtype::Min,
            _ => UnipotentSubtype::Reg,
        }
    });
    let ramified = matches!(kind, OrbitKind::TwoEqual | OrbitKind::Central);
    Ok(OrbitClass { kind, eigenvalues, factors, unipotent_subtype, ramified, semisimple, parabolic })
}

/// Outcome of [`conjugacy_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Probe {
    /// Same orbit.
    Equivalent,
    /// Different orbits.
    Inequivalent,
    /// Undecided; never produced for GL(3).
    Unknown,
}

/// Decides orbit equivalence by comparing kinds and characteristic
/// polynomials; this is complete for every kind in GL(3).
pub fn conjugacy_probe(a: &RationalMatrix3, b: &RationalMatrix3) -> Result<Probe> {
    let (ca, cb) = (classify(a)?, classify(b)?);
    if ca.kind == cb.kind && char_poly(a)? == char_poly(b)? {
        Ok(Probe::Equivalent)
    } else {
        Ok(Probe::Inequivalent)
    }
}
