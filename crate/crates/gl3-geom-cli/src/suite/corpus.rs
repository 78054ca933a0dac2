//! A curated corpus of rational matrices labelled by construction, and an
//! eigenstructure oracle that classifies them without factoring over ℚ.
//!
//! The oracle finds the complex roots of the characteristic polynomial
//! numerically, snaps real roots to small-denominator fractions, confirms
//! each candidate exactly with det(γ − rI) = 0, counts multiplicities by
//! exact synthetic division and reads unipotent subtypes and semisimplicity
//! from ranks computed by 2×2 minors.

use gl3_geom::orbit_classifier::{OrbitKind, RationalMatrix3, UnipotentSubtype};
use gl3_geom::root_system::{q, q_to_f64, qi, Q};
use num_complex::Complex64;
use num_traits::{Signed, Zero};

/// One corpus matrix with the labels implied by its construction.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// Short description of the construction.
    pub name: String,
    /// The matrix.
    pub matrix: RationalMatrix3,
    /// Expected orbit kind.
    pub kind: OrbitKind,
    /// Expected unipotent subtype for central elements.
    pub subtype: Option<UnipotentSubtype>,
    /// Expected semisimplicity.
    pub semisimple: bool,
}

fn int(m: [[i64; 3]; 3]) -> RationalMatrix3 {
    RationalMatrix3::from_ints(m)
}

/// Fixed unimodular conjugators used to disguise the block forms.
fn disguises() -> Vec<RationalMatrix3> {
    vec![
        int([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        int([[1, 1, 0], [0, 1, 1], [0, 0, 1]]),
        int([[2, 1, 0], [1, 1, 0], [0, 0, 1]]),
        int([[1, 0, 0], [1, 1, 0], [-1, 2, 1]]),
        int([[0, 1, 0], [0, 0, 1], [1, 3, -2]]),
    ]
}

fn monic_cubic(c0: Q, c1: Q, c2: Q) -> RationalMatrix3 {
    RationalMatrix3::companion(c0, c1, c2)
}

/// a ⊕ companion(x² + c₁x + c₀).
fn split_quadratic(a: Q, c0: Q, c1: Q) -> RationalMatrix3 {
    let z = Q::zero;
    RationalMatrix3::new([[a, z(), z()], [z(), z(), -c0], [z(), qi(1), -c1]])
}

fn upper(d: [Q; 3], n12: Q, n13: Q, n23: Q) -> RationalMatrix3 {
    let [a, b, c] = d;
    let z = Q::zero;
    RationalMatrix3::new([[a, n12, n13], [z(), b, n23], [z(), z(), c]])
}

/// The 50 labelled matrices, ten of each kind.
pub fn corpus() -> Vec<CorpusEntry> {
    use OrbitKind::*;
    use UnipotentSubtype::*;
    let mut raw: Vec<(String, RationalMatrix3, OrbitKind, Option<UnipotentSubtype>, bool)> = Vec::new();
    let cubics: [(i64, i64, i64, i64); 9] = [
        (-2, 0, 0, 1),
        (-1, -1, 0, 1),
        (1, 1, 0, 1),
        (-1, -3, 0, 1),
        (1, -2, -1, 1),
        (2, -4, 0, 1),
        (2, 2, 0, 1),
        (-5, 0, 0, 1),
        (2, 1, 1, 1),
    ];
    for (c0, c1, c2, den) in cubics {
        raw.push((format!("companion x^3+{c2}x^2+{c1}x+{c0}"), monic_cubic(q(c0, den), q(c1, den), q(c2, den)), EllipticG, None, true));
    }
    raw.push(("companion x^3-7/2".into(), monic_cubic(q(-7, 2), Q::zero(), Q::zero()), EllipticG, None, true));

    let quads: [(Q, Q, Q); 10] = [
        (qi(1), qi(1), qi(0)),
        (qi(3), qi(-2), qi(0)),
        (qi(2), qi(1), qi(1)),
        (qi(-1), qi(-3), qi(0)),
        (q(1, 2), qi(2), qi(0)),
        (qi(3), qi(-1), qi(-1)),
        (qi(5), qi(-5), qi(0)),
        (qi(-2), qi(5), qi(4)),
        (qi(1), q(-1, 2), qi(0)),
        (qi(-3), qi(3), qi(0)),
    ];
    for (a, c0, c1) in quads {
        raw.push((format!("{a} + companion x^2+{c1}x+{c0}"), split_quadratic(a, c0, c1), Elliptic21, None, true));
    }

    let splits: [([Q; 3], [Q; 3]); 10] = [
        ([qi(1), qi(2), qi(3)], [qi(0), qi(0), qi(0)]),
        ([qi(-1), q(1, 2), qi(4)], [qi(0), qi(0), qi(0)]),
        ([qi(1), qi(2), qi(3)], [qi(5), qi(7), qi(-3)]),
        ([qi(2), qi(-2), qi(1)], [qi(0), qi(0), qi(0)]),
        ([qi(3), qi(-1), q(1, 3)], [qi(1), qi(0), qi(1)]),
        ([qi(1), qi(-1), qi(7)], [qi(0), qi(0), qi(0)]),
        ([qi(5), qi(6), qi(7)], [qi(1), qi(2), qi(3)]),
        ([q(1, 2), q(1, 3), q(1, 4)], [qi(0), qi(0), qi(0)]),
        ([qi(-2), qi(-3), qi(-5)], [qi(0), qi(0), qi(0)]),
        ([qi(1), qi(4), qi(9)], [qi(1), qi(1), qi(1)]),
    ];
    for (d, [a, b, c]) in splits {
        raw.push((format!("upper triangular diag {:?}", d.iter().map(Q::to_string).collect::<Vec<_>>()), upper(d, a, b, c), SplitRegular, None, true));
    }

    let two_equal: [([Q; 3], [Q; 3], bool); 10] = [
        ([qi(2), qi(2), qi(3)], [qi(0), qi(0), qi(0)], true),
        ([qi(1), qi(1), qi(-1)], [qi(0), qi(0), qi(0)], true),
        ([q(1, 2), qi(3), qi(3)], [qi(0), qi(0), qi(0)], true),
        ([qi(-1), qi(-1), qi(4)], [qi(0), qi(0), qi(0)], true),
        ([qi(5), qi(7), qi(7)], [qi(0), qi(0), qi(0)], true),
        ([qi(2), qi(2), qi(3)], [qi(1), qi(0), qi(0)], false),
        ([qi(1), qi(1), qi(-1)], [qi(1), qi(0), qi(0)], false),
        ([qi(3), qi(4), qi(4)], [qi(0), qi(0), qi(1)], false),
        ([qi(-2), qi(-2), qi(1)], [qi(1), qi(5), qi(3)], false),
        ([q(1, 3), q(1, 3), qi(2)], [qi(1), qi(0), qi(0)], false),
    ];
    for (d, [a, b, c], ss) in two_equal {
        raw.push((format!("two equal eigenvalues, semisimple={ss}"), upper(d, a, b, c), TwoEqual, None, ss));
    }

    let central: [(Q, [Q; 3], UnipotentSubtype); 10] = [
        (qi(2), [qi(0), qi(0), qi(0)], Tri),
        (qi(-1), [qi(0), qi(0), qi(0)], Tri),
        (q(1, 2), [qi(0), qi(0), qi(0)], Tri),
        (qi(1), [qi(0), qi(1), qi(0)], Min),
        (qi(3), [qi(0), qi(3), qi(0)], Min),
        (qi(-2), [qi(1), qi(0), qi(0)], Min),
        (q(1, 2), [qi(0), qi(0), qi(1)], Min),
        (qi(1), [qi(1), qi(0), qi(1)], Reg),
        (qi(2), [qi(1), qi(5), qi(3)], Reg),
        (qi(-1), [qi(1), qi(0), qi(1)], Reg),
    ];
    for (z, [a, b, c], sub) in central {
        let ss = sub == Tri;
        raw.push((format!("central {z} with subtype {sub:?}"), upper([z.clone(), z.clone(), z], a, b, c), Central, Some(sub), ss));
    }

    let d = disguises();
    raw.into_iter()
        .enumerate()
        .map(|(i, (name, m, kind, subtype, semisimple))| {
            let g = &d[i % d.len()];
            let matrix = m.conjugate_by(g).expect("disguises are invertible");
            CorpusEntry { name, matrix, kind, subtype, semisimple }
        })
        .collect()
}

/// What the oracle reads off a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenstructure {
    /// Orbit kind.
    pub kind: OrbitKind,
    /// Unipotent subtype for central elements.
    pub subtype: Option<UnipotentSubtype>,
    /// Semisimplicity.
    pub semisimple: bool,
    /// Rational eigenvalues with multiplicities.
    pub rational_roots: Vec<(Q, usize)>,
}

fn det(m: &[[Q; 3]; 3]) -> Q {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn shifted(m: &RationalMatrix3, r: &Q) -> [[Q; 3]; 3] {
    let mut e = m.entries.clone();
    for (i, row) in e.iter_mut().enumerate() {
        row[i] -= r;
    }
    e
}

/// Rank of a 3×3 rational matrix from its minors.
fn rank(m: &[[Q; 3]; 3]) -> usize {
    if !det(m).is_zero() {
        return 3;
    }
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            if !(&m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]).is_zero() {
                return 2;
            }
        }
    }
    if m.iter().flatten().any(|x| !x.is_zero()) {
        1
    } else {
        0
    }
}

/// Coefficients [c₀, c₁, c₂, 1] of det(xI − γ).
fn char_coefficients(m: &RationalMatrix3) -> [Q; 4] {
    let e = &m.entries;
    let trace = &e[0][0] + &e[1][1] + &e[2][2];
    let minors = &e[0][0] * &e[1][1] - &e[0][1] * &e[1][0] + &e[0][0] * &e[2][2] - &e[0][2] * &e[2][0]
        + &e[1][1] * &e[2][2]
        - &e[1][2] * &e[2][1];
    [-det(e), minors, -trace, qi(1)]
}

/// Roots of a monic cubic by Durand–Kerner iteration.
fn numeric_roots(c: &[f64; 3]) -> [Complex64; 3] {
    let p = |x: Complex64| ((x + c[2]) * x + c[1]) * x + c[0];
    let seed = Complex64::new(0.4, 0.9);
    let scale = 1.0 + c.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let mut z = [seed * scale, seed * seed * scale, seed * seed * seed * scale];
    for _ in 0..2000 {
        let old = z;
        for i in 0..3 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() > 0.0 {
                z[i] -= p(z[i]) / den;
            }
        }
        if (0..3).all(|i| (z[i] - old[i]).norm() <= 1e-15 * (1.0 + z[i].norm())) {
            break;
        }
    }
    z
}

/// Best fraction with denominator at most `max_den` by continued fractions.
fn snap(x: f64, max_den: i64) -> Option<Q> {
    if !x.is_finite() || x.abs() > 1e9 {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    let mut best = None;
    for _ in 0..40 {
        let a = r.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        best = Some(q(h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    best
}

/// Divides a polynomial (ascending coefficients) by x − r, returning the
/// quotient when the remainder is zero.
fn divide_linear(p: &[Q], r: &Q) -> Option<Vec<Q>> {
    let n = p.len() - 1;
    let mut quotient = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for i in (0..=n).rev() {
        let v = &p[i] + &carry;
        if i == 0 {
            return v.is_zero().then_some(quotient);
        }
        carry = &v * r;
        quotient[i - 1] = v;
    }
    None
}

/// Classifies γ by the oracle described in the module documentation.
pub fn eigenstructure(m: &RationalMatrix3) -> Eigenstructure {
    let coeffs = char_coefficients(m);
    let cf = [q_to_f64(&coeffs[0]), q_to_f64(&coeffs[1]), q_to_f64(&coeffs[2])];
    let mut candidates: Vec<Q> = Vec::new();
    for z in numeric_roots(&cf) {
        if z.im.abs() > 1e-3 * (1.0 + z.norm()) {
            continue;
        }
        if let Some(r) = snap(z.re, 1000) {
            if det(&shifted(m, &r)).is_zero() && !candidates.contains(&r) {
                candidates.push(r);
            }
        }
    }
    candidates.sort();
    let mut rational_roots = Vec::new();
    for r in candidates {
        let mut poly = coeffs.to_vec();
        let mut mult = 0;
        while let Some(next) = divide_linear(&poly, &r) {
            mult += 1;
            poly = next;
            if poly.len() == 1 {
                break;
            }
        }
        rational_roots.push((r, mult));
    }
    let total: usize = rational_roots.iter().map(|(_, k)| k).sum();
    let kind = match (total, rational_roots.len()) {
        (0, _) => OrbitKind::EllipticG,
        (1, _) => OrbitKind::Elliptic21,
        (_, 3) => OrbitKind::SplitRegular,
        (_, 2) => OrbitKind::TwoEqual,
        _ => OrbitKind::Central,
    };
    let semisimple = rational_roots.iter().all(|(r, k)| rank(&shifted(m, r)) == 3 - k);
    let subtype = (kind == OrbitKind::Central).then(|| match rank(&shifted(m, &rational_roots[0].0)) {
        0 => UnipotentSubtype::Tri,
        1 => UnipotentSubtype::Min,
        _ => UnipotentSubtype::Reg,
    });
    Eigenstructure { kind, subtype, semisimple, rational_roots }
}

/// True when the determinant is nonzero.
pub fn is_invertible(m: &RationalMatrix3) -> bool {
    !det(&m.entries).is_zero()
}

/// Largest absolute entry numerator, used to keep random inputs small.
pub fn height(m: &RationalMatrix3) -> f64 {
    m.entries.iter().flatten().map(|x| q_to_f64(&x.abs())).fold(0.0, f64::max)
}
