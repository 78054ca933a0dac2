//! Exact 3×3 matrices over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::root_system::{q_to_f64, Q};

/// A 3×3 matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix3 {
    /// Row-major entries.
    pub entries: [[Q; 3]; 3],
}

fn parse_rational(token: &str) -> Result<Q> {
    let t = token.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {t:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Parses a rational written as an integer or `p/q`.
pub fn parse_q(token: &str) -> Result<Q> {
    parse_rational(token)
}

impl RationalMatrix3 {
    /// Builds a matrix from rows.
    pub fn new(entries: [[Q; 3]; 3]) -> Self {
        Self { entries }
    }

    /// Builds a matrix from integer rows.
    pub fn from_ints(m: [[i64; 3]; 3]) -> Self {
        Self { entries: m.map(|row| row.map(|x| Q::from_integer(BigInt::from(x)))) }
    }

    /// Parses nine comma-separated rationals (`p/q` or integers), row-major.
    pub fn parse(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split(',').collect();
        if tokens.len() != 9 {
            return Err(Error::InvalidInput(format!("expected 9 entries, found {}", tokens.len())));
        }
        let vals = tokens.iter().map(|t| parse_rational(t)).collect::<Result<Vec<Q>>>()?;
        let mut it = vals.into_iter();
        let mut next = || it.next().expect("nine entries");
        Ok(Self {
            entries: [[next(), next(), next()], [next(), next(), next()], [next(), next(), next()]],
        })
    }

    /// The zero matrix.
    pub fn zero() -> Self {
        Self::from_ints([[0; 3]; 3])
    }

    /// The identity.
    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    /// The scalar matrix z·I.
    pub fn scalar(z: Q) -> Self {
        let o = Q::zero();
        Self {
            entries: [
                [z.clone(), o.clone(), o.clone()],
                [o.clone(), z.clone(), o.clone()],
                [o.clone(), o, z],
            ],
        }
    }

    /// The unipotent n(a, b, c) = [[1,a,b],[0,1,c],[0,0,1]].
    pub fn unipotent(a: Q, b: Q, c: Q) -> Self {
        Self {
            entries: [
                [Q::one(), a, b],
                [Q::zero(), Q::one(), c],
                [Q::zero(), Q::zero(), Q::one()],
            ],
        }
    }

    /// Diagonal matrix.
    pub fn diag(a: Q, b: Q, c: Q) -> Self {
        let mut m = Self::zero();
        m.entries[0][0] = a;
        m.entries[1][1] = b;
        m.entries[2][2] = c;
        m
    }

    /// Companion matrix of the monic cubic x³ + c₂x² + c₁x + c₀.
    pub fn companion(c0: Q, c1: Q, c2: Q) -> Self {
        Self {
            entries: [
                [Q::zero(), Q::zero(), -c0],
                [Q::one(), Q::zero(), -c1],
                [Q::zero(), Q::one(), -c2],
            ],
        }
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: &Q) -> Self {
        Self { entries: self.entries.clone().map(|row| row.map(|x| x * s)) }
    }

    /// Trace.
    pub fn trace(&self) -> Q {
        &self.entries[0][0] + &self.entries[1][1] + &self.entries[2][2]
    }

    /// Determinant.
    pub fn det(&self) -> Q {
        let m = &self.entries;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Sum of the principal 2×2 minors.
    pub fn principal_minor_sum(&self) -> Q {
        let m = &self.entries;
        (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]) + (&m[0][0] * &m[2][2] - &m[0][2] * &m[2][0])
            + (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let m = &self.entries;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Ok(Self { entries: adj.map(|row| row.map(|x| x / &d)) })
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..3 {
            let Some(pivot) = (rank..3).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            for r in 0..3 {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[rank][col];
                    for c in 0..3 {
                        let sub = &f * &a[rank][c];
                        a[r][c] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// True if every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// Conjugate g·self·g⁻¹.
    pub fn conjugate_by(&self, g: &RationalMatrix3) -> Result<Self> {
        Ok(&(g * self) * &g.inverse()?)
    }

    /// Floating-point entries.
    pub fn to_f64(&self) -> [[f64; 3]; 3] {
        self.entries.clone().map(|row| row.map(|x| q_to_f64(&x)))
    }

    /// Entries as exact rational strings, row-major.
    pub fn to_strings(&self) -> [[String; 3]; 3] {
        self.entries.clone().map(|row| row.map(|x| x.to_string()))
    }
}

impl Serialize for RationalMatrix3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl fmt::Display for RationalMatrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat: Vec<String> = self.entries.iter().flatten().map(|x| x.to_string()).collect();
        f.write_str(&flat.join(","))
    }
}

impl Add for &RationalMatrix3 {
    type Output = RationalMatrix3;
    fn add(self, rhs: &RationalMatrix3) -> RationalMatrix3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] += &rhs.entries[i][j];
            }
        }
        out
    }
}

impl Sub for &RationalMatrix3 {
    type Output = RationalMatrix3;
    fn sub(self, rhs: &RationalMatrix3) -> RationalMatrix3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] -= &rhs.entries[i][j];
            }
        }
        out
    }
}

impl Mul for &RationalMatrix3 {
    type Output = RationalMatrix3;
    fn mul(self, rhs: &RationalMatrix3) -> RationalMatrix3 {
        let mut out = RationalMatrix3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Q::zero();
                for k in 0..3 {
                    acc += &self.entries[i][k] * &rhs.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{q, qi};

    #[test]
    fn parse_and_display() {
        let m = RationalMatrix3::parse("1/2, 0, 3, -4/6, 5, 0, 0, 0, 7").unwrap();
        assert_eq!(m.entries[0][0], q(1, 2));
        assert_eq!(m.entries[1][0], q(-2, 3));
        assert_eq!(format!("{m}"), "1/2,0,3,-2/3,5,0,0,0,7");
        assert!(RationalMatrix3::parse("1,2,3").is_err());
        assert!(RationalMatrix3::parse("1,2,3,4,5,6,7,8,x").is_err());
        assert!(RationalMatrix3::parse("1,2,3,4,5,6,7,8,1/0").is_err());
    }

    #[test]
    fn inverse_and_rank() {
        let m = RationalMatrix3::from_ints([[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RationalMatrix3::identity());
        assert_eq!(m.rank(), 3);
        let singular = RationalMatrix3::from_ints([[1, 2, 3], [2, 4, 6], [1, 0, 0]]);
        assert_eq!(singular.rank(), 2);
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
        assert_eq!(RationalMatrix3::zero().rank(), 0);
        assert_eq!(RationalMatrix3::unipotent(qi(1), qi(0), qi(0)).det(), qi(1));
    }
}
