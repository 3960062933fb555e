use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, format_rational, rat, Rational};

/// Exact rational vector. Ordering is lexicographic on the coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVec(Vec<Rational>);

impl RVec {
    pub fn new(coords: Vec<Rational>) -> Self {
        RVec(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RVec(vec![Rational::zero(); dim])
    }

    pub fn splat(dim: usize, value: Rational) -> Self {
        RVec(vec![value; dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RVec(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = rat(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(rational::is_integral)
    }

    pub fn dot(&self, other: &RVec) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot of vectors with different dims");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Rational) -> RVec {
        RVec(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn scale_int(&self, n: u64) -> RVec {
        let f = Rational::from_integer(BigInt::from(n));
        self.scale(&f)
    }

    /// Exact division by a positive integer; `n * divide(x, n) == x`.
    pub fn divide(&self, n: u64) -> RVec {
        assert!(n >= 1, "division by zero");
        let f = Rational::new(BigInt::from(1), BigInt::from(n));
        self.scale(&f)
    }

    /// Coordinatewise maximum.
    pub fn join_orthant(&self, other: &RVec) -> RVec {
        assert_eq!(self.dim(), other.dim(), "join of vectors with different dims");
        RVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    /// Coordinatewise `self <= other`.
    pub fn le_coords(&self, other: &RVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }
}

impl Add for &RVec {
    type Output = RVec;
    fn add(self, rhs: &RVec) -> RVec {
        assert_eq!(self.dim(), rhs.dim(), "sum of vectors with different dims");
        RVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RVec {
    type Output = RVec;
    fn sub(self, rhs: &RVec) -> RVec {
        assert_eq!(self.dim(), rhs.dim(), "difference of vectors with different dims");
        RVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RVec {
    type Output = RVec;
    fn neg(self) -> RVec {
        RVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Wire form: JSON array of rationals, each as "p/q" or an integer.
impl Serialize for RVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Coord(Rational);
        impl<'de> Deserialize<'de> for Coord {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                rational::deserialize(d).map(Coord)
            }
        }
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RVec;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<RVec, A::Error> {
                let mut out = Vec::new();
                while let Some(Coord(c)) = seq.next_element()? {
                    out.push(c);
                }
                Ok(RVec(out))
            }
        }
        d.deserialize_seq(V)
    }
}
