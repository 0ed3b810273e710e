use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ratio::{self, Rational};

/// A point in n-dimensional space with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector {
    entries: Vec<Rational>,
}

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: vec![Rational::zero(); n],
        }
    }

    /// Builds from `(numerator, denominator)` pairs; handy in tests.
    pub fn from_i64(coords: &[(i64, i64)]) -> Self {
        Self::new(coords.iter().map(|&(n, d)| ratio::rat(n, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.dim(), other.dim());
        RatVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.dim(), other.dim());
        RatVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> RatVector {
        RatVector::new(self.entries.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rational) -> RatVector {
        RatVector::new(self.entries.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(ratio::is_integer)
    }

    /// Max-norm, exact.
    pub fn norm_inf(&self) -> Rational {
        self.entries
            .iter()
            .map(ratio::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(ratio::to_f64).collect()
    }

    /// Concatenation, used by tensor products of systems.
    pub fn concat(&self, other: &RatVector) -> RatVector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RatVector::new(entries)
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", ratio::format_rational(e))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.entries.iter().map(ratio::format_rational).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let entries = strings
            .iter()
            .map(|s| ratio::parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RatVector::new(entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn dot_and_norms() {
        let a = RatVector::from_i64(&[(1, 2), (-1, 3)]);
        let b = RatVector::from_i64(&[(2, 1), (3, 1)]);
        assert_eq!(a.dot(&b), rat(0, 1));
        assert_eq!(a.norm_inf(), rat(1, 2));
        assert!(!a.is_integral());
        assert!(b.is_integral());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let a = RatVector::from_i64(&[(1, 2), (3, 1)]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"["1/2","3"]"#);
        let back: RatVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }
}
