use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::Rational;
use crate::algebra::rational::join_terms;
use crate::error::{Error, Result};

/// Coefficient vector over the basis of one graded piece of a ring space.
#[derive(Clone, PartialEq, Eq)]
pub struct TautClass {
    space: String,
    degree: u32,
    labels: Arc<Vec<String>>,
    coeffs: Vec<Rational>,
}

impl TautClass {
    pub(crate) fn new(
        space: &str,
        degree: u32,
        labels: Arc<Vec<String>>,
        coeffs: Vec<Rational>,
    ) -> Result<Self> {
        if coeffs.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: coeffs.len(),
            });
        }
        Ok(TautClass {
            space: space.to_string(),
            degree,
            labels,
            coeffs,
        })
    }

    pub(crate) fn zero(space: &str, degree: u32, labels: Arc<Vec<String>>) -> Self {
        let coeffs = vec![Rational::zero(); labels.len()];
        TautClass {
            space: space.to_string(),
            degree,
            labels,
            coeffs,
        }
    }

    pub fn space(&self) -> &str {
        &self.space
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, label: &str) -> Result<Rational> {
        let i = self.index(label)?;
        Ok(self.coeffs[i].clone())
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::unknown("basis label", format!("{label} on {}", self.space)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero entries in basis order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.labels
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l.as_str(), c))
    }

    fn same_piece(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                expected: self.space.clone(),
                found: other.space.clone(),
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_piece(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TautClass {
            coeffs,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_piece(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TautClass {
            coeffs,
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        TautClass {
            coeffs,
            ..self.clone()
        }
    }

    /// Σ cᵢ·classᵢ over a nonempty list of classes on one piece.
    pub fn combination(terms: &[(Rational, &TautClass)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty combination".into()))?;
        let mut acc = first.scale(&Rational::zero());
        for (c, t) in terms {
            acc = acc.add(&t.scale(c))?;
        }
        Ok(acc)
    }

    /// Entries where `self` and `other` differ: (label, self value, other value).
    pub fn diff(&self, other: &Self) -> Result<Vec<(String, Rational, Rational)>> {
        self.same_piece(other)?;
        Ok(self
            .labels
            .iter()
            .zip(self.coeffs.iter().zip(&other.coeffs))
            .filter(|(_, (a, b))| a != b)
            .map(|(l, (a, b))| (l.clone(), a.clone(), b.clone()))
            .collect())
    }
}

impl fmt::Display for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(
            self.entries().map(|(l, c)| (c.clone(), l.to_string())),
        ))
    }
}

impl fmt::Debug for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TautClass[{}, deg {}]({self})", self.space, self.degree)
    }
}
