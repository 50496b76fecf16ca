//! Truncated univariate power series with rational coefficients.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::{Rational, int, join_terms};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    variable: String,
    order: usize,
    coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// exp(w·t)
    ExpScaled(Rational),
    /// t / (exp(t) − 1)
    ToddInverse,
    /// exp(w·t) · Σ_{i=0..n} exp(i·t)
    JetSum { n: u32, weight: Rational },
}

impl TruncatedSeries {
    /// Coefficients past `order` are dropped, missing ones are zero.
    pub fn new(variable: &str, order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries {
            variable: variable.to_string(),
            order,
            coeffs,
        }
    }

    pub fn constant(variable: &str, order: usize, c: Rational) -> Self {
        Self::new(variable, order, vec![c])
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(&self.variable, order.min(self.order), self.coeffs.clone())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_variable(other)?;
        let order = self.order.min(other.order);
        let c = (0..=order)
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        Ok(Self::new(&self.variable, order, c))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(
            &self.variable,
            self.order,
            self.coeffs.iter().map(|c| c * s).collect(),
        )
    }

    fn same_variable(&self, other: &Self) -> Result<()> {
        if self.variable != other.variable {
            return Err(Error::VariableMismatch(
                self.variable.clone(),
                other.variable.clone(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.variable;
        let terms = self.coeffs.iter().enumerate().map(|(k, c)| {
            let body = match k {
                0 => String::new(),
                1 => v.clone(),
                _ => format!("{v}^{k}"),
            };
            (c.clone(), body)
        });
        write!(f, "{} + O({v}^{})", join_terms(terms), self.order + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

fn exp_coeffs(w: &Rational, order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    for k in 0..=order {
        if k > 0 {
            c = c * w / int(k as i64);
        }
        out.push(c.clone());
    }
    out
}

/// Named series in the variable `t`.
pub fn series_named(kind: &SeriesKind, order: usize) -> TruncatedSeries {
    series_named_in(kind, "t", order)
}

pub fn series_named_in(kind: &SeriesKind, variable: &str, order: usize) -> TruncatedSeries {
    match kind {
        SeriesKind::ExpScaled(w) => TruncatedSeries::new(variable, order, exp_coeffs(w, order)),
        SeriesKind::ToddInverse => {
            // (e^t − 1)/t = Σ t^k/(k+1)!, which has constant term 1
            let shifted: Vec<Rational> = exp_coeffs(&Rational::one(), order + 1)[1..].to_vec();
            let s = TruncatedSeries::new(variable, order, shifted);
            series_inverse(&s).expect("constant term is 1")
        }
        SeriesKind::JetSum { n, weight } => {
            let mut acc = vec![Rational::zero(); order + 1];
            for i in 0..=*n {
                let w = weight + int(i64::from(i));
                for (a, c) in acc.iter_mut().zip(exp_coeffs(&w, order)) {
                    *a += c;
                }
            }
            TruncatedSeries::new(variable, order, acc)
        }
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.same_variable(b)?;
    let order = a.order.min(b.order);
    let mut c = vec![Rational::zero(); order + 1];
    for i in 0..=order {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=order - i {
            c[i + j] += &a.coeffs[i] * &b.coeffs[j];
        }
    }
    Ok(TruncatedSeries::new(&a.variable, order, c))
}

pub fn series_inverse(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    let a0 = &a.coeffs[0];
    if a0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let inv0 = a0.recip();
    let mut b: Vec<Rational> = Vec::with_capacity(a.order + 1);
    b.push(inv0.clone());
    for k in 1..=a.order {
        let s: Rational = (1..=k).map(|i| &a.coeffs[i] * &b[k - i]).sum();
        b.push(-s * &inv0);
    }
    Ok(TruncatedSeries::new(&a.variable, a.order, b))
}
