//! Weighted multivariate polynomials in the symbols ψ, λ, λ₁, λ₂, κ₀..κ₃,
//! truncated above a maximal total degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::{Rational, join_terms};
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Psi,
    Lambda,
    Lambda1,
    Lambda2,
    Kappa0,
    Kappa1,
    Kappa2,
    Kappa3,
}

pub const NSYM: usize = 8;

impl Sym {
    pub const ALL: [Sym; NSYM] = [
        Sym::Psi,
        Sym::Lambda,
        Sym::Lambda1,
        Sym::Lambda2,
        Sym::Kappa0,
        Sym::Kappa1,
        Sym::Kappa2,
        Sym::Kappa3,
    ];

    pub fn weight(self) -> u32 {
        match self {
            Sym::Psi | Sym::Lambda | Sym::Lambda1 => 1,
            Sym::Lambda2 => 2,
            Sym::Kappa0 => 0,
            Sym::Kappa1 => 1,
            Sym::Kappa2 => 2,
            Sym::Kappa3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sym::Psi => "psi",
            Sym::Lambda => "lambda",
            Sym::Lambda1 => "lambda1",
            Sym::Lambda2 => "lambda2",
            Sym::Kappa0 => "kappa0",
            Sym::Kappa1 => "kappa1",
            Sym::Kappa2 => "kappa2",
            Sym::Kappa3 => "kappa3",
        }
    }

    pub fn kappa(i: u32) -> Option<Sym> {
        [Sym::Kappa0, Sym::Kappa1, Sym::Kappa2, Sym::Kappa3]
            .get(i as usize)
            .copied()
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Exponent vector indexed by `Sym as usize`.
pub type Monomial = [u32; NSYM];

pub fn mono(factors: &[(Sym, u32)]) -> Monomial {
    let mut m = [0; NSYM];
    for &(s, e) in factors {
        m[s.index()] += e;
    }
    m
}

pub fn mono_degree(m: &Monomial) -> u32 {
    m.iter().zip(Sym::ALL).map(|(e, s)| e * s.weight()).sum()
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    terms: BTreeMap<Monomial, Rational>,
    max_degree: u32,
}

impl TruncatedPoly {
    pub fn zero(max_degree: u32) -> Self {
        TruncatedPoly {
            terms: BTreeMap::new(),
            max_degree,
        }
    }

    pub fn constant(c: Rational, max_degree: u32) -> Self {
        Self::term(mono(&[]), c, max_degree)
    }

    pub fn symbol(s: Sym, max_degree: u32) -> Self {
        Self::term(mono(&[(s, 1)]), Rational::one(), max_degree)
    }

    pub fn term(m: Monomial, c: Rational, max_degree: u32) -> Self {
        let mut p = Self::zero(max_degree);
        p.add_term(m, c);
        p
    }

    /// Σ aₖ·sᵏ from a univariate series.
    pub fn from_series(s: &TruncatedSeries, sym: Sym, max_degree: u32) -> Self {
        let mut p = Self::zero(max_degree);
        for (k, c) in s.coeffs().iter().enumerate() {
            p.add_term(mono(&[(sym, k as u32)]), c.clone());
        }
        p
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&mono(&[]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if mono_degree(&m) > self.max_degree || c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn with_max_degree(&self, max_degree: u32) -> Self {
        let mut p = Self::zero(max_degree);
        for (m, c) in &self.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.with_max_degree(self.max_degree.min(other.max_degree));
        for (m, c) in &other.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut p = Self::zero(self.max_degree);
        for (m, c) in &self.terms {
            p.add_term(*m, c * s);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.max_degree.min(other.max_degree));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = *ma;
                for (x, y) in m.iter_mut().zip(mb) {
                    *x += y;
                }
                p.add_term(m, ca * cb);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut p = Self::constant(Rational::one(), self.max_degree);
        for _ in 0..e {
            p = p.mul(self);
        }
        p
    }

    pub fn degree_part(&self, d: u32) -> Self {
        let mut p = Self::zero(self.max_degree);
        for (m, c) in &self.terms {
            if mono_degree(m) == d {
                p.add_term(*m, c.clone());
            }
        }
        p
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| mono_degree(m) == d)
    }

    /// Inverse up to the truncation degree; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if self
            .terms
            .keys()
            .any(|m| mono_degree(m) == 0 && *m != mono(&[]))
        {
            return Err(Error::InvalidArgument("degree-0 symbol in a unit".into()));
        }
        // 1/(c0(1 + u)) = c0⁻¹ Σ (−u)ᵏ, u nilpotent past max_degree
        let inv0 = c0.recip();
        let mut u = self.scale(&inv0);
        u.add_term(mono(&[]), -Rational::one());
        let neg_u = u.scale(&-Rational::one());
        let mut acc = Self::constant(Rational::one(), self.max_degree);
        let mut power = acc.clone();
        for _ in 0..self.max_degree {
            power = power.mul(&neg_u);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&inv0))
    }

    /// Replaces every occurrence of `s` by `value`.
    pub fn substitute(&self, s: Sym, value: &Self) -> Self {
        let mut out = Self::zero(self.max_degree);
        for (m, c) in &self.terms {
            let e = m[s.index()];
            let mut rest = *m;
            rest[s.index()] = 0;
            let t = Self::term(rest, c.clone(), self.max_degree).mul(&value.pow(e));
            out = out.add(&t);
        }
        out
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.terms.keys().any(|m| m[s.index()] > 0)
    }
}

fn mono_string(m: &Monomial) -> String {
    let parts: Vec<String> = Sym::ALL
        .iter()
        .filter(|s| m[s.index()] > 0)
        .map(|s| match m[s.index()] {
            1 => s.name().to_string(),
            e => format!("{}^{e}", s.name()),
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // lower degree first, then symbol order
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| (mono_degree(m), std::cmp::Reverse(**m)));
        let terms = keys
            .into_iter()
            .map(|m| (self.terms[m].clone(), mono_string(m)));
        f.write_str(&join_terms(terms))
    }
}

impl fmt::Debug for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedPoly[≤{}]({self})", self.max_degree)
    }
}
