//! Chern classes from Chern characters through degree 3 (Newton identities).

use std::fmt;

use num_traits::One;

use super::poly::TruncatedPoly;
use super::rational::{Rational, frac, int};
use crate::error::{Error, Result};

/// Degree of truncation used for Chern vectors.
pub const CHERN_DEGREE: u32 = 3;

#[derive(Clone, PartialEq, Eq)]
pub struct ChernVector {
    rank: i64,
    c: [TruncatedPoly; 3],
}

impl ChernVector {
    pub fn new(rank: i64, c1: TruncatedPoly, c2: TruncatedPoly, c3: TruncatedPoly) -> Result<Self> {
        let c = [c1, c2, c3].map(|p| p.with_max_degree(CHERN_DEGREE));
        check_pure(&c)?;
        Ok(ChernVector { rank, c })
    }

    /// Rank `rank` with every Chern class zero.
    pub fn trivial(rank: i64) -> Self {
        let z = TruncatedPoly::zero(CHERN_DEGREE);
        ChernVector {
            rank,
            c: [z.clone(), z.clone(), z],
        }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    /// cᵢ for i = 1, 2, 3.
    pub fn c(&self, i: usize) -> &TruncatedPoly {
        &self.c[i - 1]
    }

    /// 1 + c₁ + c₂ + c₃.
    pub fn total(&self) -> TruncatedPoly {
        let one = TruncatedPoly::constant(Rational::one(), CHERN_DEGREE);
        one.add(&self.c[0]).add(&self.c[1]).add(&self.c[2])
    }

    /// (ch₁, ch₂, ch₃) recovered from the Chern classes.
    pub fn character(&self) -> [TruncatedPoly; 3] {
        let [c1, c2, c3] = &self.c;
        let ch1 = c1.clone();
        let ch2 = c1.mul(c1).sub(&c2.scale(&int(2))).scale(&frac(1, 2));
        let ch3 = c1
            .pow(3)
            .sub(&c1.mul(c2).scale(&int(3)))
            .add(&c3.scale(&int(3)))
            .scale(&frac(1, 6));
        [ch1, ch2, ch3]
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {}: c = 1 + ({}) + ({}) + ({})",
            self.rank, self.c[0], self.c[1], self.c[2]
        )
    }
}

impl fmt::Debug for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChernVector({self})")
    }
}

fn check_pure(parts: &[TruncatedPoly; 3]) -> Result<()> {
    for (i, p) in parts.iter().enumerate() {
        let d = i as u32 + 1;
        if !p.is_homogeneous(d) {
            let found = p
                .terms()
                .map(|(m, _)| super::poly::mono_degree(m))
                .find(|&x| x != d);
            return Err(Error::DegreeMismatch {
                expected: d,
                found: found.unwrap_or(0),
            });
        }
    }
    Ok(())
}

pub fn chern_from_character(
    rank: i64,
    ch1: &TruncatedPoly,
    ch2: &TruncatedPoly,
    ch3: &TruncatedPoly,
) -> Result<ChernVector> {
    let ch = [ch1, ch2, ch3].map(|p| p.with_max_degree(CHERN_DEGREE));
    check_pure(&ch)?;
    let [ch1, ch2, ch3] = ch;
    let c1 = ch1;
    let c2 = c1.mul(&c1).sub(&ch2.scale(&int(2))).scale(&frac(1, 2));
    // 6ch₃ = c₁³ − 3c₁c₂ + 3c₃
    let c3 = ch3
        .scale(&int(6))
        .sub(&c1.pow(3))
        .add(&c1.mul(&c2).scale(&int(3)))
        .scale(&frac(1, 3));
    ChernVector::new(rank, c1, c2, c3)
}
