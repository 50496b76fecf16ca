//! Grothendieck–Riemann–Roch for the universal spin bundle, jet bundles, the
//! Porteous class c₃(J − E), pushforward to κ classes, and λ²-coefficients of
//! the genus-4 loci on the interior.

use crate::algebra::Rational;
use crate::algebra::chern::{CHERN_DEGREE, ChernVector, chern_from_character};
use crate::algebra::poly::{Sym, TruncatedPoly, mono, mono_degree};
use crate::algebra::rational::{frac, int};
use crate::algebra::series::{SeriesKind, series_mul, series_named_in};
use crate::enumerative::{even_theta_count, odd_theta_count};
use crate::error::{Error, Result};
use crate::rings::Rings;

/// Largest ψ-order whose pushforward is a stored κ symbol.
pub const MAX_GRR_ORDER: usize = 4;

/// ψ/(e^ψ − 1) · e^{ψ/2} to the given order.
pub fn spin_integrand(order: usize) -> crate::algebra::TruncatedSeries {
    let t = series_named_in(&SeriesKind::ToddInverse, "psi", order);
    let e = series_named_in(&SeriesKind::ExpScaled(frac(1, 2)), "psi", order);
    series_mul(&t, &e).expect("same variable")
}

/// ch(p_*η) − ch(R¹p_*η) = p_*(td(ω^∨)·e^{ψ/2}), with ψᵏ ↦ κ_{k−1}.
pub fn grr_spin_character(order: usize) -> Result<TruncatedPoly> {
    if order > MAX_GRR_ORDER {
        return Err(Error::InvalidArgument(format!(
            "GRR order {order} exceeds {MAX_GRR_ORDER}"
        )));
    }
    let s = spin_integrand(order);
    let mut out = TruncatedPoly::zero(CHERN_DEGREE);
    for k in 1..=order {
        let kappa = Sym::kappa(k as u32 - 1).expect("order bounded");
        out = out.add(&TruncatedPoly::term(
            mono(&[(kappa, 1)]),
            s.coeff(k),
            CHERN_DEGREE,
        ));
    }
    Ok(out)
}

/// c₁(p_*η⁻) on the odd spin moduli space: half of the degree-one GRR term
/// (Serre duality pairs p_* with R¹p_*), then κ₁ = 12λ.
pub fn spin_c1() -> Result<TruncatedPoly> {
    let twice = grr_spin_character(2)?.degree_part(1);
    let kappa1 = TruncatedPoly::symbol(Sym::Lambda, CHERN_DEGREE).scale(&int(12));
    Ok(twice.scale(&frac(1, 2)).substitute(Sym::Kappa1, &kappa1))
}

/// Chern classes of J_n(L) where ch(L) = e^{wψ}; rank n + 1.
pub fn jet_bundle_chern(n: u32, w: &Rational) -> Result<ChernVector> {
    if *w != frac(1, 2) && *w != int(1) {
        return Err(Error::InvalidArgument(format!(
            "jet weight must be 1/2 or 1, got {w}"
        )));
    }
    let s = series_named_in(
        &SeriesKind::JetSum {
            n,
            weight: w.clone(),
        },
        "psi",
        CHERN_DEGREE as usize,
    );
    let ch = [1, 2, 3]
        .map(|k| TruncatedPoly::term(mono(&[(Sym::Psi, k)]), s.coeff(k as usize), CHERN_DEGREE));
    chern_from_character(i64::from(n) + 1, &ch[0], &ch[1], &ch[2])
}

/// Degree-3 part of c(J)·c(E)⁻¹.
pub fn porteous_c3(cj: &ChernVector, ce: &ChernVector) -> Result<TruncatedPoly> {
    Ok(cj.total().mul(&ce.total().inverse()?).degree_part(3))
}

/// p_* along the universal curve: ψᵃ·M ↦ κ_{a−1}·M, with κ₀ = 2g − 2.
pub fn kappa_pushforward(p: &TruncatedPoly, g: u32) -> Result<TruncatedPoly> {
    let max = p.max_degree().saturating_sub(1);
    let mut out = TruncatedPoly::zero(max);
    for (m, c) in p.terms() {
        let a = m[Sym::Psi as usize];
        let mut rest = *m;
        rest[Sym::Psi as usize] = 0;
        let t = match a {
            0 => {
                return Err(Error::InvalidArgument(format!(
                    "monomial without psi: {}",
                    TruncatedPoly::term(*m, c.clone(), p.max_degree())
                )));
            }
            1 => TruncatedPoly::term(rest, c * int(2 * i64::from(g) - 2), max),
            _ => {
                let k = Sym::kappa(a - 1)
                    .ok_or_else(|| Error::InvalidArgument(format!("psi^{a} is beyond kappa3")))?;
                rest[k as usize] += 1;
                TruncatedPoly::term(rest, c.clone(), max)
            }
        };
        out = out.add(&t);
    }
    Ok(out)
}

/// Drops terms pulled back from the base, which push forward to zero.
pub fn fiber_part(p: &TruncatedPoly) -> TruncatedPoly {
    let mut out = TruncatedPoly::zero(p.max_degree());
    for (m, c) in p.terms() {
        if m[Sym::Psi as usize] > 0 {
            out = out.add(&TruncatedPoly::term(*m, c.clone(), p.max_degree()));
        }
    }
    out
}

/// λ²-coefficient on M4 after κ₁ = 12λ, κ₂ = 27/2·λ², λ₂ = λ₁²/2, λ₁ = λ.
pub fn m4_specialize(p: &TruncatedPoly) -> Result<Rational> {
    if !p.is_homogeneous(2) {
        let found = p
            .terms()
            .map(|(m, _)| mono_degree(m))
            .find(|d| *d != 2)
            .unwrap_or(0);
        return Err(Error::DegreeMismatch { expected: 2, found });
    }
    let d = p.max_degree();
    let lam = TruncatedPoly::symbol(Sym::Lambda, d);
    let lam1 = TruncatedPoly::symbol(Sym::Lambda1, d);
    let q = p
        .substitute(Sym::Kappa1, &lam.scale(&int(12)))
        .substitute(Sym::Kappa2, &lam.pow(2).scale(&frac(27, 2)))
        .substitute(Sym::Lambda2, &lam1.pow(2).scale(&frac(1, 2)))
        .substitute(Sym::Lambda1, &lam);
    let target = mono(&[(Sym::Lambda, 2)]);
    if let Some((m, _)) = q.terms().find(|(m, _)| **m != target) {
        return Err(Error::InvalidArgument(format!(
            "term {} survives specialization",
            TruncatedPoly::term(*m, int(1), d)
        )));
    }
    Ok(q.coeff(&target))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Number of theta characteristics of the given parity in genus g.
pub fn spin_cover_degree(g: u32, parity: Parity) -> Result<i64> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!(
            "spin cover needs g >= 2, got {g}"
        )));
    }
    Ok(match parity {
        Parity::Even => even_theta_count(g),
        Parity::Odd => odd_theta_count(g),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    SH4Minus,
    H4Minus,
    H4,
    H4Plus,
}

impl Locus {
    pub const ALL: [Locus; 4] = [Locus::SH4Minus, Locus::H4Minus, Locus::H4, Locus::H4Plus];

    pub fn name(self) -> &'static str {
        match self {
            Locus::SH4Minus => "SH4_minus",
            Locus::H4Minus => "H4_minus",
            Locus::H4 => "H4",
            Locus::H4Plus => "H4_plus",
        }
    }
}

const GENUS: u32 = 4;

/// Porteous integrand for the odd spin locus, before pushforward.
pub fn spin_porteous() -> Result<TruncatedPoly> {
    let cj = jet_bundle_chern(2, &frac(1, 2))?;
    let z = TruncatedPoly::zero(CHERN_DEGREE);
    let ce = ChernVector::new(1, spin_c1()?, z.clone(), z)?;
    porteous_c3(&cj, &ce)
}

/// Porteous integrand for the locus of points with h⁰(K(−6x)) ≥ 1.
pub fn hodge_porteous() -> Result<TruncatedPoly> {
    let cj = jet_bundle_chern(5, &int(1))?;
    let ce = ChernVector::new(
        4,
        TruncatedPoly::symbol(Sym::Lambda1, CHERN_DEGREE),
        TruncatedPoly::symbol(Sym::Lambda2, CHERN_DEGREE),
        TruncatedPoly::zero(CHERN_DEGREE),
    )?;
    porteous_c3(&cj, &ce)
}

pub fn locus_lambda2(which: Locus, rings: &Rings) -> Result<Rational> {
    Ok(match which {
        Locus::SH4Minus => {
            m4_specialize(&kappa_pushforward(&fiber_part(&spin_porteous()?), GENUS)?)?
        }
        Locus::H4Minus => {
            int(spin_cover_degree(GENUS, Parity::Odd)?) * locus_lambda2(Locus::SH4Minus, rings)?
        }
        Locus::H4 => m4_specialize(&kappa_pushforward(&fiber_part(&hodge_porteous()?), GENUS)?)?,
        Locus::H4Plus => {
            let hyp = rings.catalog("Hyp4")?.class.coeff("lambda^2")?;
            let weierstrass = int(2 * i64::from(GENUS) + 2);
            locus_lambda2(Locus::H4, rings)?
                - weierstrass * hyp
                - locus_lambda2(Locus::H4Minus, rings)?
        }
    })
}
