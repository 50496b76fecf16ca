use tautverify_core::algebra::poly::{Sym, TruncatedPoly, mono};
use tautverify_core::algebra::rational::{frac, int};
use tautverify_core::data::DataFiles;
use tautverify_core::grr::{
    Locus, fiber_part, hodge_porteous, kappa_pushforward, locus_lambda2, m4_specialize,
    spin_porteous,
};
use tautverify_core::rings::Rings;

fn t(factors: &[(Sym, u32)], c: tautverify_core::algebra::Rational, d: u32) -> TruncatedPoly {
    TruncatedPoly::term(mono(factors), c, d)
}

#[test]
fn spin_locus_before_specialization() {
    let p = kappa_pushforward(&fiber_part(&spin_porteous().unwrap()), 4).unwrap();
    let want = t(&[(Sym::Kappa2, 1)], frac(15, 8), 2)
        .add(&t(&[(Sym::Kappa1, 1), (Sym::Lambda, 1)], frac(23, 16), 2))
        .add(&t(&[(Sym::Lambda, 2)], frac(27, 16), 2));
    assert_eq!(p, want);
    assert_eq!(m4_specialize(&p).unwrap(), frac(177, 4));
}

#[test]
fn hodge_locus_before_specialization() {
    let c3 = fiber_part(&hodge_porteous().unwrap());
    let want = t(&[(Sym::Psi, 3)], int(735), 3)
        .sub(&t(&[(Sym::Psi, 2), (Sym::Lambda1, 1)], int(175), 3))
        .add(&t(&[(Sym::Psi, 1), (Sym::Lambda1, 2)], int(21), 3))
        .sub(&t(&[(Sym::Psi, 1), (Sym::Lambda2, 1)], int(21), 3));
    assert_eq!(c3, want);
    let p = kappa_pushforward(&c3, 4).unwrap();
    assert_eq!(m4_specialize(&p).unwrap(), frac(15771, 2));
}

#[test]
fn lambda_squared_values() {
    let rings = Rings::load(&DataFiles::embedded()).unwrap();
    let got: Vec<_> = Locus::ALL
        .iter()
        .map(|l| locus_lambda2(*l, &rings).unwrap())
        .collect();
    assert_eq!(
        got,
        vec![frac(177, 4), int(5310), frac(15771, 2), int(2448)]
    );
    let h4plus = &rings.catalog("H4plus_stated").unwrap().class;
    assert_eq!(h4plus.coeff("lambda^2").unwrap(), got[3]);
}
