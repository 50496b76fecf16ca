//! Randomized exact-rational property suites with a fixed seed, shared by
//! the property tests and the acceptance report.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use tautverify_core::algebra::rational::{frac, int};
use tautverify_core::algebra::{QMatrix, Rational, Solve, kernel_basis, mat_rref, solve_exact};
use tautverify_core::data::DataFiles;
use tautverify_core::enumerative::{abel_difference_degree, mixed_difference_degree};
use tautverify_core::grr::spin_integrand;
use tautverify_core::rings::{HomRule, Rings, TautClass};
use tautverify_core::surfaces::Surfaces;

const CASES: u32 = 128;
const SEED: [u8; 32] = [7; 32];

fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    let mut r = runner();
    if let Err(e) = r.run(&strategy, test) {
        panic!("{e}");
    }
}

fn q() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn qs(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    vec(q(), n)
}

fn rings() -> Rings {
    Rings::load(&DataFiles::embedded()).unwrap()
}

fn divisor(r: &Rings, space: &str, coeffs: Vec<Rational>) -> TautClass {
    r.space(space).unwrap().class(1, coeffs).unwrap()
}

const PRODUCT_SPACES: [&str; 4] = ["M3", "M31", "M4", "M22"];

pub fn products_are_bilinear_and_symmetric() {
    let r = rings();
    for id in PRODUCT_SPACES {
        let n = r.space(id).unwrap().divisor_basis().len();
        check((qs(n), qs(n), qs(n), q()), |(a, b, c, s)| {
            let (a, b, c) = (divisor(&r, id, a), divisor(&r, id, b), divisor(&r, id, c));
            let p = |x: &TautClass, y: &TautClass| r.divisor_product(x, y).unwrap();
            prop_assert_eq!(p(&a, &b), p(&b, &a));
            let lhs = p(&a.add(&b.scale(&s)).unwrap(), &c);
            let rhs = p(&a, &c).add(&p(&b, &c).scale(&s)).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        });
    }
}

/// Ring homs whose domain carries a product; the others start from spaces
/// stored in degree one only.
fn multiplicative_homs(r: &Rings) -> Vec<(String, String)> {
    r.homs()
        .filter(|h| matches!(h.rule(), HomRule::Ring { .. }))
        .filter(|h| PRODUCT_SPACES.contains(&h.domain()))
        .map(|h| (h.id().to_string(), h.domain().to_string()))
        .collect()
}

pub fn ring_homs_respect_products() {
    let r = rings();
    let homs = multiplicative_homs(&r);
    assert_eq!(homs.len(), 3);
    for (id, domain) in &homs {
        let n = r.space(domain).unwrap().divisor_basis().len();
        check((qs(n), qs(n), q()), |(a, b, s)| {
            let (a, b) = (divisor(&r, domain, a), divisor(&r, domain, b));
            let h = |c: &TautClass| r.apply_hom(id, c).unwrap();
            let ab = r.divisor_product(&a, &b).unwrap();
            prop_assert_eq!(h(&ab), r.divisor_product(&h(&a), &h(&b)).unwrap());
            let sum = a.add(&b.scale(&s)).unwrap();
            prop_assert_eq!(h(&sum), h(&a).add(&h(&b).scale(&s)).unwrap());
            Ok(())
        });
    }
}

pub fn ring_hom_law_on_generator_pairs() {
    let r = rings();
    for (id, domain) in multiplicative_homs(&r) {
        let space = r.space(&domain).unwrap();
        let gens = space.divisor_basis();
        for (i, x) in gens.iter().enumerate() {
            for y in &gens[i..] {
                let (x, y) = (space.divisor(x).unwrap(), space.divisor(y).unwrap());
                let h = |c: &TautClass| r.apply_hom(&id, c).unwrap();
                let lhs = h(&r.divisor_product(&x, &y).unwrap());
                assert_eq!(lhs, r.divisor_product(&h(&x), &h(&y)).unwrap(), "{id}");
            }
        }
    }
}

pub fn all_homs_are_linear() {
    let r = rings();
    for hom in r.homs() {
        let (id, deg) = match hom.rule() {
            HomRule::Table { source_degree, .. } => (hom.id(), *source_degree),
            HomRule::Ring { .. } => (hom.id(), 1),
        };
        let space = r.space(hom.domain()).unwrap();
        let n = space.basis(deg).unwrap().len();
        check((qs(n), qs(n), q()), |(a, b, s)| {
            let (a, b) = (space.class(deg, a).unwrap(), space.class(deg, b).unwrap());
            let h = |c: &TautClass| r.apply_hom(id, c);
            let sum = a.add(&b.scale(&s)).unwrap();
            match (h(&sum), h(&a), h(&b)) {
                (Ok(hs), Ok(ha), Ok(hb)) => {
                    prop_assert_eq!(hs, ha.add(&hb.scale(&s)).unwrap())
                }
                // partial tables reject classes outside their support
                (Err(_), _, _) | (_, Err(_), _) | (_, _, Err(_)) => {}
            }
            Ok(())
        });
    }
}

pub fn spin_integrand_is_even() {
    check(1usize..=24, |order| {
        let s = spin_integrand(order);
        prop_assert_eq!(s.coeff(0), int(1));
        for k in (1..=order).step_by(2) {
            prop_assert_eq!(s.coeff(k), int(0), "coefficient {}", k);
        }
        Ok(())
    });
}

fn matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| vec(vec(q(), c), r))
        .prop_map(|rows| QMatrix::from_rows(rows).unwrap())
}

/// Matrices of low rank come up often enough only if built as products.
fn low_rank_matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..=5, 1usize..=5, 1usize..=3)
        .prop_flat_map(|(r, c, k)| (vec(vec(q(), k), r), vec(vec(q(), c), k)))
        .prop_map(|(a, b)| {
            QMatrix::from_rows(a)
                .unwrap()
                .mul(&QMatrix::from_rows(b).unwrap())
                .unwrap()
        })
}

fn any_matrix() -> impl Strategy<Value = QMatrix> {
    prop_oneof![matrix(), low_rank_matrix()]
}

pub fn rref_is_idempotent() {
    check(any_matrix(), |m| {
        let once = mat_rref(&m);
        let twice = mat_rref(&once.reduced);
        prop_assert_eq!(&twice.reduced, &once.reduced);
        prop_assert_eq!(&twice.pivot_columns, &once.pivot_columns);
        prop_assert_eq!(once.rank, m.rank());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for (i, &c) in once.pivot_columns.iter().enumerate() {
            for j in 0..m.rows() {
                let want = if i == j { int(1) } else { int(0) };
                prop_assert_eq!(once.reduced.get(j, c), &want);
            }
        }
        Ok(())
    });
}

pub fn solve_and_kernel_are_exact() {
    let strategy = any_matrix().prop_flat_map(|m| {
        let (r, c) = (m.rows(), m.cols());
        (Just(m), qs(c), qs(r))
    });
    check(strategy, |(a, x0, noise)| {
        let kernel = kernel_basis(&a);
        prop_assert_eq!(kernel.len(), a.cols() - a.rank());
        for k in &kernel {
            prop_assert!(a.mul_vec(k).unwrap().iter().all(|x| *x == int(0)));
        }
        let b = a.mul_vec(&x0).unwrap();
        match solve_exact(&a, &b).unwrap() {
            Solve::Solution { x, kernel_dim } => {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
                prop_assert_eq!(kernel_dim, kernel.len());
            }
            Solve::Inconsistent { .. } => prop_assert!(false, "consistent system rejected"),
        }
        match solve_exact(&a, &noise).unwrap() {
            Solve::Solution { x, .. } => prop_assert_eq!(a.mul_vec(&x).unwrap(), noise),
            Solve::Inconsistent { certificate } => {
                // yᵀA = 0 and yᵀb ≠ 0
                let ya = a.transpose().mul_vec(&certificate).unwrap();
                prop_assert!(ya.iter().all(|x| *x == int(0)));
                let yb: Rational = certificate.iter().zip(&noise).map(|(y, b)| y * b).sum();
                prop_assert_ne!(yb, int(0));
            }
        }
        Ok(())
    });
}

pub fn square_determinant_detects_rank() {
    let strategy = (1usize..=4).prop_flat_map(|n| vec(vec(q(), n), n));
    check(strategy, |rows| {
        let m = QMatrix::from_rows(rows).unwrap();
        let det = m.determinant().unwrap();
        prop_assert_eq!(det == int(0), m.rank() < m.rows());
        prop_assert_eq!(m.transpose().determinant().unwrap(), det);
        Ok(())
    });
}

pub fn surface_evaluation_is_linear() {
    let r = rings();
    let s = Surfaces::load(&DataFiles::embedded(), &r).unwrap();
    for model in s.all() {
        let space = r.space(model.target_space()).unwrap();
        let n = space.codim2_basis().len();
        check((qs(n), qs(n), q()), |(a, b, t)| {
            let a = space.class(2, a).unwrap();
            let b = space.class(2, b).unwrap();
            let e = |c: &TautClass| s.evaluate(model.id(), c).unwrap();
            let sum = a.add(&b.scale(&t)).unwrap();
            prop_assert_eq!(e(&sum), e(&a) + e(&b) * &t);
            Ok(())
        });
    }
}

pub fn difference_degrees() {
    check((1i64..=40, 1i64..=40), |(d1, d2)| {
        prop_assert_eq!(
            mixed_difference_degree(d1, d2).unwrap(),
            mixed_difference_degree(d2, d1).unwrap()
        );
        prop_assert_eq!(
            abel_difference_degree(d1).unwrap(),
            mixed_difference_degree(d1 + 1, d1).unwrap()
        );
        Ok(())
    });
}

pub fn fixed_seed_is_reproducible() {
    let draw = || {
        let mut r = runner();
        let tree = qs(6).new_tree(&mut r).unwrap();
        tree.current()
    };
    assert_eq!(draw(), draw());
}
