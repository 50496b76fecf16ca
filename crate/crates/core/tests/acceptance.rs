//! One line per acceptance criterion; exits nonzero if any criterion fails.
//! Runs without the test harness so the lines are always printed.

mod common;

use std::panic::{AssertUnwindSafe, catch_unwind};

use common::props;
use tautverify_core::algebra::rational::{frac, int};
use tautverify_core::algebra::{QMatrix, Rational, kernel_basis};
use tautverify_core::enumerative::{
    abel_difference_degree, mixed_difference_degree, scorza_triple_degree,
};
use tautverify_core::grr::{Locus, locus_lambda2};
use tautverify_core::verify::Verifier;

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn checks_pass(v: &Verifier, ids: &[&str]) -> Outcome {
    for id in ids {
        let r = v.run_check(id).map_err(|e| e.to_string())?;
        ensure(
            r.passed,
            format!("{id}: expected {} got {}", r.expected, r.actual),
        )?;
    }
    Ok(())
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn hyp31_and_f31(v: &Verifier) -> Outcome {
    let m31 = v.rings().space("M31").map_err(|e| e.to_string())?;
    let hyp = m31
        .parse_class(
            "psi*(18*lambda - 2*d0 - 9*d11 - 6*d21) - lambda*(45*lambda - 19/2*d0 - 24*d21) - 1/2*d0^2 - 5/2*d0*d21 - 3*d21^2",
            Some(2),
        )
        .map_err(|e| e.to_string())?;
    let f = m31
        .parse_class(
            "-3*psi^2 + 77*psi*lambda - 8*psi*d0 - 42*psi*d11 - 19*psi*d21 - 338*lambda^2 + 137/2*lambda*d0 + 146*lambda*d21 - 7/2*d0^2 - 31/2*d0*d21 - 3*d11^2 - 20*d21^2 + 3*kappa2",
            Some(2),
        )
        .map_err(|e| e.to_string())?;
    let got_hyp = v.compute_hyp31().map_err(|e| e.to_string())?;
    let got_f = v.compute_f31().map_err(|e| e.to_string())?;
    ensure(got_hyp == hyp, format!("Hyp31 = {got_hyp}"))?;
    ensure(got_f == f, format!("F31 = {got_f}"))?;
    ensure(
        got_f.coeff("kappa2").unwrap() == int(3),
        "kappa2 coefficient",
    )
}

fn h4plus_class(v: &Verifier) -> Outcome {
    let h = v.compute_h4plus().map_err(|e| e.to_string())?;
    let want = ints(&[
        2448, -542, -1608, 276, 32, 178, 336, 276, 576, -4, 12, -60, -144,
    ]);
    ensure(h.coeffs() == want.as_slice(), format!("H4plus = {h}"))
}

fn multiplicities(v: &Verifier) -> Outcome {
    for (id, want) in [
        ("F31", ints(&[7, 2, 3, 3, 12])),
        ("H4plus", ints(&[320, 2, 96, 216])),
    ] {
        let (sys, s) = v.solve_multiplicities(id).map_err(|e| e.to_string())?;
        ensure(
            s.values == want,
            format!("{id}: {}", sys.display_solution(&s.values)),
        )?;
        ensure(
            !s.redundant.is_empty(),
            format!("{id}: no redundant constraint"),
        )?;
        for e in sys.equations.iter().filter(|e| s.redundant.contains(&e.id)) {
            let lhs: Rational = e.coeffs.iter().zip(&s.values).map(|(a, b)| a * b).sum();
            ensure(lhs == e.rhs, format!("{id}: {} violated", e.id))?;
        }
    }
    Ok(())
}

fn basis(v: &Verifier) -> Outcome {
    let a = v.theta_matrix().map_err(|e| e.to_string())?;
    ensure(a.rank() == 13, format!("rank {}", a.rank()))?;
    ensure(kernel_basis(&a).len() == 3, "kernel dimension")?;
    let m = QMatrix::from_rows(vec![
        ints(&[2, 0, 8]),
        ints(&[0, 2, -4]),
        ints(&[-2, 0, -4]),
    ])
    .unwrap();
    ensure(m.determinant().unwrap() != int(0), "surface matrix")?;
    checks_pass(v, &["basis_m31"])
}

fn tables(v: &Verifier) -> Outcome {
    let n = v.golden().entry("surface_tables").unwrap().expect.len();
    ensure(n >= 60, format!("only {n} table values"))?;
    checks_pass(v, &["surface_tables", "surface_audit"])
}

fn grr(v: &Verifier) -> Outcome {
    checks_pass(v, &["grr_spin", "jet_chern", "lambda2"])?;
    let l = locus_lambda2(Locus::H4Plus, v.rings()).map_err(|e| e.to_string())?;
    let t = v.compute_h4plus().unwrap().coeff("lambda^2").unwrap();
    ensure(l == t && l == int(2448), format!("{l} vs {t}"))?;
    let sh = locus_lambda2(Locus::SH4Minus, v.rings()).unwrap();
    ensure(sh == frac(177, 4), format!("SH4_minus {sh}"))
}

fn enumerative(v: &Verifier) -> Outcome {
    ensure(abel_difference_degree(1).unwrap() == 8, "abel(1)")?;
    ensure(abel_difference_degree(2).unwrap() == 72, "abel(2)")?;
    ensure(mixed_difference_degree(3, 1).unwrap() == 18, "mixed(3,1)")?;
    ensure(
        scorza_triple_degree().unwrap() == (108, [18, 18, 72]),
        "scorza",
    )?;
    checks_pass(v, &["enumerative"])
}

fn properties() -> Outcome {
    let suites: [(&str, fn()); 11] = [
        ("bilinearity", props::products_are_bilinear_and_symmetric),
        ("ring-hom law", props::ring_homs_respect_products),
        (
            "ring-hom law on generators",
            props::ring_hom_law_on_generator_pairs,
        ),
        ("linearity of homs", props::all_homs_are_linear),
        ("GRR evenness", props::spin_integrand_is_even),
        ("RREF idempotence", props::rref_is_idempotent),
        ("solve/kernel", props::solve_and_kernel_are_exact),
        ("determinant", props::square_determinant_detects_rank),
        ("surface linearity", props::surface_evaluation_is_linear),
        ("difference degrees", props::difference_degrees),
        ("seed", props::fixed_seed_is_reproducible),
    ];
    for (name, f) in suites {
        catch_unwind(f).map_err(|_| format!("{name} failed"))?;
    }
    Ok(())
}

fn main() {
    let v = Verifier::embedded().unwrap();
    let criteria: Vec<Criterion> = vec![
        ("Hyp31 and F31 classes", Box::new(|| hyp31_and_f31(&v))),
        ("H4plus class", Box::new(|| h4plus_class(&v))),
        ("multiplicity systems", Box::new(|| multiplicities(&v))),
        ("M31 codim-2 basis", Box::new(|| basis(&v))),
        (
            "boundary strata on M31",
            Box::new(|| checks_pass(&v, &["boundary_strata", "boundary_strata_m3"])),
        ),
        ("test-surface tables", Box::new(|| tables(&v))),
        ("GRR and Porteous", Box::new(|| grr(&v))),
        (
            "relation hygiene",
            Box::new(|| checks_pass(&v, &["relation_hygiene"])),
        ),
        (
            "pushforwards",
            Box::new(|| checks_pass(&v, &["pushforwards", "hyp31", "f31"])),
        ),
        ("enumerative counts", Box::new(|| enumerative(&v))),
        ("property suites", Box::new(properties)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
