use tautverify_core::Error;
use tautverify_core::algebra::Rational;
use tautverify_core::algebra::rational::{frac, int};
use tautverify_core::data::DataFiles;
use tautverify_core::verify::{Equation, MultiplicitySystem, Verifier};

fn verifier() -> Verifier {
    Verifier::embedded().unwrap()
}

fn row<'a>(s: &'a MultiplicitySystem, id: &str) -> &'a Equation {
    s.equations.iter().find(|e| e.id == id).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn substitute(e: &Equation, x: &[Rational]) -> Rational {
    e.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
}

#[test]
fn pristine_suite_passes() {
    let report = verifier().run_all();
    for c in &report.checks {
        assert!(c.passed, "{}", c.to_human());
    }
    assert_eq!(report.summary().total, 21);
}

#[test]
fn f31_system_by_substitution() {
    let v = verifier();
    let s = v.multiplicity_system("F31").unwrap();
    let x = ints(&[7, 2, 3, 3, 12]);
    for e in &s.equations {
        assert_eq!(substitute(e, &x), e.rhs, "{}", e.id);
    }
    // T1 + T2 = -2 (p_* on d1); that is the whole dependency among the six rows
    let (t1, t2, d1) = (row(&s, "T1"), row(&s, "T2"), row(&s, "p_*:d1"));
    for i in 0..5 {
        assert_eq!(&t1.coeffs[i] + &t2.coeffs[i], &d1.coeffs[i] * int(-2));
    }
    assert_eq!(&t1.rhs + &t2.rhs, &d1.rhs * int(-2));
    // only T3 involves l, only p_* on d0 involves j
    let only = |col: usize| -> Vec<&str> {
        s.equations
            .iter()
            .filter(|e| e.coeffs[col] != int(0))
            .map(|e| e.id.as_str())
            .collect()
    };
    assert_eq!(only(3), vec!["T3"]);
    assert_eq!(only(4), vec!["p_*:d0"]);
}

#[test]
fn h4plus_system_by_elimination() {
    let v = verifier();
    let s = v.multiplicity_system("H4plus").unwrap();
    // V3 and V4 involve only k and l: -3k + 12l = 2304, -k - 2l = -528
    let (v3, v4) = (row(&s, "V3"), row(&s, "V4"));
    assert_eq!(v3.coeffs, ints(&[0, 0, -3, 12]));
    assert_eq!(v4.coeffs, ints(&[0, 0, -1, -2]));
    let l = (&v3.rhs - &v4.rhs * int(3)) / int(18);
    let k = -&v4.rhs - &l * int(2);
    assert_eq!((k.clone(), l.clone()), (int(96), int(216)));
    let x = vec![int(320), int(2), k, l];
    for e in &s.equations {
        assert_eq!(substitute(e, &x), e.rhs, "{}", e.id);
    }
    assert_eq!(row(&s, "lambda^2").coeffs[0], frac(51, 4));
}

#[test]
fn relation_matrix_on_s_surfaces() {
    let v = verifier();
    let m31 = v.rings().space("M31").unwrap();
    let rel = |src: &str| m31.parse_class(src, Some(2)).unwrap();
    let family = [
        rel(
            "-2*psi^2 + 6*psi*lambda - 1/2*psi*d0 - 2*psi*d11 - 6*lambda^2 + 1/2*lambda*d0 + 6*lambda*d21 - 1/2*d0*d21 - d11^2 + kappa2",
        ),
        rel(
            "-psi^2 + 6*psi*lambda - 1/2*psi*d0 - 5*lambda^2 + 1/2*lambda*d0 - 4*lambda*d21 + 1/2*d0*d21 + d21^2",
        ),
        rel("120*lambda^2 - 22*lambda*d0 + d0^2"),
    ];
    // by hand from the S-tables
    let expected = [[2, 0, 8], [0, 2, -4], [-2, 0, -4]];
    let mut m = [
        [int(0), int(0), int(0)],
        [int(0), int(0), int(0)],
        [int(0), int(0), int(0)],
    ];
    for (i, s) in ["S1", "S2", "S3"].iter().enumerate() {
        for (j, r) in family.iter().enumerate() {
            m[i][j] = v.surfaces().evaluate(s, r).unwrap();
            assert_eq!(m[i][j], int(expected[i][j]), "{s}");
        }
    }
    let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    assert_eq!(det, int(16));
    // each is killed by theta*
    for r in &family {
        assert!(v.rings().apply_hom("theta_star", r).unwrap().is_zero());
    }
}

#[test]
fn cofactor_times_factor_is_hyp31() {
    let v = verifier();
    let r = v.rings();
    let a = r
        .apply_hom("p_pullback_m3", &r.catalog("Hyp3").unwrap().class)
        .unwrap();
    let d = &r.catalog("D_factor").unwrap().class;
    let prod = r.space("M31").unwrap().divisor_product(&a, d).unwrap();
    assert_eq!(prod, v.compute_hyp31().unwrap());
}

#[test]
fn derived_classes_match_stated_forms() {
    let v = verifier();
    let r = v.rings();
    assert_eq!(
        v.compute_hyp31().unwrap(),
        r.catalog("Hyp31_stated").unwrap().class
    );
    assert_eq!(
        v.compute_f31().unwrap(),
        r.catalog("F31_stated").unwrap().class
    );
    assert_eq!(
        v.compute_h4plus().unwrap(),
        r.catalog("H4plus_stated").unwrap().class
    );
}

#[test]
fn reports_are_byte_stable() {
    let a = verifier().run_all().to_json(true);
    let b = verifier().run_all().to_json(true);
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["summary"]["passed"], 21);
    assert_eq!(doc["checks"][0]["id"], "basis_m31");
}

#[test]
fn order_does_not_matter() {
    let v = verifier();
    let forward = v.run_all();
    for c in forward.checks.iter().rev() {
        let mut again = v.run_check(&c.id).unwrap();
        again.micros = c.micros;
        assert_eq!(&again, c);
    }
}

#[test]
fn unknown_ids_and_names() {
    let v = verifier();
    assert!(matches!(
        v.run_check("nonexistent"),
        Err(Error::Unknown { .. })
    ));
    assert!(matches!(v.named_class("nope"), Err(Error::Unknown { .. })));
    assert!(matches!(
        v.multiplicity_system("nope"),
        Err(Error::Unknown { .. })
    ));
}

#[test]
fn grr_spin_expected_text() {
    let r = verifier().run_check("grr_spin").unwrap();
    assert!(r.passed);
    assert!(r.expected.contains("-1/24*kappa1 + 7/5760*kappa3"));
}

fn with_golden(edit: impl Fn(&str) -> String) -> Verifier {
    let mut files = DataFiles::embedded();
    let g = edit(files.get("golden.json").unwrap());
    files.set("golden.json", g).unwrap();
    Verifier::load(&files).unwrap()
}

#[test]
fn corrupted_golden_value_fails_with_minimal_diff() {
    let v = with_golden(|g| g.replace("\"lambda^2\": \"2448\"", "\"lambda^2\": \"2449\""));
    let r = v.run_check("h4plus").unwrap();
    assert!(!r.passed);
    assert_eq!(r.expected, "lambda^2: 2449");
    assert_eq!(r.actual, "lambda^2: 2448");
}

#[test]
fn corrupted_golden_class_names_the_entry() {
    let v = with_golden(|g| g.replace("\"psi^2\": \"-3\"", "\"psi^2\": \"-4\""));
    let r = v.run_check("f31").unwrap();
    assert!(!r.passed);
    assert_eq!(r.actual, "psi^2: -3");
}

#[test]
fn corrupted_input_is_caught_by_golden() {
    // a wrong count constant changes the solved multiplicities
    let mut files = DataFiles::embedded();
    let c = files
        .get("constants.json")
        .unwrap()
        .replace("\"value\": \"4608\"", "\"value\": \"4600\"")
        .replace("\"2 * V1_H4plus_pairs * weierstrass_g2\"", "\"4600\"");
    files.set("constants.json", c).unwrap();
    let v = Verifier::load(&files).unwrap();
    let r = v.run_check("h4plus").unwrap();
    assert!(!r.passed);
}
