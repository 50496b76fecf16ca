use tautverify_core::Error;
use tautverify_core::algebra::rational::int;
use tautverify_core::data::DataFiles;
use tautverify_core::enumerative::{Constants, scorza_triple_degree};

fn constants() -> Constants {
    Constants::load(&DataFiles::embedded()).unwrap()
}

#[test]
fn enumerative_counts() {
    let c = constants();
    for (id, v) in [
        ("T1_F31_fibers", 72),
        ("T2_F31_fibers", 80),
        ("V1_H4plus_pairs", 384),
        ("V1_H4plus", 4608),
        ("V2_even_odd", 1440),
        ("V2_odd_even", 1280),
        ("V2_x_on_C", 640),
        ("V2_H4plus", 3360),
    ] {
        assert_eq!(c.count_constant(id).unwrap().value, int(v), "{id}");
        assert_eq!(c.evaluate(id).unwrap(), int(v), "{id}");
    }
}

#[test]
fn scorza_constant_matches_formula() {
    let c = constants();
    let (total, _) = scorza_triple_degree().unwrap();
    assert_eq!(c.evaluate("scorza_triple").unwrap(), int(total));
}

#[test]
fn expressions_over_factors() {
    let c = constants();
    assert_eq!(
        c.evaluate_expr("odd_theta(2) * weierstrass_g2").unwrap(),
        int(36)
    );
    assert!(matches!(
        c.evaluate_expr("nope + 1"),
        Err(Error::Unknown { .. })
    ));
    assert!(c.evaluate_expr("abel(1/2)").is_err());
    assert!(c.evaluate_expr("sqrt(4)").is_err());
    assert!(matches!(
        c.count_constant("missing"),
        Err(Error::Unknown { .. })
    ));
}

#[test]
fn wrong_stored_value_fails_to_load() {
    let mut files = DataFiles::embedded();
    let text = files
        .get("constants.json")
        .unwrap()
        .replace("\"value\": \"3360\"", "\"value\": \"3361\"");
    files.set("constants.json", text).unwrap();
    assert!(Constants::load(&files).unwrap_err().is_config());
}

#[test]
fn self_reference_is_rejected() {
    let mut files = DataFiles::embedded();
    let text = files
        .get("constants.json")
        .unwrap()
        .replace("\"V2_even_odd + V2_odd_even + V2_x_on_C\"", "\"V2_H4plus\"");
    files.set("constants.json", text).unwrap();
    assert!(Constants::load(&files).unwrap_err().is_config());
}
