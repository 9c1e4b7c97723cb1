use qseed_core::closed::{inverse_h_closed, inverse_lambda_closed};
use qseed_core::families::build_h;
use qseed_core::json::int_matrix_from_value;
use qseed_core::linalg::{inverse, to_rat};
use qseed_core::seeds::build_lambda;
use qseed_core::{FamilySpec, IntMatrix};

fn golden(name: &str) -> IntMatrix {
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let v = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    int_matrix_from_value(&v).unwrap()
}

#[test]
fn dd44_h_and_lambda() {
    let spec = FamilySpec::dd(4, 4);
    assert_eq!(build_h(&spec).unwrap(), golden("dd44_h"));
    assert_eq!(build_lambda(&spec).unwrap(), golden("dd44_lambda"));
}

#[test]
fn dd44_h_inverse() {
    let spec = FamilySpec::dd(4, 4);
    let want = to_rat(&golden("dd44_h_inv"));
    assert_eq!(inverse(&build_h(&spec).unwrap()).unwrap(), want);
    assert_eq!(inverse_h_closed(&spec).unwrap(), want);
}

#[test]
fn dd44_lambda_inverse() {
    let spec = FamilySpec::dd(4, 4);
    let want = to_rat(&golden("dd44_lambda_inv"));
    assert_eq!(inverse(&build_lambda(&spec).unwrap()).unwrap(), want);
    assert_eq!(inverse_lambda_closed(&spec).unwrap(), want);
}
