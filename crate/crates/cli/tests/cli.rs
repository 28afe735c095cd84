use darboux_cli::{format_expr, parse_expr, run_with};
use darboux_core::{DiffPoly, DiffVar, FieldConfig, RPoly, Scalar, XMonomial};
use proptest::prelude::*;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("darboux").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4, 0u32..=2, 0u32..=1).prop_map(|(n, d, e1, e2)| {
        Scalar::from_ratio(n, d)
            .mul(&Scalar::generator(0).pow(e1))
            .mul(&Scalar::generator(1).pow(e2))
    })
}

fn rpoly() -> impl Strategy<Value = RPoly> {
    prop::collection::vec(
        (
            scalar(),
            prop::collection::vec((1..=2usize, 1..=2usize, 0..=2usize), 0..=2),
            prop::collection::vec(0u32..=3, 4),
        ),
        0..=4,
    )
    .prop_map(|terms| {
        terms.into_iter().fold(RPoly::zero(2), |acc, (c, vs, e)| {
            let coef = vs.into_iter().fold(DiffPoly::constant(c), |p, (i, j, k)| {
                p.mul(&DiffPoly::var(DiffVar::new(i, j, k)))
            });
            acc.add(&RPoly::term(XMonomial::new(2, e).unwrap(), coef))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_expressions_parse_back(p in rpoly()) {
        let cfg = FieldConfig::with_unit_derivatives(2);
        let text = format_expr(&p);
        let q = parse_expr(&text, 2, &cfg).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(q, p, "{}", text);
    }
}

#[test]
fn derive_prints_the_image() {
    let (code, out, _) = run(&[
        "derive",
        "--generic",
        "--expr",
        "X[1,1]*X[2,2] - X[1,2]*X[2,1]",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("Y[1,1"), "{out}");
}

#[test]
fn a_vanishing_wronskian_exits_one() {
    let (code, out, _) = run(&["wronskian", "--f", "1,1;1,1", "--kmax", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("= 0"), "{out}");
}

#[test]
fn the_new_constant_is_reported() {
    let (code, out, _) = run(&["gl2", "demo", "--f", "0,1;0,1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("D(theta) = 0"), "{out}");
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let (code, _, err) = run(&["derive", "--generic", "--expr", "X[1,1] + * X[2,2]"]);
    assert_eq!(code, 2);
    assert!(err.contains("column"), "{err}");
}

#[test]
fn unknown_flags_exit_two() {
    let (code, _, _) = run(&["derive", "--bogus"]);
    assert_eq!(code, 2);
}

#[test]
fn json_output_carries_the_schema() {
    let (code, out, _) = run(&["--json", "wronskian", "--f", "1,1;1,1", "--kmax", "1"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "wronskian");
    assert_eq!(v["n"], 2);
    assert!(v["truncation_k"].is_number());
    assert!(v["result"]["kind"].is_string());
    assert!(v["exit_semantics"].is_string() || v["exit_semantics"].is_object());
}

#[test]
fn json_rationals_are_strings() {
    let (code, out, _) = run(&["--json", "gl2", "demo", "--f", "0,1;0,2"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["value"]["abcdefgh"]["B"], "2/1");
    assert_eq!(v["result"]["value"]["abcdefgh"]["H"], "8/1");
}

#[test]
fn constant_check_rejects_a_non_constant() {
    let (code, out, _) = run(&[
        "--json",
        "constant",
        "--f",
        "0,1;0,1",
        "--num",
        "X[1,2] + X[2,2]",
        "--den",
        "det",
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["value"], false);
}
