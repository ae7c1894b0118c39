mod common;

use common::{pf, round_trip, schema_cases, validate_case, CORPUS, SEEDED_RUNS};
use pf_cli::expr::{parse, Expr, Ident};
use pf_core::scalar::ratio;
use proptest::prelude::*;
use serde_json::Value;

#[test]
fn corpus_round_trip_is_stable() {
    for src in CORPUS {
        round_trip(src).unwrap();
    }
}

fn ident() -> impl Strategy<Value = Ident> {
    prop_oneof![
        Just(Ident::X),
        Just(Ident::Y),
        (0usize..12).prop_map(Ident::Z),
        (0usize..4).prop_map(Ident::Xi),
        (0usize..4).prop_map(Ident::Yi),
        proptest::collection::vec(0u32..3, 1..3).prop_map(Ident::Jet),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        ident().prop_map(Expr::Var),
        (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Num(ratio(n, d))),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Bracket(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

proptest! {
    #[test]
    fn printed_trees_reparse(e in expr()) {
        let printed = e.to_string();
        let back = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn arbitrary_text_never_panics(s in "[ -~]{0,40}") {
        let _ = parse(&s);
    }
}

#[test]
fn documented_examples() {
    let out = pf(&["bracket", "--target", "ps:1", "{x1, x1*y1}"]);
    assert_eq!((out.code, out.stdout.trim()), (0, "x1"));

    let out = pf(&["identity", "--n", "1", "St4"]);
    assert_eq!(
        (out.code, out.stdout.trim()),
        (0, "identity: true (exact customary check)")
    );

    let out = pf(&["freiheit", "--f", "{z1,z2}-1", "--g", "z1", "--order", "4"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.lines().any(|l| l.starts_with("Z = y1 ")), "{}", out.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(pf(&["jung", "--map", "x + y^2; y"]).code, 0);
    assert_eq!(pf(&["jung", "--map", "x^2; y"]).code, 1);
    assert_eq!(pf(&["identity", "--n", "1", "{x, y}"]).code, 1);
    assert_eq!(pf(&["eval", "{x y}"]).code, 2);
    assert_eq!(pf(&["eval", "--target", "fp:2", "z3"]).code, 2);
    assert_eq!(pf(&["eval", "x^100000"]).code, 2);
    assert_eq!(pf(&["bracket", "--target", "bogus", "x"]).code, 2);
    assert_eq!(pf(&["eval"]).code, 2);
    assert_eq!(pf(&["eval", "--target", "fp:2", "St4"]).code, 2);
    assert_eq!(
        pf(&[
            "series",
            "--coords",
            "1",
            "--f",
            "u(1) - u(0)",
            "--alphas",
            "(0);(1)",
            "--center",
            "0",
            "--values",
            "2,1",
            "--order",
            "3"
        ])
        .code,
        2
    );
}

#[test]
fn syntax_errors_carry_positions() {
    let out = pf(&["--json", "eval", "{x y}"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["kind"], "syntax");
    assert_eq!(v["position"], 4);
}

#[test]
fn deep_nesting_is_not_a_crash() {
    let depth = 5000;
    let src = format!("{}x{}", "(".repeat(depth), ")".repeat(depth));
    let out = pf(&["eval", &src]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("nest"), "{}", out.stderr);
}

#[test]
fn long_chains_are_capped_not_crashed() {
    let ok = vec!["x"; 15_000].join("+");
    assert_eq!(pf(&["eval", &ok]).stdout.trim(), "15000*x");
    let too_long = vec!["x"; 30_000].join("+");
    let out = pf(&["eval", &too_long]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("operations"), "{}", out.stderr);
}

#[test]
fn file_input() {
    let path = std::env::temp_dir().join(format!("pf-cli-test-{}.txt", std::process::id()));
    std::fs::write(&path, "{x1, x1*y1}\n").unwrap();
    let out = pf(&["--file", path.to_str().unwrap(), "bracket", "--target", "ps:1"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.stdout.trim(), "x1");
}

#[test]
fn seeds_make_runs_reproducible() {
    for args in SEEDED_RUNS {
        assert_eq!(pf(args), pf(args), "{args:?}");
    }
}

#[test]
fn reports_match_their_schemas() {
    for (name, args) in schema_cases() {
        if let Err(e) = validate_case(name, &args) {
            panic!("{e}");
        }
    }
}
