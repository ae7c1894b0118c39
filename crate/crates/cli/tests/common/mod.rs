//! Shared by the CLI and acceptance suites.
#![allow(dead_code)]

use std::path::PathBuf;

use pf_cli::{run, Outcome};
use serde_json::Value;

pub fn pf(args: &[&str]) -> Outcome {
    run(std::iter::once("pf").chain(args.iter().copied()))
}

pub const CORPUS: [&str; 50] = [
    "x",
    "y",
    "z1",
    "z12",
    "x3",
    "y7",
    "0",
    "17",
    "3/4",
    "-5",
    "-3/7",
    "x + y",
    "x - y - z3",
    "x - (y - z3)",
    "x*y*z3",
    "x*(y*z3)",
    "2x",
    "2 x y",
    "x^2",
    "x^2^3",
    "(x^2)^3",
    "x^0",
    "(x + y)^3",
    "-x^2",
    "(-x)^2",
    "--x",
    "x*-y",
    "x - -y",
    "{x, y}",
    "{z1, z2} - 1",
    "2*{x,{x,y}}^2",
    "{{x, y}, {x, {x, y}}}",
    "{x1, x1*y1}",
    "{x1 + y2, x2*y1^2}",
    "{x, y}*{x, {x, y}} - {y, {x, y}}^2",
    "1/2*{z1, z2}^2 + 3",
    "(1/2)x",
    "x(1/2)",
    "(3/2)^2",
    "St4",
    "St6 - St6",
    "CustomaryMonomial(2) + CustomaryMonomial(1)*z5",
    "u(0,2) - u(1,0)",
    "u(2)^2 - x - 1",
    "x y - y x",
    "(x + y)(x - y)",
    "{x, y + 1}{y, x}",
    "-(x + y)*-(z3)",
    "((((x))))",
    "  {  z1 ,  z2  }  ^ 2  ",
];

/// Parse, print, reparse: the second tree and its rendering must equal the first.
pub fn round_trip(src: &str) -> Result<(), String> {
    let first = pf_cli::expr::parse(src).map_err(|e| format!("{src}: {e}"))?;
    let printed = first.to_string();
    let second = pf_cli::expr::parse(&printed).map_err(|e| format!("{printed}: {e}"))?;
    if first != second || second.to_string() != printed {
        return Err(format!("{src} -> {printed} -> {second}"));
    }
    Ok(())
}

/// Randomized subcommands with a fixed seed.
pub const SEEDED_RUNS: [&[&str]; 4] = [
    &[
        "--json", "--seed", "5", "identity", "--n", "1", "--trials", "6", "St4*z5",
    ],
    &[
        "--json",
        "--seed",
        "7",
        "identity",
        "--n",
        "2",
        "--trials",
        "5",
        "{z1,z2}*{z3,z4} - {z1,z3}*{z2,z4}",
    ],
    &[
        "--json",
        "--seed",
        "11",
        "freiheit",
        "--f",
        "{z1,z2} - z1",
        "--g",
        "z1^2 + 1",
        "--order",
        "4",
    ],
    &[
        "--json",
        "--seed",
        "3",
        "freiheit",
        "--f",
        "{z1,{z2,z3}} - 1",
        "--g",
        "z1*z2",
        "--order",
        "4",
    ],
];

pub fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&doc).unwrap()
}

/// One invocation per report shape, including failures and the error document.
pub fn schema_cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("eval", vec!["eval", "{x, y}*x"]),
        ("eval", vec!["bracket", "--target", "ps:2", "x1*y2", "y1"]),
        ("identity", vec!["identity", "--n", "1", "St4"]),
        ("identity", vec!["identity", "--n", "1", "{x, y}"]),
        (
            "identity",
            vec![
                "identity",
                "--n",
                "2",
                "--trials",
                "3",
                "{z1,z2}*{z3,z4} - {z1,z3}*{z2,z4}",
            ],
        ),
        (
            "identity",
            vec!["identity", "--n", "2", "{z1,{z2,z3}} + {z2,{z3,z1}} + {z3,{z1,z2}}"],
        ),
        (
            "series",
            vec![
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
                "1,1",
                "--order",
                "4",
            ],
        ),
        (
            "freiheit",
            vec!["freiheit", "--f", "{z1,z2}-1", "--g", "z1", "--order", "4"],
        ),
        ("jung", vec!["jung", "--map", "x + y^2; y + 3"]),
        ("jung", vec!["jung", "--map", "x^2; y"]),
        ("commtest", vec!["commtest", "--map", "2x + y^3; y"]),
        ("commtest", vec!["commtest", "--poisson", "--map", "x + {x,y}; y"]),
        ("commtest", vec!["commtest", "--map", "x^2; y"]),
        ("error", vec!["eval", "{x y}"]),
        ("error", vec!["eval", "--target", "fp:1", "y"]),
    ]
}

pub fn validate_case(name: &str, args: &[&str]) -> Result<(), String> {
    let out = pf(&[&["--json"], args].concat());
    let doc: Value = serde_json::from_str(&out.stdout).map_err(|e| format!("{args:?}: {e}\n{}", out.stdout))?;
    let errors: Vec<String> = schema(name).iter_errors(&doc).map(|e| e.to_string()).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(format!("{args:?}: {errors:?}"))
    }
}
