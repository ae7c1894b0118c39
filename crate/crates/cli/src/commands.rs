//! Subcommands and their reports.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::Signed;
use pf_core::automorphisms::{
    bracket_scaling_test, jung_decompose, tame_bridge, BracketScaling, JungOutcome, PoissonEndo, PolyEndo,
};
use pf_core::freelie::GenNames;
use pf_core::freepoisson::PoissonElement;
use pf_core::freiheitssatz::{construct_witness, FreiheitError, WitnessConfig};
use pf_core::multiindex::MultiIndex;
use pf_core::polyring::{CoordNames, RationalPolynomial, Variable};
use pf_core::scalar::{parse as parse_scalar, render, Scalar};
use pf_core::series_solver::{SeriesProblem, SeriesSession};
use pf_core::symplectic::{
    customary_identity_exact, is_identity_randomized, GeneratorAssignment, IdentityVerdict, SymplecticError,
};
use serde::Serialize;
use thiserror::Error;

use crate::elaborate::{elaborate, Algebra, ElabError, FreePoissonAlg, PolynomialAlg, SymplecticAlg};
use crate::expr::{parse, Expr, ParseError};

#[derive(Debug, Parser)]
#[command(
    name = "pf",
    version,
    about = "Exact computations with free Poisson and symplectic algebras"
)]
pub struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Read the main expression from a file.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Number of random trials allowed in searches.
    #[arg(long, global = true, env = "PF_BUDGET")]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// `None` infers the rank from the expression.
    FreePoisson(Option<usize>),
    Symplectic(usize),
}

fn parse_target(s: &str) -> Result<Target, String> {
    let (kind, rank) = match s.split_once(':') {
        Some((k, r)) => (k, Some(r.parse::<usize>().map_err(|_| format!("bad rank '{r}'"))?)),
        None => (s, None),
    };
    match (kind, rank) {
        ("fp", r) => Ok(Target::FreePoisson(r)),
        ("ps", Some(n)) if n >= 1 => Ok(Target::Symplectic(n)),
        _ => Err(format!("target must be fp, fp:<m> or ps:<n>, got '{s}'")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Eval {
        #[arg(long, default_value = "fp", value_parser = parse_target)]
        target: Target,
        expr: Option<String>,
    },
    /// Bracket of two expressions, or of a single bracket expression.
    Bracket {
        #[arg(long, default_value = "fp", value_parser = parse_target)]
        target: Target,
        expr: Option<String>,
        second: Option<String>,
    },
    /// Whether an element of the free Poisson algebra vanishes on PS_n.
    Identity {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        expr: Option<String>,
    },
    /// Formal power series solution of f(x, ∂^α T) = 0.
    Series {
        #[arg(long)]
        coords: usize,
        #[arg(long)]
        f: Option<String>,
        /// Derivative indices, e.g. "(0,2);(1,0)".
        #[arg(long)]
        alphas: String,
        /// Comma-separated center coordinates.
        #[arg(long)]
        center: String,
        /// Comma-separated seed values, one per derivative index.
        #[arg(long)]
        values: String,
        #[arg(long, default_value_t = 6)]
        order: u32,
    },
    /// Witness that (f) meets the subalgebra without the last generator trivially.
    Freiheit {
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 6)]
        order: u32,
    },
    /// Tame decomposition of a plane polynomial map "F; G".
    Jung {
        #[arg(long)]
        map: Option<String>,
    },
    /// Bracket scaling test for a map "F; G".
    Commtest {
        #[arg(long)]
        map: Option<String>,
        /// Read the map in the free Poisson algebra on x, y.
        #[arg(long)]
        poisson: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Elaboration(#[from] ElabError),
    #[error("{0}")]
    Contract(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax(_) => "syntax",
            CliError::Elaboration(_) => "elaboration",
            CliError::Contract(_) => "contract",
            CliError::Budget(_) => "budget",
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            CliError::Syntax(e) => Some(e.position),
            _ => None,
        }
    }
}

impl From<SymplecticError> for CliError {
    fn from(e: SymplecticError) -> Self {
        CliError::Contract(e.to_string())
    }
}

/// A finished command: its JSON document, text rendering and exit code.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    pub code: u8,
}

fn report<T: Serialize>(value: &T, text: String, code: u8) -> Report {
    Report {
        json: serde_json::to_value(value).expect("reports serialize"),
        text,
        code,
    }
}

fn input(cli: &Cli, given: Option<&String>, name: &str) -> Result<String, CliError> {
    if let Some(s) = given {
        return Ok(s.clone());
    }
    match &cli.file {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| CliError::Contract(format!("cannot read {}: {e}", path.display()))),
        None => Err(CliError::Contract(format!(
            "missing {name} (pass it inline or via --file)"
        ))),
    }
}

fn show_fp(e: &PoissonElement) -> String {
    let names = if e.rank() <= 2 { GenNames::Xy } else { GenNames::Z };
    e.display_with(names)
}

fn show_ps(p: &RationalPolynomial) -> String {
    p.display_with(CoordNames::Symplectic)
}

fn show_plane(p: &RationalPolynomial) -> String {
    p.display_with(CoordNames::Plane)
}

fn show_assignment(phi: &GeneratorAssignment) -> Vec<String> {
    phi.images()
        .iter()
        .enumerate()
        .map(|(i, e)| format!("z{} -> {}", i + 1, show_ps(e.poly())))
        .collect()
}

#[derive(Serialize)]
struct EvalReport {
    command: &'static str,
    target: String,
    input: String,
    result: String,
}

fn evaluate(target: Target, e: &Expr) -> Result<(String, String), CliError> {
    Ok(match target {
        Target::FreePoisson(r) => {
            let alg = FreePoissonAlg {
                rank: r.unwrap_or_else(|| FreePoissonAlg::infer_rank(e)),
            };
            (alg.describe(), show_fp(&elaborate(&alg, e)?))
        }
        Target::Symplectic(n) => {
            let alg = SymplecticAlg { rank: n };
            (alg.describe(), show_ps(elaborate(&alg, e)?.poly()))
        }
    })
}

fn run_eval(cli: &Cli, target: Target, expr: Option<&String>, command: &'static str) -> Result<Report, CliError> {
    let e = parse(&input(cli, expr, "expression")?)?;
    let (target, result) = evaluate(target, &e)?;
    let r = EvalReport {
        command,
        target,
        input: e.to_string(),
        result: result.clone(),
    };
    Ok(report(&r, result, 0))
}

fn run_bracket(cli: &Cli, target: Target, a: Option<&String>, b: Option<&String>) -> Result<Report, CliError> {
    let first = parse(&input(cli, a, "expression")?)?;
    let e = match b {
        Some(b) => Expr::Bracket(Box::new(first), Box::new(parse(b)?)),
        None if matches!(first, Expr::Bracket(..)) => first,
        None => {
            return Err(CliError::Contract(
                "expected a bracket {a, b} or two expressions".into(),
            ))
        }
    };
    let (target, result) = evaluate(target, &e)?;
    let r = EvalReport {
        command: "bracket",
        target,
        input: e.to_string(),
        result: result.clone(),
    };
    Ok(report(&r, result, 0))
}

#[derive(Serialize)]
struct IdentityReport {
    command: &'static str,
    input: String,
    n: usize,
    identity: bool,
    method: &'static str,
    expansion_terms: Option<usize>,
    trials: Option<u64>,
    degree_bound: Option<u32>,
    seed: Option<u64>,
    witness: Option<Vec<String>>,
    value: Option<String>,
}

fn run_identity(cli: &Cli, n: usize, trials: u64, degree: u32, expr: Option<&String>) -> Result<Report, CliError> {
    if n == 0 {
        return Err(CliError::Contract("--n must be at least 1".into()));
    }
    let e = parse(&input(cli, expr, "expression")?)?;
    let alg = FreePoissonAlg {
        rank: FreePoissonAlg::infer_rank(&e),
    };
    let a = elaborate(&alg, &e)?;
    let mut r = IdentityReport {
        command: "identity",
        input: e.to_string(),
        n,
        identity: false,
        method: "exact-customary",
        expansion_terms: None,
        trials: None,
        degree_bound: None,
        seed: None,
        witness: None,
        value: None,
    };
    if a.is_zero() {
        r.identity = true;
        r.method = "zero";
        return Ok(report(&r, "identity: true (the element is zero)".into(), 0));
    }
    let text = match customary_identity_exact(&a, n) {
        Ok(v) => {
            r.identity = v.identity;
            r.expansion_terms = Some(v.expansion_terms);
            match v.witness {
                None => "identity: true (exact customary check)".to_string(),
                Some((phi, value)) => {
                    r.witness = Some(show_assignment(&phi));
                    r.value = Some(render(&value));
                    format!(
                        "identity: false (exact customary check)\nwitness: {}\nvalue: {}",
                        show_assignment(&phi).join(", "),
                        render(&value)
                    )
                }
            }
        }
        Err(SymplecticError::NotCustomary(_)) => {
            let trials = cli.budget.map_or(trials, |b| b as u64);
            r.method = "randomized";
            r.trials = Some(trials);
            r.degree_bound = Some(degree);
            r.seed = Some(cli.seed);
            match is_identity_randomized(&a, n, degree, trials, cli.seed)? {
                IdentityVerdict::ProbablyIdentity { .. } => {
                    r.identity = true;
                    format!(
                        "identity: probably true (randomized, {trials} trials, degree <= {degree}, seed {})",
                        cli.seed
                    )
                }
                IdentityVerdict::NonIdentity { witness, value, trial } => {
                    let shown = show_assignment(&witness);
                    let value = show_ps(value.poly());
                    let source = match trial {
                        None => "structured substitution".to_string(),
                        Some(t) => format!("random trial {t}"),
                    };
                    let text = format!(
                        "identity: false (randomized, {source})\nwitness: {}\nvalue: {value}",
                        shown.join(", ")
                    );
                    r.witness = Some(shown);
                    r.value = Some(value);
                    text
                }
            }
        }
        Err(e) => return Err(e.into()),
    };
    let code = if r.identity { 0 } else { 1 };
    Ok(report(&r, text, code))
}

fn parse_scalars(s: &str, what: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_scalar(t).ok_or_else(|| CliError::Contract(format!("bad {what} value '{t}'"))))
        .collect()
}

fn parse_alphas(s: &str) -> Result<Vec<MultiIndex>, CliError> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<MultiIndex>()
                .map_err(|_| CliError::Contract(format!("bad multi-index '{t}'")))
        })
        .collect()
}

#[derive(Serialize)]
struct SeedJson {
    center: Vec<String>,
    values: Vec<String>,
}

#[derive(Serialize)]
struct CoefficientJson {
    index: Vec<u32>,
    value: String,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct SeriesReport {
    command: &'static str,
    coords: usize,
    alphas: Vec<String>,
    seed: SeedJson,
    f: String,
    N: u32,
    coefficients: Vec<CoefficientJson>,
    truncation: String,
    residual_check: bool,
}

fn names_for(coords: usize) -> CoordNames {
    if coords <= 2 {
        CoordNames::Plane
    } else {
        CoordNames::Indexed
    }
}

fn run_series(
    cli: &Cli,
    coords: usize,
    f: Option<&String>,
    alphas: &str,
    center: &str,
    values: &str,
    order: u32,
) -> Result<Report, CliError> {
    let e = parse(&input(cli, f, "--f")?)?;
    let poly = elaborate(&PolynomialAlg { coords, jets: true }, &e)?;
    let alphas = parse_alphas(alphas)?;
    let problem = SeriesProblem::new(
        coords,
        poly.clone(),
        alphas.clone(),
        parse_scalars(center, "center")?,
        parse_scalars(values, "seed")?,
    )
    .map_err(|e| CliError::Contract(e.to_string()))?;
    if order < problem.max_order() {
        return Err(CliError::Contract(format!(
            "order {order} is below the highest derivative order {}",
            problem.max_order()
        )));
    }
    let budget_error = |e: pf_core::series_solver::SeriesError| CliError::Budget(e.to_string());
    let mut session = SeriesSession::new(problem.clone());
    let t = session.truncate(order).map_err(budget_error)?;
    let residual = session.residual_check(order).map_err(budget_error)?;
    let names = names_for(coords);
    let coefficients: Vec<CoefficientJson> = MultiIndex::up_to_degree(coords, order)
        .into_iter()
        .filter_map(|d| {
            let c = t.coefficient(&d);
            (!num_traits::Zero::is_zero(&c)).then(|| CoefficientJson {
                index: d.entries().to_vec(),
                value: render(&c),
            })
        })
        .collect();
    // Powers of (x_j − c_j), so the O(·) term reads correctly.
    let shifted_name = |v: &Variable| {
        let plain = names.name(v);
        match v {
            Variable::Coord(j) if !num_traits::Zero::is_zero(&problem.center()[*j]) => {
                let c = &problem.center()[*j];
                if c.is_negative() {
                    format!("({plain} + {})", render(&-c))
                } else {
                    format!("({plain} - {})", render(c))
                }
            }
            _ => plain,
        }
    };
    let expanded = t.shifted.render(&shifted_name);
    let r = SeriesReport {
        command: "series",
        coords,
        alphas: alphas.iter().map(ToString::to_string).collect(),
        seed: SeedJson {
            center: problem.center().iter().map(render).collect(),
            values: problem.jet_values().iter().map(render).collect(),
        },
        f: poly.display_with(names),
        N: order,
        coefficients,
        truncation: expanded.clone(),
        residual_check: residual,
    };
    let text = format!(
        "T = {expanded} + O({order_next})\ncenter: ({})\nresidual_check({order}): {residual}",
        r.seed.center.join(", "),
        order_next = order + 1
    );
    Ok(report(&r, text, if residual { 0 } else { 1 }))
}

#[derive(Serialize)]
struct FreiheitReport {
    command: &'static str,
    f: String,
    g: String,
    rank: usize,
    phi: Vec<String>,
    pde: String,
    alphas: Vec<String>,
    seed_point: SeedJson,
    order: u32,
    certified_order: u32,
    z: String,
    theta_g: String,
    verified: bool,
}

fn run_freiheit(cli: &Cli, f: Option<&String>, g: &str, order: u32) -> Result<Report, CliError> {
    let fe = parse(&input(cli, f, "--f")?)?;
    let ge = parse(g)?;
    let rank = FreePoissonAlg::infer_rank(&fe).max(FreePoissonAlg::infer_rank(&ge));
    if rank < 2 {
        return Err(CliError::Contract("f must involve at least two generators".into()));
    }
    let alg = FreePoissonAlg { rank };
    let (fv, gv) = (elaborate(&alg, &fe)?, elaborate(&alg, &ge)?);
    let mut config = WitnessConfig::default();
    if let Some(b) = cli.budget {
        config.embedding.random_trials = b;
        config.seed.random_trials = b;
    }
    let w = construct_witness(&fv, &gv, order, &config, cli.seed).map_err(|e| match e {
        FreiheitError::EmbeddingBudget { .. } | FreiheitError::NoRationalSeed { .. } => CliError::Budget(e.to_string()),
        FreiheitError::Series(s) => CliError::Budget(format!("series stage: {s}")),
        other => CliError::Contract(other.to_string()),
    })?;
    let phi = show_assignment(&w.phi);
    let pde = format!("{} = 0", show_ps(&w.pde.h));
    let center: Vec<String> = w.seed.center.iter().map(render).collect();
    let values: Vec<String> = w.seed.jet_values.iter().map(render).collect();
    let z = show_ps(&w.z());
    let theta_g = show_ps(w.theta_g.poly());
    let alphas: Vec<String> = w.pde.alphas.iter().map(ToString::to_string).collect();
    let seed_desc: Vec<String> = (0..2 * w.rank)
        .map(|c| format!("{} = {}", show_ps(&RationalPolynomial::coord(c)), center[c]))
        .chain(alphas.iter().zip(&values).map(|(a, v)| format!("u{a} = {v}")))
        .collect();
    let text = format!(
        "rank: {}\nphi: {}\npde: {pde}\nseed: {}\nZ = {z} + O({})\ncertified order: {}\ntheta(g) = {theta_g}",
        w.rank,
        phi.join(", "),
        seed_desc.join(", "),
        order + 1,
        w.certified_order
    );
    let r = FreiheitReport {
        command: "freiheit",
        f: show_fp(&fv),
        g: show_fp(&gv),
        rank: w.rank,
        phi,
        pde,
        alphas,
        seed_point: SeedJson { center, values },
        order,
        certified_order: w.certified_order,
        z,
        theta_g,
        verified: true,
    };
    Ok(report(&r, text, 0))
}

fn split_map(s: &str) -> Result<(Expr, Expr), CliError> {
    let (a, b) = s
        .split_once(';')
        .ok_or_else(|| CliError::Contract("a map is written \"F; G\"".into()))?;
    Ok((parse(a)?, parse(b)?))
}

fn plane_map(s: &str) -> Result<PolyEndo, CliError> {
    let (a, b) = split_map(s)?;
    let alg = PolynomialAlg { coords: 2, jets: false };
    PolyEndo::new(elaborate(&alg, &a)?, elaborate(&alg, &b)?).map_err(|e| CliError::Contract(e.to_string()))
}

#[derive(Serialize)]
struct JungReport {
    command: &'static str,
    map: [String; 2],
    jacobian: String,
    automorphism: bool,
    moves: Vec<String>,
    reason: Option<String>,
}

fn run_jung(cli: &Cli, map: Option<&String>) -> Result<Report, CliError> {
    let phi = plane_map(&input(cli, map, "--map")?)?;
    let mut r = JungReport {
        command: "jung",
        map: [show_plane(&phi.f), show_plane(&phi.g)],
        jacobian: show_plane(&phi.jacobian()),
        automorphism: false,
        moves: vec![],
        reason: None,
    };
    let text = match jung_decompose(&phi) {
        JungOutcome::Tame(moves) => {
            r.automorphism = true;
            r.moves = moves.iter().map(ToString::to_string).collect();
            let mut lines = vec![format!(
                "automorphism: true ({} moves, composition verified)",
                moves.len()
            )];
            lines.extend(r.moves.iter().enumerate().map(|(i, m)| format!("  {}. {m}", i + 1)));
            lines.join("\n")
        }
        JungOutcome::NotAutomorphism { reason, stalled } => {
            let text = format!("automorphism: false ({reason}; stalled at {stalled})");
            r.reason = Some(reason);
            text
        }
    };
    let code = if r.automorphism { 0 } else { 1 };
    Ok(report(&r, text, code))
}

#[derive(Serialize, Default)]
struct CommtestReport {
    command: &'static str,
    map: [String; 2],
    poisson: bool,
    classification: &'static str,
    alpha: Option<String>,
    multiple: Option<String>,
    offending: Option<String>,
    jacobian: Option<String>,
    jacobian_matches: Option<bool>,
    moves: Option<Vec<String>>,
    s: Option<String>,
    t: Option<String>,
    residual_zero: Option<bool>,
}

fn run_commtest(cli: &Cli, map: Option<&String>, poisson: bool) -> Result<Report, CliError> {
    let text_in = input(cli, map, "--map")?;
    let phi = if poisson {
        let (a, b) = split_map(&text_in)?;
        let alg = FreePoissonAlg { rank: 2 };
        PoissonEndo::new(elaborate(&alg, &a)?, elaborate(&alg, &b)?).map_err(|e| CliError::Contract(e.to_string()))?
    } else {
        PoissonEndo::lift(&plane_map(&text_in)?).map_err(|e| CliError::Contract(e.to_string()))?
    };
    let contract = |e: pf_core::automorphisms::AutomorphismError| CliError::Contract(e.to_string());
    let mut r = CommtestReport {
        command: "commtest",
        map: [show_fp(&phi.f), show_fp(&phi.g)],
        poisson,
        ..Default::default()
    };
    let mut lines = Vec::new();
    match bracket_scaling_test(&phi).map_err(contract)? {
        BracketScaling::Scalar(a) if num_traits::Zero::is_zero(&a) => {
            r.classification = "degenerate";
            r.alpha = Some("0".into());
            lines.push("{F, G} = 0 (degenerate: alpha = 0 is not invertible)".to_string());
        }
        BracketScaling::Scalar(a) => {
            r.classification = "scalar";
            r.alpha = Some(render(&a));
            lines.push(format!("{{F, G}} = alpha*{{x, y}} with alpha = {}", render(&a)));
            let b = tame_bridge(&phi).map_err(contract)?;
            r.jacobian = Some(show_plane(&b.jacobian));
            r.jacobian_matches = Some(b.jacobian_matches);
            lines.push(format!(
                "J(psi) = {} ({})",
                show_plane(&b.jacobian),
                if b.jacobian_matches {
                    "matches alpha"
                } else {
                    "differs from alpha"
                }
            ));
            match b.decomposition.moves() {
                Some(moves) => {
                    r.moves = Some(moves.iter().map(ToString::to_string).collect());
                    lines.push(format!("psi is tame ({} moves)", moves.len()));
                }
                None => lines.push("psi does not decompose".to_string()),
            }
            if let Some((s, t)) = &b.residual {
                r.s = Some(show_fp(s));
                r.t = Some(show_fp(t));
                r.residual_zero = Some(b.residual_vanishes());
                lines.push(format!("theta = psi^-1 phi: s = {}, t = {}", show_fp(s), show_fp(t)));
            }
        }
        BracketScaling::PolynomialMultiple(t) => {
            r.classification = "polynomial";
            r.multiple = Some(show_plane(&t));
            lines.push(format!(
                "{{F, G}} = ({})*{{x, y}} (not a scalar multiple)",
                show_plane(&t)
            ));
        }
        BracketScaling::NotMultiple(rest) => {
            r.classification = "not-multiple";
            r.offending = Some(show_fp(&rest));
            lines.push(format!(
                "{{F, G}} is not a multiple of {{x, y}}: contains {}",
                show_fp(&rest)
            ));
        }
    }
    let ok = r.classification == "scalar" && r.jacobian_matches == Some(true) && r.residual_zero != Some(false);
    Ok(report(&r, lines.join("\n"), if ok { 0 } else { 1 }))
}

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Eval { target, expr } => run_eval(cli, *target, expr.as_ref(), "eval"),
        Command::Bracket { target, expr, second } => run_bracket(cli, *target, expr.as_ref(), second.as_ref()),
        Command::Identity {
            n,
            trials,
            degree,
            expr,
        } => run_identity(cli, *n, *trials, *degree, expr.as_ref()),
        Command::Series {
            coords,
            f,
            alphas,
            center,
            values,
            order,
        } => run_series(cli, *coords, f.as_ref(), alphas, center, values, *order),
        Command::Freiheit { f, g, order } => run_freiheit(cli, f.as_ref(), g, *order),
        Command::Jung { map } => run_jung(cli, map.as_ref()),
        Command::Commtest { map, poisson } => run_commtest(cli, map.as_ref(), *poisson),
    }
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub command: &'static str,
    pub kind: &'static str,
    pub message: String,
    pub position: Option<usize>,
}
