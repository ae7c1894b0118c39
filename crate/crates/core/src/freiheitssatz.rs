//! Witnesses for `(f) ∩ k{z_1, …, z_{m−1}} = 0`.
//!
//! For `f` depending on `z_m` and a nonzero `g` free of `z_m`, the pipeline builds a
//! homomorphism `θ` from `k{z_1, …, z_m}` into formal power series over `PS_n` with
//! `θ(f) = 0` and `θ(g) ≠ 0`:
//!
//! 1. [`find_embedding`] picks `φ: z_i ↦ Z_i ∈ PS_n` with `φ(g·f·f̂) ≠ 0`.
//! 2. [`extract_pde`] rewrites `f(Z_1, …, Z_{m−1}, Z) = 0` as `h(x, y, ∂^α Z) = 0` by
//!    evaluating `f` with `z_m ↦ u_0` and brackets expanded through total derivatives.
//! 3. [`find_seed`] finds a rational point with `h = 0` and nonzero top-jet partial.
//! 4. The series solver produces `Z` up to the requested order.
//!
//! [`verify_witness`] rechecks a witness by plain evaluation in `PS_n`, without the
//! jet machinery or the solver's caches.

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::freepoisson::{PoissonElement, PoissonError, PoissonTarget};
use crate::multiindex::MultiIndex;
use crate::polyring::{RationalPolynomial, Variable};
use crate::scalar::{ratio, Scalar};
use crate::series_solver::{SeriesError, SeriesProblem, SeriesSession, SeriesTruncation};
use crate::symplectic::{random_element, trial_rng, GeneratorAssignment, SymplecticElement, SymplecticError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreiheitError {
    #[error("input is zero")]
    ZeroInput,
    #[error("f does not depend on the last generator")]
    NotDependent,
    #[error("g involves the last generator")]
    NotInSubalgebra,
    #[error("f and g live in free Poisson algebras of ranks {left} and {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("embedding search exhausted after {trials} trials up to rank {max_rank}")]
    EmbeddingBudget { trials: usize, max_rank: usize },
    #[error("no rational seed point among {tried} candidates")]
    NoRationalSeed { tried: usize },
    #[error("order {order} is below the highest jet order {needed}")]
    OrderTooLow { order: u32, needed: u32 },
    #[error("series stage: {0}")]
    Series(#[from] SeriesError),
    #[error("evaluation stage: {0}")]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// `PS_n` extended by jet symbols `u_α` (arity `2n`), with the bracket
/// `Σ_i D_{x_i}a·D_{y_i}b − D_{y_i}a·D_{x_i}b` in total derivatives.
#[derive(Debug, Clone, Copy)]
pub struct JetSymplectic {
    pub rank: usize,
}

impl JetSymplectic {
    pub fn bracket(&self, a: &RationalPolynomial, b: &RationalPolynomial) -> RationalPolynomial {
        let mut out = RationalPolynomial::zero();
        for i in 0..self.rank {
            let (x, y) = (2 * i, 2 * i + 1);
            out =
                out + &a.total_derivative(x) * &b.total_derivative(y) - &a.total_derivative(y) * &b.total_derivative(x);
        }
        out
    }
}

impl PoissonTarget for JetSymplectic {
    type Elem = RationalPolynomial;
    type Error = FreiheitError;

    fn zero(&self) -> RationalPolynomial {
        RationalPolynomial::zero()
    }
    fn constant(&self, c: Scalar) -> RationalPolynomial {
        RationalPolynomial::constant(c)
    }
    fn add(&self, a: &RationalPolynomial, b: &RationalPolynomial) -> Result<RationalPolynomial, FreiheitError> {
        Ok(a + b)
    }
    fn mul(&self, a: &RationalPolynomial, b: &RationalPolynomial) -> Result<RationalPolynomial, FreiheitError> {
        Ok(a * b)
    }
    fn bracket(&self, a: &RationalPolynomial, b: &RationalPolynomial) -> Result<RationalPolynomial, FreiheitError> {
        Ok(JetSymplectic::bracket(self, a, b))
    }
    fn image(&self, images: &[RationalPolynomial], i: usize) -> Result<RationalPolynomial, FreiheitError> {
        images
            .get(i)
            .cloned()
            .ok_or(FreiheitError::Symplectic(SymplecticError::UncoveredGenerator {
                index: i,
                covered: images.len(),
            }))
    }
}

/// The top homogeneous component of `f` in the last generator.
pub fn highest_zm_part(f: &PoissonElement) -> Result<PoissonElement, FreiheitError> {
    if f.is_zero() {
        return Err(FreiheitError::ZeroInput);
    }
    let m = f.rank() - 1;
    Ok(f.component_in(m, f.degree_in(m)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingBudget {
    pub max_rank: usize,
    pub random_trials: usize,
    pub degree: u32,
}

impl Default for EmbeddingBudget {
    fn default() -> Self {
        Self {
            max_rank: 3,
            random_trials: 64,
            degree: 2,
        }
    }
}

fn check_inputs(f: &PoissonElement, g: &PoissonElement) -> Result<usize, FreiheitError> {
    if f.is_zero() || g.is_zero() {
        return Err(FreiheitError::ZeroInput);
    }
    if f.rank() != g.rank() {
        return Err(FreiheitError::RankMismatch {
            left: f.rank(),
            right: g.rank(),
        });
    }
    let m = f.rank();
    if m == 0 || !f.depends_on(m - 1) {
        return Err(FreiheitError::NotDependent);
    }
    if g.depends_on(m - 1) {
        return Err(FreiheitError::NotInSubalgebra);
    }
    Ok(m)
}

/// Candidate images for the last generator when the others follow the Darboux pattern.
fn structured_candidates(rank: usize) -> Vec<SymplecticElement> {
    let one = SymplecticElement::constant(rank, Scalar::one());
    let mut out = Vec::new();
    for c in 0..2 * rank {
        let v = SymplecticElement::coordinate(rank, c);
        let sq = v.mul(&v).expect("same rank");
        out.push(v.clone());
        out.push(v.add(&one).expect("same rank"));
        out.push(sq.clone());
        out.push(sq.add(&one).expect("same rank"));
    }
    out
}

/// An assignment of all `m` generators with `φ(g·f·f̂) ≠ 0`.
pub fn find_embedding(
    f: &PoissonElement,
    g: &PoissonElement,
    budget: &EmbeddingBudget,
    rng_seed: u64,
) -> Result<GeneratorAssignment, FreiheitError> {
    let m = check_inputs(f, g)?;
    let target = g.product(f)?.product(&highest_zm_part(f)?)?;
    let mut trials = 0usize;
    for n in 1..=budget.max_rank {
        let lower = GeneratorAssignment::darboux(n, m - 1);
        for last in structured_candidates(n) {
            trials += 1;
            let mut images = lower.images().to_vec();
            images.push(last);
            let phi = GeneratorAssignment::new(n, images)?;
            if !phi.eval_hom(&target)?.is_zero() {
                return Ok(phi);
            }
        }
        for t in 0..budget.random_trials {
            trials += 1;
            let mut rng = trial_rng(rng_seed, (n * budget.random_trials + t) as u64);
            let images = (0..m).map(|_| random_element(&mut rng, n, budget.degree, 3)).collect();
            let phi = GeneratorAssignment::new(n, images)?;
            if !phi.eval_hom(&target)?.is_zero() {
                return Ok(phi);
            }
        }
    }
    Err(FreiheitError::EmbeddingBudget {
        trials,
        max_rank: budget.max_rank,
    })
}

/// `h(x, y, u_{α_1}, …, u_{α_r})` with `f(Z_1, …, Z_{m−1}, Z) = h(x, y, ∂^α Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdeForm {
    pub rank: usize,
    pub h: RationalPolynomial,
    /// Lex-increasing jet indices occurring in `h`.
    pub alphas: Vec<MultiIndex>,
    pub phi: GeneratorAssignment,
}

impl PdeForm {
    pub fn top(&self) -> &MultiIndex {
        self.alphas.last().expect("at least one jet symbol")
    }
}

/// Evaluates `f` with `z_i ↦ φ(z_i)` for `i < m` and `z_m ↦ u_0`.
pub fn extract_pde(f: &PoissonElement, phi: &GeneratorAssignment) -> Result<PdeForm, FreiheitError> {
    let m = f.rank();
    if m == 0 || !f.depends_on(m - 1) {
        return Err(FreiheitError::NotDependent);
    }
    let n = phi.rank();
    let mut images: Vec<RationalPolynomial> = phi.images()[..phi.len().min(m - 1)]
        .iter()
        .map(|e| e.poly().clone())
        .collect();
    if images.len() < m - 1 {
        return Err(SymplecticError::UncoveredGenerator {
            index: images.len(),
            covered: images.len(),
        }
        .into());
    }
    images.push(RationalPolynomial::jet(MultiIndex::zero(2 * n)));
    let h = f.evaluate(&JetSymplectic { rank: n }, &images)?;
    let alphas: Vec<MultiIndex> = h.jet_indices().into_iter().collect();
    if alphas.is_empty() {
        return Err(FreiheitError::NotDependent);
    }
    Ok(PdeForm {
        rank: n,
        h,
        alphas,
        phi: phi.restrict(m - 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedBudget {
    pub grid_points: usize,
    pub random_trials: usize,
    pub max_height: i64,
}

impl Default for SeedBudget {
    fn default() -> Self {
        Self {
            grid_points: 5000,
            random_trials: 500,
            max_height: 10,
        }
    }
}

/// `h(L) = 0` with `∂h/∂u_{α_r}(L) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedPoint {
    pub center: Vec<Scalar>,
    pub jet_values: Vec<Scalar>,
}

const GRID: [(i64, i64); 7] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];

fn solve_top(h: &PdeForm, free: &[Variable], values: &[Scalar]) -> Option<Scalar> {
    let top = Variable::Jet(h.top().clone());
    let lookup = |v: &Variable| free.iter().position(|w| w == v).map(|i| values[i].clone());
    let uni = h.h.partial_evaluate(lookup);
    let coeffs = uni.univariate_coefficients(&top).ok()?;
    match coeffs.len() {
        0 | 1 => None,
        2 => Some(-&coeffs[0] / &coeffs[1]),
        _ => {
            let roots = uni.rational_roots().ok()?;
            let dh = uni.partial(&top);
            roots.into_iter().find(|r| {
                !dh.evaluate(|v| (*v == top).then(|| r.clone()))
                    .map(|d| d.is_zero())
                    .unwrap_or(true)
            })
        }
    }
}

fn assemble(h: &PdeForm, free: &[Variable], values: &[Scalar], top: Scalar) -> SeedPoint {
    let coords = 2 * h.rank;
    let center = values[..coords].to_vec();
    let mut jet_values = values[coords..].to_vec();
    jet_values.push(top);
    debug_assert_eq!(free.len(), values.len());
    SeedPoint { center, jet_values }
}

/// Small rationals from a fixed grid first, then random ones.
pub fn find_seed(h: &PdeForm, budget: &SeedBudget, rng_seed: u64) -> Result<SeedPoint, FreiheitError> {
    let mut free: Vec<Variable> = (0..2 * h.rank).map(Variable::Coord).collect();
    free.extend(h.alphas[..h.alphas.len() - 1].iter().cloned().map(Variable::Jet));
    let k = free.len();
    let mut tried = 0usize;
    let mut digits = vec![0usize; k];
    loop {
        if tried >= budget.grid_points {
            break;
        }
        tried += 1;
        let values: Vec<Scalar> = digits.iter().map(|&d| ratio(GRID[d].0, GRID[d].1)).collect();
        if let Some(top) = solve_top(h, &free, &values) {
            return Ok(assemble(h, &free, &values, top));
        }
        let Some(pos) = digits.iter().position(|&d| d + 1 < GRID.len()) else {
            break;
        };
        digits[pos] += 1;
        for d in &mut digits[..pos] {
            *d = 0;
        }
    }
    let mut rng = trial_rng(rng_seed, u64::MAX);
    let hgt = budget.max_height.max(1);
    for _ in 0..budget.random_trials {
        tried += 1;
        let values: Vec<Scalar> = (0..k)
            .map(|_| ratio(rng.gen_range(-hgt..=hgt), rng.gen_range(1..=hgt)))
            .collect();
        if let Some(top) = solve_top(h, &free, &values) {
            return Ok(assemble(h, &free, &values, top));
        }
    }
    Err(FreiheitError::NoRationalSeed { tried })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WitnessConfig {
    pub embedding: EmbeddingBudget,
    pub seed: SeedBudget,
}

pub const DEFAULT_ORDER: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreiheitssatzWitness {
    pub rank: usize,
    /// Images of `z_1, …, z_{m−1}`.
    pub phi: GeneratorAssignment,
    pub pde: PdeForm,
    pub seed: SeedPoint,
    pub order: u32,
    /// Residual terms of degree `≤ certified_order` in `X − L` vanish.
    pub certified_order: u32,
    pub series: SeriesTruncation,
    pub theta_g: SymplecticElement,
}

impl FreiheitssatzWitness {
    /// `Z_N` in the unshifted coordinates.
    pub fn z(&self) -> RationalPolynomial {
        self.series.expanded()
    }
}

pub fn construct_witness(
    f: &PoissonElement,
    g: &PoissonElement,
    order: u32,
    config: &WitnessConfig,
    rng_seed: u64,
) -> Result<FreiheitssatzWitness, FreiheitError> {
    let m = check_inputs(f, g)?;
    let phi_full = find_embedding(f, g, &config.embedding, rng_seed)?;
    let phi = phi_full.restrict(m - 1);
    let pde = extract_pde(f, &phi)?;
    let seed = find_seed(&pde, &config.seed, rng_seed)?;
    let needed = pde.alphas.iter().map(MultiIndex::total).max().unwrap_or(0);
    if order < needed {
        return Err(FreiheitError::OrderTooLow { order, needed });
    }
    let problem = SeriesProblem::new(
        2 * pde.rank,
        pde.h.clone(),
        pde.alphas.clone(),
        seed.center.clone(),
        seed.jet_values.clone(),
    )?;
    let mut session = SeriesSession::new(problem);
    let series = session.truncate(order)?;
    if !session.residual_check(order)? {
        return Err(FreiheitError::Verification("series residual does not vanish".into()));
    }
    let theta_g = phi.eval_hom(g)?;
    if theta_g.is_zero() {
        return Err(FreiheitError::Verification("θ(g) vanishes".into()));
    }
    let witness = FreiheitssatzWitness {
        rank: pde.rank,
        phi,
        pde,
        seed,
        order,
        certified_order: order - needed,
        series,
        theta_g,
    };
    verify_witness(f, g, &witness)?;
    Ok(witness)
}

/// Recomputes `θ(g)` and the low-order part of `θ(f)` by evaluation in `PS_n`.
pub fn verify_witness(f: &PoissonElement, g: &PoissonElement, w: &FreiheitssatzWitness) -> Result<(), FreiheitError> {
    let n = w.rank;
    let z = SymplecticElement::new(n, w.z())?;
    let mut images = w.phi.images().to_vec();
    images.push(z);
    let theta = GeneratorAssignment::new(n, images)?;
    let value = theta.eval_hom(f)?;
    let shifted = value.poly().substitute(|v| match v {
        Variable::Coord(j) => {
            Some(&RationalPolynomial::coord(*j) + &RationalPolynomial::constant(w.seed.center[*j].clone()))
        }
        Variable::Jet(_) => None,
    });
    let low = shifted.truncate(w.certified_order);
    if !low.is_zero() {
        return Err(FreiheitError::Verification(format!(
            "θ(f) has nonzero terms of degree ≤ {}: {low}",
            w.certified_order
        )));
    }
    let g_image = w.phi.eval_hom(g)?;
    if g_image.is_zero() || g_image != w.theta_g {
        return Err(FreiheitError::Verification("θ(g) mismatch".into()));
    }
    Ok(())
}
