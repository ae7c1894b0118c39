//! Formal power series solutions of `f(x, ∂^{α_1}T, …, ∂^{α_m}T) = 0`.
//!
//! Given `α_1 ≺ … ≺ α_m` (lex) and a seed `C̄ = (C, c^{α_1}, …, c^{α_m})` with
//! `f(C̄) = 0` and `∂f/∂t^{α_m}(C̄) ≠ 0`, there is a unique series
//! `T = Σ a_δ (X − C)^δ` with `∂^{α_i}T(C) = c^{α_i}`, `∂^δ T(C) = 0` for the other
//! `δ ≺ α_m`, and every coefficient `b_β` of `f(x, ∂^α T)` vanishing.
//!
//! Writing `D^β` for the iterated total derivative, `β! b_β` is `D^β f` evaluated at `C`
//! with `u_γ ↦ γ! a_γ`. In `D^β f` the jet `u_{α_m+β}` occurs only linearly, with
//! coefficient `∂f/∂t^{α_m}`, and every other jet is lex-smaller. Solving `b_β = 0` for
//! it therefore defines `a_{α_m+β}` from lex-smaller coefficients, and the recursion
//! terminates because lex is a well-order. Coefficients are computed on demand and
//! memoised.
//!
//! Indices `δ ⪰ α_m` that are not of the form `α_m + β` are not constrained by any
//! `b_β = 0` and are set to zero.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::multiindex::MultiIndex;
use crate::polyring::{Monomial, RationalPolynomial, Variable};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("hypothesis violated: f(seed) = {0}, expected 0")]
    SeedNotOnZeroSet(Scalar),
    #[error("hypothesis violated: ∂f/∂t^{0} vanishes at the seed")]
    DegenerateSeed(MultiIndex),
    #[error("derivative indices must be strictly lex-increasing")]
    UnsortedAlphas,
    #[error("f does not depend on the top jet t^{0}")]
    IndependentOfTop(MultiIndex),
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// Resource caps for a session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesBudget {
    pub max_memo: usize,
    pub max_cache_monomials: usize,
    pub max_depth: usize,
}

impl Default for SeriesBudget {
    fn default() -> Self {
        Self {
            max_memo: 20_000,
            max_cache_monomials: 1_000_000,
            max_depth: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesProblem {
    coords: usize,
    f: RationalPolynomial,
    alphas: Vec<MultiIndex>,
    center: Vec<Scalar>,
    jet_values: Vec<Scalar>,
}

impl SeriesProblem {
    /// `f` uses `Variable::Coord(j)` for `x_{j+1}` and `Variable::Jet(α_i)` for
    /// `t^{α_i}`; `jet_values[i]` is `c^{α_i}`.
    pub fn new(
        coords: usize,
        f: RationalPolynomial,
        alphas: Vec<MultiIndex>,
        center: Vec<Scalar>,
        jet_values: Vec<Scalar>,
    ) -> Result<Self, SeriesError> {
        let top = alphas
            .last()
            .cloned()
            .ok_or_else(|| SeriesError::Malformed("no derivative indices".into()))?;
        if let Some(a) = alphas.iter().find(|a| a.arity() != coords) {
            return Err(SeriesError::Malformed(format!(
                "index {a} does not have arity {coords}"
            )));
        }
        if alphas.windows(2).any(|w| w[0].cmp(&w[1]) != Ordering::Less) {
            return Err(SeriesError::UnsortedAlphas);
        }
        if center.len() != coords {
            return Err(SeriesError::Malformed(format!(
                "center has {} entries, expected {coords}",
                center.len()
            )));
        }
        if jet_values.len() != alphas.len() {
            return Err(SeriesError::Malformed(
                "one seed value per derivative index is required".into(),
            ));
        }
        for v in f.variables() {
            match &v {
                Variable::Coord(j) if *j < coords => {}
                Variable::Jet(a) if alphas.contains(a) => {}
                _ => return Err(SeriesError::Malformed(format!("unexpected variable {v} in f"))),
            }
        }
        let top_var = Variable::Jet(top.clone());
        if !f.depends_on(&top_var) {
            return Err(SeriesError::IndependentOfTop(top));
        }
        let problem = Self {
            coords,
            f,
            alphas,
            center,
            jet_values,
        };
        let at_seed = problem.eval_at_seed(&problem.f);
        if !at_seed.is_zero() {
            return Err(SeriesError::SeedNotOnZeroSet(at_seed));
        }
        if problem.eval_at_seed(&problem.f.partial(&top_var)).is_zero() {
            return Err(SeriesError::DegenerateSeed(top));
        }
        Ok(problem)
    }

    fn eval_at_seed(&self, p: &RationalPolynomial) -> Scalar {
        p.evaluate(|v| self.seed_value(v))
            .expect("variables validated against the seed")
    }

    fn seed_value(&self, v: &Variable) -> Option<Scalar> {
        match v {
            Variable::Coord(j) => self.center.get(*j).cloned(),
            Variable::Jet(a) => self
                .alphas
                .iter()
                .position(|b| b == a)
                .map(|i| self.jet_values[i].clone()),
        }
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn f(&self) -> &RationalPolynomial {
        &self.f
    }

    pub fn alphas(&self) -> &[MultiIndex] {
        &self.alphas
    }

    pub fn top(&self) -> &MultiIndex {
        self.alphas.last().expect("validated nonempty")
    }

    pub fn center(&self) -> &[Scalar] {
        &self.center
    }

    pub fn jet_values(&self) -> &[Scalar] {
        &self.jet_values
    }

    /// `max_i |α_i|`.
    pub fn max_order(&self) -> u32 {
        self.alphas.iter().map(MultiIndex::total).max().unwrap_or(0)
    }
}

/// A truncated solution `Σ_{|δ| ≤ N} a_δ s^δ` in the shifted variables `s = X − C`
/// (`Variable::Coord(j)` stands for `s_{j+1} = x_{j+1} − c_{j+1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub order: u32,
    pub center: Vec<Scalar>,
    pub shifted: RationalPolynomial,
}

impl SeriesTruncation {
    /// The same polynomial in the unshifted coordinates `X`.
    pub fn expanded(&self) -> RationalPolynomial {
        self.shifted.substitute(|v| match v {
            Variable::Coord(j) => {
                Some(&RationalPolynomial::coord(*j) - &RationalPolynomial::constant(self.center[*j].clone()))
            }
            Variable::Jet(_) => None,
        })
    }

    pub fn coefficient(&self, delta: &MultiIndex) -> Scalar {
        self.shifted.coefficient(&monomial_of(delta))
    }
}

fn monomial_of(delta: &MultiIndex) -> Monomial {
    Monomial::from_pairs(
        delta
            .entries()
            .iter()
            .enumerate()
            .map(|(j, &e)| (Variable::Coord(j), e)),
    )
}

#[derive(Debug, Clone)]
pub struct SeriesSession {
    problem: SeriesProblem,
    memo: HashMap<MultiIndex, Scalar>,
    derivatives: HashMap<MultiIndex, RationalPolynomial>,
    cached_monomials: usize,
    pivot: Scalar,
    budget: SeriesBudget,
}

enum Known {
    Value(Scalar),
    Recursive(MultiIndex),
}

impl SeriesSession {
    pub fn new(problem: SeriesProblem) -> Self {
        Self::with_budget(problem, SeriesBudget::default())
    }

    pub fn with_budget(problem: SeriesProblem, budget: SeriesBudget) -> Self {
        let top = Variable::Jet(problem.top().clone());
        let pivot = problem.eval_at_seed(&problem.f.partial(&top));
        let mut memo = HashMap::new();
        for (a, c) in problem.alphas.iter().zip(&problem.jet_values) {
            memo.insert(a.clone(), c / Scalar::from_integer(a.factorial().into()));
        }
        let mut derivatives = HashMap::new();
        let cached_monomials = problem.f.num_terms();
        derivatives.insert(MultiIndex::zero(problem.coords), problem.f.clone());
        Self {
            problem,
            memo,
            derivatives,
            cached_monomials,
            pivot,
            budget,
        }
    }

    pub fn problem(&self) -> &SeriesProblem {
        &self.problem
    }

    /// `∂f/∂t^{α_m}(C̄)`, the coefficient of the unknown in every recursion step.
    pub fn pivot(&self) -> &Scalar {
        &self.pivot
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn classify(&self, delta: &MultiIndex) -> Known {
        if let Some(v) = self.memo.get(delta) {
            return Known::Value(v.clone());
        }
        let top = self.problem.top();
        if delta < top {
            return Known::Value(Scalar::zero());
        }
        match delta.sub_checked(top).expect("arity checked") {
            Some(beta) => Known::Recursive(beta),
            None => Known::Value(Scalar::zero()),
        }
    }

    /// `D^β f`, cached by `β`.
    fn derivative(&mut self, beta: &MultiIndex) -> Result<RationalPolynomial, SeriesError> {
        if let Some(p) = self.derivatives.get(beta) {
            return Ok(p.clone());
        }
        let j = beta
            .entries()
            .iter()
            .position(|&e| e > 0)
            .expect("β = 0 is seeded in the cache");
        let lower = beta.lower(j).expect("β_j > 0");
        let p = self.derivative(&lower)?.total_derivative(j);
        self.cached_monomials += p.num_terms();
        if self.cached_monomials > self.budget.max_cache_monomials {
            return Err(SeriesError::Budget(format!(
                "derivative cache exceeds {} monomials",
                self.budget.max_cache_monomials
            )));
        }
        self.derivatives.insert(beta.clone(), p.clone());
        Ok(p)
    }

    fn known_jet(&self, gamma: &MultiIndex) -> Option<Scalar> {
        match self.classify(gamma) {
            Known::Value(a) => Some(a * Scalar::from_integer(gamma.factorial().into())),
            Known::Recursive(_) => None,
        }
    }

    /// `a_δ`.
    pub fn coefficient(&mut self, delta: &MultiIndex) -> Result<Scalar, SeriesError> {
        if delta.arity() != self.problem.coords {
            return Err(SeriesError::Malformed(format!(
                "index {delta} does not have arity {}",
                self.problem.coords
            )));
        }
        if let Known::Value(v) = self.classify(delta) {
            return Ok(v);
        }
        let mut stack = vec![delta.clone()];
        while let Some(current) = stack.last().cloned() {
            let beta = match self.classify(&current) {
                Known::Value(_) => {
                    stack.pop();
                    continue;
                }
                Known::Recursive(beta) => beta,
            };
            let p = self.derivative(&beta)?;
            let unknown = Variable::Jet(current.clone());
            let missing: Vec<MultiIndex> = p
                .jet_indices()
                .into_iter()
                .filter(|g| *g != current && self.known_jet(g).is_none())
                .collect();
            if !missing.is_empty() {
                stack.extend(missing);
                if stack.len() > self.budget.max_depth {
                    return Err(SeriesError::Budget(format!(
                        "recursion depth exceeds {}",
                        self.budget.max_depth
                    )));
                }
                continue;
            }
            let parts = p.coefficients_in(&unknown);
            if parts.len() != 2 {
                return Err(SeriesError::Inconsistent(format!(
                    "D^{beta} f has degree {} in u{current}",
                    parts.len() - 1
                )));
            }
            let center = &self.problem.center;
            let value = |v: &Variable| match v {
                Variable::Coord(j) => center.get(*j).cloned(),
                Variable::Jet(g) => self.known_jet(g),
            };
            let lead = parts[1]
                .evaluate(value)
                .map_err(|e| SeriesError::Inconsistent(e.to_string()))?;
            if lead != self.pivot {
                return Err(SeriesError::Inconsistent(format!(
                    "coefficient of u{current} is {lead}, expected {}",
                    self.pivot
                )));
            }
            let rest = parts[0]
                .evaluate(value)
                .map_err(|e| SeriesError::Inconsistent(e.to_string()))?;
            let jet = -rest / &lead;
            let a = jet / Scalar::from_integer(current.factorial().into());
            if self.memo.len() >= self.budget.max_memo {
                return Err(SeriesError::Budget(format!(
                    "more than {} memoised coefficients",
                    self.budget.max_memo
                )));
            }
            self.memo.insert(current, a);
            stack.pop();
        }
        match self.classify(delta) {
            Known::Value(v) => Ok(v),
            Known::Recursive(_) => unreachable!("target solved above"),
        }
    }

    pub fn truncate(&mut self, order: u32) -> Result<SeriesTruncation, SeriesError> {
        let mut terms = Vec::new();
        for delta in MultiIndex::up_to_degree(self.problem.coords, order) {
            let a = self.coefficient(&delta)?;
            terms.push((monomial_of(&delta), a));
        }
        Ok(SeriesTruncation {
            order,
            center: self.problem.center.clone(),
            shifted: RationalPolynomial::from_terms(terms),
        })
    }

    /// Terms of total degree `≤ order − max|α_i|` of `f(x, ∂^α T_order)` in `s = X − C`.
    pub fn residual(&mut self, order: u32) -> Result<RationalPolynomial, SeriesError> {
        let k = order.checked_sub(self.problem.max_order()).ok_or_else(|| {
            SeriesError::Malformed(format!(
                "order {order} below the highest derivative order {}",
                self.problem.max_order()
            ))
        })?;
        let t = self.truncate(order)?;
        Ok(substitute_series(&self.problem, &t.shifted, k))
    }

    pub fn residual_check(&mut self, order: u32) -> Result<bool, SeriesError> {
        Ok(self.residual(order)?.is_zero())
    }

    /// Overwrites a memoised coefficient. Only meant for fault-injection tests.
    #[doc(hidden)]
    pub fn inject_coefficient(&mut self, delta: MultiIndex, value: Scalar) {
        self.memo.insert(delta, value);
    }
}

/// `f(s + C, ∂^α T)` with all terms above total degree `max_degree` dropped.
pub fn substitute_series(problem: &SeriesProblem, shifted: &RationalPolynomial, max_degree: u32) -> RationalPolynomial {
    let mut images: HashMap<Variable, RationalPolynomial> = HashMap::new();
    for j in 0..problem.coords {
        images.insert(
            Variable::Coord(j),
            &RationalPolynomial::coord(j) + &RationalPolynomial::constant(problem.center[j].clone()),
        );
    }
    for a in &problem.alphas {
        images.insert(Variable::Jet(a.clone()), shifted.partial_multi(a).truncate(max_degree));
    }
    let mut out = RationalPolynomial::zero();
    for (m, c) in problem.f.terms() {
        let mut term = RationalPolynomial::constant(c.clone());
        for (v, e) in m.factors() {
            for _ in 0..*e {
                term = term.mul_truncated(&images[v], max_degree);
            }
        }
        out = out + term;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }
    fn jet(v: &[u32]) -> RationalPolynomial {
        RationalPolynomial::jet(mi(v))
    }
    fn c(n: i64) -> RationalPolynomial {
        RationalPolynomial::constant(int(n))
    }

    fn exp_problem() -> SeriesProblem {
        SeriesProblem::new(
            1,
            &jet(&[1]) - &jet(&[0]),
            vec![mi(&[0]), mi(&[1])],
            vec![int(0)],
            vec![int(1), int(1)],
        )
        .unwrap()
    }

    fn sqrt_problem() -> SeriesProblem {
        let f = &(&jet(&[0]).pow(2) - &c(1)) - &RationalPolynomial::coord(0);
        SeriesProblem::new(1, f, vec![mi(&[0])], vec![int(0)], vec![int(1)]).unwrap()
    }

    #[test]
    fn construction_checks_hypotheses() {
        exp_problem();
        sqrt_problem();
        let bad = SeriesProblem::new(
            1,
            &jet(&[1]) - &jet(&[0]),
            vec![mi(&[0]), mi(&[1])],
            vec![int(0)],
            vec![int(1), int(2)],
        );
        assert_eq!(bad, Err(SeriesError::SeedNotOnZeroSet(int(1))));
        let degenerate = SeriesProblem::new(
            1,
            &jet(&[0]).pow(2) - &RationalPolynomial::coord(0),
            vec![mi(&[0])],
            vec![int(0)],
            vec![int(0)],
        );
        assert_eq!(degenerate, Err(SeriesError::DegenerateSeed(mi(&[0]))));
        let unsorted = SeriesProblem::new(
            1,
            &jet(&[1]) - &jet(&[0]),
            vec![mi(&[1]), mi(&[0])],
            vec![int(0)],
            vec![int(1), int(1)],
        );
        assert_eq!(unsorted, Err(SeriesError::UnsortedAlphas));
        let independent = SeriesProblem::new(
            1,
            jet(&[0]),
            vec![mi(&[0]), mi(&[1])],
            vec![int(0)],
            vec![int(0), int(0)],
        );
        assert_eq!(independent, Err(SeriesError::IndependentOfTop(mi(&[1]))));
    }

    #[test]
    fn exp_coefficients() {
        let mut s = SeriesSession::new(exp_problem());
        let mut expected = Scalar::from_integer(1.into());
        for k in 0..=12u32 {
            if k > 0 {
                expected /= Scalar::from_integer(k.into());
            }
            assert_eq!(s.coefficient(&mi(&[k])).unwrap(), expected, "k = {k}");
        }
        let t = s.truncate(3).unwrap();
        assert_eq!(t.shifted.to_string(), "1/6*x1^3 + 1/2*x1^2 + x1 + 1");
        assert!(s.residual_check(10).unwrap());
    }

    #[test]
    fn sqrt_coefficients() {
        let mut s = SeriesSession::new(sqrt_problem());
        let expected = [int(1), ratio(1, 2), ratio(-1, 8), ratio(1, 16), ratio(-5, 128)];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(&s.coefficient(&mi(&[k as u32])).unwrap(), e);
        }
        assert!(s.residual_check(8).unwrap());
    }

    #[test]
    fn linear_problem_gives_y() {
        let p = SeriesProblem::new(
            2,
            &jet(&[0, 1]) - &c(1),
            vec![mi(&[0, 1])],
            vec![int(0), int(0)],
            vec![int(1)],
        )
        .unwrap();
        let mut s = SeriesSession::new(p);
        assert_eq!(s.coefficient(&mi(&[0, 1])).unwrap(), int(1));
        for d in MultiIndex::up_to_degree(2, 4) {
            if d != mi(&[0, 1]) {
                assert!(s.coefficient(&d).unwrap().is_zero(), "{d}");
            }
        }
        assert_eq!(s.truncate(5).unwrap().shifted, RationalPolynomial::coord(1));
    }

    #[test]
    fn heat_like_problem() {
        let f = &jet(&[1, 0]) - &jet(&[0, 2]);
        let p = SeriesProblem::new(
            2,
            f,
            vec![mi(&[0, 2]), mi(&[1, 0])],
            vec![int(0), int(0)],
            vec![int(1), int(1)],
        )
        .unwrap();
        let mut s = SeriesSession::new(p);
        let t = s.truncate(3).unwrap();
        let expected = &RationalPolynomial::coord(0) + &RationalPolynomial::coord(1).pow(2).scale(&ratio(1, 2));
        assert_eq!(t.shifted, expected);
        assert!(s.residual_check(3).unwrap());
    }

    #[test]
    fn corrupted_memo_fails_residual() {
        let mut s = SeriesSession::new(exp_problem());
        s.truncate(6).unwrap();
        s.inject_coefficient(mi(&[3]), int(5));
        assert!(!s.residual_check(6).unwrap());
    }

    #[test]
    fn sessions_are_deterministic_and_monotone() {
        let mut a = SeriesSession::new(sqrt_problem());
        let mut b = SeriesSession::new(sqrt_problem());
        let ta = a.truncate(8).unwrap();
        // Query b in a different order first.
        b.coefficient(&mi(&[8])).unwrap();
        assert_eq!(ta, b.truncate(8).unwrap());
        let t7 = a.truncate(7).unwrap();
        assert_eq!(ta.shifted.truncate(7), t7.shifted);
    }

    #[test]
    fn b0_is_seed_value() {
        let mut s = SeriesSession::new(sqrt_problem());
        let r = s.residual(1).unwrap();
        assert!(r.constant_term().is_zero());
    }

    #[test]
    fn nonzero_center() {
        // T² = x around x = 4, T(4) = 2: sqrt(4 + s) = 2 + s/4 − s²/64 + …
        let f = &jet(&[0]).pow(2) - &RationalPolynomial::coord(0);
        let p = SeriesProblem::new(1, f, vec![mi(&[0])], vec![int(4)], vec![int(2)]).unwrap();
        let mut s = SeriesSession::new(p);
        assert_eq!(s.coefficient(&mi(&[1])).unwrap(), ratio(1, 4));
        assert_eq!(s.coefficient(&mi(&[2])).unwrap(), ratio(-1, 64));
        assert!(s.residual_check(6).unwrap());
        let t = s.truncate(1).unwrap();
        assert_eq!(t.expanded(), &RationalPolynomial::coord(0).scale(&ratio(1, 4)) + &c(1));
    }

    #[test]
    fn lower_order_with_higher_degree() {
        // α_1 = (0,3) ≺ α_2 = (1,0): required indices exceed the target's total degree.
        let f = &(&jet(&[1, 0]) - &jet(&[0, 3])) - &RationalPolynomial::coord(1);
        let p = SeriesProblem::new(
            2,
            f,
            vec![mi(&[0, 3]), mi(&[1, 0])],
            vec![int(0), int(0)],
            vec![int(2), int(2)],
        )
        .unwrap();
        let mut s = SeriesSession::new(p);
        assert!(s.residual_check(7).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let budget = SeriesBudget {
            max_memo: 3,
            ..SeriesBudget::default()
        };
        let mut s = SeriesSession::with_budget(exp_problem(), budget);
        assert!(matches!(s.truncate(10), Err(SeriesError::Budget(_))));
    }
}
