//! Sparse multivariate polynomials over the rationals.
//!
//! Variables come in two kinds: coordinates (`x_1, y_1, …` or `x_1, …, x_n`, addressed by
//! index) and jet symbols `u_α` standing for `∂^α` of a single unknown function. The
//! total derivative `D_j` acts on both kinds, which is what turns a differential
//! equation into an algebraic one.
//!
//! Monomials are stored sparsely as sorted `(variable, exponent)` lists, so new jet
//! symbols may appear freely (total derivatives introduce them) without rebuilding a
//! ring context. Terms are kept in graded-lex order: coordinates before jets, jets by
//! lex order on their multi-index.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::multiindex::MultiIndex;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(String),
    #[error("coefficients too large for rational root search")]
    CoefficientsTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Coord(usize),
    Jet(MultiIndex),
}

impl Variable {
    pub fn jet(entries: &[u32]) -> Self {
        Variable::Jet(MultiIndex::new(entries.to_vec()))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Coord(i) => write!(f, "x{}", i + 1),
            Variable::Jet(a) => write!(f, "u{a}"),
        }
    }
}

/// How coordinate indices are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoordNames {
    /// `x1, x2, …`
    #[default]
    Indexed,
    /// `x1, y1, x2, y2, …` (coordinates of `PS_n`).
    Symplectic,
    /// `x, y` for the plane, falling back to indexed names beyond two.
    Plane,
}

impl CoordNames {
    pub fn name(self, v: &Variable) -> String {
        match (self, v) {
            (_, Variable::Jet(a)) => format!("u{a}"),
            (CoordNames::Indexed, Variable::Coord(i)) => format!("x{}", i + 1),
            (CoordNames::Symplectic, Variable::Coord(i)) => {
                format!("{}{}", if i % 2 == 0 { 'x' } else { 'y' }, i / 2 + 1)
            }
            (CoordNames::Plane, Variable::Coord(0)) => "x".into(),
            (CoordNames::Plane, Variable::Coord(1)) => "y".into(),
            (CoordNames::Plane, Variable::Coord(i)) => format!("x{}", i + 1),
        }
    }
}

/// A power product; exponents are positive and variables strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: Variable, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Self(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v).or_insert(0) += e;
        }
        Self(m.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    /// Lowers the exponent of `v` by one; returns the old exponent (0 if absent).
    fn lower(&self, v: &Variable) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|(w, _)| w == v)?;
        let mut out = self.0.clone();
        let e = out[pos].1;
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Self(out)))
    }

    fn without(&self, v: &Variable) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, k)| {
                if w == v {
                    e = *k;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (e, Self(rest))
    }
}

impl Ord for Monomial {
    /// Graded lex: total degree first, then the exponent of the earliest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(&other.0) {
                if x.0 != y.0 {
                    return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v, 1), Scalar::one())
    }

    pub fn coord(i: usize) -> Self {
        Self::var(Variable::Coord(i))
    }

    pub fn jet(alpha: MultiIndex) -> Self {
        Self::var(Variable::Jet(alpha))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    /// The scalar value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: &Variable) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn jet_indices(&self) -> BTreeSet<MultiIndex> {
        self.variables()
            .into_iter()
            .filter_map(|v| match v {
                Variable::Jet(a) => Some(a),
                Variable::Coord(_) => None,
            })
            .collect()
    }

    pub fn depends_on(&self, v: &Variable) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, k)| (n.mul(m), k * c)))
    }

    /// Product with all terms of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > max_degree {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() <= max_degree {
                    out.add_term(m1.mul(m2), c1 * c2);
                }
            }
        }
        out
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest-degree homogeneous component.
    pub fn leading_form(&self) -> Self {
        match self.total_degree() {
            Some(d) => self.homogeneous_part(d),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial(&self, v: &Variable) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c * Scalar::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Iterated coordinate partial `∂^α`.
    pub fn partial_multi(&self, alpha: &MultiIndex) -> Self {
        let mut p = self.clone();
        for (j, &e) in alpha.entries().iter().enumerate() {
            for _ in 0..e {
                p = p.partial(&Variable::Coord(j));
            }
        }
        p
    }

    /// Total derivative `D_j p = ∂p/∂x_j + Σ_α (∂p/∂u_α) u_{α+e_j}`.
    pub fn total_derivative(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (v, e) in m.factors() {
                let Some((_, rest)) = m.lower(v) else { continue };
                let k = c * Scalar::from_integer(BigInt::from(*e));
                match v {
                    Variable::Coord(i) if *i == j => out.add_term(rest, k),
                    Variable::Coord(_) => {}
                    Variable::Jet(alpha) => {
                        let shifted = Monomial::var(Variable::Jet(alpha.bump(j)), 1);
                        out.add_term(rest.mul(&shifted), k);
                    }
                }
            }
        }
        out
    }

    pub fn evaluate<F>(&self, value: F) -> Result<Scalar, PolyError>
    where
        F: Fn(&Variable) -> Option<Scalar>,
    {
        let mut cache: HashMap<&Variable, Scalar> = HashMap::new();
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = match cache.get(v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or_else(|| PolyError::MissingAssignment(v.to_string()))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t *= num_traits::pow(x, *e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn evaluate_map(&self, values: &HashMap<Variable, Scalar>) -> Result<Scalar, PolyError> {
        self.evaluate(|v| values.get(v).cloned())
    }

    /// Replaces the variables for which `value` returns `Some` by that scalar.
    pub fn partial_evaluate<F>(&self, value: F) -> Self
    where
        F: Fn(&Variable) -> Option<Scalar>,
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut k = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.factors() {
                match value(v) {
                    Some(x) => k *= num_traits::pow(x, *e as usize),
                    None => rest.push((v.clone(), *e)),
                }
            }
            out.add_term(Monomial(rest), k);
        }
        out
    }

    /// Composition: each variable with an image is replaced by it, others are kept.
    pub fn substitute<F>(&self, image: F) -> Self
    where
        F: Fn(&Variable) -> Option<RationalPolynomial>,
    {
        let mut powers: HashMap<(Variable, u32), RationalPolynomial> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            let mut kept = Vec::new();
            for (v, e) in m.factors() {
                match image(v) {
                    Some(p) => {
                        let key = (v.clone(), *e);
                        let pe = powers.entry(key).or_insert_with(|| p.pow(*e)).clone();
                        term = &term * &pe;
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            if !kept.is_empty() {
                term = term.mul_monomial(&Monomial(kept), &Scalar::one());
            }
            out = out + term;
        }
        out
    }

    /// Writes `self = Σ_k c_k · v^k` and returns `[c_0, c_1, …]`.
    pub fn coefficients_in(&self, v: &Variable) -> Vec<RationalPolynomial> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Dense coefficients `[c_0, …, c_d]` of a polynomial in `v` alone.
    pub fn univariate_coefficients(&self, v: &Variable) -> Result<Vec<Scalar>, PolyError> {
        self.coefficients_in(v)
            .into_iter()
            .map(|c| c.as_constant().ok_or_else(|| PolyError::NotUnivariate(v.to_string())))
            .collect()
    }

    /// All distinct rational roots of a nonzero univariate polynomial.
    ///
    /// Roots are listed by increasing absolute value, positive before negative.
    pub fn rational_roots(&self) -> Result<Vec<Scalar>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let vars = self.variables();
        let coeffs = match vars.len() {
            0 => return Ok(Vec::new()),
            1 => self.univariate_coefficients(vars.iter().next().unwrap())?,
            _ => {
                return Err(PolyError::NotUnivariate(
                    vars.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                ))
            }
        };
        rational_roots_dense(&coeffs)
    }

    pub fn display_with(&self, names: CoordNames) -> String {
        self.render(&|v| names.name(v))
    }

    pub fn render(&self, name: &dyn Fn(&Variable) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let factors: Vec<String> = m
                .factors()
                .iter()
                .map(|(v, e)| if *e == 1 { name(v) } else { format!("{}^{e}", name(v)) })
                .collect();
            if factors.is_empty() {
                out.push_str(&scalar::render(&abs));
            } else {
                if !scalar::is_one_abs(&abs) {
                    out.push_str(&scalar::render(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(CoordNames::Indexed))
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, PolyError> {
    let n = n.abs().to_u64().ok_or(PolyError::CoefficientsTooLarge)?;
    if n > 1 << 48 {
        return Err(PolyError::CoefficientsTooLarge);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn horner(coeffs: &[BigInt], x: &Scalar) -> Scalar {
    coeffs
        .iter()
        .rev()
        .fold(Scalar::zero(), |acc, c| acc * x + Scalar::from_integer(c.clone()))
}

/// Rational root theorem on the primitive integer form of `Σ c_k t^k`.
pub fn rational_roots_dense(coeffs: &[Scalar]) -> Result<Vec<Scalar>, PolyError> {
    let mut coeffs: Vec<Scalar> = coeffs.to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let reduced = &ints[low..];
    if reduced.len() > 1 {
        let ps = divisors(&reduced[0])?;
        let qs = divisors(reduced.last().unwrap())?;
        let mut candidates = BTreeSet::new();
        for p in &ps {
            for q in &qs {
                let r = Scalar::new(p.clone(), q.clone());
                candidates.insert(r.clone());
                candidates.insert(-r);
            }
        }
        for r in candidates {
            if horner(reduced, &r).is_zero() {
                roots.push(r);
            }
        }
    }
    roots.sort_by(|a, b| {
        a.abs()
            .cmp(&b.abs())
            .then_with(|| b.is_positive().cmp(&a.is_positive()))
    });
    Ok(roots)
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(mut self, rhs: Self) -> RationalPolynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        &self - &rhs
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        -&self
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        let mut out = RationalPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        &self * &rhs
    }
}

impl From<Scalar> for RationalPolynomial {
    fn from(c: Scalar) -> Self {
        Self::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    fn x() -> RationalPolynomial {
        RationalPolynomial::coord(0)
    }
    fn y() -> RationalPolynomial {
        RationalPolynomial::coord(1)
    }
    fn u(a: &[u32]) -> RationalPolynomial {
        RationalPolynomial::jet(MultiIndex::new(a.to_vec()))
    }
    fn c(n: i64) -> RationalPolynomial {
        RationalPolynomial::constant(int(n))
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&(&x() + &y()) * &(&x() - &y()), &x().pow(2) - &y().pow(2));
        assert_eq!(&x() + &RationalPolynomial::zero(), x());
        assert_eq!((x().scale(&int(2))).scale(&ratio(1, 2)), x());
        assert!((&x() - &x()).is_zero());
    }

    #[test]
    fn partial_examples() {
        let vx = Variable::Coord(0);
        let vy = Variable::Coord(1);
        assert_eq!((&x().pow(2) * &y()).partial(&vx), (&x() * &y()).scale(&int(2)));
        assert!(x().partial(&vy).is_zero());
        assert_eq!((&x() * &y()).partial(&vx).partial(&vy), c(1));
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(u(&[0, 0]).total_derivative(0), u(&[1, 0]));
        assert_eq!(
            (&x() * &u(&[0, 0])).total_derivative(0),
            &u(&[0, 0]) + &(&x() * &u(&[1, 0]))
        );
        assert_eq!(
            u(&[1, 0]).pow(2).total_derivative(1),
            (&u(&[1, 0]) * &u(&[1, 1])).scale(&int(2))
        );
    }

    #[test]
    fn evaluate_examples() {
        let p = &x().pow(2) - &c(1);
        assert_eq!(p.evaluate(|_| Some(int(3))).unwrap(), int(8));
        let e = &u(&[1]) - &u(&[0]);
        assert_eq!(e.evaluate(|_| Some(int(1))).unwrap(), int(0));
        let t = RationalPolynomial::jet(MultiIndex::new(vec![0]));
        let q = &(&t.pow(2) - &c(1)) - &x();
        let val = q
            .evaluate(|v| match v {
                Variable::Coord(0) => Some(int(0)),
                _ => Some(int(1)),
            })
            .unwrap();
        assert_eq!(val, int(0));
        assert!(matches!(x().evaluate(|_| None), Err(PolyError::MissingAssignment(_))));
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!((&x().pow(2) - &c(4)).rational_roots().unwrap(), vec![int(2), int(-2)]);
        assert!((&x().pow(2) - &c(2)).rational_roots().unwrap().is_empty());
        assert_eq!(
            (&x().scale(&int(2)) - &c(3)).rational_roots().unwrap(),
            vec![ratio(3, 2)]
        );
        assert_eq!(
            RationalPolynomial::zero().rational_roots(),
            Err(PolyError::ZeroPolynomial)
        );
        assert!(matches!(
            (&x() * &y()).rational_roots(),
            Err(PolyError::NotUnivariate(_))
        ));
        // Zero roots and rational coefficients.
        let p = &(&x().pow(3) - &x().pow(2).scale(&ratio(1, 2))) + &RationalPolynomial::zero();
        assert_eq!(p.rational_roots().unwrap(), vec![int(0), ratio(1, 2)]);
    }

    #[test]
    fn rendering() {
        let p = &(&x() * &y()).scale(&int(2)) - &u(&[1, 0]).scale(&ratio(1, 2));
        assert_eq!(p.to_string(), "2*x1*x2 - 1/2*u(1,0)");
        assert_eq!(p.display_with(CoordNames::Symplectic), "2*x1*y1 - 1/2*u(1,0)");
        assert_eq!((&x().pow(2) - &c(1)).display_with(CoordNames::Plane), "x^2 - 1");
        assert_eq!(RationalPolynomial::zero().to_string(), "0");
        assert_eq!((-&x()).to_string(), "-x1");
    }

    #[test]
    fn substitution() {
        let p = &x() * &y();
        let q = p.substitute(|v| match v {
            Variable::Coord(1) => Some(&y() + &x().pow(2)),
            _ => None,
        });
        assert_eq!(q, &(&x() * &y()) + &x().pow(3));
    }

    fn arb_poly(jets: bool) -> impl Strategy<Value = RationalPolynomial> {
        let var = if jets {
            prop_oneof![
                (0usize..2).prop_map(Variable::Coord),
                (0u32..2, 0u32..2).prop_map(|(a, b)| Variable::jet(&[a, b])),
            ]
            .boxed()
        } else {
            (0usize..3).prop_map(Variable::Coord).boxed()
        };
        let term = (prop::collection::vec((var, 1u32..3), 0..3), -4i64..5)
            .prop_map(|(fs, c)| (Monomial::from_pairs(fs), int(c)));
        prop::collection::vec(term, 0..5).prop_map(RationalPolynomial::from_terms)
    }

    proptest! {
        #[test]
        fn partials_commute(p in arb_poly(false)) {
            let (vx, vy) = (Variable::Coord(0), Variable::Coord(1));
            prop_assert_eq!(p.partial(&vx).partial(&vy), p.partial(&vy).partial(&vx));
        }

        #[test]
        fn total_derivatives_commute(p in arb_poly(true)) {
            prop_assert_eq!(p.total_derivative(0).total_derivative(1), p.total_derivative(1).total_derivative(0));
        }

        #[test]
        fn total_derivative_leibniz(p in arb_poly(true), q in arb_poly(true)) {
            for j in 0..2 {
                let lhs = (&p * &q).total_derivative(j);
                let rhs = &(&p.total_derivative(j) * &q) + &(&p * &q.total_derivative(j));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn evaluate_is_ring_hom(p in arb_poly(true), q in arb_poly(true), seed in prop::collection::vec(-3i64..4, 8)) {
            let val = |v: &Variable| -> Option<Scalar> {
                let k = match v {
                    Variable::Coord(i) => *i,
                    Variable::Jet(a) => 2 + 2 * a.get(0) as usize + a.get(1) as usize,
                };
                Some(int(seed[k % seed.len()]))
            };
            let pq = (&p * &q).evaluate(val).unwrap();
            prop_assert_eq!(pq, p.evaluate(val).unwrap() * q.evaluate(val).unwrap());
            let s = (&p + &q).evaluate(val).unwrap();
            prop_assert_eq!(s, p.evaluate(val).unwrap() + q.evaluate(val).unwrap());
        }

        #[test]
        fn roots_are_sound_and_complete(rs in prop::collection::vec((-6i64..7, 1i64..4), 1..4), extra in 0i64..3) {
            // (q t - p) factors plus an irreducible quadratic t^2 + extra + 1.
            let t = RationalPolynomial::coord(0);
            let mut poly = &t.pow(2) + &c(extra + 1);
            for (p, q) in &rs {
                poly = &poly * &(&t.scale(&int(*q)) - &c(*p));
            }
            let roots = poly.rational_roots().unwrap();
            for r in &roots {
                prop_assert!(poly.evaluate(|_| Some(r.clone())).unwrap().is_zero());
            }
            let expected: BTreeSet<Scalar> = rs.iter().map(|(p, q)| ratio(*p, *q)).collect();
            let got: BTreeSet<Scalar> = roots.into_iter().collect();
            prop_assert_eq!(&got, &expected);
            // Brute-force scan of small fractions finds nothing else.
            let mut scanned = BTreeSet::new();
            for num in -12i64..=12 {
                for den in 1i64..=6 {
                    let r = ratio(num, den);
                    if poly.evaluate(|_| Some(r.clone())).unwrap().is_zero() {
                        scanned.insert(r);
                    }
                }
            }
            prop_assert_eq!(scanned, got);
        }
    }
}
