//! Dense-exponent polynomials in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pf_core::automorphisms::{Axis, ElementaryMove, PolyEndo};
use pf_core::polyring::{RationalPolynomial, Variable};

use crate::OracleError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, BigRational::one()), |acc, _| acc.mul(self))
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * BigRational::from_integer(BigInt::from(e[i])));
            }
        }
        out
    }

    pub fn partial_multi(&self, alpha: &[u32]) -> Self {
        let mut p = self.clone();
        for (i, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                p = p.partial(i);
            }
        }
        p
    }

    /// Replaces variable `i` by `images[i]`.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Self::zero(nv);
        for (e, c) in &self.terms {
            let mut t = Self::constant(nv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                t = t.mul(&images[i].pow(k));
            }
            out = out.add(&t);
        }
        out
    }

    /// Terms of total degree `≤ d`.
    pub fn low_part(&self, d: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() <= d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Reads a production polynomial in `Coord(0..nvars)`.
    pub fn from_production(p: &RationalPolynomial, nvars: usize) -> Result<Self, OracleError> {
        let mut out = Self::zero(nvars);
        for (m, c) in p.terms() {
            let mut e = vec![0; nvars];
            for (v, k) in m.factors() {
                match v {
                    Variable::Coord(i) if *i < nvars => e[*i] += k,
                    other => return Err(OracleError::Unsupported(format!("variable {other}"))),
                }
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| format!("v{i}^{k}"))
                    .collect();
                format!("{c}*{}", vars.join("*"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A plane map as a pair of bivariate polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap(pub MPoly, pub MPoly);

impl fmt::Display for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl PlaneMap {
    pub fn identity() -> Self {
        Self(MPoly::var(2, 0), MPoly::var(2, 1))
    }

    pub fn from_endo(e: &PolyEndo) -> Result<Self, OracleError> {
        Ok(Self(MPoly::from_production(&e.f, 2)?, MPoly::from_production(&e.g, 2)?))
    }

    /// The point map `self ∘ inner`.
    pub fn after(&self, inner: &Self) -> Self {
        let images = [inner.0.clone(), inner.1.clone()];
        Self(self.0.compose(&images), self.1.compose(&images))
    }

    pub fn from_move(m: &ElementaryMove) -> Result<Self, OracleError> {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        Ok(match m {
            ElementaryMove::Affine { matrix, translation } => {
                let row = |r: usize| {
                    x.scale(&matrix[r][0])
                        .add(&y.scale(&matrix[r][1]))
                        .add(&MPoly::constant(2, translation[r].clone()))
                };
                Self(row(0), row(1))
            }
            ElementaryMove::Triangular { variable, added } => {
                let p = MPoly::from_production(added, 2)?;
                match variable {
                    Axis::X => Self(x.add(&p), y),
                    Axis::Y => Self(x, y.add(&p)),
                }
            }
        })
    }
}

/// `m_1 ∘ … ∘ m_k` computed with the oracle's own arithmetic.
pub fn compose_moves(moves: &[ElementaryMove]) -> Result<PlaneMap, OracleError> {
    let mut acc = PlaneMap::identity();
    for m in moves.iter().rev() {
        acc = PlaneMap::from_move(m)?.after(&acc);
    }
    Ok(acc)
}
