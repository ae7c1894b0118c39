//! From syntax trees to algebra elements.

use pf_core::freepoisson::{customary_monomial, standard_customary, PoissonElement};
use pf_core::multiindex::MultiIndex;
use pf_core::polyring::RationalPolynomial;
use pf_core::scalar::Scalar;
use pf_core::symplectic::SymplecticElement;
use thiserror::Error;

use crate::expr::{Expr, Ident};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error("unknown identifier '{ident}' in {target}")]
    UnknownIdentifier { ident: String, target: String },
    #[error("brackets are not available in {0}")]
    NoBracket(String),
    #[error("{0}")]
    Algebra(String),
}

/// The arithmetic an expression is interpreted in.
pub trait Algebra {
    type Elem: Clone;

    fn describe(&self) -> String;
    fn constant(&self, c: Scalar) -> Self::Elem;
    fn ident(&self, id: &Ident) -> Result<Self::Elem, ElabError>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ElabError>;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ElabError>;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ElabError>;

    fn unknown(&self, id: &Ident) -> ElabError {
        ElabError::UnknownIdentifier {
            ident: id.to_string(),
            target: self.describe(),
        }
    }
}

pub const MAX_EXPONENT: u32 = 4096;

pub fn elaborate<A: Algebra>(alg: &A, e: &Expr) -> Result<A::Elem, ElabError> {
    Ok(match e {
        Expr::Num(q) => alg.constant(q.clone()),
        Expr::Var(v) => alg.ident(v)?,
        Expr::Add(a, b) => alg.add(&elaborate(alg, a)?, &elaborate(alg, b)?)?,
        Expr::Sub(a, b) => alg.add(&elaborate(alg, a)?, &alg.neg(&elaborate(alg, b)?))?,
        Expr::Mul(a, b) => alg.mul(&elaborate(alg, a)?, &elaborate(alg, b)?)?,
        Expr::Neg(a) => alg.neg(&elaborate(alg, a)?),
        Expr::Pow(_, k) if *k > MAX_EXPONENT => {
            return Err(ElabError::Algebra(format!(
                "exponent {k} exceeds the limit {MAX_EXPONENT}"
            )))
        }
        Expr::Pow(a, k) => {
            let base = elaborate(alg, a)?;
            let mut acc = alg.constant(Scalar::from_integer(1.into()));
            for _ in 0..*k {
                acc = alg.mul(&acc, &base)?;
            }
            acc
        }
        Expr::Bracket(a, b) => alg.bracket(&elaborate(alg, a)?, &elaborate(alg, b)?)?,
    })
}

fn algebra_error(e: impl std::fmt::Display) -> ElabError {
    ElabError::Algebra(e.to_string())
}

/// `k{z_1, …, z_m}`; `x`, `y` name `z_1`, `z_2`.
#[derive(Debug, Clone, Copy)]
pub struct FreePoissonAlg {
    pub rank: usize,
}

impl FreePoissonAlg {
    /// The smallest rank covering every generator and built-in in `e`.
    pub fn infer_rank(e: &Expr) -> usize {
        e.idents()
            .iter()
            .map(|id| match id {
                Ident::X => 1,
                Ident::Y => 2,
                Ident::Z(i) => i + 1,
                Ident::St4 => 4,
                Ident::St6 => 6,
                Ident::CustomaryMonomial(n) => 2 * n,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

impl Algebra for FreePoissonAlg {
    type Elem = PoissonElement;

    fn describe(&self) -> String {
        format!("free-poisson({})", self.rank)
    }
    fn constant(&self, c: Scalar) -> PoissonElement {
        PoissonElement::constant(self.rank, c)
    }
    fn ident(&self, id: &Ident) -> Result<PoissonElement, ElabError> {
        let generator = |i: usize| PoissonElement::generator(self.rank, i).map_err(|_| self.unknown(id));
        let builtin = |e: PoissonElement| {
            if e.rank() <= self.rank {
                let terms = e.terms().map(|(m, c)| (m.clone(), c.clone()));
                PoissonElement::from_terms(self.rank, terms).map_err(algebra_error)
            } else {
                Err(ElabError::Algebra(format!(
                    "{id} lives in free-poisson({}), not {}",
                    e.rank(),
                    self.describe()
                )))
            }
        };
        match id {
            Ident::X => generator(0),
            Ident::Y => generator(1),
            Ident::Z(i) => generator(*i),
            Ident::St4 => builtin(standard_customary(1)),
            Ident::St6 => builtin(standard_customary(2)),
            Ident::CustomaryMonomial(n) => builtin(customary_monomial(*n)),
            _ => Err(self.unknown(id)),
        }
    }
    fn add(&self, a: &PoissonElement, b: &PoissonElement) -> Result<PoissonElement, ElabError> {
        a.add(b).map_err(algebra_error)
    }
    fn neg(&self, a: &PoissonElement) -> PoissonElement {
        a.neg()
    }
    fn mul(&self, a: &PoissonElement, b: &PoissonElement) -> Result<PoissonElement, ElabError> {
        a.product(b).map_err(algebra_error)
    }
    fn bracket(&self, a: &PoissonElement, b: &PoissonElement) -> Result<PoissonElement, ElabError> {
        a.bracket(b).map_err(algebra_error)
    }
}

/// `PS_n`; `x`, `y` name `x_1`, `y_1`.
#[derive(Debug, Clone, Copy)]
pub struct SymplecticAlg {
    pub rank: usize,
}

impl Algebra for SymplecticAlg {
    type Elem = SymplecticElement;

    fn describe(&self) -> String {
        format!("symplectic({})", self.rank)
    }
    fn constant(&self, c: Scalar) -> SymplecticElement {
        SymplecticElement::constant(self.rank, c)
    }
    fn ident(&self, id: &Ident) -> Result<SymplecticElement, ElabError> {
        let coord = |c: usize| {
            if c < 2 * self.rank {
                Ok(SymplecticElement::coordinate(self.rank, c))
            } else {
                Err(self.unknown(id))
            }
        };
        match id {
            Ident::X => coord(0),
            Ident::Y => coord(1),
            Ident::Xi(i) => coord(2 * i),
            Ident::Yi(i) => coord(2 * i + 1),
            _ => Err(self.unknown(id)),
        }
    }
    fn add(&self, a: &SymplecticElement, b: &SymplecticElement) -> Result<SymplecticElement, ElabError> {
        a.add(b).map_err(algebra_error)
    }
    fn neg(&self, a: &SymplecticElement) -> SymplecticElement {
        SymplecticElement::new(self.rank, -a.poly()).expect("same variables")
    }
    fn mul(&self, a: &SymplecticElement, b: &SymplecticElement) -> Result<SymplecticElement, ElabError> {
        a.mul(b).map_err(algebra_error)
    }
    fn bracket(&self, a: &SymplecticElement, b: &SymplecticElement) -> Result<SymplecticElement, ElabError> {
        a.bracket(b).map_err(algebra_error)
    }
}

/// Commutative polynomials in `coords` coordinates and jet symbols of that arity.
/// `x`, `y` name the first two coordinates and `x1`, `x2`, … all of them.
#[derive(Debug, Clone, Copy)]
pub struct PolynomialAlg {
    pub coords: usize,
    pub jets: bool,
}

impl Algebra for PolynomialAlg {
    type Elem = RationalPolynomial;

    fn describe(&self) -> String {
        if self.jets {
            format!("jet polynomials in {} coordinates", self.coords)
        } else {
            format!("polynomials in {} coordinates", self.coords)
        }
    }
    fn constant(&self, c: Scalar) -> RationalPolynomial {
        RationalPolynomial::constant(c)
    }
    fn ident(&self, id: &Ident) -> Result<RationalPolynomial, ElabError> {
        let coord = |c: usize| {
            if c < self.coords {
                Ok(RationalPolynomial::coord(c))
            } else {
                Err(self.unknown(id))
            }
        };
        match id {
            Ident::X => coord(0),
            Ident::Y => coord(1),
            Ident::Xi(i) => coord(*i),
            Ident::Jet(a) if self.jets && a.len() == self.coords => {
                Ok(RationalPolynomial::jet(MultiIndex::new(a.clone())))
            }
            _ => Err(self.unknown(id)),
        }
    }
    fn add(&self, a: &RationalPolynomial, b: &RationalPolynomial) -> Result<RationalPolynomial, ElabError> {
        Ok(a + b)
    }
    fn neg(&self, a: &RationalPolynomial) -> RationalPolynomial {
        -a
    }
    fn mul(&self, a: &RationalPolynomial, b: &RationalPolynomial) -> Result<RationalPolynomial, ElabError> {
        Ok(a * b)
    }
    fn bracket(&self, _: &RationalPolynomial, _: &RationalPolynomial) -> Result<RationalPolynomial, ElabError> {
        Err(ElabError::NoBracket(self.describe()))
    }
}
