//! Endomorphisms of `k[x,y]` and `k{x,y}`.
//!
//! An endomorphism is stored by its images `(F, G)` of `x` and `y`; [`PolyEndo::apply`]
//! substitutes them. `compose(φ, ψ)` has images `(F_φ(F_ψ, G_ψ), G_φ(F_ψ, G_ψ))`, which
//! as a map of the plane is `φ ∘ ψ`. A list of moves `[m_1, …, m_k]` stands for
//! `m_1 ∘ … ∘ m_k` in this sense.

use std::fmt;

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::freelie::{GenNames, LyndonWord};
use crate::freepoisson::{FreePoisson, PoissonElement, PoissonError, PoissonMonomial};
use crate::polyring::{CoordNames, Monomial, RationalPolynomial, Variable};
use crate::scalar::{int, render, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("endomorphism of k{{x,y}} must have rank-2 images, got rank {0}")]
    Rank(usize),
    #[error("polynomial involves variables other than x, y: {0}")]
    NotPlanar(String),
    #[error("{{h}} violates the support condition at monomial {0}")]
    SupportViolation(String),
    #[error("bracket scaling is not a nonzero scalar: {0}")]
    Precondition(String),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

fn x() -> RationalPolynomial {
    RationalPolynomial::coord(0)
}

fn y() -> RationalPolynomial {
    RationalPolynomial::coord(1)
}

fn check_planar(p: &RationalPolynomial) -> Result<(), AutomorphismError> {
    match p.variables().into_iter().find(|v| !matches!(v, Variable::Coord(0 | 1))) {
        Some(v) => Err(AutomorphismError::NotPlanar(v.to_string())),
        None => Ok(()),
    }
}

/// `x ↦ F`, `y ↦ G` on `k[x,y]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyEndo {
    pub f: RationalPolynomial,
    pub g: RationalPolynomial,
}

impl PolyEndo {
    pub fn new(f: RationalPolynomial, g: RationalPolynomial) -> Result<Self, AutomorphismError> {
        check_planar(&f)?;
        check_planar(&g)?;
        Ok(Self { f, g })
    }

    pub fn identity() -> Self {
        Self { f: x(), g: y() }
    }

    pub fn swap() -> Self {
        Self { f: y(), g: x() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `p(F, G)`.
    pub fn apply(&self, p: &RationalPolynomial) -> RationalPolynomial {
        p.substitute(|v| match v {
            Variable::Coord(0) => Some(self.f.clone()),
            Variable::Coord(1) => Some(self.g.clone()),
            _ => None,
        })
    }

    pub fn jacobian(&self) -> RationalPolynomial {
        let (fx, fy) = (self.f.partial(&Variable::Coord(0)), self.f.partial(&Variable::Coord(1)));
        let (gx, gy) = (self.g.partial(&Variable::Coord(0)), self.g.partial(&Variable::Coord(1)));
        &(&fx * &gy) - &(&fy * &gx)
    }

    /// `max(deg F, deg G)`, with the zero polynomial counted as degree 0.
    pub fn degree(&self) -> u32 {
        self.f
            .total_degree()
            .unwrap_or(0)
            .max(self.g.total_degree().unwrap_or(0))
    }
}

impl fmt::Display for PolyEndo {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "({}, {})",
            self.f.display_with(CoordNames::Plane),
            self.g.display_with(CoordNames::Plane)
        )
    }
}

pub fn apply(phi: &PolyEndo, p: &RationalPolynomial) -> RationalPolynomial {
    phi.apply(p)
}

/// Images `(F_φ(F_ψ, G_ψ), G_φ(F_ψ, G_ψ))`.
pub fn compose(phi: &PolyEndo, psi: &PolyEndo) -> PolyEndo {
    PolyEndo {
        f: psi.apply(&phi.f),
        g: psi.apply(&phi.g),
    }
}

pub fn jacobian(phi: &PolyEndo) -> RationalPolynomial {
    phi.jacobian()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum ElementaryMove {
    /// `(x, y) ↦ M·(x, y) + t` with `det M ≠ 0`.
    Affine {
        matrix: [[Scalar; 2]; 2],
        translation: [Scalar; 2],
    },
    /// `x ↦ x + p(y)` for [`Axis::X`], `y ↦ y + p(x)` for [`Axis::Y`].
    Triangular { variable: Axis, added: RationalPolynomial },
}

impl ElementaryMove {
    /// `None` when the matrix is singular.
    pub fn affine(matrix: [[Scalar; 2]; 2], translation: [Scalar; 2]) -> Option<Self> {
        let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
        (!det.is_zero()).then_some(Self::Affine { matrix, translation })
    }

    /// `None` when `added` involves the variable being moved.
    pub fn triangular(variable: Axis, added: RationalPolynomial) -> Option<Self> {
        let own = match variable {
            Axis::X => Variable::Coord(0),
            Axis::Y => Variable::Coord(1),
        };
        let planar = check_planar(&added).is_ok();
        (planar && !added.depends_on(&own)).then_some(Self::Triangular { variable, added })
    }

    pub fn swap() -> Self {
        Self::Affine {
            matrix: [[int(0), int(1)], [int(1), int(0)]],
            translation: [int(0), int(0)],
        }
    }

    pub fn to_endo(&self) -> PolyEndo {
        match self {
            Self::Affine { matrix, translation } => {
                let row = |r: usize| {
                    &(&x().scale(&matrix[r][0]) + &y().scale(&matrix[r][1]))
                        + &RationalPolynomial::constant(translation[r].clone())
                };
                PolyEndo { f: row(0), g: row(1) }
            }
            Self::Triangular {
                variable: Axis::X,
                added,
            } => PolyEndo {
                f: &x() + added,
                g: y(),
            },
            Self::Triangular {
                variable: Axis::Y,
                added,
            } => PolyEndo {
                f: x(),
                g: &y() + added,
            },
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Affine { matrix, translation } => {
                let [[a, b], [c, d]] = matrix;
                let det = a * d - b * c;
                let inv = [[d / &det, -b / &det], [-c / &det, a / &det]];
                let t = [
                    -(&inv[0][0] * &translation[0] + &inv[0][1] * &translation[1]),
                    -(&inv[1][0] * &translation[0] + &inv[1][1] * &translation[1]),
                ];
                Self::Affine {
                    matrix: inv,
                    translation: t,
                }
            }
            Self::Triangular { variable, added } => Self::Triangular {
                variable: *variable,
                added: -added,
            },
        }
    }
}

impl fmt::Display for ElementaryMove {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Affine { matrix, translation } => write!(
                out,
                "affine [[{}, {}], [{}, {}]] + ({}, {})",
                render(&matrix[0][0]),
                render(&matrix[0][1]),
                render(&matrix[1][0]),
                render(&matrix[1][1]),
                render(&translation[0]),
                render(&translation[1])
            ),
            Self::Triangular { variable, added } => {
                let v = match variable {
                    Axis::X => "x",
                    Axis::Y => "y",
                };
                let p = added.display_with(CoordNames::Plane);
                if let Some(rest) = p.strip_prefix('-') {
                    write!(out, "triangular {v} <- {v} - {}", rest.trim_start())
                } else {
                    write!(out, "triangular {v} <- {v} + {p}")
                }
            }
        }
    }
}

/// `m_1 ∘ … ∘ m_k`; the identity for an empty list.
pub fn compose_moves(moves: &[ElementaryMove]) -> PolyEndo {
    moves
        .iter()
        .rev()
        .fold(PolyEndo::identity(), |acc, m| compose(&m.to_endo(), &acc))
}

/// The moves of `(m_1 ∘ … ∘ m_k)^{-1} = m_k^{-1} ∘ … ∘ m_1^{-1}`.
pub fn invert_moves(moves: &[ElementaryMove]) -> Vec<ElementaryMove> {
    moves.iter().rev().map(ElementaryMove::inverse).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JungOutcome {
    /// `compose_moves(moves)` equals the input.
    Tame(Vec<ElementaryMove>),
    NotAutomorphism {
        reason: String,
        stalled: PolyEndo,
    },
}

impl JungOutcome {
    pub fn moves(&self) -> Option<&[ElementaryMove]> {
        match self {
            Self::Tame(m) => Some(m),
            Self::NotAutomorphism { .. } => None,
        }
    }
}

/// `Some(c)` with `a = c·b` when such a scalar exists.
fn scalar_ratio(a: &RationalPolynomial, b: &RationalPolynomial) -> Option<Scalar> {
    let (m, cb) = b.terms().next()?;
    let c = a.coefficient(m) / cb;
    (!c.is_zero() && *a == b.scale(&c)).then_some(c)
}

/// Tries `hi = c·lo^k` on leading forms and returns `(c, k)`.
fn peel(hi: &RationalPolynomial, lo: &RationalPolynomial) -> Option<(Scalar, u32)> {
    let (dh, dl) = (hi.total_degree()?, lo.total_degree()?);
    if dl == 0 || dh % dl != 0 {
        return None;
    }
    let k = dh / dl;
    let c = scalar_ratio(&hi.leading_form(), &lo.leading_form().pow(k))?;
    Some((c, k))
}

/// Peels leading forms until the map is affine.
///
/// # Panics
///
/// If the returned moves do not compose back to `phi`, which would be an arithmetic bug.
pub fn jung_decompose(phi: &PolyEndo) -> JungOutcome {
    let stall = |reason: String, state: &PolyEndo| JungOutcome::NotAutomorphism {
        reason,
        stalled: state.clone(),
    };
    let j = phi.jacobian();
    match j.as_constant() {
        Some(c) if !c.is_zero() => {}
        _ => {
            return stall(
                format!(
                    "Jacobian {} is not a nonzero constant",
                    j.display_with(CoordNames::Plane)
                ),
                phi,
            )
        }
    }
    let mut state = phi.clone();
    let mut moves = Vec::new();
    while state.degree() > 1 {
        let (df, dg) = (state.f.total_degree(), state.g.total_degree());
        let before = df.unwrap_or(0) + dg.unwrap_or(0);
        let step = if dg >= df {
            peel(&state.g, &state.f).map(|(c, k)| (Axis::Y, c, k))
        } else {
            None
        }
        .or_else(|| peel(&state.f, &state.g).map(|(c, k)| (Axis::X, c, k)));
        let Some((axis, c, k)) = step else {
            return stall("leading forms are not proportional powers".into(), &state);
        };
        let (next, added) = match axis {
            Axis::Y => (
                PolyEndo {
                    f: state.f.clone(),
                    g: &state.g - &state.f.pow(k).scale(&c),
                },
                x().pow(k).scale(&c),
            ),
            Axis::X => (
                PolyEndo {
                    f: &state.f - &state.g.pow(k).scale(&c),
                    g: state.g.clone(),
                },
                y().pow(k).scale(&c),
            ),
        };
        let after = next.f.total_degree().unwrap_or(0) + next.g.total_degree().unwrap_or(0);
        if after >= before {
            return stall("degree did not decrease".into(), &state);
        }
        moves.push(ElementaryMove::Triangular { variable: axis, added });
        state = next;
    }
    let lin = |p: &RationalPolynomial, v: usize| p.coefficient(&Monomial::var(Variable::Coord(v), 1));
    let matrix = [
        [lin(&state.f, 0), lin(&state.f, 1)],
        [lin(&state.g, 0), lin(&state.g, 1)],
    ];
    let translation = [state.f.constant_term(), state.g.constant_term()];
    match ElementaryMove::affine(matrix, translation) {
        None => return stall("linear part is singular".into(), &state),
        Some(a) => {
            if !a.to_endo().is_identity() {
                moves.push(a);
            }
        }
    }
    assert_eq!(compose_moves(&moves), *phi, "tame decomposition does not compose back");
    JungOutcome::Tame(moves)
}

/// `x ↦ F`, `y ↦ G` on `k{x,y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonEndo {
    pub f: PoissonElement,
    pub g: PoissonElement,
}

/// `{x, y}` in `k{x,y}`.
pub fn e3() -> PoissonElement {
    let x = PoissonElement::generator(2, 0).expect("rank 2");
    let y = PoissonElement::generator(2, 1).expect("rank 2");
    x.bracket(&y).expect("rank 2")
}

/// `k[x,y] ⊆ k{x,y}`.
pub fn lift_polynomial(p: &RationalPolynomial) -> Result<PoissonElement, AutomorphismError> {
    check_planar(p)?;
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut words = Vec::new();
        for (v, e) in m.factors() {
            let letter = match v {
                Variable::Coord(0) => 0,
                _ => 1,
            };
            words.extend(std::iter::repeat_n(LyndonWord::letter(letter), *e as usize));
        }
        terms.push((PoissonMonomial::new(words), c.clone()));
    }
    Ok(PoissonElement::from_terms(2, terms)?)
}

/// The inverse of [`lift_polynomial`] on elements built from generators only.
pub fn project_polynomial(a: &PoissonElement) -> Option<RationalPolynomial> {
    let mut terms = Vec::new();
    for (m, c) in a.terms() {
        if !m.is_commutative() {
            return None;
        }
        let pairs = m.words().iter().map(|w| (Variable::Coord(w.letters()[0] as usize), 1));
        terms.push((Monomial::from_pairs(pairs), c.clone()));
    }
    Some(RationalPolynomial::from_terms(terms))
}

impl PoissonEndo {
    pub fn new(f: PoissonElement, g: PoissonElement) -> Result<Self, AutomorphismError> {
        for e in [&f, &g] {
            if e.rank() != 2 {
                return Err(AutomorphismError::Rank(e.rank()));
            }
        }
        Ok(Self { f, g })
    }

    pub fn lift(phi: &PolyEndo) -> Result<Self, AutomorphismError> {
        Self::new(lift_polynomial(&phi.f)?, lift_polynomial(&phi.g)?)
    }

    pub fn apply(&self, a: &PoissonElement) -> Result<PoissonElement, AutomorphismError> {
        if a.rank() != 2 {
            return Err(AutomorphismError::Rank(a.rank()));
        }
        Ok(a.evaluate(&FreePoisson { rank: 2 }, &[self.f.clone(), self.g.clone()])?)
    }

    /// Images `(F_φ(F_ψ, G_ψ), G_φ(F_ψ, G_ψ))`.
    pub fn compose(&self, psi: &Self) -> Result<Self, AutomorphismError> {
        Ok(Self {
            f: psi.apply(&self.f)?,
            g: psi.apply(&self.g)?,
        })
    }
}

impl fmt::Display for PoissonEndo {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "({}, {})",
            self.f.display_with(GenNames::Xy),
            self.g.display_with(GenNames::Xy)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketScaling {
    /// `{F, G} = α·{x,y}`; `α = 0` is degenerate.
    Scalar(Scalar),
    /// `{F, G} = t·{x,y}` with `t` a nonconstant polynomial.
    PolynomialMultiple(RationalPolynomial),
    /// The part of `{F, G}` that is not of the form `t·{x,y}`.
    NotMultiple(PoissonElement),
}

pub fn bracket_scaling_test(phi: &PoissonEndo) -> Result<BracketScaling, AutomorphismError> {
    let b = phi.f.bracket(&phi.g)?;
    let e = LyndonWord::new(vec![0, 1]).expect("xy is Lyndon");
    let mut t = Vec::new();
    let mut bad = Vec::new();
    for (m, c) in b.terms() {
        let words = m.words();
        let hits = words.iter().filter(|w| **w == e).count();
        let rest_commutative = words.iter().all(|w| w.is_letter() || *w == e);
        if hits == 1 && rest_commutative {
            let pairs = words
                .iter()
                .filter(|w| w.is_letter())
                .map(|w| (Variable::Coord(w.letters()[0] as usize), 1));
            t.push((Monomial::from_pairs(pairs), c.clone()));
        } else {
            bad.push((m.clone(), c.clone()));
        }
    }
    if !bad.is_empty() {
        return Ok(BracketScaling::NotMultiple(PoissonElement::from_terms(2, bad)?));
    }
    let t = RationalPolynomial::from_terms(t);
    Ok(match t.as_constant() {
        Some(a) => BracketScaling::Scalar(a),
        None => BracketScaling::PolynomialMultiple(t),
    })
}

/// Monomials with two words of length `≥ 2` or one of length `≥ 3`.
fn satisfies_support(m: &PoissonMonomial) -> bool {
    let long = m.words().iter().filter(|w| w.len() >= 2).count();
    long >= 2 || m.words().iter().any(|w| w.len() >= 3)
}

/// `ψ = (f_1, g_1)` from the commutative parts and `h = {F, G} − {f_1, g_1}`.
pub fn split_and_project(phi: &PoissonEndo) -> Result<(PolyEndo, PoissonElement), AutomorphismError> {
    let (f1, _) = phi.f.split_commutative_part();
    let (g1, _) = phi.g.split_commutative_part();
    let h = phi.f.bracket(&phi.g)?.sub(&f1.bracket(&g1)?)?;
    if let Some((m, _)) = h.terms().find(|(m, _)| !satisfies_support(m)) {
        return Err(AutomorphismError::SupportViolation(m.render(GenNames::Xy)));
    }
    let psi = PolyEndo {
        f: project_polynomial(&f1).expect("commutative part"),
        g: project_polynomial(&g1).expect("commutative part"),
    };
    Ok((psi, h))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeReport {
    pub alpha: Scalar,
    pub psi: PolyEndo,
    pub jacobian: RationalPolynomial,
    pub jacobian_matches: bool,
    pub decomposition: JungOutcome,
    /// `θ(x) − x` and `θ(y) − y` for `θ = ψ^{-1}φ`, when `ψ` decomposes.
    pub residual: Option<(PoissonElement, PoissonElement)>,
}

impl BridgeReport {
    pub fn residual_vanishes(&self) -> bool {
        matches!(&self.residual, Some((s, t)) if s.is_zero() && t.is_zero())
    }
}

/// For `{F, G} = α{x, y}`: projects to `ψ`, compares `J(ψ)` with `α`, decomposes `ψ` and
/// computes the residual of `ψ^{-1}φ`.
pub fn tame_bridge(phi: &PoissonEndo) -> Result<BridgeReport, AutomorphismError> {
    let alpha = match bracket_scaling_test(phi)? {
        BracketScaling::Scalar(a) if !a.is_zero() => a,
        BracketScaling::Scalar(_) => return Err(AutomorphismError::Precondition("{F, G} = 0".into())),
        BracketScaling::PolynomialMultiple(t) => {
            return Err(AutomorphismError::Precondition(format!(
                "{{F, G}} = ({})·{{x,y}}",
                t.display_with(CoordNames::Plane)
            )))
        }
        BracketScaling::NotMultiple(r) => {
            return Err(AutomorphismError::Precondition(format!(
                "{{F, G}} contains {}",
                r.display_with(GenNames::Xy)
            )))
        }
    };
    let (psi, _) = split_and_project(phi)?;
    let jacobian = psi.jacobian();
    let jacobian_matches = jacobian.as_constant().as_ref() == Some(&alpha);
    let decomposition = jung_decompose(&psi);
    let residual = match decomposition.moves() {
        Some(moves) => {
            let inv = PoissonEndo::lift(&compose_moves(&invert_moves(moves)))?;
            let (gx, gy) = (PoissonElement::generator(2, 0)?, PoissonElement::generator(2, 1)?);
            Some((inv.apply(&phi.f)?.sub(&gx)?, inv.apply(&phi.g)?.sub(&gy)?))
        }
        None => None,
    };
    Ok(BridgeReport {
        alpha,
        psi,
        jacobian,
        jacobian_matches,
        decomposition,
        residual,
    })
}

fn random_univariate<R: Rng>(rng: &mut R, v: usize, degree: u32, coeff: i64) -> RationalPolynomial {
    let terms = (1..=degree).map(|e| (Monomial::var(Variable::Coord(v), e), int(rng.gen_range(-coeff..=coeff))));
    RationalPolynomial::from_terms(terms)
}

/// A random elementary move; triangular parts have degree `≤ max_degree` and
/// all coefficients lie in `−coeff..=coeff`.
pub fn random_move<R: Rng>(rng: &mut R, max_degree: u32, coeff: i64) -> ElementaryMove {
    if rng.gen_bool(0.5) {
        let variable = if rng.gen_bool(0.5) { Axis::X } else { Axis::Y };
        let other = match variable {
            Axis::X => 1,
            Axis::Y => 0,
        };
        let mut added = random_univariate(rng, other, max_degree, coeff);
        added.add_term(Monomial::one(), int(rng.gen_range(-coeff..=coeff)));
        ElementaryMove::Triangular { variable, added }
    } else {
        loop {
            let mut d = || int(rng.gen_range(-coeff..=coeff));
            let matrix = [[d(), d()], [d(), d()]];
            let translation = [d(), d()];
            if let Some(m) = ElementaryMove::affine(matrix, translation) {
                return m;
            }
        }
    }
}

/// Up to `max_moves` random moves (at least one) and their composition.
pub fn random_tame<R: Rng>(
    rng: &mut R,
    max_moves: usize,
    max_degree: u32,
    coeff: i64,
) -> (Vec<ElementaryMove>, PolyEndo) {
    let k = rng.gen_range(1..=max_moves.max(1));
    let moves: Vec<ElementaryMove> = (0..k).map(|_| random_move(rng, max_degree, coeff)).collect();
    let phi = compose_moves(&moves);
    (moves, phi)
}

impl Default for PolyEndo {
    fn default() -> Self {
        Self::identity()
    }
}
