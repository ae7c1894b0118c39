//! Symplectic Poisson algebras `PS_n = k[x_1, y_1, …, x_n, y_n]`.
//!
//! The bracket is `{a,b} = Σ_i (∂a/∂x_i ∂b/∂y_i − ∂a/∂y_i ∂b/∂x_i)`, so that
//! `{x_i, y_j} = δ_ij`. Coordinates are laid out as `x_1, y_1, x_2, y_2, …`, i.e.
//! `x_i` is coordinate `2(i−1)` and `y_i` is coordinate `2i−1`.
//!
//! Besides the bracket this module evaluates free Poisson elements under generator
//! assignments and tests whether an element is a polynomial identity of `PS_n`: a
//! randomized search for a nonzero image in general, and an exact decision for
//! customary polynomials based on the fact that brackets of arbitrary elements only see
//! their gradients.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::freepoisson::{PoissonElement, PoissonError, PoissonTarget};
use crate::multiindex::MultiIndex;
use crate::polyring::{CoordNames, Monomial, RationalPolynomial, Variable};
use crate::scalar::{int, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("symplectic ranks differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator z{} has no image (assignment covers {covered})", index + 1)]
    UncoveredGenerator { index: usize, covered: usize },
    #[error("polynomial is not an element of PS_{rank}: {reason}")]
    NotInRing { rank: usize, reason: String },
    #[error("input is zero")]
    ZeroInput,
    #[error("not a customary polynomial: {0}")]
    NotCustomary(String),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticElement {
    rank: usize,
    poly: RationalPolynomial,
}

impl SymplecticElement {
    pub fn new(rank: usize, poly: RationalPolynomial) -> Result<Self, SymplecticError> {
        for v in poly.variables() {
            match v {
                Variable::Coord(i) if i < 2 * rank => {}
                other => {
                    return Err(SymplecticError::NotInRing {
                        rank,
                        reason: format!("variable {other}"),
                    })
                }
            }
        }
        Ok(Self { rank, poly })
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            poly: RationalPolynomial::zero(),
        }
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        Self {
            rank,
            poly: RationalPolynomial::constant(c),
        }
    }

    /// `x_{k+1}` (0-based `k`).
    pub fn x(rank: usize, k: usize) -> Self {
        Self::coordinate(rank, 2 * k)
    }

    /// `y_{k+1}` (0-based `k`).
    pub fn y(rank: usize, k: usize) -> Self {
        Self::coordinate(rank, 2 * k + 1)
    }

    pub fn coordinate(rank: usize, c: usize) -> Self {
        assert!(c < 2 * rank, "coordinate {c} outside PS_{rank}");
        Self {
            rank,
            poly: RationalPolynomial::coord(c),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn poly(&self) -> &RationalPolynomial {
        &self.poly
    }

    pub fn into_poly(self) -> RationalPolynomial {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The same polynomial viewed in `PS_m`, `m ≥ rank`.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.rank);
        Self {
            rank: m,
            poly: self.poly.clone(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), SymplecticError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(SymplecticError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymplecticError> {
        self.check(other)?;
        Ok(Self {
            rank: self.rank,
            poly: &self.poly + &other.poly,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SymplecticError> {
        self.check(other)?;
        Ok(Self {
            rank: self.rank,
            poly: &self.poly * &other.poly,
        })
    }

    pub fn bracket(&self, other: &Self) -> Result<Self, SymplecticError> {
        self.check(other)?;
        let mut out = RationalPolynomial::zero();
        for i in 0..self.rank {
            let (x, y) = (Variable::Coord(2 * i), Variable::Coord(2 * i + 1));
            let ax = self.poly.partial(&x);
            let ay = self.poly.partial(&y);
            if ax.is_zero() && ay.is_zero() {
                continue;
            }
            out = out + &ax * &other.poly.partial(&y) - &ay * &other.poly.partial(&x);
        }
        Ok(Self {
            rank: self.rank,
            poly: out,
        })
    }
}

impl fmt::Display for SymplecticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display_with(CoordNames::Symplectic))
    }
}

pub fn ps_bracket(a: &SymplecticElement, b: &SymplecticElement) -> Result<SymplecticElement, SymplecticError> {
    a.bracket(b)
}

/// `PS_n` as an evaluation target for free Poisson elements.
#[derive(Debug, Clone, Copy)]
pub struct SymplecticRing {
    pub rank: usize,
}

impl PoissonTarget for SymplecticRing {
    type Elem = SymplecticElement;
    type Error = SymplecticError;

    fn zero(&self) -> SymplecticElement {
        SymplecticElement::zero(self.rank)
    }
    fn constant(&self, c: Scalar) -> SymplecticElement {
        SymplecticElement::constant(self.rank, c)
    }
    fn add(&self, a: &SymplecticElement, b: &SymplecticElement) -> Result<SymplecticElement, SymplecticError> {
        a.add(b)
    }
    fn mul(&self, a: &SymplecticElement, b: &SymplecticElement) -> Result<SymplecticElement, SymplecticError> {
        a.mul(b)
    }
    fn bracket(&self, a: &SymplecticElement, b: &SymplecticElement) -> Result<SymplecticElement, SymplecticError> {
        a.bracket(b)
    }
    fn image(&self, images: &[SymplecticElement], i: usize) -> Result<SymplecticElement, SymplecticError> {
        images.get(i).cloned().ok_or(SymplecticError::UncoveredGenerator {
            index: i,
            covered: images.len(),
        })
    }
}

/// Images `φ(z_1), …, φ(z_k)` in `PS_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAssignment {
    rank: usize,
    images: Vec<SymplecticElement>,
}

impl GeneratorAssignment {
    pub fn new(rank: usize, images: Vec<SymplecticElement>) -> Result<Self, SymplecticError> {
        for img in &images {
            if img.rank != rank {
                return Err(SymplecticError::RankMismatch {
                    left: rank,
                    right: img.rank,
                });
            }
        }
        Ok(Self { rank, images })
    }

    /// `z_{2k−1} ↦ x_k`, `z_{2k} ↦ y_k`, wrapping around after `2n` generators.
    pub fn darboux(rank: usize, generators: usize) -> Self {
        Self {
            rank,
            images: (0..generators)
                .map(|i| SymplecticElement::coordinate(rank, i % (2 * rank)))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[SymplecticElement] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// The first `k` images.
    pub fn restrict(&self, k: usize) -> Self {
        Self {
            rank: self.rank,
            images: self.images[..k.min(self.images.len())].to_vec(),
        }
    }

    /// Under the inclusion `PS_n ⊆ PS_m`.
    pub fn embed(&self, m: usize) -> Self {
        Self {
            rank: m,
            images: self.images.iter().map(|e| e.embed(m)).collect(),
        }
    }

    /// The Poisson homomorphism image of `a`.
    pub fn eval_hom(&self, a: &PoissonElement) -> Result<SymplecticElement, SymplecticError> {
        a.evaluate(&SymplecticRing { rank: self.rank }, &self.images)
    }
}

pub fn eval_hom(phi: &GeneratorAssignment, a: &PoissonElement) -> Result<SymplecticElement, SymplecticError> {
    phi.eval_hom(a)
}

/// A random polynomial in the `2n` coordinates of `PS_n` with every monomial of degree
/// `≤ degree` getting a coefficient drawn uniformly from `−coeff..=coeff`.
pub fn random_element<R: Rng>(rng: &mut R, rank: usize, degree: u32, coeff: i64) -> SymplecticElement {
    let mut terms = Vec::new();
    for alpha in MultiIndex::up_to_degree(2 * rank, degree) {
        let c = rng.gen_range(-coeff..=coeff);
        let m = Monomial::from_pairs(
            alpha
                .entries()
                .iter()
                .enumerate()
                .map(|(j, &e)| (Variable::Coord(j), e)),
        );
        terms.push((m, int(c)));
    }
    SymplecticElement {
        rank,
        poly: RationalPolynomial::from_terms(terms),
    }
}

/// Deterministic generator for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict {
    /// A substitution with nonzero image. `trial` is `None` for the structured
    /// substitution and `Some(t)` for random trial `t` (replayable via [`trial_rng`]).
    NonIdentity {
        witness: GeneratorAssignment,
        value: SymplecticElement,
        trial: Option<u64>,
    },
    /// No witness found; not a proof.
    ProbablyIdentity {
        rank: usize,
        trials: u64,
        degree_bound: u32,
    },
}

impl IdentityVerdict {
    pub fn is_non_identity(&self) -> bool {
        matches!(self, IdentityVerdict::NonIdentity { .. })
    }
}

/// Default coefficient range `−3..=3` for random substitutions.
pub const RANDOM_COEFF: i64 = 3;

pub fn is_identity_randomized(
    a: &PoissonElement,
    rank: usize,
    degree_bound: u32,
    trials: u64,
    rng_seed: u64,
) -> Result<IdentityVerdict, SymplecticError> {
    if a.is_zero() {
        return Err(SymplecticError::ZeroInput);
    }
    let generators = a.rank();
    let structured = GeneratorAssignment::darboux(rank, generators);
    let value = structured.eval_hom(a)?;
    if !value.is_zero() {
        return Ok(IdentityVerdict::NonIdentity {
            witness: structured,
            value,
            trial: None,
        });
    }
    for t in 0..trials {
        let mut rng = trial_rng(rng_seed, t);
        let images = (0..generators)
            .map(|_| random_element(&mut rng, rank, degree_bound, RANDOM_COEFF))
            .collect();
        let phi = GeneratorAssignment { rank, images };
        let value = phi.eval_hom(a)?;
        if !value.is_zero() {
            return Ok(IdentityVerdict::NonIdentity {
                witness: phi,
                value,
                trial: Some(t),
            });
        }
    }
    Ok(IdentityVerdict::ProbablyIdentity {
        rank,
        trials,
        degree_bound,
    })
}

/// Searches `PS_1, PS_2, …, PS_{max_rank}` for a non-identity witness.
pub fn find_non_identity_rank(
    a: &PoissonElement,
    max_rank: usize,
    degree_bound: u32,
    trials: u64,
    rng_seed: u64,
) -> Result<IdentityVerdict, SymplecticError> {
    let mut last = None;
    for n in 1..=max_rank {
        let v = is_identity_randomized(a, n, degree_bound, trials, rng_seed)?;
        if v.is_non_identity() {
            return Ok(v);
        }
        last = Some(v);
    }
    last.ok_or(SymplecticError::ZeroInput)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CustomaryVerdict {
    pub identity: bool,
    /// Number of terms of the gradient expansion (0 exactly when `identity`).
    pub expansion_terms: usize,
    /// On `identity == false`: arguments mapped to coordinates, and the resulting value.
    pub witness: Option<(GeneratorAssignment, Scalar)>,
}

/// Pairs `(a, b)` of each bracket factor, validating customary shape.
type BracketPairs = Vec<(usize, usize)>;

fn customary_shape(q: &PoissonElement) -> Result<Vec<(BracketPairs, Scalar)>, SymplecticError> {
    let rank = q.rank();
    if !rank.is_multiple_of(2) {
        return Err(SymplecticError::NotCustomary(format!(
            "odd number of generators ({rank})"
        )));
    }
    let mut out = Vec::new();
    for (m, c) in q.terms() {
        let mut seen = vec![false; rank];
        let mut pairs = Vec::new();
        for w in m.words() {
            let l = w.letters();
            if l.len() != 2 {
                return Err(SymplecticError::NotCustomary(format!(
                    "factor {w} is not a bracket of generators"
                )));
            }
            for &g in l {
                if std::mem::replace(&mut seen[g as usize], true) {
                    return Err(SymplecticError::NotCustomary(format!("generator z{} repeated", g + 1)));
                }
            }
            pairs.push((l[0] as usize, l[1] as usize));
        }
        if seen.iter().any(|s| !s) {
            return Err(SymplecticError::NotCustomary(
                "not multilinear in all generators".into(),
            ));
        }
        out.push((pairs, c.clone()));
    }
    Ok(out)
}

/// Decides whether the customary polynomial `q` is an identity of `PS_n`.
///
/// Each argument `z_a` is replaced by a gradient vector `g_a ∈ k^{2n}` of fresh
/// indeterminates and each bracket `{z_a, z_b}` by the symplectic pairing
/// `Σ_l g_a[x_l] g_b[y_l] − g_a[y_l] g_b[x_l]`; `q` is an identity iff the result is the
/// zero polynomial. The expansion is multilinear in the gradients, so when it is
/// nonzero some choice of standard basis vectors detects it.
pub fn customary_identity_exact(q: &PoissonElement, rank: usize) -> Result<CustomaryVerdict, SymplecticError> {
    let shape = customary_shape(q)?;
    let args = q.rank();
    let dim = 2 * rank;
    let g = |a: usize, c: usize| RationalPolynomial::coord(a * dim + c);
    let pairing = |a: usize, b: usize| {
        let mut p = RationalPolynomial::zero();
        for l in 0..rank {
            p = p + &g(a, 2 * l) * &g(b, 2 * l + 1) - &g(a, 2 * l + 1) * &g(b, 2 * l);
        }
        p
    };
    let mut expansion = RationalPolynomial::zero();
    for (pairs, c) in &shape {
        let mut term = RationalPolynomial::constant(c.clone());
        for &(a, b) in pairs {
            term = &term * &pairing(a, b);
        }
        expansion = expansion + term;
    }
    if expansion.is_zero() {
        return Ok(CustomaryVerdict {
            identity: true,
            expansion_terms: 0,
            witness: None,
        });
    }
    // Structured choice first, then all basis tuples.
    let structured: Vec<usize> = (0..args).map(|a| a % dim).collect();
    let eval = |choice: &[usize]| {
        expansion
            .evaluate(|v| match v {
                Variable::Coord(k) => Some(if choice[k / dim] == k % dim {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }),
                Variable::Jet(_) => None,
            })
            .expect("gradient variables only")
    };
    let mut found = None;
    let value = eval(&structured);
    if !value.is_zero() {
        found = Some((structured, value));
    } else {
        let mut choice = vec![0usize; args];
        'odometer: loop {
            let value = eval(&choice);
            if !value.is_zero() {
                found = Some((choice.clone(), value));
                break;
            }
            for slot in choice.iter_mut() {
                *slot += 1;
                if *slot < dim {
                    continue 'odometer;
                }
                *slot = 0;
            }
            break;
        }
    }
    let (choice, value) = found.expect("a nonzero multilinear form is nonzero on some basis tuple");
    let witness = GeneratorAssignment {
        rank,
        images: choice.iter().map(|&c| SymplecticElement::coordinate(rank, c)).collect(),
    };
    Ok(CustomaryVerdict {
        identity: false,
        expansion_terms: expansion.num_terms(),
        witness: Some((witness, value)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freepoisson::{customary_basis, customary_monomial, standard_customary};
    use crate::polyring::Monomial;
    use proptest::prelude::*;

    fn x(n: usize, k: usize) -> SymplecticElement {
        SymplecticElement::x(n, k)
    }
    fn y(n: usize, k: usize) -> SymplecticElement {
        SymplecticElement::y(n, k)
    }
    fn one(n: usize) -> SymplecticElement {
        SymplecticElement::constant(n, Scalar::one())
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(x(1, 0).bracket(&y(1, 0)).unwrap(), one(1));
        assert!(x(2, 0).bracket(&y(2, 1)).unwrap().is_zero());
        assert!(x(2, 0).bracket(&x(2, 1)).unwrap().is_zero());
        let xy = x(1, 0).mul(&y(1, 0)).unwrap();
        assert_eq!(x(1, 0).bracket(&xy).unwrap(), x(1, 0));
        let s = x(1, 0).add(&y(1, 0)).unwrap();
        // {x+y, xy} = 1·x − 1·y.
        let expected =
            SymplecticElement::new(1, &RationalPolynomial::coord(0) - &RationalPolynomial::coord(1)).unwrap();
        assert_eq!(s.bracket(&xy).unwrap(), expected);
        assert_eq!(expected.to_string(), "x1 - y1");
        assert!(matches!(
            x(1, 0).bracket(&x(2, 0)),
            Err(SymplecticError::RankMismatch { .. })
        ));
    }

    #[test]
    fn eval_hom_examples() {
        let z = |i| PoissonElement::generator(2, i).unwrap();
        let br = z(0).bracket(&z(1)).unwrap();
        let phi = GeneratorAssignment::new(1, vec![x(1, 0), y(1, 0)]).unwrap();
        assert_eq!(phi.eval_hom(&br).unwrap(), one(1));
        assert_eq!(
            phi.eval_hom(&z(0).product(&z(1)).unwrap()).unwrap(),
            x(1, 0).mul(&y(1, 0)).unwrap()
        );
        let phi2 = GeneratorAssignment::new(1, vec![x(1, 0).mul(&x(1, 0)).unwrap(), y(1, 0)]).unwrap();
        let two_x = SymplecticElement::new(1, RationalPolynomial::coord(0).scale(&int(2))).unwrap();
        assert_eq!(phi2.eval_hom(&br).unwrap(), two_x);
        let short = GeneratorAssignment::new(1, vec![x(1, 0)]).unwrap();
        assert!(matches!(
            short.eval_hom(&br),
            Err(SymplecticError::UncoveredGenerator { index: 1, .. })
        ));
    }

    #[test]
    fn randomized_examples() {
        for n in 1..=3 {
            let v = is_identity_randomized(&customary_monomial(n), n, 2, 5, 7).unwrap();
            match v {
                IdentityVerdict::NonIdentity { value, trial, .. } => {
                    assert_eq!(value, one(n));
                    assert_eq!(trial, None);
                }
                other => panic!("{other:?}"),
            }
        }
        let st4 = standard_customary(1);
        assert!(matches!(
            is_identity_randomized(&st4, 1, 2, 20, 1).unwrap(),
            IdentityVerdict::ProbablyIdentity { trials: 20, .. }
        ));
        match is_identity_randomized(&st4, 2, 2, 20, 1).unwrap() {
            IdentityVerdict::NonIdentity { witness, value, trial } => {
                assert_eq!(trial, None);
                assert_eq!(value, one(2));
                assert_eq!(witness.images(), &[x(2, 0), y(2, 0), x(2, 1), y(2, 1)]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            is_identity_randomized(&PoissonElement::zero(2), 1, 2, 1, 0),
            Err(SymplecticError::ZeroInput)
        );
    }

    #[test]
    fn randomized_is_reproducible() {
        // The Darboux image of {z1,z2} − 1 is zero, so the random trials are exercised.
        let z = |i| PoissonElement::generator(2, i).unwrap();
        let f = z(0).bracket(&z(1)).unwrap().sub(&PoissonElement::one(2)).unwrap();
        let a = is_identity_randomized(&f, 1, 2, 10, 42).unwrap();
        let b = is_identity_randomized(&f, 1, 2, 10, 42).unwrap();
        assert_eq!(a, b);
        match a {
            IdentityVerdict::NonIdentity {
                witness,
                value,
                trial: Some(t),
            } => {
                let mut rng = trial_rng(42, t);
                let images: Vec<_> = (0..2).map(|_| random_element(&mut rng, 1, 2, RANDOM_COEFF)).collect();
                assert_eq!(witness.images(), &images[..]);
                assert_eq!(witness.eval_hom(&f).unwrap(), value);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exact_customary_examples() {
        let st4 = standard_customary(1);
        let v = customary_identity_exact(&st4, 1).unwrap();
        assert!(v.identity);
        let v = customary_identity_exact(&st4, 2).unwrap();
        assert!(!v.identity);
        let (phi, value) = v.witness.unwrap();
        assert_eq!(value, Scalar::one());
        assert_eq!(phi.images(), &[x(2, 0), y(2, 0), x(2, 1), y(2, 1)]);
        assert_eq!(phi.eval_hom(&st4).unwrap(), one(2));

        let v = customary_identity_exact(&customary_monomial(1), 1).unwrap();
        let (phi, value) = v.witness.unwrap();
        assert_eq!(value, Scalar::one());
        assert_eq!(phi.images(), &[x(1, 0), y(1, 0)]);

        let z = |i| PoissonElement::generator(2, i).unwrap();
        assert!(matches!(
            customary_identity_exact(&z(0).product(&z(1)).unwrap(), 1),
            Err(SymplecticError::NotCustomary(_))
        ));
    }

    #[test]
    fn st6_on_ps2_is_reported() {
        // Whether St_6 holds on PS_2 is computed, not assumed.
        let st6 = standard_customary(2);
        let exact = customary_identity_exact(&st6, 2).unwrap();
        let random = is_identity_randomized(&st6, 2, 2, 30, 3).unwrap();
        assert_eq!(exact.identity, !random.is_non_identity());
        assert!(!customary_identity_exact(&st6, 3).unwrap().identity);
    }

    #[test]
    fn exact_and_randomized_agree_on_customary_corpus() {
        for k in 1..=3usize {
            let basis = customary_basis(k);
            let mut corpus: Vec<PoissonElement> = basis.clone();
            if k >= 2 {
                corpus.push(standard_customary(k - 1));
            }
            // Signed sums of pairs of basis elements.
            for i in 0..basis.len().min(4) {
                for j in i + 1..basis.len().min(4) {
                    corpus.push(basis[i].sub(&basis[j]).unwrap());
                }
            }
            for q in &corpus {
                for n in 1..=2 {
                    let exact = customary_identity_exact(q, n).unwrap();
                    let random = is_identity_randomized(q, n, 2, 8, 11).unwrap();
                    if let IdentityVerdict::NonIdentity {
                        ref witness, ref value, ..
                    } = random
                    {
                        assert_eq!(&witness.eval_hom(q).unwrap(), value);
                        assert!(!exact.identity, "{q} on PS_{n}");
                    }
                    if let Some((phi, value)) = &exact.witness {
                        assert_eq!(phi.eval_hom(q).unwrap(), SymplecticElement::constant(n, value.clone()));
                    }
                }
            }
        }
    }

    fn arb_ps(n: usize) -> impl Strategy<Value = SymplecticElement> {
        let term = (prop::collection::vec(0u32..3, 2 * n), -3i64..4).prop_map(move |(e, c)| {
            (
                Monomial::from_pairs(e.into_iter().enumerate().map(|(j, k)| (Variable::Coord(j), k))),
                int(c),
            )
        });
        prop::collection::vec(term, 0..4)
            .prop_map(move |ts| SymplecticElement::new(n, RationalPolynomial::from_terms(ts).truncate(4)).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn ps_axioms(n in 1usize..=3, seed in any::<u64>()) {
            let mut rng = trial_rng(seed, 0);
            let a = random_element(&mut rng, n, 2, 2);
            let b = random_element(&mut rng, n, 2, 2);
            let c = random_element(&mut rng, n, 1, 2);
            let ab = a.bracket(&b).unwrap();
            prop_assert!(ab.add(&b.bracket(&a).unwrap()).unwrap().is_zero());
            let j = a.bracket(&b.bracket(&c).unwrap()).unwrap()
                .add(&b.bracket(&c.bracket(&a).unwrap()).unwrap()).unwrap()
                .add(&c.bracket(&ab).unwrap()).unwrap();
            prop_assert!(j.is_zero());
            let lhs = a.bracket(&b.mul(&c).unwrap()).unwrap();
            let rhs = ab.mul(&c).unwrap().add(&b.mul(&a.bracket(&c).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn degree_drop(a in arb_ps(2), b in arb_ps(2)) {
            if let (Some(da), Some(db)) = (a.poly().total_degree(), b.poly().total_degree()) {
                if da > 0 && db > 0 {
                    if let Some(d) = a.bracket(&b).unwrap().poly().total_degree() {
                        prop_assert!(d + 2 <= da + db);
                    }
                }
            }
        }

        #[test]
        fn eval_hom_is_poisson_hom(seed in any::<u64>(), a in crate::freepoisson::tests::arb_element(2, 2), b in crate::freepoisson::tests::arb_element(2, 2)) {
            let mut rng = trial_rng(seed, 1);
            let phi = GeneratorAssignment::new(2, (0..2).map(|_| random_element(&mut rng, 2, 1, 2)).collect()).unwrap();
            let pa = phi.eval_hom(&a).unwrap();
            let pb = phi.eval_hom(&b).unwrap();
            prop_assert_eq!(phi.eval_hom(&a.product(&b).unwrap()).unwrap(), pa.mul(&pb).unwrap());
            prop_assert_eq!(phi.eval_hom(&a.bracket(&b).unwrap()).unwrap(), pa.bracket(&pb).unwrap());
        }

        #[test]
        fn witnesses_survive_inclusion(seed in 0u64..50) {
            let z = |i| PoissonElement::generator(2, i).unwrap();
            let f = z(0).bracket(&z(1)).unwrap().product(&z(0)).unwrap().sub(&z(1).pow(2)).unwrap();
            if let IdentityVerdict::NonIdentity { witness, value, .. } = is_identity_randomized(&f, 1, 2, 5, seed).unwrap() {
                let lifted = witness.embed(2);
                prop_assert_eq!(lifted.eval_hom(&f).unwrap(), value.embed(2));
            }
        }
    }
}
