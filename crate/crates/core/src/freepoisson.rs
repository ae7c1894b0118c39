//! The free Poisson algebra `k{z_1, …, z_m}`.
//!
//! Realised as the symmetric algebra on the free Lie algebra: a basis is given by
//! sorted products `e_{i_1} e_{i_2} ⋯ e_{i_k}` (`i_1 ≤ … ≤ i_k`) of Lyndon words, where
//! the words are enumerated by length and then lexicographically, so for two generators
//! `e_1 = x`, `e_2 = y`, `e_3 = {x,y}`. The bracket extends the Lie bracket of words by
//! the Leibniz rule in each argument.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::freelie::{bracket_words, GenNames, LieElement, LieError, LyndonWord};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("generator sets differ: {left} vs {right} generators")]
    RankMismatch { left: usize, right: usize },
    #[error("the zero element has no degree")]
    ZeroElement,
}

/// A sorted multiset of Lyndon words; the empty multiset is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PoissonMonomial(Vec<LyndonWord>);

impl PoissonMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut words: Vec<LyndonWord>) -> Self {
        words.sort_by(|a, b| a.basis_cmp(b));
        Self(words)
    }

    pub fn words(&self) -> &[LyndonWord] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|w| w.len() as u32).sum()
    }

    pub fn degree_in(&self, i: u8) -> u32 {
        self.0.iter().map(|w| w.count(i)).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Self::new(v)
    }

    fn without(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(i);
        Self(v)
    }

    fn with(&self, w: &LyndonWord) -> Self {
        let mut v = self.0.clone();
        let pos = v.partition_point(|x| x.basis_cmp(w) != Ordering::Greater);
        v.insert(pos, w.clone());
        Self(v)
    }

    /// Built only from generators (`e_1, …, e_m`), i.e. a commutative monomial.
    pub fn is_commutative(&self) -> bool {
        self.0.iter().all(LyndonWord::is_letter)
    }

    pub fn render(&self, names: GenNames) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            let base = self.0[i].bracketed(names);
            parts.push(if j - i == 1 { base } else { format!("{base}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }
}

impl Ord for PoissonMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                match a.basis_cmp(b) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            self.0.len().cmp(&other.0.len()).reverse()
        })
    }
}

impl PartialOrd for PoissonMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree data of a nonzero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degrees {
    pub total: u32,
    /// `deg_{z_i}` for each generator.
    pub per_generator: Vec<u32>,
    /// Homogeneous components keyed by total degree.
    pub components: BTreeMap<u32, PoissonElement>,
    /// Multihomogeneous components keyed by the per-generator degree vector.
    pub multihomogeneous: BTreeMap<Vec<u32>, PoissonElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoissonElement {
    rank: usize,
    terms: BTreeMap<PoissonMonomial, Scalar>,
}

impl PoissonElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        let mut e = Self::zero(rank);
        e.add_term(PoissonMonomial::one(), c);
        e
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Scalar::one())
    }

    pub fn generator(rank: usize, i: usize) -> Result<Self, PoissonError> {
        if i >= rank {
            return Err(LieError::GeneratorOutOfRange { index: i, rank }.into());
        }
        Ok(Self::word(rank, LyndonWord::letter(i as u8)))
    }

    fn word(rank: usize, w: LyndonWord) -> Self {
        let mut e = Self::zero(rank);
        e.add_term(PoissonMonomial(vec![w]), Scalar::one());
        e
    }

    pub fn from_lie(l: &LieElement) -> Self {
        let mut e = Self::zero(l.rank());
        for (w, c) in l.terms() {
            e.add_term(PoissonMonomial(vec![w.clone()]), c.clone());
        }
        e
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (PoissonMonomial, Scalar)>,
    ) -> Result<Self, PoissonError> {
        let mut e = Self::zero(rank);
        for (m, c) in terms {
            if let Some(w) = m.0.iter().find(|w| w.min_rank() > rank) {
                return Err(LieError::GeneratorOutOfRange {
                    index: w.min_rank() - 1,
                    rank,
                }
                .into());
            }
            e.add_term(m, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, m: PoissonMonomial, c: Scalar) {
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

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PoissonMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PoissonMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&PoissonMonomial::one()).cloned(),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<(), PoissonError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(PoissonError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PoissonError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PoissonError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.rank);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        }
        out
    }

    /// The commutative product: multiset union on basis monomials.
    pub fn product(&self, other: &Self) -> Result<Self, PoissonError> {
        self.check(other)?;
        let mut out = Self::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..e {
            acc = acc.product(self).expect("same rank");
        }
        acc
    }

    /// The Poisson bracket. On basis monomials `u = p_1⋯p_k`, `v = q_1⋯q_l` it is
    /// `Σ_{i,j} (u∖p_i)(v∖q_j)[p_i, q_j]`.
    pub fn bracket(&self, other: &Self) -> Result<Self, PoissonError> {
        self.check(other)?;
        let mut out = Self::zero(self.rank);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for (i, p) in u.0.iter().enumerate() {
                    let u_rest = u.without(i);
                    for (j, q) in v.0.iter().enumerate() {
                        let lie = bracket_words(p, q)?;
                        if lie.is_empty() {
                            continue;
                        }
                        let rest = u_rest.mul(&v.without(j));
                        for (w, c) in lie.iter() {
                            out.add_term(rest.with(w), &ab * c);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(PoissonMonomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.degree_in(i as u8)).max().unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.degree_in(i) > 0
    }

    pub fn homogeneous_component(&self, degree: u32) -> Self {
        self.filter(|m| m.degree() == degree)
    }

    /// Part of `deg_{z_i}` exactly `degree`.
    pub fn component_in(&self, i: usize, degree: u32) -> Self {
        self.filter(|m| m.degree_in(i as u8) == degree)
    }

    fn filter(&self, keep: impl Fn(&PoissonMonomial) -> bool) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Result<Degrees, PoissonError> {
        let total = self.degree().ok_or(PoissonError::ZeroElement)?;
        let per_generator = (0..self.rank).map(|i| self.degree_in(i)).collect();
        let mut components: BTreeMap<u32, PoissonElement> = BTreeMap::new();
        let mut multihomogeneous: BTreeMap<Vec<u32>, PoissonElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            components
                .entry(m.degree())
                .or_insert_with(|| Self::zero(self.rank))
                .add_term(m.clone(), c.clone());
            let key: Vec<u32> = (0..self.rank).map(|i| m.degree_in(i as u8)).collect();
            multihomogeneous
                .entry(key)
                .or_insert_with(|| Self::zero(self.rank))
                .add_term(m.clone(), c.clone());
        }
        Ok(Degrees {
            total,
            per_generator,
            components,
            multihomogeneous,
        })
    }

    /// Every monomial has degree 0 or 1 in each generator and they all share one
    /// multidegree.
    pub fn is_multilinear(&self) -> bool {
        let mut keys = self
            .terms
            .keys()
            .map(|m| (0..self.rank).map(|i| m.degree_in(i as u8)).collect::<Vec<_>>());
        let Some(first) = keys.next() else {
            return true;
        };
        first.iter().all(|&d| d <= 1) && keys.all(|k| k == first)
    }

    /// `(f1, f2)` with `f1` the part built from generators only and `f2 = self − f1`,
    /// which lies in the ideal generated by the brackets.
    pub fn split_commutative_part(&self) -> (Self, Self) {
        (
            self.filter(PoissonMonomial::is_commutative),
            self.filter(|m| !m.is_commutative()),
        )
    }

    /// Image under the homomorphism determined by `images[i] = φ(z_i)`.
    pub fn evaluate<T: PoissonTarget>(&self, target: &T, images: &[T::Elem]) -> Result<T::Elem, T::Error> {
        let mut words: HashMap<LyndonWord, T::Elem> = HashMap::new();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for w in &m.0 {
                let img = eval_word(target, images, w, &mut words)?;
                term = target.mul(&term, &img)?;
            }
            acc = target.add(&acc, &term)?;
        }
        Ok(acc)
    }

    pub fn display_with(&self, names: GenNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Scalar::zero();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = if neg { -c } else { c.clone() };
            if m.0.is_empty() {
                out.push_str(&scalar::render(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&scalar::render(&abs));
                    out.push('*');
                }
                out.push_str(&m.render(names));
            }
        }
        out
    }
}

impl fmt::Display for PoissonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(GenNames::Z))
    }
}

fn eval_word<T: PoissonTarget>(
    target: &T,
    images: &[T::Elem],
    w: &LyndonWord,
    memo: &mut HashMap<LyndonWord, T::Elem>,
) -> Result<T::Elem, T::Error> {
    if let Some(e) = memo.get(w) {
        return Ok(e.clone());
    }
    let value = match w.standard_factorization() {
        Err(_) => target.image(images, w.letters()[0] as usize)?,
        Ok((u, v)) => {
            let a = eval_word(target, images, &u, memo)?;
            let b = eval_word(target, images, &v, memo)?;
            target.bracket(&a, &b)?
        }
    };
    memo.insert(w.clone(), value.clone());
    Ok(value)
}

/// A Poisson algebra that free Poisson elements can be evaluated into.
pub trait PoissonTarget {
    type Elem: Clone;
    type Error;

    fn zero(&self) -> Self::Elem;
    fn constant(&self, c: Scalar) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    /// Image of generator `i`, or an error if the assignment does not cover it.
    fn image(&self, images: &[Self::Elem], i: usize) -> Result<Self::Elem, Self::Error>;
}

/// The free Poisson algebra itself, used for endomorphisms.
#[derive(Debug, Clone, Copy)]
pub struct FreePoisson {
    pub rank: usize,
}

impl PoissonTarget for FreePoisson {
    type Elem = PoissonElement;
    type Error = PoissonError;

    fn zero(&self) -> PoissonElement {
        PoissonElement::zero(self.rank)
    }
    fn constant(&self, c: Scalar) -> PoissonElement {
        PoissonElement::constant(self.rank, c)
    }
    fn add(&self, a: &PoissonElement, b: &PoissonElement) -> Result<PoissonElement, PoissonError> {
        a.add(b)
    }
    fn mul(&self, a: &PoissonElement, b: &PoissonElement) -> Result<PoissonElement, PoissonError> {
        a.product(b)
    }
    fn bracket(&self, a: &PoissonElement, b: &PoissonElement) -> Result<PoissonElement, PoissonError> {
        a.bracket(b)
    }
    fn image(&self, images: &[PoissonElement], i: usize) -> Result<PoissonElement, PoissonError> {
        images.get(i).cloned().ok_or(
            LieError::GeneratorOutOfRange {
                index: i,
                rank: images.len(),
            }
            .into(),
        )
    }
}

/// Sign of a permutation given as a sequence of distinct values.
fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Pairings `(i_1,i_2),…,(i_{2n−1},i_{2n})` with `i_{2k−1} < i_{2k}` and increasing
/// first entries, flattened to the sequence `τ(1), …, τ(2n)` (0-based values).
pub fn customary_pairings(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        let a = remaining[0];
        for k in 1..remaining.len() {
            let b = remaining[k];
            let rest: Vec<usize> = remaining[1..].iter().copied().filter(|&r| r != b).collect();
            prefix.push(a);
            prefix.push(b);
            go(&rest, prefix, out);
            prefix.truncate(prefix.len() - 2);
        }
    }
    let mut out = Vec::new();
    let all: Vec<usize> = (0..2 * n).collect();
    go(&all, &mut Vec::new(), &mut out);
    out
}

fn customary_product(rank: usize, pairing: &[usize]) -> PoissonElement {
    let words = pairing
        .chunks(2)
        .map(|p| LyndonWord::new(vec![p[0] as u8, p[1] as u8]).expect("a < b"))
        .collect();
    PoissonElement::from_terms(rank, [(PoissonMonomial::new(words), Scalar::one())]).expect("indices below rank")
}

/// The `(2n−1)!!` basis elements `{z_{i1},z_{i2}}⋯{z_{i_{2n−1}},z_{i_{2n}}}` of the
/// customary polynomials in `2n` variables.
pub fn customary_basis(n: usize) -> Vec<PoissonElement> {
    customary_pairings(n)
        .iter()
        .map(|p| customary_product(2 * n, p))
        .collect()
}

/// `{z_1,z_2}{z_3,z_4}⋯{z_{2n−1},z_{2n}}`.
pub fn customary_monomial(n: usize) -> PoissonElement {
    let seq: Vec<usize> = (0..2 * n).collect();
    customary_product(2 * n, &seq)
}

/// The standard customary polynomial in `2n+2` variables: the signed sum over the
/// customary pairings, `St_4` for `n = 1`.
pub fn standard_customary(n: usize) -> PoissonElement {
    let k = n + 1;
    let mut out = PoissonElement::zero(2 * k);
    for p in customary_pairings(k) {
        let term = customary_product(2 * k, &p).scale(&Scalar::from_integer(permutation_sign(&p).into()));
        out = out.add(&term).expect("same rank");
    }
    out
}
