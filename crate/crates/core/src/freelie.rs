//! The free Lie algebra on generators `z_1, …, z_m` in the Lyndon basis.
//!
//! Letters are generator indices `0..m`, ordered numerically. A word is Lyndon when it is
//! strictly smaller than each of its proper suffixes; every Lyndon word `w` of length at
//! least two has a standard factorization `w = u·v` with `v` its longest proper Lyndon
//! suffix, and the iterated bracket `[b(u), b(v)]` gives the basis element for `w`.
//!
//! Brackets of basis elements are rewritten to Lyndon normal form by the classical
//! rule: for Lyndon `u < v`, `[u, v]` is the basis element `uv` when `u` is a letter or
//! the right standard factor of `u` is `≥ v`; otherwise, with `u = (u1, u2)`,
//! `[u, v] = [u1, [u2, v]] − [u2, [u1, v]]` (Jacobi). Results are memoised per word
//! pair in a process-wide table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{self, Scalar};

/// Hard cap on the support of any intermediate bracket expansion.
pub const MAX_SUPPORT: usize = 500_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("empty word")]
    EmptyWord,
    #[error("word {0:?} is not Lyndon")]
    NotLyndon(Vec<u8>),
    #[error("standard factorization needs a word of length at least 2")]
    TooShort,
    #[error("generator sets differ: {left} vs {right} generators")]
    RankMismatch { left: usize, right: usize },
    #[error("generator index {index} out of range for {rank} generators")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("bracket expansion exceeded {0} terms")]
    Budget(usize),
}

/// How generators are named when printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GenNames {
    /// `z1, z2, …`
    #[default]
    Z,
    /// `x, y` (two generators), `z3…` beyond.
    Xy,
}

impl GenNames {
    pub fn name(self, i: u8) -> String {
        match (self, i) {
            (GenNames::Xy, 0) => "x".into(),
            (GenNames::Xy, 1) => "y".into(),
            _ => format!("z{}", i + 1),
        }
    }
}

pub fn is_lyndon(w: &[u8]) -> Result<bool, LieError> {
    if w.is_empty() {
        return Err(LieError::EmptyWord);
    }
    Ok((1..w.len()).all(|i| w < &w[i..]))
}

/// A Lyndon word. The derived order is the lexicographic order on words, in which a
/// proper prefix is smaller.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord(Vec<u8>);

impl LyndonWord {
    pub fn new(letters: Vec<u8>) -> Result<Self, LieError> {
        if is_lyndon(&letters)? {
            Ok(Self(letters))
        } else {
            Err(LieError::NotLyndon(letters))
        }
    }

    pub fn letter(i: u8) -> Self {
        Self(vec![i])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_letter(&self) -> bool {
        self.0.len() == 1
    }

    /// Largest letter plus one.
    pub fn min_rank(&self) -> usize {
        self.0.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// Number of occurrences of generator `i`.
    pub fn count(&self, i: u8) -> u32 {
        self.0.iter().filter(|&&l| l == i).count() as u32
    }

    /// `w = u·v` with `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Result<(LyndonWord, LyndonWord), LieError> {
        if self.0.len() < 2 {
            return Err(LieError::TooShort);
        }
        let split = (1..self.0.len())
            .find(|&i| is_lyndon(&self.0[i..]).unwrap_or(false))
            .expect("the last letter is always a Lyndon suffix");
        Ok((
            LyndonWord(self.0[..split].to_vec()),
            LyndonWord(self.0[split..].to_vec()),
        ))
    }

    /// Order used to enumerate the basis `e_1, e_2, …`: length first, then lex.
    pub fn basis_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    pub fn juxtaposed(&self, names: GenNames) -> String {
        self.0.iter().map(|&l| names.name(l)).collect()
    }

    /// Standard bracketing, e.g. `{x,{x,y}}` for `xxy`.
    pub fn bracketed(&self, names: GenNames) -> String {
        match self.standard_factorization() {
            Ok((u, v)) => format!("{{{},{}}}", u.bracketed(names), v.bracketed(names)),
            Err(_) => names.name(self.0[0]),
        }
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.juxtaposed(GenNames::Z))
    }
}

/// All Lyndon words of exactly `length` letters over `rank` generators, in lex order
/// (Duval's generation algorithm).
pub fn lyndon_words(rank: usize, length: usize) -> Vec<LyndonWord> {
    let mut out = Vec::new();
    if rank == 0 || length == 0 {
        return out;
    }
    let top = (rank - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == length {
            out.push(LyndonWord(w.clone()));
        }
        let m = w.len();
        while w.len() < length {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

type Combination = Arc<Vec<(LyndonWord, Scalar)>>;

fn memo() -> &'static Mutex<HashMap<(LyndonWord, LyndonWord), Combination>> {
    static MEMO: OnceLock<Mutex<HashMap<(LyndonWord, LyndonWord), Combination>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn accumulate(acc: &mut BTreeMap<LyndonWord, Scalar>, w: &LyndonWord, c: Scalar) -> Result<(), LieError> {
    if c.is_zero() {
        return Ok(());
    }
    if let Some(x) = acc.get_mut(w) {
        *x += c;
        if x.is_zero() {
            acc.remove(w);
        }
    } else {
        if acc.len() >= MAX_SUPPORT {
            return Err(LieError::Budget(MAX_SUPPORT));
        }
        acc.insert(w.clone(), c);
    }
    Ok(())
}

/// `[u, v]` for Lyndon words, expanded in the Lyndon basis.
pub fn bracket_words(u: &LyndonWord, v: &LyndonWord) -> Result<Combination, LieError> {
    let key = (u.clone(), v.clone());
    if let Some(hit) = memo().lock().expect("bracket memo poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let result: Vec<(LyndonWord, Scalar)> = if u == v {
        Vec::new()
    } else if u > v {
        bracket_words(v, u)?.iter().map(|(w, c)| (w.clone(), -c)).collect()
    } else {
        let direct = match u.standard_factorization() {
            Err(_) => None,
            Ok((u1, u2)) => (u2 < *v).then_some((u1, u2)),
        };
        match direct {
            None => {
                let mut w = u.0.clone();
                w.extend_from_slice(&v.0);
                vec![(LyndonWord(w), Scalar::one())]
            }
            Some((u1, u2)) => {
                let mut acc = BTreeMap::new();
                for (w, c) in bracket_words(&u2, v)?.iter() {
                    for (r, d) in bracket_words(&u1, w)?.iter() {
                        accumulate(&mut acc, r, c * d)?;
                    }
                }
                for (w, c) in bracket_words(&u1, v)?.iter() {
                    for (r, d) in bracket_words(&u2, w)?.iter() {
                        accumulate(&mut acc, r, -(c * d))?;
                    }
                }
                acc.into_iter().collect()
            }
        }
    };
    let result = Arc::new(result);
    memo()
        .lock()
        .expect("bracket memo poisoned")
        .insert(key, result.clone());
    Ok(result)
}

/// A finite linear combination of Lyndon words over `rank` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    rank: usize,
    terms: BTreeMap<LyndonWord, Scalar>,
}

impl LieElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(rank: usize, i: usize) -> Result<Self, LieError> {
        if i >= rank {
            return Err(LieError::GeneratorOutOfRange { index: i, rank });
        }
        Self::word(rank, LyndonWord::letter(i as u8))
    }

    pub fn word(rank: usize, w: LyndonWord) -> Result<Self, LieError> {
        Self::from_terms(rank, [(w, Scalar::one())])
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (LyndonWord, Scalar)>) -> Result<Self, LieError> {
        let mut acc = BTreeMap::new();
        for (w, c) in terms {
            if w.min_rank() > rank {
                return Err(LieError::GeneratorOutOfRange {
                    index: w.min_rank() - 1,
                    rank,
                });
            }
            accumulate(&mut acc, &w, c)?;
        }
        Ok(Self { rank, terms: acc })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LyndonWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &LyndonWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Word length if every term has the same length.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(LyndonWord::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    fn check(&self, other: &Self) -> Result<(), LieError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(LieError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LieError> {
        self.check(other)?;
        let mut acc = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut acc, w, c.clone())?;
        }
        Ok(Self {
            rank: self.rank,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            rank: self.rank,
            terms: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect()
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LieError> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn bracket(&self, other: &Self) -> Result<Self, LieError> {
        self.check(other)?;
        let mut acc = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for (w, c) in bracket_words(u, v)?.iter() {
                    accumulate(&mut acc, w, &ab * c)?;
                }
            }
        }
        Ok(Self {
            rank: self.rank,
            terms: acc,
        })
    }

    pub fn display_with(&self, names: GenNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut words: Vec<_> = self.terms.iter().collect();
        words.sort_by(|a, b| a.0.basis_cmp(b.0));
        let mut out = String::new();
        for (i, (w, c)) in words.into_iter().enumerate() {
            let neg = c < &Scalar::zero();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = if neg { -c } else { c.clone() };
            if !abs.is_one() {
                out.push_str(&scalar::render(&abs));
                out.push('*');
            }
            out.push_str(&w.juxtaposed(names));
        }
        out
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(GenNames::Z))
    }
}
