//! Brackets by expansion in the free associative algebra.
//!
//! A Lyndon word `w` stands for its standard bracketing `P(w)`, expanded into a
//! noncommutative polynomial. `[P(u), P(v)] = P(u)P(v) − P(v)P(u)` is decomposed back
//! into `Σ c_w P(w)` by repeatedly stripping the lex-smallest word, which is always
//! Lyndon with coefficient `c_w`. The Poisson bracket of products is then the Leibniz
//! expansion over all factor pairs.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use pf_core::freelie::LyndonWord;
use pf_core::freepoisson::{PoissonElement, PoissonMonomial};

use crate::OracleError;

type Assoc = BTreeMap<Vec<u8>, BigRational>;

/// Total word length allowed across both arguments.
pub const LENGTH_CAP: usize = 12;

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// `(u, v)` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| (&w[..i], &w[i..]))
}

fn add_into(acc: &mut Assoc, w: Vec<u8>, c: BigRational) {
    let e = acc.entry(w.clone()).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

fn assoc_mul(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            add_into(&mut out, w, cu * cv);
        }
    }
    out
}

fn commutator(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = assoc_mul(a, b);
    for (w, c) in assoc_mul(b, a) {
        add_into(&mut out, w, -c);
    }
    out
}

/// `P(w)` in the free associative algebra.
pub fn expand(w: &[u8]) -> Assoc {
    match standard_factorization(w) {
        None => Assoc::from([(w.to_vec(), BigRational::one())]),
        Some((u, v)) => commutator(&expand(u), &expand(v)),
    }
}

/// Coefficients `c_w` with `a = Σ c_w P(w)`, for `a` a Lie element.
pub fn decompose(mut a: Assoc) -> BTreeMap<Vec<u8>, BigRational> {
    let mut out = BTreeMap::new();
    while let Some((w, c)) = a.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        assert!(is_lyndon(&w), "lex-smallest word {w:?} of a Lie element is not Lyndon");
        for (v, d) in expand(&w) {
            add_into(&mut a, v, -(&c * d));
        }
        out.insert(w, c);
    }
    out
}

/// `[u, v]` for Lyndon words, in the Lyndon basis.
pub fn naive_lie_bracket(u: &[u8], v: &[u8]) -> BTreeMap<Vec<u8>, BigRational> {
    decompose(commutator(&expand(u), &expand(v)))
}

type Sym = BTreeMap<Vec<Vec<u8>>, BigRational>;

fn sym_add(acc: &mut Sym, mut m: Vec<Vec<u8>>, c: BigRational) {
    m.sort();
    let e = acc.entry(m.clone()).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&m);
    }
}

fn to_sym(a: &PoissonElement) -> Sym {
    let mut out = Sym::new();
    for (m, c) in a.terms() {
        sym_add(
            &mut out,
            m.words().iter().map(|w| w.letters().to_vec()).collect(),
            c.clone(),
        );
    }
    out
}

fn length(a: &Sym) -> usize {
    a.keys()
        .map(|m| m.iter().map(Vec::len).sum::<usize>())
        .max()
        .unwrap_or(0)
}

/// `{a, b}` by the Leibniz rule over factor pairs and associative expansion of each
/// word bracket.
pub fn naive_free_bracket(a: &PoissonElement, b: &PoissonElement) -> Result<PoissonElement, OracleError> {
    let (sa, sb) = (to_sym(a), to_sym(b));
    let total = length(&sa) + length(&sb);
    if total > LENGTH_CAP {
        return Err(OracleError::DegreeCap(format!(
            "combined word length {total} > {LENGTH_CAP}"
        )));
    }
    let mut out = Sym::new();
    for (u, cu) in &sa {
        for (v, cv) in &sb {
            for i in 0..u.len() {
                for j in 0..v.len() {
                    let mut rest: Vec<Vec<u8>> = Vec::new();
                    rest.extend(u.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, w)| w.clone()));
                    rest.extend(v.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, w)| w.clone()));
                    for (w, c) in naive_lie_bracket(&u[i], &v[j]) {
                        let mut m = rest.clone();
                        m.push(w);
                        sym_add(&mut out, m, cu * cv * c);
                    }
                }
            }
        }
    }
    let rank = a.rank().max(b.rank());
    let terms = out.into_iter().map(|(m, c)| {
        let words = m
            .into_iter()
            .map(|w| LyndonWord::new(w).expect("decomposition yields Lyndon words"))
            .collect();
        (PoissonMonomial::new(words), c)
    });
    Ok(PoissonElement::from_terms(rank, terms).expect("letters below rank"))
}

/// Number of Lyndon words of the given length over `rank` letters, by enumerating
/// every word.
pub fn brute_lyndon_count(rank: u8, len: usize) -> usize {
    let mut count = 0;
    let mut w = vec![0u8; len];
    loop {
        if is_lyndon(&w) {
            count += 1;
        }
        let Some(pos) = (0..len).rev().find(|&i| w[i] + 1 < rank) else {
            return count;
        };
        w[pos] += 1;
        for x in &mut w[pos + 1..] {
            *x = 0;
        }
    }
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1i64, 2u64);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Witt's necklace formula `(1/n) Σ_{d|n} μ(d) r^{n/d}`.
pub fn witt_dimension(rank: u64, n: u32) -> u64 {
    let total: i64 = (1..=n as u64)
        .filter(|d| (n as u64).is_multiple_of(*d))
        .map(|d| mobius(d) * (rank as i64).pow(n / d as u32))
        .sum();
    (total / n as i64) as u64
}
