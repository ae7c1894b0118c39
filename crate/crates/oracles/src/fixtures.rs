//! Random inputs for property suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use pf_core::freelie::lyndon_words;
use pf_core::freepoisson::{PoissonElement, PoissonMonomial};
use pf_core::multiindex::MultiIndex;
use pf_core::polyring::{Monomial, RationalPolynomial, Variable};
use pf_core::series_solver::SeriesProblem;
use pf_core::symplectic::SymplecticElement;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-3..=3)), BigInt::from(rng.gen_range(1..=2)))
}

fn random_poly<R: Rng>(rng: &mut R, vars: &[Variable], max_degree: u32, terms: usize) -> RationalPolynomial {
    let mut out = RationalPolynomial::zero();
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let pairs: Vec<(Variable, u32)> = (0..degree)
            .map(|_| (vars.choose(rng).expect("nonempty").clone(), 1))
            .collect();
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-3..=3)));
        out.add_term(Monomial::from_pairs(pairs), c);
    }
    out
}

/// A valid problem with `n ≤ 2` coordinates, `m ≤ 3` derivative indices and
/// `deg f ≤ 3`.
///
/// `f = k·u_top·(1 + q) + g` with `q`, `g` free of `u_top`; every seed value except
/// `c^{α_m}` is drawn at random and `c^{α_m}` is solved from `f(C̄) = 0`.
pub fn random_series_problem(seed: u64) -> SeriesProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(1..=2usize);
        let m = rng.gen_range(1..=3usize);
        let mut pool = MultiIndex::up_to_degree(n, 2);
        pool.shuffle(&mut rng);
        let mut alphas: Vec<MultiIndex> = pool.into_iter().take(m).collect();
        alphas.sort();
        let top = alphas.last().expect("m ≥ 1").clone();
        let mut lower: Vec<Variable> = (0..n).map(Variable::Coord).collect();
        lower.extend(alphas[..alphas.len() - 1].iter().cloned().map(Variable::Jet));
        let q = random_poly(&mut rng, &lower, 2, 2);
        let g = random_poly(&mut rng, &lower, 3, 3);
        let k = BigRational::from_integer(BigInt::from(*[-2, -1, 1, 2, 3].choose(&mut rng).unwrap()));
        let center: Vec<BigRational> = (0..n).map(|_| small(&mut rng)).collect();
        let mut jets: Vec<BigRational> = (0..m - 1).map(|_| small(&mut rng)).collect();
        let value = |v: &Variable| match v {
            Variable::Coord(j) => center.get(*j).cloned(),
            Variable::Jet(a) => alphas.iter().position(|b| b == a).and_then(|i| jets.get(i).cloned()),
        };
        let one_plus_q = &RationalPolynomial::one() + &q;
        let pivot = &k * one_plus_q.evaluate(value).expect("lower variables only");
        if pivot.is_zero() {
            continue;
        }
        let g0 = g.evaluate(value).expect("lower variables only");
        jets.push(-g0 / &pivot);
        let u = RationalPolynomial::jet(top);
        let f = &(&u * &one_plus_q).scale(&k) + &g;
        return SeriesProblem::new(n, f, alphas, center, jets).expect("constructed to satisfy the hypotheses");
    }
}

fn nonzero_coefficient<R: Rng>(rng: &mut R, coeff: i64) -> BigRational {
    let c = rng.gen_range(1..=coeff);
    BigRational::from_integer(BigInt::from(if rng.gen() { c } else { -c }))
}

/// A sum of at most `terms` Poisson monomials of `k{z_1..z_rank}`, each of total degree
/// `≤ max_degree` (a Lyndon word of length `l` counts `l`).
pub fn random_poisson_element<R: Rng>(
    rng: &mut R,
    rank: usize,
    max_degree: u32,
    terms: usize,
    coeff: i64,
) -> PoissonElement {
    let words: Vec<_> = (1..=max_degree as usize).map(|l| lyndon_words(rank, l)).collect();
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut left = rng.gen_range(0..=max_degree) as usize;
        let mut factors = Vec::new();
        while left > 0 {
            let l = rng.gen_range(1..=left);
            if let Some(w) = words[l - 1].choose(rng) {
                factors.push(w.clone());
                left -= l;
            }
        }
        out.push((PoissonMonomial::new(factors), nonzero_coefficient(rng, coeff)));
    }
    PoissonElement::from_terms(rank, out).expect("words fit the rank")
}

/// A sparse element of `PS_rank` with at most `terms` monomials of degree `≤ max_degree`.
pub fn random_sparse_symplectic<R: Rng>(
    rng: &mut R,
    rank: usize,
    max_degree: u32,
    terms: usize,
    coeff: i64,
) -> SymplecticElement {
    let coords: Vec<Variable> = (0..2 * rank).map(Variable::Coord).collect();
    let mut p = RationalPolynomial::zero();
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let pairs: Vec<(Variable, u32)> = (0..degree)
            .map(|_| (coords.choose(rng).expect("rank ≥ 1").clone(), 1))
            .collect();
        p.add_term(Monomial::from_pairs(pairs), nonzero_coefficient(rng, coeff));
    }
    SymplecticElement::new(rank, p).expect("coordinates only")
}
