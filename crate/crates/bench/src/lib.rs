//! Fixed workloads shared by the benchmarks.

use pf_core::automorphisms::{random_tame, PolyEndo};
use pf_core::freelie::{lyndon_words, LieElement};
use pf_core::freepoisson::PoissonElement;
use pf_core::multiindex::MultiIndex;
use pf_core::polyring::RationalPolynomial;
use pf_core::scalar::int;
use pf_core::series_solver::SeriesProblem;
use pf_core::symplectic::{random_element, trial_rng, SymplecticElement};

/// Sum of all Lyndon words of `length` over two letters, with coefficients 1, 2, 3, …
pub fn lie_sum(length: usize) -> LieElement {
    let terms = lyndon_words(2, length).into_iter().zip(1..).map(|(w, c)| (w, int(c)));
    LieElement::from_terms(2, terms).expect("two letters")
}

/// `(x + {x,y})^k` and `(y + {y,{x,y}})^k` in `k{x,y}`.
pub fn poisson_pair(k: u32) -> (PoissonElement, PoissonElement) {
    let x = PoissonElement::generator(2, 0).expect("rank 2");
    let y = PoissonElement::generator(2, 1).expect("rank 2");
    let e3 = x.bracket(&y).expect("same rank");
    let a = x.add(&e3).expect("same rank").pow(k);
    let b = y.add(&y.bracket(&e3).expect("same rank")).expect("same rank").pow(k);
    (a, b)
}

/// Two dense random elements of `PS_rank`.
pub fn symplectic_pair(rank: usize, degree: u32) -> (SymplecticElement, SymplecticElement) {
    let mut rng = trial_rng(0, 0);
    (
        random_element(&mut rng, rank, degree, 3),
        random_element(&mut rng, rank, degree, 3),
    )
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

/// `T' = T`, `T(0) = 1`.
pub fn exp_problem() -> SeriesProblem {
    let f = &RationalPolynomial::jet(mi(&[1])) - &RationalPolynomial::jet(mi(&[0]));
    SeriesProblem::new(1, f, vec![mi(&[0]), mi(&[1])], vec![int(0)], vec![int(1), int(1)]).expect("valid")
}

/// `T_x = T_yy + T^2` around the origin with `T = T_yy = 1` there.
pub fn heat_problem() -> SeriesProblem {
    let u = |a: &[u32]| RationalPolynomial::jet(mi(a));
    let f = &(&u(&[1, 0]) - &u(&[0, 2])) - &u(&[0, 0]).pow(2);
    SeriesProblem::new(
        2,
        f,
        vec![mi(&[0, 0]), mi(&[0, 2]), mi(&[1, 0])],
        vec![int(0), int(0)],
        vec![int(1), int(1), int(2)],
    )
    .expect("valid")
}

/// A tame map built from `moves` random elementary moves of degree ≤ 3.
pub fn tame_map(seed: u64, moves: usize) -> PolyEndo {
    random_tame(&mut trial_rng(seed, 0), moves, 3, 2).1
}
