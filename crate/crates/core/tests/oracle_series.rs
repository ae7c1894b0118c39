use pf_core::freepoisson::PoissonElement;
use pf_core::freiheitssatz::{construct_witness, WitnessConfig};
use pf_core::multiindex::MultiIndex;
use pf_core::polyring::RationalPolynomial;
use pf_core::scalar::int;
use pf_core::series_solver::{SeriesProblem, SeriesSession};
use pf_oracles::fixtures::random_series_problem;
use pf_oracles::series::{classical_series, naive_residual, Classical};
use proptest::prelude::*;

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

fn jet(v: &[u32]) -> RationalPolynomial {
    RationalPolynomial::jet(mi(v))
}

#[test]
fn exp_matches_oracle() {
    let f = &jet(&[1]) - &jet(&[0]);
    let p = SeriesProblem::new(1, f, vec![mi(&[0]), mi(&[1])], vec![int(0)], vec![int(1), int(1)]).unwrap();
    let mut s = SeriesSession::new(p);
    for k in 0..=16 {
        assert_eq!(
            s.coefficient(&mi(&[k])).unwrap(),
            classical_series(&Classical::Exp, k).unwrap()
        );
    }
}

#[test]
fn shifted_sqrt_matches_oracle() {
    for (c, r) in [(1, 1), (4, 2), (9, 3)] {
        let f = &jet(&[0]).pow(2) - &RationalPolynomial::coord(0);
        let p = SeriesProblem::new(1, f, vec![mi(&[0])], vec![int(c)], vec![int(r)]).unwrap();
        let mut s = SeriesSession::new(p);
        for k in 0..=10 {
            let oracle = classical_series(&Classical::SqrtAt(int(c)), k).unwrap();
            assert_eq!(s.coefficient(&mi(&[k])).unwrap(), oracle, "c = {c}, k = {k}");
        }
    }
}

#[test]
fn freiheitssatz_sqrt_series_matches_oracle() {
    let z1 = PoissonElement::generator(2, 0).unwrap();
    let z2 = PoissonElement::generator(2, 1).unwrap();
    let f = z2.pow(2).sub(&z1).unwrap();
    let w = construct_witness(&f, &z1, 6, &WitnessConfig::default(), 0).unwrap();
    assert_eq!(w.seed.center, vec![int(1), int(0)]);
    for k in 0..=w.certified_order {
        let oracle = classical_series(&Classical::SqrtAt(int(1)), k).unwrap();
        assert_eq!(w.series.coefficient(&mi(&[k, 0])), oracle);
    }
}

#[test]
fn random_problems_pass_both_residual_checks() {
    for seed in 0..25 {
        let p = random_series_problem(seed);
        let mut s = SeriesSession::new(p.clone());
        let t = s.truncate(8).unwrap();
        assert!(s.residual_check(8).unwrap(), "seed {seed}: {:?}", p);
        assert!(naive_residual(&p, &t.shifted, 8).unwrap(), "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fresh_sessions_agree(seed in any::<u64>()) {
        let p = random_series_problem(seed);
        let mut a = SeriesSession::new(p.clone());
        let mut b = SeriesSession::new(p.clone());
        let mut order = MultiIndex::up_to_degree(p.coords(), 6);
        let ta = a.truncate(6).unwrap();
        order.reverse();
        for d in &order {
            prop_assert_eq!(b.coefficient(d).unwrap(), ta.coefficient(d));
        }
    }

    #[test]
    fn truncations_are_nested(seed in any::<u64>(), n in 2u32..6) {
        let mut s = SeriesSession::new(random_series_problem(seed));
        let small = s.truncate(n).unwrap();
        let big = s.truncate(n + 1).unwrap();
        prop_assert_eq!(big.shifted.truncate(n), small.shifted);
    }

    #[test]
    fn residuals_hold_for_low_orders(seed in any::<u64>(), n in 2u32..=6) {
        let p = random_series_problem(seed);
        prop_assume!(n >= p.max_order());
        let mut s = SeriesSession::new(p.clone());
        prop_assert!(s.residual_check(n).unwrap());
        let t = s.truncate(n).unwrap();
        prop_assert!(naive_residual(&p, &t.shifted, n).unwrap());
    }
}
