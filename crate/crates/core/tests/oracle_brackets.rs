use pf_core::freelie::{lyndon_words, LieElement, LyndonWord};
use pf_core::freepoisson::{customary_basis, PoissonElement, PoissonMonomial};
use pf_core::scalar::int;
use pf_oracles::lie::{brute_lyndon_count, naive_free_bracket, naive_lie_bracket, witt_dimension};
use pf_oracles::perms::enumerate_t2n;
use pf_oracles::OracleReport;
use proptest::prelude::*;

fn gen(i: usize) -> PoissonElement {
    PoissonElement::generator(2, i).unwrap()
}

fn e3() -> PoissonElement {
    gen(0).bracket(&gen(1)).unwrap()
}

#[test]
fn spec_examples_match() {
    let (x, y) = (gen(0), gen(1));
    let lhs = naive_free_bracket(&x, &y.pow(2)).unwrap();
    assert_eq!(lhs, y.product(&e3()).unwrap().scale(&int(2)));
    assert_eq!(lhs, x.bracket(&y.pow(2)).unwrap());

    let xy = x.product(&y).unwrap();
    let lhs = naive_free_bracket(&xy, &x).unwrap();
    assert_eq!(lhs, x.product(&e3()).unwrap().neg());
    assert_eq!(lhs, xy.bracket(&x).unwrap());
}

#[test]
fn word_brackets_match_up_to_length_seven() {
    let words: Vec<LyndonWord> = (1..=5).flat_map(|l| lyndon_words(2, l)).collect();
    for u in &words {
        for v in &words {
            if u.len() + v.len() > 7 {
                continue;
            }
            let production = LieElement::word(2, u.clone())
                .unwrap()
                .bracket(&LieElement::word(2, v.clone()).unwrap())
                .unwrap();
            let oracle = naive_lie_bracket(u.letters(), v.letters());
            assert_eq!(production.terms().count(), oracle.len(), "[{u:?}, {v:?}]");
            for (w, c) in production.terms() {
                assert_eq!(oracle.get(w.letters()), Some(c), "[{u:?}, {v:?}] at {w:?}");
            }
        }
    }
}

#[test]
fn lyndon_counts_match_witt_formula() {
    for rank in 2..=3u8 {
        for n in 1..=6usize {
            let production = lyndon_words(rank as usize, n).len();
            assert_eq!(production, brute_lyndon_count(rank, n));
            assert_eq!(production as u64, witt_dimension(rank as u64, n as u32));
        }
    }
}

#[test]
fn customary_basis_matches_permutation_count() {
    for n in 1..=3 {
        let r = OracleReport::compare(
            format!("customary basis n={n}"),
            &customary_basis(n).len(),
            &enumerate_t2n(n).unwrap().len(),
        );
        assert!(r.equal, "{r}");
    }
}

fn arb_monomial() -> impl Strategy<Value = PoissonMonomial> {
    let words: Vec<LyndonWord> = (1..=3).flat_map(|l| lyndon_words(2, l)).collect();
    prop::collection::vec(prop::sample::select(words), 0..=3).prop_map(PoissonMonomial::new)
}

fn arb_element() -> impl Strategy<Value = PoissonElement> {
    prop::collection::vec((arb_monomial(), -3i64..=3), 0..4).prop_map(|ts| {
        let e = PoissonElement::from_terms(2, ts.into_iter().map(|(m, c)| (m, int(c)))).unwrap();
        // keep total degree ≤ 6 for the pair
        e.homogeneous_component(0)
            .add(&e.homogeneous_component(1))
            .unwrap()
            .add(&e.homogeneous_component(2))
            .unwrap()
            .add(&e.homogeneous_component(3))
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_pairs_match(a in arb_element(), b in arb_element()) {
        prop_assume!(a.degree().unwrap_or(0) + b.degree().unwrap_or(0) <= 6);
        let oracle = naive_free_bracket(&a, &b);
        prop_assume!(oracle.is_ok());
        prop_assert_eq!(a.bracket(&b).unwrap(), oracle.unwrap());
    }
}
