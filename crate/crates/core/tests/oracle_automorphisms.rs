use pf_core::automorphisms::{jung_decompose, random_tame, PolyEndo};
use pf_core::polyring::RationalPolynomial;
use pf_core::symplectic::trial_rng;
use pf_oracles::mpoly::{compose_moves, PlaneMap};
use pf_oracles::OracleReport;

#[test]
fn cubic_swap_example() {
    let (x, y) = (RationalPolynomial::coord(0), RationalPolynomial::coord(1));
    let phi = PolyEndo::new(y.clone(), &x + &y.pow(3)).unwrap();
    let moves = jung_decompose(&phi).moves().unwrap().to_vec();
    let r = OracleReport::compare(
        "(y, x + y^3)",
        &PlaneMap::from_endo(&phi).unwrap(),
        &compose_moves(&moves).unwrap(),
    );
    assert!(r.equal, "{r}");
}

#[test]
fn generated_maps_agree_with_oracle_composition() {
    for seed in 0..30 {
        let (moves, phi) = random_tame(&mut trial_rng(seed, 0), 3, 3, 2);
        let r = OracleReport::compare(
            format!("generator seed {seed}"),
            &PlaneMap::from_endo(&phi).unwrap(),
            &compose_moves(&moves).unwrap(),
        );
        assert!(r.equal, "{r}");
    }
}

#[test]
fn decompositions_recompose_under_oracle() {
    for seed in 0..30 {
        let (_, phi) = random_tame(&mut trial_rng(seed, 0), 3, 3, 2);
        let moves = jung_decompose(&phi).moves().expect("tame").to_vec();
        assert_eq!(
            PlaneMap::from_endo(&phi).unwrap(),
            compose_moves(&moves).unwrap(),
            "seed {seed}"
        );
    }
}
