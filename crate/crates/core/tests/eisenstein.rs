use macmahon::eisenstein::*;
use macmahon::exactnum::{int, rat, Rat};
use macmahon::series::eta_product;
use num_bigint::BigInt;

#[test]
fn level_one_relations() {
    let n = 40;
    let e4 = e_series(4, n).unwrap();
    let e6 = e_series(6, n).unwrap();
    assert!(e4.mul(&e4).agrees_with(&e_series(8, n).unwrap()));
    assert!(e4.mul(&e6).agrees_with(&e_series(10, n).unwrap()));
    // 1728Δ = E₄³ − E₆²
    let delta = eta_product(&[(1, 24)], n - 1, false).shift(1).scale(&int(1728));
    assert!(e4.pow(3).sub(&e6.pow(2)).agrees_with(&delta));
}

#[test]
fn ramanujan_derivative_of_e2() {
    // 12 q dE₂/dq = E₂² − E₄
    let n = 30;
    let e2 = e_series(2, n).unwrap();
    let lhs = macmahon::series::QSeries::from_coeffs((0..n as i64).map(|m| e2.at(m) * int(12 * m)).collect());
    assert!(lhs.agrees_with(&e2.mul(&e2).sub(&e_series(4, n).unwrap())));
}

#[test]
fn g_and_e_normalizations_agree() {
    for m in [2u32, 4, 6, 8, 10, 12] {
        let g = g_series(m, 20);
        let e = e_series(m, 20).unwrap();
        assert!(g.scale(&(int(1) / g.at(0))).agrees_with(&e), "m={m}");
    }
    assert_eq!(g_series(3, 4).at(0), int(0));
    assert!(e_series(3, 4).is_err());
}

#[test]
fn hecke_eigenforms() {
    let n = 200;
    let delta = eta_product(&[(1, 24)], n - 1, false).shift(1);
    for (ell, tau) in [(2u64, -24i64), (3, 252), (5, 4830)] {
        let t = hecke_t(&delta, ell, 12, None).unwrap();
        assert!(t.agrees_with(&delta.scale(&int(tau))), "ℓ={ell}");
    }
    let e4 = e_series(4, n).unwrap();
    assert!(hecke_t(&e4, 3, 4, None).unwrap().agrees_with(&e4.scale(&Rat::from_integer(sigma(3, 3)))));
    let reduced = hecke_t(&delta, 3, 12, Some(&BigInt::from(7))).unwrap();
    assert_eq!(reduced.at(1), rat(252 % 7, 1));
}

#[test]
fn sigma_is_multiplicative() {
    for (a, b) in [(3u64, 4u64), (5, 9), (7, 8)] {
        for j in 0..4 {
            assert_eq!(sigma(a * b, j), sigma(a, j) * sigma(b, j));
        }
    }
}
