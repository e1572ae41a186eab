use macmahon::appell::*;
use macmahon::exactnum::{int, rat};
use macmahon::macmahon::series_b;
use macmahon::series::QSeries;

#[test]
fn theta_symmetries() {
    let th = theta_jacobi(20);
    assert!(th.reflect().series.agrees_with(&th.series.neg()));
    assert!(theta_elliptic_holds(25));
    assert_eq!(th.series.prefactor(), &rat(1, 8));
    assert!(th.at_w_one().is_zero());
}

#[test]
fn appell_brute_force_orders() {
    // n ∈ {−1, 0, 1} with geometric terms m ≤ 1 exhaust q⁰ and q¹ for r = K = 1
    let f = appell_f(1, 1, 2).series;
    assert_eq!(f.at(0), LaurentW::monomial(-1, int(1)));
    assert_eq!(f.at(1), LaurentW::from_terms(&[(-1, int(1)), (1, int(-1))]));
    for r in 1..=3 {
        assert_eq!(appell_f(r, r, 3).series.at(0), LaurentW::monomial(-1, int(1)));
    }
}

#[test]
fn appell_reflection() {
    for r in 1..=2 {
        assert_eq!(appell_reflection_defect(r, 12), None, "r={r}");
    }
}

#[test]
fn appell_general_k_laurent_start() {
    // K > 2r pushes the n > 0 sum below q⁰
    let f = appell_f(1, 4, 6).series;
    assert!(f.valuation() < 0);
    assert_eq!(f.precision(), 6);
}

#[test]
fn f_tilde_low_order() {
    for r in 1..=3 {
        assert_eq!(f_tilde(r, r, 0, 4).at(0), int(1));
        assert_eq!(f_tilde(r, r, 1, 4).at(0), rat(-1, 2));
    }
    assert!(f_tilde(1, 1, 0, 15).agrees_with(&QSeries::one(15)));
}

#[test]
fn depth_one_relations_hold() {
    for (k, r, s) in [(2, 1, 1), (2, 1, 0), (2, 1, 2), (3, 2, 2), (4, 2, 1)] {
        let rep = depth_one_relations(k, r, s, 15).unwrap();
        assert!(rep.forward, "forward {k},{r},{s}");
        assert!(rep.inverse, "inverse {k},{r},{s}");
    }
    for (k, r, s) in [(2, 1, 1), (2, 1, 0), (3, 2, 1)] {
        assert!(depth_one_relations(k, r, s, 12).unwrap().inverse);
    }
    assert!(depth_one_relations(2, 1, 3, 10).is_err());
}

#[test]
fn printed_relations_fail_where_signs_matter() {
    // odd k exposes the missing (−1)^k
    assert!(!depth_one_relations(3, 2, 2, 15).unwrap().printed_forward);
    assert!(depth_one_relations(2, 1, 1, 15).unwrap().printed_forward);
    assert!(!depth_one_relations(2, 1, 1, 15).unwrap().printed_inverse);
}

#[test]
fn chi_minus_one_anchor() {
    for r in 1..=3 {
        assert!(chi_plus_tilde(-1, r, r, 12).agrees_with(&QSeries::monomial(0, int(-1), 12)));
    }
}

#[test]
fn f_tilde_through_chi() {
    for r in 1..=2 {
        for ell in 0..=4 {
            assert_eq!(remark_defect(r, r, ell, 15, false), None, "r={r} ℓ={ell}");
        }
    }
    assert_eq!(remark_defect(1, 1, 0, 15, true), Some(0));
}

#[test]
fn depth_one_quadratic_via_chi() {
    assert_eq!(b211_defect(30, false), None);
    assert_eq!(b211_defect(30, true), Some(2));
}

#[test]
fn rose_identity() {
    assert!(rose_jacobi_check(12, 5).unwrap());
    assert!(rose_jacobi_check(12, 3).is_err());
    let th = theta_jacobi(3).series.with_prefactor(&rat(-1, 8));
    assert_eq!(th.at(0).coeff(1), int(1));
}

#[test]
fn theta_over_derivative() {
    assert!(theta_exp_check(10, 6).unwrap());
}

#[test]
fn b_polynomiality() {
    assert!(b_polynomiality_check(3, 1, 2, 3, 30).unwrap());
    assert!(b_polynomiality_check(2, 1, 1, 1, 20).unwrap());
    let n = 40;
    let b = series_b(1, 2, 1, 1, n);
    let rhs = b.mul(&b).scale(&rat(1, 2)).sub(&series_b(1, 4, 2, 2, n).scale(&rat(1, 2)));
    assert!(series_b(2, 2, 1, 1, n).agrees_with(&rhs));
}
