//! Properties of the arithmetic substrate: valuation additivity, the
//! product formula, expansion/inversion compatibility, and exhaustive
//! Frobenius-inverse round trips.

use proptest::prelude::*;
use taucrys::fq::Fq;
use taucrys::place::{expand_at_place, ord_at_place, support, Place};
use taucrys::poly::PolyRing;
use taucrys::ratfunc::{RatFunc, RatFuncField};
use taucrys::ring::{Field, Ring};
use taucrys::series::SeriesRing;

fn rf3() -> RatFuncField<Fq> {
    RatFuncField::new(Fq::of_order(3).unwrap(), "t")
}

fn poly_of(pr: &PolyRing<Fq>, coeffs: &[u64]) -> Vec<taucrys::fq::FqElem> {
    pr.trim(coeffs.iter().map(|&c| pr.base.from_index(c)).collect())
}

fn ratfunc_of(rf: &RatFuncField<Fq>, num: &[u64], den: &[u64]) -> Option<RatFunc<taucrys::fq::FqElem>> {
    let n = poly_of(&rf.poly, num);
    let d = poly_of(&rf.poly, den);
    if rf.poly.is_zero(&n) || rf.poly.is_zero(&d) {
        return None;
    }
    Some(rf.normalize(n, d).unwrap())
}

fn test_places(rf: &RatFuncField<Fq>) -> Vec<Place> {
    let fq = &rf.poly.base;
    let pr = &rf.poly;
    let lin = |a: i64| {
        Place::finite(pr, vec![fq.neg(&fq.from_int(a)), fq.one()]).unwrap()
    };
    vec![
        Place::Infinity,
        lin(0),
        lin(1),
        lin(2),
        Place::finite(pr, vec![fq.one(), fq.zero(), fq.one()]).unwrap(), // t²+1
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ord_is_additive(
        an in prop::collection::vec(0u64..3, 1..5),
        ad in prop::collection::vec(0u64..3, 1..4),
        bn in prop::collection::vec(0u64..3, 1..5),
        bd in prop::collection::vec(0u64..3, 1..4),
    ) {
        let rf = rf3();
        let f = ratfunc_of(&rf, &an, &ad);
        let g = ratfunc_of(&rf, &bn, &bd);
        prop_assume!(f.is_some() && g.is_some());
        let (f, g) = (f.unwrap(), g.unwrap());
        let fg = rf.mul(&f, &g);
        for p in test_places(&rf) {
            let of = ord_at_place(&rf, &f, &p).unwrap();
            let og = ord_at_place(&rf, &g, &p).unwrap();
            let ofg = ord_at_place(&rf, &fg, &p).unwrap();
            prop_assert_eq!(ofg, of + og);
        }
    }

    #[test]
    fn product_formula_sums_to_zero(
        an in prop::collection::vec(0u64..3, 1..6),
        ad in prop::collection::vec(0u64..3, 1..6),
    ) {
        let rf = rf3();
        let f = ratfunc_of(&rf, &an, &ad);
        prop_assume!(f.is_some());
        let f = f.unwrap();
        let total: i64 = support(&rf, &f)
            .unwrap()
            .iter()
            .map(|(p, ord)| p.residue_degree() as i64 * ord)
            .sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn expansion_commutes_with_inversion(
        an in prop::collection::vec(0u64..3, 1..5),
        ad in prop::collection::vec(0u64..3, 1..4),
        place_idx in 0usize..4,
    ) {
        let rf = rf3();
        let f = ratfunc_of(&rf, &an, &ad);
        prop_assume!(f.is_some());
        let f = f.unwrap();
        let fi = rf.inv(&f).unwrap();
        // degree-1 places and ∞ only (the expansion contract)
        let p = &test_places(&rf)[place_idx];
        let sr = SeriesRing::new(rf.poly.base.clone(), 12);
        let ef = expand_at_place(&rf, &f, p, 12).unwrap();
        let efi = expand_at_place(&rf, &fi, p, 12).unwrap();
        prop_assert!(sr.elem_eq(&sr.inv(&ef).unwrap(), &efi));
    }
}

#[test]
fn frobenius_inverse_roundtrip_all_small_fields() {
    for order in [2u64, 4, 8, 16, 3, 9, 27, 81, 5, 25] {
        let fq = Fq::of_order(order).unwrap();
        let mut q = fq.p as u64;
        while q <= order {
            if order % q == 0 {
                for i in 0..order {
                    let a = fq.from_index(i);
                    let aq = fq.pow(&a, q);
                    let back = fq.frobenius_inverse(&aq, q).unwrap();
                    assert_eq!(back, a, "q={q} order={order}");
                }
            }
            q *= fq.p as u64;
        }
    }
}
