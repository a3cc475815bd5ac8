//! Properties of global characteristic polynomials: the restriction-of-
//! scalars determinant identity, the unit-coefficient criterion for slopes,
//! existence of Frobenius structures, slope-factorization degrees, and
//! agreement between coefficient hulls and completed local polygons.

use num_rational::Ratio;
use taucrys::charpoly::{charpoly_global, frobenius_structure, newton_at_place, restriction_determinant_identity};
use taucrys::drinfeld::DrinfeldModule;
use taucrys::factor::slope_factorize;
use taucrys::fq::{Fq, FrobField};
use taucrys::local::newton_polygon_local;
use taucrys::place::{expand_ratfunc, ord_at_place, ExpandAt, Place};
use taucrys::polygon::{polygon_from_valuations, NewtonPolygon};
use taucrys::ratfunc::GlobalRing;
use taucrys::ring::{Field, Ring};
use taucrys::sampling::Sampler;
use taucrys::series::SeriesRing;

fn global_ring(order: u64, q: u64) -> GlobalRing<FrobField> {
    GlobalRing::new(FrobField::new(Fq::of_order(order).unwrap(), q).unwrap())
}

#[test]
fn restriction_of_scalars_determinant_identity() {
    for (order, q) in [(4u64, 2u64), (9, 3), (8, 2)] {
        let gr = global_ring(order, q);
        let mut s = Sampler::new(order * 7);
        for rank in 1..=2usize {
            for _ in 0..5 {
                let m = s.global_module(&gr, rank, 2);
                assert!(restriction_determinant_identity(&m).unwrap());
            }
        }
    }
}

#[test]
fn unit_coefficient_criterion_detects_nonnegative_slopes() {
    let gr = global_ring(9, 3);
    let small = Fq::of_order(3).unwrap();
    let pr = taucrys::poly::PolyRing::new(small.clone(), "t");
    let t_places = [
        Place::finite(&pr, vec![small.zero(), small.one()]).unwrap(),
        Place::finite(&pr, vec![small.neg(&small.one()), small.one()]).unwrap(),
    ];
    let t_inv = gr.inv(&gr.rf.var_elem()).unwrap();
    let mut s = Sampler::new(88);
    for i in 0..16 {
        let mut m = s.global_module(&gr, 2, 2);
        if i % 2 == 1 {
            // divide Φ by t so finite places can see negative valuations
            let phi = m.phi.map(|e| gr.mul(&t_inv, e));
            m = taucrys::taumodule::TauModule::new(gr.clone(), phi).unwrap();
        }
        let cp = charpoly_global(&m).unwrap();
        if cp.base.is_zero(&cp.coeffs[0]) {
            continue;
        }
        for p in &t_places {
            let ords: Vec<i64> = cp
                .coeffs
                .iter()
                .filter(|c| !cp.base.is_zero(c))
                .map(|c| ord_at_place(&cp.base, c, p).unwrap())
                .collect();
            let poly = newton_at_place(&cp, p, 2).unwrap();
            let all_integral = ords.iter().all(|&o| o >= 0);
            assert_eq!(poly.smallest_slope().unwrap() >= Ratio::from_integer(0), all_integral);
            let a0_unit = ord_at_place(&cp.base, &cp.coeffs[0], p).unwrap() == 0;
            assert_eq!(
                poly == NewtonPolygon::pure(Ratio::from_integer(0), cp.degree()),
                all_integral && a0_unit
            );
        }
    }
}

#[test]
fn frobenius_structures_exist_for_random_modules() {
    let gr = global_ring(9, 3);
    let mut s = Sampler::new(613);
    for rank in 1..=3usize {
        for _ in 0..4 {
            let m = s.global_module(&gr, rank, 1);
            // construction asserts char(Frob⁻¹) = char_M internally
            let fs = frobenius_structure(&m).unwrap();
            assert_eq!(fs.charpoly.degree(), rank);
        }
    }
}

#[test]
fn slope_factor_degrees_match_polygon_multiplicities() {
    let gr = global_ring(3, 3);
    let small = Fq::of_order(3).unwrap();
    let mut s = Sampler::new(1999);
    let sr = SeriesRing::new(small.clone(), 24);
    let mut seen = 0;
    while seen < 10 {
        let m = s.global_module(&gr, 3, 1);
        let cp = charpoly_global(&m).unwrap();
        if cp.base.is_zero(&cp.coeffs[0]) {
            continue;
        }
        for at in [ExpandAt::Finite(small.zero()), ExpandAt::Infinity] {
            let coeffs: Vec<_> = cp
                .coeffs
                .iter()
                .map(|c| {
                    if cp.base.is_zero(c) {
                        Ok(sr.zero())
                    } else {
                        expand_ratfunc(&cp.base, &sr, c, &at)
                    }
                })
                .collect::<taucrys::Result<_>>()
                .unwrap();
            let factors = slope_factorize(&sr, &coeffs).unwrap();
            let total: usize = factors.iter().map(|(_, f)| f.len() - 1).sum();
            assert_eq!(total, cp.degree());
            let vals: Vec<Option<i64>> = coeffs
                .iter()
                .map(|c| if sr.is_visibly_zero(c) { None } else { Some(c.val) })
                .collect();
            let hull = polygon_from_valuations(&vals).unwrap();
            let from_factors =
                NewtonPolygon::from_slopes(factors.iter().map(|(a, f)| (*a, f.len() - 1)));
            assert_eq!(from_factors, hull);
        }
        seen += 1;
    }
}

#[test]
fn coefficient_hull_agrees_with_completed_module() {
    let fq = Fq::of_order(9).unwrap();
    let k = FrobField::new(fq.clone(), 3).unwrap();
    let small = Fq::of_order(3).unwrap();
    let pr = taucrys::poly::PolyRing::new(small.clone(), "t");
    let deg1: Vec<Place> = (0..3)
        .map(|a| Place::finite(&pr, vec![small.neg(&small.from_int(a)), small.one()]).unwrap())
        .chain([Place::Infinity])
        .collect();
    let mut s = Sampler::new(31);
    for rank in 1..=3usize {
        for _ in 0..4 {
            let g: Vec<_> = (0..rank)
                .map(|i| {
                    if i + 1 == rank {
                        s.fq_nonzero(&fq)
                    } else {
                        s.fq_elem(&fq)
                    }
                })
                .collect();
            let dm = DrinfeldModule::new(k.clone(), s.fq_elem(&fq), g).unwrap();
            let cp = charpoly_global(&dm.motive().unwrap()).unwrap();
            for p in &deg1 {
                let hull_polygon = newton_at_place(&cp, p, 2).unwrap();
                let local = dm.localize_at_place(p, 24).unwrap();
                assert_eq!(newton_polygon_local(&local).unwrap(), hull_polygon);
            }
        }
    }
}
