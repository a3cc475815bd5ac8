//! Drinfeld F_q[t]-modules: the associated motive (a τ-module over
//! F_q(t) ⊗ K presented by a companion matrix), characteristic place and
//! height, specialization of families over F_q[ξ] at closed points,
//! localization at degree-1 places and ∞, and the per-place Newton-polygon
//! predictions together with a full comparison report.

use num_rational::Ratio;

use crate::charpoly::{charpoly_global, newton_at_place, GlobalCharPoly};
use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem, FrobField, SubfieldMap};
use crate::matrix::Matrix;
use crate::place::{expand_ratfunc, ExpandAt, Place};
use crate::poly::{Poly, PolyRing};
use crate::polygon::NewtonPolygon;
use crate::ratfunc::{FuncField, GlobalRing, RatFunc};
use crate::ring::{Field, Ring, SigmaRing};
use crate::series::SeriesRing;
use crate::taumodule::TauModule;
use crate::twisted::{TwistedPoly, TwistedPolyRing};

/// A Drinfeld module of rank r over a difference field K, given by
/// φ_t = c + g_1·τ + … + g_r·τ^r with g_r ≠ 0. The characteristic value c
/// is the image of t under the structure map to K.
#[derive(Clone, Debug)]
pub struct DrinfeldModule<K: Field + SigmaRing> {
    pub base: K,
    pub c: K::Elem,
    /// g_1..g_r
    pub g: Vec<K::Elem>,
}

impl<K: Field + SigmaRing> DrinfeldModule<K> {
    pub fn new(base: K, c: K::Elem, g: Vec<K::Elem>) -> Result<Self> {
        match g.last() {
            Some(top) if !base.is_zero(top) => {}
            _ => return Err(Error::domain("leading coefficient g_r must be nonzero")),
        }
        Ok(DrinfeldModule { base, c, g })
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    /// φ_t as a twisted polynomial, low τ-degree first.
    pub fn phi_t(&self, tw: &TwistedPolyRing<K>) -> TwistedPoly<K> {
        let mut f = vec![self.c.clone()];
        f.extend(self.g.iter().cloned());
        tw.trim(f)
    }

    /// The motive of φ: the τ-module on basis e_i = τ^{i−1} with
    /// τe_i = e_{i+1} for i < r and
    /// τe_r = g_r^{−1}((t−c)e_1 − g_1e_2 − … − g_{r−1}e_r).
    /// The determinant identity det Φ = (−1)^{r−1}·g_r^{−1}·(t−c) is
    /// asserted on every construction.
    pub fn motive(&self) -> Result<TauModule<GlobalRing<K>>> {
        let gr = GlobalRing::new(self.base.clone());
        let k = &self.base;
        let r = self.rank();
        let t_minus_c = gr
            .rf
            .from_poly(gr.rf.poly.trim(vec![k.neg(&self.c), k.one()]));
        let ginv = gr.inv(&gr.rf.from_poly(vec![self.g[r - 1].clone()]))?;
        let mut rows = vec![vec![gr.zero(); r]; r];
        rows[0][r - 1] = gr.mul(&t_minus_c, &ginv);
        for i in 0..r - 1 {
            rows[i + 1][i] = gr.one();
            rows[i + 1][r - 1] = gr.neg(&gr.mul(&gr.rf.from_poly(vec![self.g[i].clone()]), &ginv));
        }
        let m = TauModule::new(gr.clone(), Matrix::from_rows(rows))?;
        let sign = gr.from_int(if (r - 1) % 2 == 0 { 1 } else { -1 });
        let expected = gr.mul(&sign, &gr.mul(&ginv, &t_minus_c));
        if !gr.elem_eq(&m.det(), &expected) {
            return Err(Error::domain("motive determinant identity failed"));
        }
        Ok(m)
    }
}

/// Characteristic data of a Drinfeld module whose characteristic value is
/// algebraic over F_q: the place ℘ = (minimal polynomial of c), the height
/// h (lowest τ-index of φ_{℘(t)} divided by deg ℘), and ε_℘, the lowest
/// nonzero coefficient of φ_{℘(t)}.
#[derive(Clone, Debug)]
pub struct Characteristic<E> {
    pub place: Place,
    pub height: usize,
    pub epsilon: E,
}

fn height_from_composite<K: Field + SigmaRing>(
    tw: &TwistedPolyRing<K>,
    comp: &TwistedPoly<K>,
    deg_p: usize,
    rank: usize,
) -> Result<(usize, K::Elem)> {
    let (lo, eps) = tw
        .lowest_term(comp)
        .ok_or_else(|| Error::domain("φ_℘ is zero"))?;
    if lo % deg_p != 0 {
        return Err(Error::domain("lowest τ-index not divisible by deg ℘"));
    }
    let h = lo / deg_p;
    if h < 1 || h > rank {
        return Err(Error::domain(format!("height {h} outside 1..=rank")));
    }
    Ok((h, eps))
}

impl DrinfeldModule<FrobField> {
    /// ℘ = (minimal polynomial of c over F_q), height, and ε_℘.
    pub fn characteristic_and_height(&self) -> Result<Characteristic<FqElem>> {
        let big = &self.base.fq;
        let q = self.base.q;
        let pr_big = PolyRing::new(big.clone(), "t");
        let mp_big = pr_big.min_poly_over(&self.c, q);
        let small = Fq::of_order(q)?;
        let map = SubfieldMap::new(small.clone(), big.clone())?;
        let mp: Poly<Fq> = mp_big
            .iter()
            .map(|c| {
                map.down(c).ok_or_else(|| {
                    Error::DescentFailure("minimal polynomial coefficient not in F_q".into())
                })
            })
            .collect::<Result<_>>()?;
        let pr_small = PolyRing::new(small, "t");
        let place = Place::finite(&pr_small, mp)?;
        let tw = TwistedPolyRing::new(self.base.clone());
        let comp = tw.twisted_compose(&mp_big, &self.phi_t(&tw));
        let (height, epsilon) =
            height_from_composite(&tw, &comp, place.residue_degree(), self.rank())?;
        Ok(Characteristic {
            place,
            height,
            epsilon,
        })
    }

    /// Entrywise Laurent expansion of the motive matrix at a degree-1
    /// place or ∞, as a τ-module over K((z)) at precision n.
    pub fn localize_at_place(
        &self,
        p: &Place,
        n: i64,
    ) -> Result<TauModule<SeriesRing<FrobField>>> {
        let motive = self.motive()?;
        let gr = &motive.ring;
        let small = Fq::of_order(self.base.q)?;
        let at = match p {
            Place::Infinity => ExpandAt::Infinity,
            Place::Finite(f) if f.len() == 2 => {
                let map = SubfieldMap::new(small.clone(), self.base.fq.clone())?;
                ExpandAt::Finite(map.up(&p.linear_root(&small).unwrap()))
            }
            Place::Finite(f) => {
                return Err(Error::NotImplementedPlace(format!(
                    "localization at a finite place of degree {}",
                    f.len() - 1
                )))
            }
        };
        let sr = SeriesRing::new(self.base.clone(), n);
        let expand = |f: &RatFunc<FqElem>| -> Result<_> {
            if gr.is_zero(f) {
                Ok(sr.zero())
            } else {
                expand_ratfunc(&gr.rf, &sr, f, &at)
            }
        };
        let mut rows = Vec::with_capacity(motive.rank());
        for i in 0..motive.rank() {
            let mut row = Vec::with_capacity(motive.rank());
            for j in 0..motive.rank() {
                row.push(expand(motive.phi.at(i, j))?);
            }
            rows.push(row);
        }
        let mat = Matrix::from_rows(rows);
        let local = TauModule::new(sr.clone(), mat)?;
        if sr.is_visibly_zero(&local.det()) {
            return Err(Error::domain(
                "determinant expands to 0 at the working precision",
            ));
        }
        Ok(local)
    }

    /// The Newton polygon the slope theory predicts at p: pure slope 0 at
    /// good places, pure slope −1/r at ∞, and slope 0 with multiplicity
    /// r−h plus slope 1/h with multiplicity h at the characteristic ℘.
    pub fn predicted_newton(&self, p: &Place) -> Result<NewtonPolygon> {
        let cd = self.characteristic_and_height()?;
        Ok(predicted_from_characteristic(self.rank(), &cd.place, cd.height, p))
    }

    /// Full report: global characteristic polynomial, integrality and
    /// degree bounds on its coefficients, and the computed-vs-predicted
    /// Newton polygon at ∞, ℘, and every requested place.
    pub fn analyze(&self, extra_places: &[Place]) -> Result<DrinfeldReport> {
        let motive = self.motive()?;
        let charpoly = charpoly_global(&motive)?;
        let cd = self.characteristic_and_height()?;
        let m = self.base.degree_over_base();
        let r = self.rank();
        // coefficient of X^{r−i} must have t-degree ≤ i·m/r
        let mut degree_bounds_ok = true;
        for i in 1..=r {
            if let Some(d) = charpoly.coeff_t_degree(r - i) {
                if d * r as i64 > i as i64 * m as i64 {
                    degree_bounds_ok = false;
                }
            }
        }
        let small = Fq::of_order(self.base.q)?;
        let mut places: Vec<Place> = vec![Place::Infinity, cd.place.clone()];
        places.extend(extra_places.iter().cloned());
        places.sort_by_key(|p| p.sort_key(&small));
        places.dedup();
        let mut reports = Vec::with_capacity(places.len());
        for p in places {
            let actual = newton_at_place(&charpoly, &p, m)?;
            let predicted = predicted_from_characteristic(r, &cd.place, cd.height, &p);
            let matches = actual == predicted;
            reports.push(PlaceReport {
                place: p,
                actual,
                predicted,
                matches,
            });
        }
        let all_match = reports.iter().all(|pr| pr.matches);
        Ok(DrinfeldReport {
            a_integral: charpoly.is_a_integral(),
            charpoly,
            characteristic: cd.place,
            height: cd.height,
            degree_bounds_ok,
            places: reports,
            all_match,
        })
    }
}

fn predicted_from_characteristic(
    rank: usize,
    wp: &Place,
    height: usize,
    p: &Place,
) -> NewtonPolygon {
    let r = rank as i64;
    if *p == Place::Infinity {
        NewtonPolygon::pure(Ratio::new(-1, r), rank)
    } else if p == wp {
        let mut segs = vec![];
        if rank > height {
            segs.push((Ratio::from_integer(0), rank - height));
        }
        segs.push((Ratio::new(1, height as i64), height));
        NewtonPolygon::from_slopes(segs)
    } else {
        NewtonPolygon::pure(Ratio::from_integer(0), rank)
    }
}

/// One line of the comparison report: computed vs predicted polygon at a
/// place.
#[derive(Clone, Debug)]
pub struct PlaceReport {
    pub place: Place,
    pub actual: NewtonPolygon,
    pub predicted: NewtonPolygon,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct DrinfeldReport {
    pub charpoly: GlobalCharPoly,
    pub characteristic: Place,
    pub height: usize,
    pub a_integral: bool,
    pub degree_bounds_ok: bool,
    pub places: Vec<PlaceReport>,
    pub all_match: bool,
}

impl DrinfeldModule<FuncField> {
    /// Characteristic data when c is algebraic over F_q, i.e. a constant
    /// rational function; None when c is transcendental ("generic"
    /// characteristic — the height is undefined there).
    pub fn characteristic_and_height(
        &self,
    ) -> Result<Option<Characteristic<RatFunc<FqElem>>>> {
        let rf = &self.base.rf;
        let pr = &rf.poly;
        if pr.deg(&self.c.num).unwrap_or(0) > 0 || pr.deg(&self.c.den) != Some(0) {
            return Ok(None);
        }
        let fq = pr.base.clone();
        let c0 = if self.c.num.is_empty() {
            fq.zero()
        } else {
            fq.div(&self.c.num[0], &self.c.den[0])?
        };
        let pr_t = PolyRing::new(fq.clone(), "t");
        let place = Place::finite(&pr_t, vec![fq.neg(&c0), fq.one()])?;
        let tw = TwistedPolyRing::new(self.base.clone());
        let mp: Vec<RatFunc<FqElem>> = vec![
            rf.from_poly(pr.constant(fq.neg(&c0))),
            rf.from_poly(pr.one()),
        ];
        let comp = tw.twisted_compose(&mp, &self.phi_t(&tw));
        let (height, epsilon) = height_from_composite(&tw, &comp, 1, self.rank())?;
        Ok(Some(Characteristic {
            place,
            height,
            epsilon,
        }))
    }

    /// Reduce a family over F_q[ξ] at a closed point x = (m_x): evaluate
    /// every coefficient at a root of m_x in GF(q^{deg m_x}). The root is
    /// chosen deterministically (smallest element index). Errors if g_r or
    /// a denominator vanishes at x.
    pub fn specialize(&self, x: &Place) -> Result<DrinfeldModule<FrobField>> {
        let small = self.base.rf.poly.base.clone();
        let q = small.order();
        let d = match x {
            Place::Finite(_) => x.residue_degree(),
            Place::Infinity => return Err(Error::domain("cannot specialize at ∞")),
        };
        let big = Fq::of_order(q.pow(d as u32))?;
        let map = SubfieldMap::new(small.clone(), big.clone())?;
        let pr_big = PolyRing::new(big.clone(), self.base.rf.poly.var.clone().leak());
        let mx_big: Poly<Fq> = match x {
            Place::Finite(f) => f.iter().map(|c| map.up(c)).collect(),
            Place::Infinity => unreachable!(),
        };
        let mut roots = pr_big.roots(&mx_big);
        roots.sort_by_key(|r| big.to_index(r));
        let xi = roots
            .first()
            .cloned()
            .ok_or_else(|| Error::domain("place polynomial has no root in its residue field"))?;
        let eval = |f: &RatFunc<FqElem>| -> Result<FqElem> {
            self.base
                .rf
                .eval_in(f, &big, |c| map.up(c), &xi)
                .ok_or_else(|| Error::domain("denominator vanishes at the specialization point"))
        };
        let c = eval(&self.c)?;
        let g: Vec<FqElem> = self.g.iter().map(&eval).collect::<Result<_>>()?;
        if big.is_zero(g.last().unwrap()) {
            return Err(Error::domain(
                "g_r vanishes at the specialization point (rank drops)",
            ));
        }
        let frob = FrobField::new(big, q)?;
        DrinfeldModule::new(frob, c, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::newton_polygon_local;
    use crate::ring::Ring;

    fn frob(q: u64) -> FrobField {
        FrobField::new(Fq::of_order(q).unwrap(), q).unwrap()
    }

    fn slope(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    fn place_t(fq: &Fq) -> Place {
        Place::finite(&PolyRing::new(fq.clone(), "t"), vec![fq.zero(), fq.one()]).unwrap()
    }

    fn place_t_minus(fq: &Fq, a: i64) -> Place {
        Place::finite(
            &PolyRing::new(fq.clone(), "t"),
            vec![fq.neg(&fq.from_int(a)), fq.one()],
        )
        .unwrap()
    }

    #[test]
    fn carlitz_motive_is_t_minus_c() {
        let k = frob(3);
        let phi = DrinfeldModule::new(k.clone(), k.one(), vec![k.one()]).unwrap();
        let m = phi.motive().unwrap();
        let gr = &m.ring;
        let tmc = gr
            .rf
            .from_poly(vec![k.neg(&k.one()), k.one()]);
        assert!(gr.elem_eq(m.phi.at(0, 0), &tmc));
    }

    #[test]
    fn rank_two_motive_is_companion() {
        // φ_t = τ² − ξτ over F_3(ξ): motive [[0, t], [1, ξ]]
        let k = FuncField::new(Fq::of_order(3).unwrap(), "xi");
        let xi = k.rf.var_elem();
        let phi =
            DrinfeldModule::new(k.clone(), k.zero(), vec![k.neg(&xi), k.one()]).unwrap();
        let m = phi.motive().unwrap();
        let gr = &m.ring;
        let t = gr.rf.from_poly(vec![k.zero(), k.one()]);
        assert!(gr.is_zero(m.phi.at(0, 0)));
        assert!(gr.elem_eq(m.phi.at(0, 1), &t));
        assert!(gr.is_one(m.phi.at(1, 0)));
        assert!(gr.elem_eq(m.phi.at(1, 1), &gr.rf.from_poly(vec![xi])));
    }

    #[test]
    fn characteristic_and_height_examples() {
        // τ² − ξτ over F_3(ξ): ℘ = (t), h = 1, ε = −ξ
        let k = FuncField::new(Fq::of_order(3).unwrap(), "xi");
        let xi = k.rf.var_elem();
        let phi =
            DrinfeldModule::new(k.clone(), k.zero(), vec![k.neg(&xi), k.one()]).unwrap();
        let cd = phi.characteristic_and_height().unwrap().unwrap();
        assert_eq!(cd.place, place_t(&k.rf.poly.base));
        assert_eq!(cd.height, 1);
        assert!(k.elem_eq(&cd.epsilon, &k.neg(&xi)));

        // ξ = 0: φ_t = τ² over F_3, ℘ = (t), h = 2
        let f = frob(3);
        let phi0 = DrinfeldModule::new(f.clone(), f.zero(), vec![f.zero(), f.one()]).unwrap();
        let cd0 = phi0.characteristic_and_height().unwrap();
        assert_eq!(cd0.place, place_t(&f.fq));
        assert_eq!(cd0.height, 2);

        // Carlitz with c = 1 over F_3: ℘ = (t − 1), h = 1
        let car = DrinfeldModule::new(f.clone(), f.one(), vec![f.one()]).unwrap();
        let cdc = car.characteristic_and_height().unwrap();
        assert_eq!(cdc.place, place_t_minus(&f.fq, 1));
        assert_eq!(cdc.height, 1);
    }

    #[test]
    fn transcendental_characteristic_is_generic() {
        let k = FuncField::new(Fq::of_order(3).unwrap(), "xi");
        let xi = k.rf.var_elem();
        let phi = DrinfeldModule::new(k.clone(), xi, vec![k.one()]).unwrap();
        assert!(phi.characteristic_and_height().unwrap().is_none());
    }

    #[test]
    fn specialize_family_at_points() {
        // τ² − ξτ over F_3[ξ]
        let fq = Fq::of_order(3).unwrap();
        let k = FuncField::new(fq.clone(), "xi");
        let xi = k.rf.var_elem();
        let phi =
            DrinfeldModule::new(k.clone(), k.zero(), vec![k.neg(&xi), k.one()]).unwrap();
        let pr = PolyRing::new(fq.clone(), "xi");

        // at (ξ − 1): τ² − τ
        let x1 = Place::finite(&pr, vec![fq.neg(&fq.one()), fq.one()]).unwrap();
        let s1 = phi.specialize(&x1).unwrap();
        assert!(s1.base.fq.is_zero(&s1.c));
        assert!(s1.base.elem_eq(&s1.g[0], &s1.base.neg(&s1.base.one())));

        // at (ξ): τ²
        let x0 = place_t(&fq); // same polynomial t↔ξ shape: (variable)
        let x0 = match x0 {
            Place::Finite(f) => Place::finite(&pr, f).unwrap(),
            _ => unreachable!(),
        };
        let s0 = phi.specialize(&x0).unwrap();
        assert!(s0.base.fq.is_zero(&s0.g[0]));

        // at (ξ² + 1) over F_3: lands in GF(9), g_1 = −root
        let x2 = Place::finite(&pr, vec![fq.one(), fq.zero(), fq.one()]).unwrap();
        let s2 = phi.specialize(&x2).unwrap();
        assert_eq!(s2.base.fq.order(), 9);
        let root = s2.base.neg(&s2.g[0]);
        // the root satisfies ξ² + 1 = 0
        let sq = s2.base.fq.mul(&root, &root);
        assert!(s2.base.fq.is_zero(&s2.base.fq.add(&sq, &s2.base.fq.one())));
    }

    #[test]
    fn specialize_rejects_rank_drop() {
        // φ_t = τ² + ξτ² — make g_2 = ξ so it vanishes at (ξ)
        let fq = Fq::of_order(3).unwrap();
        let k = FuncField::new(fq.clone(), "xi");
        let xi = k.rf.var_elem();
        let phi = DrinfeldModule::new(k.clone(), k.zero(), vec![k.one(), xi]).unwrap();
        let pr = PolyRing::new(fq.clone(), "xi");
        let x0 = Place::finite(&pr, vec![fq.zero(), fq.one()]).unwrap();
        assert!(phi.specialize(&x0).is_err());
    }

    #[test]
    fn localization_polygons() {
        // φ_t = τ² − τ over F_3 (c-value 0, g = [−1, 1])
        let f = frob(3);
        let phi = DrinfeldModule::new(
            f.clone(),
            f.zero(),
            vec![f.neg(&f.one()), f.one()],
        )
        .unwrap();
        // good place (t − 1): pure slope 0
        let good = phi
            .localize_at_place(&place_t_minus(&f.fq, 1), 8)
            .unwrap();
        assert_eq!(
            newton_polygon_local(&good).unwrap(),
            NewtonPolygon::pure(slope(0, 1), 2)
        );
        // ∞: pure slope −1/2
        let inf = phi.localize_at_place(&Place::Infinity, 8).unwrap();
        assert_eq!(
            newton_polygon_local(&inf).unwrap(),
            NewtonPolygon::pure(slope(-1, 2), 2)
        );
        // ℘ = (t): slopes {0, 1}
        let at_p = phi.localize_at_place(&place_t(&f.fq), 8).unwrap();
        assert_eq!(
            newton_polygon_local(&at_p).unwrap(),
            NewtonPolygon::from_slopes([(slope(0, 1), 1), (slope(1, 1), 1)])
        );
    }

    #[test]
    fn predicted_polygons() {
        let f = frob(3);
        let phi = DrinfeldModule::new(
            f.clone(),
            f.zero(),
            vec![f.neg(&f.one()), f.one()],
        )
        .unwrap();
        assert_eq!(
            phi.predicted_newton(&place_t(&f.fq)).unwrap(),
            NewtonPolygon::from_slopes([(slope(0, 1), 1), (slope(1, 1), 1)])
        );
        assert_eq!(
            phi.predicted_newton(&Place::Infinity).unwrap(),
            NewtonPolygon::pure(slope(-1, 2), 2)
        );
        assert_eq!(
            phi.predicted_newton(&place_t_minus(&f.fq, 1)).unwrap(),
            NewtonPolygon::pure(slope(0, 1), 2)
        );
    }

    #[test]
    fn analyze_rank_two_over_f3() {
        // φ_t = τ² − τ over F_3: char X² − X − t, all predictions match
        let f = frob(3);
        let phi = DrinfeldModule::new(
            f.clone(),
            f.zero(),
            vec![f.neg(&f.one()), f.one()],
        )
        .unwrap();
        let rep = phi.analyze(&[place_t_minus(&f.fq, 1)]).unwrap();
        assert!(rep.all_match);
        assert!(rep.a_integral);
        assert!(rep.degree_bounds_ok);
        assert_eq!(rep.height, 1);
        let cp = &rep.charpoly;
        let rf = &cp.base;
        // X² − X − t: coefficients (−t, −1, 1) low-to-high
        assert!(rf.elem_eq(
            &cp.coeffs[0],
            &rf.from_poly(vec![rf.poly.base.zero(), rf.poly.base.from_int(-1)])
        ));
        assert!(rf.elem_eq(&cp.coeffs[1], &rf.from_poly(vec![rf.poly.base.from_int(-1)])));
    }

    #[test]
    fn analyze_carlitz_and_inseparable() {
        let f = frob(3);
        // Carlitz c = 1: char X − (t − 1)
        let car = DrinfeldModule::new(f.clone(), f.one(), vec![f.one()]).unwrap();
        let rep = car.analyze(&[]).unwrap();
        assert!(rep.all_match);
        assert_eq!(rep.characteristic, place_t_minus(&f.fq, 1));
        // φ_t = τ² (h = r = 2): char X² − t, ℘-polygon [(1/2, 2)]
        let sup = DrinfeldModule::new(f.clone(), f.zero(), vec![f.zero(), f.one()]).unwrap();
        let rep2 = sup.analyze(&[]).unwrap();
        assert!(rep2.all_match);
        assert_eq!(rep2.height, 2);
        let at_p = rep2
            .places
            .iter()
            .find(|pr| pr.place == place_t(&f.fq))
            .unwrap();
        assert_eq!(at_p.actual, NewtonPolygon::pure(slope(1, 2), 2));
    }

    #[test]
    fn analyze_over_extension_field() {
        // rank 2 over GF(9) with σ = x³: m = 2
        let fq9 = Fq::of_order(9).unwrap();
        let f = FrobField::new(fq9.clone(), 3).unwrap();
        let u = fq9.gen();
        let phi = DrinfeldModule::new(f.clone(), u.clone(), vec![u, fq9.one()]).unwrap();
        let rep = phi.analyze(&[]).unwrap();
        assert!(rep.all_match);
        assert!(rep.a_integral);
        assert!(rep.degree_bounds_ok);
    }
}
