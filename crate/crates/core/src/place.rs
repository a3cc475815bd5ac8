//! Places of F_q(t): finite places (monic irreducible polynomials in t) and
//! the place at infinity. Valuations for arbitrary places; completion
//! arithmetic (Laurent expansion) for degree-1 places and ∞ only.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::poly::{Poly, PolyRing};
use crate::ratfunc::{RatFunc, RatFuncField};
use crate::ring::{Field, Ring};
use crate::series::{LaurentSeries, SeriesRing};

#[derive(Clone, PartialEq, Debug)]
pub enum Place {
    /// monic irreducible polynomial in t over the base field
    Finite(Poly<Fq>),
    Infinity,
}

impl Place {
    pub fn finite(base: &PolyRing<Fq>, f: Poly<Fq>) -> Result<Place> {
        let f = base.trim(f);
        match base.lead(&f) {
            Some(l) if base.base.is_one(&l) => {}
            _ => return Err(Error::domain("finite place polynomial must be monic")),
        }
        if !base.is_irreducible(&f)? {
            return Err(Error::domain(format!(
                "place polynomial {} is not irreducible",
                base.display(&f)
            )));
        }
        Ok(Place::Finite(f))
    }

    /// Residue degree d_p: deg p for finite places, 1 for ∞.
    pub fn residue_degree(&self) -> usize {
        match self {
            Place::Finite(f) => f.len() - 1,
            Place::Infinity => 1,
        }
    }

    /// For a degree-1 place (t − a), the point a.
    pub fn linear_root(&self, base: &Fq) -> Option<FqElem> {
        match self {
            Place::Finite(f) if f.len() == 2 => Some(base.neg(&f[0])),
            _ => None,
        }
    }

    pub fn display(&self, base: &PolyRing<Fq>) -> String {
        match self {
            Place::Finite(f) => base.display(f),
            Place::Infinity => "inf".to_string(),
        }
    }

    /// Canonical sort key: ∞ first, then by degree, then lexicographically
    /// by coefficient index key.
    pub fn sort_key(&self, base: &Fq) -> (u8, usize, u64) {
        match self {
            Place::Infinity => (0, 0, 0),
            Place::Finite(f) => {
                let key = f
                    .iter()
                    .rev()
                    .fold(0u64, |acc, c| acc * base.order() + base.to_index(c));
                (1, f.len() - 1, key)
            }
        }
    }
}

/// Multiplicity of the irreducible p in the nonzero polynomial f.
fn multiplicity(base: &PolyRing<Fq>, f: &Poly<Fq>, p: &Poly<Fq>) -> i64 {
    let mut m = 0;
    let mut g = f.clone();
    loop {
        let (q, r) = base.divrem(&g, p).unwrap();
        if base.is_zero(&r) && !base.is_zero(&q) {
            m += 1;
            g = q;
        } else {
            return m;
        }
    }
}

/// ord_p(f) for f ∈ F_q(t)^×.
pub fn ord_at_place(base: &RatFuncField<Fq>, f: &RatFunc<FqElem>, p: &Place) -> Result<i64> {
    if base.is_zero(f) {
        return Err(Error::domain("valuation of 0 is +∞; caller must branch"));
    }
    let pr = &base.poly;
    match p {
        Place::Finite(pp) => Ok(multiplicity(pr, &f.num, pp) - multiplicity(pr, &f.den, pp)),
        Place::Infinity => {
            Ok(pr.deg(&f.den).unwrap() as i64 - pr.deg(&f.num).unwrap() as i64)
        }
    }
}

/// Where to expand: a degree-1 finite point t = a (z = t − a) or ∞
/// (z = 1/t). The point lives in the coefficient field of the module at
/// hand, which may be an extension of the base field of the place.
#[derive(Clone, Debug)]
pub enum ExpandAt<T> {
    Finite(T),
    Infinity,
}

/// Entrywise Laurent expansion of a rational function at a degree-1 point
/// or ∞, generic over the coefficient field.
pub fn expand_ratfunc<K: Field>(
    rf: &RatFuncField<K>,
    sr: &SeriesRing<K>,
    f: &RatFunc<K::Elem>,
    at: &ExpandAt<K::Elem>,
) -> Result<LaurentSeries<K::Elem>> {
    if rf.is_zero(f) {
        return Err(Error::domain("expansion of the zero function"));
    }
    let pr = &rf.poly;
    let poly_to_series = |g: &Poly<K>| -> LaurentSeries<K::Elem> {
        sr.make(0, g.clone(), sr.prec.max(g.len() as i64))
    };
    match at {
        ExpandAt::Finite(a) => {
            // substitute t = z + a; polynomials stay polynomials in z
            let zpa = vec![a.clone(), pr.base.one()];
            let n = pr.compose(&f.num, &zpa);
            let d = pr.compose(&f.den, &zpa);
            let dn = poly_to_series(&d);
            let di = sr.inv(&dn)?;
            Ok(sr.mul(&poly_to_series(&n), &di))
        }
        ExpandAt::Infinity => {
            // t = 1/z: num(t) = z^{-deg} · (reversed coefficients in z)
            let expand_inf = |g: &Poly<K>| -> LaurentSeries<K::Elem> {
                let deg = g.len() as i64 - 1;
                let rev: Vec<K::Elem> = g.iter().rev().cloned().collect();
                sr.make(-deg, rev, sr.prec.max(1))
            };
            let n = expand_inf(&f.num);
            let d = expand_inf(&f.den);
            Ok(sr.mul(&n, &sr.inv(&d)?))
        }
    }
}

/// Expansion at the base_algebra level: f ∈ F_q(t), place of F_q(t).
/// Degree-1 finite places and ∞ only; higher degree is NotImplementedPlace.
pub fn expand_at_place(
    base: &RatFuncField<Fq>,
    f: &RatFunc<FqElem>,
    p: &Place,
    n: i64,
) -> Result<LaurentSeries<FqElem>> {
    let sr = SeriesRing::new(base.poly.base.clone(), n);
    match p {
        Place::Finite(pp) if pp.len() == 2 => {
            let a = p.linear_root(&base.poly.base).unwrap();
            expand_ratfunc(base, &sr, f, &ExpandAt::Finite(a))
        }
        Place::Finite(pp) => Err(Error::NotImplementedPlace(format!(
            "finite place of degree {} (only degree 1 and ∞ support expansion)",
            pp.len() - 1
        ))),
        Place::Infinity => expand_ratfunc(base, &sr, f, &ExpandAt::Infinity),
    }
}

/// All places in the support of f (finite places dividing numerator or
/// denominator, plus ∞ if it has nonzero order). Used by the product-formula
/// checks; enumerates irreducibles up to the relevant degree.
pub fn support(base: &RatFuncField<Fq>, f: &RatFunc<FqElem>) -> Result<Vec<(Place, i64)>> {
    let pr = &base.poly;
    let mut out = vec![];
    let v_inf = ord_at_place(base, f, &Place::Infinity)?;
    if v_inf != 0 {
        out.push((Place::Infinity, v_inf));
    }
    let dmax = pr.deg(&f.num).unwrap_or(0).max(pr.deg(&f.den).unwrap_or(0));
    for d in 1..=dmax {
        for p in pr.monic_irreducibles(d) {
            let place = Place::Finite(p);
            let v = ord_at_place(base, f, &place)?;
            if v != 0 {
                out.push((place, v));
            }
        }
    }
    Ok(out)
}

/// Enumerate all places up to residue degree `bound`, ∞ first, canonical
/// order.
pub fn places_up_to(base: &PolyRing<Fq>, bound: usize) -> Vec<Place> {
    let mut out = vec![Place::Infinity];
    for d in 1..=bound {
        for p in base.monic_irreducibles(d) {
            out.push(Place::Finite(p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn setup() -> (RatFuncField<Fq>, BTreeMap<String, RatFunc<FqElem>>) {
        let rf = RatFuncField::new(Fq::new(3, 1).unwrap(), "t");
        let mut vars = BTreeMap::new();
        vars.insert("t".to_string(), rf.var_elem());
        (rf, vars)
    }

    fn pexpr(rf: &RatFuncField<Fq>, s: &str) -> Place {
        let mut vars = BTreeMap::new();
        vars.insert("t".to_string(), rf.var_elem());
        let f = crate::parser::parse_in(rf, s, &vars).unwrap();
        Place::finite(&rf.poly, f.num).unwrap()
    }

    #[test]
    fn ord_examples() {
        let (rf, vars) = setup();
        let f = crate::parser::parse_in(&rf, "t-1", &vars).unwrap();
        assert_eq!(ord_at_place(&rf, &f, &pexpr(&rf, "t-1")).unwrap(), 1);
        let t = crate::parser::parse_in(&rf, "t", &vars).unwrap();
        assert_eq!(ord_at_place(&rf, &t, &Place::Infinity).unwrap(), -1);
        // t²/(t²+1) at (t²+1) → −1
        let g = rf
            .normalize(
                crate::parser::parse_in(&rf, "t^2", &vars).unwrap().num,
                crate::parser::parse_in(&rf, "t^2+1", &vars).unwrap().num,
            )
            .unwrap();
        assert_eq!(ord_at_place(&rf, &g, &pexpr(&rf, "t^2+1")).unwrap(), -1);
        // zero errors
        assert!(ord_at_place(&rf, &rf.zero(), &Place::Infinity).is_err());
    }

    #[test]
    fn expansion_examples() {
        let (rf, vars) = setup();
        let sr = SeriesRing::new(rf.poly.base.clone(), 3);
        // 1/(1−t) at (t), N=3 → 1 + t + t²
        let f = rf
            .normalize(
                rf.poly.one(),
                crate::parser::parse_in(&rf, "1-t", &vars).unwrap().num,
            )
            .unwrap();
        let s = expand_at_place(&rf, &f, &pexpr(&rf, "t"), 3).unwrap();
        for i in 0..3 {
            assert_eq!(sr.coeff(&s, i), rf.poly.base.one());
        }
        // t at (t−1), N=2 → 1 + z
        let t = crate::parser::parse_in(&rf, "t", &vars).unwrap();
        let s = expand_at_place(&rf, &t, &pexpr(&rf, "t-1"), 2).unwrap();
        assert_eq!(s.val, 0);
        assert_eq!(sr.coeff(&s, 0), rf.poly.base.one());
        assert_eq!(sr.coeff(&s, 1), rf.poly.base.one());
        // t at ∞ → z^{-1}
        let s = expand_at_place(&rf, &t, &Place::Infinity, 2).unwrap();
        assert_eq!(s.val, -1);
        assert_eq!(sr.coeff(&s, -1), rf.poly.base.one());
        assert_eq!(sr.coeff(&s, 0), rf.poly.base.zero());
        // degree-2 place refuses expansion
        let err = expand_at_place(&rf, &t, &pexpr(&rf, "t^2+1"), 4).unwrap_err();
        assert!(matches!(err, Error::NotImplementedPlace(_)));
    }

    #[test]
    fn product_formula_examples() {
        let (rf, vars) = setup();
        for expr in ["t^2+1", "t-1", "t^2+t+2"] {
            let f = crate::parser::parse_in(&rf, expr, &vars).unwrap();
            let sum: i64 = support(&rf, &f)
                .unwrap()
                .iter()
                .map(|(p, v)| p.residue_degree() as i64 * v)
                .sum();
            assert_eq!(sum, 0, "product formula for {expr}");
        }
    }

    #[test]
    fn place_validation() {
        let (rf, _) = setup();
        // t²−1 is reducible
        let f = vec![
            rf.poly.base.from_int(-1),
            rf.poly.base.zero(),
            rf.poly.base.one(),
        ];
        assert!(Place::finite(&rf.poly, f).is_err());
        // non-monic rejected
        let g = vec![rf.poly.base.one(), rf.poly.base.from_int(2)];
        assert!(Place::finite(&rf.poly, g).is_err());
    }

    #[test]
    fn place_ordering() {
        let (rf, _) = setup();
        let ps = places_up_to(&rf.poly, 2);
        // ∞ first, then t, t+1, t+2, then the three irreducible quadratics
        assert_eq!(ps[0], Place::Infinity);
        assert_eq!(ps.len(), 1 + 3 + 3);
        let mut keys: Vec<_> = ps.iter().map(|p| p.sort_key(&rf.poly.base)).collect();
        let sorted = {
            let mut k = keys.clone();
            k.sort();
            k
        };
        assert_eq!(keys, sorted);
        keys.dedup();
        assert_eq!(keys.len(), 7);
    }
}
