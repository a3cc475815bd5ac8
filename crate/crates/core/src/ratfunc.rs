//! Rational functions num/den over a coefficient field, always normalized:
//! monic denominator, gcd(num, den) = 1. Also the σ-structures built on top:
//! `FuncField` (F_q(ξ) with σ = q-power Frobenius) and `GlobalRing`
//! (K(t) with σ acting on K-coefficients only, fixing t).

use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring, SigmaRing};

#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<T> {
    pub num: Vec<T>,
    pub den: Vec<T>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct RatFuncField<K: Field> {
    pub poly: PolyRing<K>,
}

impl<K: Field> RatFuncField<K> {
    pub fn new(base: K, var: &str) -> Self {
        RatFuncField {
            poly: PolyRing::new(base, var),
        }
    }

    pub fn normalize(&self, num: Poly<K>, den: Poly<K>) -> Result<RatFunc<K::Elem>> {
        let pr = &self.poly;
        if pr.is_zero(&den) {
            return Err(Error::domain("rational function with zero denominator"));
        }
        if pr.is_zero(&num) {
            return Ok(RatFunc {
                num: vec![],
                den: pr.one(),
            });
        }
        let g = pr.gcd(&num, &den);
        let num = pr.exact_div(&num, &g)?;
        let den = pr.exact_div(&den, &g)?;
        let l = pr.lead(&den).unwrap();
        let li = pr.base.inv(&l)?;
        Ok(RatFunc {
            num: pr.scale(&li, &num),
            den: pr.scale(&li, &den),
        })
    }

    pub fn from_poly(&self, f: Poly<K>) -> RatFunc<K::Elem> {
        RatFunc {
            num: self.poly.trim(f),
            den: self.poly.one(),
        }
    }

    pub fn var_elem(&self) -> RatFunc<K::Elem> {
        self.from_poly(self.poly.var_elem())
    }

    pub fn is_polynomial(&self, f: &RatFunc<K::Elem>) -> bool {
        self.poly.deg(&f.den) == Some(0)
    }

    /// Evaluate at a point of (an extension of) K, through `embed`; None if
    /// the denominator vanishes there.
    pub fn eval_in<R: Field>(
        &self,
        f: &RatFunc<K::Elem>,
        r: &R,
        embed: impl Fn(&K::Elem) -> R::Elem,
        x: &R::Elem,
    ) -> Option<R::Elem> {
        let n = self.poly.eval_in(&f.num, r, &embed, x);
        let d = self.poly.eval_in(&f.den, r, &embed, x);
        if r.is_zero(&d) {
            None
        } else {
            Some(r.mul(&n, &r.inv(&d).ok()?))
        }
    }
}

impl<K: Field> Ring for RatFuncField<K> {
    type Elem = RatFunc<K::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFunc {
            num: vec![],
            den: self.poly.one(),
        }
    }
    fn one(&self) -> Self::Elem {
        RatFunc {
            num: self.poly.one(),
            den: self.poly.one(),
        }
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let pr = &self.poly;
        let num = pr.add(&pr.mul(&a.num, &b.den), &pr.mul(&b.num, &a.den));
        let den = pr.mul(&a.den, &b.den);
        self.normalize(num, den).expect("den nonzero")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: self.poly.neg(&a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let pr = &self.poly;
        self.normalize(pr.mul(&a.num, &b.num), pr.mul(&a.den, &b.den))
            .expect("den nonzero")
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        RatFunc {
            num: self.poly.from_int(n),
            den: self.poly.one(),
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }
    fn display(&self, a: &Self::Elem) -> String {
        let n = self.poly.display(&a.num);
        if self.poly.is_one(&a.den) {
            n
        } else {
            format!("({n})/({})", self.poly.display(&a.den))
        }
    }
}

impl<K: Field> Field for RatFuncField<K> {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::non_unit("inverse of zero rational function"));
        }
        self.normalize(a.den.clone(), a.num.clone())
    }
}

/// F_q(ξ) as a difference field: σ is the q-power Frobenius,
/// σ(f)(ξ) = f(ξ^q) with coefficients raised to the q (which fixes F_q).
#[derive(Clone, PartialEq, Debug)]
pub struct FuncField {
    pub rf: RatFuncField<Fq>,
    pub q: u64,
}

impl FuncField {
    pub fn new(base: Fq, var: &str) -> Self {
        let q = base.order();
        FuncField {
            rf: RatFuncField::new(base, var),
            q,
        }
    }

    fn poly_frob(&self, f: &Poly<Fq>) -> Poly<Fq> {
        // Σ aᵢ ξ^i ↦ Σ aᵢ^q ξ^(iq)
        let pr = &self.rf.poly;
        let powed = pr.map_coeffs(f, |c| pr.base.pow(c, self.q));
        pr.stretch(&powed, self.q as usize)
    }
}

impl Ring for FuncField {
    type Elem = RatFunc<crate::fq::FqElem>;
    fn zero(&self) -> Self::Elem {
        self.rf.zero()
    }
    fn one(&self) -> Self::Elem {
        self.rf.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.rf.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.rf.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.rf.mul(a, b)
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.rf.from_int(n)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.rf.is_zero(a)
    }
    fn display(&self, a: &Self::Elem) -> String {
        self.rf.display(a)
    }
}

impl Field for FuncField {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.rf.inv(a)
    }
}

impl SigmaRing for FuncField {
    fn sigma(&self, a: &Self::Elem) -> Self::Elem {
        self.rf
            .normalize(self.poly_frob(&a.num), self.poly_frob(&a.den))
            .expect("σ of nonzero denominator")
    }
}

/// K(t) with the partial Frobenius: σ acts on K-coefficients through the
/// coefficient field's σ and fixes t. This is the entry ring of global
/// τ-modules; K is GF(q^m) (FrobField) or F_q(ξ) (FuncField).
#[derive(Clone, PartialEq, Debug)]
pub struct GlobalRing<K: Field + SigmaRing> {
    pub rf: RatFuncField<K>,
}

impl<K: Field + SigmaRing> GlobalRing<K> {
    pub fn new(k: K) -> Self {
        GlobalRing {
            rf: RatFuncField::new(k, "t"),
        }
    }
    pub fn coeff_field(&self) -> &K {
        &self.rf.poly.base
    }
}

impl<K: Field + SigmaRing> Ring for GlobalRing<K> {
    type Elem = RatFunc<K::Elem>;
    fn zero(&self) -> Self::Elem {
        self.rf.zero()
    }
    fn one(&self) -> Self::Elem {
        self.rf.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.rf.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.rf.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.rf.mul(a, b)
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.rf.from_int(n)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.rf.is_zero(a)
    }
    fn display(&self, a: &Self::Elem) -> String {
        self.rf.display(a)
    }
}

impl<K: Field + SigmaRing> Field for GlobalRing<K> {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.rf.inv(a)
    }
}

impl<K: Field + SigmaRing> SigmaRing for GlobalRing<K> {
    fn sigma(&self, a: &Self::Elem) -> Self::Elem {
        let k = &self.rf.poly.base;
        // coefficientwise σ preserves normalization (σ is a field
        // automorphism of K fixing the monic-denominator property)
        RatFunc {
            num: a.num.iter().map(|c| k.sigma(c)).collect(),
            den: a.den.iter().map(|c| k.sigma(c)).collect(),
        }
    }
    fn sigma_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let k = &self.rf.poly.base;
        let num: Option<Vec<_>> = a.num.iter().map(|c| k.sigma_inv(c)).collect();
        let den: Option<Vec<_>> = a.den.iter().map(|c| k.sigma_inv(c)).collect();
        Some(RatFunc {
            num: num?,
            den: den?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FrobField;

    #[test]
    fn normalization_invariants() {
        let f = RatFuncField::new(Fq::new(3, 1).unwrap(), "t");
        let pr = &f.poly;
        // (t²-1)/(2t-2) should reduce to (t+1)/2·... = 2t+2 over F_3
        let num = pr.trim(vec![pr.base.from_int(-1), pr.base.from_int(0), pr.base.from_int(1)]);
        let den = pr.trim(vec![pr.base.from_int(-2), pr.base.from_int(2)]);
        let r = f.normalize(num, den).unwrap();
        // den monic, coprime
        assert_eq!(pr.lead(&r.den).unwrap(), pr.base.one());
        assert_eq!(pr.deg(&pr.gcd(&r.num, &r.den)), Some(0));
        // value check at t=0: (0-1)/(0-2) = (-1)/(-2) = 2 (inverse of 2 is 2, so 2·2=... )
        // (t²-1)/(2t-2) = (t+1)/2 = 2(t+1) over F_3; at t=0 gives 2
        let x = pr.base.from_int(0);
        let v = f.eval_in(&r, &pr.base, |c| c.clone(), &x).unwrap();
        assert_eq!(v, pr.base.from_int(2));
    }

    #[test]
    fn field_ops_roundtrip() {
        let f = RatFuncField::new(Fq::new(3, 1).unwrap(), "t");
        let t = f.var_elem();
        let a = f.add(&t, &f.one()); // t+1
        let b = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &b)));
        let c = f.sub(&f.mul(&a, &a), &f.one()); // (t+1)² - 1 = t² + 2t
        let d = f.div(&c, &a).unwrap();
        // (t²+2t)/(t+1) stays unreduced? gcd((t)(t+2),(t+1))=1, so den = t+1
        assert_eq!(f.poly.deg(&d.den), Some(1));
    }

    #[test]
    fn funcfield_sigma_is_q_power() {
        let k = FuncField::new(Fq::new(3, 1).unwrap(), "xi");
        let xi = k.rf.var_elem();
        let f = k.add(&k.inv(&xi).unwrap(), &k.one()); // 1 + 1/ξ
        // σ(f) must equal f^q
        assert_eq!(k.sigma(&f), k.pow(&f, 3));
    }

    #[test]
    fn global_sigma_fixes_t() {
        let k = FrobField::new(Fq::new(3, 2).unwrap(), 3).unwrap();
        let e = GlobalRing::new(k.clone());
        let t = e.rf.var_elem();
        assert_eq!(e.sigma(&t), t);
        // σ on a constant = coefficient Frobenius
        let g = e.rf.from_poly(vec![k.fq.gen()]);
        let sg = e.sigma(&g);
        assert_eq!(sg.num[0], k.sigma(&k.fq.gen()));
        // σ is multiplicative on a product with t
        let prod = e.mul(&g, &t);
        assert_eq!(e.sigma(&prod), e.mul(&sg, &t));
    }
}
