//! F_q(ξ) with sparse internals: elements are ξ^s·n(ξ)/d(ξ) with n, d sparse
//! polynomials with nonzero constant terms (d normalized to constant term 1).
//!
//! The slope filtration over F_q(ξ) produces coefficients whose ξ-degrees
//! grow exponentially in the z-precision while their term counts stay small,
//! so the dense representation of [`crate::ratfunc::FuncField`] is unusable
//! there. This field trades canonical gcd-reduced form for scalability:
//! fractions are only gcd-reduced while their degrees stay below a fixed
//! threshold, equality is decided by cross-multiplication, and inversion is
//! a swap. Powers of ξ are tracked in the separate exponent s, so elements
//! of the localization F_q[ξ, ξ⁻¹] keep denominator 1 throughout.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::poly::PolyRing;
use crate::ring::{Field, Ring, SigmaRing};
use std::collections::BTreeMap;

/// Exponent → nonzero coefficient; empty map is the zero polynomial.
pub type SparsePoly = BTreeMap<i64, FqElem>;

/// ξ^shift · num/den with num, den having nonzero constant terms and den
/// having constant term 1 (zero is num = ∅, shift = 0, den = 1).
#[derive(Clone, PartialEq, Debug)]
pub struct SparseRat {
    pub shift: i64,
    pub num: SparsePoly,
    pub den: SparsePoly,
}

/// Fractions are fully gcd-reduced only while num and den both have degree
/// at most this bound; beyond it only monomial content is stripped.
const REDUCE_DEGREE_BOUND: i64 = 128;

#[derive(Clone, PartialEq, Debug)]
pub struct SparseFuncField {
    pub fq: Fq,
    pub q: u64,
    pub var: String,
}

fn sp_one(fq: &Fq) -> SparsePoly {
    let mut m = BTreeMap::new();
    m.insert(0, fq.one());
    m
}

fn sp_add(fq: &Fq, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let mut out = a.clone();
    for (e, c) in b {
        let s = match out.get(e) {
            Some(x) => fq.add(x, c),
            None => c.clone(),
        };
        if fq.is_zero(&s) {
            out.remove(e);
        } else {
            out.insert(*e, s);
        }
    }
    out
}

fn sp_neg(fq: &Fq, a: &SparsePoly) -> SparsePoly {
    a.iter().map(|(e, c)| (*e, fq.neg(c))).collect()
}

fn sp_mul(fq: &Fq, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e = e1 + e2;
            let p = fq.mul(c1, c2);
            let s = match out.get(&e) {
                Some(x) => fq.add(x, &p),
                None => p,
            };
            if fq.is_zero(&s) {
                out.remove(&e);
            } else {
                out.insert(e, s);
            }
        }
    }
    out
}

fn sp_scale(fq: &Fq, c: &FqElem, a: &SparsePoly) -> SparsePoly {
    if fq.is_zero(c) {
        return SparsePoly::new();
    }
    a.iter().map(|(e, x)| (*e, fq.mul(c, x))).collect()
}

fn sp_shift(a: &SparsePoly, k: i64) -> SparsePoly {
    a.iter().map(|(e, c)| (e + k, c.clone())).collect()
}

fn sp_deg(a: &SparsePoly) -> Option<i64> {
    a.keys().next_back().copied()
}

fn sp_to_dense(fq: &Fq, a: &SparsePoly) -> Vec<FqElem> {
    let d = sp_deg(a).unwrap_or(-1);
    let mut v = vec![fq.zero(); (d + 1) as usize];
    for (e, c) in a {
        v[*e as usize] = c.clone();
    }
    v
}

fn sp_from_dense(fq: &Fq, v: &[FqElem]) -> SparsePoly {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !fq.is_zero(c))
        .map(|(e, c)| (e as i64, c.clone()))
        .collect()
}

impl SparseFuncField {
    pub fn new(fq: Fq, var: &str) -> Self {
        let q = fq.order();
        SparseFuncField {
            fq,
            q,
            var: var.to_string(),
        }
    }

    /// Canonicalize: strip the monomial content of num into shift, set den's
    /// constant term to 1, and gcd-reduce while the degrees are small.
    fn normalize(&self, mut shift: i64, mut num: SparsePoly, mut den: SparsePoly) -> SparseRat {
        let fq = &self.fq;
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return self.zero();
        }
        let mn = *num.keys().next().unwrap();
        if mn != 0 {
            shift += mn;
            num = sp_shift(&num, -mn);
        }
        let md = *den.keys().next().unwrap();
        if md != 0 {
            shift -= md;
            den = sp_shift(&den, -md);
        }
        if sp_deg(&num).unwrap() <= REDUCE_DEGREE_BOUND
            && sp_deg(&den).unwrap() <= REDUCE_DEGREE_BOUND
            && sp_deg(&den).unwrap() > 0
        {
            let pr = PolyRing::new(fq.clone(), &self.var);
            let dn = sp_to_dense(fq, &num);
            let dd = sp_to_dense(fq, &den);
            let g = pr.gcd(&dn, &dd);
            if pr.deg(&g) > Some(0) {
                num = sp_from_dense(fq, &pr.exact_div(&dn, &g).expect("gcd divides"));
                den = sp_from_dense(fq, &pr.exact_div(&dd, &g).expect("gcd divides"));
            }
        }
        let c = den.get(&0).expect("den constant term").clone();
        if !fq.is_one(&c) {
            let ci = fq.inv(&c).expect("nonzero constant");
            num = sp_scale(fq, &ci, &num);
            den = sp_scale(fq, &ci, &den);
        }
        SparseRat { shift, num, den }
    }

    pub fn var_elem(&self) -> SparseRat {
        SparseRat {
            shift: 1,
            num: sp_one(&self.fq),
            den: sp_one(&self.fq),
        }
    }

    /// ξ^k for any k ∈ ℤ.
    pub fn xi_pow(&self, k: i64) -> SparseRat {
        SparseRat {
            shift: k,
            num: sp_one(&self.fq),
            den: sp_one(&self.fq),
        }
    }

    pub fn constant(&self, c: FqElem) -> SparseRat {
        if self.fq.is_zero(&c) {
            return self.zero();
        }
        let mut num = SparsePoly::new();
        num.insert(0, c);
        SparseRat {
            shift: 0,
            num,
            den: sp_one(&self.fq),
        }
    }

    /// Import a dense rational function (as produced by parsing or by the
    /// global layer).
    pub fn from_ratfunc(&self, r: &crate::ratfunc::RatFunc<FqElem>) -> SparseRat {
        if r.num.is_empty() {
            return self.zero();
        }
        self.normalize(
            0,
            sp_from_dense(&self.fq, &r.num),
            sp_from_dense(&self.fq, &r.den),
        )
    }

    /// The element as a dense rational function; errors if the degrees are
    /// too large to densify.
    pub fn to_ratfunc(&self, a: &SparseRat) -> Result<crate::ratfunc::RatFunc<FqElem>> {
        if self.is_zero(a) {
            return Ok(crate::ratfunc::RatFunc {
                num: vec![],
                den: vec![self.fq.one()],
            });
        }
        let nd = sp_deg(&a.num).unwrap() + a.shift.max(0);
        let dd = sp_deg(&a.den).unwrap() + (-a.shift).max(0);
        if nd > 100_000 || dd > 100_000 {
            return Err(Error::domain(
                "sparse rational function too large to densify",
            ));
        }
        let num = if a.shift >= 0 {
            sp_shift(&a.num, a.shift)
        } else {
            a.num.clone()
        };
        let den = if a.shift < 0 {
            sp_shift(&a.den, -a.shift)
        } else {
            a.den.clone()
        };
        Ok(crate::ratfunc::RatFunc {
            num: sp_to_dense(&self.fq, &num),
            den: sp_to_dense(&self.fq, &den),
        })
    }

    fn sp_eval<R: Field>(
        &self,
        p: &SparsePoly,
        r: &R,
        embed: &impl Fn(&FqElem) -> R::Elem,
        x: &R::Elem,
    ) -> R::Elem {
        let mut acc = r.zero();
        for (e, c) in p {
            let t = r.mul(&embed(c), &r.pow(x, *e as u64));
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Evaluate at a point of (an extension of) F_q through `embed`; None at
    /// poles (including x = 0 when the ξ-adic valuation is negative).
    pub fn eval_in<R: Field>(
        &self,
        a: &SparseRat,
        r: &R,
        embed: impl Fn(&FqElem) -> R::Elem,
        x: &R::Elem,
    ) -> Option<R::Elem> {
        if self.is_zero(a) {
            return Some(r.zero());
        }
        let d = self.sp_eval(&a.den, r, &embed, x);
        if r.is_zero(&d) {
            return None;
        }
        let n = self.sp_eval(&a.num, r, &embed, x);
        let factor = if a.shift >= 0 {
            r.pow(x, a.shift as u64)
        } else {
            r.pow(&r.inv(x).ok()?, (-a.shift) as u64)
        };
        Some(r.mul(&factor, &r.mul(&n, &r.inv(&d).ok()?)))
    }
}

impl Ring for SparseFuncField {
    type Elem = SparseRat;

    fn zero(&self) -> SparseRat {
        SparseRat {
            shift: 0,
            num: SparsePoly::new(),
            den: sp_one(&self.fq),
        }
    }
    fn one(&self) -> SparseRat {
        SparseRat {
            shift: 0,
            num: sp_one(&self.fq),
            den: sp_one(&self.fq),
        }
    }
    fn add(&self, a: &SparseRat, b: &SparseRat) -> SparseRat {
        if self.is_zero(a) {
            return b.clone();
        }
        if self.is_zero(b) {
            return a.clone();
        }
        let fq = &self.fq;
        let s = a.shift.min(b.shift);
        let ta = sp_shift(&sp_mul(fq, &a.num, &b.den), a.shift - s);
        let tb = sp_shift(&sp_mul(fq, &b.num, &a.den), b.shift - s);
        let num = sp_add(fq, &ta, &tb);
        let den = sp_mul(fq, &a.den, &b.den);
        self.normalize(s, num, den)
    }
    fn neg(&self, a: &SparseRat) -> SparseRat {
        SparseRat {
            shift: a.shift,
            num: sp_neg(&self.fq, &a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &SparseRat, b: &SparseRat) -> SparseRat {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let fq = &self.fq;
        self.normalize(
            a.shift + b.shift,
            sp_mul(fq, &a.num, &b.num),
            sp_mul(fq, &a.den, &b.den),
        )
    }
    fn from_int(&self, n: i64) -> SparseRat {
        self.constant(self.fq.from_int(n))
    }
    fn is_zero(&self, a: &SparseRat) -> bool {
        a.num.is_empty()
    }
    fn is_one(&self, a: &SparseRat) -> bool {
        self.elem_eq(a, &self.one())
    }
    fn elem_eq(&self, a: &SparseRat, b: &SparseRat) -> bool {
        match (self.is_zero(a), self.is_zero(b)) {
            (true, true) => return true,
            (true, false) | (false, true) => return false,
            _ => {}
        }
        // shifts are the exact ξ-adic valuations, so they must agree; then
        // cross-multiply the (possibly unreduced) fractions
        a.shift == b.shift
            && sp_mul(&self.fq, &a.num, &b.den) == sp_mul(&self.fq, &b.num, &a.den)
    }
    fn display(&self, a: &SparseRat) -> String {
        if self.is_zero(a) {
            return "0".to_string();
        }
        let term = |e: i64, c: &FqElem| -> String {
            let cs = self.fq.display(c);
            if e == 0 {
                cs
            } else {
                let xp = if e == 1 {
                    self.var.clone()
                } else {
                    format!("{}^{}", self.var, e)
                };
                if self.fq.is_one(c) {
                    xp
                } else {
                    format!("{cs}*{xp}")
                }
            }
        };
        let poly_str = |p: &SparsePoly, off: i64| -> String {
            p.iter()
                .map(|(e, c)| term(e + off, c))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        if a.den == sp_one(&self.fq) {
            poly_str(&a.num, a.shift)
        } else if a.shift >= 0 {
            format!("({})/({})", poly_str(&a.num, a.shift), poly_str(&a.den, 0))
        } else {
            format!("({})/({})", poly_str(&a.num, 0), poly_str(&a.den, -a.shift))
        }
    }
}

impl Field for SparseFuncField {
    fn inv(&self, a: &SparseRat) -> Result<SparseRat> {
        if self.is_zero(a) {
            return Err(Error::non_unit("inverse of zero rational function"));
        }
        let c = a.num.get(&0).expect("num constant term").clone();
        let ci = self.fq.inv(&c)?;
        Ok(SparseRat {
            shift: -a.shift,
            num: sp_scale(&self.fq, &ci, &a.den),
            den: sp_scale(&self.fq, &ci, &a.num),
        })
    }
}

impl SigmaRing for SparseFuncField {
    /// σ(f)(ξ) = f(ξ^q) with coefficients raised to the q-th power.
    fn sigma(&self, a: &SparseRat) -> SparseRat {
        let frob = |p: &SparsePoly| -> SparsePoly {
            p.iter()
                .map(|(e, c)| (e * self.q as i64, self.fq.pow(c, self.q)))
                .collect()
        };
        SparseRat {
            shift: a.shift * self.q as i64,
            num: frob(&a.num),
            den: frob(&a.den),
        }
    }
    fn sigma_inv(&self, a: &SparseRat) -> Option<SparseRat> {
        let qi = self.q as i64;
        if a.shift % qi != 0 {
            return None;
        }
        let unfrob = |p: &SparsePoly| -> Option<SparsePoly> {
            p.iter()
                .map(|(e, c)| {
                    if e % qi != 0 {
                        return None;
                    }
                    Some((e / qi, self.fq.frobenius_inverse(c, self.q).ok()?))
                })
                .collect()
        };
        Some(SparseRat {
            shift: a.shift / qi,
            num: unfrob(&a.num)?,
            den: unfrob(&a.den)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::FuncField;

    fn field(q: u64) -> SparseFuncField {
        SparseFuncField::new(Fq::of_order(q).unwrap(), "xi")
    }

    #[test]
    fn field_axioms_smoke() {
        let k = field(3);
        let xi = k.var_elem();
        let a = k.add(&xi, &k.one()); // ξ+1
        let b = k.inv(&a).unwrap();
        assert!(k.is_one(&k.mul(&a, &b)));
        assert!(k.is_zero(&k.sub(&a, &a)));
        // (ξ²−1)/(ξ−1) = ξ+1 via cross-multiplied equality
        let num = k.sub(&k.mul(&xi, &xi), &k.one());
        let den = k.sub(&xi, &k.one());
        let r = k.div(&num, &den).unwrap();
        assert!(k.elem_eq(&r, &a));
    }

    #[test]
    fn inverse_is_a_swap_and_shifts_track_valuation() {
        let k = field(3);
        let e = k.mul(&k.xi_pow(-3), &k.from_int(2)); // 2ξ⁻³
        assert_eq!(e.shift, -3);
        let i = k.inv(&e).unwrap();
        assert_eq!(i.shift, 3);
        assert!(k.is_one(&k.mul(&e, &i)));
    }

    #[test]
    fn sigma_matches_dense_funcfield() {
        let q = 3u64;
        let k = field(q);
        let dk = FuncField::new(Fq::of_order(q).unwrap(), "xi");
        let dxi = dk.rf.var_elem();
        let df = dk.add(&dk.inv(&dxi).unwrap(), &dk.one()); // 1 + ξ⁻¹
        let f = k.from_ratfunc(&df);
        let back = k.to_ratfunc(&k.sigma(&f)).unwrap();
        assert_eq!(back, dk.sigma(&df));
        // σ⁻¹∘σ = id
        let rt = k.sigma_inv(&k.sigma(&f)).unwrap();
        assert!(k.elem_eq(&rt, &f));
        // σ⁻¹ of ξ (exponent not divisible by q) does not exist
        assert!(k.sigma_inv(&k.var_elem()).is_none());
    }

    #[test]
    fn eval_and_pole_detection() {
        let k = field(3);
        let fq = k.fq.clone();
        let xi = k.var_elem();
        let f = k.div(&k.one(), &xi).unwrap(); // ξ⁻¹
        // at ξ = 2: 1/2 = 2 in F_3
        let v = k.eval_in(&f, &fq, |c| c.clone(), &fq.from_int(2)).unwrap();
        assert_eq!(v, fq.from_int(2));
        // at ξ = 0: pole
        assert!(k.eval_in(&f, &fq, |c| c.clone(), &fq.from_int(0)).is_none());
        // positive shift at 0 evaluates to 0
        let g = k.mul(&xi, &k.add(&xi, &k.one()));
        let v = k.eval_in(&g, &fq, |c| c.clone(), &fq.from_int(0)).unwrap();
        assert!(fq.is_zero(&v));
    }

    #[test]
    fn huge_exponents_stay_sparse() {
        let k = field(3);
        // (ξ^(3^20) + 1)·(ξ^(3^20) − 1) keeps only two terms
        let big = 3_i64.pow(20);
        let a = k.add(&k.xi_pow(big), &k.one());
        let b = k.sub(&k.xi_pow(big), &k.one());
        let p = k.mul(&a, &b);
        assert_eq!(p.num.len(), 2);
        assert_eq!(*p.num.keys().next_back().unwrap(), 2 * big);
    }
}
