//! Dense univariate polynomials over a coefficient ring object.
//!
//! A polynomial is a plain `Vec` of coefficients, low-to-high, with no
//! trailing zeros (the zero polynomial is the empty vector). All arithmetic
//! goes through `PolyRing<K>`, which owns the coefficient ring and the
//! display name of the variable.

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

pub type Poly<K> = Vec<<K as Ring>::Elem>;

#[derive(Clone, PartialEq, Debug)]
pub struct PolyRing<K: Ring> {
    pub base: K,
    pub var: String,
}

impl<K: Ring> PolyRing<K> {
    pub fn new(base: K, var: &str) -> Self {
        PolyRing {
            base,
            var: var.to_string(),
        }
    }

    pub fn trim(&self, mut f: Poly<K>) -> Poly<K> {
        while f.last().map(|c| self.base.is_zero(c)).unwrap_or(false) {
            f.pop();
        }
        f
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self, f: &Poly<K>) -> Option<usize> {
        if f.is_empty() {
            None
        } else {
            Some(f.len() - 1)
        }
    }

    pub fn lead(&self, f: &Poly<K>) -> Option<K::Elem> {
        f.last().cloned()
    }

    pub fn constant(&self, c: K::Elem) -> Poly<K> {
        if self.base.is_zero(&c) {
            vec![]
        } else {
            vec![c]
        }
    }

    /// The variable as a polynomial.
    pub fn var_elem(&self) -> Poly<K> {
        vec![self.base.zero(), self.base.one()]
    }

    pub fn monomial(&self, c: K::Elem, n: usize) -> Poly<K> {
        if self.base.is_zero(&c) {
            return vec![];
        }
        let mut f = vec![self.base.zero(); n + 1];
        f[n] = c;
        f
    }

    pub fn coeff(&self, f: &Poly<K>, i: usize) -> K::Elem {
        f.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, c: &K::Elem, f: &Poly<K>) -> Poly<K> {
        self.trim(f.iter().map(|x| self.base.mul(c, x)).collect())
    }

    /// Evaluate by Horner in any K-algebra: caller supplies the algebra `r`,
    /// the image of each coefficient, and the evaluation point.
    pub fn eval_in<R: Ring>(
        &self,
        f: &Poly<K>,
        r: &R,
        embed: impl Fn(&K::Elem) -> R::Elem,
        x: &R::Elem,
    ) -> R::Elem {
        let mut acc = r.zero();
        for c in f.iter().rev() {
            acc = r.mul(&acc, x);
            acc = r.add(&acc, &embed(c));
        }
        acc
    }

    pub fn eval(&self, f: &Poly<K>, x: &K::Elem) -> K::Elem {
        self.eval_in(f, &self.base, |c| c.clone(), x)
    }

    /// Map coefficients through a ring hom (same element type).
    pub fn map_coeffs(&self, f: &Poly<K>, g: impl Fn(&K::Elem) -> K::Elem) -> Poly<K> {
        self.trim(f.iter().map(|c| g(c)).collect())
    }

    /// f(x^k): stretch exponents.
    pub fn stretch(&self, f: &Poly<K>, k: usize) -> Poly<K> {
        if f.is_empty() {
            return vec![];
        }
        let mut out = vec![self.base.zero(); (f.len() - 1) * k + 1];
        for (i, c) in f.iter().enumerate() {
            out[i * k] = c.clone();
        }
        self.trim(out)
    }
}

impl<K: Ring> Ring for PolyRing<K> {
    type Elem = Poly<K>;

    fn zero(&self) -> Poly<K> {
        vec![]
    }
    fn one(&self) -> Poly<K> {
        vec![self.base.one()]
    }
    fn add(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.base.add(&self.coeff(a, i), &self.coeff(b, i)));
        }
        self.trim(out)
    }
    fn neg(&self, a: &Poly<K>) -> Poly<K> {
        a.iter().map(|c| self.base.neg(c)).collect()
    }
    fn mul(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.trim(out)
    }
    fn from_int(&self, n: i64) -> Poly<K> {
        self.constant(self.base.from_int(n))
    }
    fn is_zero(&self, a: &Poly<K>) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn display(&self, a: &Poly<K>) -> String {
        if self.is_zero(a) {
            return "0".into();
        }
        let mut parts = vec![];
        for (i, c) in a.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let cs = self.base.display(c);
            let needs_parens = cs.contains('+') || (cs.contains('-') && !cs.starts_with('-'));
            let cs = if needs_parens { format!("({cs})") } else { cs };
            let term = match i {
                0 => cs,
                1 if cs == "1" => self.var.clone(),
                1 => format!("{cs}*{}", self.var),
                _ if cs == "1" => format!("{}^{i}", self.var),
                _ => format!("{cs}*{}^{i}", self.var),
            };
            parts.push(term);
        }
        parts.join("+").replace("+-", "-")
    }
}

impl<K: Field> PolyRing<K> {
    /// Euclidean division: f = q·g + r with deg r < deg g.
    pub fn divrem(&self, f: &Poly<K>, g: &Poly<K>) -> Result<(Poly<K>, Poly<K>)> {
        if self.is_zero(g) {
            return Err(Error::domain("polynomial division by zero"));
        }
        let dg = g.len() - 1;
        let li = self.base.inv(&g[dg])?;
        let mut r = self.trim(f.clone());
        let mut q = vec![self.base.zero(); f.len().saturating_sub(dg)];
        while r.len() > dg || (r.len() == g.len() && !r.is_empty() && dg == 0) {
            if r.is_empty() {
                break;
            }
            let k = r.len() - 1 - dg;
            let c = self.base.mul(&r[r.len() - 1], &li);
            q[k] = c.clone();
            for i in 0..=dg {
                let sub = self.base.mul(&c, &g[i]);
                r[k + i] = self.base.sub(&r[k + i], &sub);
            }
            r = self.trim(r);
        }
        Ok((self.trim(q), r))
    }

    /// Exact quotient; errors if the remainder is nonzero.
    pub fn exact_div(&self, f: &Poly<K>, g: &Poly<K>) -> Result<Poly<K>> {
        let (q, r) = self.divrem(f, g)?;
        if !self.is_zero(&r) {
            return Err(Error::domain("inexact polynomial division"));
        }
        Ok(q)
    }

    pub fn monic(&self, f: &Poly<K>) -> Result<Poly<K>> {
        let l = self.lead(f).ok_or_else(|| Error::domain("monic of zero"))?;
        let li = self.base.inv(&l)?;
        Ok(self.scale(&li, f))
    }

    /// Monic gcd (gcd(0,0) = 0).
    pub fn gcd(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        let (mut a, mut b) = (self.trim(a.clone()), self.trim(b.clone()));
        while !b.is_empty() {
            let (_, r) = self.divrem(&a, &b).expect("b nonzero");
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a).expect("nonzero")
        }
    }

    /// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
    pub fn xgcd(&self, a: &Poly<K>, b: &Poly<K>) -> (Poly<K>, Poly<K>, Poly<K>) {
        let (mut r0, mut r1) = (self.trim(a.clone()), self.trim(b.clone()));
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1).expect("r1 nonzero");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let l = self.lead(&r0).unwrap();
        let li = self.base.inv(&l).unwrap();
        (
            self.scale(&li, &r0),
            self.scale(&li, &s0),
            self.scale(&li, &t0),
        )
    }

    /// f(g): polynomial composition.
    pub fn compose(&self, f: &Poly<K>, g: &Poly<K>) -> Poly<K> {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.mul(&acc, g);
            acc = self.add(&acc, &self.constant(c.clone()));
        }
        acc
    }
}

/// Fields whose elements can be enumerated (irreducibility tests, root
/// search, exhaustive oracles).
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    fn elem_from_index(&self, i: u64) -> Self::Elem;
    fn elements_vec(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.elem_from_index(i)).collect()
    }
}

impl FiniteField for crate::fq::Fq {
    fn order(&self) -> u64 {
        crate::fq::Fq::order(self)
    }
    fn elem_from_index(&self, i: u64) -> Self::Elem {
        self.from_index(i)
    }
}

impl FiniteField for crate::fq::FrobField {
    fn order(&self) -> u64 {
        self.fq.order()
    }
    fn elem_from_index(&self, i: u64) -> Self::Elem {
        self.fq.from_index(i)
    }
}

impl<K: FiniteField> PolyRing<K> {
    /// x^(q^i) mod f, q = |K|.
    fn xq_pow_mod(&self, f: &Poly<K>, i: usize) -> Poly<K> {
        let q = self.base.order();
        let mut x = self.var_elem();
        for _ in 0..i {
            // x ↦ x^q mod f by square-and-multiply
            let mut acc = self.one();
            let mut b = x.clone();
            let mut n = q;
            while n > 0 {
                if n & 1 == 1 {
                    acc = self.divrem(&self.mul(&acc, &b), f).unwrap().1;
                }
                n >>= 1;
                if n > 0 {
                    b = self.divrem(&self.mul(&b, &b), f).unwrap().1;
                }
            }
            x = acc;
        }
        x
    }

    /// True iff f is irreducible over K: gcd(f, x^(q^i) − x) trivial for all
    /// i ≤ deg f / 2 (and f nonconstant).
    pub fn is_irreducible(&self, f: &Poly<K>) -> Result<bool> {
        let d = self
            .deg(f)
            .ok_or_else(|| Error::domain("irreducibility of the zero polynomial"))?;
        if d == 0 {
            return Ok(false);
        }
        for i in 1..=d / 2 {
            let xq = self.xq_pow_mod(f, i);
            let g = self.sub(&xq, &self.var_elem());
            let g = self.divrem(&g, f).unwrap().1;
            let gc = self.gcd(f, &g);
            if self.deg(&gc) != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All roots of f in K, by exhaustive search (fields are tiny).
    pub fn roots(&self, f: &Poly<K>) -> Vec<K::Elem> {
        (0..self.base.order())
            .map(|i| self.base.elem_from_index(i))
            .filter(|x| self.base.is_zero(&self.eval(f, x)))
            .collect()
    }

    /// Monic irreducibles of exactly degree d, in deterministic order
    /// (ascending key Σ cᵢ·qⁱ on the non-leading coefficients).
    pub fn monic_irreducibles(&self, d: usize) -> Vec<Poly<K>> {
        let q = self.base.order();
        let mut out = vec![];
        for key in 0..q.pow(d as u32) {
            let mut f = Vec::with_capacity(d + 1);
            let mut k = key;
            for _ in 0..d {
                f.push(self.base.elem_from_index(k % q));
                k /= q;
            }
            f.push(self.base.one());
            if self.is_irreducible(&f).unwrap() {
                out.push(f);
            }
        }
        out
    }

    /// Minimal polynomial over the σ-fixed subfield GF(q0) of an element a,
    /// where σ = (x ↦ x^q0): Π over the σ-orbit of (x − conjugate).
    pub fn min_poly_over(&self, a: &K::Elem, q0: u64) -> Poly<K> {
        let mut conjugates = vec![a.clone()];
        let mut c = self.base.pow(a, q0);
        while c != *a {
            conjugates.push(c.clone());
            c = self.base.pow(&c, q0);
        }
        let mut f = self.one();
        for c in &conjugates {
            let lin = self.trim(vec![self.base.neg(c), self.base.one()]);
            f = self.mul(&f, &lin);
        }
        f
    }
}
