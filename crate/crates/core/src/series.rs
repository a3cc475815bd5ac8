//! Truncated Laurent series K((z)) with explicit valuation and absolute
//! precision.
//!
//! An element stores its valuation v, the coefficients of z^v, z^(v+1), ...
//! up to (not including) z^prec, and the absolute precision `prec`: the
//! series is known modulo z^prec and nothing more. Precision never increases
//! through arithmetic; every operation records the tightest provable
//! precision of its result. A series whose visible coefficients are all zero
//! is stored canonically as (v = prec, empty coefficients) — it may or may
//! not be the exact zero, all we know is that it is ≡ 0 mod z^prec.

use crate::error::{Error, Result};
use crate::ring::{Field, Ring, SigmaRing};

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<T> {
    pub val: i64,
    pub coeffs: Vec<T>,
    pub prec: i64,
}

/// Ring object for K((z)) truncations. `prec` is the default absolute
/// precision given to newly constructed elements (constants, zero, one).
#[derive(Clone, PartialEq, Debug)]
pub struct SeriesRing<K: Ring> {
    pub base: K,
    pub prec: i64,
    pub var: String,
}

impl<K: Field> SeriesRing<K> {
    pub fn new(base: K, prec: i64) -> Self {
        SeriesRing {
            base,
            prec,
            var: "z".to_string(),
        }
    }

    /// Canonicalize: strip leading zero coefficients (adjusting val), cut at
    /// prec, collapse visibly-zero to (prec, []).
    pub fn make(&self, mut val: i64, mut coeffs: Vec<K::Elem>, prec: i64) -> LaurentSeries<K::Elem> {
        if val < prec {
            let keep = (prec - val) as usize;
            coeffs.truncate(keep);
        } else {
            coeffs.clear();
        }
        let mut start = 0;
        while start < coeffs.len() && self.base.is_zero(&coeffs[start]) {
            start += 1;
        }
        coeffs.drain(..start);
        val += start as i64;
        while coeffs.last().map(|c| self.base.is_zero(c)).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return LaurentSeries {
                val: prec,
                coeffs: vec![],
                prec,
            };
        }
        // re-pad to the full visible window [val, prec)
        coeffs.resize((prec - val) as usize, self.base.zero());
        LaurentSeries { val, coeffs, prec }
    }

    pub fn from_coeffs(&self, val: i64, coeffs: Vec<K::Elem>) -> LaurentSeries<K::Elem> {
        let prec = self.prec.max(val + coeffs.len() as i64);
        self.make(val, coeffs, prec)
    }

    pub fn constant(&self, c: K::Elem) -> LaurentSeries<K::Elem> {
        self.make(0, vec![c], self.prec)
    }

    /// The uniformizer z^k (k may be negative). Exactly known, so it gets
    /// the ring's default precision even for negative k.
    pub fn z_pow(&self, k: i64) -> LaurentSeries<K::Elem> {
        self.make(k, vec![self.base.one()], self.prec.max(k + 1))
    }

    /// Coefficient of z^i (zero if outside the visible window; caller is
    /// responsible for not reading at or above prec).
    pub fn coeff(&self, s: &LaurentSeries<K::Elem>, i: i64) -> K::Elem {
        if i < s.val || i >= s.prec {
            return self.base.zero();
        }
        s.coeffs
            .get((i - s.val) as usize)
            .cloned()
            .unwrap_or_else(|| self.base.zero())
    }

    pub fn is_visibly_zero(&self, s: &LaurentSeries<K::Elem>) -> bool {
        s.coeffs.is_empty()
    }

    /// Exact order; errors if the series is visibly zero (order unknown).
    pub fn order(&self, s: &LaurentSeries<K::Elem>) -> Result<i64> {
        if self.is_visibly_zero(s) {
            Err(Error::non_unit(
                "series is ≡ 0 at working precision; order undetermined",
            ))
        } else {
            Ok(s.val)
        }
    }

    /// Multiply by z^k: shifts valuation and precision.
    pub fn shift(&self, s: &LaurentSeries<K::Elem>, k: i64) -> LaurentSeries<K::Elem> {
        LaurentSeries {
            val: s.val + k,
            coeffs: s.coeffs.clone(),
            prec: s.prec + k,
        }
    }

    /// Truncate to a (lower) absolute precision.
    pub fn truncate(&self, s: &LaurentSeries<K::Elem>, prec: i64) -> LaurentSeries<K::Elem> {
        let p = prec.min(s.prec);
        self.make(s.val, s.coeffs.clone(), p)
    }
}

impl<K: Field> Ring for SeriesRing<K> {
    type Elem = LaurentSeries<K::Elem>;

    fn zero(&self) -> Self::Elem {
        LaurentSeries {
            val: self.prec,
            coeffs: vec![],
            prec: self.prec,
        }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let prec = a.prec.min(b.prec);
        let val = a.val.min(b.val).min(prec);
        let mut coeffs = vec![self.base.zero(); (prec - val).max(0) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let k = val + i as i64;
            *c = self.base.add(&self.coeff(a, k), &self.coeff(b, k));
        }
        self.make(val, coeffs, prec)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        LaurentSeries {
            val: a.val,
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
            prec: a.prec,
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        // error in a is O(z^pa), so contributes O(z^(pa+vb)) to the product
        let prec = (a.prec + b.val).min(b.prec + a.val);
        if self.is_visibly_zero(a) || self.is_visibly_zero(b) {
            return self.make(prec, vec![], prec);
        }
        let val = a.val + b.val;
        let n = ((prec - val).max(0)) as usize;
        let mut coeffs = vec![self.base.zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] = self.base.add(&coeffs[i + j], &self.base.mul(x, y));
            }
        }
        self.make(val, coeffs, prec)
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.is_visibly_zero(a)
    }
    /// Equality up to the common provable precision.
    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        let prec = a.prec.min(b.prec);
        let lo = a.val.min(b.val);
        (lo..prec).all(|i| self.base.elem_eq(&self.coeff(a, i), &self.coeff(b, i)))
    }
    fn display(&self, a: &Self::Elem) -> String {
        let mut parts = vec![];
        for (i, c) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let k = a.val + i as i64;
            let cs = self.base.display(c);
            let needs_parens = cs.contains('+') || (cs.contains('-') && !cs.starts_with('-'));
            let cs = if needs_parens { format!("({cs})") } else { cs };
            let term = match k {
                0 => cs,
                1 if cs == "1" => self.var.clone(),
                1 => format!("{cs}*{}", self.var),
                _ if cs == "1" => format!("{}^{k}", self.var),
                _ => format!("{cs}*{}^{k}", self.var),
            };
            parts.push(term);
        }
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+").replace("+-", "-")
        };
        format!("{body}+O({}^{})", self.var, a.prec)
    }
}

impl<K: Field> Field for SeriesRing<K> {
    /// series_invert: errors (NonUnit) if every visible coefficient is zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_visibly_zero(a) {
            return Err(Error::non_unit(
                "series inversion: lowest visible coefficient is zero",
            ));
        }
        let v = a.val;
        let n = (a.prec - v) as usize;
        let c0i = self.base.inv(&a.coeffs[0])?;
        // invert the unit part u = Σ a_{v+i} z^i by the standard recursion
        let mut inv = Vec::with_capacity(n);
        inv.push(c0i.clone());
        for k in 1..n {
            let mut s = self.base.zero();
            for j in 1..=k {
                let aj = if j < a.coeffs.len() {
                    &a.coeffs[j]
                } else {
                    continue;
                };
                s = self.base.add(&s, &self.base.mul(aj, &inv[k - j]));
            }
            inv.push(self.base.neg(&self.base.mul(&c0i, &s)));
        }
        // (z^v·u)^{-1} = z^{-v}·u^{-1}; error O(z^p) in a gives O(z^(p-2v))
        Ok(self.make(-v, inv, a.prec - 2 * v))
    }
}

impl<K: Field + SigmaRing> SigmaRing for SeriesRing<K> {
    fn sigma(&self, a: &Self::Elem) -> Self::Elem {
        LaurentSeries {
            val: a.val,
            coeffs: a.coeffs.iter().map(|c| self.base.sigma(c)).collect(),
            prec: a.prec,
        }
    }
    fn sigma_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let coeffs: Option<Vec<_>> = a.coeffs.iter().map(|c| self.base.sigma_inv(c)).collect();
        Some(LaurentSeries {
            val: a.val,
            coeffs: coeffs?,
            prec: a.prec,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::{Fq, FrobField};

    fn ring() -> SeriesRing<FrobField> {
        SeriesRing::new(FrobField::new(Fq::new(3, 1).unwrap(), 3).unwrap(), 8)
    }

    #[test]
    fn invert_one_and_monomial() {
        let r = ring();
        let one = r.one();
        assert!(r.elem_eq(&r.inv(&one).unwrap(), &one));
        let z = r.z_pow(1);
        let zi = r.inv(&z).unwrap();
        assert_eq!(zi.val, -1);
        assert!(r.elem_eq(&r.mul(&z, &zi), &one));
    }

    #[test]
    fn invert_geometric() {
        // (1−z)^{-1} = 1+z+z²+z³+... (long-division oracle, first 4 terms)
        let r = SeriesRing::new(FrobField::new(Fq::new(3, 1).unwrap(), 3).unwrap(), 4);
        let k = &r.base;
        let s = r.make(0, vec![k.one(), k.from_int(-1)], 4);
        let inv = r.inv(&s).unwrap();
        for i in 0..4 {
            assert_eq!(r.coeff(&inv, i), k.one());
        }
        assert!(r.elem_eq(&r.mul(&s, &inv), &r.one()));
    }

    #[test]
    fn invert_rejects_visibly_zero() {
        let r = ring();
        assert!(matches!(
            r.inv(&r.zero()),
            Err(crate::error::Error::NonUnit(_))
        ));
    }

    #[test]
    fn precision_tracking() {
        let r = ring(); // default prec 8
        let z = r.z_pow(1);
        let a = r.add(&r.one(), &z); // 1+z, prec 8
        assert_eq!(a.prec, 8);
        // multiplying by z^3 shifts precision
        let sh = r.shift(&a, 3);
        assert_eq!((sh.val, sh.prec), (3, 11));
        // inverse of z^2·unit loses 2·2 = 4 of absolute precision
        let b = r.shift(&a, 2);
        let bi = r.inv(&b).unwrap();
        assert_eq!(bi.val, -2);
        assert_eq!(bi.prec, (b.prec) - 4);
        // product of the two is 1 up to the provable precision
        assert!(r.elem_eq(&r.mul(&b, &bi), &r.one()));
    }

    #[test]
    fn add_cancellation_is_visible_zero() {
        let r = ring();
        let z = r.z_pow(1);
        let d = r.sub(&z, &z);
        assert!(r.is_zero(&d));
        assert!(r.order(&d).is_err());
    }

    #[test]
    fn sigma_coefficientwise() {
        let k9 = FrobField::new(Fq::new(3, 2).unwrap(), 3).unwrap();
        let r = SeriesRing::new(k9.clone(), 6);
        let g = k9.fq.gen();
        let s = r.make(-1, vec![g.clone(), k9.one()], 6);
        let ss = r.sigma(&s);
        assert_eq!(r.coeff(&ss, -1), k9.sigma(&g));
        assert_eq!(r.coeff(&ss, 0), k9.one());
        // z itself is fixed
        assert!(r.elem_eq(&r.sigma(&r.z_pow(1)), &r.z_pow(1)));
    }
}
