//! Twisted polynomial rings E[τ] with the commutation rule τ·e = σ(e)·τ.
//!
//! Elements are coefficient vectors low-to-high in τ over a difference ring.
//! The ring is noncommutative, so it deliberately does not implement the
//! commutative `Ring` trait; the handful of operations the library needs are
//! provided directly.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Ring, SigmaRing};

pub type TwistedPoly<R> = Vec<<R as Ring>::Elem>;

#[derive(Clone, PartialEq, Debug)]
pub struct TwistedPolyRing<R: SigmaRing> {
    pub ring: R,
}

impl<R: SigmaRing> TwistedPolyRing<R> {
    pub fn new(ring: R) -> Self {
        TwistedPolyRing { ring }
    }

    pub fn trim(&self, mut f: TwistedPoly<R>) -> TwistedPoly<R> {
        while f.last().map(|c| self.ring.is_zero(c)).unwrap_or(false) {
            f.pop();
        }
        f
    }

    pub fn zero(&self) -> TwistedPoly<R> {
        vec![]
    }

    pub fn constant(&self, c: R::Elem) -> TwistedPoly<R> {
        self.trim(vec![c])
    }

    /// τ^n with unit coefficient.
    pub fn tau_pow(&self, n: usize) -> TwistedPoly<R> {
        let mut f = vec![self.ring.zero(); n + 1];
        f[n] = self.ring.one();
        f
    }

    pub fn deg(&self, f: &TwistedPoly<R>) -> Option<usize> {
        let f = self.trim(f.clone());
        if f.is_empty() {
            None
        } else {
            Some(f.len() - 1)
        }
    }

    /// Index and value of the lowest nonzero τ-coefficient.
    pub fn lowest_term(&self, f: &TwistedPoly<R>) -> Option<(usize, R::Elem)> {
        f.iter()
            .enumerate()
            .find(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| (i, c.clone()))
    }

    pub fn add(&self, a: &TwistedPoly<R>, b: &TwistedPoly<R>) -> TwistedPoly<R> {
        let n = a.len().max(b.len());
        let zero = self.ring.zero();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(
                self.ring
                    .add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)),
            );
        }
        self.trim(out)
    }

    /// (a τ^i)(b τ^j) = a·σ^i(b) τ^(i+j), extended bilinearly.
    pub fn twisted_mul(&self, a: &TwistedPoly<R>, b: &TwistedPoly<R>) -> TwistedPoly<R> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![self.ring.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.ring.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let term = self.ring.mul(x, &self.ring.sigma_pow(y, i as u32));
                out[i + j] = self.ring.add(&out[i + j], &term);
            }
        }
        self.trim(out)
    }

    /// Image of a commutative polynomial p ∈ F_q[t] (coefficients already
    /// embedded in R, all σ-fixed) under the F_q-algebra map t ↦ phi_t.
    pub fn twisted_compose(&self, p: &[R::Elem], phi_t: &TwistedPoly<R>) -> TwistedPoly<R> {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.twisted_mul(&acc, phi_t);
            acc = self.add(&acc, &self.constant(c.clone()));
        }
        acc
    }

    /// Embed a prime-field polynomial (e.g. a place polynomial ℘ ∈ F_p[t])
    /// into R coefficientwise and compose.
    pub fn twisted_compose_prime(
        &self,
        p: &Poly<crate::fq::Fq>,
        phi_t: &TwistedPoly<R>,
    ) -> Result<TwistedPoly<R>> {
        let coeffs: Result<Vec<R::Elem>> = p
            .iter()
            .map(|c| Ok(self.ring.from_int(c.clone().into_i64()?)))
            .collect();
        Ok(self.twisted_compose(&coeffs?, phi_t))
    }
}

/// Prime-field coefficients that can be read back as small integers (used
/// to transport F_p-polynomials into arbitrary difference rings).
pub trait IntoI64 {
    fn into_i64(self) -> Result<i64>;
}

impl IntoI64 for crate::fq::FqElem {
    fn into_i64(self) -> Result<i64> {
        if self.iter().skip(1).any(|&c| c != 0) {
            return Err(Error::domain(
                "coefficient not in the prime field; cannot transport",
            ));
        }
        Ok(self[0] as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Fq;
    use crate::ratfunc::FuncField;
    use crate::ring::Field;

    fn fxi(q: u64) -> TwistedPolyRing<FuncField> {
        TwistedPolyRing::new(FuncField::new(Fq::of_order(q).unwrap(), "xi"))
    }

    #[test]
    fn commutation_rule() {
        // τ·ξ = ξ^q·τ
        let tr = fxi(3);
        let xi = tr.ring.rf.var_elem();
        let lhs = tr.twisted_mul(&tr.tau_pow(1), &tr.constant(xi.clone()));
        let expected = vec![tr.ring.zero(), tr.ring.pow(&xi, 3)];
        assert_eq!(lhs, expected);
        // 1·b = b
        let b = tr.constant(xi.clone());
        assert_eq!(tr.twisted_mul(&tr.constant(tr.ring.one()), &b), b);
        // (τ+ξ)·τ = τ² + ξτ
        let a = vec![xi.clone(), tr.ring.one()];
        let prod = tr.twisted_mul(&a, &tr.tau_pow(1));
        assert_eq!(prod, vec![tr.ring.zero(), xi.clone(), tr.ring.one()]);
    }

    #[test]
    fn associativity_samples() {
        let tr = fxi(3);
        let xi = tr.ring.rf.var_elem();
        let xinv = tr.ring.inv(&xi).unwrap();
        let polys = [
            vec![xi.clone(), tr.ring.one()],
            vec![xinv, tr.ring.from_int(2), tr.ring.one()],
            tr.tau_pow(2),
        ];
        for a in &polys {
            for b in &polys {
                for c in &polys {
                    let l = tr.twisted_mul(&tr.twisted_mul(a, b), c);
                    let r = tr.twisted_mul(a, &tr.twisted_mul(b, c));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        let tr = fxi(3);
        // p = t ↦ phi_t
        let phi = vec![tr.ring.rf.var_elem(), tr.ring.one()];
        let p_t = vec![tr.ring.zero(), tr.ring.one()];
        assert_eq!(tr.twisted_compose(&p_t, &phi), phi);
        // p = t², phi_t = τ → τ²
        let p_t2 = vec![tr.ring.zero(), tr.ring.zero(), tr.ring.one()];
        assert_eq!(tr.twisted_compose(&p_t2, &tr.tau_pow(1)), tr.tau_pow(2));
        // p = t², phi_t = θ+τ with θ ∈ F_3 → θ² + (θ+θ³)τ + τ²
        let f3 = Fq::new(3, 1).unwrap();
        let tr3 = TwistedPolyRing::new(FuncField::new(f3, "xi"));
        let theta = tr3.ring.from_int(2);
        let phi = vec![theta.clone(), tr3.ring.one()];
        let out = tr3.twisted_compose(&p_t2, &phi);
        let theta_sq = tr3.ring.mul(&theta, &theta);
        let theta_cubed = tr3.ring.pow(&theta, 3);
        assert_eq!(
            out,
            vec![
                theta_sq,
                tr3.ring.add(&theta, &theta_cubed),
                tr3.ring.one()
            ]
        );
    }

    #[test]
    fn degree_additivity() {
        let tr = fxi(2);
        let xi = tr.ring.rf.var_elem();
        let a = vec![xi.clone(), tr.ring.one()]; // deg 1
        let b = vec![tr.ring.one(), xi.clone(), tr.ring.one()]; // deg 2
        assert_eq!(tr.deg(&tr.twisted_mul(&a, &b)), Some(3));
    }
}
