//! Deterministic sample streams for randomized checks.
//!
//! Property suites and the acceptance gate draw random field elements,
//! polynomials, rational functions, series, and τ-modules from a seeded
//! SplitMix64 stream, so every "random" check replays byte-for-byte across
//! runs and platforms.

use crate::fq::{Fq, FqElem, FrobField};
use crate::matrix::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ratfunc::{GlobalRing, RatFunc};
use crate::ring::Ring;
use crate::series::{LaurentSeries, SeriesRing};
use crate::taumodule::TauModule;

#[derive(Clone, Debug)]
pub struct Sampler {
    state: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        // SplitMix64
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in 0..n.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn fq_elem(&mut self, fq: &Fq) -> FqElem {
        fq.from_index(self.below(fq.order()))
    }

    pub fn fq_nonzero(&mut self, fq: &Fq) -> FqElem {
        fq.from_index(1 + self.below(fq.order() - 1))
    }

    /// Random polynomial of degree ≤ max_deg (possibly zero).
    pub fn poly(&mut self, pr: &PolyRing<Fq>, max_deg: usize) -> Poly<Fq> {
        let d = self.below(max_deg as u64 + 1) as usize;
        let f: Poly<Fq> = (0..=d).map(|_| self.fq_elem(&pr.base)).collect();
        pr.trim(f)
    }

    /// Random nonzero polynomial of degree ≤ max_deg.
    pub fn poly_nonzero(&mut self, pr: &PolyRing<Fq>, max_deg: usize) -> Poly<Fq> {
        loop {
            let f = self.poly(pr, max_deg);
            if !pr.is_zero(&f) {
                return f;
            }
        }
    }

    /// Random polynomial entry of F_q(t) ⊗ GF(q^m), degree ≤ max_deg in t.
    pub fn global_poly_elem(
        &mut self,
        gr: &GlobalRing<FrobField>,
        max_deg: usize,
    ) -> RatFunc<FqElem> {
        let big = &gr.coeff_field().fq;
        let d = self.below(max_deg as u64 + 1) as usize;
        let num: Vec<FqElem> = (0..=d).map(|_| self.fq_elem(big)).collect();
        gr.rf.from_poly(gr.rf.poly.trim(num))
    }

    /// Random τ-module over F_q(t) ⊗ GF(q^m) with polynomial entries and
    /// nonzero determinant.
    pub fn global_module(
        &mut self,
        gr: &GlobalRing<FrobField>,
        rank: usize,
        max_deg: usize,
    ) -> TauModule<GlobalRing<FrobField>> {
        loop {
            let rows: Vec<Vec<RatFunc<FqElem>>> = (0..rank)
                .map(|_| (0..rank).map(|_| self.global_poly_elem(gr, max_deg)).collect())
                .collect();
            let m = Matrix::from_rows(rows);
            if !gr.is_zero(&matrix::det(gr, &m)) {
                return TauModule::new(gr.clone(), m).unwrap();
            }
        }
    }

    /// Random Laurent series with valuation in lo..=hi at the ring's
    /// precision, nonzero lowest coefficient.
    pub fn series(
        &mut self,
        sr: &SeriesRing<FrobField>,
        lo: i64,
        hi: i64,
    ) -> LaurentSeries<FqElem> {
        let fq = &sr.base.fq;
        let val = lo + self.below((hi - lo + 1) as u64) as i64;
        let len = (sr.prec - val).max(1) as usize;
        let mut coeffs: Vec<FqElem> = (0..len).map(|_| self.fq_elem(fq)).collect();
        coeffs[0] = self.fq_nonzero(fq);
        sr.make(val, coeffs, sr.prec)
    }

    /// Random local τ-module over GF(q^m)((z)): entries of valuation ≥
    /// val_lo, determinant a nonzero series.
    pub fn local_module(
        &mut self,
        sr: &SeriesRing<FrobField>,
        rank: usize,
        val_lo: i64,
        val_hi: i64,
    ) -> TauModule<SeriesRing<FrobField>> {
        loop {
            let rows: Vec<Vec<LaurentSeries<FqElem>>> = (0..rank)
                .map(|_| {
                    (0..rank)
                        .map(|_| {
                            if self.below(4) == 0 {
                                sr.zero()
                            } else {
                                self.series(sr, val_lo, val_hi)
                            }
                        })
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows(rows);
            if !sr.is_visibly_zero(&matrix::det(sr, &m)) {
                return TauModule::new(sr.clone(), m).unwrap();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn sampled_modules_are_invertible() {
        let fq = Fq::of_order(9).unwrap();
        let k = FrobField::new(fq, 3).unwrap();
        let gr = GlobalRing::new(k.clone());
        let sr = SeriesRing::new(k, 12);
        let mut s = Sampler::new(1);
        for _ in 0..5 {
            let m = s.global_module(&gr, 2, 2);
            assert!(!gr.is_zero(&matrix::det(&gr, &m.phi)));
            let l = s.local_module(&sr, 2, 0, 2);
            assert!(!sr.is_visibly_zero(&matrix::det(&sr, &l.phi)));
        }
    }
}
