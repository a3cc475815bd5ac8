//! Slope factorization of monic polynomials over K((z)): split along the
//! Newton polygon into factors of pure slope, by rescaling the smallest
//! slope to zero (z = w^b, X = w^a·Y) and Hensel-lifting the coprime
//! factorization of the reduction mod w.

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::polygon::{polygon_from_valuations, Slope};
use crate::ring::{Field, Ring};
use crate::series::{LaurentSeries, SeriesRing};

type SPoly<K> = Vec<LaurentSeries<<K as Ring>::Elem>>;

fn poly_mul_series<K: Field>(sr: &SeriesRing<K>, a: &SPoly<K>, b: &SPoly<K>) -> SPoly<K> {
    let mut out = vec![sr.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = sr.add(&out[i + j], &sr.mul(x, y));
        }
    }
    out
}

/// a_i(z) ↦ a_i(w^b): spread coefficients with gaps of b−1 zeros.
fn stretch_series<K: Field>(
    srw: &SeriesRing<K>,
    k: &K,
    s: &LaurentSeries<K::Elem>,
    b: i64,
) -> LaurentSeries<K::Elem> {
    let mut coeffs = Vec::with_capacity(s.coeffs.len() * b as usize);
    for (i, c) in s.coeffs.iter().enumerate() {
        if i > 0 {
            coeffs.extend(std::iter::repeat(k.zero()).take(b as usize - 1));
        }
        coeffs.push(c.clone());
    }
    srw.make(s.val * b, coeffs, s.prec * b)
}

/// Inverse of [`stretch_series`]: a series in w all of whose exponents are
/// ≡ 0 mod b becomes a series in z = w^b; errors otherwise.
fn unstretch_series<K: Field>(
    srz: &SeriesRing<K>,
    k: &K,
    s: &LaurentSeries<K::Elem>,
    b: i64,
) -> Result<LaurentSeries<K::Elem>> {
    // precision: exponents e with b·e < s.prec are known
    let zprec = if s.prec >= 0 {
        (s.prec + b - 1).div_euclid(b)
    } else {
        s.prec.div_euclid(b)
    };
    if s.coeffs.is_empty() {
        return Ok(srz.make(0, vec![], zprec));
    }
    let mut coeffs = vec![];
    let mut val = None;
    for (i, c) in s.coeffs.iter().enumerate() {
        let e = s.val + i as i64;
        if k.is_zero(c) {
            continue;
        }
        if e.rem_euclid(b) != 0 {
            return Err(Error::domain(
                "slope factor does not descend to integer z-exponents",
            ));
        }
        let ez = e.div_euclid(b);
        let v = *val.get_or_insert(ez);
        coeffs.resize((ez - v) as usize + 1, k.zero());
        coeffs[(ez - v) as usize] = c.clone();
    }
    Ok(srz.make(val.unwrap_or(0), coeffs, zprec))
}

fn factorize_rec<K: Field>(
    sr: &SeriesRing<K>,
    p: &SPoly<K>,
) -> Result<Vec<(Slope, SPoly<K>)>> {
    let n = p.len() - 1;
    let vals: Vec<Option<i64>> = p
        .iter()
        .map(|c| if sr.is_visibly_zero(c) { None } else { Some(c.val) })
        .collect();
    let polygon = polygon_from_valuations(&vals)?;
    if polygon.segments.len() == 1 {
        return Ok(vec![(polygon.segments[0].0, p.to_vec())]);
    }
    let (mu, ell) = polygon.segments[0];
    let (a, b) = (*mu.numer(), *mu.denom());
    let k = sr.base.clone();
    let srw = SeriesRing::new(k.clone(), sr.prec * b);
    // Q(Y) = w^(−an)·P(w^a·Y) over K[[w]], monic and integral
    let q: SPoly<K> = p
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let cw = stretch_series(&srw, &k, c, b);
            srw.shift(&cw, -a * (n as i64 - i as i64))
        })
        .collect();
    for c in &q {
        if !sr.is_visibly_zero(c) && c.val < 0 {
            return Err(Error::domain("rescaled polynomial is not integral"));
        }
    }
    // reduction mod w: Y^(n−ℓ) · h̄ with h̄ monic of degree ℓ, h̄(0) ≠ 0
    let pr = PolyRing::new(k.clone(), "Y");
    let qbar: Vec<K::Elem> = q.iter().map(|c| srw.coeff(c, 0)).collect();
    let m = n - ell;
    if (0..m).any(|i| !k.is_zero(&qbar[i])) || k.is_zero(&qbar[m]) {
        return Err(Error::PrecisionExhausted(
            "reduction of the rescaled polynomial has the wrong shape".into(),
        ));
    }
    let gbar: Poly<K> = pr.monomial(k.one(), m);
    let hbar: Poly<K> = pr.trim(qbar[m..].to_vec());
    let (d, _abez, bbez) = pr.xgcd(&gbar, &hbar);
    if pr.deg(&d) != Some(0) {
        return Err(Error::domain("mod-w factors are not coprime"));
    }
    let di = k.inv(&pr.lead(&d).unwrap())?;
    let bbez = pr.scale(&di, &bbez);
    // Hensel lift order by order: g ≡ Y^m, h ≡ h̄ mod w, Q = g·h
    let mut g: SPoly<K> = gbar.iter().map(|c| srw.constant(c.clone())).collect();
    let mut h: SPoly<K> = hbar.iter().map(|c| srw.constant(c.clone())).collect();
    let wprec = srw.prec;
    for step in 1..wprec {
        let gh = poly_mul_series(&srw, &g, &h);
        let ek: Poly<K> = pr.trim(
            (0..n)
                .map(|i| {
                    let diff = srw.sub(&q[i], &gh[i]);
                    srw.coeff(&diff, step)
                })
                .collect(),
        );
        if pr.is_zero(&ek) {
            continue;
        }
        // δg·h̄ + ḡ·δh = ē: δg = b̄·ē mod ḡ, δh = (ē − δg·h̄)/ḡ
        let (_, dg) = pr.divrem(&pr.mul(&bbez, &ek), &gbar)?;
        let dh = pr.exact_div(&pr.sub(&ek, &pr.mul(&dg, &hbar)), &gbar)?;
        for (j, c) in dg.iter().enumerate() {
            g[j] = srw.add(&g[j], &srw.shift(&srw.constant(c.clone()), step));
        }
        for (j, c) in dh.iter().enumerate() {
            h[j] = srw.add(&h[j], &srw.shift(&srw.constant(c.clone()), step));
        }
    }
    let gh = poly_mul_series(&srw, &g, &h);
    for (x, y) in q.iter().zip(gh.iter()) {
        if !srw.elem_eq(x, y) {
            return Err(Error::PrecisionExhausted(
                "Hensel lift did not converge at working precision".into(),
            ));
        }
    }
    // undo X = w^a·Y: slope-μ factor w^(aℓ)·h(X·w^(−a)), cofactor likewise
    let mut factor: SPoly<K> = Vec::with_capacity(ell + 1);
    for (j, c) in h.iter().enumerate() {
        let shifted = srw.shift(c, a * (ell as i64 - j as i64));
        factor.push(unstretch_series(sr, &k, &shifted, b)?);
    }
    let mut cofactor: SPoly<K> = Vec::with_capacity(m + 1);
    for (j, c) in g.iter().enumerate() {
        let shifted = srw.shift(c, a * (m as i64 - j as i64));
        cofactor.push(unstretch_series(sr, &k, &shifted, b)?);
    }
    let mut out = vec![(mu, factor)];
    out.extend(factorize_rec(sr, &cofactor)?);
    Ok(out)
}

/// Factor a monic polynomial over K((z)) with nonzero constant term into
/// monic factors of pure Newton-polygon slope, in ascending slope order;
/// the factors re-multiply to the input at working precision (asserted).
pub fn slope_factorize<K: Field>(
    sr: &SeriesRing<K>,
    p: &[LaurentSeries<K::Elem>],
) -> Result<Vec<(Slope, SPoly<K>)>> {
    if p.len() < 2 {
        return Err(Error::domain("slope factorization needs degree ≥ 1"));
    }
    if !sr.elem_eq(p.last().unwrap(), &sr.one()) {
        return Err(Error::domain("slope factorization needs a monic input"));
    }
    if sr.is_visibly_zero(&p[0]) {
        return Err(Error::domain(
            "slope factorization needs a nonzero constant term",
        ));
    }
    let factors = factorize_rec(sr, &p.to_vec())?;
    // exact re-multiplication check
    let mut prod: SPoly<K> = vec![sr.one()];
    for (_, f) in &factors {
        prod = poly_mul_series(sr, &prod, f);
    }
    for (x, y) in p.iter().zip(prod.iter()) {
        if !sr.elem_eq(x, y) {
            return Err(Error::PrecisionExhausted(
                "slope factors do not re-multiply to the input".into(),
            ));
        }
    }
    Ok(factors)
}
