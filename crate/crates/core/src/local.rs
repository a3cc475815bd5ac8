//! Local isocrystals over K((z)) at working precision: purity checks,
//! lattice arithmetic over the valuation ring K[[z]], Newton polygons read
//! off characteristic polynomials, and the slope filtration.
//!
//! The filtration algorithm, per slope, works with the twisted operator
//! ρ = z^(−nα)·τⁿ (nα ∈ ℤ): saturate a lattice until it is ρ-stable, find
//! the largest ρ̄-stable subspace of L/zL (refining the lattice until the
//! image chain stabilizes in one step), lift that subspace to the unique
//! ρ-stable direct summand by a z-adically contractive iteration, split the
//! structure matrix along the summand, and recurse on the quotient.

use crate::error::{Error, Result};
use crate::fq::{Fq, FrobField, SubfieldMap};
use crate::matrix::{self, identity, mat_add, mat_eq, mat_mul, zero_matrix, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::polygon::{polygon_from_valuations, NewtonPolygon, Slope, SlopeDatum};
use crate::ratfunc::FuncField;
use crate::ring::{Field, Ring, SigmaRing};
use crate::series::{LaurentSeries, SeriesRing};
use crate::sparse::SparseFuncField;
use crate::taumodule::{mat_sigma, TauModule};
use num_rational::Ratio;

/// Series element over a finite coefficient field.
pub type SFq = LaurentSeries<crate::fq::FqElem>;

/// The twist ρ = z^(−shift)·τⁿ with shift = nα ∈ ℤ.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RhoSpec {
    pub n: u32,
    pub shift: i64,
}

impl RhoSpec {
    /// Smallest n with nα ∈ ℤ: the denominator of α.
    pub fn for_slope(alpha: Slope) -> RhoSpec {
        RhoSpec {
            n: *alpha.denom() as u32,
            shift: *alpha.numer(),
        }
    }
}

fn all_entries<K: Field>(
    sr: &SeriesRing<K>,
    m: &Matrix<LaurentSeries<K::Elem>>,
    pred: impl Fn(&LaurentSeries<K::Elem>) -> bool,
) -> bool {
    let _ = sr;
    m.data.iter().all(pred)
}

/// Every entry has valuation ≥ 0 (entries ≡ 0 at a nonnegative precision
/// count as integral).
pub fn mat_integral<K: Field>(sr: &SeriesRing<K>, m: &Matrix<LaurentSeries<K::Elem>>) -> bool {
    all_entries(sr, m, |e| e.val >= 0)
}

/// A lattice basis: integral entries and unit determinant over K[[z]].
pub fn is_lattice_basis<K: Field>(
    sr: &SeriesRing<K>,
    b: &Matrix<LaurentSeries<K::Elem>>,
) -> Result<bool> {
    if !mat_integral(sr, b) {
        return Ok(false);
    }
    let d = matrix::det(sr, b);
    match sr.order(&d) {
        Ok(v) => Ok(v == 0),
        Err(_) => Err(Error::PrecisionExhausted(
            "lattice determinant ≡ 0 at working precision".into(),
        )),
    }
}

/// z-order of the single entry of a rank-1 module (its slope, which is an
/// integer for rank 1).
pub fn rank1_slope<K: Field + SigmaRing>(m: &TauModule<SeriesRing<K>>) -> Result<i64> {
    if m.rank() != 1 {
        return Err(Error::domain(format!(
            "rank1_slope on a module of rank {}",
            m.rank()
        )));
    }
    m.ring.order(m.phi.at(0, 0))
}

/// Matrix of ρ = z^(−shift)·τⁿ in the standard basis.
pub fn rho_matrix<K: Field + SigmaRing>(
    m: &TauModule<SeriesRing<K>>,
    spec: RhoSpec,
) -> Result<Matrix<LaurentSeries<K::Elem>>> {
    let pm = m.tau_power_matrix(spec.n)?;
    Ok(pm.map(|e| m.ring.shift(e, -spec.shift)))
}

/// Matrix of the σⁿ-semilinear map v ↦ P·σⁿ(v) rewritten in the basis given
/// by the columns of B: B⁻¹·P·σⁿ(B).
fn conjugate<K: Field + SigmaRing>(
    sr: &SeriesRing<K>,
    p: &Matrix<LaurentSeries<K::Elem>>,
    b: &Matrix<LaurentSeries<K::Elem>>,
    n: u32,
) -> Result<Matrix<LaurentSeries<K::Elem>>> {
    let bi = matrix::inverse(sr, b)?;
    Ok(mat_mul(sr, &mat_mul(sr, &bi, p), &mat_sigma(sr, b, n)))
}

/// True iff τⁿ(L) generates z^(nα)·L over K[[z]] for the lattice with basis
/// matrix B: the coordinate matrix of the images must be z^(nα) times a unit
/// matrix over K[[z]].
pub fn purity_check<K: Field + SigmaRing>(
    m: &TauModule<SeriesRing<K>>,
    alpha: Slope,
    n: u32,
    b: &Matrix<LaurentSeries<K::Elem>>,
) -> Result<bool> {
    let na = alpha * Ratio::from_integer(n as i64);
    if !na.is_integer() {
        return Err(Error::domain(format!("n·α = {na} is not an integer")));
    }
    let sr = &m.ring;
    let p = m.tau_power_matrix(n)?;
    let c = conjugate(sr, &p, b, n)?;
    let shifted = c.map(|e| sr.shift(e, -na.to_integer()));
    if !mat_integral(sr, &shifted) {
        return Ok(false);
    }
    let d = matrix::det(sr, &shifted);
    match sr.order(&d) {
        Ok(v) => Ok(v == 0),
        Err(_) => Err(Error::PrecisionExhausted(
            "purity check: determinant ≡ 0 at working precision".into(),
        )),
    }
}

/// Column reduction over the discrete valuation ring K[[z]]: turn a full-rank
/// generating set (columns) into a triangular lattice basis. Generators that
/// reduce to ≡ 0 at working precision are dropped.
pub fn lattice_from_generators<K: Field>(
    sr: &SeriesRing<K>,
    gens: &Matrix<LaurentSeries<K::Elem>>,
) -> Result<Matrix<LaurentSeries<K::Elem>>> {
    let r = gens.rows;
    let mut cols: Vec<Vec<LaurentSeries<K::Elem>>> = (0..gens.cols).map(|j| gens.col(j)).collect();
    let mut basis: Vec<Vec<LaurentSeries<K::Elem>>> = Vec::with_capacity(r);
    for row in 0..r {
        // pivot: remaining column with minimal valuation in this row
        let mut best: Option<(usize, i64)> = None;
        for (ci, c) in cols.iter().enumerate() {
            if sr.is_visibly_zero(&c[row]) {
                continue;
            }
            if best.map(|(_, bv)| c[row].val < bv).unwrap_or(true) {
                best = Some((ci, c[row].val));
            }
        }
        let (pi, _) = best.ok_or_else(|| {
            Error::non_unit("lattice generators do not span full rank at working precision")
        })?;
        let pivot = cols.swap_remove(pi);
        let pinv = sr.inv(&pivot[row])?;
        for c in cols.iter_mut() {
            if sr.is_visibly_zero(&c[row]) {
                continue;
            }
            let f = sr.mul(&c[row], &pinv); // integral by pivot minimality
            for i in 0..r {
                let t = sr.mul(&f, &pivot[i]);
                c[i] = sr.sub(&c[i], &t);
            }
        }
        basis.push(pivot);
    }
    let mut out = zero_matrix(sr, r, r);
    for (j, c) in basis.iter().enumerate() {
        for i in 0..r {
            *out.at_mut(i, j) = c[i].clone();
        }
    }
    Ok(out)
}

/// L ⊇ span of the columns of G, both over K[[z]]: B⁻¹·G integral.
pub fn lattice_contains<K: Field>(
    sr: &SeriesRing<K>,
    b: &Matrix<LaurentSeries<K::Elem>>,
    g: &Matrix<LaurentSeries<K::Elem>>,
) -> Result<bool> {
    let bi = matrix::inverse(sr, b)?;
    Ok(mat_integral(sr, &mat_mul(sr, &bi, g)))
}

/// Grow L ← L + ρL until ρL ⊆ L. Terminates within the iteration budget
/// whenever every slope of M is ≥ α (the operator ρ is then power-bounded);
/// a candidate slope that is too large surfaces as NonStabilizing.
pub fn lattice_saturate<K: Field + SigmaRing>(
    m: &TauModule<SeriesRing<K>>,
    spec: RhoSpec,
    b0: &Matrix<LaurentSeries<K::Elem>>,
    maxiter: usize,
) -> Result<Matrix<LaurentSeries<K::Elem>>> {
    let sr = &m.ring;
    let p = rho_matrix(m, spec)?;
    let mut b = b0.clone();
    for _ in 0..maxiter.max(1) {
        let img = mat_mul(sr, &p, &mat_sigma(sr, &b, spec.n));
        if lattice_contains(sr, &b, &img)? {
            return Ok(b);
        }
        b = lattice_from_generators(sr, &b.hcat(&img))?;
    }
    Err(Error::NonStabilizing(
        "lattice saturation exceeded its iteration budget".into(),
    ))
}

/// Reduce a matrix over K[[z]] modulo z.
pub fn mat_mod_z<K: Field>(
    sr: &SeriesRing<K>,
    m: &Matrix<LaurentSeries<K::Elem>>,
) -> Matrix<K::Elem> {
    m.map(|e| sr.coeff(e, 0))
}

/// Basis of the K-span of the given vectors (Gaussian elimination).
fn colspace_basis<K: Field>(k: &K, vecs: &[Vec<K::Elem>]) -> Vec<Vec<K::Elem>> {
    // echelon: (pivot row, reduced vector with pivot normalized to 1)
    let mut echelon: Vec<(usize, Vec<K::Elem>)> = vec![];
    for v in vecs {
        let mut w = v.clone();
        for (pr, pv) in &echelon {
            if !k.is_zero(&w[*pr]) {
                let f = w[*pr].clone();
                for i in 0..w.len() {
                    let t = k.mul(&f, &pv[i]);
                    w[i] = k.sub(&w[i], &t);
                }
            }
        }
        if let Some(pr) = w.iter().position(|x| !k.is_zero(x)) {
            let inv = k.inv(&w[pr]).expect("nonzero pivot");
            for x in w.iter_mut() {
                *x = k.mul(&inv, x);
            }
            echelon.push((pr, w));
        }
    }
    echelon.into_iter().map(|(_, v)| v).collect()
}

/// Largest ρ̄-stable subspace V̄ = ∩ⱼ span(ρ̄ʲ(L/zL)) of the reduction,
/// together with the stabilization index k (smallest k with Vₖ = Vₖ₊₁,
/// where V₀ = L/zL and Vⱼ₊₁ = K-span of ρ̄(Vⱼ)). Returns the basis of V̄ as
/// constant column vectors. dim V̄ = 0 is a legal answer (all slopes exceed
/// the candidate).
pub fn mod_z_unit_part<K: Field + SigmaRing>(
    m: &TauModule<SeriesRing<K>>,
    spec: RhoSpec,
    b: &Matrix<LaurentSeries<K::Elem>>,
) -> Result<(Vec<Vec<K::Elem>>, usize)> {
    let sr = &m.ring;
    let k = &sr.base;
    let p = rho_matrix(m, spec)?;
    let c = conjugate(sr, &p, b, spec.n)?;
    if !mat_integral(sr, &c) {
        return Err(Error::domain(
            "ρ does not preserve the lattice; saturate first",
        ));
    }
    let cbar = mat_mod_z(sr, &c);
    let r = m.rank();
    let mut v: Vec<Vec<K::Elem>> = (0..r)
        .map(|j| (0..r).map(|i| if i == j { k.one() } else { k.zero() }).collect())
        .collect();
    let mut steps = 0usize;
    loop {
        let images: Vec<Vec<K::Elem>> = v
            .iter()
            .map(|w| {
                let sw: Vec<K::Elem> = w.iter().map(|x| k.sigma_pow(x, spec.n)).collect();
                matrix::mat_vec(k, &cbar, &sw)
            })
            .collect();
        let vnext = colspace_basis(k, &images);
        if vnext.len() == v.len() {
            return Ok((v, steps));
        }
        v = vnext;
        steps += 1;
    }
}

/// Extend the V̄ basis to a constant basis of K^r by greedily appending
/// standard basis vectors; returns the r×r matrix with the V̄ basis in the
/// first columns.
fn complete_constant_basis<K: Field>(k: &K, vbar: &[Vec<K::Elem>], r: usize) -> Matrix<K::Elem> {
    let mut chosen: Vec<Vec<K::Elem>> = vbar.to_vec();
    for j in 0..r {
        if chosen.len() == r {
            break;
        }
        let mut cand = chosen.clone();
        let e: Vec<K::Elem> = (0..r)
            .map(|i| if i == j { k.one() } else { k.zero() })
            .collect();
        cand.push(e.clone());
        if colspace_basis(k, &cand).len() > colspace_basis(k, &chosen).len() {
            chosen.push(e);
        }
    }
    assert_eq!(chosen.len(), r, "basis completion failed");
    let mut out = Matrix {
        rows: r,
        cols: r,
        data: vec![k.zero(); r * r],
    };
    for (j, c) in chosen.iter().enumerate() {
        for i in 0..r {
            *out.at_mut(i, j) = c[i].clone();
        }
    }
    out
}

/// Solve for the unique ρ-stable direct summand lifting the first s basis
/// vectors: with C the matrix of ρ in the current basis, blocked as
/// [[C11, C12], [C21, C22]] with C21, C22 ≡ 0 mod z and C11 invertible over
/// K[[z]], iterate
///   Θ ← (C21 + C22·σⁿ(Θ) − Θ·C12·σⁿ(Θ))·C11⁻¹
/// from Θ = init (≡ 0 mod z; default 0). The iteration is z-adically
/// contractive, so it reaches the working precision in ≤ prec steps; the
/// fixed point is verified before returning.
pub fn groucho_lift<K: Field + SigmaRing>(
    sr: &SeriesRing<K>,
    n: u32,
    c: &Matrix<LaurentSeries<K::Elem>>,
    s: usize,
    init: Option<&Matrix<LaurentSeries<K::Elem>>>,
) -> Result<Matrix<LaurentSeries<K::Elem>>> {
    let r = c.rows;
    let cdim = r - s;
    let rows_top: Vec<usize> = (0..s).collect();
    let rows_bot: Vec<usize> = (s..r).collect();
    let c11 = c.submatrix(&rows_top, &rows_top);
    let c12 = c.submatrix(&rows_top, &rows_bot);
    let c21 = c.submatrix(&rows_bot, &rows_top);
    let c22 = c.submatrix(&rows_bot, &rows_bot);
    if !mat_integral(sr, c) {
        return Err(Error::domain("lift requires an integral ρ-matrix"));
    }
    let k = &sr.base;
    let zero_mod_z = |m: &Matrix<LaurentSeries<K::Elem>>| {
        m.data.iter().all(|e| k.is_zero(&sr.coeff(e, 0)))
    };
    if !zero_mod_z(&c21) || !zero_mod_z(&c22) {
        return Err(Error::domain(
            "lift hypotheses fail: lower blocks of ρ are not ≡ 0 mod z",
        ));
    }
    let c11inv = matrix::inverse(sr, &c11)
        .map_err(|_| Error::domain("lift hypotheses fail: top-left block of ρ is not invertible"))?;
    let mut theta = match init {
        Some(t0) => {
            if !zero_mod_z(t0) || (t0.rows, t0.cols) != (cdim, s) {
                return Err(Error::domain("initial Θ must be ≡ 0 mod z of shape (r−s)×s"));
            }
            t0.clone()
        }
        None => zero_matrix(sr, cdim, s),
    };
    // the iteration gains one z-order per pass, so pass j only needs its
    // input mod z^(j+1); truncating intermediates keeps early passes cheap
    // when coefficients are large
    let iters = sr.prec.max(1) as usize + 2;
    let mut known = 1i64;
    for _ in 0..iters {
        let cur = theta.map(|e| sr.truncate(e, known));
        let st = mat_sigma(sr, &cur, n);
        let mut num = mat_add(sr, &c21, &mat_mul(sr, &c22, &st));
        let corr = mat_mul(sr, &cur, &mat_mul(sr, &c12, &st));
        num = matrix::mat_sub(sr, &num, &corr);
        let next = mat_mul(sr, &num, &c11inv).map(|e| sr.truncate(e, (known + 1).min(sr.prec)));
        if known >= sr.prec && mat_eq(sr, &next, &theta) {
            theta = next;
            break;
        }
        theta = next;
        known = (known + 1).min(sr.prec);
    }
    // verify the fixed point: Θ·C11 = C21 + C22·σⁿ(Θ) − Θ·C12·σⁿ(Θ)
    let st = mat_sigma(sr, &theta, n);
    let lhs = mat_mul(sr, &theta, &c11);
    let rhs = matrix::mat_sub(
        sr,
        &mat_add(sr, &c21, &mat_mul(sr, &c22, &st)),
        &mat_mul(sr, &theta, &mat_mul(sr, &c12, &st)),
    );
    if !mat_eq(sr, &lhs, &rhs) {
        return Err(Error::NonStabilizing(
            "summand iteration did not reach a fixed point at working precision".into(),
        ));
    }
    Ok(theta)
}

/// Newton polygon of a local isocrystal over K = GF(q^m): lower hull of the
/// coefficient valuations of det(X·I − Φ_m), hull slopes divided by m.
pub fn newton_polygon_local(m: &TauModule<SeriesRing<FrobField>>) -> Result<NewtonPolygon> {
    let mdeg = m.ring.base.degree_over_base();
    let pm = m.tau_power_matrix(mdeg)?;
    let ch = matrix::charpoly(&m.ring, &pm);
    let vals: Vec<Option<i64>> = ch
        .iter()
        .map(|c| if m.ring.is_visibly_zero(c) { None } else { Some(c.val) })
        .collect();
    let p = polygon_from_valuations(&vals)?;
    Ok(p.scale(Ratio::new(1, mdeg as i64)))
}

/// One step of a slope filtration: a pure piece with its generators written
/// as coordinate columns in the original basis (representatives, for pieces
/// beyond the first).
#[derive(Clone, Debug)]
pub struct FiltrationStep<E> {
    pub datum: SlopeDatum,
    pub generators: Matrix<E>,
}

/// Polygon of a computed filtration.
pub fn filtration_polygon<E>(steps: &[FiltrationStep<E>]) -> NewtonPolygon {
    NewtonPolygon::from_slopes(steps.iter().map(|s| (s.datum.slope, s.datum.mult)))
}

type Oracle<'a, K> = &'a dyn Fn(&TauModule<SeriesRing<K>>) -> Result<Slope>;

fn filtration_rec<K: Field + SigmaRing>(
    m: &TauModule<SeriesRing<K>>,
    emb: &Matrix<LaurentSeries<K::Elem>>,
    oracle: Oracle<K>,
    min_seen: Option<Slope>,
) -> Result<Vec<FiltrationStep<LaurentSeries<K::Elem>>>> {
    let sr = m.ring.clone();
    let rc = m.rank();
    if rc == 0 {
        return Ok(vec![]);
    }
    let alpha = oracle(m)?;
    if let Some(lo) = min_seen {
        if alpha <= lo {
            return Err(Error::NonStabilizing(format!(
                "quotient slope {alpha} is not above the previous slope {lo}"
            )));
        }
    }
    let spec = RhoSpec::for_slope(alpha);
    let maxiter = rc * sr.prec.max(1) as usize;

    // find a ρ-stable lattice whose reduction stabilizes in one ρ̄ step
    let mut b = identity(&sr, rc);
    let mut found: Option<(Matrix<LaurentSeries<K::Elem>>, Vec<Vec<K::Elem>>)> = None;
    for _ in 0..maxiter {
        b = lattice_saturate(m, spec, &b, maxiter)?;
        let (vbar, k) = mod_z_unit_part(m, spec, &b)?;
        if vbar.is_empty() {
            return Err(Error::NonStabilizing(format!(
                "no slope-{alpha} part in the reduction; candidate slope too small"
            )));
        }
        if k <= 1 {
            found = Some((b, vbar));
            break;
        }
        // refine L ← ρᵏL + zL and retry
        let p = rho_matrix(m, spec)?;
        let mut rk = p.clone();
        for _ in 1..k {
            rk = mat_mul(&sr, &p, &mat_sigma(&sr, &rk, spec.n));
        }
        let rho_k_b = mat_mul(&sr, &rk, &mat_sigma(&sr, &b, spec.n * k as u32));
        let zb = b.map(|e| sr.shift(e, 1));
        b = lattice_from_generators(&sr, &rho_k_b.hcat(&zb))?;
    }
    let (b, vbar) = found.ok_or_else(|| {
        Error::NonStabilizing("lattice refinement did not reach the lift hypotheses".into())
    })?;
    let s = vbar.len();
    let e_const = complete_constant_basis(&sr.base, &vbar, rc);
    let e_series = e_const.map(|x| sr.constant(x.clone()));
    let be = mat_mul(&sr, &b, &e_series);

    if s == rc {
        // the whole module is pure of slope α
        if !purity_check(m, alpha, spec.n, &be)? {
            return Err(Error::NonStabilizing(format!(
                "module failed the purity check at slope {alpha}"
            )));
        }
        return Ok(vec![FiltrationStep {
            datum: SlopeDatum::new(alpha, rc),
            generators: mat_mul(&sr, emb, &be),
        }]);
    }

    let c = conjugate(&sr, &rho_matrix(m, spec)?, &be, spec.n)?;
    let theta = groucho_lift(&sr, spec.n, &c, s, None)?;
    // G = B·E·[[I, 0], [Θ, I]]: summand basis first, complement unchanged
    let mut u = identity(&sr, rc);
    for i in 0..rc - s {
        for j in 0..s {
            *u.at_mut(s + i, j) = theta.at(i, j).clone();
        }
    }
    let g = mat_mul(&sr, &be, &u);
    let gi = matrix::inverse(&sr, &g)?;
    let phi_new = mat_mul(&sr, &mat_mul(&sr, &gi, &m.phi), &mat_sigma(&sr, &g, 1));
    // the summand's span must be τ-stable: lower-left block of the
    // transformed structure matrix vanishes at working precision
    let rows_top: Vec<usize> = (0..s).collect();
    let rows_bot: Vec<usize> = (s..rc).collect();
    let lower_left = phi_new.submatrix(&rows_bot, &rows_top);
    if !all_entries(&sr, &lower_left, |e| sr.is_visibly_zero(e)) {
        return Err(Error::NonStabilizing(
            "slope summand is not τ-stable at working precision".into(),
        ));
    }
    let a_blk = phi_new.submatrix(&rows_top, &rows_top);
    let sub = TauModule::new(sr.clone(), a_blk)?;
    if !purity_check(&sub, alpha, spec.n, &identity(&sr, s))? {
        return Err(Error::NonStabilizing(format!(
            "graded piece failed the purity check at slope {alpha}"
        )));
    }
    let d_blk = phi_new.submatrix(&rows_bot, &rows_bot);
    let quot = TauModule::new(sr.clone(), d_blk)?;
    let all_rows: Vec<usize> = (0..rc).collect();
    let gens = mat_mul(&sr, emb, &g.submatrix(&all_rows, &rows_top));
    let emb2 = mat_mul(&sr, emb, &g.submatrix(&all_rows, &rows_bot));
    let mut steps = vec![FiltrationStep {
        datum: SlopeDatum::new(alpha, s),
        generators: gens,
    }];
    steps.extend(filtration_rec(&quot, &emb2, oracle, Some(alpha))?);
    Ok(steps)
}

fn check_endpoint<K: Field + SigmaRing>(
    m: &TauModule<SeriesRing<K>>,
    steps: &[FiltrationStep<LaurentSeries<K::Elem>>],
) -> Result<()> {
    let d = matrix::det(&m.ring, &m.phi);
    let ord = m.ring.order(&d).map_err(|_| {
        Error::PrecisionExhausted("det Φ ≡ 0 at working precision".into())
    })?;
    let total: Slope = steps
        .iter()
        .map(|s| s.datum.slope * Ratio::from_integer(s.datum.mult as i64))
        .sum();
    if total != Ratio::from_integer(ord) {
        return Err(Error::domain(format!(
            "filtration endpoint {total} does not match ord(det Φ) = {ord}"
        )));
    }
    Ok(())
}

/// Slope filtration over a finite coefficient field: the smallest slope at
/// each stage is read off the Newton polygon.
pub fn slope_filtration_finite(
    m: &TauModule<SeriesRing<FrobField>>,
) -> Result<Vec<FiltrationStep<SFq>>> {
    let oracle = |mm: &TauModule<SeriesRing<FrobField>>| -> Result<Slope> {
        newton_polygon_local(mm)?
            .smallest_slope()
            .ok_or_else(|| Error::domain("empty polygon"))
    };
    let steps = filtration_rec(m, &identity(&m.ring, m.rank()), &oracle, None)?;
    check_endpoint(m, &steps)?;
    Ok(steps)
}

/// Coefficient fields of the form F_q(ξ) whose elements can be evaluated at
/// closed points of the ξ-line; this is what specialization-based slope
/// discovery needs. Implemented by the dense [`FuncField`] and the sparse
/// [`SparseFuncField`].
pub trait XiField: Field + SigmaRing {
    fn base_fq(&self) -> &Fq;
    /// Evaluate at x in the extension `big` of the base field, embedding
    /// base-field scalars through `embed`; None at poles.
    fn eval_at(
        &self,
        a: &Self::Elem,
        big: &Fq,
        embed: &dyn Fn(&crate::fq::FqElem) -> crate::fq::FqElem,
        x: &crate::fq::FqElem,
    ) -> Option<crate::fq::FqElem>;
}

impl XiField for FuncField {
    fn base_fq(&self) -> &Fq {
        &self.rf.poly.base
    }
    fn eval_at(
        &self,
        a: &Self::Elem,
        big: &Fq,
        embed: &dyn Fn(&crate::fq::FqElem) -> crate::fq::FqElem,
        x: &crate::fq::FqElem,
    ) -> Option<crate::fq::FqElem> {
        self.rf.eval_in(a, big, embed, x)
    }
}

impl XiField for SparseFuncField {
    fn base_fq(&self) -> &Fq {
        &self.fq
    }
    fn eval_at(
        &self,
        a: &Self::Elem,
        big: &Fq,
        embed: &dyn Fn(&crate::fq::FqElem) -> crate::fq::FqElem,
        x: &crate::fq::FqElem,
    ) -> Option<crate::fq::FqElem> {
        self.eval_in(a, big, embed, x)
    }
}

/// Specialize a local isocrystal over F_q(ξ)((z)) at a closed point of the
/// ξ-line: a monic irreducible m_x(ξ) of degree d, mapping into GF(q^d).
/// Errors if any coefficient has a pole at the point.
pub fn specialize_local<K: XiField>(
    m: &TauModule<SeriesRing<K>>,
    point: &Poly<Fq>,
) -> Result<TauModule<SeriesRing<FrobField>>> {
    let base = m.ring.base.base_fq().clone();
    let q = base.order();
    let d = point.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
        Error::domain("specialization point must be a nonconstant monic irreducible")
    })?;
    let big = Fq::new(base.p, base.e * d)?;
    let map = SubfieldMap::new(base.clone(), big.clone())?;
    let pr_big = PolyRing::new(big.clone(), "xi");
    let point_up: Poly<Fq> = point.iter().map(|c| map.up(c)).collect();
    let root = pr_big
        .roots(&point_up)
        .into_iter()
        .next()
        .ok_or_else(|| Error::domain("point polynomial has no root in its residue field"))?;
    let frob = FrobField::new(big.clone(), q)?;
    let sr_new = SeriesRing::new(frob.clone(), m.ring.prec);
    let k = &m.ring.base;
    let embed = |x: &crate::fq::FqElem| map.up(x);
    let mut data = Vec::with_capacity(m.phi.data.len());
    for e in &m.phi.data {
        let coeffs: Result<Vec<crate::fq::FqElem>> = e
            .coeffs
            .iter()
            .map(|c| {
                k.eval_at(c, &big, &embed, &root).ok_or_else(|| {
                    Error::domain("coefficient has a pole at the specialization point")
                })
            })
            .collect();
        data.push(sr_new.make(e.val, coeffs?, e.prec));
    }
    TauModule::new(
        sr_new,
        Matrix {
            rows: m.phi.rows,
            cols: m.phi.cols,
            data,
        },
    )
}

/// Generic smallest slope over K = F_q(ξ), estimated as the minimum over
/// specializations at all degree-≤2 closed points with well-defined
/// reduction (same determinant order), justified by semicontinuity: every
/// specialized polygon lies on or above the generic one with the same
/// endpoint, with equality off a proper closed set. The estimate is verified
/// downstream by a successful summand lift.
pub fn generic_smallest_slope<K: XiField>(m: &TauModule<SeriesRing<K>>) -> Result<Slope> {
    let gdet = matrix::det(&m.ring, &m.phi);
    let gord = m.ring.order(&gdet).map_err(|_| {
        Error::PrecisionExhausted("det Φ ≡ 0 at working precision".into())
    })?;
    let base = m.ring.base.base_fq().clone();
    let pr = PolyRing::new(base, "xi");
    let mut best: Option<Slope> = None;
    for d in 1..=2usize {
        for pt in pr.monic_irreducibles(d) {
            let Ok(sp) = specialize_local(m, &pt) else { continue };
            let sdet = matrix::det(&sp.ring, &sp.phi);
            match sp.ring.order(&sdet) {
                Ok(v) if v == gord => {}
                _ => continue,
            }
            let Ok(poly) = newton_polygon_local(&sp) else { continue };
            if let Some(s) = poly.smallest_slope() {
                best = Some(best.map_or(s, |b: Slope| b.min(s)));
            }
        }
    }
    best.ok_or_else(|| {
        Error::NonStabilizing("no specialization with well-defined reduction found".into())
    })
}

/// Slope filtration over K = F_q(ξ): candidate slopes from specialization
/// sampling, verified by the lift; failures surface as NonStabilizing,
/// never as a wrong answer.
pub fn slope_filtration_generic<K: XiField>(
    m: &TauModule<SeriesRing<K>>,
) -> Result<Vec<FiltrationStep<LaurentSeries<K::Elem>>>> {
    let oracle = |mm: &TauModule<SeriesRing<K>>| -> Result<Slope> { generic_smallest_slope(mm) };
    let steps = filtration_rec(m, &identity(&m.ring, m.rank()), &oracle, None)?;
    check_endpoint(m, &steps)?;
    Ok(steps)
}

/// Convert a module over dense F_q(ξ) coefficients to the sparse
/// representation and run the filtration there; this is the scalable path
/// (lift coefficients reach ξ-degrees exponential in the z-precision).
pub fn slope_filtration_generic_sparse(
    m: &TauModule<SeriesRing<FuncField>>,
) -> Result<Vec<FiltrationStep<LaurentSeries<crate::sparse::SparseRat>>>> {
    let sparse = to_sparse_module(m)?;
    slope_filtration_generic(&sparse)
}

/// Reinterpret a dense F_q(ξ)((z)) module over the sparse coefficient field.
pub fn to_sparse_module(
    m: &TauModule<SeriesRing<FuncField>>,
) -> Result<TauModule<SeriesRing<SparseFuncField>>> {
    let k = SparseFuncField::new(m.ring.base.rf.poly.base.clone(), "xi");
    let sr = SeriesRing::new(k.clone(), m.ring.prec);
    let phi = m.phi.map(|e| {
        sr.make(
            e.val,
            e.coeffs.iter().map(|c| k.from_ratfunc(c)).collect(),
            e.prec,
        )
    });
    TauModule::new(sr, phi)
}

/// Splitting of a two-step filtration over a perfect (finite) field: for
/// Φ = [[A, B], [0, D]] with every slope of A strictly below every slope of
/// D, solve A·σ(θ) = B + θ·D by the contraction θ ← σ⁻¹(A⁻¹(B + θD)). The
/// columns of [−θ; I] then span the τ-stable complement, and v ↦ (first s
/// coordinates of v) + θ·(last coordinates) is the splitting section.
pub fn split_two_step(
    m: &TauModule<SeriesRing<FrobField>>,
    s: usize,
) -> Result<Matrix<SFq>> {
    let sr = &m.ring;
    let r = m.rank();
    if s == 0 || s >= r {
        return Err(Error::domain("two-step split needs 0 < s < rank"));
    }
    let rows_top: Vec<usize> = (0..s).collect();
    let rows_bot: Vec<usize> = (s..r).collect();
    let lower_left = m.phi.submatrix(&rows_bot, &rows_top);
    if !all_entries(sr, &lower_left, |e| sr.is_visibly_zero(e)) {
        return Err(Error::domain(
            "module is not block-triangular along the requested split",
        ));
    }
    let a = m.phi.submatrix(&rows_top, &rows_top);
    let bblk = m.phi.submatrix(&rows_top, &rows_bot);
    let d = m.phi.submatrix(&rows_bot, &rows_bot);
    let pa = newton_polygon_local(&TauModule::new(sr.clone(), a.clone())?)?;
    let pd = newton_polygon_local(&TauModule::new(sr.clone(), d.clone())?)?;
    let amax = pa.segments.last().map(|&(x, _)| x).unwrap();
    let dmin = pd.smallest_slope().unwrap();
    if amax >= dmin {
        return Err(Error::domain(format!(
            "two-step split needs sub slopes strictly below quotient slopes (got {amax} vs {dmin})"
        )));
    }
    let ainv = matrix::inverse(sr, &a)?;
    let mut theta = zero_matrix(sr, s, r - s);
    let iters = 2 * (sr.prec.max(1) as usize) * r + 4;
    for _ in 0..iters {
        let rhs = mat_mul(sr, &ainv, &mat_add(sr, &bblk, &mat_mul(sr, &theta, &d)));
        let next_data: Option<Vec<SFq>> = rhs.data.iter().map(|e| sr.sigma_inv(e)).collect();
        let next = Matrix {
            rows: rhs.rows,
            cols: rhs.cols,
            data: next_data
                .ok_or_else(|| Error::domain("σ⁻¹ unavailable on the coefficient field"))?,
        };
        if mat_eq(sr, &next, &theta) {
            theta = next;
            break;
        }
        theta = next;
    }
    // verify A·σ(θ) = B + θ·D at working precision
    let lhs = mat_mul(sr, &a, &mat_sigma(sr, &theta, 1));
    let rhs = mat_add(sr, &bblk, &mat_mul(sr, &theta, &d));
    if !mat_eq(sr, &lhs, &rhs) {
        return Err(Error::NonStabilizing(
            "splitting iteration did not stabilize at working precision".into(),
        ));
    }
    Ok(theta)
}
