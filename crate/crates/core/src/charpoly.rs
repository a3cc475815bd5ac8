//! Frobenius characteristic polynomials of τ-modules over finite
//! coefficient fields: det(X·I − Φ_m) over GF(q^m)(t), descent of the
//! coefficients to F_q(t), the determinant cross-check on the restriction
//! of scalars, the place-by-place root-valuation/slope dictionary, and the
//! geometric Frobenius structure.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem, FrobField, SubfieldMap};
use crate::matrix::{self, identity, mat_eq, mat_mul, Matrix};
use crate::place::{ord_at_place, Place};
use crate::polygon::{polygon_from_valuations, NewtonPolygon};
use crate::ratfunc::{GlobalRing, RatFunc, RatFuncField};
use crate::ring::{Ring, SigmaRing};
use crate::taumodule::TauModule;
use num_rational::Ratio;

/// A monic characteristic polynomial with coefficients in F_q(t),
/// low-to-high in X; degree = rank of the module, length = rank + 1.
#[derive(Clone, Debug)]
pub struct GlobalCharPoly {
    pub base: RatFuncField<Fq>,
    pub coeffs: Vec<RatFunc<FqElem>>,
}

impl GlobalCharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All coefficients lie in F_q[t].
    pub fn is_a_integral(&self) -> bool {
        self.coeffs.iter().all(|c| self.base.is_polynomial(c))
    }

    /// t-degree of the i-th coefficient as a rational function (None for
    /// zero): deg num − deg den.
    pub fn coeff_t_degree(&self, i: usize) -> Option<i64> {
        self.base.poly.deg(&self.coeffs[i].num).map(|d| {
            let dd = self.base.poly.deg(&self.coeffs[i].den).unwrap_or(0);
            d as i64 - dd as i64
        })
    }
}

fn descend_coeff(
    small: &Fq,
    map: &SubfieldMap,
    a: &RatFunc<FqElem>,
) -> Result<RatFunc<FqElem>> {
    let down = |v: &[FqElem]| -> Result<Vec<FqElem>> {
        v.iter()
            .map(|c| {
                map.down(c).ok_or_else(|| {
                    Error::DescentFailure(format!(
                        "coefficient {c:?} does not lie in the subfield of order {}",
                        small.order()
                    ))
                })
            })
            .collect()
    };
    Ok(RatFunc {
        num: down(&a.num)?,
        den: down(&a.den)?,
    })
}

/// det(X·I − Φ_m) over GF(q^m)(t), with every coefficient verified σ-fixed
/// and descended to F_q(t). A descent failure signals an implementation bug,
/// not a user error.
pub fn charpoly_global(m: &TauModule<GlobalRing<FrobField>>) -> Result<GlobalCharPoly> {
    let ring = &m.ring;
    let k = ring.coeff_field().clone();
    let mdeg = k.degree_over_base();
    if ring.is_zero(&matrix::det(ring, &m.phi)) {
        return Err(Error::domain("charpoly requires det Φ ≠ 0"));
    }
    let phim = m.tau_power_matrix(mdeg)?;
    let ch = matrix::charpoly(ring, &phim);
    for c in &ch {
        if !ring.elem_eq(&ring.sigma(c), c) {
            return Err(Error::DescentFailure(
                "characteristic-polynomial coefficient is not σ-fixed".into(),
            ));
        }
    }
    let small = Fq::of_order(k.q)?;
    let map = SubfieldMap::new(small.clone(), k.fq.clone())?;
    let coeffs: Result<Vec<_>> = ch.iter().map(|c| descend_coeff(&small, &map, c)).collect();
    Ok(GlobalCharPoly {
        base: RatFuncField::new(small, "t"),
        coeffs: coeffs?,
    })
}

/// Matrix of τ_M on the restriction of scalars to F_q(t): the rm-dimensional
/// F_q(t)-space with basis u^i·e_j (u the generator of GF(q^m) over F_q).
/// Implemented for prime q and polynomial entries, where the u-power
/// coordinates of GF(q^m) elements are directly available.
pub fn restriction_of_scalars_matrix(
    m: &TauModule<GlobalRing<FrobField>>,
) -> Result<Matrix<RatFunc<FqElem>>> {
    let ring = &m.ring;
    let k = ring.coeff_field();
    if k.q != k.fq.p as u64 {
        return Err(Error::domain(
            "restriction-of-scalars matrix implemented for prime q only",
        ));
    }
    let mdeg = k.degree_over_base() as usize;
    let r = m.rank();
    let small = Fq::new(k.fq.p, 1)?;
    let small_rf = RatFuncField::new(small.clone(), "t");
    let pr = &small_rf.poly;
    let n = r * mdeg;
    let mut out = Matrix {
        rows: n,
        cols: n,
        data: vec![small_rf.zero(); n * n],
    };
    let u = k.fq.gen();
    for j in 0..r {
        for i in 0..mdeg {
            // τ(u^i e_j) = u^(iq) · Σ_l Φ_{l,j} e_l
            let upow = k.fq.pow(&u, i as u64 * k.q);
            for l in 0..r {
                let entry = m.phi.at(l, j);
                if !ring.rf.is_polynomial(entry) {
                    return Err(Error::domain(
                        "restriction-of-scalars matrix needs polynomial entries",
                    ));
                }
                // u^(iq)·Φ_{l,j} as a polynomial in t over GF(q^m); its
                // u-coordinates give the F_q(t) entries in rows (l, i')
                let scaled: Vec<FqElem> =
                    entry.num.iter().map(|c| k.fq.mul(&upow, c)).collect();
                for ip in 0..mdeg {
                    let tpoly: Vec<FqElem> = scaled
                        .iter()
                        .map(|c| vec![c[ip]]) // F_p coordinate of u^ip
                        .collect();
                    let tpoly = pr.trim(tpoly);
                    if !pr.is_zero(&tpoly) {
                        let cur = out.at(l * mdeg + ip, j * mdeg + i).clone();
                        *out.at_mut(l * mdeg + ip, j * mdeg + i) =
                            small_rf.add(&cur, &small_rf.from_poly(tpoly));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The determinant identity char_M(X^m) = det_{F_q(t)}(X·id − τ_M), with the
/// right side computed on the restriction-of-scalars matrix.
pub fn restriction_determinant_identity(m: &TauModule<GlobalRing<FrobField>>) -> Result<bool> {
    let cp = charpoly_global(m)?;
    let big = restriction_of_scalars_matrix(m)?;
    let rf = &cp.base;
    let rhs = matrix::charpoly(rf, &big);
    // char_M(X^m): coefficient of X^(i·m) is a_i
    let mdeg = m.ring.coeff_field().degree_over_base() as usize;
    let mut lhs = vec![rf.zero(); cp.degree() * mdeg + 1];
    for (i, a) in cp.coeffs.iter().enumerate() {
        lhs[i * mdeg] = a.clone();
    }
    Ok(lhs.len() == rhs.len()
        && lhs
            .iter()
            .zip(rhs.iter())
            .all(|(a, b)| rf.elem_eq(a, b)))
}

/// Newton polygon of a global characteristic polynomial at a place: lower
/// hull of (i, ord_p(a_i)); hull gives root valuations, isocrystal slopes
/// are valuations·d_p/m with multiplicities the horizontal lengths.
pub fn newton_at_place(cp: &GlobalCharPoly, p: &Place, m: u32) -> Result<NewtonPolygon> {
    if cp.base.is_zero(&cp.coeffs[0]) {
        return Err(Error::domain(
            "constant coefficient is 0: τ is not bijective",
        ));
    }
    let vals: Result<Vec<Option<i64>>> = cp
        .coeffs
        .iter()
        .map(|c| {
            if cp.base.is_zero(c) {
                Ok(None)
            } else {
                ord_at_place(&cp.base, c, p).map(Some)
            }
        })
        .collect();
    let poly = polygon_from_valuations(&vals?)?;
    Ok(poly.scale(Ratio::new(p.residue_degree() as i64, m as i64)))
}

/// The hull itself as integer vertices (for serialization): points
/// (i, ord_p(a_i)) of the coefficient polygon.
pub fn hull_at_place(cp: &GlobalCharPoly, p: &Place) -> Result<Vec<(i64, i64)>> {
    let vals: Result<Vec<Option<i64>>> = cp
        .coeffs
        .iter()
        .map(|c| {
            if cp.base.is_zero(c) {
                Ok(None)
            } else {
                ord_at_place(&cp.base, c, p).map(Some)
            }
        })
        .collect();
    Ok(crate::polygon::hull_vertices(&vals?))
}

/// A τ-module over GF(q^m)(t) together with its geometric Frobenius matrix
/// Φ_m⁻¹; the characteristic polynomial of the Frobenius matrix's inverse
/// equals charpoly_global(M), asserted at construction.
#[derive(Clone, Debug)]
pub struct FrobeniusStructure {
    pub module: TauModule<GlobalRing<FrobField>>,
    pub frobenius: Matrix<RatFunc<FqElem>>,
    pub charpoly: GlobalCharPoly,
}

pub fn frobenius_structure(m: &TauModule<GlobalRing<FrobField>>) -> Result<FrobeniusStructure> {
    let ring = m.ring.clone();
    let mdeg = ring.coeff_field().degree_over_base();
    let phim = m.tau_power_matrix(mdeg)?;
    let frobenius = matrix::inverse(&ring, &phim)
        .map_err(|_| Error::non_unit("Φ_m is singular; no Frobenius structure"))?;
    if !mat_eq(&ring, &mat_mul(&ring, &frobenius, &phim), &identity(&ring, m.rank())) {
        return Err(Error::domain("Frobenius matrix times Φ_m is not the identity"));
    }
    let charpoly = charpoly_global(m)?;
    // char of Frob⁻¹ = char_M: recompute the inverse rather than reusing Φ_m
    let frob_inv = matrix::inverse(&ring, &frobenius)?;
    let ch = matrix::charpoly(&ring, &frob_inv);
    let small = charpoly.base.poly.base.clone();
    let map = SubfieldMap::new(small.clone(), ring.coeff_field().fq.clone())?;
    for (a, b) in ch.iter().zip(charpoly.coeffs.iter()) {
        let a = descend_coeff(&small, &map, a)?;
        if !charpoly.base.elem_eq(&a, b) {
            return Err(Error::domain(
                "characteristic polynomial of Frob⁻¹ differs from char_M",
            ));
        }
    }
    Ok(FrobeniusStructure {
        module: m.clone(),
        frobenius,
        charpoly,
    })
}
