//! Subcommand implementations. Each returns a [`Rendered`] report; the
//! binary maps errors and failed assertions to exit codes.

use std::collections::BTreeMap;

use serde_json::json;
use taucrys::charpoly::{charpoly_global, hull_at_place, newton_at_place, GlobalCharPoly};
use taucrys::drinfeld::DrinfeldModule;
use taucrys::error::{Error, Result};
use taucrys::factor::slope_factorize;
use taucrys::fq::{Fq, FrobField, SubfieldMap};
use taucrys::local::{
    newton_polygon_local, slope_filtration_finite, slope_filtration_generic_sparse,
    FiltrationStep,
};
use taucrys::matrix::Matrix;
use taucrys::parser::parse_in;
use taucrys::place::{expand_ratfunc, ExpandAt, Place};
use taucrys::poly::PolyRing;
use taucrys::ratfunc::{FuncField, GlobalRing, RatFunc, RatFuncField};
use taucrys::ring::{Field, Ring, SigmaRing};
use taucrys::series::SeriesRing;
use taucrys::taumodule::TauModule;

use crate::compat::run_compat_sweep;
use crate::jobspec::JobObject;
use crate::output::{polygon_cell, polygon_json, slope_str, vertices_json, Rendered};

/// Everything a subcommand needs, already parsed and validated.
pub struct Job {
    pub q: u64,
    pub object: Option<JobObject>,
    pub precision: i64,
    pub places: Vec<Place>,
    pub degree_bound: usize,
    pub char_expr: Option<String>,
}

fn need_object(job: &Job) -> Result<&JobObject> {
    job.object
        .as_ref()
        .ok_or_else(|| Error::parse("this command needs an input file describing the object"))
}

fn finite_charpoly(job: &Job) -> Result<(GlobalCharPoly, u32)> {
    match need_object(job)? {
        JobObject::DrinfeldFinite(phi) => Ok((
            charpoly_global(&phi.motive()?)?,
            phi.base.degree_over_base(),
        )),
        JobObject::TauFinite(m) => Ok((charpoly_global(m)?, m.ring.coeff_field().degree_over_base())),
        _ => Err(Error::domain(
            "characteristic polynomials need a finite coefficient field \
             (base.kind = finite_field)",
        )),
    }
}

/// Parse a monic polynomial in X with coefficients in F_q(t) ("X^2-X-t")
/// into a characteristic-polynomial record.
pub fn parse_char_poly(q: u64, s: &str) -> Result<GlobalCharPoly> {
    let fq = Fq::of_order(q)?;
    let rf = RatFuncField::new(fq, "t");
    let pr_x = PolyRing::new(rf.clone(), "X");
    let mut vars = BTreeMap::new();
    vars.insert("X".to_string(), pr_x.var_elem());
    vars.insert("t".to_string(), pr_x.constant(rf.var_elem()));
    let f = parse_in(&pr_x, s, &vars)?;
    match pr_x.lead(&f) {
        Some(l) if rf.is_one(&l) => {}
        _ => return Err(Error::domain("characteristic polynomial must be monic in X")),
    }
    Ok(GlobalCharPoly { base: rf, coeffs: f })
}

/// Entrywise Laurent expansion of a τ-module with rational-function entries
/// at a degree-1 place or ∞.
pub fn localize_tau_module(
    m: &TauModule<GlobalRing<FrobField>>,
    p: &Place,
    n: i64,
) -> Result<TauModule<SeriesRing<FrobField>>> {
    let k = m.ring.coeff_field().clone();
    let small = Fq::of_order(k.q)?;
    let at = match p {
        Place::Infinity => ExpandAt::Infinity,
        Place::Finite(f) if f.len() == 2 => {
            let map = SubfieldMap::new(small.clone(), k.fq.clone())?;
            ExpandAt::Finite(map.up(&p.linear_root(&small).unwrap()))
        }
        Place::Finite(f) => {
            return Err(Error::NotImplementedPlace(format!(
                "localization at a finite place of degree {}",
                f.len() - 1
            )))
        }
    };
    let sr = SeriesRing::new(k, n);
    expand_module(&m.ring, &sr, &m.phi, &at)
}

fn expand_module<K: Field + SigmaRing>(
    gr: &GlobalRing<K>,
    sr: &SeriesRing<K>,
    phi: &Matrix<RatFunc<K::Elem>>,
    at: &ExpandAt<K::Elem>,
) -> Result<TauModule<SeriesRing<K>>> {
    let mut rows = Vec::with_capacity(phi.rows);
    for i in 0..phi.rows {
        let mut row = Vec::with_capacity(phi.cols);
        for j in 0..phi.cols {
            let e = phi.at(i, j);
            row.push(if gr.is_zero(e) {
                sr.zero()
            } else {
                expand_ratfunc(&gr.rf, sr, e, at)?
            });
        }
        rows.push(row);
    }
    TauModule::new(sr.clone(), Matrix::from_rows(rows))
}

fn localize_family(
    m: &TauModule<GlobalRing<FuncField>>,
    p: &Place,
    n: i64,
) -> Result<TauModule<SeriesRing<FuncField>>> {
    let k = m.ring.coeff_field().clone();
    let small = k.rf.poly.base.clone();
    let at = match p {
        Place::Infinity => ExpandAt::Infinity,
        Place::Finite(f) if f.len() == 2 => {
            let a = p.linear_root(&small).unwrap();
            ExpandAt::Finite(k.rf.from_poly(vec![a]))
        }
        Place::Finite(f) => {
            return Err(Error::NotImplementedPlace(format!(
                "localization at a finite place of degree {}",
                f.len() - 1
            )))
        }
    };
    let sr = SeriesRing::new(k, n);
    expand_module(&m.ring, &sr, &m.phi, &at)
}

pub fn cmd_charpoly(job: &Job) -> Result<Rendered> {
    let (cp, _) = finite_charpoly(job)?;
    let coeffs: Vec<String> = cp.coeffs.iter().map(|c| cp.base.display(c)).collect();
    let json = json!({
        "command": "charpoly",
        "q": job.q,
        "degree": cp.degree(),
        "a_integral": cp.is_a_integral(),
        "coefficients": coeffs,
    });
    let mut rows = vec![vec!["power_of_X".to_string(), "coefficient".to_string()]];
    for (i, c) in coeffs.iter().enumerate() {
        rows.push(vec![i.to_string(), c.clone()]);
    }
    Ok(Rendered {
        json,
        rows,
        ok: true,
    })
}

fn default_places(job: &Job) -> Vec<Place> {
    if job.places.is_empty() {
        vec![Place::Infinity]
    } else {
        job.places.clone()
    }
}

pub fn cmd_newton(job: &Job) -> Result<Rendered> {
    let (cp, m) = if let Some(expr) = &job.char_expr {
        (parse_char_poly(job.q, expr)?, 1)
    } else {
        finite_charpoly(job)?
    };
    let fq = cp.base.poly.base.clone();
    let pr_t = PolyRing::new(fq.clone(), "t");
    let mut places = default_places(job);
    places.sort_by_key(|p| p.sort_key(&fq));
    places.dedup();
    let mut entries = Vec::new();
    let mut rows = vec![vec![
        "place".to_string(),
        "vertices".to_string(),
        "slopes".to_string(),
    ]];
    for p in &places {
        let verts = hull_at_place(&cp, p)?;
        let poly = newton_at_place(&cp, p, m)?;
        rows.push(vec![
            p.display(&pr_t),
            verts
                .iter()
                .map(|(x, y)| format!("[{x},{y}]"))
                .collect::<Vec<_>>()
                .join(" "),
            polygon_cell(&poly),
        ]);
        entries.push(json!({
            "place": p.display(&pr_t),
            "vertices": vertices_json(&verts),
            "slopes": polygon_json(&poly),
        }));
    }
    Ok(Rendered {
        json: json!({"command": "newton", "q": job.q, "places": entries}),
        rows,
        ok: true,
    })
}

pub fn cmd_slopes(job: &Job) -> Result<Rendered> {
    let motive: TauModule<GlobalRing<FrobField>> = match need_object(job)? {
        JobObject::DrinfeldFinite(phi) => phi.motive()?,
        JobObject::TauFinite(m) => m.clone(),
        _ => {
            return Err(Error::domain(
                "local slopes need a finite coefficient field (base.kind = finite_field)",
            ))
        }
    };
    let fq_small = Fq::of_order(job.q)?;
    let pr_t = PolyRing::new(fq_small.clone(), "t");
    let mut places = default_places(job);
    places.sort_by_key(|p| p.sort_key(&fq_small));
    places.dedup();
    let mut entries = Vec::new();
    let mut rows = vec![vec!["place".to_string(), "slopes".to_string()]];
    for p in &places {
        let local = localize_tau_module(&motive, p, job.precision)?;
        let poly = newton_polygon_local(&local)?;
        rows.push(vec![p.display(&pr_t), polygon_cell(&poly)]);
        entries.push(json!({"place": p.display(&pr_t), "slopes": polygon_json(&poly)}));
    }
    Ok(Rendered {
        json: json!({"command": "slopes", "q": job.q, "places": entries}),
        rows,
        ok: true,
    })
}

fn filtration_report<K: Field>(
    sr: &SeriesRing<K>,
    steps: &[FiltrationStep<taucrys::series::LaurentSeries<K::Elem>>],
    place: String,
    q: u64,
) -> Rendered {
    let mut entries = Vec::new();
    let mut rows = vec![vec![
        "slope".to_string(),
        "multiplicity".to_string(),
        "generators".to_string(),
    ]];
    for step in steps {
        let gens: Vec<Vec<String>> = (0..step.generators.cols)
            .map(|j| {
                step.generators
                    .col(j)
                    .iter()
                    .map(|e| sr.display(e))
                    .collect()
            })
            .collect();
        rows.push(vec![
            slope_str(&step.datum.slope),
            step.datum.mult.to_string(),
            gens.iter()
                .map(|g| format!("[{}]", g.join(", ")))
                .collect::<Vec<_>>()
                .join(" "),
        ]);
        entries.push(json!({
            "slope": slope_str(&step.datum.slope),
            "multiplicity": step.datum.mult,
            "generators": gens,
        }));
    }
    Rendered {
        json: json!({"command": "filtration", "q": q, "place": place, "steps": entries}),
        rows,
        ok: true,
    }
}

pub fn cmd_filtration(job: &Job) -> Result<Rendered> {
    let fq_small = Fq::of_order(job.q)?;
    let pr_t = PolyRing::new(fq_small.clone(), "t");
    match need_object(job)? {
        JobObject::DrinfeldFamily(phi) => {
            let place = match job.places.first() {
                Some(p) => p.clone(),
                None => phi
                    .characteristic_and_height()?
                    .map(|cd| cd.place)
                    .ok_or_else(|| {
                        Error::domain(
                            "generic characteristic: pass --places to pick the localization",
                        )
                    })?,
            };
            let local = localize_family(&phi.motive()?, &place, job.precision)?;
            let steps = slope_filtration_generic_sparse(&local)?;
            let sr = SeriesRing::new(
                taucrys::sparse::SparseFuncField::new(
                    phi.base.rf.poly.base.clone(),
                    phi.base.rf.poly.var.clone().leak(),
                ),
                job.precision,
            );
            Ok(filtration_report(&sr, &steps, place.display(&pr_t), job.q))
        }
        JobObject::TauFamily(m) => {
            let place = job
                .places
                .first()
                .cloned()
                .ok_or_else(|| Error::parse("filtration over F_q(ξ) needs --places"))?;
            let local = localize_family(m, &place, job.precision)?;
            let steps = slope_filtration_generic_sparse(&local)?;
            let k = m.ring.coeff_field();
            let sr = SeriesRing::new(
                taucrys::sparse::SparseFuncField::new(
                    k.rf.poly.base.clone(),
                    k.rf.poly.var.clone().leak(),
                ),
                job.precision,
            );
            Ok(filtration_report(&sr, &steps, place.display(&pr_t), job.q))
        }
        JobObject::DrinfeldFinite(phi) => {
            let place = match job.places.first() {
                Some(p) => p.clone(),
                None => phi.characteristic_and_height()?.place,
            };
            let local = phi.localize_at_place(&place, job.precision)?;
            let steps = slope_filtration_finite(&local)?;
            Ok(filtration_report(
                &local.ring,
                &steps,
                place.display(&pr_t),
                job.q,
            ))
        }
        JobObject::TauFinite(m) => {
            let place = job
                .places
                .first()
                .cloned()
                .ok_or_else(|| Error::parse("filtration needs --places"))?;
            let local = localize_tau_module(m, &place, job.precision)?;
            let steps = slope_filtration_finite(&local)?;
            Ok(filtration_report(
                &local.ring,
                &steps,
                place.display(&pr_t),
                job.q,
            ))
        }
    }
}

pub fn cmd_factor(job: &Job) -> Result<Rendered> {
    let expr = job
        .char_expr
        .as_ref()
        .ok_or_else(|| Error::parse("factor needs --char \"monic polynomial in X\""))?;
    let cp = parse_char_poly(job.q, expr)?;
    let place = job
        .places
        .first()
        .cloned()
        .ok_or_else(|| Error::parse("factor needs --place / --places"))?;
    let fq = cp.base.poly.base.clone();
    let sr = SeriesRing::new(fq.clone(), job.precision);
    let at = match &place {
        Place::Infinity => ExpandAt::Infinity,
        Place::Finite(f) if f.len() == 2 => {
            ExpandAt::Finite(place.linear_root(&fq).unwrap())
        }
        Place::Finite(f) => {
            return Err(Error::NotImplementedPlace(format!(
                "factoring at a finite place of degree {}",
                f.len() - 1
            )))
        }
    };
    let series: Vec<_> = cp
        .coeffs
        .iter()
        .map(|c| {
            if cp.base.is_zero(c) {
                Ok(sr.zero())
            } else {
                expand_ratfunc(&cp.base, &sr, c, &at)
            }
        })
        .collect::<Result<_>>()?;
    let factors = slope_factorize(&sr, &series)?;
    let pr_t = PolyRing::new(fq, "t");
    let mut entries = Vec::new();
    let mut rows = vec![vec![
        "slope".to_string(),
        "degree".to_string(),
        "coefficients".to_string(),
    ]];
    for (slope, f) in &factors {
        let coeffs: Vec<String> = f.iter().map(|c| sr.display(c)).collect();
        rows.push(vec![
            slope_str(slope),
            (f.len() - 1).to_string(),
            coeffs.join(" | "),
        ]);
        entries.push(json!({
            "slope": slope_str(slope),
            "degree": f.len() - 1,
            "coefficients": coeffs,
        }));
    }
    Ok(Rendered {
        json: json!({
            "command": "factor",
            "q": job.q,
            "place": place.display(&pr_t),
            "precision": job.precision,
            "factors": entries,
        }),
        rows,
        ok: true,
    })
}

pub fn cmd_drinfeld(job: &Job) -> Result<Rendered> {
    let phi: &DrinfeldModule<FrobField> = match need_object(job)? {
        JobObject::DrinfeldFinite(phi) => phi,
        _ => {
            return Err(Error::domain(
                "the drinfeld report needs a Drinfeld module over a finite field",
            ))
        }
    };
    let report = phi.analyze(&job.places)?;
    let fq_small = Fq::of_order(job.q)?;
    let pr_t = PolyRing::new(fq_small, "t");
    let coeffs: Vec<String> = report
        .charpoly
        .coeffs
        .iter()
        .map(|c| report.charpoly.base.display(c))
        .collect();
    let mut place_entries = Vec::new();
    let mut rows = vec![vec![
        "place".to_string(),
        "polygon".to_string(),
        "predicted".to_string(),
        "matches".to_string(),
    ]];
    for p in &report.places {
        rows.push(vec![
            p.place.display(&pr_t),
            polygon_cell(&p.actual),
            polygon_cell(&p.predicted),
            p.matches.to_string(),
        ]);
        place_entries.push(json!({
            "place": p.place.display(&pr_t),
            "polygon": polygon_json(&p.actual),
            "predicted": polygon_json(&p.predicted),
            "matches": p.matches,
        }));
    }
    let ok = report.all_match && report.a_integral && report.degree_bounds_ok;
    Ok(Rendered {
        json: json!({
            "command": "drinfeld",
            "q": job.q,
            "rank": phi.rank(),
            "characteristic": report.characteristic.display(&pr_t),
            "height": report.height,
            "char_coefficients": coeffs,
            "a_integral": report.a_integral,
            "degree_bounds_ok": report.degree_bounds_ok,
            "all_match": report.all_match,
            "places": place_entries,
        }),
        rows,
        ok,
    })
}

pub fn cmd_compat(job: &Job) -> Result<Rendered> {
    let family = match need_object(job)? {
        JobObject::DrinfeldFamily(phi) => phi,
        _ => {
            return Err(Error::domain(
                "compat needs a Drinfeld family over F_q[ξ] (base.kind = poly_ring)",
            ))
        }
    };
    let report = run_compat_sweep(family, job.degree_bound, &job.places)?;
    Ok(report.rendered(job.q))
}
