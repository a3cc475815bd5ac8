//! Compatible-system sweep: specialize a Drinfeld family over F_q[ξ] at
//! every closed point of degree ≤ B, compute each specialization's
//! characteristic polynomial and per-place Newton polygons, compare against
//! the slope predictions, and record the exclusions (points where the rank
//! drops or the height jumps) rather than analyzing them.

use rayon::prelude::*;
use serde_json::{json, Value};
use taucrys::drinfeld::DrinfeldModule;
use taucrys::error::Result;
use taucrys::place::{ord_at_place, Place};
use taucrys::poly::PolyRing;
use taucrys::ratfunc::FuncField;
use taucrys::ring::Ring;

use crate::output::{polygon_cell, polygon_json, Rendered};

/// Per-place comparison at one specialized point.
#[derive(Clone, Debug)]
pub struct PlaceRecord {
    pub place: String,
    pub actual: Value,
    pub actual_cell: String,
    pub predicted_cell: String,
    pub matches: bool,
}

/// One closed point of the sweep: either excluded with a reason, or fully
/// analyzed.
#[derive(Clone, Debug)]
pub struct PointRecord {
    pub point: String,
    pub degree: usize,
    pub excluded: Option<String>,
    pub error: Option<String>,
    /// characteristic-polynomial coefficients in F_q[t], low-to-high in X
    pub char_coeffs: Vec<String>,
    pub a_integral: bool,
    pub places: Vec<PlaceRecord>,
    pub all_match: bool,
    /// requested places dropped at this point because the point's
    /// characteristic collides with them
    pub skipped_places: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CompatReport {
    pub points: Vec<PointRecord>,
    pub analyzed: usize,
    pub excluded: usize,
    pub failures: usize,
}

/// Run the sweep over all monic irreducible m_x(ξ) of degree ≤ B, in
/// degree-then-lexicographic order. Per-point errors are recorded, not
/// propagated; the summary counts them as failures.
pub fn run_compat_sweep(
    family: &DrinfeldModule<FuncField>,
    degree_bound: usize,
    extra_places: &[Place],
) -> Result<CompatReport> {
    let fq = family.base.rf.poly.base.clone();
    let var: &str = family.base.rf.poly.var.clone().leak();
    let pr_xi = PolyRing::new(fq.clone(), var);
    let generic_cd = family.characteristic_and_height()?;
    let g_r = family.g.last().unwrap().clone();

    let mut points: Vec<Place> = Vec::new();
    for d in 1..=degree_bound {
        let mut of_degree: Vec<Place> = pr_xi
            .monic_irreducibles(d)
            .into_iter()
            .map(|f| Place::finite(&pr_xi, f).expect("sieve output is monic irreducible"))
            .collect();
        of_degree.sort_by_key(|p| p.sort_key(&fq));
        points.extend(of_degree);
    }

    let records: Vec<PointRecord> = points
        .par_iter()
        .map(|x| analyze_point(family, &pr_xi, &generic_cd, &g_r, extra_places, x))
        .collect();

    let excluded = records.iter().filter(|r| r.excluded.is_some()).count();
    let analyzed = records
        .iter()
        .filter(|r| r.excluded.is_none() && r.error.is_none())
        .count();
    let failures = records
        .iter()
        .filter(|r| {
            r.error.is_some() || (r.excluded.is_none() && (!r.all_match || !r.a_integral))
        })
        .count();
    Ok(CompatReport {
        points: records,
        analyzed,
        excluded,
        failures,
    })
}

fn analyze_point(
    family: &DrinfeldModule<FuncField>,
    pr_xi: &PolyRing<taucrys::fq::Fq>,
    generic_cd: &Option<taucrys::drinfeld::Characteristic<taucrys::ratfunc::RatFunc<taucrys::fq::FqElem>>>,
    g_r: &taucrys::ratfunc::RatFunc<taucrys::fq::FqElem>,
    extra_places: &[Place],
    x: &Place,
) -> PointRecord {
    let rf = &family.base.rf;
    let mut rec = PointRecord {
        point: x.display(pr_xi),
        degree: x.residue_degree(),
        excluded: None,
        error: None,
        char_coeffs: vec![],
        a_integral: false,
        places: vec![],
        all_match: false,
        skipped_places: vec![],
    };
    match ord_at_place(rf, g_r, x) {
        Ok(v) if v > 0 => {
            rec.excluded = Some("g_r vanishes at the point (rank drops)".into());
            return rec;
        }
        Ok(_) => {}
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    }
    if let Some(cd) = generic_cd {
        match ord_at_place(rf, &cd.epsilon, x) {
            Ok(v) if v > 0 => {
                rec.excluded =
                    Some("ε_℘ vanishes at the point (height jumps at the characteristic)".into());
                return rec;
            }
            Ok(_) => {}
            Err(e) => {
                rec.error = Some(e.to_string());
                return rec;
            }
        }
    }
    let run = |rec: &mut PointRecord| -> Result<()> {
        let sp = family.specialize(x)?;
        let cd_x = sp.characteristic_and_height()?;
        run_analysis(family, &sp, &cd_x.place, generic_cd, extra_places, rec)
    };
    if let Err(e) = run(&mut rec) {
        rec.error = Some(e.to_string());
    }
    rec
}

fn run_analysis(
    family: &DrinfeldModule<FuncField>,
    sp: &DrinfeldModule<taucrys::fq::FrobField>,
    char_x: &Place,
    generic_cd: &Option<taucrys::drinfeld::Characteristic<taucrys::ratfunc::RatFunc<taucrys::fq::FqElem>>>,
    extra_places: &[Place],
    rec: &mut PointRecord,
) -> Result<()> {
    let fq_small = family.base.rf.poly.base.clone();
    let pr_t = PolyRing::new(fq_small, "t");
    // a requested place that happens to be this point's characteristic —
    // without being the family's generic one — carries no independence
    // claim here: record it as skipped instead of comparing
    let generic_place = generic_cd.as_ref().map(|cd| &cd.place);
    let mut extra: Vec<Place> = Vec::new();
    for p in extra_places {
        if p == char_x && generic_place != Some(p) {
            rec.skipped_places
                .push(format!("{} (c(x) generates this place)", p.display(&pr_t)));
        } else {
            extra.push(p.clone());
        }
    }
    let report = sp.analyze(&extra)?;
    rec.char_coeffs = report
        .charpoly
        .coeffs
        .iter()
        .map(|c| report.charpoly.base.display(c))
        .collect();
    rec.a_integral = report.a_integral;
    rec.all_match = report.all_match && report.degree_bounds_ok;
    rec.places = report
        .places
        .iter()
        .map(|p| PlaceRecord {
            place: p.place.display(&pr_t),
            actual: polygon_json(&p.actual),
            actual_cell: polygon_cell(&p.actual),
            predicted_cell: polygon_cell(&p.predicted),
            matches: p.matches,
        })
        .collect();
    Ok(())
}

impl CompatReport {
    pub fn rendered(&self, q: u64) -> Rendered {
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                json!({
                    "point": p.point,
                    "degree": p.degree,
                    "excluded": p.excluded,
                    "error": p.error,
                    "char_coefficients": p.char_coeffs,
                    "a_integral": p.a_integral,
                    "all_match": p.all_match,
                    "skipped_places": p.skipped_places,
                    "places": p.places.iter().map(|pl| json!({
                        "place": pl.place,
                        "polygon": pl.actual,
                        "matches": pl.matches,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let json = json!({
            "command": "compat",
            "q": q,
            "summary": {
                "analyzed": self.analyzed,
                "excluded": self.excluded,
                "failures": self.failures,
            },
            "points": points,
        });
        let mut rows = vec![vec![
            "point".to_string(),
            "degree".to_string(),
            "status".to_string(),
            "char_poly".to_string(),
            "polygons".to_string(),
        ]];
        for p in &self.points {
            let status = if let Some(r) = &p.excluded {
                format!("excluded: {r}")
            } else if let Some(e) = &p.error {
                format!("error: {e}")
            } else if p.all_match && p.a_integral {
                "ok".to_string()
            } else {
                "MISMATCH".to_string()
            };
            rows.push(vec![
                p.point.clone(),
                p.degree.to_string(),
                status,
                p.char_coeffs.join(" | "),
                p.places
                    .iter()
                    .map(|pl| format!("{}:{}", pl.place, pl.actual_cell))
                    .collect::<Vec<_>>()
                    .join(" "),
            ]);
        }
        rows.push(vec![
            "summary".to_string(),
            String::new(),
            format!(
                "analyzed={} excluded={} failures={}",
                self.analyzed, self.excluded, self.failures
            ),
            String::new(),
            String::new(),
        ]);
        Rendered {
            json,
            rows,
            ok: self.failures == 0,
        }
    }
}
