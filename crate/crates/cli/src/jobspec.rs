//! Structured-text job descriptions: the JSON input schema, its validation,
//! and construction of the algebraic objects it describes.

use std::collections::BTreeMap;

use serde::Deserialize;
use taucrys::drinfeld::DrinfeldModule;
use taucrys::error::{Error, Result};
use taucrys::fq::{Fq, FrobField};
use taucrys::matrix::Matrix;
use taucrys::parser::parse_in;
use taucrys::place::Place;
use taucrys::poly::PolyRing;
use taucrys::ratfunc::{FuncField, GlobalRing};
use taucrys::ring::Ring;
use taucrys::taumodule::TauModule;

/// Input file schema. Unknown keys are rejected with an error naming them.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub q: u64,
    pub base: BaseSpec,
    #[serde(default)]
    pub drinfeld: Option<DrinfeldSpec>,
    #[serde(default)]
    pub tau_module: Option<TauModuleSpec>,
    #[serde(default)]
    pub precision: Option<i64>,
    #[serde(default)]
    pub places: Option<Vec<String>>,
    #[serde(default)]
    pub degree_bound: Option<usize>,
}

/// Coefficient base: `poly_ring` / `rat_func` are F_q[ξ] resp. F_q(ξ) with
/// the named variable; `finite_field` is GF(q^degree) (degree defaults
/// to 1) whose multiplicative generator is bound to the named variable.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub kind: String,
    pub var: String,
    #[serde(default)]
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrinfeldSpec {
    pub rank: usize,
    pub c: String,
    /// g_1..g_r as expression strings in the base variable
    pub g: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauModuleSpec {
    /// square matrix of expression strings in `t` and the base variable
    pub matrix: Vec<Vec<String>>,
}

/// The algebraic object a job describes.
pub enum JobObject {
    DrinfeldFamily(DrinfeldModule<FuncField>),
    DrinfeldFinite(DrinfeldModule<FrobField>),
    TauFinite(TauModule<GlobalRing<FrobField>>),
    TauFamily(TauModule<GlobalRing<FuncField>>),
}

pub fn parse_jobspec(text: &str) -> Result<JobSpec> {
    let spec: JobSpec =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("job file: {e}")))?;
    if spec.base.kind != "poly_ring"
        && spec.base.kind != "rat_func"
        && spec.base.kind != "finite_field"
    {
        return Err(Error::parse(format!(
            "base.kind `{}` (expected poly_ring, rat_func, or finite_field)",
            spec.base.kind
        )));
    }
    if spec.drinfeld.is_some() == spec.tau_module.is_some() {
        return Err(Error::parse(
            "exactly one of `drinfeld` and `tau_module` must be given",
        ));
    }
    if let Some(d) = &spec.drinfeld {
        if d.rank != d.g.len() || d.rank == 0 {
            return Err(Error::parse(format!(
                "drinfeld.rank = {} but {} coefficients in drinfeld.g",
                d.rank,
                d.g.len()
            )));
        }
    }
    if let Some(b) = spec.degree_bound {
        if b == 0 || b > 4 {
            return Err(Error::parse("degree_bound must be between 1 and 4"));
        }
    }
    Ok(spec)
}

fn small_field(q: u64) -> Result<Fq> {
    Fq::of_order(q)
}

/// Build the object the job describes. Coefficient strings are parsed in
/// the expression grammar with the base variable (and `t` for matrices)
/// bound.
pub fn build_object(spec: &JobSpec) -> Result<JobObject> {
    let fq = small_field(spec.q)?;
    match spec.base.kind.as_str() {
        "poly_ring" | "rat_func" => {
            let k = FuncField::new(fq, spec.base.var.clone().leak());
            let mut vars = BTreeMap::new();
            vars.insert(spec.base.var.clone(), k.rf.var_elem());
            if let Some(d) = &spec.drinfeld {
                let c = parse_in(&k, &d.c, &vars)?;
                let g = d
                    .g
                    .iter()
                    .map(|s| parse_in(&k, s, &vars))
                    .collect::<Result<Vec<_>>>()?;
                Ok(JobObject::DrinfeldFamily(DrinfeldModule::new(k, c, g)?))
            } else {
                let gr = GlobalRing::new(k.clone());
                let mut gvars = BTreeMap::new();
                gvars.insert(
                    spec.base.var.clone(),
                    gr.rf.from_poly(vec![k.rf.var_elem()]),
                );
                gvars.insert("t".to_string(), gr.rf.var_elem());
                let m = parse_matrix(&gr, &spec.tau_module.as_ref().unwrap().matrix, &gvars)?;
                Ok(JobObject::TauFamily(TauModule::new(gr, m)?))
            }
        }
        "finite_field" => {
            let deg = spec.base.degree.unwrap_or(1);
            if deg == 0 || deg > 8 {
                return Err(Error::parse("base.degree must be between 1 and 8"));
            }
            let big = Fq::new(fq.p, fq.e * deg as usize)?;
            let k = FrobField::new(big.clone(), spec.q)?;
            let mut vars = BTreeMap::new();
            vars.insert(spec.base.var.clone(), big.gen());
            if let Some(d) = &spec.drinfeld {
                let c = parse_in(&k, &d.c, &vars)?;
                let g = d
                    .g
                    .iter()
                    .map(|s| parse_in(&k, s, &vars))
                    .collect::<Result<Vec<_>>>()?;
                Ok(JobObject::DrinfeldFinite(DrinfeldModule::new(k, c, g)?))
            } else {
                let gr = GlobalRing::new(k.clone());
                let mut gvars = BTreeMap::new();
                gvars.insert(spec.base.var.clone(), gr.rf.from_poly(vec![big.gen()]));
                gvars.insert("t".to_string(), gr.rf.var_elem());
                let m = parse_matrix(&gr, &spec.tau_module.as_ref().unwrap().matrix, &gvars)?;
                Ok(JobObject::TauFinite(TauModule::new(gr, m)?))
            }
        }
        _ => unreachable!("validated in parse_jobspec"),
    }
}

fn parse_matrix<R: Ring>(
    ring: &R,
    rows: &[Vec<String>],
    vars: &BTreeMap<String, R::Elem>,
) -> Result<Matrix<R::Elem>> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::parse("tau_module.matrix must be square and nonempty"));
    }
    let mut out = Vec::with_capacity(n);
    for row in rows {
        let mut r = Vec::with_capacity(n);
        for s in row {
            r.push(parse_in(ring, s, vars)?);
        }
        out.push(r);
    }
    Ok(Matrix::from_rows(out))
}

/// Parse a place expression: `inf` or a monic irreducible polynomial in the
/// given variable over F_q.
pub fn parse_place(fq: &Fq, var: &str, s: &str) -> Result<Place> {
    let s = s.trim();
    if s == "inf" || s == "∞" {
        return Ok(Place::Infinity);
    }
    let pr = PolyRing::new(fq.clone(), var.to_string().leak());
    let mut vars = BTreeMap::new();
    vars.insert(var.to_string(), pr.var_elem());
    let f = parse_in(&pr, s, &vars)?;
    Place::finite(&pr, f)
}

/// Parse a comma-separated place list.
pub fn parse_places(fq: &Fq, var: &str, s: &str) -> Result<Vec<Place>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_place(fq, var, p))
        .collect()
}
