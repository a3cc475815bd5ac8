//! Exact σ-semilinear algebra over function fields.
//!
//! The crate computes invariants of τ-modules (a.k.a. isocrystals and
//! A-motives) over F_q(t) and its completions: slope filtrations, Newton
//! polygons, Frobenius characteristic polynomials, and the slope/height
//! bookkeeping of Drinfeld modules. All arithmetic is exact — finite fields,
//! polynomials, rational functions, and truncated Laurent series with
//! explicit precision; there is no floating point anywhere.
//!
//! Layering, bottom to top:
//! - [`fq`], [`poly`], [`ratfunc`], [`series`], [`place`], [`matrix`],
//!   [`parser`]: arithmetic substrate.
//! - [`twisted`], [`taumodule`]: difference rings, twisted polynomials, and
//!   τ-modules with their tensor calculus.
//! - [`polygon`], [`local`]: Newton polygons and the slope filtration of
//!   local isocrystals over K((z)).
//! - [`charpoly`], [`factor`]: characteristic polynomials over finite
//!   fields, root-valuation/slope dictionary, Hensel slope factorization.
//! - [`drinfeld`]: Drinfeld modules, their motives, characteristic/height,
//!   specialization and per-place slope predictions.

pub mod error;
pub mod ring;

pub mod charpoly;
pub mod drinfeld;
pub mod factor;
pub mod fq;
pub mod local;
pub mod matrix;
pub mod parser;
pub mod taumodule;
pub mod twisted;
pub mod place;
pub mod poly;
pub mod polygon;
pub mod ratfunc;
pub mod sampling;
pub mod series;
pub mod sparse;

pub use error::{Error, Result};
