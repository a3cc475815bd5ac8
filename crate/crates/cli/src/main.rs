//! `taucrys`: exact invariants of τ-modules and Drinfeld modules over
//! function fields. Exit status: 0 on success, 1 when a requested assertion
//! fails (polygon ≠ prediction, lift did not converge), 2 on parse/domain
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use taucrys::error::Error;
use taucrys::fq::Fq;
use taucrys_cli::commands::{
    cmd_charpoly, cmd_compat, cmd_drinfeld, cmd_factor, cmd_filtration, cmd_newton, cmd_slopes,
    Job,
};
use taucrys_cli::jobspec::{build_object, parse_jobspec, parse_places};
use taucrys_cli::output::Rendered;

#[derive(Parser)]
#[command(
    name = "taucrys",
    version,
    about = "Exact slope filtrations, Newton polygons, and Frobenius characteristic \
             polynomials of tau-modules and Drinfeld modules over function fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// JSON job file describing the object
    input: Option<PathBuf>,
    /// base field order (default: from the job file, else 3)
    #[arg(long)]
    q: Option<u64>,
    /// series working precision N (mod z^N), default 32
    #[arg(long)]
    precision: Option<i64>,
    /// comma-separated places: polynomials in t, or `inf`
    #[arg(long)]
    places: Option<String>,
    /// single place (shorthand for --places with one entry)
    #[arg(long)]
    place: Option<String>,
    /// closed-point degree bound B for sweeps (1..=4, default 2)
    #[arg(long)]
    degree_bound: Option<usize>,
    /// output format
    #[arg(long, default_value = "json")]
    format: String,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// worker threads for sweeps (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// monic polynomial in X over F_q(t), e.g. "X^2-X-t"
    #[arg(long = "char")]
    char_expr: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Frobenius characteristic polynomial over F_q(t)
    Charpoly(Common),
    /// Coefficient-valuation hulls and Newton polygons at places
    Newton(Common),
    /// Local isocrystal slopes via completion at degree-1 places and ∞
    Slopes(Common),
    /// Slope filtration of the localized module, with generators
    Filtration(Common),
    /// Slope factorization of a polynomial over F_q((z))
    Factor(Common),
    /// Full Drinfeld-module report: characteristic, height, predictions
    Drinfeld(Common),
    /// Compatible-system sweep over closed points of degree ≤ B
    Compat(Common),
}

fn build_job(common: &Common) -> taucrys::Result<Job> {
    let spec = match &common.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
            Some(parse_jobspec(&text)?)
        }
        None => None,
    };
    let q = common
        .q
        .or(spec.as_ref().map(|s| s.q))
        .unwrap_or(3);
    if let Some(s) = &spec {
        if let Some(fq) = common.q {
            if fq != s.q {
                return Err(Error::parse(format!(
                    "--q {fq} disagrees with q = {} in the job file",
                    s.q
                )));
            }
        }
    }
    let precision = common
        .precision
        .or(spec.as_ref().and_then(|s| s.precision))
        .unwrap_or(32);
    if precision < 1 {
        return Err(Error::parse("precision must be ≥ 1"));
    }
    let degree_bound = common
        .degree_bound
        .or(spec.as_ref().and_then(|s| s.degree_bound))
        .unwrap_or(2);
    if degree_bound == 0 || degree_bound > 4 {
        return Err(Error::parse("degree bound must be between 1 and 4"));
    }
    let fq = Fq::of_order(q)?;
    let mut places = Vec::new();
    if let Some(s) = &spec {
        if let Some(ps) = &s.places {
            for p in ps {
                places.extend(parse_places(&fq, "t", p)?);
            }
        }
    }
    if let Some(ps) = &common.places {
        places.extend(parse_places(&fq, "t", ps)?);
    }
    if let Some(p) = &common.place {
        places.extend(parse_places(&fq, "t", p)?);
    }
    let object = spec.as_ref().map(build_object).transpose()?;
    Ok(Job {
        q,
        object,
        precision,
        places,
        degree_bound,
        char_expr: common.char_expr.clone(),
    })
}

fn dispatch(cmd: &Cmd) -> taucrys::Result<(Rendered, &Common)> {
    let (f, common): (fn(&Job) -> taucrys::Result<Rendered>, &Common) = match cmd {
        Cmd::Charpoly(c) => (cmd_charpoly, c),
        Cmd::Newton(c) => (cmd_newton, c),
        Cmd::Slopes(c) => (cmd_slopes, c),
        Cmd::Filtration(c) => (cmd_filtration, c),
        Cmd::Factor(c) => (cmd_factor, c),
        Cmd::Drinfeld(c) => (cmd_drinfeld, c),
        Cmd::Compat(c) => (cmd_compat, c),
    };
    let job = build_job(common)?;
    Ok((f(&job)?, common))
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Domain(_)
        | Error::NonUnit(_)
        | Error::NotImplementedPlace(_) => 2,
        Error::PrecisionExhausted(_) | Error::NonStabilizing(_) | Error::DescentFailure(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.cmd {
        Cmd::Charpoly(c)
        | Cmd::Newton(c)
        | Cmd::Slopes(c)
        | Cmd::Filtration(c)
        | Cmd::Factor(c)
        | Cmd::Drinfeld(c)
        | Cmd::Compat(c) => c,
    };
    let run = || dispatch(&cli.cmd);
    let result = match common.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => {
                eprintln!("error: cannot build worker pool: {e}");
                return ExitCode::from(2);
            }
        },
        None => run(),
    };
    match result {
        Ok((rendered, common)) => {
            let text = match rendered.to_string(&common.format) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(exit_code_for(&e));
                }
            };
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if rendered.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("assertion failed: see the report for mismatches");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
