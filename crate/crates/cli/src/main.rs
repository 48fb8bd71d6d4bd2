use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linsofic_core::almosthom::io::{read_json, write_json};
use linsofic_core::almosthom::{read_hom, window_from_finite_group, AlmostHom, FiniteGroup, LengthMode};
use linsofic_core::amplify::{
    amplify_jordan, amplify_rank, rank_amplify, restrict_hom, specialize_hom, tensor_square_iterate, to_projective,
    to_rank, AmplifyTrace, DEFAULT_DIM_CAP,
};
use linsofic_core::exactfield::{elem_to_json, Field};
use linsofic_core::freeprod::{build_separating_quotient, zeta_build, SearchLimits, ZetaOptions};
use linsofic_core::jordanlen::f_schedule;
use linsofic_core::matspace::{perm_matrix, Permutation};
use linsofic_core::par::Exec;
use linsofic_core::rational::{parse_q, q_to_json, Q};
use linsofic_core::verify::{compute_report, field_from_value, registry, run_verify, VerifyConfig};
use linsofic_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "linsofic",
    version,
    about = "Exact length reports, almost-homomorphism constructions and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites from a JSON config.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Suite id to run; repeatable, used when no config is given.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dim_cap: Option<usize>,
        /// Leave wall times out of the report.
        #[arg(long)]
        no_timing: bool,
        /// Print the suite ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Length report of a matrix file or quality report of a hom file.
    Report {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tensor-power amplification of a hom.
    Amplify {
        hom: PathBuf,
        /// Separation premise; with --eps picks the number of stages.
        #[arg(long, value_parser = parse_q)]
        delta: Option<Q>,
        #[arg(long, value_parser = parse_q)]
        eps: Option<Q>,
        /// Explicit number of stages instead of --delta/--eps.
        #[arg(long, conflicts_with_all = ["delta", "eps"])]
        stages: Option<u32>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
    /// Convert between rank-mode and Jordan-mode homs.
    Convert {
        hom: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long, value_parser = parse_q)]
        eps: Q,
        #[arg(long)]
        out: PathBuf,
    },
    /// Restrict scalars from F_(p^m) down to F_p.
    Restrict {
        hom: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Substitute a point of a finite field for t.
    Specialize {
        hom: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the embedding of a free product of two finite groups.
    Freeprod {
        group1: PathBuf,
        group2: PathBuf,
        #[arg(short, long, default_value_t = 2)]
        radius: usize,
        #[arg(long, value_parser = parse_q, default_value = "1/8")]
        theta: Q,
        #[arg(long)]
        seed: u64,
        /// `Q`, `F_q`, or a descriptor object.
        #[arg(long)]
        field: String,
        /// Maps of the factors; regular representations by default.
        #[arg(long)]
        phi: Option<PathBuf>,
        #[arg(long)]
        psi: Option<PathBuf>,
        /// Directory for the hom files and the certificate.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        #[arg(long, default_value_t = 4096)]
        max_degree: usize,
    },
    /// Number of tensor stages for a separation and a target defect.
    Schedule {
        #[arg(long, value_parser = parse_q)]
        delta: Q,
        #[arg(long, value_parser = parse_q)]
        eps: Q,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Projective,
    Rank,
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => write_json(p, v),
        None => {
            // A closed pipe (`| head`) is not an error for us.
            let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(v)?);
            Ok(())
        }
    }
}

/// Writes `hom` at `out` and the trace next to it.
fn emit_hom(hom: &AlmostHom, trace: &AmplifyTrace, out: &Path, extra: Value) -> Result<()> {
    linsofic_core::almosthom::write_hom(out, hom)?;
    let mut t = trace.to_json();
    if let Value::Object(m) = extra {
        for (k, v) in m {
            t[k] = v;
        }
    }
    write_json(&out.with_extension("trace.json"), &t)?;
    eprintln!("wrote {} (dim {})", out.display(), hom.dim);
    Ok(())
}

fn verify(
    config: Option<PathBuf>,
    suites: Vec<String>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    dim_cap: Option<usize>,
    no_timing: bool,
) -> Result<ExitCode> {
    let mut cfg = match config {
        Some(p) => VerifyConfig::read(&p)?,
        None if suites.is_empty() => return Err(Error::Input("give --config or at least one --suite".into())),
        None => VerifyConfig { suites: suites.clone(), ..Default::default() },
    };
    if !suites.is_empty() {
        cfg.suites = suites;
    }
    cfg.seed = seed.or(cfg.seed);
    cfg.dim_cap = dim_cap.or(cfg.dim_cap);
    let out = out.or_else(|| cfg.out.clone());
    let report = run_verify(&cfg)?;
    for s in &report.suites {
        eprintln!(
            "{} {} ({} instances, {} violations, {} ms)",
            if s.pass() { "PASS" } else { "FAIL" },
            s.id,
            s.instances,
            s.violations.len(),
            s.wall_ms
        );
    }
    emit(&report.to_json(!no_timing), out.as_deref())?;
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn amplify(
    hom: &AlmostHom,
    delta: Option<Q>,
    eps: Option<Q>,
    stages: Option<u32>,
    dim_cap: usize,
) -> Result<(AlmostHom, AmplifyTrace)> {
    let exec = Exec::default();
    match (stages, delta, eps) {
        (Some(m), _, _) => match hom.mode {
            LengthMode::Jordan => tensor_square_iterate(hom, m, dim_cap, exec),
            LengthMode::Rank => rank_amplify(hom, m, dim_cap, exec),
        },
        (None, Some(d), Some(e)) => match hom.mode {
            LengthMode::Jordan => amplify_jordan(hom, &d, &e, dim_cap, exec),
            LengthMode::Rank => amplify_rank(hom, &d, &e, dim_cap, exec),
        },
        _ => Err(Error::Input("give --stages, or both --delta and --eps".into())),
    }
}

fn parse_field_arg(s: &str) -> Result<Field> {
    let t = s.trim();
    if t.starts_with('{') {
        field_from_value(&serde_json::from_str(t)?)
    } else {
        field_from_value(&json!(t))
    }
}

fn regular_hom(g: &FiniteGroup, field: &Field) -> Result<AlmostHom> {
    let n = g.order();
    let gens: Vec<_> = (0..n)
        .map(|a| {
            let images = (0..n).map(|x| linsofic_core::almosthom::GroupOracle::mul(g, &a, &x)).collect();
            Ok((a, perm_matrix(field, &Permutation::new(images)?)))
        })
        .collect::<Result<_>>()?;
    linsofic_core::almosthom::hom_from_exact_rep(&window_from_finite_group(g), &gens, LengthMode::Jordan)
}

#[allow(clippy::too_many_arguments)]
fn freeprod(
    group1: &Path,
    group2: &Path,
    radius: usize,
    theta: &Q,
    seed: u64,
    field: &str,
    phi: Option<PathBuf>,
    psi: Option<PathBuf>,
    out: &Path,
    dim_cap: usize,
    max_degree: usize,
) -> Result<()> {
    let exec = Exec::default();
    let field = parse_field_arg(field)?;
    let g1 = FiniteGroup::from_json(&read_json(group1)?)?;
    let g2 = FiniteGroup::from_json(&read_json(group2)?)?;
    let load = |p: Option<PathBuf>, g: &FiniteGroup| -> Result<AlmostHom> {
        match p {
            Some(p) => Ok(read_hom(&p)?.with_mode(LengthMode::Jordan)),
            None => regular_hom(g, &field),
        }
    };
    let (phi, psi) = (load(phi, &g1)?, load(psi, &g2)?);
    let limits = SearchLimits { max_degree, ..SearchLimits::default() };
    let quotient = build_separating_quotient(&g1, &g2, 4 * radius, theta, seed, &limits, exec)?;
    quotient.verify(exec)?;
    let zeta = zeta_build(&phi, &psi, &quotient, radius, ZetaOptions::default(), exec)?;
    fs::create_dir_all(out).map_err(|source| Error::Io { path: out.display().to_string(), source })?;
    let hom = zeta.to_hom(dim_cap)?;
    linsofic_core::almosthom::write_hom(&out.join("zeta.json"), &hom)?;
    let cert = json!({
        "field": field.name(),
        "radius": radius,
        "dim": zeta.dim,
        "quotient": quotient.to_json(),
        "quality": zeta.report.to_json(&zeta.window),
        "trace": zeta.trace.to_json(),
    });
    write_json(&out.join("certificate.json"), &cert)?;
    eprintln!(
        "degree {}, fixed fraction {}, zeta dim {}, defect {}",
        quotient.degree, quotient.theta_achieved, zeta.dim, zeta.report.defect
    );
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let exec = Exec::default();
    match cli.command {
        Command::Verify { list: true, .. } => {
            for s in registry() {
                let _ = writeln!(io::stdout(), "{:<24} {}", s.id, s.summary);
            }
        }
        Command::Verify { config, suites, seed, out, dim_cap, no_timing, .. } => {
            return verify(config, suites, seed, out, dim_cap, no_timing)
        }
        Command::Report { input, out } => emit(&compute_report(&input)?, out.as_deref())?,
        Command::Amplify { hom, delta, eps, stages, out, dim_cap } => {
            let h = read_hom(&hom)?;
            let (res, trace) = amplify(&h, delta, eps, stages, dim_cap)?;
            emit_hom(&res, &trace, &out, json!({}))?;
        }
        Command::Convert { hom, to, eps, out } => {
            let h = read_hom(&hom)?;
            let (res, trace) = match to {
                Target::Projective => to_projective(&h, &eps, exec)?,
                Target::Rank => to_rank(&h, &eps, exec)?,
            };
            emit_hom(&res, &trace, &out, json!({}))?;
        }
        Command::Restrict { hom, out } => {
            let (res, trace) = restrict_hom(&read_hom(&hom)?, exec)?;
            emit_hom(&res, &trace, &out, json!({}))?;
        }
        Command::Specialize { hom, min_degree, out } => {
            let s = specialize_hom(&read_hom(&hom)?, min_degree, exec)?;
            let extra = json!({
                "field": s.hom.field.name(),
                "point": elem_to_json(&s.hom.field, &s.point),
                "avoid": s.avoid.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            });
            emit_hom(&s.hom, &s.trace, &out, extra)?;
        }
        Command::Freeprod { group1, group2, radius, theta, seed, field, phi, psi, out, dim_cap, max_degree } => {
            freeprod(&group1, &group2, radius, &theta, seed, &field, phi, psi, &out, dim_cap, max_degree)?
        }
        Command::Schedule { delta, eps } => {
            let m = f_schedule(&delta, &eps)?;
            emit(&json!({"delta": q_to_json(&delta), "eps": q_to_json(&eps), "stages": m}), None)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
