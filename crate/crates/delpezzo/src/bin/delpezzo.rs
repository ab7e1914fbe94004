//! Command-line surface: exact K-instability certificates, parameter
//! sweeps, catalogue dumps, DF evaluation, and the negativity-lemma suite.

use clap::{Parser, Subcommand};
use delpezzo::appendix;
use delpezzo::certify::{certify, CertificateJson, Verdict};
use delpezzo::df::DFContext;
use delpezzo::lattice::{curve_by_label, enumerate_minus_one_curves, SurfaceModel};
use delpezzo::polarization::{realize, PolarizationKind, TypedPolarization, TypedPolarizationJson};
use delpezzo::rat::{approx_decimal, format_rat, parse_rat, Rat};
use num_traits::Signed;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "delpezzo", version, about = "Exact K-instability certificates for polarized del Pezzo surfaces")]
struct Cli {
    /// significant digits in decimal approximation columns
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    /// worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// emit JSON instead of the human-readable table where applicable
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify K-instability of a typed polarization (JSON input).
    ///
    /// Exit code 0 when the verdict is Unstable, 10 when Inconclusive,
    /// 2 on input errors.
    Certify {
        /// input file with the polarization JSON (stdin when omitted)
        input: Option<PathBuf>,
    },
    /// Sweep a coordinate grid and write one CSV row per point.
    Sweep {
        /// sweep specification JSON (stdin when omitted)
        spec: Option<PathBuf>,
    },
    /// Re-verify the negativity lemmas behind the threshold tables.
    ///
    /// Exit code 0 when every selected lemma passes, 1 otherwise,
    /// 2 when the filter matches nothing.
    VerifyAppendix {
        /// id glob, e.g. "P2-*" (all lemmas when omitted)
        filter: Option<String>,
    },
    /// Dump the (-1)-curve catalogue of a degree.
    Curves { degree: i64 },
    /// Evaluate the slope and flopped DF invariants at a given lambda.
    Df {
        /// input file with the polarization JSON (stdin when omitted)
        input: Option<PathBuf>,
        /// centre curve label
        #[arg(long, default_value = "E1")]
        z: String,
        /// evaluation point (exact rational or decimal literal)
        #[arg(long)]
        lambda: String,
        /// comma-separated labels of flopped curves; by default the
        /// self-consistent flop configuration at the centre is used
        #[arg(long)]
        curves: Option<String>,
        /// evaluate the plain slope invariant only (no flopped curves)
        #[arg(long)]
        slope_only: bool,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn parse_polarization(text: &str) -> Result<TypedPolarization, String> {
    let json: TypedPolarizationJson =
        serde_json::from_str(text).map_err(|e| format!("bad polarization JSON: {e}"))?;
    json.into_polarization().map_err(|e| e.to_string())
}

fn cmd_certify(input: &Option<PathBuf>, precision: usize) -> ExitCode {
    let run = || -> Result<CertificateJson, String> {
        let text = read_input(input)?;
        let p = parse_polarization(&text)?;
        let cert = certify(&p).map_err(|e| e.to_string())?;
        Ok(CertificateJson::from_certificate(&cert, precision))
    };
    match run() {
        Ok(json) => {
            println!("{}", serde_json::to_string_pretty(&json).expect("serialize"));
            match json.verdict {
                Verdict::Unstable => ExitCode::SUCCESS,
                Verdict::Inconclusive => ExitCode::from(10),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[derive(Deserialize)]
struct GridRange {
    lo: String,
    hi: String,
    step: String,
}

#[derive(Deserialize)]
struct SweepSpec {
    degree: i64,
    kind: PolarizationKind,
    #[serde(default)]
    grid: BTreeMap<String, GridRange>,
    /// fixed assignments: a rational literal or "@var" aliasing a grid
    /// variable
    #[serde(default)]
    fixed: BTreeMap<String, String>,
    /// output path; stdout when "-" or omitted
    #[serde(default)]
    output: Option<String>,
}

fn sweep_rows(spec: &SweepSpec, precision: usize) -> Result<(String, Vec<String>), String> {
    let vars = delpezzo::df::family_vars(spec.degree, spec.kind);
    let mut axes: Vec<(String, Vec<Rat>)> = Vec::new();
    for (name, range) in &spec.grid {
        if !vars.contains(name) {
            return Err(format!("grid variable {name} is not a coordinate"));
        }
        let lo = parse_rat(&range.lo).map_err(|e| e.to_string())?;
        let hi = parse_rat(&range.hi).map_err(|e| e.to_string())?;
        let step = parse_rat(&range.step).map_err(|e| e.to_string())?;
        if !step.is_positive() {
            return Err(format!("grid step for {name} must be positive"));
        }
        let mut vals = Vec::new();
        let mut v = lo;
        while v <= hi {
            vals.push(v.clone());
            v += &step;
        }
        if vals.is_empty() {
            return Err(format!("grid for {name} is empty"));
        }
        axes.push((name.clone(), vals));
    }
    if axes.is_empty() {
        return Err("empty grid".to_string());
    }
    for v in &vars {
        if !spec.grid.contains_key(v) && !spec.fixed.contains_key(v) {
            return Err(format!("coordinate {v} is neither fixed nor on the grid"));
        }
    }

    let total: usize = axes.iter().map(|(_, v)| v.len()).product();
    let indices: Vec<usize> = (0..total).collect();
    let make_point = |mut idx: usize| -> Result<Vec<Rat>, String> {
        let mut assignment: BTreeMap<&str, Rat> = BTreeMap::new();
        for (name, vals) in axes.iter().rev() {
            let k = idx % vals.len();
            idx /= vals.len();
            assignment.insert(name.as_str(), vals[k].clone());
        }
        for (name, value) in &spec.fixed {
            if let Some(alias) = value.strip_prefix('@') {
                let target = assignment
                    .get(alias)
                    .ok_or_else(|| format!("alias @{alias} does not name a grid variable"))?
                    .clone();
                assignment.insert(name.as_str(), target);
            } else {
                assignment.insert(name.as_str(), parse_rat(value).map_err(|e| e.to_string())?);
            }
        }
        Ok(vars
            .iter()
            .map(|v| assignment.get(v.as_str()).cloned().expect("covered"))
            .collect())
    };

    let header = {
        let mut cols: Vec<String> = vars.clone();
        cols.extend([
            "d_value".into(),
            "d_value_approx".into(),
            "verdict".into(),
            "note".into(),
        ]);
        cols.join(",")
    };
    let row_for = |idx: &usize| -> String {
        let point = match make_point(*idx) {
            Ok(p) => p,
            Err(e) => return format!("{},,,Error,{e}", vec![""; vars.len()].join(",")),
        };
        let coords: Vec<String> = point.iter().map(format_rat).collect();
        let m = TypedPolarization::coord_count(spec.degree, spec.kind);
        let has_b = spec.kind != PolarizationKind::P2;
        let a = point[..m].to_vec();
        let b = if has_b {
            point[m].clone()
        } else {
            Rat::from_integer(0.into())
        };
        match TypedPolarization::new(spec.degree, spec.kind, a, b, Rat::from_integer(1.into()))
            .map_err(|e| e.to_string())
            .and_then(|p| certify(&p).map_err(|e| e.to_string()))
        {
            Ok(cert) => format!(
                "{},{},{},{:?},",
                coords.join(","),
                format_rat(&cert.d_value),
                approx_decimal(&cert.d_value, precision),
                cert.verdict
            ),
            Err(e) => format!("{},,,Error,{}", coords.join(","), e.replace(',', ";")),
        }
    };
    let rows: Vec<String> = {
        use rayon::prelude::*;
        indices.par_iter().map(row_for).collect()
    };
    Ok((header, rows))
}

fn cmd_sweep(path: &Option<PathBuf>, precision: usize) -> ExitCode {
    let run = || -> Result<(), String> {
        let text = read_input(path)?;
        let spec: SweepSpec =
            serde_json::from_str(&text).map_err(|e| format!("bad sweep JSON: {e}"))?;
        let (header, rows) = sweep_rows(&spec, precision)?;
        let mut out = String::with_capacity(rows.len() * 64);
        out.push_str(&header);
        out.push('\n');
        for r in rows {
            out.push_str(&r);
            out.push('\n');
        }
        match spec.output.as_deref() {
            None | Some("-") => print!("{out}"),
            Some(p) => std::fs::write(p, out).map_err(|e| format!("cannot write {p}: {e}"))?,
        }
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_verify_appendix(filter: &Option<String>, json: bool) -> ExitCode {
    let reports = appendix::verify_all(filter.as_deref());
    if reports.is_empty() {
        eprintln!("error: no lemma matches the filter");
        return ExitCode::from(2);
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("serialize"));
    } else {
        for r in &reports {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let roots = if r.roots.is_empty() {
                String::new()
            } else {
                format!("  roots: {}", r.roots.join(", "))
            };
            println!(
                "{status}  {:24} coefficients checked: {:4}{roots}",
                r.id, r.n_coefficients_checked
            );
            for f in &r.failing_terms {
                println!("      failing: {f}");
            }
        }
        let passed = reports.iter().filter(|r| r.passed).count();
        println!("{passed}/{} lemmas verified", reports.len());
    }
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_curves(degree: i64, json: bool) -> ExitCode {
    let model = match SurfaceModel::blow_up_of_degree(degree) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let curves = match enumerate_minus_one_curves(model) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if json {
        let rows: Vec<serde_json::Value> = curves
            .iter()
            .map(|c| {
                serde_json::json!({
                    "label": c.label,
                    "coeffs": c.cls.coeffs().iter().map(format_rat).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows).expect("serialize"));
    } else {
        let r = model.r();
        let header: Vec<String> = std::iter::once("label".to_string())
            .chain(std::iter::once("d0".to_string()))
            .chain((1..=r).map(|i| format!("m{i}")))
            .collect();
        println!("{}", header.join(","));
        for c in &curves {
            let coeffs: Vec<String> = c.cls.coeffs().iter().map(format_rat).collect();
            println!("{},{}", c.label, coeffs.join(","));
        }
        eprintln!("{} curves on degree {degree}", curves.len());
    }
    ExitCode::SUCCESS
}

fn cmd_df(
    input: &Option<PathBuf>,
    z: &str,
    lambda: &str,
    curves: &Option<String>,
    slope_only: bool,
    precision: usize,
) -> ExitCode {
    let run = || -> Result<(), String> {
        let text = read_input(input)?;
        let p = parse_polarization(&text)?;
        let normalized = TypedPolarization {
            scale: Rat::from_integer(1.into()),
            ..p
        };
        let l = realize(&normalized).map_err(|e| e.to_string())?;
        let model = normalized.model();
        let zc = curve_by_label(model, z).ok_or_else(|| format!("unknown curve label {z}"))?;
        let lam = parse_rat(lambda).map_err(|e| e.to_string())?;
        let lcs: Vec<Rat> = if slope_only {
            vec![]
        } else if let Some(list) = curves {
            list.split(',')
                .map(|name| {
                    curve_by_label(model, name.trim())
                        .map(|c| l.dot(&c.cls))
                        .ok_or_else(|| format!("unknown curve label {name}"))
                })
                .collect::<Result<_, _>>()?
        } else {
            let fs = delpezzo::thresholds::flop_setup(&l, &zc).map_err(|e| e.to_string())?;
            eprintln!(
                "flop configuration: mu = {}, curves = {}",
                format_rat(&fs.mu),
                fs.curves
                    .iter()
                    .map(|(c, _)| c.label.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            fs.curves.iter().map(|(_, lc)| lc.clone()).collect()
        };
        let ctx = DFContext::new(&l, &zc.cls, lcs).map_err(|e| e.to_string())?;
        let slope = ctx.slope_df(&lam);
        println!(
            "DF({}) = {} ~ {}",
            format_rat(&lam),
            format_rat(&slope),
            approx_decimal(&slope, precision)
        );
        if !slope_only {
            let flop = ctx.flop_df(&lam);
            println!(
                "DFhat({}) = {} ~ {}",
                format_rat(&lam),
                format_rat(&flop),
                approx_decimal(&flop, precision)
            );
        }
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .ok();
    }
    match &cli.cmd {
        Cmd::Certify { input } => cmd_certify(input, cli.precision),
        Cmd::Sweep { spec } => cmd_sweep(spec, cli.precision),
        Cmd::VerifyAppendix { filter } => cmd_verify_appendix(filter, cli.json),
        Cmd::Curves { degree } => cmd_curves(*degree, cli.json),
        Cmd::Df {
            input,
            z,
            lambda,
            curves,
            slope_only,
        } => cmd_df(input, z, lambda, curves, *slope_only, cli.precision),
    }
}
