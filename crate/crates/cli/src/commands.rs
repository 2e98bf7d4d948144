use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use hsys_core::checks::CheckResult;
use hsys_core::coupling::{analyze as analyze_params, extremal_pair, DomainKind, ExtT, Extremal};
use hsys_core::exec::Execution;
use hsys_core::params::{critical_exponent, SystemParams};
use hsys_core::radial::pde_residual;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::suites::{run_suite, SuiteOutcome};
use crate::{Axis, CliError, Suite};

const DEFAULT_OUT: &str = "hsys-out";

fn provenance(cfg: &RunConfig) -> Value {
    json!({ "tool": "hsys", "version": env!("CARGO_PKG_VERSION"), "config_hash": cfg.hash(), "seed": cfg.run.seed })
}

/// Provenance with a wall-clock timestamp; kept out of the data files so
/// those stay byte-identical across runs.
fn timed_provenance(cfg: &RunConfig, command: &str) -> Value {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut v = provenance(cfg);
    v["command"] = json!(command);
    v["generated_at_unix"] = json!(secs);
    v
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(dir.join(name), text).map_err(CliError::io)
}

fn prepare(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(CliError::io)
}

/// Writes `name` plus `provenance.json` to the output directory, or prints
/// the data to stdout when there is none.
fn emit(
    cfg: &RunConfig,
    out: Option<PathBuf>,
    command: &str,
    name: &str,
    text: &str,
) -> Result<(), CliError> {
    match out {
        Some(dir) => {
            prepare(&dir)?;
            write(&dir, name, text)?;
            write(
                &dir,
                "provenance.json",
                &pretty(&timed_provenance(cfg, command)),
            )
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn analyze(cfg: &RunConfig, out: Option<&Path>) -> Result<(), CliError> {
    let p = cfg.system_params()?;
    let d = cfg.domain()?;
    let report = analyze_params(&p, &d).map_err(CliError::compute)?;
    let bundle = json!({ "coupling": report, "checks": Vec::<CheckResult>::new(), "provenance": provenance(cfg) });
    emit(
        cfg,
        cfg.output_dir(out),
        "analyze",
        "report.json",
        &pretty(&bundle),
    )
}

pub fn extremal(cfg: &RunConfig, out: Option<&Path>) -> Result<(), CliError> {
    let p = cfg.system_params()?;
    let d = cfg.domain()?;
    if d.kind != DomainKind::WholeSpace {
        return Err(CliError::unsupported(
            "extremal profiles are instanton-based and need kind = \"whole_space\"",
        ));
    }
    if !p.same_weights() {
        return Err(CliError::unsupported(
            "explicit extremals are constructed for s1 = s2 only",
        ));
    }
    let report = analyze_params(&p, &d).map_err(CliError::compute)?;
    let ext = report
        .extremal
        .ok_or_else(|| CliError::unsupported("no extremal for this configuration"))?;
    let grid = Arc::new(cfg.grid()?);
    let pair = extremal_pair(&ext, &p, &d, grid).map_err(CliError::compute)?;
    let residual = pde_residual(&pair, &p).map_err(CliError::compute)?;

    let mut notes = Vec::new();
    let proportionality = match ext {
        Extremal::Pair { t0, .. } => {
            let worst = pair
                .u
                .values()
                .iter()
                .zip(pair.v.values())
                .filter(|(u, _)| **u != 0.0)
                .map(|(u, v)| (v / u - t0).abs() / t0)
                .fold(0.0f64, f64::max);
            Some(worst)
        }
        Extremal::FirstOnly { .. } => {
            notes.push("t0 = 0: the extremal is semi-trivial and v is zero".to_string());
            None
        }
        Extremal::SecondOnly { .. } => {
            notes.push("t0 = inf: the extremal is semi-trivial and u is zero".to_string());
            None
        }
    };
    if report.classification.kind == hsys_core::coupling::AttainmentKind::ContinuumFamily {
        notes.push(
            "g is constant; every ratio gives an extremal and t0 = 1 is the representative".into(),
        );
    }
    let meta = json!({
        "extremal": ext,
        "t0": report.t0,
        "coefficient": ext.coefficient(),
        "sharp_constant": report.sharp_constant,
        "mu_s": d.mu_s,
        "grid": cfg.grid,
        "residual": { "sup": residual.sup, "l2": residual.l2, "relative": residual.relative },
        "proportionality_error": proportionality,
        "notes": notes,
        "config_hash": cfg.hash(),
    });
    let dir = cfg
        .output_dir(out)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    prepare(&dir)?;
    write(&dir, "u.csv", &pair.u.to_csv())?;
    write(&dir, "v.csv", &pair.v.to_csv())?;
    write(&dir, "metadata.json", &pretty(&meta))?;
    write(
        &dir,
        "provenance.json",
        &pretty(&timed_provenance(cfg, "extremal")),
    )
}

pub fn verify(cfg: &RunConfig, suite: Suite, out: Option<&Path>) -> Result<bool, CliError> {
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![
            Suite::Pohozaev,
            Suite::Interpolation,
            Suite::Nehari,
            Suite::Perturbation,
            Suite::Eigen,
            Suite::Young,
        ],
        s => vec![s],
    };
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for s in suites {
        match run_suite(cfg, s)? {
            SuiteOutcome::Ran(mut c) => checks.append(&mut c),
            SuiteOutcome::Skipped(reason) if suite == Suite::All => {
                skipped.push(json!({ "suite": s, "reason": reason }))
            }
            SuiteOutcome::Skipped(reason) => return Err(CliError::unsupported(reason)),
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    let doc = json!({
        "suite": suite,
        "pass": pass,
        "failed": failed,
        "checks": checks,
        "skipped": skipped,
        "provenance": provenance(cfg),
    });
    emit(
        cfg,
        cfg.output_dir(out),
        "verify",
        "verify.json",
        &pretty(&doc),
    )?;
    Ok(pass)
}

fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad sweep value '{s}'")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::usage(format!("sweep value {v} is not finite")))
            }
        })
        .collect()
}

fn with_axis(base: SystemParams, axis: Axis, v: f64) -> SystemParams {
    let mut p = base;
    match axis {
        Axis::Kappa => p.kappa = v,
        Axis::Lambda => p.lambda = v,
        Axis::Mu => p.mu = v,
        Axis::Beta => {
            let p2 = critical_exponent(p.n, p.s2).unwrap_or(f64::NAN);
            p.beta = v;
            p.alpha = p2 - v;
        }
    }
    p
}

fn fmt_f(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_infinite() => "inf".into(),
        Some(v) => format!("{v:.16e}"),
        None => String::new(),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\"").replace('\n', " "))
    } else {
        s.to_string()
    }
}

pub fn sweep(
    cfg: &RunConfig,
    axis: Axis,
    values: &str,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let values = parse_values(values)?;
    let base = cfg.system_params()?;
    let d = cfg.domain()?;
    let rows = Execution::default().map(&values, |&v| {
        let p = with_axis(base, axis, v);
        let mut row = format!("{v:.16e},");
        match analyze_params(&p, &d) {
            Ok(r) => {
                let _ = write!(
                    row,
                    "{},{},{},{:?},",
                    fmt_f(r.t0.map(ExtT::as_f64)),
                    fmt_f(r.g_min),
                    fmt_f(r.sharp_constant),
                    r.classification.kind
                );
            }
            Err(e) => {
                let _ = write!(row, ",,,,{}", quote(&e.to_string()));
            }
        }
        row
    });
    let mut csv = String::from("value,t0,g_min,sharp_constant,classification,error\n");
    for r in rows {
        csv.push_str(&r);
        csv.push('\n');
    }
    emit(cfg, cfg.output_dir(out), "sweep", "sweep.csv", &csv)
}
