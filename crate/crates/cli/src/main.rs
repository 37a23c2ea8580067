//! Command line interface: parse a fan or spherical-data file, run one
//! pipeline, and print a JSON report with sorted keys to stdout.
//!
//! Exit codes: 0 success, 1 invalid data, 2 malformed input or bad
//! arguments. Errors go to stderr as "error[Name]: message".

use clap::{Args, Parser, Subcommand};
use fan_aut_core::{
    a_orbit_poset, check_color_independence, check_empty_color_face, check_horospherical,
    colored_fan, colored_fan_report_value, corpus_files, demazure_roots, demazure_value,
    levi_invariants, levi_value, linear_colored_fan, linear_levi_invariants,
    linear_value, nonlinear_value, orbits_value, parse_input, phi, phi_containment_check,
    positive_system, restricted_roots, root_data_value, sigma_preservation_check, to_pretty,
    validation_value, Error, Fan, Input, Int, Positivity, Result, RootData, SphericalData,
};
use serde_json::json;
use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fan-aut",
    version,
    about = "Exact invariants of reductive automorphism groups from fan data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Divisor selection: exactly one of the two spellings must be given.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Selection {
    /// Comma-separated stabilized ray names; pass "" for the empty set.
    #[arg(long, value_name = "NAMES")]
    stable: Option<String>,
    /// Comma-separated unstabilized ray names; the stable set is the rest.
    #[arg(long, value_name = "NAMES")]
    moved: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fan or spherical-data file and report violations.
    Validate { path: PathBuf },
    /// List the Demazure roots of a smooth complete fan.
    DemazureRoots { path: PathBuf },
    /// Compute the root system Phi for a choice of stabilized divisors.
    Phi {
        path: PathBuf,
        #[command(flatten)]
        selection: Selection,
        /// Positive-system choice: "lex" or "vector:<comma-separated ints>".
        #[arg(long, default_value = "lex")]
        positivity: String,
    },
    /// Invariants of the reductive quotient: lattice, colors, parabolic.
    Levi {
        path: PathBuf,
        #[command(flatten)]
        selection: Selection,
        /// Positive-system choice: "lex" or "vector:<comma-separated ints>".
        #[arg(long, default_value = "lex")]
        positivity: String,
    },
    /// Colored fan of the variety under the quotient action.
    ColoredFan {
        path: PathBuf,
        #[command(flatten)]
        selection: Selection,
        /// Positive-system choice: "lex" or "vector:<comma-separated ints>".
        #[arg(long, default_value = "lex")]
        positivity: String,
    },
    /// A-orbit and G-orbit closure posets with the collapse map.
    Orbits {
        path: PathBuf,
        #[command(flatten)]
        selection: Selection,
        /// Positive-system choice: "lex" or "vector:<comma-separated ints>".
        #[arg(long, default_value = "lex")]
        positivity: String,
    },
    /// Restrict spherical data along its moved nonlinear divisors.
    Nonlinear {
        path: PathBuf,
        #[command(flatten)]
        selection: Selection,
    },
    /// Full linear-case pipeline on spherical data.
    Linear {
        path: PathBuf,
        #[command(flatten)]
        selection: Selection,
        /// Positive-system choice: "lex" or "vector:<comma-separated ints>".
        #[arg(long, default_value = "lex")]
        positivity: String,
    },
    /// Write the bundled example corpus and golden files to a directory.
    Corpus {
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run() -> Result<u8> {
    check_threads_env()?;
    match Cli::parse().command {
        Command::Validate { path } => cmd_validate(&path),
        Command::DemazureRoots { path } => cmd_demazure(&path),
        Command::Phi {
            path,
            selection,
            positivity,
        } => cmd_phi(&path, &selection, &positivity),
        Command::Levi {
            path,
            selection,
            positivity,
        } => cmd_levi(&path, &selection, &positivity),
        Command::ColoredFan {
            path,
            selection,
            positivity,
        } => cmd_colored_fan(&path, &selection, &positivity),
        Command::Orbits {
            path,
            selection,
            positivity,
        } => cmd_orbits(&path, &selection, &positivity),
        Command::Nonlinear { path, selection } => cmd_nonlinear(&path, &selection),
        Command::Linear {
            path,
            selection,
            positivity,
        } => cmd_linear(&path, &selection, &positivity),
        Command::Corpus { out_dir } => cmd_corpus(&out_dir),
    }
}

// Optional worker-count knob kept for interface stability. The pipelines
// are single threaded, so the value is validated and otherwise unused.
fn check_threads_env() -> Result<()> {
    match std::env::var("FAN_AUT_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(Error::BadArgument(format!("FAN_AUT_THREADS: {e}"))),
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(n) if n > 0 => Ok(()),
            _ => Err(Error::BadArgument(format!(
                "FAN_AUT_THREADS must be a positive integer, got '{s}'"
            ))),
        },
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::BadArgument(format!("cannot read '{}': {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<Fan> {
    match parse_input(&read_text(path)?)? {
        Input::Fan(f) => Ok(f),
        Input::Spherical(_) => Err(Error::BadArgument(
            "this command takes a bare fan input".into(),
        )),
    }
}

fn load_spherical(path: &Path) -> Result<SphericalData> {
    match parse_input(&read_text(path)?)? {
        Input::Spherical(sd) => Ok(sd),
        Input::Fan(_) => Err(Error::BadArgument(
            "this command takes a spherical-data input".into(),
        )),
    }
}

impl Selection {
    /// Resolve to the stable set, checking every listed name against the fan.
    fn stable_names(&self, f: &Fan) -> Result<BTreeSet<String>> {
        let (list, names_stable) = match (&self.stable, &self.moved) {
            (Some(s), None) => (s, true),
            (None, Some(m)) => (m, false),
            _ => {
                return Err(Error::BadArgument(
                    "exactly one of --stable and --moved is required".into(),
                ))
            }
        };
        let mut chosen = BTreeSet::new();
        for piece in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if !f.rays().contains_key(piece) {
                return Err(Error::UnknownRay(piece.to_string()));
            }
            chosen.insert(piece.to_string());
        }
        if names_stable {
            Ok(chosen)
        } else {
            Ok(f.rays()
                .keys()
                .filter(|n| !chosen.contains(*n))
                .cloned()
                .collect())
        }
    }
}

fn parse_positivity(s: &str) -> Result<Positivity> {
    if s == "lex" {
        return Ok(Positivity::Lex);
    }
    if let Some(rest) = s.strip_prefix("vector:") {
        let mut w = Vec::new();
        for piece in rest.split(',') {
            let x: i64 = piece.trim().parse().map_err(|_| {
                Error::BadArgument(format!(
                    "positivity vector entry '{piece}' is not an integer"
                ))
            })?;
            w.push(Int::from(x));
        }
        return Ok(Positivity::Vector(w));
    }
    Err(Error::BadArgument(format!(
        "positivity must be 'lex' or 'vector:<ints>', got '{s}'"
    )))
}

fn emit(v: &serde_json::Value) {
    print!("{}", to_pretty(v));
}

fn cmd_validate(path: &Path) -> Result<u8> {
    let text = read_text(path)?;
    let (kind, valid, violations) = match parse_input(&text)? {
        Input::Fan(f) => {
            let report = f.validate();
            let msgs: Vec<String> = report.violations().iter().map(|v| v.to_string()).collect();
            ("fan", report.is_valid(), msgs)
        }
        Input::Spherical(sd) => match sd.validate() {
            Ok(()) => ("spherical", true, Vec::new()),
            Err(e) => ("spherical", false, vec![e.to_string()]),
        },
    };
    emit(&validation_value(kind, valid, &violations));
    Ok(if valid { 0 } else { 1 })
}

fn cmd_demazure(path: &Path) -> Result<u8> {
    let f = load_fan(path)?;
    let roots = demazure_roots(&f)?;
    emit(&demazure_value(&roots)?);
    Ok(0)
}

fn fan_root_data(path: &Path, selection: &Selection, positivity: &str) -> Result<(Fan, RootData)> {
    let pos = parse_positivity(positivity)?;
    let f = load_fan(path)?;
    let stable = selection.stable_names(&f)?;
    let roots = demazure_roots(&f)?;
    let mut rd = phi(&roots, &stable, &f)?;
    let (plus, psi) = positive_system(&rd.phi, &pos)?;
    rd.phi_plus = plus;
    rd.psi = psi;
    Ok((f, rd))
}

fn cmd_phi(path: &Path, selection: &Selection, positivity: &str) -> Result<u8> {
    let (_, rd) = fan_root_data(path, selection, positivity)?;
    emit(&root_data_value(&rd)?);
    Ok(0)
}

fn cmd_levi(path: &Path, selection: &Selection, positivity: &str) -> Result<u8> {
    let (f, rd) = fan_root_data(path, selection, positivity)?;
    let inv = levi_invariants(&f, &rd)?;
    let cf = colored_fan(&f, &rd, &inv)?;
    let horo = check_horospherical(&cf)?;
    let indep = check_color_independence(&inv);
    emit(&levi_value(&rd, &inv, &cf, horo, indep)?);
    Ok(0)
}

fn cmd_colored_fan(path: &Path, selection: &Selection, positivity: &str) -> Result<u8> {
    let (f, rd) = fan_root_data(path, selection, positivity)?;
    let inv = levi_invariants(&f, &rd)?;
    let cf = colored_fan(&f, &rd, &inv)?;
    let horo = check_horospherical(&cf)?;
    let report = check_empty_color_face(&f, &rd, &inv)?;
    emit(&colored_fan_report_value(&cf, horo, &report)?);
    Ok(0)
}

fn cmd_orbits(path: &Path, selection: &Selection, positivity: &str) -> Result<u8> {
    let (f, rd) = fan_root_data(path, selection, positivity)?;
    let inv = levi_invariants(&f, &rd)?;
    let cf = colored_fan(&f, &rd, &inv)?;
    let g = f.orbit_closure_poset();
    let a = a_orbit_poset(&f, &rd, &inv, &cf)?;
    emit(&orbits_value(&g, &a)?);
    Ok(0)
}

fn cmd_nonlinear(path: &Path, selection: &Selection) -> Result<u8> {
    let sd = load_spherical(path)?;
    let stable = selection.stable_names(sd.fan())?;
    // The restriction enforces the full precondition chain; the auxiliary
    // reports below rerun on data it has already accepted.
    let restricted = sd.nonlinear_restrict(&stable)?;
    let moved: BTreeSet<String> = sd
        .fan()
        .rays()
        .keys()
        .filter(|n| !stable.contains(*n))
        .cloned()
        .collect();
    let assignment = sd.sigma_of_moved(&moved)?;
    let (lambda, span) = sd.lambda_decomposition(&moved)?;
    emit(&nonlinear_value(
        &stable,
        &moved,
        &assignment,
        &lambda,
        &span,
        &restricted,
    )?);
    Ok(0)
}

fn cmd_linear(path: &Path, selection: &Selection, positivity: &str) -> Result<u8> {
    let pos = parse_positivity(positivity)?;
    let sd = load_spherical(path)?;
    let stable = selection.stable_names(sd.fan())?;
    let mut rr = restricted_roots(&sd, &stable)?;
    rr.apply_positivity(&pos)?;
    phi_containment_check(&sd, &rr)?;
    let inv = linear_levi_invariants(&sd, &rr)?;
    let cf = linear_colored_fan(&sd, &inv)?;
    let preserved = sigma_preservation_check(&sd, &inv, &cf)?;
    emit(&linear_value(&rr, &inv, &cf, preserved)?);
    Ok(0)
}

fn cmd_corpus(out_dir: &Path) -> Result<u8> {
    let files = corpus_files()?;
    for (rel, contents) in &files {
        let target = out_dir.join(rel);
        if let Some(parent) = target.parent() {
            fs::create_dir_all(parent).map_err(|e| {
                Error::BadArgument(format!("cannot create '{}': {e}", parent.display()))
            })?;
        }
        fs::write(&target, contents).map_err(|e| {
            Error::BadArgument(format!("cannot write '{}': {e}", target.display()))
        })?;
    }
    let names: Vec<&String> = files.iter().map(|(rel, _)| rel).collect();
    emit(&json!({
        "out_dir": out_dir.display().to_string(),
        "files": names,
    }));
    Ok(0)
}
