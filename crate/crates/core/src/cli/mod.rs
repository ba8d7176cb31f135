//! Command-line surface: spectra, oracle verification, eigenfunction samples,
//! modulus scans and the structural tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

mod format;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

pub use format::{fmt_sig, round_sig, SIGNIFICANT_DIGITS};

use crate::error::{Error, Result};
use crate::oracle::{self, EdgePhase, DEFAULT_MODES};
use crate::potentials::{Family, PotentialSpec};
use crate::qhj::{self, BandEdgeSpectrum, SolutionFamily};

/// Version tag carried by every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// Modulus at which [`tables`](Command::Tables) samples the zero census.
const TABLE_MODULUS: f64 = 0.5;

#[derive(Debug, Parser)]
#[command(
    name = "bandedge",
    version,
    about = "Band edges of Lamé-type potentials"
)]
pub struct RunRequest {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic band edges with their eigenfunction data.
    BandEdges {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the analytic edges with the plane-wave oracle (JSON report).
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Plane-wave cutoff N (modes q = -N..=N).
        #[arg(long, env = "BANDEDGE_MODES", default_value_t = DEFAULT_MODES)]
        modes: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample one eigenfunction over a fundamental period (CSV x,psi).
    Eigenfunction {
        #[command(flatten)]
        spec: SpecArgs,
        /// Position in the ascending spectrum.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Band edges over a range of the modulus (CSV m,e0,e1,…).
    Scan {
        family: Family,
        #[arg(allow_negative_numbers = true)]
        j: i64,
        #[arg(long)]
        m_from: f64,
        #[arg(long)]
        m_to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        susy_shift: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residue sets, solution counts and zero totals for j = 1..=j-max.
    Tables {
        #[arg(long, default_value_t = 8)]
        j_max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    pub family: Family,
    #[arg(allow_negative_numbers = true)]
    pub j: i64,
    #[arg(allow_negative_numbers = true)]
    pub m: f64,
    /// Add the published offset that puts the lowest edge at zero.
    #[arg(long)]
    pub susy_shift: bool,
}

impl SpecArgs {
    pub fn to_spec(&self) -> Result<PotentialSpec> {
        let spec = PotentialSpec::new(self.family, self.j, self.m)?;
        Ok(if self.susy_shift {
            spec.with_susy_offset()
        } else {
            spec
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// What a successful command produced.
struct Rendered {
    text: String,
    exit: u8,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Self { text, exit: 0 }
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let request = match RunRequest::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or("error: invalid usage");
                    let _ = writeln!(stderr, "{first}");
                    2
                }
            };
        }
    };
    let output = request.command.output().output.clone();
    match execute(&request.command) {
        Ok(rendered) => match emit(&rendered.text, output.as_ref(), stdout) {
            Ok(()) => rendered.exit,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}

fn emit(text: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::BandEdges { output, .. }
            | Command::Verify { output, .. }
            | Command::Eigenfunction { output, .. }
            | Command::Scan { output, .. }
            | Command::Tables { output, .. } => output,
        }
    }
}

fn execute(command: &Command) -> Result<Rendered> {
    match command {
        Command::BandEdges { spec, format, .. } => {
            let spec = spec.to_spec()?;
            let spectrum = qhj::full_spectrum(&spec)?;
            Ok(Rendered::ok(match format {
                Format::Csv => band_edges_csv(&spectrum),
                Format::Json => to_json(&BandEdgesDoc::new(&spectrum)),
            }))
        }
        Command::Verify {
            spec, modes, tol, ..
        } => {
            if !(*tol > 0.0 && tol.is_finite()) {
                return Err(Error::Domain(format!("tolerance {tol} must be positive")));
            }
            let spec = spec.to_spec()?;
            let mut spectrum = qhj::full_spectrum(&spec)?;
            let report = oracle::verify(&mut spectrum, *modes, *tol)?;
            let exit = if report.pass { 0 } else { 1 };
            Ok(Rendered {
                text: to_json(&VerifyDoc::new(&spec, &report)),
                exit,
            })
        }
        Command::Eigenfunction {
            spec,
            index,
            samples,
            ..
        } => {
            let spec = spec.to_spec()?;
            eigenfunction_csv(&spec, *index, *samples).map(Rendered::ok)
        }
        Command::Scan {
            family,
            j,
            m_from,
            m_to,
            steps,
            susy_shift,
            ..
        } => scan_csv(*family, *j, *m_from, *m_to, *steps, *susy_shift).map(Rendered::ok),
        Command::Tables { j_max, .. } => tables(*j_max).map(|t| Rendered::ok(to_json(&t))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}

fn coefficient_list(sol: &qhj::BandEdgeSolution) -> Vec<f64> {
    sol.poly.coeffs.iter().map(|&c| round_sig(c)).collect()
}

/// CSV with header `index,energy,set_id,alpha,beta,coefficients,total_zeros`;
/// coefficients (of `t^n, t^{n-2}, …`) are `;`-separated.
pub fn band_edges_csv(spectrum: &BandEdgeSpectrum) -> String {
    let mut out = String::from("index,energy,set_id,alpha,beta,coefficients,total_zeros\n");
    for (i, sol) in spectrum.solutions.iter().enumerate() {
        let coeffs: Vec<String> = sol.poly.coeffs.iter().map(|&c| fmt_sig(c)).collect();
        out += &format!(
            "{i},{},{},{},{},{},{}\n",
            fmt_sig(sol.energy),
            sol.family.set_id,
            sol.family.alpha,
            sol.family.beta,
            coeffs.join(";"),
            sol.total_zeros
        );
    }
    out
}

#[derive(Debug, Serialize)]
struct SpecDoc {
    family: Family,
    j: i64,
    m: f64,
    offset: f64,
}

impl SpecDoc {
    fn new(spec: &PotentialSpec) -> Self {
        Self {
            family: spec.family,
            j: spec.j(),
            m: spec.m(),
            offset: round_sig(spec.offset),
        }
    }
}

#[derive(Debug, Serialize)]
struct EdgeRow {
    index: usize,
    energy: f64,
    set_id: u8,
    alpha: i64,
    beta: i64,
    n: usize,
    coefficients: Vec<f64>,
    total_zeros: usize,
    real_zeros_in_period: usize,
    degree_deficient: bool,
}

#[derive(Debug, Serialize)]
struct BandEdgesDoc {
    schema_version: u32,
    spec: SpecDoc,
    edges: Vec<EdgeRow>,
}

impl BandEdgesDoc {
    fn new(spectrum: &BandEdgeSpectrum) -> Self {
        let edges = spectrum
            .solutions
            .iter()
            .enumerate()
            .map(|(index, sol)| EdgeRow {
                index,
                energy: round_sig(sol.energy),
                set_id: sol.family.set_id,
                alpha: sol.family.alpha,
                beta: sol.family.beta,
                n: sol.family.n,
                coefficients: coefficient_list(sol),
                total_zeros: sol.total_zeros,
                real_zeros_in_period: sol.real_zeros_in_period,
                degree_deficient: sol.degree_deficient,
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            spec: SpecDoc::new(&spectrum.spec),
            edges,
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyEdge {
    index: usize,
    set_id: u8,
    qhj_energy: f64,
    oracle_energy: f64,
    delta: f64,
    phase: EdgePhase,
    matched: bool,
}

#[derive(Debug, Serialize)]
struct VerifyDoc {
    schema_version: u32,
    spec: SpecDoc,
    modes: usize,
    tolerance: f64,
    pass: bool,
    max_delta: f64,
    phases: Vec<&'static str>,
    phases_alternate: bool,
    edges: Vec<VerifyEdge>,
    unmatched: Vec<f64>,
}

impl VerifyDoc {
    fn new(spec: &PotentialSpec, report: &oracle::VerificationReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            spec: SpecDoc::new(spec),
            modes: report.modes,
            tolerance: report.tolerance,
            pass: report.pass,
            max_delta: report.max_delta,
            phases: report.phases().iter().map(|p| p.short()).collect(),
            phases_alternate: report.phases_alternate(),
            edges: report
                .edges
                .iter()
                .map(|e| VerifyEdge {
                    index: e.index,
                    set_id: e.set_id,
                    qhj_energy: round_sig(e.qhj_energy),
                    oracle_energy: round_sig(e.oracle_energy),
                    delta: e.delta,
                    phase: e.phase,
                    matched: e.matched,
                })
                .collect(),
            unmatched: report.unmatched.clone(),
        }
    }
}

/// CSV `x,psi` on `samples` equispaced points of `[0, L)`.
pub fn eigenfunction_csv(spec: &PotentialSpec, index: usize, samples: usize) -> Result<String> {
    if samples == 0 {
        return Err(Error::Domain("samples must be ≥ 1".into()));
    }
    let count = spec.edge_count();
    if index >= count {
        return Err(Error::Domain(format!(
            "index {index} out of range (the spectrum has {count} edges)"
        )));
    }
    let spectrum = qhj::full_spectrum(spec)?;
    let sol = &spectrum.solutions[index];
    let period = spec.fundamental_period();
    let mut out = String::from("x,psi\n");
    for i in 0..samples {
        let x = period * i as f64 / samples as f64;
        let psi = qhj::evaluate_wavefunction(sol, x)?;
        out += &format!("{},{}\n", fmt_sig(x), fmt_sig(psi));
    }
    Ok(out)
}

/// The moduli of a scan: `steps` points from `m_from` to `m_to` inclusive.
pub fn scan_points(m_from: f64, m_to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Domain("steps must be ≥ 1".into()));
    }
    if steps == 1 {
        return Ok(vec![m_from]);
    }
    let span = m_to - m_from;
    Ok((0..steps)
        .map(|i| m_from + span * i as f64 / (steps - 1) as f64)
        .collect())
}

/// CSV `m,e0,e1,…` with one row per modulus, edges ascending within a row.
pub fn scan_csv(
    family: Family,
    j: i64,
    m_from: f64,
    m_to: f64,
    steps: usize,
    susy_shift: bool,
) -> Result<String> {
    let points = scan_points(m_from, m_to, steps)?;
    // Validate every point up front so errors do not depend on scheduling.
    let specs = points
        .iter()
        .map(|&m| {
            PotentialSpec::new(family, j, m)
                .map(|s| if susy_shift { s.with_susy_offset() } else { s })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = specs
        .par_iter()
        .map(|spec| qhj::full_spectrum(spec).map(|s| s.energies()))
        .collect::<Result<Vec<_>>>()?;
    let width = specs[0].edge_count();
    let mut out = String::from("m");
    for i in 0..width {
        out += &format!(",e{i}");
    }
    out.push('\n');
    for (m, energies) in points.iter().zip(&rows) {
        out += &fmt_sig(*m);
        for e in energies {
            out += ",";
            out += &fmt_sig(*e);
        }
        out.push('\n');
    }
    Ok(out)
}

/// One residue set in the structural tables.
#[derive(Debug, Clone, Serialize)]
pub struct TableSet {
    pub set_id: u8,
    #[serde(serialize_with = "ser_ratio")]
    pub b1: qhj::Residue,
    #[serde(serialize_with = "ser_ratio")]
    pub d1: qhj::Residue,
    pub alpha: i64,
    pub beta: i64,
    pub n: usize,
    /// `cn^α dn^β P_n(sn)` with trivial factors dropped.
    pub form: String,
    pub count: usize,
    /// Zeros of each eigenfunction in this set.
    pub total_zeros: usize,
}

fn ser_ratio<S: serde::Serializer>(r: &qhj::Residue, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub j: i64,
    pub total: usize,
    pub sets: Vec<TableSet>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tables {
    pub schema_version: u32,
    /// Modulus at which the zero totals were counted.
    pub m: f64,
    pub lame: Vec<TableRow>,
    pub associated: Vec<TableRow>,
}

/// `cn^α dn^β P_n(sn)` as text.
pub fn wavefunction_form(family: &SolutionFamily) -> String {
    let factor = |name: &str, power: i64| match power {
        0 => None,
        1 => Some(name.to_string()),
        p => Some(format!("{name}^{p}")),
    };
    let mut parts: Vec<String> = [factor("cn", family.alpha), factor("dn", family.beta)]
        .into_iter()
        .flatten()
        .collect();
    parts.push(format!("P_{}(sn)", family.n));
    parts.join(" ")
}

/// Structural tables for `j = 1..=j_max`, both families.
pub fn tables(j_max: i64) -> Result<Tables> {
    if j_max < 1 {
        return Err(Error::Domain("j-max must be ≥ 1".into()));
    }
    let row = |family: Family, j: i64| -> Result<TableRow> {
        let spec = PotentialSpec::new(family, j, TABLE_MODULUS)?;
        let spectrum = qhj::full_spectrum(&spec)?;
        let sets = qhj::enumerate_families(&spec)
            .iter()
            .map(|fam| {
                let members: Vec<_> = spectrum
                    .solutions
                    .iter()
                    .filter(|s| s.family.set_id == fam.set_id)
                    .collect();
                TableSet {
                    set_id: fam.set_id,
                    b1: fam.b1,
                    d1: fam.d1,
                    alpha: fam.alpha,
                    beta: fam.beta,
                    n: fam.n,
                    form: wavefunction_form(fam),
                    count: members.len(),
                    total_zeros: members.iter().map(|s| s.total_zeros).max().unwrap_or(0),
                }
            })
            .collect();
        Ok(TableRow {
            j,
            total: spectrum.solutions.len(),
            sets,
        })
    };
    let build = |family| {
        (1..=j_max)
            .map(|j| row(family, j))
            .collect::<Result<Vec<_>>>()
    };
    Ok(Tables {
        schema_version: SCHEMA_VERSION,
        m: TABLE_MODULUS,
        lame: build(Family::Lame)?,
        associated: build(Family::AssociatedLame)?,
    })
}
