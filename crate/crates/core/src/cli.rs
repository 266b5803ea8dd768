//! Command-line front end.
//!
//! Exit codes: `0` success, `1` verification failure, `2` parse error
//! (including command-line usage errors), `3` numeric or setup error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::group::{
    extract_cocycle, homomorphism_defect, literal_obstructions, moment_map, moment_map_noncommutative, AlgebraElement,
    BracketMode, GroupElement,
};
use crate::hilbert::{gaussian, RepError, Wavefunction};
use crate::parser::{format, parse, parse_rational, ParseError, ParseErrorKind};
use crate::suite::{self, render_number, SuiteConfig, SuiteReport};
use crate::symplectic::{self, bopp_shift, evolve, Observable, PhasePoint, Rational, SymplecticError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SETUP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ncplane", version, about = "Canonical group quantization of the noncommutative plane")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Numeric value of the noncommutativity parameter.
    #[arg(long, global = true, default_value_t = 0.1, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
    /// Grid points per axis (power of two, at least 16).
    #[arg(long, global = true, default_value_t = 256)]
    pub grid_n: usize,
    /// Half-length of the periodic box.
    #[arg(long, global = true, default_value_t = 20.0, allow_negative_numbers = true)]
    pub box_l: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Replace every numeric tolerance with this value.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Phase-space point `q1,q2,p1,p2` for numeric evaluation.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deformed Poisson bracket {f, g}.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        /// Use the undeformed bracket instead.
        #[arg(long)]
        standard: bool,
    },
    /// Hamiltonian vector field of f.
    Vf {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Bopp shift to commuting positions.
    Bopp {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Cocycle of two algebra elements `A1,A2,B1,B2,C,D`.
    Cocycle {
        #[arg(allow_hyphen_values = true)]
        e1: String,
        #[arg(allow_hyphen_values = true)]
        e2: String,
    },
    /// Product, inverse and commutator of group elements `a1,a2,b1,b2,c,d`.
    Grouplaw {
        #[arg(allow_hyphen_values = true)]
        g1: String,
        #[arg(allow_hyphen_values = true)]
        g2: String,
    },
    /// Moment map of an algebra element `A1,A2,B1,B2,C,D`.
    Momentmap {
        #[arg(allow_hyphen_values = true)]
        e: String,
    },
    /// Representation checks on a Gaussian or on a wfn-json state.
    RepCheck {
        #[arg(long)]
        wavefunction: Option<PathBuf>,
        /// Write the Gaussian test state in wfn-json format and exit.
        #[arg(long, conflicts_with = "wavefunction")]
        save_state: Option<PathBuf>,
    },
    /// Integrate Hamilton's equations with RK4; CSV on stdout.
    Evolve {
        #[arg(allow_hyphen_values = true)]
        h: String,
        /// Initial point `q1,q2,p1,p2`.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, allow_negative_numbers = true)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
        dt: f64,
    },
    /// Run every exact and numerical check.
    VerifyAll {
        /// Run the three suites on separate threads.
        #[arg(long)]
        parallel: bool,
    },
}

/// Failure modes, each tied to one exit code.
#[derive(Debug)]
pub enum CliError {
    Parse { argument: String, source: String, error: ParseError },
    Setup(String),
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        CliError::Setup(e.to_string())
    }
}

impl From<SymplecticError> for CliError {
    fn from(e: SymplecticError) -> Self {
        CliError::Setup(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Setup(_) => EXIT_SETUP,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Parse { argument, error, .. } => json!({
                "error": "parse",
                "argument": argument,
                "offset": error.offset,
                "message": error.message,
                "expected": error.expected,
            }),
            CliError::Setup(message) => json!({ "error": "setup", "message": message }),
        }
    }

    fn to_text(&self) -> String {
        match self {
            CliError::Parse { argument, source, error } => {
                format!("{argument}: {error}\n  {source}\n  {}^\n", " ".repeat(error.offset.min(source.len())))
            }
            CliError::Setup(message) => format!("error: {message}\n"),
        }
    }
}

/// Output of a successful command.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: EXIT_OK }
    }
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let format = cli.global.format;
    match execute(&cli) {
        Ok(outcome) => {
            let body = match format {
                OutputFormat::Text => outcome.text,
                OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&outcome.json).expect("json")),
            };
            let _ = out.write_all(body.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = err.write_all(e.to_text().as_bytes());
            if format == OutputFormat::Json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&e.to_json()).expect("json"));
            }
            e.exit_code()
        }
    }
}

fn config(g: &GlobalArgs, parallel: bool) -> SuiteConfig {
    SuiteConfig {
        theta: g.theta,
        hbar: g.hbar,
        grid_n: g.grid_n,
        box_l: g.box_l,
        seed: g.seed,
        tol: g.tol,
        parallel,
    }
}

fn observable_arg(argument: &str, src: &str) -> Result<Observable, CliError> {
    parse(src).map_err(|error| CliError::Parse {
        argument: argument.into(),
        source: src.into(),
        error,
    })
}

/// Splits a comma-separated list and parses each field, keeping offsets
/// relative to the whole argument.
fn list_arg<T>(
    argument: &str,
    src: &str,
    len: usize,
    field: impl Fn(&str) -> Result<T, ParseError>,
) -> Result<Vec<T>, CliError> {
    let fail = |error: ParseError| CliError::Parse {
        argument: argument.into(),
        source: src.into(),
        error,
    };
    let mut values = Vec::with_capacity(len);
    let mut start = 0;
    for piece in src.split(',') {
        let trimmed = piece.trim_start();
        let offset = start + (piece.len() - trimmed.len());
        if values.len() == len {
            return Err(fail(ParseError::new(
                start.saturating_sub(1),
                ParseErrorKind::UnexpectedToken,
                "end of list",
                format!("more than {len} comma-separated values"),
            )));
        }
        let value = field(trimmed.trim_end()).map_err(|mut e| {
            e.offset += offset;
            fail(e)
        })?;
        values.push(value);
        start += piece.len() + 1;
    }
    if values.len() != len {
        return Err(fail(ParseError::new(
            src.len(),
            ParseErrorKind::UnexpectedToken,
            format!("{len} comma-separated values"),
            format!("found {} values", values.len()),
        )));
    }
    Ok(values)
}

fn real_field(s: &str) -> Result<f64, ParseError> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(ParseError::new(0, ParseErrorKind::MalformedNumber, "a finite real number", format!("'{s}' is not a finite real"))),
    }
}

fn point_arg(argument: &str, src: &str) -> Result<PhasePoint, CliError> {
    let v = list_arg(argument, src, 4, real_field)?;
    Ok(PhasePoint::new(v[0], v[1], v[2], v[3]))
}

fn element_arg(argument: &str, src: &str) -> Result<AlgebraElement, CliError> {
    let v = list_arg(argument, src, 6, parse_rational)?;
    let arr: [Rational; 6] = v.try_into().expect("six values");
    Ok(AlgebraElement::from_array(arr))
}

fn strings(values: [Rational; 6]) -> Vec<String> {
    values.iter().map(|r| r.to_string()).collect()
}

fn group_strings(g: &GroupElement<Rational>) -> Vec<String> {
    strings([g.a[0].clone(), g.a[1].clone(), g.b[0].clone(), g.b[1].clone(), g.c.clone(), g.d.clone()])
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let point = g.point.as_deref().map(|p| point_arg("--point", p)).transpose()?;
    let value_at = |f: &Observable| point.map(|x| symplectic::evaluate(f, &x, g.theta, g.hbar));
    let value_text = |v: Option<f64>| v.map(|v| format!("value: {}\n", render_number(v))).unwrap_or_default();

    match &cli.command {
        Command::Bracket { f, g: gsrc, standard } => {
            let f = observable_arg("f", f)?;
            let h = observable_arg("g", gsrc)?;
            let b = if *standard {
                symplectic::standard_bracket(&f, &h)
            } else {
                symplectic::poisson_bracket(&f, &h)
            };
            let text = format(&b);
            let value = value_at(&b);
            Ok(Outcome::ok(
                format!("{text}\n{}", value_text(value)),
                json!({ "bracket": text, "standard": standard, "value": value }),
            ))
        }
        Command::Vf { f } => {
            let f = observable_arg("f", f)?;
            let xi = symplectic::hamiltonian_vector_field(&f);
            let names = ["q1", "q2", "p1", "p2"];
            let comps: Vec<String> = xi.components.iter().map(format).collect();
            let values: Option<Vec<f64>> = point.map(|x| xi.components.iter().map(|c| symplectic::evaluate(c, &x, g.theta, g.hbar)).collect());
            let mut text = String::new();
            for (k, (n, c)) in names.iter().zip(&comps).enumerate() {
                text.push_str(&format!("d/d{n}: {c}"));
                if let Some(v) = &values {
                    text.push_str(&format!(" = {}", render_number(v[k])));
                }
                text.push('\n');
            }
            let obj: serde_json::Map<String, Value> = names.iter().zip(&comps).map(|(n, c)| (n.to_string(), json!(c))).collect();
            Ok(Outcome::ok(text, json!({ "components": obj, "values": values })))
        }
        Command::Bopp { f } => {
            let f = observable_arg("f", f)?;
            let s = bopp_shift(&f);
            let text = format(&s);
            let value = value_at(&s);
            Ok(Outcome::ok(format!("{text}\n{}", value_text(value)), json!({ "bopp": text, "value": value })))
        }
        Command::Cocycle { e1, e2 } => {
            let e1 = element_arg("e1", e1)?;
            let e2 = element_arg("e2", e2)?;
            let z = extract_cocycle(&e1, &e2).map_err(|e| CliError::Setup(e.to_string()))?;
            let lit = literal_obstructions(&e1, &e2);
            let ext = format(&homomorphism_defect(&e1, &e2, BracketMode::Extended));
            let abe = format(&homomorphism_defect(&e1, &e2, BracketMode::Abelian));
            let text = format!(
                "z1: {}\nz2: {}\nliteral z1: {}\nliteral z2: {}\ndefect (extended): {ext}\ndefect (abelian): {abe}\n",
                z.z1, z.z2, lit.z1, lit.z2
            );
            Ok(Outcome::ok(
                text,
                json!({
                    "z1": z.z1.to_string(),
                    "z2": z.z2.to_string(),
                    "literal_z1": lit.z1.to_string(),
                    "literal_z2": lit.z2.to_string(),
                    "defect_extended": ext,
                    "defect_abelian": abe,
                }),
            ))
        }
        Command::Grouplaw { g1, g2 } => {
            let g1 = GroupElement::exp(&element_arg("g1", g1)?);
            let g2 = GroupElement::exp(&element_arg("g2", g2)?);
            let product = group_strings(&g1.multiply(&g2));
            let commutator = group_strings(&g1.commutator(&g2));
            let inverse = group_strings(&g1.inverse());
            let text = format!(
                "product: {}\ninverse(g1): {}\ncommutator: {}\n",
                product.join(","),
                inverse.join(","),
                commutator.join(",")
            );
            Ok(Outcome::ok(text, json!({ "product": product, "inverse_g1": inverse, "commutator": commutator })))
        }
        Command::Momentmap { e } => {
            let e = element_arg("e", e)?;
            let commuting = moment_map(&e);
            let noncommuting = format(&moment_map_noncommutative(&e));
            let c = format(&commuting);
            let value = value_at(&commuting);
            Ok(Outcome::ok(
                format!("commuting: {c}\nnoncommuting: {noncommuting}\n{}", value_text(value)),
                json!({ "commuting": c, "noncommuting": noncommuting, "value": value }),
            ))
        }
        Command::RepCheck { wavefunction, save_state } => {
            let cfg = config(g, false);
            cfg.validate()?;
            if let Some(path) = save_state {
                let psi = gaussian(cfg.grid()?, [0.0, 0.0], [0.0, 0.0], 1.0)?;
                std::fs::write(path, psi.to_json_string()).map_err(|e| CliError::Setup(format!("{}: {e}", path.display())))?;
                return Ok(Outcome::ok(format!("wrote {}\n", path.display()), json!({ "written": path.display().to_string() })));
            }
            let (psi, cfg) = match wavefunction {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| CliError::Setup(format!("{}: {e}", path.display())))?;
                    let psi = Wavefunction::from_json_str(&text)?;
                    let s = *psi.spec();
                    let cfg = SuiteConfig { theta: s.theta, hbar: s.hbar, grid_n: s.n, box_l: s.l, ..cfg };
                    (psi, cfg)
                }
                None => (gaussian(cfg.grid()?, [0.0, 0.0], [0.0, 0.0], 1.0)?, cfg),
            };
            let checks = suite::representation_checks(&cfg, &psi, "rep.")?;
            Ok(report_outcome(SuiteReport::new(cfg, checks)))
        }
        Command::Evolve { h, x0, t_end, dt } => {
            let h = observable_arg("h", h)?;
            let x0 = point_arg("--x0", x0)?;
            let traj = evolve(&h, x0, g.theta, g.hbar, *t_end, *dt)?;
            let rows: Vec<[f64; 6]> = traj
                .iter()
                .map(|(t, x)| [t, x.q1, x.q2, x.p1, x.p2, symplectic::evaluate(&h, x, g.theta, g.hbar)])
                .collect();
            let mut csv = String::from("t,q1,q2,p1,p2,H\n");
            for row in &rows {
                csv.push_str(&row.map(render_number).join(","));
                csv.push('\n');
            }
            let json = json!({ "columns": ["t", "q1", "q2", "p1", "p2", "H"], "rows": rows });
            Ok(Outcome::ok(csv, json))
        }
        Command::VerifyAll { parallel } => {
            let report = suite::verify_all(&config(g, *parallel))?;
            Ok(report_outcome(report))
        }
    }
}

fn report_outcome(report: SuiteReport) -> Outcome {
    let code = if report.pass { EXIT_OK } else { EXIT_VERIFICATION };
    Outcome {
        text: report.to_text(),
        json: serde_json::to_value(&report).expect("report serializes"),
        code,
    }
}
