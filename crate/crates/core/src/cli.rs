//! The `pp` command line: construct, verify, analyze, norm and embed.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{analyze, AnalysisReport};
use crate::catalog::tensor_embed;
use crate::error::{Error, Result};
use crate::io::{self, StructureFile};
use crate::norms::{dft_oracle_u2, u2, u3, ComplexFunction, NormValue};
use crate::structures::{strong_quotient, verify_cube_with, verify_grid_with, ParallelepipedStructure, VerificationReport, VerifyOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const ORACLE_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "pp", version, about = "Parallelogram and parallelepiped structures on finite sets")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file for the written structure
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Exit 1 unless the verdict matches
    #[arg(long, global = true, value_enum)]
    pub expect: Option<Expect>,
    /// Seed for sampled checks and random functions
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest |Q| enumerated or written explicitly
    #[arg(long = "max-q", global = true, default_value_t = 1 << 24)]
    pub max_q: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Pass,
    Fail,
    Strong,
    Weak,
    Nil,
    NotNil,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a catalog structure and write it as a structure file
    Construct {
        /// Constructor spec, e.g. `abelian:cyclic:4` or `counterexample:3`
        spec: String,
    },
    /// Check the axioms of a structure file or constructor spec
    Verify {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Base, fiber and class groups, split verdicts and the nil verdict
    Analyze {
        input: String,
        #[arg(long)]
        json: bool,
        /// Pass to the strong quotient first
        #[arg(long)]
        quotient: bool,
    },
    /// Seminorm sum of a function over P (order 2) or Q (order 3)
    Norm {
        input: String,
        /// Function file, or `const:<re>`, `delta:<x>`, `random`
        function: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        order: u8,
        /// Cross-check order 2 against the Fourier formula
        #[arg(long)]
        oracle: bool,
    },
    /// Embed a structure into its tensor product with an abelian group E
    Embed {
        input: String,
        /// Group spec for E
        group: String,
        /// Images of the fiber basis in E, joined by `+`
        #[arg(long)]
        inc: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

pub fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let c = &cfg.common;
    match &cfg.command {
        Command::Construct { spec } => construct(spec, c, out),
        Command::Verify { input, json } => verify(input, *json, c, out),
        Command::Analyze { input, json, quotient } => {
            let mut s = io::load_structure(input)?.into_cube()?;
            s.ensure_verified()?;
            if *quotient {
                let q = strong_quotient(&s)?;
                writeln!(out, "strong quotient: {} -> {} points", s.size(), q.structure.size())?;
                s = q.structure;
            } else if !s.is_strong() {
                return Err(Error::Weak("rerun with --quotient to analyze the strong quotient".into()));
            }
            let r = analyze(&s)?;
            emit_report(&r, *json, out)?;
            Ok(nil_exit(c.expect, r.nil, err)?)
        }
        Command::Norm { input, function, order, oracle } => norm(input, function, *order, *oracle, c, out, err),
        Command::Embed { input, group, inc, json } => embed(input, group, inc.as_deref(), *json, c, out, err),
    }
}

fn opts(c: &Common) -> VerifyOptions {
    VerifyOptions { max_q: c.max_q as u128, seed: c.seed, ..VerifyOptions::default() }
}

fn counts(s: &ParallelepipedStructure, max_q: u128) -> String {
    if s.estimated_oct_count() <= max_q {
        format!("|P| = {}, |Q| = {}", s.quad_count(), s.oct_count())
    } else {
        format!("|Q| about {}", s.estimated_oct_count())
    }
}

/// Writes the explicit file when `|Q|` fits, else a descriptor.
fn write_structure_file(s: &ParallelepipedStructure, spec: &str, comments: &[String], max_q: u128) -> Result<(String, bool)> {
    match io::write_structure(s, comments, max_q) {
        Ok(t) => Ok((t, true)),
        Err(Error::Guard { .. }) => Ok((io::write_descriptor(spec, comments), false)),
        Err(e) => Err(e),
    }
}

fn construct(spec: &str, c: &Common, out: &mut dyn Write) -> Result<i32> {
    let s = io::build_structure(spec)?;
    let r = verify_cube_with(&s, &opts(c))?;
    let max_q = c.max_q as u128;
    let comments = vec![
        format!("construction: {}", s.model().describe()),
        format!("spec: {spec}"),
        format!("{} points, {}, {}", s.size(), counts(&s, max_q), if r.strong { "strong" } else { "weak" }),
    ];
    let (text, explicit) = write_structure_file(&s, spec, &comments, max_q)?;
    match &c.output {
        Some(path) => {
            std::fs::write(path, &text)?;
            let kind = if explicit { "explicit" } else { "descriptor" };
            writeln!(out, "wrote {} ({kind}): {}", path.display(), comments[2])?;
            writeln!(out, "verdict: {}", if r.passed() { "pass" } else { "fail" })?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(if r.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn verify(input: &str, json: bool, c: &Common, out: &mut dyn Write) -> Result<i32> {
    let r: VerificationReport = match io::load_structure(input)? {
        StructureFile::Grid(p) => verify_grid_with(&p, &opts(c))?,
        StructureFile::Cube(s) => verify_cube_with(&s, &opts(c))?,
    };
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r).map_err(|e| Error::Invalid(e.to_string()))?)?;
    } else {
        out.write_all(r.render().as_bytes())?;
        if !r.passed() {
            writeln!(out, "{}", r.first_failure())?;
        }
    }
    let ok = match c.expect {
        None | Some(Expect::Pass) => r.passed(),
        Some(Expect::Fail) => !r.passed(),
        Some(Expect::Strong) => r.passed() && r.strong,
        Some(Expect::Weak) => r.passed() && !r.strong,
        Some(e) => return Err(Error::Invalid(format!("--expect {e:?} does not apply to verify"))),
    };
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn emit_report(r: &AnalysisReport, json: bool, out: &mut dyn Write) -> Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(r).map_err(|e| Error::Invalid(e.to_string()))?)?;
    } else {
        out.write_all(r.render().as_bytes())?;
    }
    Ok(())
}

fn nil_exit(expect: Option<Expect>, nil: bool, err: &mut dyn Write) -> Result<i32> {
    let ok = match expect {
        None => true,
        Some(Expect::Nil) => nil,
        Some(Expect::NotNil) => !nil,
        Some(e) => return Err(Error::Invalid(format!("--expect {e:?} applies to verify only"))),
    };
    if !ok {
        writeln!(err, "nil verdict {nil} does not match --expect")?;
    }
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn load_function(arg: &str, n: usize, seed: u64, err: &mut dyn Write) -> Result<ComplexFunction> {
    if let Some(v) = arg.strip_prefix("const:") {
        let re: f64 = v.parse().map_err(|_| Error::spec(arg, "not a number"))?;
        return ComplexFunction::constant(n, Complex64::new(re, 0.0));
    }
    if let Some(v) = arg.strip_prefix("delta:") {
        let x: usize = v.parse().map_err(|_| Error::spec(arg, "not a point index"))?;
        if x >= n {
            return Err(Error::Dimension(format!("point {x} outside the {n}-point ground set")));
        }
        return ComplexFunction::indicator(n, x);
    }
    if arg == "random" {
        writeln!(err, "random function, seed {seed}")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        return ComplexFunction::new(v);
    }
    let f = io::parse_function(&std::fs::read_to_string(arg)?)?;
    if f.len() != n {
        return Err(Error::Dimension(format!("function has {} values, structure has {n} points", f.len())));
    }
    Ok(f)
}

fn norm_line(v: &NormValue) -> String {
    format!("{} {} {}", io::format_sig(v.sum_re), io::format_sig(v.sum_im), io::format_sig(v.norm))
}

fn norm(input: &str, function: &str, order: u8, oracle: bool, c: &Common, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let file = io::load_structure(input)?;
    let f = load_function(function, file.size(), c.seed, err)?;
    let grid = match &file {
        StructureFile::Grid(p) => p.clone(),
        StructureFile::Cube(s) => s.grid(),
    };
    let v = match order {
        2 => u2(&f, &grid)?,
        _ => u3(&f, &file.clone().into_cube()?)?,
    };
    writeln!(out, "{}", norm_line(&v))?;
    if !oracle {
        return Ok(EXIT_PASS);
    }
    if order != 2 {
        return Err(Error::Invalid("--oracle applies to order 2".into()));
    }
    let o = dft_oracle_u2(&f, &grid)?;
    let agree = (v.norm - o).abs() <= ORACLE_TOL * v.norm.max(o);
    writeln!(out, "oracle {} {}", io::format_sig(o), if agree { "agree" } else { "DISAGREE" })?;
    Ok(if agree { EXIT_PASS } else { EXIT_FAIL })
}

/// The input as a tensor argument: a file by absolute path, or a spec as given.
fn tensor_source(input: &str) -> String {
    match std::fs::canonicalize(input) {
        Ok(p) if Path::new(input).is_file() => p.display().to_string(),
        _ => input.to_string(),
    }
}

fn embed(input: &str, group: &str, inc: Option<&str>, json: bool, c: &Common, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let s = io::load_structure(input)?.into_cube()?;
    let e = io::parse_group(group)?;
    let inc: Option<Vec<usize>> = inc
        .map(|t| t.split('+').map(|x| x.parse().map_err(|_| Error::spec(t, format!("bad inc entry `{x}`")))).collect())
        .transpose()?;
    let t = tensor_embed(&s, &e, inc.as_deref())?;
    let max_q = c.max_q as u128;
    let inc_text: Vec<String> = t.inc.iter().map(|x| x.to_string()).collect();
    let spec = format!("tensor:{},E={group},inc={}", tensor_source(input), inc_text.join("+"));
    writeln!(out, "embedding {} points into {} points, inc = [{}]", s.size(), t.structure.size(), inc_text.join(", "))?;
    if let Some(path) = &c.output {
        let comments = vec![
            format!("construction: {}", t.structure.model().describe()),
            format!("spec: {spec}"),
            format!("{} points, {}", t.structure.size(), counts(&t.structure, max_q)),
        ];
        let (text, explicit) = write_structure_file(&t.structure, &spec, &comments, max_q)?;
        std::fs::write(path, text)?;
        writeln!(out, "wrote {} ({})", path.display(), if explicit { "explicit" } else { "descriptor" })?;
    }
    let r = analyze(&t.structure)?;
    emit_report(&r, json, out)?;
    nil_exit(c.expect, r.nil, err)
}
