//! Command-line front end.

pub mod demo;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::basic_classes::{builtin_scenario, enumerate_candidates, AdjunctionScenario, Enumeration};
use crate::constructions::{eval_expr, ManifoldExpr};
use crate::error::{Error, Result};
use crate::geography::{geography_scan, render_scan, TableFormat};
use crate::lefschetz::{enk_fibration, twisted_fiber_sum_check, vanishing_cycle_audit};
use crate::manifold::{homeo_compare, taubes_symplectic_check, FourManifold, TaubesVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "swcalc", version, about = "Symbolic Seiberg-Witten invariant calculus")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Accepted for reproducibility scripts; everything is deterministic.
    #[arg(long, global = true, value_parser = ["none"])]
    pub seed: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an expression (or record) file and print the full record.
    Eval { file: PathBuf },
    /// Print only the Seiberg-Witten invariant.
    Sw { file: PathBuf },
    /// Characteristic numbers and the Taubes check.
    Chars { file: PathBuf },
    /// Compare two manifolds up to homeomorphism.
    Homeo { a: PathBuf, b: PathBuf },
    /// Z(m,g) geography table.
    Geography {
        #[arg(long, default_value = "1..6")]
        m_range: String,
        #[arg(long, default_value = "1..8")]
        g_range: String,
    },
    /// Enumerate basic-class candidates of a scenario (file or builtin name
    /// such as `Y2g(3)`, `Yng(3,2)`, `Yprime(2;1,2)`, `Yprime_neg1(2;1)`).
    BasicClasses {
        #[arg(long)]
        scenario: String,
    },
    /// Fibration counts on E(n)_K.
    Lefschetz {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        audit: bool,
    },
    /// Run a bundle of golden checks.
    Demo {
        #[arg(value_parser = demo::SECTIONS.iter().copied().chain(["all"]).collect::<Vec<_>>())]
        section: String,
    },
}

/// Directory searched for relative input files that do not exist as given.
pub fn examples_dir() -> PathBuf {
    std::env::var_os("SWCALC_EXAMPLES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("examples"))
}

fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    let alt = examples_dir().join(path);
    if alt.exists() {
        alt
    } else {
        path.to_path_buf()
    }
}

/// Load an expression file (top-level `"op"`) or a manifold record.
pub fn load_manifold(path: &Path) -> Result<FourManifold> {
    let p = resolve(path);
    let text = std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    parse_manifold(&text).map_err(|e| e.at(p.display().to_string()))
}

pub fn parse_manifold(text: &str) -> Result<FourManifold> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.get("op").is_some() {
        eval_expr(&ManifoldExpr::from_json(text)?)
    } else {
        FourManifold::from_json(text)
    }
}

#[derive(Serialize)]
struct SwReport<'a> {
    name: &'a str,
    kind: &'a str,
    rendered: String,
    sw: &'a crate::manifold::SWValue,
}

#[derive(Serialize)]
pub struct CharsReport {
    pub name: String,
    pub e: i64,
    pub sign: i64,
    pub chi: Option<i64>,
    pub c1_squared: i64,
    pub b1: Option<u32>,
    pub b2_plus: Option<i64>,
    pub b2_minus: Option<i64>,
    pub parity: String,
    pub spin: String,
    pub symplectic: String,
    pub simply_connected: String,
    pub taubes: TaubesVerdict,
}

pub fn chars_report(m: &FourManifold) -> CharsReport {
    CharsReport {
        name: m.name.clone(),
        e: m.e,
        sign: m.sign,
        chi: m.quarter_characteristic().ok(),
        c1_squared: m.c1_squared(),
        b1: m.b1,
        b2_plus: m.b2_plus(),
        b2_minus: m.b2_minus(),
        parity: m.effective_parity().to_string(),
        spin: m.effective_spin().to_string(),
        symplectic: m.symplectic.to_string(),
        simply_connected: m.simply_connected.to_string(),
        taubes: taubes_symplectic_check(m),
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "unknown".into())
}

fn text_or_json<T: Serialize>(fmt: Format, value: &T, text: impl FnOnce() -> String) -> Result<String> {
    match fmt {
        Format::Text => Ok(text()),
        Format::Json => Ok(serde_json::to_string_pretty(value)? + "\n"),
        Format::Csv => Err(Error::Precondition("csv output is only available for `geography`".into())),
    }
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<i64>> {
    let bad = || Error::Parse(format!("range `{s}` is not of the form a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?)
}

fn load_scenario(spec: &str) -> Result<AdjunctionScenario> {
    let p = resolve(Path::new(spec));
    if p.is_file() {
        let text = std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        return AdjunctionScenario::from_json(&text).map_err(|e| e.at(p.display().to_string()));
    }
    builtin_scenario(spec)
}

/// Run a parsed command; returns the rendered output and whether it counts
/// as success.
pub fn execute(cli: &Cli) -> Result<(String, bool)> {
    let fmt = cli.format;
    match &cli.command {
        Command::Eval { file } => {
            let m = load_manifold(file)?;
            let s = match fmt {
                Format::Json => m.to_json()? + "\n",
                _ => text_or_json(fmt, &m, || m.render_text())?,
            };
            Ok((s, true))
        }
        Command::Sw { file } => {
            let m = load_manifold(file)?;
            let r = SwReport { name: &m.name, kind: m.sw.kind(), rendered: m.render_sw(), sw: &m.sw };
            Ok((text_or_json(fmt, &r, || format!("{} [{}]: {}\n", r.name, r.kind, r.rendered))?, true))
        }
        Command::Chars { file } => {
            let m = load_manifold(file)?;
            let r = chars_report(&m);
            let s = text_or_json(fmt, &r, || {
                format!(
                    "name: {}\ne: {}\nsign: {}\nchi: {}\nc1^2: {}\nb1: {}\nb2+: {}\nb2-: {}\nparity: {}\nspin: {}\nsymplectic: {}\nsimply_connected: {}\ntaubes: {}\n",
                    r.name,
                    r.e,
                    r.sign,
                    opt(&r.chi),
                    r.c1_squared,
                    opt(&r.b1),
                    opt(&r.b2_plus),
                    opt(&r.b2_minus),
                    r.parity,
                    r.spin,
                    r.symplectic,
                    r.simply_connected,
                    match &r.taubes {
                        TaubesVerdict::Consistent => "consistent".to_string(),
                        TaubesVerdict::Obstructed(w) => format!("obstructed ({w})"),
                        TaubesVerdict::Inapplicable(w) => format!("inapplicable ({w})"),
                    }
                )
            })?;
            Ok((s, true))
        }
        Command::Homeo { a, b } => {
            let (ma, mb) = (load_manifold(a)?, load_manifold(b)?);
            let v = homeo_compare(&ma, &mb);
            #[derive(Serialize)]
            struct H<'a> {
                a: &'a str,
                b: &'a str,
                verdict: &'a crate::manifold::HomeoVerdict,
            }
            let h = H { a: &ma.name, b: &mb.name, verdict: &v };
            let s = text_or_json(fmt, &h, || {
                format!("{} vs {}: {}\n{}\n", ma.name, mb.name, format!("{:?}", v.verdict).to_lowercase(), v.note)
            })?;
            Ok((s, true))
        }
        Command::Geography { m_range, g_range } => {
            let rows = geography_scan(parse_range(m_range)?, parse_range(g_range)?);
            let tf = match fmt {
                Format::Text => TableFormat::Text,
                Format::Json => TableFormat::Json,
                Format::Csv => TableFormat::Csv,
            };
            Ok((render_scan(&rows, tf)?, true))
        }
        Command::BasicClasses { scenario } => {
            let sc = load_scenario(scenario)?;
            let res = enumerate_candidates(&sc)?;
            #[derive(Serialize)]
            struct B<'a> {
                scenario: &'a str,
                basis: &'a [String],
                #[serde(flatten)]
                result: &'a Enumeration,
                described: Vec<String>,
            }
            let described = res.classes().iter().map(|k| sc.lattice.describe(k)).collect();
            let b = B { scenario: &sc.name, basis: sc.lattice.basis_names(), result: &res, described };
            let s = text_or_json(fmt, &b, || match &res {
                Enumeration::Vanishes { reason } => format!("{}: SW vanishes ({reason})\n", sc.name),
                Enumeration::Candidates { classes } => {
                    let mut s = format!("{}: {} candidate(s), k^2 = {}\n", sc.name, classes.len(), sc.simple_type_square());
                    for d in &b.described {
                        s.push_str(&format!("  {d}\n"));
                    }
                    s
                }
            })?;
            Ok((s, true))
        }
        Command::Lefschetz { n, g, audit } => {
            let f = enk_fibration(*n, *g)?;
            let a = if *audit { Some(vanishing_cycle_audit(*n, *g)?) } else { None };
            let tw = twisted_fiber_sum_check(*n as u32, *g as u32)?;
            #[derive(Serialize)]
            struct L<'a> {
                fibration: &'a crate::lefschetz::Fibration,
                #[serde(skip_serializing_if = "Option::is_none")]
                audit: Option<&'a crate::lefschetz::VanishingAudit>,
                twisted_sum: &'a crate::lefschetz::TwistedSumReport,
            }
            let l = L { fibration: &f, audit: a.as_ref(), twisted_sum: &tw };
            let s = text_or_json(fmt, &l, || {
                let mut s = format!(
                    "E({n})_K, g = {g}: fiber genus {}, singular fibers {}, reducible {}, hyperelliptic {}, e = {}\n",
                    f.fiber_genus,
                    f.singular_fibers,
                    opt(&f.reducible_fibers),
                    f.hyperelliptic,
                    f.total_e
                );
                if let Some(a) = &a {
                    s.push_str(&format!(
                        "vanishing cycles: {} + 4 x {} = {}\n",
                        a.from_hyperelliptic, a.extra_per_singular_fiber, a.total
                    ));
                }
                s.push_str(&format!(
                    "M({n},{g}) # M({n},{g}): e = {}, sign = {} (E(n): {}, {}) {}\n",
                    tw.e,
                    tw.sign,
                    tw.expected_e,
                    tw.expected_sign,
                    if tw.consistent { "consistent" } else { "INCONSISTENT" }
                ));
                s
            })?;
            Ok((s, true))
        }
        Command::Demo { section } => {
            let checks = if section == "all" {
                let mut v = Vec::new();
                for s in demo::SECTIONS {
                    v.extend(demo::run_section(s)?);
                }
                v
            } else {
                demo::run_section(section)?
            };
            let ok = checks.iter().all(|c| c.status != demo::Status::Fail);
            let s = text_or_json(fmt, &checks, || demo::render(&checks))?;
            Ok((s, ok))
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((out, ok)) => {
            if let Some(p) = &cli.out {
                if let Err(e) = std::fs::write(p, &out) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return 1;
                }
            } else {
                print!("{out}");
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
