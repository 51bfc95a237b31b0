//! Command-line front end and the JSON reports it emits.
//!
//! Every JSON document carries `"schema": "1"`. Degrees are ascending and
//! weights within a degree are lexicographically descending, so identical
//! inputs give byte-identical output. In resolution reports `w3` is a weight
//! of `V₃*`: a summand is `S_{w1}V₁ ⊗ S_{w2}V₂ ⊗ S_{w3}V₃*`.
//!
//! Exit codes: 0 success, 2 invalid input, 3 resource cap exceeded,
//! 4 failed cross-check (including unresolved ambiguity).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bott::{CohomologyTable, Status};
use crate::error::{Error, Result};
use crate::partitions::{partitions_in_box, Partition, Weight};
use crate::quiver::{self, EquivariantTerm};
use crate::schurcx::DEFAULT_CAP;
use crate::split::{cohomology_capped, FlagContext, Method, Path as SplitPath};

pub const SCHEMA: &str = "1";
const CACHE_FILE: &str = "lr-cache.txt";

#[derive(Parser, Debug)]
#[command(name = "flagcoh", version, about = "Cohomology on two-step flag varieties and quiver orbit resolutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest weight block the definitive algorithm may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Directory holding the Littlewood–Richardson cache.
    #[arg(long, global = true, env = "FLAGCOH_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology of S_λR₂ ⊗ S_μ(W/R₁)* on Flag(r1, r2, n).
    Cohomology {
        /// r1,r2,n
        #[arg(long, value_parser = parse_triple)]
        flag: [usize; 3],
        /// Comma-separated parts; "" for the empty partition.
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        lambda: Partition,
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        mu: Partition,
        /// auto, split-only or definitive.
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Terms of the minimal free resolution of an orbit closure.
    Resolution {
        /// d1,d2,d3
        #[arg(long = "dim", value_parser = parse_triple)]
        dim: [usize; 3],
        /// rank X, rank Y, rank YX
        #[arg(long, value_parser = parse_triple)]
        ranks: [usize; 3],
        /// Largest homological degree to compute; defaults to the codimension.
        #[arg(long)]
        max_term: Option<usize>,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Print every summand in text mode.
        #[arg(long)]
        verbose: bool,
    },
    /// Minor families generating the ideal, checked against F_1.
    Generators {
        #[arg(long = "dim", value_parser = parse_triple)]
        dim: [usize; 3],
        #[arg(long, value_parser = parse_triple)]
        ranks: [usize; 3],
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Sweep flags and partitions, reporting cohomology in several degrees.
    Scan {
        /// Largest n.
        #[arg(long)]
        max_n: usize,
        /// Largest first part of λ and μ.
        #[arg(long)]
        max_part: u32,
        /// Largest |λ| and |μ|.
        #[arg(long)]
        max_size: Option<u32>,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Include timing statistics (makes the output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
}

pub fn parse_partition(s: &str) -> std::result::Result<Partition, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("bad part {x:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if parts.iter().any(|&p| p < 0 || p > u32::MAX as i64) {
        return Err(Error::InvalidPartition(parts).to_string());
    }
    Partition::new(parts.iter().map(|&p| p as u32).collect()).map_err(|e| e.to_string())
}

pub fn parse_triple(s: &str) -> std::result::Result<[usize; 3], String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("bad entry {x:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<usize>| format!("expected three entries, found {}", v.len()))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::Verification(_) | Error::Inconsistent(_) | Error::Ambiguous(_) => 4,
        Error::NonSymmetricCharacter(_) | Error::NegativeResidual(_) => 4,
        Error::Io(_) => 1,
        _ => 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: Weight,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub schema: String,
    pub flag: [usize; 3],
    pub lambda: Partition,
    pub mu: Partition,
    pub method: String,
    pub path: String,
    pub status: String,
    pub cohomology: BTreeMap<u32, Vec<WeightEntry>>,
}

impl CohomologyReport {
    pub fn new(
        ctx: FlagContext,
        lambda: &Partition,
        mu: &Partition,
        method: Method,
        path: SplitPath,
        t: &CohomologyTable,
    ) -> Self {
        CohomologyReport {
            schema: SCHEMA.into(),
            flag: [ctx.r1, ctx.r2, ctx.n],
            lambda: lambda.clone(),
            mu: mu.clone(),
            method: method.as_str().into(),
            path: path.as_str().into(),
            status: t.status.as_str().into(),
            cohomology: t
                .degrees()
                .map(|(d, rep)| {
                    (d, rep.iter().rev().map(|(w, m)| WeightEntry { weight: w.clone(), mult: m }).collect())
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub schema: String,
    pub d: [usize; 3],
    pub ranks: [usize; 3],
    pub codim: usize,
    pub method: String,
    pub max_term: usize,
    pub terms: Vec<EquivariantTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub kind: String,
    pub size: usize,
    pub twist: usize,
    pub w1: Weight,
    pub w2: Weight,
    pub w3: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub schema: String,
    pub d: [usize; 3],
    pub ranks: [usize; 3],
    pub families: Vec<FamilyReport>,
    pub f1: Vec<EquivariantTerm>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBounds {
    pub max_n: usize,
    pub max_part: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_size: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScanCase {
    pub flag: [usize; 3],
    pub lambda: Partition,
    pub mu: Partition,
    pub path: String,
    pub degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanTiming {
    pub total_ms: f64,
    pub mean_ms: f64,
    pub max_ms: f64,
    pub slowest: Option<ScanCase>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: String,
    pub bounds: ScanBounds,
    pub method: String,
    pub cases: usize,
    /// Cases with cohomology in more than one degree.
    pub violations: Vec<ScanCase>,
    /// Cases the split bundles could not decide.
    pub ambiguous: Vec<ScanCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<ScanTiming>,
}

impl ScanReport {
    /// Violations inside `n ≤ 4`, `λ₁, μ₁ ≤ 3`, where concentration in one
    /// degree is known to hold.
    pub fn certified_violations(&self) -> impl Iterator<Item = &ScanCase> {
        self.violations.iter().filter(|c| c.flag[2] <= 4 && c.lambda.first() <= 3 && c.mu.first() <= 3)
    }
}

pub fn run_cohomology(
    ctx: FlagContext,
    lambda: &Partition,
    mu: &Partition,
    method: Method,
    cap: usize,
) -> Result<CohomologyReport> {
    let (t, path) = cohomology_capped(ctx, lambda, mu, method, cap)?;
    Ok(CohomologyReport::new(ctx, lambda, mu, method, path, &t))
}

pub fn run_resolution(
    d: [usize; 3],
    ranks: [usize; 3],
    max_term: Option<usize>,
    method: Method,
    cap: usize,
) -> Result<ResolutionReport> {
    let q = quiver::datum_from_ranks(d, ranks)?;
    let codim = quiver::orbit_codimension(&q);
    let res = quiver::resolution_terms(&q, max_term.unwrap_or(codim), method, cap)?;
    Ok(ResolutionReport {
        schema: SCHEMA.into(),
        d,
        ranks,
        codim,
        method: method.as_str().into(),
        max_term: res.max_term,
        terms: res.terms,
    })
}

pub fn run_generators(d: [usize; 3], ranks: [usize; 3], method: Method, cap: usize) -> Result<GeneratorsReport> {
    let q = quiver::datum_from_ranks(d, ranks)?;
    let report = quiver::minimal_generators(&q, method, cap)?;
    Ok(GeneratorsReport {
        schema: SCHEMA.into(),
        d,
        ranks,
        families: report
            .families
            .iter()
            .map(|f| FamilyReport {
                kind: f.kind.as_str().into(),
                size: f.size,
                twist: f.twist,
                w1: f.summand.w1.clone(),
                w2: f.summand.w2.clone(),
                w3: f.summand.w3.clone(),
            })
            .collect(),
        f1: report.f1,
        verdict: if report.matches { "PASS" } else { "FAIL" }.into(),
    })
}

/// All `(ctx, λ, μ)` with `0 ≤ r₁ < r₂ ≤ n ≤ max_n`, `λ₁, μ₁ ≤ max_part`
/// and, if given, `|λ|, |μ| ≤ max_size`.
pub fn scan_cases(bounds: &ScanBounds) -> Vec<(FlagContext, Partition, Partition)> {
    let fits = |p: &Partition| bounds.max_size.is_none_or(|s| p.size() <= s);
    let mut out = Vec::new();
    for n in 1..=bounds.max_n {
        for r1 in 0..n {
            for r2 in r1 + 1..=n {
                let ctx = FlagContext { r1, r2, n };
                let lambdas: Vec<Partition> =
                    partitions_in_box(r2, bounds.max_part).into_iter().filter(|p| fits(p)).collect();
                let mus: Vec<Partition> =
                    partitions_in_box(n - r1, bounds.max_part).into_iter().filter(|p| fits(p)).collect();
                for l in &lambdas {
                    for m in &mus {
                        out.push((ctx, l.clone(), m.clone()));
                    }
                }
            }
        }
    }
    out
}

pub fn run_scan(bounds: ScanBounds, method: Method, cap: usize, timing: bool) -> Result<ScanReport> {
    let cases = scan_cases(&bounds);
    let start = Instant::now();
    let results: Vec<(ScanCase, bool, f64)> = cases
        .par_iter()
        .map(|(ctx, l, m)| {
            let s = Instant::now();
            let (t, path) = cohomology_capped(*ctx, l, m, method, cap)?;
            let case = ScanCase {
                flag: [ctx.r1, ctx.r2, ctx.n],
                lambda: l.clone(),
                mu: m.clone(),
                path: path.as_str().into(),
                degrees: t.degrees().map(|(d, _)| d).collect(),
            };
            let ambiguous = path == SplitPath::Definitive && method == Method::Auto || t.status == Status::Ambiguous;
            Ok((case, ambiguous, s.elapsed().as_secs_f64() * 1e3))
        })
        .collect::<Result<_>>()?;
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut violations = Vec::new();
    let mut ambiguous = Vec::new();
    let mut slowest: Option<(f64, ScanCase)> = None;
    for (case, amb, ms) in &results {
        if case.degrees.len() > 1 {
            violations.push(case.clone());
        }
        if *amb {
            ambiguous.push(case.clone());
        }
        if slowest.as_ref().is_none_or(|(t, _)| ms > t) {
            slowest = Some((*ms, case.clone()));
        }
    }
    violations.sort();
    ambiguous.sort();
    let timing = timing.then(|| ScanTiming {
        total_ms,
        mean_ms: if results.is_empty() { 0.0 } else { results.iter().map(|r| r.2).sum::<f64>() / results.len() as f64 },
        max_ms: slowest.as_ref().map_or(0.0, |s| s.0),
        slowest: slowest.map(|s| s.1),
    });
    Ok(ScanReport {
        schema: SCHEMA.into(),
        bounds,
        method: method.as_str().into(),
        cases: results.len(),
        violations,
        ambiguous,
        timing,
    })
}

fn load_cache(dir: &Path, err: &mut dyn Write) {
    let path = dir.join(CACHE_FILE);
    let Ok(file) = File::open(&path) else { return };
    if let Err(e) = crate::lr::import_cache(BufReader::new(file)) {
        let _ = writeln!(err, "warning: ignoring cache {}: {e}", path.display());
    }
}

fn save_cache(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{CACHE_FILE}.tmp"));
    crate::lr::export_cache(std::io::BufWriter::new(File::create(&tmp)?))?;
    std::fs::rename(tmp, dir.join(CACHE_FILE))?;
    Ok(())
}

fn json<T: Serialize>(x: &T) -> Result<String> {
    serde_json::to_string(x).map_err(|e| Error::Parse(e.to_string()))
}

fn table_text(r: &CohomologyReport) -> String {
    let [r1, r2, n] = r.flag;
    let mut s = format!(
        "Flag({r1},{r2},{n})  λ = {}  μ = {}\nmethod {}, path {}, status {}\n",
        r.lambda, r.mu, r.method, r.path, r.status
    );
    if r.cohomology.is_empty() {
        s.push_str("all cohomology vanishes\n");
    }
    for (d, entries) in &r.cohomology {
        let terms: Vec<String> = entries
            .iter()
            .map(|e| if e.mult == 1 { format!("S{}", e.weight) } else { format!("{}·S{}", e.mult, e.weight) })
            .collect();
        s.push_str(&format!("H^{d}: {}\n", terms.join(" + ")));
    }
    s
}

fn resolution_text(r: &ResolutionReport, verbose: bool) -> String {
    let mut s = format!(
        "d = ({},{},{}), ranks = ({},{},{}), codimension {}\n",
        r.d[0], r.d[1], r.d[2], r.ranks[0], r.ranks[1], r.ranks[2], r.codim
    );
    for i in 0..=r.max_term {
        let terms: Vec<&EquivariantTerm> = r.terms.iter().filter(|t| t.i == i).collect();
        let count: u64 = terms.iter().flat_map(|t| &t.summands).map(|x| x.mult).sum();
        let twists: Vec<String> = terms.iter().map(|t| t.twist.to_string()).collect();
        let flag = if terms.iter().any(|t| t.ambiguous) { " (ambiguous)" } else { "" };
        s.push_str(&format!("F_{i}: {count} summands, twists [{}]{flag}\n", twists.join(",")));
        if verbose {
            for t in terms {
                for x in &t.summands {
                    s.push_str(&format!("    A(-{}) ⊗ {}\n", t.twist, x));
                }
            }
        }
    }
    s
}

fn generators_text(r: &GeneratorsReport) -> String {
    let mut s = String::new();
    for f in &r.families {
        s.push_str(&format!(
            "{}-minors of size {}: S{}V1 ⊗ S{}V2 ⊗ S{}V3* in degree {}\n",
            f.kind, f.size, f.w1, f.w2, f.w3, f.twist
        ));
    }
    if r.families.is_empty() {
        s.push_str("no generators\n");
    }
    s.push_str(&format!("F_1 cross-check: {}\n", r.verdict));
    s
}

fn scan_text(r: &ScanReport) -> String {
    let mut s = format!(
        "{} cases (n ≤ {}, parts ≤ {}), {} in several degrees, {} undecided by splitting\n",
        r.cases,
        r.bounds.max_n,
        r.bounds.max_part,
        r.violations.len(),
        r.ambiguous.len()
    );
    for c in &r.violations {
        s.push_str(&format!(
            "several degrees: Flag({},{},{}) λ = {} μ = {} degrees {:?}\n",
            c.flag[0], c.flag[1], c.flag[2], c.lambda, c.mu, c.degrees
        ));
    }
    for c in &r.ambiguous {
        s.push_str(&format!(
            "undecided: Flag({},{},{}) λ = {} μ = {} resolved via {}\n",
            c.flag[0], c.flag[1], c.flag[2], c.lambda, c.mu, c.path
        ));
    }
    if let Some(t) = &r.timing {
        s.push_str(&format!("time {:.1} ms total, {:.3} ms mean, {:.1} ms max\n", t.total_ms, t.mean_ms, t.max_ms));
    }
    s
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let text = cli.format == Format::Text;
    let (body, code) = match &cli.command {
        Command::Cohomology { flag, lambda, mu, method } => {
            let ctx = FlagContext::new(flag[0], flag[1], flag[2])?;
            let r = run_cohomology(ctx, lambda, mu, *method, cli.cap)?;
            (if text { table_text(&r) } else { json(&r)? }, 0)
        }
        Command::Resolution { dim, ranks, max_term, method, verbose } => {
            let r = run_resolution(*dim, *ranks, *max_term, *method, cli.cap)?;
            (if text { resolution_text(&r, *verbose) } else { json(&r)? }, 0)
        }
        Command::Generators { dim, ranks, method } => {
            let r = run_generators(*dim, *ranks, *method, cli.cap)?;
            let code = if r.verdict == "PASS" { 0 } else { 4 };
            (if text { generators_text(&r) } else { json(&r)? }, code)
        }
        Command::Scan { max_n, max_part, max_size, method, timing } => {
            let bounds = ScanBounds { max_n: *max_n, max_part: *max_part, max_size: *max_size };
            let r = run_scan(bounds, *method, cli.cap, *timing)?;
            let code = if r.certified_violations().next().is_some() { 4 } else { 0 };
            (if text { scan_text(&r) } else { json(&r)? }, code)
        }
    };
    out.write_all(body.as_bytes())?;
    if !body.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(code)
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(dir) = &cli.cache_dir {
        load_cache(dir, err);
    }
    let code = match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    };
    if let Some(dir) = &cli.cache_dir {
        if let Err(e) = save_cache(dir) {
            let _ = writeln!(err, "warning: could not write cache: {e}");
        }
    }
    code
}
