// SPDX-License-Identifier: Apache-2.0

//! The `rmsp` command line.
//!
//! Exit codes: 0 on success, 2 when a verification or audit fails, 1 on
//! usage or parameter errors. JSON and CSV outputs end with a run manifest
//! carrying the SHA-256 digest of the output body.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;
use crate::multiset::IndexMultiset;
use crate::privacy::{self, Family};
use crate::protocol::{self, PatternMode, Scheme, SchemeConfig};
use crate::rm::RmCode;
use crate::superset::{
    best_superset, lemma3_lower_bound, lemma4_size, removal_pattern_count, repetition_size, thm7_bound,
    verify_superset, Mode,
};
use crate::tables;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

/// `superset build` verifies automatically up to this many removal patterns.
const AUTO_VERIFY_PATTERNS: u128 = 2_000_000;

#[derive(Parser, Debug)]
#[command(name = "rmsp", version, about = "Private polynomial computation with Reed-Muller super-sets")]
struct Cli {
    /// key=value file supplying defaults for flags not given on the command line
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, verify or bound information super-sets
    #[command(subcommand)]
    Superset(SupersetCmd),
    /// Privacy audits of storage codes
    #[command(subcommand)]
    Privacy(PrivacyCmd),
    /// Simulate one scheme end to end
    Simulate(SimulateArgs),
    /// Compare schemes over a grid file
    Compare(CompareArgs),
    /// Super-set size tables
    #[command(subcommand)]
    Tables(TablesCmd),
    /// Best 2-super-set sizes for RM_2(1, m)
    Figure2(Figure2Args),
}

#[derive(Subcommand, Debug)]
enum SupersetCmd {
    Build(BuildArgs),
    Verify(VerifyArgs),
    Bound(BoundArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, default_value = "2")]
    field: String,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    s: usize,
    #[arg(long, default_value = "closed")]
    mode: Mode,
    /// skip the exhaustive check even when it is cheap
    #[arg(long)]
    no_verify: bool,
    /// write the multiset here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// multiset file starting with a `# rm q d m S=s` header
    #[arg(long)]
    file: PathBuf,
    /// field specification when q alone is ambiguous about the modulus
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long, default_value = "2")]
    field: String,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    s: usize,
}

#[derive(Subcommand, Debug)]
enum PrivacyCmd {
    Audit(AuditArgs),
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// vandermonde, dual_bch, parity or explicit
    #[arg(long, default_value = "vandermonde")]
    family: String,
    /// generator matrix file for the explicit family
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// privacy level to audit (defaults to r)
    #[arg(long)]
    audit_r: Option<usize>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: u32,
    #[arg(long, default_value_t = 0)]
    s: usize,
    #[arg(long)]
    scheme: Scheme,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "vandermonde")]
    family: String,
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, default_value = "closed")]
    mode: Mode,
    /// enumerate every straggler set (up to 10^4) instead of sampling
    #[arg(long)]
    exhaustive_stragglers: bool,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// upload the syndrome instead of the privatised vector
    #[arg(long)]
    syndrome: bool,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// CSV lines `field,n,r,d,S,family`
    #[arg(long)]
    grid: PathBuf,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "closed")]
    mode: Mode,
}

#[derive(Subcommand, Debug)]
enum TablesCmd {
    /// Binary codes
    Ii(TableArgs),
    /// q = 3, 4, 5
    Iii(TableArgs),
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, default_value = "closed")]
    mode: Mode,
    /// exhaustively verify the rows small enough to check
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct Figure2Args {
    /// largest m in the sweep
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 4)]
    m_min: u32,
    /// largest greedy weight limit tried for each m
    #[arg(long)]
    max_eta: Option<u32>,
}

/// Provenance attached to machine-readable outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub version: String,
    pub output_digest: String,
}

impl RunManifest {
    fn new(args: &[String], seed: Option<u64>, body: &str) -> RunManifest {
        let (command, parameters) = split_args(args);
        RunManifest {
            command,
            parameters,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            output_digest: hex::encode(Sha256::digest(body.as_bytes())),
        }
    }
}

/// Subcommand words and `--flag value` pairs.
fn split_args(args: &[String]) -> (String, BTreeMap<String, String>) {
    let mut words = Vec::new();
    let mut params = BTreeMap::new();
    let mut i = 0;
    while i < args.len() {
        if let Some(flag) = args[i].strip_prefix("--") {
            if let Some((k, v)) = flag.split_once('=') {
                params.insert(k.to_string(), v.to_string());
            } else if args.get(i + 1).is_some_and(|v| !v.starts_with("--")) {
                params.insert(flag.to_string(), args[i + 1].clone());
                i += 1;
            } else {
                params.insert(flag.to_string(), "true".to_string());
            }
        } else {
            words.push(args[i].clone());
        }
        i += 1;
    }
    (words.join(" "), params)
}

/// Reads `key=value` lines (`#` comments) into `--key value` arguments.
fn config_args(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (k, v) = l.split_once('=').ok_or_else(|| Error::Parse(format!("config line `{l}` is not key=value")))?;
            Ok((k.trim().replace('_', "-"), v.trim().to_string()))
        })
        .collect()
}

fn merge_config(args: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let path = match args[pos].split_once('=') {
        Some((_, p)) => p.to_string(),
        None => args.get(pos + 1).cloned().ok_or_else(|| Error::Parse("--config needs a file".into()))?,
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    let mut out = args.clone();
    for (k, v) in config_args(&text)? {
        let flag = format!("--{k}");
        let given = args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        match v.as_str() {
            "true" => out.push(flag),
            "false" => {}
            _ => {
                out.push(flag);
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Runs the command line `args` (without the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match merge_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(std::iter::once("rmsp".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, &args, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("i/o error: {e}"))
}

fn dispatch(cmd: Command, args: &[String], out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Superset(SupersetCmd::Build(a)) => superset_build(a, out),
        Command::Superset(SupersetCmd::Verify(a)) => superset_verify(a, out),
        Command::Superset(SupersetCmd::Bound(a)) => superset_bound(a, out),
        Command::Privacy(PrivacyCmd::Audit(a)) => privacy_audit(a, args, out),
        Command::Simulate(a) => simulate(a, args, out),
        Command::Compare(a) => compare(a, args, out),
        Command::Tables(TablesCmd::Ii(a)) => table_ii(a, args, out),
        Command::Tables(TablesCmd::Iii(a)) => table_iii(a, args, out),
        Command::Figure2(a) => figure2(a, args, out),
    }
}

fn superset_build(a: BuildArgs, out: &mut dyn Write) -> Result<i32> {
    let field = Field::parse(&a.field)?;
    let mut r = best_superset(&field, a.d, a.m, a.s, a.mode)?;
    if !a.no_verify && r.plan().base() <= 1 << 20 && removal_pattern_count(&r.multiset(), a.s) <= AUTO_VERIFY_PATTERNS {
        r.verify()?;
    }
    let text = r.to_text();
    match &a.out {
        Some(path) => std::fs::write(path, &text).map_err(io)?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    writeln!(out, "{}", r.summary()).map_err(io)?;
    Ok(if r.verified() == Some(false) { EXIT_FAILED } else { EXIT_OK })
}

/// Parses the `# rm q d m S=s` header line.
fn parse_header(text: &str) -> Result<(u32, u32, u32, usize)> {
    let line = text
        .lines()
        .find(|l| l.trim_start().starts_with("# rm "))
        .ok_or_else(|| Error::Parse("missing `# rm q d m S=s` header".into()))?;
    let parts: Vec<&str> = line.split_whitespace().collect();
    let num = |i: usize| -> Result<u32> {
        parts.get(i).and_then(|v| v.parse().ok()).ok_or_else(|| Error::Parse(format!("bad header `{line}`")))
    };
    let s = parts
        .get(5)
        .and_then(|v| v.strip_prefix("S="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header `{line}`")))?;
    Ok((num(2)?, num(3)?, num(4)?, s))
}

fn superset_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(&a.file).map_err(io)?;
    let (q, d, m, s) = parse_header(&text)?;
    let field = match &a.field {
        Some(f) => Field::parse(f)?,
        None => Field::with_order(q)?,
    };
    if field.q() != q {
        return Err(Error::InvalidParameters(format!("file is for q={q}, field has q={}", field.q())));
    }
    let code = RmCode::new(&field, d, m)?;
    let t = IndexMultiset::from_text(code.len(), &text)?;
    let ok = verify_superset(&code, s, &t)?;
    writeln!(out, "file {} {}", t.len(), if ok { "verified" } else { "failed" }).map_err(io)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn superset_bound(a: BoundArgs, out: &mut dyn Write) -> Result<i32> {
    let field = Field::parse(&a.field)?;
    let q = field.q();
    let (d, m, s) = (a.d, a.m, a.s);
    writeln!(out, "lower_bound {}", lemma3_lower_bound(q, d, m, s)?).map_err(io)?;
    writeln!(out, "lemma4 {}", lemma4_size(q, d, m, s)?).map_err(io)?;
    writeln!(out, "repetition {}", repetition_size(q, d, m, s)?).map_err(io)?;
    if q == 2 && d >= 1 {
        writeln!(out, "thm7 {}", thm7_bound(d, m, s)).map_err(io)?;
    }
    let r = best_superset(&field, d, m, s, Mode::Closed)?;
    writeln!(out, "best {} {}", r.method().name(), r.size()).map_err(io)?;
    Ok(EXIT_OK)
}

fn load_code(field: &Field, n: usize, r: usize, family: &str, matrix: Option<&PathBuf>) -> Result<privacy::PrivacyCode> {
    let fam = if family == "explicit" {
        let path = matrix.ok_or_else(|| Error::Parse("the explicit family needs --matrix FILE".into()))?;
        let g = Matrix::from_text(&std::fs::read_to_string(path).map_err(io)?)?;
        if g.field() != field {
            return Err(Error::InvalidParameters(format!("matrix is over {}, expected {field}", g.field())));
        }
        Family::Explicit(g)
    } else {
        family.parse()?
    };
    privacy::build_code(field, n, r, fam)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, args: &[String], seed: Option<u64>, result: &T) -> Result<()> {
    let body = serde_json::to_string(result).map_err(|e| Error::Parse(e.to_string()))?;
    let manifest = RunManifest::new(args, seed, &body);
    let doc = serde_json::json!({ "result": result, "manifest": manifest });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))?).map_err(io)
}

fn emit_csv(out: &mut dyn Write, args: &[String], body: &str) -> Result<()> {
    out.write_all(body.as_bytes()).map_err(io)?;
    let manifest = RunManifest::new(args, None, body);
    writeln!(out, "# manifest {} sha256={}", manifest.version, manifest.output_digest).map_err(io)
}

fn privacy_audit(a: AuditArgs, args: &[String], out: &mut dyn Write) -> Result<i32> {
    let field = Field::parse(&a.field)?;
    let code = load_code(&field, a.n, a.r, &a.family, a.matrix.as_ref())?;
    let report = privacy::audit_subset_privacy(&code, a.audit_r.unwrap_or(a.r))?;
    #[derive(Serialize)]
    struct Summary<'a> {
        n: usize,
        m: usize,
        r: usize,
        subsets: usize,
        leakage_bits: f64,
        worst_subset: &'a [usize],
        pass: bool,
    }
    let summary = Summary {
        n: code.n(),
        m: code.m(),
        r: report.r,
        subsets: report.subsets,
        leakage_bits: report.leakage_bits,
        worst_subset: &report.worst_subset,
        pass: report.pass,
    };
    emit_json(out, args, None, &summary)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAILED })
}

fn simulate(a: SimulateArgs, args: &[String], out: &mut dyn Write) -> Result<i32> {
    let field = Field::parse(&a.field)?;
    let code = load_code(&field, a.n, a.r, &a.family, a.matrix.as_ref())?;
    let cfg = SchemeConfig::new(code, a.d, a.s, a.scheme, a.mode)?.with_syndrome_upload(a.syndrome);
    let mode = if a.exhaustive_stragglers { PatternMode::Exhaustive } else { PatternMode::Sampled };
    let report = protocol::simulate(&cfg, a.trials, mode, a.seed)?;
    emit_json(out, args, Some(a.seed), &report)?;
    Ok(if report.decoded_ok { EXIT_OK } else { EXIT_FAILED })
}

/// One grid line: `field,n,r,d,S,family`.
fn parse_grid(text: &str) -> Result<Vec<(String, usize, usize, u32, usize, String)>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("field"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').map(str::trim).collect();
            let bad = || Error::Parse(format!("grid line `{l}` must be field,n,r,d,S,family"));
            if f.len() != 6 {
                return Err(bad());
            }
            Ok((
                f[0].to_string(),
                f[1].parse().map_err(|_| bad())?,
                f[2].parse().map_err(|_| bad())?,
                f[3].parse().map_err(|_| bad())?,
                f[4].parse().map_err(|_| bad())?,
                f[5].to_string(),
            ))
        })
        .collect()
}

fn compare(a: CompareArgs, args: &[String], out: &mut dyn Write) -> Result<i32> {
    let grid = parse_grid(&std::fs::read_to_string(&a.grid).map_err(io)?)?;
    let mut body = String::from("scheme,q,n,r,d,S,N,D,m,upload,ok\n");
    let mut all_ok = true;
    for (field, n, r, d, s, family) in grid {
        let field = Field::parse(&field)?;
        let code = load_code(&field, n, r, &family, None)?;
        for row in protocol::compare_schemes(&code, d, s, a.mode, a.trials, a.seed)? {
            all_ok &= row.ok();
            body.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                row.scheme,
                row.q,
                row.n,
                row.r,
                row.d,
                row.s,
                row.workers,
                row.download,
                row.m,
                row.upload,
                row.ok()
            ));
        }
    }
    emit_csv(out, args, &body)?;
    Ok(if all_ok { EXIT_OK } else { EXIT_FAILED })
}

fn opt(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

fn table_ii(a: TableArgs, args: &[String], out: &mut dyn Write) -> Result<i32> {
    let rows = tables::binary_table(a.mode, a.verify)?;
    let mut body = String::from("d,m,S,recursive,lemma4,repetition,lower_bound,published,match,verified,note\n");
    for r in &rows {
        body.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.d, r.m, r.s, r.recursive, r.lemma4, r.repetition, r.lower_bound, r.published, r.matches, opt(r.verified), r.note
        ));
    }
    emit_csv(out, args, &body)?;
    Ok(if rows.iter().any(|r| r.verified == Some(false)) { EXIT_FAILED } else { EXIT_OK })
}

fn table_iii(a: TableArgs, args: &[String], out: &mut dyn Write) -> Result<i32> {
    let rows = tables::general_table(a.mode, a.verify)?;
    let mut body = String::from("q,d,m,S,recursive,lemma4,lower_bound,published,match,verified\n");
    for r in &rows {
        body.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.q, r.d, r.m, r.s, r.recursive, r.lemma4, r.lower_bound, r.published, r.matches, opt(r.verified)
        ));
    }
    emit_csv(out, args, &body)?;
    Ok(if rows.iter().any(|r| r.verified == Some(false)) { EXIT_FAILED } else { EXIT_OK })
}

fn figure2(a: Figure2Args, args: &[String], out: &mut dyn Write) -> Result<i32> {
    if a.m_min < 4 || a.m < a.m_min {
        return Err(Error::InvalidParameters(format!("need 4 <= m-min <= m, got {}..{}", a.m_min, a.m)));
    }
    let mut body = String::from("m,size,excess,eta\n");
    for m in a.m_min..=a.m {
        let p = tables::figure2_point(m, a.max_eta)?;
        let eta = p.eta.map_or_else(String::new, |e| e.to_string());
        body.push_str(&format!("{},{},{},{}\n", p.m, p.size, p.excess(), eta));
    }
    emit_csv(out, args, &body)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn build_thm4() {
        let (code, out, _) = run_str(&["superset", "build", "--field", "2^1", "--d", "1", "--m", "4", "--s", "1"]);
        assert_eq!(code, 0);
        assert!(out.trim_end().ends_with("thm4 6 verified"));
        assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 7);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["superset", "build", "--bogus"]).0, 1);
        assert_eq!(run_str(&["nothing"]).0, 1);
        assert_eq!(run_str(&["superset", "build", "--d", "1", "--m", "3", "--s", "9"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn audit_explicit() {
        let dir = std::env::temp_dir().join(format!("rmsp-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("g.txt");
        let f = Field::with_order(2).unwrap();
        let g = Matrix::from_u32_rows(&f, &[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]).unwrap();
        std::fs::write(&path, g.to_text()).unwrap();
        let p = path.to_str().unwrap();
        let (code, out, _) = run_str(&["privacy", "audit", "--field", "2", "--n", "4", "--r", "3", "--family", "explicit", "--matrix", p]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["pass"], true);
        assert_eq!(v["result"]["leakage_bits"], 0.0);
        let (code, _, _) = run_str(&[
            "privacy", "audit", "--field", "2", "--n", "4", "--r", "3", "--family", "explicit", "--matrix", p, "--audit-r", "4",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn build_then_verify_file() {
        let dir = std::env::temp_dir().join(format!("rmsp-cli-v-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.txt");
        let p = path.to_str().unwrap();
        let (code, _, _) = run_str(&["superset", "build", "--field", "3", "--d", "1", "--m", "3", "--s", "2", "--out", p]);
        assert_eq!(code, 0);
        assert_eq!(run_str(&["superset", "verify", "--file", p]).0, 0);
        std::fs::write(&path, "# rm 2 1 3 S=1\n0\n1\n2\n4\n").unwrap();
        assert_eq!(run_str(&["superset", "verify", "--file", p]).0, 2);
    }

    #[test]
    fn config_file_supplies_flags() {
        let dir = std::env::temp_dir().join(format!("rmsp-cli-c-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "# defaults\nfield=2\nd=1\nm=4\ns=1\n").unwrap();
        let (code, out, _) = run_str(&["superset", "build", "--config", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("thm4 6"));
        let (_, out, _) = run_str(&["superset", "build", "--config", path.to_str().unwrap(), "--m", "5"]);
        assert!(out.contains("thm4 8"));
    }

    #[test]
    fn simulate_is_deterministic() {
        let args = ["simulate", "--field", "2", "--n", "4", "--r", "3", "--family", "parity", "--d", "2", "--s", "1", "--scheme", "superset", "--seed", "4", "--exhaustive-stragglers"];
        let (code, a, _) = run_str(&args);
        assert_eq!(code, 0);
        let (_, b, _) = run_str(&args);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["result"]["N"], 8);
        assert_eq!(v["result"]["D"], 7);
        assert_eq!(v["result"]["straggler_patterns_tested"], 9);
        assert_eq!(v["manifest"]["output_digest"].as_str().unwrap().len(), 64);
    }

    #[test]
    fn table_outputs() {
        let (code, out, _) = run_str(&["tables", "ii"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l.starts_with("3,6,1,50,58,84,")));
        assert!(out.lines().any(|l| l.starts_with("2,5,1,20,26,32,17,14,false")));
        assert!(out.lines().last().unwrap().starts_with("# manifest"));
        let (_, out, _) = run_str(&["tables", "iii"]);
        assert!(out.lines().any(|l| l.starts_with("3,2,5,1,29,164,")));
        let (_, out, _) = run_str(&["figure2", "--m", "8", "--m-min", "8"]);
        let row = out.lines().nth(1).unwrap();
        let size: u64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!(size <= 14);
    }

    #[test]
    fn argument_splitting() {
        let args: Vec<String> = ["tables", "ii", "--mode", "best", "--verify"].iter().map(|s| s.to_string()).collect();
        let (cmd, params) = split_args(&args);
        assert_eq!(cmd, "tables ii");
        assert_eq!(params["mode"], "best");
        assert_eq!(params["verify"], "true");
    }
}
