//! `brownlab`: Brown numbers, van der Waerden numbers, witness colorings and
//! bound tables from the command line.
//!
//! Machine output is a single JSON document on stdout; summaries and errors
//! go to stderr. Exit codes: 0 affirmative, 1 negative but valid, 2 usage or
//! input error, 3 budget exhausted under `--require-exact`, 4 magnitude
//! overflow.

mod cache;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use brownlab_core::certificate::WitnessCertificate;
use brownlab_core::checker::{first_violation, has_large_homogeneous_bruteforce, ORACLE_CAP};
use brownlab_core::codec::{self, parse_rle_string, rle_string, Encoding};
use brownlab_core::constructions::{self, ladder::LadderStage};
use brownlab_core::search::{brown_number_enumerated, SearchOutcome, StopReason};
use brownlab_core::{vdw, Budget, Coloring, Error, FiniteSet, GrowthFn, OutcomeKind, SearchConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::cache::{brown_key, vdw_key, Cache};

#[derive(Parser)]
#[command(name = "brownlab", version, about = "Brown numbers, van der Waerden numbers and witness colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute or bracket B_f(r).
    Brown(BrownArgs),
    /// Compute or bracket W(r, l).
    Vdw(VdwArgs),
    /// Build, export or verify a stage of the witness ladder.
    Ladder(LadderArgs),
    /// Check a coloring file against a growth function.
    Check(CheckArgs),
    /// Upper-bound table for B_f(r).
    Bounds(BoundsArgs),
    /// Emit the diagonal coloring floor(x/d) mod 2.
    Diag(DiagArgs),
    /// Generate a block sequence from a coloring of block gaps.
    Psgen(PsgenArgs),
    /// Split a set into a bounded-gap part and a thick part.
    Decompose(DecomposeArgs),
    /// Find a monochromatic arithmetic progression in a coloring file.
    Ap(ApArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Longest coloring the search builds.
    #[arg(long, default_value_t = 256)]
    max_n: usize,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Prefix depth at which work is split between threads.
    #[arg(long, default_value_t = 8)]
    split_depth: usize,
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    max_time: Option<f64>,
    /// Explore all relabelings of the colors.
    #[arg(long)]
    no_canonical: bool,
    /// Exit with status 3 unless the value is determined exactly.
    #[arg(long)]
    require_exact: bool,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct CacheArgs {
    /// Cache directory (default: $BROWNLAB_CACHE, then the user cache dir).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn open(&self) -> Option<Cache> {
        if self.no_cache {
            None
        } else {
            Cache::resolve(self.cache_dir.as_deref())
        }
    }
}

#[derive(Args)]
struct BrownArgs {
    /// Growth function: id, linear:<m>, exp2, table:<v0>,<v1>,...[;tail=const|linear], closure:<spec>.
    #[arg(long = "f")]
    f: String,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
    /// Cross-check an exact value by enumerating all colorings.
    #[arg(long)]
    oracle: bool,
    /// Write the witness certificate to this file.
    #[arg(long)]
    certificate_out: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct VdwArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    l: u64,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Plain,
    Rle,
}

impl From<EncodingArg> for Encoding {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Plain => Encoding::Plain,
            EncodingArg::Rle => Encoding::Rle,
        }
    }
}

#[derive(Args)]
struct LadderArgs {
    #[arg(long)]
    s: u32,
    /// Check class sizes, the star condition and the span identity.
    #[arg(long)]
    verify: bool,
    /// Write the coloring to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// File encoding (default: plain below 10^4 positions, rle above).
    #[arg(long, value_enum)]
    encoding: Option<EncodingArg>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long = "f")]
    f: String,
    #[arg(long)]
    certificate_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long = "f", conflicts_with = "m", required_unless_present = "m")]
    f: Option<String>,
    /// Slope of f(d) = m d.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct DiagArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    encoding: Option<EncodingArg>,
}

#[derive(Args)]
struct PsgenArgs {
    /// Coloring file giving the gap C(n) of block n.
    #[arg(long, conflicts_with = "values", required_unless_present = "values")]
    input: Option<PathBuf>,
    /// Comma-separated gaps C(0), C(1), ... (palette is max + 1).
    #[arg(long)]
    values: Option<String>,
    #[arg(long)]
    blocks: usize,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Comma-separated elements of X.
    #[arg(long)]
    x: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    #[arg(long)]
    horizon: u64,
}

#[derive(Args)]
struct ApArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    l: u64,
}

/// A finished command: JSON for stdout, a summary for stderr, an exit code.
struct Report {
    json: Value,
    summary: String,
    code: u8,
}

struct Failure {
    code: u8,
    message: String,
    detail: Value,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            detail: Value::Null,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MagnitudeOverflow(_) => 4,
            _ => 2,
        };
        let detail = match &e {
            Error::Parse { line, column, .. } => json!({ "line": line, "column": column }),
            _ => Value::Null,
        };
        Failure {
            code,
            message: e.to_string(),
            detail,
        }
    }
}

type CmdResult = Result<Report, Failure>;

fn parse_growth(s: &str) -> Result<GrowthFn, Failure> {
    s.parse::<GrowthFn>()
        .map_err(|e| Failure::usage(format!("--f {s:?}: {e}")))
}

fn read_coloring(path: &Path) -> Result<Coloring, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let (c, _) = codec::decode(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })?;
    Ok(c)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn parse_list(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Failure::usage(format!("not a natural number: {t:?}")))
        })
        .collect()
}

/// Decimal below 10^6, scientific notation above.
fn human(v: &BigUint) -> String {
    let s = v.to_string();
    if s.len() <= 7 {
        return s;
    }
    format!("{}.{}e{}", &s[..1], &s[1..4], s.len() - 1)
}

fn search_config(a: &SearchArgs) -> Result<SearchConfig, Failure> {
    let max_time = match a.max_time {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            return Err(Failure::usage("--max-time must be a nonnegative number of seconds"))
        }
        Some(t) => Some(Duration::from_secs_f64(t)),
        None => None,
    };
    Ok(SearchConfig {
        n_cap: a.max_n,
        budget: Budget {
            max_nodes: a.max_nodes,
            max_time,
        },
        canonicalize: !a.no_canonical,
        jobs: a.jobs as usize,
        split_depth: a.split_depth,
    })
}

fn stop_str(stop: Option<StopReason>) -> Value {
    stop.map_or(Value::Null, |s| json!(s.as_str()))
}

fn kind_fields(out: &SearchOutcome, obj: &mut serde_json::Map<String, Value>) {
    match &out.kind {
        OutcomeKind::Exact { value } => {
            obj.insert("kind".into(), json!("exact"));
            obj.insert("value".into(), json!(value));
        }
        OutcomeKind::Bracketed { lower, upper } => {
            obj.insert("kind".into(), json!("bracketed"));
            obj.insert("lower".into(), json!(lower));
            obj.insert(
                "upper".into(),
                upper.as_ref().map_or(Value::Null, |u| json!(u.to_string())),
            );
        }
    }
}

fn brown_result(growth: &str, r: u32, out: &SearchOutcome) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("command".into(), json!("brown"));
    obj.insert("growth".into(), json!(growth));
    obj.insert("r".into(), json!(r));
    kind_fields(out, &mut obj);
    obj.insert("witness_length".into(), json!(out.witness.len()));
    obj.insert(
        "certificate".into(),
        serde_json::to_value(out.certificate.as_ref().expect("brown outcomes carry certificates"))
            .expect("certificate serializes"),
    );
    obj.insert("nodes_explored".into(), json!(out.nodes_explored));
    obj.insert("stop_reason".into(), stop_str(out.stop));
    obj.insert("closure_applied".into(), json!(out.closure_applied));
    Value::Object(obj)
}

/// A cached exact Brown result, re-validated from its certificate.
fn cached_brown(cache: &Cache, key: &str, f: &GrowthFn, r: u32, max_n: usize) -> Option<Value> {
    let v = cache.get(key)?;
    let value = v.get("value")?.as_u64()?;
    if v.get("kind")?.as_str()? != "exact" || value == 0 || value - 1 > max_n as u64 {
        return None;
    }
    let cert: WitnessCertificate = serde_json::from_value(v.get("certificate")?.clone()).ok()?;
    cert.validate().ok()?;
    let effective = if f.is_nondecreasing() {
        f.clone()
    } else {
        f.monotone_closure()
    };
    let ok = cert.palette == r && cert.length == value - 1 && cert.growth == effective.to_string();
    ok.then_some(v)
}

fn cmd_brown(a: BrownArgs) -> CmdResult {
    let f = parse_growth(&a.f)?;
    let growth = f.to_string();
    let cfg = search_config(&a.search)?;
    let cache = a.search.cache.open();
    let key = brown_key(&growth, a.r);
    let mut hit = false;
    let mut result = match cache.as_ref().and_then(|c| cached_brown(c, &key, &f, a.r, cfg.n_cap)) {
        Some(v) => {
            hit = true;
            v
        }
        None => {
            let out = brownlab_core::brown_number(&f, a.r, &cfg)?;
            let v = brown_result(&growth, a.r, &out);
            if let (Some(c), Some(_)) = (&cache, out.exact_value()) {
                if let Err(e) = c.put(&key, &v) {
                    eprintln!("warning: cannot write cache entry: {e}");
                }
            }
            eprintln!(
                "searched {} nodes in {:.3}s",
                out.nodes_explored,
                out.wall_time.as_secs_f64()
            );
            v
        }
    };
    let exact = result.get("value").and_then(Value::as_u64);
    let mut code = 0;
    if a.oracle {
        let oracle = match exact {
            None => json!({ "status": "skipped", "reason": "no exact value to check" }),
            Some(v) if v as usize > ORACLE_CAP || (a.r as f64).powi(v as i32) > (1u64 << 24) as f64 => {
                json!({ "status": "skipped", "reason": "value too large for exhaustive enumeration" })
            }
            Some(v) => {
                let effective = if f.is_nondecreasing() {
                    f.clone()
                } else {
                    f.monotone_closure()
                };
                let o = brown_number_enumerated(&effective, a.r, v as usize)?;
                let agrees = o == Some(v);
                if !agrees {
                    code = 1;
                }
                json!({ "status": if agrees { "agrees" } else { "disagrees" }, "value": o })
            }
        };
        result["oracle"] = oracle;
    }
    if let Some(path) = &a.certificate_out {
        let cert: WitnessCertificate = serde_json::from_value(result["certificate"].clone())
            .expect("result carries a certificate");
        write_file(path, &cert.to_json())?;
        result["certificate_path"] = json!(path.display().to_string());
    }
    result["cache_hit"] = json!(hit);
    let summary = match exact {
        Some(v) => format!("B_{growth}({}) = {v}", a.r),
        None => {
            if a.search.require_exact {
                code = 3;
            }
            format!(
                "B_{growth}({}) in [{}, {}]",
                a.r,
                result["lower"],
                result["upper"].as_str().unwrap_or("unknown")
            )
        }
    };
    if result["oracle"]["status"] == "disagrees" {
        eprintln!("error: exhaustive enumeration disagrees with the search");
    }
    Ok(Report {
        json: result,
        summary,
        code,
    })
}

fn vdw_result(r: u32, l: usize, out: &SearchOutcome) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("command".into(), json!("vdw"));
    obj.insert("r".into(), json!(r));
    obj.insert("l".into(), json!(l));
    kind_fields(out, &mut obj);
    obj.insert("witness_length".into(), json!(out.witness.len()));
    obj.insert("witness_rle".into(), json!(rle_string(out.witness.values())));
    obj.insert("nodes_explored".into(), json!(out.nodes_explored));
    obj.insert("stop_reason".into(), stop_str(out.stop));
    Value::Object(obj)
}

fn cached_vdw(cache: &Cache, key: &str, r: u32, l: usize, max_n: usize) -> Option<Value> {
    let v = cache.get(key)?;
    let value = v.get("value")?.as_u64()?;
    if v.get("kind")?.as_str()? != "exact" || value == 0 || value - 1 > max_n as u64 {
        return None;
    }
    let values = parse_rle_string(v.get("witness_rle")?.as_str()?).ok()?;
    let c = Coloring::new(r, values).ok()?;
    let ok = c.len() as u64 == value - 1 && vdw::ap_partition_check(&c, l).ok()?.is_none();
    ok.then_some(v)
}

fn cmd_vdw(a: VdwArgs) -> CmdResult {
    let l = usize::try_from(a.l).map_err(|_| Failure::usage("--l is too large"))?;
    let cfg = search_config(&a.search)?;
    let cache = a.search.cache.open();
    let key = vdw_key(a.r, l);
    let mut hit = false;
    let mut result = match cache.as_ref().and_then(|c| cached_vdw(c, &key, a.r, l, cfg.n_cap)) {
        Some(v) => {
            hit = true;
            v
        }
        None => {
            let out = brownlab_core::vdw_number(a.r, l, &cfg)?;
            let v = vdw_result(a.r, l, &out);
            if let (Some(c), Some(_)) = (&cache, out.exact_value()) {
                if let Err(e) = c.put(&key, &v) {
                    eprintln!("warning: cannot write cache entry: {e}");
                }
            }
            v
        }
    };
    result["cache_hit"] = json!(hit);
    let mut code = 0;
    let summary = match result.get("value").and_then(Value::as_u64) {
        Some(v) => format!("W({}, {l}) = {v}", a.r),
        None => {
            if a.search.require_exact {
                code = 3;
            }
            format!("W({}, {l}) >= {}", a.r, result["lower"])
        }
    };
    Ok(Report {
        json: result,
        summary,
        code,
    })
}

fn stage_json(st: &LadderStage) -> Value {
    let bits = st.length.bits();
    json!({
        "command": "ladder",
        "s": st.s,
        "palette": st.palette(),
        "length": if bits <= 1 << 16 { json!(st.length.to_string()) } else { Value::Null },
        "length_bits": bits,
        "materialized": st.is_materialized(),
    })
}

fn cmd_ladder(a: LadderArgs) -> CmdResult {
    let st = constructions::ladder(a.s)?;
    let mut out = stage_json(&st);
    let mut code = 0;
    let mut summary = format!("stage {}: n_{} has {} bits", a.s, a.s, st.length.bits());
    if a.verify || a.out.is_some() {
        let Some(coloring) = &st.coloring else {
            return Err(Error::MagnitudeOverflow(format!(
                "stage {} has {} bits of length and is not materialized; export and verification need s <= {}",
                a.s,
                st.length.bits(),
                constructions::ladder::MATERIALIZE_CAP
            ))
            .into());
        };
        if let Some(path) = &a.out {
            let enc = a.encoding.map_or(Encoding::default_for(coloring.len()), Encoding::from);
            write_file(path, &codec::encode(coloring, enc))?;
            out["out"] = json!(path.display().to_string());
            out["encoding"] = json!(enc.as_str());
        }
        if a.verify {
            let rep = constructions::ladder_verify(a.s)?;
            let ok = rep.all_hold();
            out["verified"] = json!(ok);
            out["classes"] = serde_json::to_value(&rep.classes).expect("report serializes");
            summary = if ok {
                format!("stage {}: all claims hold for {} colors", a.s, rep.classes.len())
            } else {
                code = 1;
                let mut s = format!("stage {}: claims fail", a.s);
                for c in rep.classes.iter().filter(|c| !c.holds()) {
                    let _ = write!(s, "; color {}: {}", c.color, c.failures().join(", "));
                }
                s
            };
        }
    }
    Ok(Report {
        json: out,
        summary,
        code,
    })
}

fn cmd_check(a: CheckArgs) -> CmdResult {
    let f = parse_growth(&a.f)?;
    let c = read_coloring(&a.input)?;
    let growth = f.to_string();
    if !f.is_nondecreasing() {
        if c.len() > ORACLE_CAP {
            return Err(Failure::usage(format!(
                "{growth} is not nondecreasing; only colorings of length <= {ORACLE_CAP} can be checked by enumeration"
            )));
        }
        return Ok(match has_large_homogeneous_bruteforce(&c, &f)? {
            None => Report {
                json: json!({ "command": "check", "growth": growth, "witness": true, "method": "enumeration" }),
                summary: "no large homogeneous set".into(),
                code: 0,
            },
            Some((color, h)) => Report {
                json: json!({
                    "command": "check", "growth": growth, "witness": false, "method": "enumeration",
                    "violation": { "color": color, "elements": h },
                }),
                summary: format!("color {color} has a large homogeneous set"),
                code: 1,
            },
        });
    }
    match brownlab_core::is_witness(&c, &f)? {
        Some(cert) => {
            let mut out = json!({
                "command": "check",
                "growth": growth,
                "witness": true,
                "certificate": cert,
            });
            if let Some(path) = &a.certificate_out {
                write_file(path, &cert.to_json())?;
                out["certificate_path"] = json!(path.display().to_string());
            }
            Ok(Report {
                json: out,
                summary: format!("witness: B_{growth}({}) > {}", c.palette(), c.len()),
                code: 0,
            })
        }
        None => {
            let v = first_violation(&c, &f)?.expect("a non-witness has a violation");
            let summary = format!(
                "color {} has a window of {} elements with gap size {} > f = {}",
                v.color.unwrap_or(0),
                v.window.len,
                v.window.gap_size,
                v.bound
            );
            Ok(Report {
                json: json!({ "command": "check", "growth": growth, "witness": false, "violation": v }),
                summary,
                code: 1,
            })
        }
    }
}

fn bound_cell(r: Result<BigUint, Error>) -> Result<Value, Failure> {
    match r {
        Ok(v) => Ok(json!(v.to_string())),
        Err(Error::MagnitudeOverflow(_)) => Ok(json!("overflow")),
        Err(e) => Err(e.into()),
    }
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    let f = match (&a.f, a.m) {
        (Some(s), _) => parse_growth(s)?,
        (None, Some(m)) => GrowthFn::linear(m)?,
        (None, None) => return Err(Failure::usage("one of --f or --m is required")),
    };
    let growth = f.to_string();
    let cache = a.cache.open();
    let mut rows = Vec::new();
    let mut closure_applied = false;
    for r in 1..=a.r_max {
        let ardal = match f.linear_slope() {
            Some(m) => bound_cell(constructions::ardal_bound(m, r as u64))?,
            None => Value::Null,
        };
        let recursion = match constructions::upper_bound_seq(&f, r) {
            Ok(u) => {
                closure_applied |= u.closure_applied;
                json!(u.value.to_string())
            }
            Err(Error::MagnitudeOverflow(_)) => json!("overflow"),
            Err(e) => return Err(e.into()),
        };
        let cached = cache
            .as_ref()
            .and_then(|c| cached_brown(c, &brown_key(&growth, r), &f, r, usize::MAX))
            .and_then(|v| v.get("value").cloned())
            .unwrap_or(Value::Null);
        rows.push(json!({ "r": r, "ardal": ardal, "recursion": recursion, "cached_exact": cached }));
    }
    let mut summary = format!("bounds for {growth}");
    for row in &rows {
        let cell = |v: &Value| match v.as_str() {
            Some(s) => s.parse::<BigUint>().map_or(s.to_string(), |b| human(&b)),
            None => "-".to_string(),
        };
        let _ = write!(
            summary,
            "\n  r={}: ardal {}, recursion {}, exact {}",
            row["r"],
            cell(&row["ardal"]),
            cell(&row["recursion"]),
            row["cached_exact"].as_u64().map_or("-".into(), |v| v.to_string())
        );
    }
    let json = json!({
        "command": "bounds",
        "growth": growth,
        "closure_applied": closure_applied,
        "rows": rows,
    });
    Ok(Report {
        json: if a.format == Format::Csv {
            Value::String(bounds_csv(&rows))
        } else {
            json
        },
        summary,
        code: 0,
    })
}

fn bounds_csv(rows: &[Value]) -> String {
    let cell = |v: &Value| match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let mut out = String::from("r,ardal,recursion,cached_exact\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row["r"],
            cell(&row["ardal"]),
            cell(&row["recursion"]),
            cell(&row["cached_exact"])
        );
    }
    out
}

fn cmd_diag(a: DiagArgs) -> CmdResult {
    let c = constructions::diag_prefix(a.d, a.n)?;
    let bound = match constructions::diag_bound_check(a.d, a.n) {
        Ok(b) => json!(b),
        Err(Error::InsufficientPrefix(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let mut out = json!({ "command": "diag", "d": a.d, "n": a.n, "max_bounded_homogeneous": bound });
    if let Some(path) = &a.out {
        let enc = a.encoding.map_or(Encoding::default_for(c.len()), Encoding::from);
        write_file(path, &codec::encode(&c, enc))?;
        out["out"] = json!(path.display().to_string());
    } else {
        out["coloring_rle"] = json!(rle_string(c.values()));
    }
    Ok(Report {
        summary: format!("D({}, .) on {} positions; largest set with gaps <= d: {bound}", a.d, a.n),
        json: out,
        code: 0,
    })
}

fn cmd_psgen(a: PsgenArgs) -> CmdResult {
    let c = match (&a.input, &a.values) {
        (Some(p), _) => read_coloring(p)?,
        (None, Some(v)) => {
            let vals = parse_list(v)?
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| Failure::usage(format!("value {x} is too large"))))
                .collect::<Result<Vec<u32>, _>>()?;
            let palette = vals.iter().max().map_or(1, |m| m + 1);
            Coloring::new(palette, vals)?
        }
        (None, None) => return Err(Failure::usage("one of --input or --values is required")),
    };
    let seq = constructions::ps_generate(&c, a.blocks)?;
    let r = c.palette() as u64;
    let bound_ok = seq
        .elements
        .iter()
        .enumerate()
        .all(|(k, &x)| (x as u128) <= r as u128 * k as u128 * (k as u128 + 1) / 2);
    let blocks: Vec<Value> = (1..=a.blocks)
        .map(|n| json!({ "n": n, "elements": seq.block(n).unwrap() }))
        .collect();
    Ok(Report {
        summary: format!("{} blocks, {} elements", a.blocks, seq.elements.len()),
        json: json!({
            "command": "psgen",
            "elements": seq.elements,
            "blocks": blocks,
            "growth_bound_holds": bound_ok,
        }),
        code: if bound_ok { 0 } else { 1 },
    })
}

fn cmd_decompose(a: DecomposeArgs) -> CmdResult {
    let x = FiniteSet::from_unsorted(parse_list(&a.x)?);
    let dec = constructions::decompose_ps(&x, a.d, a.horizon)?;
    Ok(Report {
        summary: format!(
            "|Y| = {}, |Z| = {}, gs(Y) = {}, longest interval in Z = {}",
            dec.y.len(),
            dec.z.len(),
            dec.y_gap_size,
            dec.z_longest_interval
        ),
        code: if dec.identity_holds { 0 } else { 1 },
        json: json!({
            "command": "decompose",
            "d": a.d,
            "horizon": a.horizon,
            "y": dec.y,
            "z": dec.z,
            "identity_holds": dec.identity_holds,
            "y_gap_size": dec.y_gap_size,
            "z_longest_interval": dec.z_longest_interval,
        }),
    })
}

fn cmd_ap(a: ApArgs) -> CmdResult {
    let l = usize::try_from(a.l).map_err(|_| Failure::usage("--l is too large"))?;
    let c = read_coloring(&a.input)?;
    let found = vdw::ap_partition_check(&c, l)?;
    let report = vdw::ap_report(&c);
    Ok(match found {
        Some(w) => Report {
            summary: format!(
                "color {}: {}-term progression from {} with difference {}",
                w.color, l, w.ap.start, w.ap.diff
            ),
            json: json!({
                "command": "ap", "l": l, "found": true, "witness": w,
                "elements": w.ap.to_set(), "longest": report.classes,
            }),
            code: 0,
        },
        None => Report {
            summary: format!("no monochromatic {l}-term progression"),
            json: json!({ "command": "ap", "l": l, "found": false, "longest": report.classes }),
            code: 1,
        },
    })
}

/// Writes to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Brown(a) => cmd_brown(a),
        Command::Vdw(a) => cmd_vdw(a),
        Command::Ladder(a) => cmd_ladder(a),
        Command::Check(a) => cmd_check(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Diag(a) => cmd_diag(a),
        Command::Psgen(a) => cmd_psgen(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Ap(a) => cmd_ap(a),
    };
    match result {
        Ok(rep) => {
            let text = match &rep.json {
                Value::String(s) => s.clone(),
                v => format!("{}\n", serde_json::to_string_pretty(v).expect("json serializes")),
            };
            emit(&text);
            eprintln!("{}", rep.summary);
            ExitCode::from(rep.code)
        }
        Err(f) => {
            let mut err = json!({ "error": f.message, "exit_code": f.code });
            if let Value::Object(extra) = f.detail {
                for (k, v) in extra {
                    err[k] = v;
                }
            }
            emit(&format!("{}\n", serde_json::to_string_pretty(&err).expect("json serializes")));
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
