//! `shadowlab`: constructions, shadow analysis, closed-form bounds and
//! exhaustive or sampled statement checks for t-intersecting families.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 counterexample (or a
//! demonstration that found nothing), 3 capacity exceeded.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use shadowlab::bounds;
use shadowlab::canonical::{example15, frankl_family, full_star, hm_family};
use shadowlab::structure::{base_decomposition, semistar_center, star_center, width};
use shadowlab::verify::{
    check_theorem, min_shadow_table, scan_example15, CheckParams, TheoremId, TheoremReport,
};
use shadowlab::{
    enumerate_ksubsets, is_pseudo_t_intersecting, is_shifted, is_t_intersecting, parse_family,
    shadow_j, Error, ExactRatio, Family, KSet,
};

use output::{approx, family_value, key_values, ratio, set_value, Report, Row};

#[derive(Parser)]
#[command(name = "shadowlab", version, about = "Shadows of t-intersecting set families")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also show approximate decimal values (marked as approximate).
    #[arg(long, global = true)]
    decimal: bool,
    /// Print elapsed wall-clock time to stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List a named family, one set per line.
    Family(FamilyArgs),
    /// Shadow and structure report for a family file or a named family.
    Analyze(AnalyzeArgs),
    /// Evaluate a closed-form bound exactly.
    Bounds(BoundsArgs),
    /// Check a statement over every t-intersecting family (small n) or generated ones.
    Verify(VerifyArgs),
    /// Minimum shadow for each family size over all t-intersecting families.
    Oracle(OracleArgs),
    /// Shadow ratios of the two-part family over ranges of s and n.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    /// `A_h(n, k, t)`; needs `--h`.
    FranklH,
    /// All k-sets containing `[t]`.
    Star,
    /// The extremal non-star family.
    Hm,
    /// The two-part family; needs `--s`.
    Example15,
    /// All k-subsets of `[n]`.
    Layer,
}

#[derive(Args, Clone, Default)]
struct Spec {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Level of `A_h`.
    #[arg(long)]
    h: Option<usize>,
    /// Parameter of the two-part family.
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[command(flatten)]
    spec: Spec,
    /// Report whether the family is t-intersecting and shifted.
    #[arg(long)]
    check: bool,
    /// Report the width (pseudo t-intersecting families only).
    #[arg(long)]
    width: bool,
    /// Report the base level counts.
    #[arg(long)]
    base: bool,
    /// Report star and semistar centres.
    #[arg(long)]
    semistar: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Family file (one set per line); `-` reads stdin.
    file: Option<PathBuf>,
    /// Analyze a named family instead of a file.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[command(flatten)]
    spec: Spec,
    /// Shadow depth.
    #[arg(long, default_value_t = 1)]
    j: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundName {
    /// Sharpened ratio (k, t, j).
    Thm14,
    /// Size threshold of the sharpened ratio (k, t, j).
    Thm14Threshold,
    /// `C(2k-t, l)/C(2k-t, k)` (k, t, l).
    Katona,
    /// `C(n, k-j)/C(n, k)` (n, k, j).
    Sperner,
    /// Restricted shadow ratio at width w (t, w, j).
    Thm210,
    /// `c(w, t, j)` (w, t, j).
    Gamma,
    /// Full-width inner gap (k, t, j).
    Alpha3,
    /// Full-width outer gap (k, t, j).
    Beta3,
    /// Inner gap at width w (w, k, t, j).
    Alpha7,
    /// Outer gap at width w (w, t, j).
    Beta7,
    /// Semistar ratio (t, j).
    Semistar,
    /// `C(t, j)` (t, j).
    Star,
    /// Universal size bound (n, k, t).
    Universal,
    /// Size threshold for the strict star ratio (n, k, t).
    Cor68,
    /// Finite size threshold of the general width bound (n, k, t, w, j).
    Thm73,
    /// Predicted relative excess of the two-part family (k, t, j, s).
    Excess,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(value_enum)]
    name: BoundName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Statement id, e.g. thm1.3; see `--list`.
    #[arg(required_unless_present = "list")]
    theorem: Option<String>,
    /// List statement ids and exit.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Shadow depth; all valid depths when omitted.
    #[arg(long)]
    j: Option<usize>,
    /// Target set size of the ℓ-shadow.
    #[arg(long)]
    l: Option<usize>,
    /// Width parameter.
    #[arg(long)]
    w: Option<usize>,
    /// Generated families when the exhaustive oracle is out of reach.
    #[arg(long, default_value_t = CheckParams::DEFAULT_SAMPLES)]
    samples: usize,
    /// First seed; defaults to SHADOWLAB_SEED or 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Replace the bound of the maximum-size checks.
    #[arg(long)]
    claimed: Option<usize>,
    /// Range of s for the two-part family scan, `a..b` inclusive.
    #[arg(long, value_parser = parse_range)]
    s_range: Option<(usize, usize)>,
    /// Range of n for the two-part family scan, `a..b` inclusive.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(usize, usize)>,
    /// Allow parameters outside the stated range; never fails.
    #[arg(long)]
    explore: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    j: usize,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    j: usize,
    /// `a..b` inclusive; defaults to every admissible s.
    #[arg(long, value_parser = parse_range)]
    s_range: Option<(usize, usize)>,
    /// `a..b` inclusive; defaults to `2k-t+1..5k`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(usize, usize)>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad range `{s}`"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Capacity { .. }) => 3,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn need(v: Option<usize>, name: &str) -> CliResult<usize> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required here")))
}

struct Ctx {
    decimal: bool,
}

fn build(kind: Kind, spec: &Spec) -> CliResult<Family> {
    let n = need(spec.n, "n")?;
    let k = need(spec.k, "k")?;
    Ok(match kind {
        Kind::Layer => enumerate_ksubsets(n, k)?,
        Kind::FranklH => frankl_family(n, k, need(spec.t, "t")?, need(spec.h, "h")?)?,
        Kind::Star => full_star(n, k, need(spec.t, "t")?)?,
        Kind::Hm => hm_family(n, k, need(spec.t, "t")?)?,
        Kind::Example15 => example15(n, k, need(spec.t, "t")?, need(spec.s, "s")?)?,
    })
}

fn kind_name(kind: Kind) -> String {
    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn spec_params(spec: &Spec) -> Row {
    let mut p = Row::new();
    for (name, v) in [("n", spec.n), ("k", spec.k), ("t", spec.t), ("h", spec.h), ("s", spec.s)] {
        if let Some(v) = v {
            p.insert(name.into(), json!(v));
        }
    }
    p
}

fn base_counts(f: &Family, t: usize) -> CliResult<String> {
    if f.is_empty() || 2 * f.k() < t {
        return Ok("none".into());
    }
    let base = base_decomposition(f, t)?;
    Ok(base
        .counts
        .iter()
        .map(|(l, c)| format!("b_{l}={c}"))
        .collect::<Vec<_>>()
        .join(" "))
}

fn center(c: Option<KSet>) -> String {
    c.map_or_else(|| "none".into(), |s| format!("{s:?}"))
}

fn width_text(f: &Family, t: usize) -> CliResult<String> {
    Ok(if is_pseudo_t_intersecting(f, t) {
        width(f, t)?.to_string()
    } else {
        "none (not pseudo t-intersecting)".into()
    })
}

fn cmd_family(a: &FamilyArgs) -> CliResult<Report> {
    let f = build(a.kind, &a.spec)?;
    let mut params = Row::new();
    params.insert("kind".into(), json!(kind_name(a.kind)));
    params.extend(spec_params(&a.spec));
    let mut diag: Vec<(String, String)> = Vec::new();
    if a.check || a.width || a.base || a.semistar {
        diag.push(("size".into(), f.len().to_string()));
        let t = need(a.spec.t, "t")?;
        if a.check {
            diag.push(("t-intersecting".into(), is_t_intersecting(&f, t).to_string()));
            diag.push(("shifted".into(), is_shifted(&f).to_string()));
        }
        if a.width {
            diag.push(("width".into(), width_text(&f, t)?));
        }
        if a.base {
            diag.push(("base".into(), base_counts(&f, t)?));
        }
        if a.semistar {
            diag.push(("star".into(), center(star_center(&f, t))));
            diag.push(("semistar".into(), center(semistar_center(&f, t))));
        }
    }
    let mut text = shadowlab::format_family(&f);
    for (k, v) in &diag {
        text.push_str(&format!("# {k}: {v}\n"));
    }
    let mut meta = Row::new();
    meta.insert("size".into(), json!(f.len()));
    for (k, v) in &diag {
        meta.insert(k.clone(), json!(v));
    }
    Ok(Report {
        params,
        results: f.iter().map(|&m| row([("set", set_value(m))])).collect(),
        meta,
        text,
    })
}

fn row<const N: usize>(pairs: [(&str, Value); N]) -> Row {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

fn cmd_analyze(a: &AnalyzeArgs, ctx: &Ctx) -> CliResult<Report> {
    let t = need(a.spec.t, "t")?;
    let (f, source) = match (&a.file, a.kind) {
        (Some(path), None) => (parse_family(&read_input(path)?)?, path.display().to_string()),
        (None, Some(kind)) => (build(kind, &a.spec)?, kind_name(kind)),
        _ => return Err(CliError::Usage("give either a file or --kind".into())),
    };
    let j = a.j;
    let mut fields: Vec<(String, Value)> = vec![
        ("source".into(), json!(source)),
        ("size".into(), json!(f.len())),
        ("k".into(), json!(f.k())),
        ("t".into(), json!(t)),
        ("j".into(), json!(j)),
    ];
    if f.is_empty() {
        fields.push(("shadow".into(), json!(0)));
        fields.push(("ratio".into(), Value::Null));
    } else {
        let shadow = shadow_j(&f, j)?.len();
        let r = ExactRatio::of(shadow as u64, f.len() as u64);
        fields.push(("shadow".into(), json!(shadow)));
        fields.push(("ratio".into(), ratio(&r)));
        if ctx.decimal {
            fields.push(("ratio_approx".into(), json!(approx(&r))));
        }
    }
    let pseudo = is_pseudo_t_intersecting(&f, t);
    fields.extend([
        ("shifted".into(), json!(is_shifted(&f))),
        ("t_intersecting".into(), json!(is_t_intersecting(&f, t))),
        ("pseudo_t_intersecting".into(), json!(pseudo)),
        ("width".into(), if pseudo { json!(width(&f, t)?) } else { Value::Null }),
        ("base".into(), json!(base_counts(&f, t)?)),
        ("star".into(), json!(center(star_center(&f, t)))),
        ("semistar".into(), json!(center(semistar_center(&f, t)))),
    ]);
    let text = key_values(
        &fields
            .iter()
            .map(|(k, v)| {
                let shown = match v {
                    Value::Null => "none".to_string(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let key = if k == "ratio_approx" { "ratio (approx)".to_string() } else { k.replace('_', " ") };
                (key, shown)
            })
            .collect::<Vec<_>>(),
    );
    let mut params = Row::new();
    params.insert("source".into(), json!(source));
    params.insert("t".into(), json!(t));
    params.insert("j".into(), json!(j));
    Ok(Report {
        params,
        results: vec![fields.into_iter().collect()],
        meta: Row::new(),
        text,
    })
}

fn cmd_bounds(a: &BoundsArgs, ctx: &Ctx) -> CliResult<Report> {
    use BoundName::*;
    let n = || need(a.n, "n");
    let k = || need(a.k, "k");
    let t = || need(a.t, "t");
    let j = || need(a.j, "j");
    let w = || need(a.w, "w");
    let value: ExactRatio = match a.name {
        Thm14 => bounds::sharpened_ratio(k()?, t()?, j()?)?,
        Thm14Threshold => bounds::sharpened_threshold(k()?, t()?, j()?)?,
        Katona => bounds::katona_ratio(k()?, t()?, need(a.l, "l")?)?,
        Sperner => bounds::sperner_ratio(n()?, k()?, j()?)?,
        Thm210 => bounds::width_ratio(t()?, w()?, j()?)?,
        Gamma => bounds::width_coefficient(w()?, t()?, j()?)?,
        Alpha3 => bounds::inner_gap(k()?, t()?, j()?)?,
        Beta3 => bounds::outer_gap(k()?, t()?, j()?)?,
        Alpha7 => bounds::width_inner_gap(w()?, k()?, t()?, j()?)?,
        Beta7 => bounds::width_outer_gap(w()?, t()?, j()?)?,
        Semistar => bounds::semistar_bound(t()?, j()?)?,
        Star => bounds::star_bound(t()?, j()?)?,
        Universal => bounds::universal_bound(n()?, k()?, t()?)?.into(),
        Cor68 => bounds::star_shadow_threshold(n()?, k()?, t()?)?.into(),
        Thm73 => bounds::general_threshold(n()?, k()?, t()?, w()?, j()?)?,
        Excess => bounds::excess_fraction(k()?, t()?, j()?, need(a.s, "s")?)?,
    };
    let name = a.name.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut params = Row::new();
    for (key, v) in [("n", a.n), ("k", a.k), ("t", a.t), ("j", a.j), ("l", a.l), ("w", a.w), ("s", a.s)] {
        if let Some(v) = v {
            params.insert(key.into(), json!(v));
        }
    }
    let mut result = row([("name", json!(name)), ("value", ratio(&value))]);
    let mut text = value.to_string();
    if ctx.decimal {
        result.insert("value_approx".into(), json!(approx(&value)));
        text.push_str(&format!("  (approx {})", approx(&value)));
    }
    text.push('\n');
    Ok(Report {
        params,
        results: vec![result],
        meta: Row::new(),
        text,
    })
}

fn default_seed() -> u64 {
    std::env::var("SHADOWLAB_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

fn list_theorems() -> Report {
    let results = TheoremId::ALL
        .iter()
        .map(|id| row([("id", json!(id.id())), ("statement", json!(id.summary()))]))
        .collect();
    let text = TheoremId::ALL
        .iter()
        .map(|id| format!("{:<10} {}\n", id.id(), id.summary()))
        .collect();
    Report {
        params: Row::new(),
        results,
        meta: Row::new(),
        text,
    }
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<(Report, u8)> {
    if a.list {
        return Ok((list_theorems(), 0));
    }
    let id: TheoremId = a.theorem.as_deref().unwrap_or_default().parse()?;
    let mut p = CheckParams::new(need(a.n, "n")?, need(a.k, "k")?, need(a.t, "t")?)
        .with_samples(a.samples)
        .with_seed(a.seed.unwrap_or_else(default_seed));
    p.j = a.j;
    p.ell = a.l;
    p.w = a.w;
    p.claimed = a.claimed;
    p.explore = a.explore;
    p.s_range = a.s_range;
    p.n_range = a.n_range;
    let report = check_theorem(id, &p)?;
    let code = if report.passed() || a.explore { 0 } else { 2 };
    Ok((render_check(&report), code))
}

fn render_check(r: &TheoremReport) -> Report {
    let p = &r.params;
    let mut params = Row::new();
    params.insert("theorem".into(), json!(r.id.id()));
    for (k, v) in [("n", Some(p.n)), ("k", Some(p.k)), ("t", Some(p.t)), ("j", p.j), ("l", p.ell), ("w", p.w)] {
        if let Some(v) = v {
            params.insert(k.into(), json!(v));
        }
    }
    params.insert("samples".into(), json!(p.samples));
    params.insert("seed".into(), json!(p.seed));
    if let Some(c) = p.claimed {
        params.insert("claimed".into(), json!(c));
    }
    let source = if r.exhaustive { "exhaustive" } else { "generated" };
    let result = row([
        ("theorem", json!(r.id.id())),
        ("verdict", json!(r.verdict.name())),
        ("source", json!(source)),
        ("checked", json!(r.checked)),
        ("vacuous", json!(r.vacuous)),
        ("tight", json!(r.tight)),
        ("detail", json!(r.detail.clone().unwrap_or_default())),
    ]);
    let mut meta = Row::new();
    meta.insert("notes".into(), json!(r.notes));
    meta.insert("explore".into(), json!(p.explore));
    meta.insert(
        "witness".into(),
        r.witness.as_ref().map_or(Value::Null, family_value),
    );
    let mut pairs = vec![
        ("theorem".to_string(), r.id.id().to_string()),
        ("statement".into(), r.id.summary().into()),
        ("params".into(), p.to_string()),
        ("verdict".into(), r.verdict.name().into()),
        ("source".into(), source.into()),
        ("checked".into(), r.checked.to_string()),
        ("vacuous".into(), r.vacuous.to_string()),
        ("tight".into(), r.tight.to_string()),
    ];
    if let Some(d) = &r.detail {
        pairs.push(("detail".into(), d.clone()));
    }
    if p.explore {
        pairs.push(("mode".into(), "exploratory, no pass/fail meaning".into()));
    }
    let mut text = key_values(&pairs);
    for note in &r.notes {
        text.push_str(&format!("note: {note}\n"));
    }
    if let Some(w) = &r.witness {
        text.push_str(&format!("witness ({} sets):\n", w.len()));
        text.push_str(&shadowlab::format_family(w));
    }
    Report {
        params,
        results: vec![result],
        meta,
        text,
    }
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(headers.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn cmd_oracle(a: &OracleArgs, format: Format) -> CliResult<Report> {
    let table_data = min_shadow_table(a.n, a.k, a.t, a.j)?;
    let params = row([("n", json!(a.n)), ("k", json!(a.k)), ("t", json!(a.t)), ("j", json!(a.j))]);
    let results = table_data
        .rows
        .iter()
        .map(|(size, r)| {
            row([
                ("size", json!(size)),
                ("min_shadow", json!(r.min_shadow)),
                ("witness", family_value(&r.witness)),
            ])
        })
        .collect();
    let text = if format == Format::Csv {
        table_data.to_csv()
    } else {
        let rows: Vec<Vec<String>> = table_data
            .rows
            .iter()
            .map(|(size, r)| {
                let sets: Vec<String> = r.witness.iter().map(|m| format!("{m:?}")).collect();
                vec![size.to_string(), r.min_shadow.to_string(), sets.join(" ")]
            })
            .collect();
        table(&["size", "min_shadow", "witness"], &rows)
    };
    Ok(Report {
        params,
        results,
        meta: Row::new(),
        text,
    })
}

fn cmd_scan(a: &ScanArgs, ctx: &Ctx) -> CliResult<Report> {
    let s_range = a.s_range.unwrap_or((0, (a.k - a.t.min(a.k)).saturating_sub(2)));
    let n_range = a.n_range.unwrap_or(((2 * a.k).saturating_sub(a.t) + 1, 5 * a.k));
    let scan = scan_example15(a.k, a.t, a.j, s_range.0..=s_range.1, n_range.0..=n_range.1)?;
    let mut params = row([("k", json!(a.k)), ("t", json!(a.t)), ("j", json!(a.j))]);
    params.insert("s_range".into(), json!([s_range.0, s_range.1]));
    params.insert("n_range".into(), json!([n_range.0, n_range.1]));
    let mut results = Vec::new();
    let mut text_rows = Vec::new();
    for r in &scan.rows {
        let mut out = row([
            ("s", json!(r.s)),
            ("n", json!(r.n)),
            ("size", json!(r.size)),
            ("shadow", json!(r.shadow)),
            ("ratio", ratio(&r.ratio)),
            ("bound", ratio(&r.bound)),
            ("excess", ratio(&r.excess)),
            ("predicted_excess", ratio(&r.predicted_excess)),
            ("t_intersecting", json!(r.t_intersecting)),
            ("above_threshold", json!(r.above_threshold)),
            ("beats_bound", json!(r.beats_bound)),
        ]);
        let mut cells = vec![
            r.s.to_string(),
            r.n.to_string(),
            r.size.to_string(),
            r.shadow.to_string(),
            r.ratio.to_string(),
        ];
        if ctx.decimal {
            out.insert("ratio_approx".into(), json!(approx(&r.ratio)));
            cells.push(approx(&r.ratio));
        }
        cells.extend([
            r.bound.to_string(),
            if r.beats_bound { "yes" } else { "no" }.to_string(),
        ]);
        results.push(out);
        text_rows.push(cells);
    }
    let mut headers = vec!["s", "n", "size", "shadow", "ratio"];
    if ctx.decimal {
        headers.push("ratio(approx)");
    }
    headers.extend(["bound", "beats"]);
    let mut text = format!("# C(2k-t, k) = {}\n", scan.layer);
    text.push_str(&table(&headers, &text_rows));
    for note in &scan.skipped {
        text.push_str(&format!("# skipped {note}\n"));
    }
    let mut meta = Row::new();
    meta.insert("layer".into(), json!(scan.layer.to_string()));
    meta.insert("skipped".into(), json!(scan.skipped));
    Ok(Report {
        params,
        results,
        meta,
        text,
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("SHADOWLAB_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            // Only fails if a pool already exists, which cannot happen this early.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: &Cli) -> CliResult<(Report, u8)> {
    let ctx = Ctx { decimal: cli.decimal };
    Ok(match &cli.command {
        Command::Family(a) => (cmd_family(a)?, 0),
        Command::Analyze(a) => (cmd_analyze(a, &ctx)?, 0),
        Command::Bounds(a) => (cmd_bounds(a, &ctx)?, 0),
        Command::Verify(a) => cmd_verify(a)?,
        Command::Oracle(a) => (cmd_oracle(a, cli.format)?, 0),
        Command::Scan(a) => (cmd_scan(a, &ctx)?, 0),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let start = Instant::now();
    let outcome = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match outcome {
        Ok((report, code)) => {
            let rendered = if cli.format == Format::Csv && matches!(cli.command, Command::Oracle(_)) {
                Ok(report.text.clone())
            } else {
                report.render(cli.format)
            };
            match rendered {
                Ok(s) => {
                    use std::io::Write;
                    // A closed pipe (e.g. `| head`) is not an error.
                    let mut out = std::io::stdout().lock();
                    let _ = out.write_all(s.as_bytes()).and_then(|()| out.flush());
                    ExitCode::from(code)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
