//! The `niho` command line: argument model, dispatch, and rendering.
//!
//! Exit codes: 0 success or verified true, 1 verified false, 2 usage or
//! precondition error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{make_field, parse_modulus_hex, FieldCtx};
use crate::loweq::{quadratic_criterion_sweep, verify_lemma_quartics, QuarticFamily};
use crate::niho::{known_pairs_table1, parse_pair, Family, FamilyId, FamilyInstance, NihoPair};
use crate::permcheck::{is_permutation_exhaustive, unit_circle_check, Counterexample, PermReport, EXHAUSTIVE_MAX_DEGREE};
use crate::survey::{
    rows_to_csv, scan_open_problem_1, scan_open_problem_2, search_pairs, table_to_csv, verify_table1, ScanHit,
    SearchRow, VerifiedTableRow,
};
use crate::tower::TowerCtx;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "niho", version, about = "Niho-type permutation trinomials over GF(2^n)")]
pub struct Cli {
    /// Half degree: work in GF(2^(2m)) over GF(2^m).
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// Extension degree (even for tower commands).
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Irreducible modulus in hex, e.g. 0x11b.
    #[arg(long, global = true, value_name = "HEX")]
    pub modulus: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    UnitCircle,
    Exhaustive,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Eq4,
    Eq6,
    Eq8,
    Lemma1,
    Lemma2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a pair trinomial or a family instance permutes the field.
    Verify {
        /// Pair S,T; integers or fractions a/b modulo 2^m+1.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "family")]
        pair: Option<String>,
        #[arg(long, required_unless_present = "pair")]
        family: Option<String>,
        /// Family parameter NAME=VALUE (hex for field elements).
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Expand a family even when its hypotheses fail.
        #[arg(long)]
        unchecked: bool,
        #[arg(long, value_enum, default_value_t = EngineChoice::Both)]
        method: EngineChoice,
    },
    /// Expand a family instance and show its hypotheses.
    Family {
        #[arg(long)]
        family: String,
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        unchecked: bool,
    },
    /// Reproduce the table of known pairs with verdicts.
    Table1 {
        /// Every m from 2 to --m-max.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 8)]
        m_max: u32,
    },
    /// Run the executable content of a lemma.
    Lemmas {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Sweep every unordered (s,t) and classify it.
    Search,
    /// s with (s, 1-s) a permutation pair.
    Open1,
    /// k with (2k, -k) a permutation pair.
    Open2,
}

struct Output {
    body: String,
    code: i32,
}

/// Parses arguments, runs the command, writes output; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::PreconditionViolated(e.to_string())),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(out) => match emit(&cli, &out.body) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Verify { pair, family, params, unchecked, method } => {
            let tower = tower(cli)?;
            match (pair, family) {
                (Some(pair), _) => verify_pair(cli, &tower, pair, *method),
                (None, Some(id)) => verify_family(cli, &tower, id, params, *unchecked, *method),
                (None, None) => Err(Error::Parse("verify needs --pair or --family".into())),
            }
        }
        Command::Family { family, params, unchecked } => family_cmd(cli, &tower(cli)?, family, params, *unchecked),
        Command::Table1 { all, m_max } => {
            let ms: Vec<u32> = if *all {
                (2..=*m_max).collect()
            } else {
                vec![half_degree(cli)?]
            };
            let mut rows = Vec::new();
            for m in ms {
                let t = if *all { TowerCtx::with_m(m)? } else { tower(cli)? };
                rows.extend(verify_table1(&t)?);
            }
            table1_output(cli.format, &rows)
        }
        Command::Lemmas { which } => lemmas(cli, *which),
        Command::Search => {
            let rows = search_pairs(&tower(cli)?)?;
            search_output(cli.format, &rows)
        }
        Command::Open1 => {
            let t = tower(cli)?;
            scan_output(cli.format, "open1", "s", t.m(), &scan_open_problem_1(&t)?)
        }
        Command::Open2 => {
            let t = tower(cli)?;
            scan_output(cli.format, "open2", "k", t.m(), &scan_open_problem_2(&t)?)
        }
    }
}

fn degree(cli: &Cli) -> Result<u32> {
    match (cli.m, cli.n) {
        (Some(m), Some(n)) if n != 2 * m => Err(Error::Parse(format!("--m {m} and --n {n} disagree"))),
        (_, Some(n)) => Ok(n),
        (Some(m), None) => m.checked_mul(2).ok_or(Error::DegreeOutOfRange(u32::MAX)),
        (None, None) => Err(Error::Parse("need --m or --n".into())),
    }
}

fn half_degree(cli: &Cli) -> Result<u32> {
    let n = degree(cli)?;
    if n % 2 != 0 {
        return Err(Error::OddDegree(n));
    }
    Ok(n / 2)
}

fn field(cli: &Cli) -> Result<FieldCtx> {
    let modulus = cli.modulus.as_deref().map(parse_modulus_hex).transpose()?;
    make_field(degree(cli)?, modulus)
}

fn tower(cli: &Cli) -> Result<TowerCtx> {
    TowerCtx::new(field(cli)?)
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn warn_table_conditions(tower: &TowerCtx, pair: &NihoPair) {
    let m = tower.m();
    for e in known_pairs_table1(m) {
        let claimed = e.pair == Some(*pair) || e.equivalents.iter().any(|x| x.pair == Some(*pair));
        if claimed && !e.row.condition(m, e.k) {
            eprintln!(
                "warning: {pair} matches table row {} {} whose condition \"{}\" fails at m = {m}; reporting the engine verdict",
                e.source(),
                e.label,
                e.condition
            );
        }
    }
}

fn verify_pair(cli: &Cli, tower: &TowerCtx, text: &str, method: EngineChoice) -> Result<Output> {
    let (s, t) = parse_pair(text)?;
    let pair = NihoPair::from_fractions(tower.m(), s, t)?;
    warn_table_conditions(tower, &pair);
    let mut reports = Vec::new();
    if matches!(method, EngineChoice::UnitCircle | EngineChoice::Both) {
        reports.push(unit_circle_check(tower, &pair));
    }
    if matches!(method, EngineChoice::Exhaustive | EngineChoice::Both) {
        if method == EngineChoice::Exhaustive || tower.field().degree() <= EXHAUSTIVE_MAX_DEGREE {
            let mut r = is_permutation_exhaustive(tower.field(), &crate::niho::pair_to_trinomial(tower, &pair))?;
            r.pair = Some(pair);
            reports.push(r);
        } else {
            eprintln!("warning: n > {EXHAUSTIVE_MAX_DEGREE}, exhaustive engine skipped");
        }
    }
    perm_output(cli.format, tower.field(), &reports)
}

fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("expected NAME=VALUE, got {p:?}")))
        })
        .collect()
}

fn instance(tower: &TowerCtx, id: &str, params: &[String]) -> Result<FamilyInstance> {
    let id: FamilyId = id.parse()?;
    let family = Family::from_params(id, &parse_params(params)?)?;
    for e in [family_elements(&family)].into_iter().flatten() {
        tower.field().element(e.bits() as u64)?;
    }
    Ok(FamilyInstance::new(tower, family))
}

fn family_elements(family: &Family) -> Vec<crate::gf::FieldElement> {
    match *family {
        Family::F1 { a } | Family::F5 { a } => vec![a],
        Family::F2 { v } => vec![v],
        Family::F3 { a, b, c, .. } => vec![a, b, c],
        Family::F7 { a, b } => vec![a, b],
        _ => Vec::new(),
    }
}

fn expand(tower: &TowerCtx, inst: &FamilyInstance, unchecked: bool) -> Result<crate::poly::SparsePoly> {
    if unchecked {
        if !inst.conditions.met {
            eprintln!("warning: {}: {}; expanding anyway", inst.id(), inst.conditions.reason);
        }
        inst.family.expand(tower)
    } else {
        crate::niho::family_trinomial(tower, inst)
    }
}

fn verify_family(
    cli: &Cli,
    tower: &TowerCtx,
    id: &str,
    params: &[String],
    unchecked: bool,
    method: EngineChoice,
) -> Result<Output> {
    let inst = instance(tower, id, params)?;
    let poly = expand(tower, &inst, unchecked)?;
    let pair = inst.family.niho_pair(tower);
    let mut reports = Vec::new();
    if let (Some(p), EngineChoice::UnitCircle | EngineChoice::Both) = (pair, method) {
        reports.push(unit_circle_check(tower, &p));
    }
    if method != EngineChoice::UnitCircle || pair.is_none() {
        let mut r = is_permutation_exhaustive(tower.field(), &poly)?;
        r.pair = pair;
        reports.push(r);
    }
    perm_output(cli.format, tower.field(), &reports)
}

fn perm_output(format: Format, field: &FieldCtx, reports: &[PermReport]) -> Result<Output> {
    let all_true = reports.iter().all(|r| r.is_permutation);
    let agree = reports.windows(2).all(|w| w[0].is_permutation == w[1].is_permutation);
    if !agree {
        eprintln!("warning: engines disagree");
    }
    let code = if all_true { EXIT_OK } else { EXIT_FALSE };
    let body = match format {
        Format::Json => to_json(reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["method", "s", "t", "is_permutation", "evaluations", "counterexample"]).map_err(csv_err)?;
            for r in reports {
                w.write_record([
                    format!("{:?}", r.method),
                    r.pair.map(|p| p.s.to_string()).unwrap_or_default(),
                    r.pair.map(|p| p.t.to_string()).unwrap_or_default(),
                    r.is_permutation.to_string(),
                    r.evaluations.to_string(),
                    r.counterexample.map(counterexample_text).unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(csv_err)?).expect("utf-8")
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let pair = r.pair.map(|p| format!("pair {p} ")).unwrap_or_default();
                let _ = write!(
                    s,
                    "{pair}n={} modulus {} {:?}: {} ({} evaluations, {:.3} ms)",
                    field.degree(),
                    field.modulus_hex(),
                    r.method,
                    if r.is_permutation { "permutation" } else { "not a permutation" },
                    r.evaluations,
                    r.elapsed.as_secs_f64() * 1e3
                );
                if let Some(c) = r.counterexample {
                    let _ = write!(s, ", counterexample {}", counterexample_text(c));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output { body, code })
}

fn counterexample_text(c: Counterexample) -> String {
    match c {
        Counterexample::Collision { x, y } => format!("f({x}) = f({y})"),
        Counterexample::ZeroOnCircle { x } => format!("1 + x^s + x^t = 0 at {x}"),
    }
}

#[derive(Serialize)]
struct FamilyJson {
    family: String,
    conditions_met: bool,
    conditions: String,
    pair: Option<NihoPair>,
    polynomial: crate::poly::SparsePolyJson,
    text: String,
}

fn family_cmd(cli: &Cli, tower: &TowerCtx, id: &str, params: &[String], unchecked: bool) -> Result<Output> {
    let inst = instance(tower, id, params)?;
    let poly = expand(tower, &inst, unchecked)?;
    let json = FamilyJson {
        family: inst.id().to_string(),
        conditions_met: inst.conditions.met,
        conditions: inst.conditions.reason.clone(),
        pair: inst.family.niho_pair(tower),
        polynomial: poly.to_json(),
        text: poly.to_string(),
    };
    let body = match cli.format {
        Format::Json => to_json(&json),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["coef_hex", "exp"]).map_err(csv_err)?;
            for t in &json.polynomial.terms {
                w.write_record([t.coef_hex.clone(), t.exp.to_string()]).map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(csv_err)?).expect("utf-8")
        }
        Format::Text => format!(
            "{} over GF(2^{}) mod {}\n  conditions: {}\n  f(x) = {}\n",
            json.family,
            tower.field().degree(),
            tower.field().modulus_hex(),
            json.conditions,
            json.text
        ),
    };
    Ok(Output { body, code: EXIT_OK })
}

fn table1_output(format: Format, rows: &[VerifiedTableRow]) -> Result<Output> {
    let code = if rows.iter().all(|r| r.claims_hold()) { EXIT_OK } else { EXIT_FALSE };
    let body = match format {
        Format::Json => to_json(rows),
        Format::Csv => table_to_csv(rows)?,
        Format::Text => {
            let mut s = String::new();
            let show = |p: Option<NihoPair>, v: Option<bool>| match (p, v) {
                (Some(p), Some(v)) => format!("{p} {}", if v { "PP" } else { "not PP" }),
                _ => "undefined".to_string(),
            };
            let mut last_m = None;
            for r in rows {
                if last_m != Some(r.m) {
                    let _ = writeln!(s, "m = {}", r.m);
                    last_m = Some(r.m);
                }
                let _ = writeln!(
                    s,
                    "  {:<10} {:<14} {:<16} condition {:<5} [{}]",
                    r.source,
                    r.label,
                    show(r.pair, r.is_pp),
                    r.condition_ok,
                    r.condition
                );
                for e in &r.equivalents {
                    let _ = writeln!(s, "    ~ {:<14} {}", e.label, show(e.pair, e.is_pp));
                }
            }
            s
        }
    };
    Ok(Output { body, code })
}

fn lemmas(cli: &Cli, which: Which) -> Result<Output> {
    let (passed, json, text) = match which {
        Which::Eq4 | Which::Eq6 | Which::Eq8 => {
            let fam = match which {
                Which::Eq4 => QuarticFamily::Eq4,
                Which::Eq6 => QuarticFamily::Eq6,
                _ => QuarticFamily::Eq8,
            };
            let r = verify_lemma_quartics(&tower(cli)?, fam)?;
            let text = format!(
                "{} m={}: {} ({} checked, {} skipped, case1 {}, case2 {}, silent {}, prescribed {:?} {})\n",
                r.lemma,
                r.m,
                if r.all_pass { "no subfield root" } else { "ROOT FOUND" },
                r.checked,
                r.skipped,
                r.certified_case1,
                r.certified_case2,
                r.criterion_silent,
                r.prescribed,
                if r.certificate_as_prescribed { "everywhere" } else { "not everywhere" },
            );
            (r.all_pass && r.certificate_as_prescribed, to_json(&r), text)
        }
        Which::Lemma1 => {
            let t = tower(cli)?;
            let gammas: Vec<_> = t.non_subfield_elements().take(3).collect();
            let reports = gammas.iter().map(|&g| t.check_cayley_bijection(g)).collect::<Result<Vec<_>>>()?;
            let mut text = String::new();
            for r in &reports {
                let _ = writeln!(
                    text,
                    "gamma {} m={}: injective {}, {} values, image = U\\{{1}} {}",
                    r.gamma, r.m, r.injective, r.image_size, r.covers_circle_minus_one
                );
            }
            (reports.iter().all(|r| r.passed()), to_json(&reports), text)
        }
        Which::Lemma2 => {
            let r = quadratic_criterion_sweep(&field(cli)?);
            let text = format!(
                "n={} modulus {}: {} (a, b) pairs, {} disagreements\n",
                r.n, r.modulus, r.pairs_checked, r.disagreements
            );
            (r.disagreements == 0, to_json(&r), text)
        }
    };
    let body = match cli.format {
        Format::Json | Format::Csv => json,
        Format::Text => text,
    };
    Ok(Output { body, code: if passed { EXIT_OK } else { EXIT_FALSE } })
}

fn search_output(format: Format, rows: &[SearchRow]) -> Result<Output> {
    let body = match format {
        Format::Json => to_json(rows),
        Format::Csv => rows_to_csv(rows)?,
        Format::Text => {
            let pp = rows.iter().filter(|r| r.is_pp).count();
            let new = rows.iter().filter(|r| r.flagged_new).count();
            let mut s = String::new();
            if let Some(r) = rows.first() {
                let _ = writeln!(s, "m = {}: {} pairs, {} permutations, {} not covered by the table", r.m, rows.len(), pp, new);
            }
            for r in rows.iter().filter(|r| r.is_pp) {
                let _ = writeln!(
                    s,
                    "  {:<12} orbit {:<3} {}{}",
                    r.pair.to_string(),
                    r.orbit.len(),
                    r.covered_by.as_deref().unwrap_or(if r.degenerate { "degenerate" } else { "-" }),
                    if r.flagged_new { "  NEW" } else { "" }
                );
            }
            s
        }
    };
    Ok(Output { body, code: EXIT_OK })
}

#[derive(Serialize)]
struct ScanJson<'a> {
    scan: &'a str,
    m: u32,
    hits: &'a [ScanHit],
}

fn scan_output(format: Format, scan: &str, param: &str, m: u32, hits: &[ScanHit]) -> Result<Output> {
    let body = match format {
        Format::Json => to_json(&ScanJson { scan, m, hits }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["m", param, "s", "t"]).map_err(csv_err)?;
            for h in hits {
                w.write_record([m.to_string(), h.param.to_string(), h.pair.s.to_string(), h.pair.t.to_string()])
                    .map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(csv_err)?).expect("utf-8")
        }
        Format::Text => {
            let list: Vec<String> = hits.iter().map(|h| format!("{param}={} {}", h.param, h.pair)).collect();
            format!("{scan} m = {m}: {} hits\n  {}\n", hits.len(), list.join("\n  "))
        }
    };
    Ok(Output { body, code: EXIT_OK })
}
