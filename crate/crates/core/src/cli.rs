//! Command-line front end. [`run`] parses arguments and returns the text to
//! print together with the exit code, so the binary stays a thin wrapper.
//!
//! Exit codes: 0 holds / attained, 1 violated / unattained, 2 usage or input
//! error, 3 search budget exceeded.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::attain::{attainlemma_check, criterion_cor_attain, criterion_thm_attain, proposition_sweep, sweep_csv};
use crate::chains::{count_separating, max_separated, ChainMode};
use crate::coeffs::{binomial, largest_multinomial, saturating_pow, sum_of_largest, Scope};
use crate::error::{Error, Result};
use crate::extremal::{
    construct_eg_pairs, construct_meshalkin, construct_middle_layers, construct_notr, max_family_search, Constraint,
    Coordinates, SearchOptions, Universe,
};
use crate::hyp::{
    coordinate_chain_free, eg_condition, gst_condition, is_antichain, is_r_chain_free, meshalkin_condition,
    unifying_condition, HypothesisVerdict, Witness,
};
use crate::lym::{lym_compositions_full, lym_compositions_partial, lym_subsets};
use crate::model::{parse_family, CompositionFamily, Family, Shape};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const DEFAULT_SAMPLES: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Sperner,
    Erdos,
    Meshalkin,
    Gst,
    Unifying,
    #[value(name = "e-m")]
    EM,
    #[value(name = "e-g")]
    EG,
    #[value(name = "m-g")]
    MG,
    Rfamily,
}

impl Theorem {
    pub fn id(self) -> &'static str {
        match self {
            Theorem::Sperner => "sperner",
            Theorem::Erdos => "erdos",
            Theorem::Meshalkin => "meshalkin",
            Theorem::Gst => "gst",
            Theorem::Unifying => "unifying",
            Theorem::EM => "e-m",
            Theorem::EG => "e-g",
            Theorem::MG => "m-g",
            Theorem::Rfamily => "rfamily",
        }
    }

    fn wants_subsets(self) -> bool {
        matches!(self, Theorem::Sperner | Theorem::Erdos)
    }

    /// Right-hand side of the theorem's LYM inequality, if it has one.
    pub fn lym_bound(self, p: usize, r: u32) -> Option<u64> {
        let r = u64::from(r);
        match self {
            Theorem::Sperner | Theorem::Meshalkin | Theorem::Gst | Theorem::MG => Some(1),
            Theorem::Erdos | Theorem::EG => Some(r),
            Theorem::Unifying => Some(saturating_pow(r, p)),
            Theorem::EM => Some(saturating_pow(r, p.saturating_sub(1))),
            Theorem::Rfamily => None,
        }
    }

    /// Largest family size the theorem allows.
    pub fn bound(self, n: u32, p: usize, r: u32) -> Result<BigUint> {
        check_params(self, p, r)?;
        let r64 = u64::from(r);
        Ok(match self {
            Theorem::Sperner => sum_of_largest(n, 2, 1, Scope::ExactTotal),
            Theorem::Erdos => sum_of_largest(n, 2, r64, Scope::ExactTotal),
            Theorem::Meshalkin | Theorem::MG => largest_multinomial(n, p).1,
            Theorem::Gst => binomial(n, i64::from(n / 2)),
            Theorem::Unifying => sum_of_largest(n, p, saturating_pow(r64, p), Scope::AtMost),
            Theorem::EM => sum_of_largest(n, p, saturating_pow(r64, p - 1), Scope::ExactTotal),
            Theorem::EG => sum_of_largest(n, 2, r64, Scope::AtMost),
            Theorem::Rfamily => sum_of_largest(n, p + 1, saturating_pow(r64, p), Scope::ExactTotal),
        })
    }

    fn universe(self, n: u32, p: usize) -> Universe {
        match self {
            Theorem::Sperner | Theorem::Erdos => Universe::Subsets { n },
            Theorem::Meshalkin | Theorem::EM => Universe::FullCompositions { n, p },
            Theorem::Gst => Universe::DisjointPairs { n, cap: Some(n) },
            Theorem::EG => Universe::DisjointPairs { n, cap: None },
            Theorem::Unifying | Theorem::MG | Theorem::Rfamily => Universe::PartialCompositions { n, p },
        }
    }

    fn constraint(self, r: u32) -> Constraint {
        let r = r as usize;
        match self {
            Theorem::Sperner => Constraint::ChainFree { r: 1 },
            Theorem::Erdos => Constraint::ChainFree { r },
            Theorem::Meshalkin => Constraint::CoordinateChainFree { r: 1, coordinates: Coordinates::All },
            Theorem::EM => Constraint::CoordinateChainFree { r, coordinates: Coordinates::AllButLast },
            Theorem::Rfamily => Constraint::CoordinateChainFree { r, coordinates: Coordinates::All },
            Theorem::Gst => Constraint::Eg { r: 1 },
            Theorem::EG => Constraint::Eg { r },
            Theorem::Unifying => Constraint::Unifying { r },
            Theorem::MG => Constraint::Unifying { r: 1 },
        }
    }
}

fn check_params(t: Theorem, p: usize, r: u32) -> Result<()> {
    let fail = |msg: &str| Err(Error::InvalidParameters(format!("{}: {msg}", t.id())));
    if r == 0 {
        return fail("need r >= 1");
    }
    match t {
        Theorem::Meshalkin | Theorem::Unifying | Theorem::MG if p == 0 => fail("need p >= 1"),
        Theorem::EM | Theorem::Rfamily if p < 2 => fail("need p >= 2"),
        _ => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    ExactTotal,
    AtMost,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::ExactTotal => Scope::ExactTotal,
            ScopeArg::AtMost => Scope::AtMost,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sperner", version, about = "Sperner-type bounds, LYM sums and extremal families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct Params {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, value_enum)]
    pub theorem: Option<Theorem>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cardinality bound of a theorem, or the sum of the r largest coefficients.
    Bound {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum)]
        scope: Option<ScopeArg>,
    },
    /// Test a family file against a theorem's hypothesis.
    Check {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        family: PathBuf,
    },
    /// Exact LYM sum of a family file.
    Lym {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        family: PathBuf,
    },
    /// Largest family satisfying a theorem's hypothesis, by exhaustive search.
    Search {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        symmetry: bool,
    },
    /// Build the extremal family for a theorem.
    Construct {
        #[command(flatten)]
        params: Params,
    },
    /// Count chains separating a shape, or the most items of a family one chain separates.
    Separate {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_delimiter = ',')]
        shape: Option<Vec<u32>>,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
    },
    /// Non-attainment criteria, or the table of L* patterns with --sweep.
    Attain {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        sweep: bool,
    },
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// What a command produced before rendering.
struct Report {
    command: &'static str,
    parameters: Value,
    results: Value,
    seed: Option<u64>,
    code: i32,
}

impl Report {
    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "provenance": {
                "tool": env!("CARGO_PKG_NAME"),
                "version": env!("CARGO_PKG_VERSION"),
                "seed": self.seed,
            },
        })
    }

    fn to_table(&self) -> String {
        let mut out = format!("{}\n", self.command);
        let mut rows: Vec<(String, String)> = Vec::new();
        flatten("", &self.parameters, &mut rows);
        flatten("", &self.results, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            out.push_str(&format!("  {k:<width$}  {v}\n"));
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_owned(), s.clone())),
        Value::Null => {}
        other => out.push((prefix.to_owned(), other.to_string())),
    }
}

enum Failure {
    Usage(String),
    Budget(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn need<T>(v: Option<T>, flag: &str) -> Run<T> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn load(path: &PathBuf) -> Run<Family> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_family(&text)?)
}

fn params_json(p: &Params) -> Map<String, Value> {
    let mut m = Map::new();
    if let Some(t) = p.theorem {
        m.insert("theorem".into(), json!(t.id()));
    }
    for (k, v) in [("n", p.n.map(u64::from)), ("p", p.p.map(|x| x as u64)), ("r", p.r.map(u64::from))] {
        if let Some(v) = v {
            m.insert(k.into(), json!(v));
        }
    }
    m
}

fn compositions(f: &Family, t: Theorem) -> Run<&CompositionFamily> {
    match f {
        Family::Compositions(c) => {
            if matches!(t, Theorem::Gst | Theorem::EG) && c.p() != 2 {
                return Err(Failure::Usage(format!("{} needs pairs (p = 2)", t.id())));
            }
            Ok(c)
        }
        Family::Subsets(_) => Err(Failure::Usage(format!("{} needs a composition family", t.id()))),
    }
}

fn verdict(f: &Family, t: Theorem, r: u32) -> Run<HypothesisVerdict> {
    if t.wants_subsets() {
        let Family::Subsets(s) = f else {
            return Err(Failure::Usage(format!("{} needs a set family", t.id())));
        };
        return Ok(match t {
            Theorem::Sperner => is_antichain(s.sets()),
            _ => is_r_chain_free(s.sets(), r as usize),
        });
    }
    let c = compositions(f, t)?;
    let r = r as usize;
    Ok(match t {
        Theorem::Meshalkin => meshalkin_condition(c, true),
        Theorem::Gst => gst_condition(c, Some(c.n()))?,
        Theorem::Unifying => unifying_condition(c, r),
        Theorem::MG => unifying_condition(c, 1),
        Theorem::EG => eg_condition(c, r)?,
        Theorem::EM => match c.first_partial_item() {
            Some(item) => HypothesisVerdict::violated(Witness::NotFull { item }),
            None => coordinate_chain_free(c, r, &(0..c.p() - 1).collect::<Vec<_>>())?,
        },
        Theorem::Rfamily => coordinate_chain_free(c, r, &(0..c.p()).collect::<Vec<_>>())?,
        Theorem::Sperner | Theorem::Erdos => unreachable!(),
    })
}

fn family_p(f: &Family) -> usize {
    match f {
        Family::Subsets(_) => 2,
        Family::Compositions(c) => c.p(),
    }
}

fn cmd_bound(params: &Params, scope: Option<ScopeArg>) -> Run<Report> {
    let n = need(params.n, "n")?;
    let p = params.p.unwrap_or(2);
    let r = params.r.unwrap_or(1);
    let mut parameters = params_json(params);
    let bound = match params.theorem {
        Some(t) => {
            if scope.is_some() {
                return Err(Failure::Usage("--scope is fixed by --theorem".into()));
            }
            t.bound(n, p, r)?
        }
        None => {
            if p == 0 {
                return Err(Failure::Usage("need p >= 1".into()));
            }
            let scope: Scope = scope.unwrap_or(ScopeArg::ExactTotal).into();
            parameters.insert("scope".into(), json!(scope.as_str()));
            sum_of_largest(n, p, u64::from(r), scope)
        }
    };
    Ok(Report {
        command: "bound",
        parameters: parameters.into(),
        results: json!({"bound": bound.to_string()}),
        seed: None,
        code: EXIT_OK,
    })
}

fn cmd_check(params: &Params, path: &PathBuf) -> Run<Report> {
    let t = need(params.theorem, "theorem")?;
    let r = params.r.unwrap_or(1);
    let f = load(path)?;
    let p = family_p(&f);
    check_params(t, p, r)?;
    let v = verdict(&f, t, r)?;
    let bound = t.bound(f.n(), p, r)?;
    let mut parameters = params_json(params);
    parameters.insert("family".into(), json!(path.display().to_string()));
    Ok(Report {
        command: "check",
        parameters: parameters.into(),
        results: json!({
            "m": f.len(),
            "bound": bound.to_string(),
            "within_bound": BigUint::from(f.len()) <= bound,
            "hypothesis": v.to_json(),
        }),
        seed: None,
        code: if v.holds { EXIT_OK } else { EXIT_VIOLATED },
    })
}

fn cmd_lym(params: &Params, path: &PathBuf) -> Run<Report> {
    let t = need(params.theorem, "theorem")?;
    let r = params.r.unwrap_or(1);
    let f = load(path)?;
    let p = family_p(&f);
    check_params(t, p, r)?;
    let bound = t
        .lym_bound(p, r)
        .ok_or_else(|| Failure::Usage(format!("{} has no LYM inequality", t.id())))?;
    let report = match (&f, t) {
        (Family::Subsets(s), t) if t.wants_subsets() => lym_subsets(s, bound),
        (Family::Compositions(_), Theorem::Meshalkin | Theorem::EM) => {
            lym_compositions_full(compositions(&f, t)?, bound)?
        }
        (Family::Compositions(_), t) if !t.wants_subsets() => lym_compositions_partial(compositions(&f, t)?, bound),
        _ => return Err(Failure::Usage(format!("family kind does not fit {}", t.id()))),
    };
    let mut parameters = params_json(params);
    parameters.insert("family".into(), json!(path.display().to_string()));
    Ok(Report {
        command: "lym",
        parameters: parameters.into(),
        results: report.to_json(),
        seed: None,
        code: if report.satisfied { EXIT_OK } else { EXIT_VIOLATED },
    })
}

fn cmd_search(params: &Params, budget_ms: Option<u64>, symmetry: bool) -> Run<Report> {
    let t = need(params.theorem, "theorem")?;
    let n = need(params.n, "n")?;
    let p = if t.wants_subsets() || matches!(t, Theorem::Gst | Theorem::EG) { 2 } else { params.p.unwrap_or(2) };
    let r = params.r.unwrap_or(1);
    let bound = t.bound(n, p, r)?;
    let options = SearchOptions {
        symmetry,
        budget: budget_ms.map(Duration::from_millis),
        lym_budget: t.lym_bound(p, r),
    };
    let res = max_family_search(t.universe(n, p), t.constraint(r), &options)?;
    let attained = BigUint::from(res.optimum) == bound;
    let mut results = res.to_json();
    results["bound"] = json!(bound.to_string());
    results["attained"] = json!(attained);
    let mut parameters = params_json(params);
    parameters.insert("symmetry".into(), json!(symmetry));
    if let Some(ms) = budget_ms {
        parameters.insert("budget_ms".into(), json!(ms));
    }
    let report = Report {
        command: "search",
        parameters: parameters.into(),
        results,
        seed: None,
        code: if attained { EXIT_OK } else { EXIT_VIOLATED },
    };
    if !res.exhausted {
        return Err(Failure::Budget(report));
    }
    Ok(report)
}

fn cmd_construct(params: &Params) -> Run<Report> {
    let t = need(params.theorem, "theorem")?;
    let n = need(params.n, "n")?;
    let p = params.p.unwrap_or(2);
    let r = params.r.unwrap_or(1);
    check_params(t, p, r)?;
    let family: Family = match t {
        Theorem::Sperner => construct_middle_layers(n, 1)?.into(),
        Theorem::Erdos => construct_middle_layers(n, r)?.into(),
        Theorem::Meshalkin | Theorem::MG => construct_meshalkin(n, p)?.into(),
        Theorem::Gst => construct_eg_pairs(n, 1)?.into(),
        Theorem::EG => construct_eg_pairs(n, r)?.into(),
        Theorem::Rfamily => construct_notr(n, p, r)?.into(),
        Theorem::Unifying | Theorem::EM => {
            return Err(Failure::Usage(format!("no construction for {}", t.id())));
        }
    };
    let v = verdict(&family, t, r)?;
    Ok(Report {
        command: "construct",
        parameters: params_json(params).into(),
        results: json!({
            "m": family.len(),
            "hypothesis": v.to_json(),
            "family": family.to_json_value(),
        }),
        seed: None,
        code: if v.holds { EXIT_OK } else { EXIT_VIOLATED },
    })
}

fn cmd_separate(
    params: &Params,
    shape: Option<&Vec<u32>>,
    path: Option<&PathBuf>,
    seed: Option<u64>,
    samples: u64,
) -> Run<Report> {
    let mut parameters = params_json(params);
    match (shape, path) {
        (Some(shape), None) => {
            let n = need(params.n, "n")?;
            let shape = Shape::new(shape.clone());
            let count = count_separating(n, &shape)?;
            parameters.insert("shape".into(), json!(shape.sizes()));
            Ok(Report {
                command: "separate",
                parameters: parameters.into(),
                results: json!({"count": count.to_string()}),
                seed: None,
                code: EXIT_OK,
            })
        }
        (None, Some(path)) => {
            let Family::Compositions(f) = load(path)? else {
                return Err(Failure::Usage("separation needs a composition family".into()));
            };
            let mode = match seed {
                Some(seed) => ChainMode::Sampled { count: samples, seed },
                None => ChainMode::AllChains,
            };
            let res = max_separated(&f, mode)?;
            parameters.insert("family".into(), json!(path.display().to_string()));
            let mut results = json!({
                "max": res.max,
                "inspected": res.inspected,
                "exhaustive": seed.is_none(),
                "chain": res.witness.as_ref().map(|c| c.order().to_vec()),
            });
            let mut code = EXIT_OK;
            if let Some(r) = params.r {
                let exp = if f.first_partial_item().is_none() { f.p() - 1 } else { f.p() };
                let cap = saturating_pow(u64::from(r), exp);
                results["cap"] = json!(cap);
                if res.max as u64 > cap {
                    code = EXIT_VIOLATED;
                }
            }
            Ok(Report { command: "separate", parameters: parameters.into(), results, seed, code })
        }
        _ => Err(Failure::Usage("give exactly one of --shape or --family".into())),
    }
}

fn cmd_attain(params: &Params, sweep: bool) -> Run<(Report, Option<String>)> {
    if sweep {
        let p_max = params.p.unwrap_or(6);
        let n_max = params.n.unwrap_or(20);
        let rows = proposition_sweep(3..=p_max.max(3), 0..=n_max)?;
        let all_match = rows.iter().all(|r| r.matches());
        let report = Report {
            command: "attain",
            parameters: json!({"sweep": true, "p_max": p_max, "n_max": n_max}),
            results: json!({"rows": rows.len(), "all_match": all_match}),
            seed: None,
            code: if all_match { EXIT_OK } else { EXIT_VIOLATED },
        };
        return Ok((report, Some(sweep_csv(&rows))));
    }
    let n = need(params.n, "n")?;
    let p = need(params.p, "p")?;
    let r = need(params.r, "r")?;
    let thm = criterion_thm_attain(n, p, r)?;
    let cor = criterion_cor_attain(n, p, r)?;
    let lemma = attainlemma_check(n, p, r)?;
    let bound = sum_of_largest(n, p, saturating_pow(u64::from(r), p - 1), Scope::ExactTotal);
    let unattainable = thm.holds || cor.holds;
    let report = Report {
        command: "attain",
        parameters: params_json(params).into(),
        results: json!({
            "bound": bound.to_string(),
            "hypothesis": "full compositions, every coordinate r-chain-free",
            "theorem_criterion": thm.to_json(),
            "corollary_criterion": cor.to_json(),
            "lemma": lemma.to_json(),
            "status": if unattainable { "unattainable" } else { "undecided" },
        }),
        seed: None,
        code: if unattainable { EXIT_VIOLATED } else { EXIT_OK },
    };
    Ok((report, None))
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => report.to_table(),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut extra = None;
    let result = match &cli.command {
        Command::Bound { params, scope } => cmd_bound(params, *scope),
        Command::Check { params, family } => cmd_check(params, family),
        Command::Lym { params, family } => cmd_lym(params, family),
        Command::Search { params, budget_ms, symmetry } => cmd_search(params, *budget_ms, *symmetry),
        Command::Construct { params } => cmd_construct(params),
        Command::Separate { params, shape, family, seed, samples } => {
            cmd_separate(params, shape.as_ref(), family.as_ref(), *seed, *samples)
        }
        Command::Attain { params, sweep } => cmd_attain(params, *sweep).map(|(r, csv)| {
            extra = csv;
            r
        }),
    };
    match result {
        Ok(report) => {
            let stdout = match (extra, cli.format) {
                (Some(csv), Format::Table) => csv,
                _ => render(&report, cli.format),
            };
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(msg)) => Outcome::usage(msg),
        Err(Failure::Budget(report)) => Outcome {
            code: EXIT_BUDGET,
            stdout: render(&report, cli.format),
            stderr: "error: search budget exceeded; optimum is a lower bound\n".into(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(t: Theorem, n: u32, p: usize, r: u32) -> u64 {
        u64::try_from(&t.bound(n, p, r).unwrap()).unwrap()
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound(Theorem::Erdos, 4, 2, 2), 10);
        assert_eq!(bound(Theorem::Unifying, 3, 2, 2), 9);
        assert_eq!(bound(Theorem::Rfamily, 4, 2, 1), 12);
        assert_eq!(bound(Theorem::Sperner, 5, 2, 1), 10);
        assert_eq!(bound(Theorem::Gst, 4, 2, 1), 6);
        assert_eq!(bound(Theorem::Meshalkin, 3, 3, 1), 6);
        assert_eq!(bound(Theorem::EM, 4, 3, 2), 42);
        assert_eq!(bound(Theorem::EG, 3, 2, 2), 6);
        assert!(Theorem::Rfamily.bound(4, 1, 1).is_err());
        assert!(Theorem::Erdos.bound(4, 2, 0).is_err());
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::value_variants() {
            assert_eq!(Theorem::from_str(t.id(), false).unwrap(), *t);
        }
        assert_eq!(Theorem::EM.id(), "e-m");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["sperner", "bound"]).code, EXIT_USAGE);
        assert_eq!(run(["sperner", "bogus"]).code, EXIT_USAGE);
        assert_eq!(run(["sperner", "check", "--theorem", "sperner", "--family", "/nonexistent"]).code, EXIT_USAGE);
        assert_eq!(run(["sperner", "--help"]).code, EXIT_OK);
    }
}
