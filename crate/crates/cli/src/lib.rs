//! The `artin` command line.
//!
//! [`run`] does all the work and returns the exit code together with the
//! captured output streams, so the binary is a thin wrapper and tests can
//! drive the CLI in-process.
//!
//! Exit codes: 0 answered or verified, 1 refuted (or left undecided),
//! 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use artin_core::catalog::{self, Resolution, Symbol};
use artin_core::certificate::{self, CertificateReport, Context, Format, Profile, Settings, Status};
use artin_core::exec::Execution;
use artin_core::homology::Representation;
use artin_core::lang::{self, Convention, Environment, WordExpr};
use artin_core::{CoxeterGraph, GarsideElement, GarsideGroup, RootSystem};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "artin", version, about = "Word problem, homology and certificates for simply-laced Artin groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Named graph: A1..A9, D4..D9, E6, E7, E8.
    #[arg(long = "type", value_name = "NAME", global = true, conflicts_with = "graph")]
    type_name: Option<String>,
    /// Graph file (`vertices: n` followed by `i j` edge lines).
    #[arg(long, value_name = "FILE", global = true)]
    graph: Option<PathBuf>,
    /// Script of `let name = expr;` bindings.
    #[arg(long, value_name = "FILE", global = true)]
    script: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Include wall-clock durations in certificate reports.
    #[arg(long, global = true)]
    timings: bool,
    /// Run every pipeline on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Left normal form of an expression.
    Nf(Exprs),
    /// Whether two expressions are equal in the group.
    Eq(Exprs),
    /// Exponent sum.
    Deg(Exprs),
    /// Whether the first element absorbs the second.
    Absorbs(Exprs),
    /// Membership in a standard parabolic subgroup.
    Parabolic {
        #[command(flatten)]
        exprs: Exprs,
        /// Generator labels, e.g. `2,5`.
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<usize>,
    },
    /// Positive roots as coefficient vectors over the simple roots.
    Roots,
    /// Named elements of A(E6).
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Homology representation.
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
    /// Certificate pipelines.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        #[command(flatten)]
        opts: VerifyOpts,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// Print every named element under the resolved labeling.
    Dump,
}

#[derive(Debug, Subcommand)]
enum RepAction {
    /// Print curve classes and transvection matrices.
    Show {
        #[arg(long, default_value_t = certificate::GENUS)]
        genus: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Claim {
    Wajnryb,
    Normalizer,
    Torsion,
    Free,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Debug, Args)]
struct Exprs {
    #[arg(value_name = "EXPR")]
    positional: Vec<String>,
    /// Expression argument; may be repeated, and follows any positional ones.
    #[arg(long = "expr", value_name = "STRING")]
    named: Vec<String>,
}

impl Exprs {
    fn take(&self, count: usize) -> Result<Vec<&str>, Failure> {
        let all: Vec<&str> = self.positional.iter().chain(&self.named).map(String::as_str).collect();
        if all.len() != count {
            return Err(Failure::usage(format!("expected {count} expression(s), got {}", all.len())));
        }
        Ok(all)
    }
}

#[derive(Debug, Args)]
struct VerifyOpts {
    /// Parameter preset; explicit flags override it.
    #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
    profile: ProfileArg,
    /// Highest power checked by `torsion` (quick 3, full 6).
    #[arg(long, value_name = "K")]
    max_power: Option<i64>,
    /// Conjugation exponents scanned by `free` inclusive (quick 1..2, full 1..8).
    #[arg(long, value_name = "A..B", value_parser = parse_range)]
    n_range: Option<RangeInclusive<i64>>,
    /// Longest reduced word enumerated by `free` (quick 2, full 4).
    #[arg(long, value_name = "L")]
    max_word_len: Option<usize>,
    /// Element under test (the swapper for `normalizer`).
    #[arg(long = "expr", value_name = "STRING")]
    expr: Option<String>,
    /// Subgroup generators for `normalizer`.
    #[arg(long, value_delimiter = ',')]
    gens: Option<Vec<usize>>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    if a < 1 || b < a {
        return Err(format!("range `{s}` must satisfy 1 <= A <= B"));
    }
    Ok(a..=b)
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::usage(e.to_string())
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
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match dispatch(&cli, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(f) => Outcome { code: f.code, stdout: out, stderr: format!("error: {}\n", f.message) },
    }
}

/// The group an invocation works in.
struct Setting {
    group: GarsideGroup,
    /// Present when the group is A(E6) under the resolved labeling.
    resolution: Option<Resolution>,
    env: Environment,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn mode(g: &Global) -> Execution {
    if g.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

impl Setting {
    /// `wants_e6` is true when the command or its expressions need the
    /// catalog, which makes E6 the default graph.
    fn load(g: &Global, wants_e6: impl FnOnce(&Environment) -> bool) -> Result<Self, Failure> {
        let script = match &g.script {
            Some(p) => lang::load_script(&read(p)?)?,
            None => Environment::new(),
        };
        let graph = match (&g.type_name, &g.graph) {
            (Some(name), _) if name.eq_ignore_ascii_case("E6") => None,
            (Some(name), _) => Some(CoxeterGraph::named(&name.to_ascii_uppercase())?),
            (None, Some(path)) => Some(CoxeterGraph::parse(&read(path)?)?),
            (None, None) if wants_e6(&script) => None,
            (None, None) => return Err(Failure::usage("a graph is required: pass --type NAME or --graph FILE")),
        };
        Ok(match graph {
            Some(graph) => Setting { group: GarsideGroup::new(graph), resolution: None, env: script },
            None => {
                let r = catalog::resolve_labeling(mode(g))?;
                let mut env = script;
                env.extend_missing(&catalog::environment());
                Setting { group: GarsideGroup::new(r.labeling.graph().clone()), resolution: Some(r), env }
            }
        })
    }

    fn element(&self, text: &str) -> Result<GarsideElement, Failure> {
        let word = lang::expand_str(text, &self.env, Convention::RightAction)?;
        Ok(self.group.normalize(&word)?)
    }
}

/// True when the expressions mention a catalog symbol, directly or through
/// the script bindings they use.
fn mentions_catalog(texts: &[&str], script: &Environment) -> bool {
    let mut pending: Vec<String> = texts
        .iter()
        .filter_map(|t| lang::parse(t).ok())
        .flat_map(|e| e.names().into_iter().map(str::to_string).collect::<Vec<_>>())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    while let Some(name) = pending.pop() {
        if Symbol::ALL.iter().any(|s| s.name() == name) {
            return true;
        }
        if seen.insert(name.clone()) {
            if let Some(body) = script.get(&name) {
                pending.extend(body.names().into_iter().map(str::to_string));
            }
        }
    }
    false
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32, Failure> {
    let g = &cli.global;
    let json = g.format == OutputFormat::Json;
    let query = |exprs: &Exprs, count: usize| -> Result<(Setting, Vec<String>), Failure> {
        let texts = exprs.take(count)?;
        let setting = Setting::load(g, |script| mentions_catalog(&texts, script))?;
        Ok((setting, texts.into_iter().map(str::to_string).collect()))
    };
    match &cli.command {
        Command::Nf(exprs) => {
            let (s, texts) = query(exprs, 1)?;
            let x = s.element(&texts[0])?;
            let nf = s.group.format(&x);
            if json {
                emit_json(out, json!({"expr": texts[0], "normal_form": nf, "inf": x.inf(), "sup": x.sup(), "canonical_length": x.canonical_length()}));
            } else {
                let _ = writeln!(out, "{nf}");
            }
        }
        Command::Eq(exprs) => {
            let (s, texts) = query(exprs, 2)?;
            let (x, y) = (s.element(&texts[0])?, s.element(&texts[1])?);
            let equal = x == y;
            if json {
                emit_json(out, json!({"equal": equal, "left": s.group.format(&x), "right": s.group.format(&y)}));
            } else {
                let _ = writeln!(out, "{equal}");
            }
        }
        Command::Deg(exprs) => {
            let (s, texts) = query(exprs, 1)?;
            let d = s.group.degree(&s.element(&texts[0])?);
            if json {
                emit_json(out, json!({"expr": texts[0], "degree": d}));
            } else {
                let _ = writeln!(out, "{d}");
            }
        }
        Command::Absorbs(exprs) => {
            let (s, texts) = query(exprs, 2)?;
            let a = s.group.absorbs(&s.element(&texts[0])?, &s.element(&texts[1])?);
            if json {
                emit_json(out, json!({"absorbs": a}));
            } else {
                let _ = writeln!(out, "{a}");
            }
        }
        Command::Parabolic { exprs, gens } => {
            let (s, texts) = query(exprs, 1)?;
            if gens.iter().any(|&i| i == 0 || i > s.group.rank()) {
                return Err(Failure::usage(format!("--gens labels must lie in 1..={}", s.group.rank())));
            }
            let subset = gens.iter().map(|i| i - 1).collect();
            let member = s.group.in_standard_parabolic(&s.element(&texts[0])?, &subset)?;
            if json {
                emit_json(out, json!({"member": member, "gens": gens}));
            } else {
                let _ = writeln!(out, "{member}");
            }
        }
        Command::Roots => {
            let s = Setting::load(g, |_| false)?;
            roots(out, s.group.roots(), json);
        }
        Command::Catalog { action: CatalogAction::Dump } => {
            let s = Setting::load(g, |_| true)?;
            let r = s.resolution.ok_or_else(|| Failure::usage("the catalog is defined for E6 only"))?;
            if json {
                let env = catalog::environment();
                let elements: serde_json::Map<String, serde_json::Value> =
                    env.iter().map(|(n, e)| (n.to_string(), json!(e.to_string()))).collect();
                let edges: Vec<[usize; 2]> = r.labeling.graph().edges().map(|(i, j)| [i, j]).collect();
                emit_json(out, json!({
                    "labeling": r.labeling.name(),
                    "edges": edges,
                    "convention": r.convention.describe(),
                    "elements": elements,
                    "compliance": r.matrix,
                }));
            } else {
                out.push_str(&catalog::dump(&r));
                for line in catalog::format_matrix(&r.matrix).lines() {
                    let _ = writeln!(out, "# {line}");
                }
            }
        }
        Command::Rep { action: RepAction::Show { genus } } => {
            let s = Setting::load(g, |_| true)?;
            if *genus == 0 {
                return Err(Failure::usage("genus must be at least 1"));
            }
            let rep = Representation::for_graph(s.group.graph(), *genus)?;
            rep_show(out, &rep, &s.group.graph().type_name(), json);
        }
        Command::Verify { claim, opts } => return verify(g, *claim, opts, out),
    }
    Ok(EXIT_OK)
}

fn emit_json(out: &mut String, value: serde_json::Value) {
    out.push_str(&serde_json::to_string_pretty(&value).expect("json value"));
    out.push('\n');
}

fn roots(out: &mut String, roots: &RootSystem, json: bool) {
    let name = roots.graph().type_name();
    if json {
        emit_json(out, json!({"type": name, "rank": roots.rank(), "positive_roots": roots.positive_roots()}));
        return;
    }
    let _ = writeln!(out, "# {name}: {} positive roots", roots.positive_roots().len());
    for r in roots.positive_roots() {
        let _ = writeln!(out, "{}", r.iter().map(i32::to_string).collect::<Vec<_>>().join(" "));
    }
}

fn rep_show(out: &mut String, rep: &Representation, name: &str, json: bool) {
    if json {
        let classes: Vec<&Vec<i64>> = rep.classes().iter().map(|c| &c.0).collect();
        let mats: Vec<Vec<Vec<i64>>> = rep.transvections().iter().map(|m| m.rows()).collect();
        emit_json(out, json!({"type": name, "genus": rep.space().genus(), "classes": classes, "transvections": mats}));
        return;
    }
    let _ = writeln!(out, "# {name} in genus {}", rep.space().genus());
    for (i, c) in rep.classes().iter().enumerate() {
        let _ = writeln!(out, "class a{} = {c}", i + 1);
    }
    for (i, m) in rep.transvections().iter().enumerate() {
        let _ = writeln!(out, "transvection a{}\n{m}", i + 1);
    }
}

fn verify(g: &Global, claim: Claim, opts: &VerifyOpts, out: &mut String) -> Result<i32, Failure> {
    let settings = Settings { mode: mode(g), timings: g.timings };
    let s = Setting::load(g, |_| true)?;
    let r = s.resolution.ok_or_else(|| Failure::usage("certificates are defined for E6 only"))?;
    let mut ctx = Context::with_labeling(r.labeling, r.convention, settings)?;
    ctx.env = s.env;
    let profile = match opts.profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Full => Profile::Full,
    };
    let (max_power, n_range, max_len) = match profile {
        Profile::Quick => (3, 1..=2, 2),
        Profile::Full => (6, 1..=8, 4),
    };
    let max_power = opts.max_power.unwrap_or(max_power);
    let n_range = opts.n_range.clone().unwrap_or(n_range);
    let max_len = opts.max_word_len.unwrap_or(max_len);
    let element = match &opts.expr {
        Some(text) => lang::parse(text)?,
        None => certificate::catalog_expr(Symbol::W),
    };
    let swapper = match &opts.expr {
        Some(text) => lang::parse(text)?,
        None => certificate::catalog_expr(Symbol::B),
    };
    let gens = opts.gens.clone().unwrap_or_else(|| vec![2, 5]);
    let kappa = certificate::catalog_expr(Symbol::Kappa);
    let a1 = WordExpr::Generator(1);
    let reports: Vec<CertificateReport> = match claim {
        Claim::Wajnryb => vec![certificate::verify_wajnryb(&ctx, &element)?],
        Claim::Normalizer => vec![certificate::verify_normalizer(&ctx, &swapper, &a1, &gens)?],
        Claim::Torsion => vec![certificate::verify_torsion(&ctx, max_power, &element)?],
        Claim::Free => vec![certificate::freeness_with(&ctx, &element, &kappa, n_range, max_len)?],
        Claim::All => vec![
            certificate::verify_wajnryb(&ctx, &element)?,
            certificate::verify_normalizer(&ctx, &swapper, &a1, &gens)?,
            certificate::verify_torsion(&ctx, max_power, &element)?,
            certificate::freeness_with(&ctx, &element, &kappa, n_range, max_len)?,
        ],
    };
    let format = if g.format == OutputFormat::Json { Format::Json } else { Format::Text };
    out.push_str(&certificate::format_reports(&reports, format));
    Ok(if certificate::aggregate(&reports) == Status::Verified { EXIT_OK } else { EXIT_REFUTED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("artin").chain(args.iter().copied()))
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("1..8").unwrap(), 1..=8);
        assert_eq!(parse_range("2..=3").unwrap(), 2..=3);
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("3..2").is_err());
        assert!(parse_range("3").is_err());
    }

    #[test]
    fn identity_normal_form() {
        let o = run_args(&["nf", "a1*a1^-1", "--type", "E6"]);
        assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "D^0 |\n"));
    }

    #[test]
    fn graph_is_required_without_catalog_names() {
        let o = run_args(&["nf", "a1"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("graph is required"));
        let o = run_args(&["deg", "w"]);
        assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "0\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["nf", "a1 +", "--type", "A2"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["nf", "a3", "--type", "A2"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["nf", "a1", "--type", "A2", "--graph", "x"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["nf", "a1", "--type", "F4"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["eq", "a1", "--type", "A2"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "all", "--type", "A3"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["nf", "a1", "--type", "A2", "--bogus"]).code, EXIT_USAGE);
    }
}
