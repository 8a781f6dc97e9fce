//! Command-line front end. Every command except `gen` prints one JSON report.
//!
//! Exit codes: 0 success, 1 usage/format/argument error, 2 a bound was
//! exceeded, 3 an exact algorithm hit its size cap.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::canon::canonical_form;
use crate::core_eta::{self, JClass};
use crate::error::{Error, Result};
use crate::families;
use crate::graph::{graph6, Graph, VertexSet};
use crate::oracle;
use crate::patterns::{self, PatternSpec};
use crate::search::{self, Mode, SearchConfig};
use crate::spectral::{self, BoundSpec};

pub const SCHEMA: &str = "spexlab.report/1";
/// Environment variable holding the worker count for searches.
pub const THREADS_ENV: &str = "SPEXLAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "spexlab", version, about = "Spectral extremal graph workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Inputs {
    /// Graph in graph6 format (repeatable).
    #[arg(long = "g6")]
    g6: Vec<String>,
    /// File with graph6 lines or edge-list JSON (one object or an array).
    #[arg(long)]
    file: Option<String>,
    /// Read graphs from standard input, same formats as --file.
    #[arg(long)]
    stdin: bool,
    /// Accepted for compatibility; output is always JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named family member: gen <family> <params..>.
    Gen {
        family: String,
        params: Vec<usize>,
        /// Print graph6 (default).
        #[arg(long = "g6")]
        g6: bool,
        /// Print edge-list JSON instead of graph6.
        #[arg(long)]
        json: bool,
    },
    /// Spectral radius, Perron vector and second eigenvalue.
    Lambda(Inputs),
    /// Forbidden-subgraph check with witness.
    Free {
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// k-core with peel certificate.
    Core {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// η(L) and η of its (k−1)-core for L ⊆ N(u*).
    Eta {
        #[arg(long)]
        k: usize,
        /// Comma-separated vertex list.
        #[arg(long)]
        set: String,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Decomposition around the extremal vertex, classes and slacks.
    Decompose {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Maximise λ over graphs of size m.
    Search(SearchArgs),
    /// Compare a closed-form bound against exhaustive search.
    Verify {
        /// nosal | lnw | fan:K | f23 | bh | nikiforov:R
        #[arg(long)]
        bound: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// λ₁^{2k} + λ₂^{2k} ≤ Tr(A^{2k})/2 on odd-girth > 2k+1 graphs.
    TraceIneq {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Compare fast paths with brute-force references.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    HillClimb,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    #[arg(long)]
    nmin: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    /// Allow disconnected graphs.
    #[arg(long)]
    allow_disconnected: bool,
    /// Keep isolated vertices (graphs padded to nmax).
    #[arg(long)]
    allow_isolated: bool,
    #[arg(long)]
    non_bipartite: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget: Option<usize>,
    /// Start graph for hill climbing.
    #[arg(long = "g6")]
    start: Option<String>,
    /// Accepted for compatibility; output is always JSON.
    #[arg(long)]
    json: bool,
}

/// Run the CLI on `argv` (including the program name) and return the exit
/// code together with what should be printed on stdout.
pub fn run(argv: &[String], stdin: &mut dyn Read) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return (code, e.to_string());
        }
    };
    match dispatch(cli.command, argv, stdin) {
        Ok(out) => out,
        Err(e) => {
            let code = match e {
                Error::Capability(_) => 3,
                _ => 1,
            };
            let report = json!({
                "schema": SCHEMA,
                "version": env!("CARGO_PKG_VERSION"),
                "error": { "kind": error_kind(&e), "message": e.to_string() },
            });
            (code, render(report))
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Capacity { .. } => "capacity",
        Error::Argument(_) => "argument",
        Error::Format(_) => "format",
        Error::Capability(_) => "capability",
        Error::Config(_) => "config",
        Error::NonConvergence { .. } => "non_convergence",
    }
}

fn dispatch(cmd: Command, argv: &[String], stdin: &mut dyn Read) -> Result<(i32, String)> {
    let command: Vec<&str> = argv.iter().skip(1).map(String::as_str).collect();
    let envelope = |inputs: &[Graph], seed: u64, results: Value| {
        json!({
            "schema": SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "inputs": inputs.iter().map(|g| canonical_form(g).0).collect::<Vec<_>>(),
            "seed": seed,
            "results": results,
        })
    };
    match cmd {
        Command::Gen {
            family,
            params,
            json,
            ..
        } => {
            let graphs = generate(&family, &params)?;
            let lines: Vec<String> = graphs
                .iter()
                .map(|g| if json { g.to_json() } else { graph6::encode(g) })
                .collect();
            Ok((0, lines.join("\n")))
        }
        Command::Lambda(inputs) => {
            let graphs = read_graphs(&inputs, stdin)?;
            let results = graphs
                .iter()
                .map(|g| {
                    let r = spectral::spectral_radius(g)?;
                    Ok(serde_json::to_value(&r).expect("serialisable"))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((0, render(envelope(&graphs, 0, Value::from(results)))))
        }
        Command::Free { pattern, inputs } => {
            let p: PatternSpec = pattern.parse()?;
            let graphs = read_graphs(&inputs, stdin)?;
            let results = graphs
                .iter()
                .map(|g| {
                    let w = patterns::contains(g, &p)?;
                    Ok(json!({
                        "pattern": p.to_string(),
                        "free": w.is_none(),
                        "witness": w.map(|w| w.map),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((0, render(envelope(&graphs, 0, Value::from(results)))))
        }
        Command::Core { k, inputs } => {
            let graphs = read_graphs(&inputs, stdin)?;
            let results: Vec<Value> = graphs
                .iter()
                .map(|g| serde_json::to_value(core_eta::k_core(g, k)).expect("serialisable"))
                .collect();
            Ok((0, render(envelope(&graphs, 0, Value::from(results)))))
        }
        Command::Eta { k, set, inputs } => {
            let l = parse_set(&set)?;
            let graphs = read_graphs(&inputs, stdin)?;
            let results = graphs
                .iter()
                .map(|g| {
                    let ctx = core_eta::decompose(g, k)?;
                    let cmp = core_eta::eta_core_inequality(&ctx, l)?;
                    Ok(json!({
                        "u_star": ctx.u_star,
                        "set": l,
                        "eta": cmp.eta_l,
                        "core": cmp.core,
                        "eta_core": cmp.eta_core,
                        "holds": cmp.holds,
                        "equal": cmp.equal,
                        "equality_consistent": cmp.equality_consistent,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((0, render(envelope(&graphs, 0, Value::from(results)))))
        }
        Command::Decompose { k, inputs } => {
            let graphs = read_graphs(&inputs, stdin)?;
            let results = graphs
                .iter()
                .map(|g| {
                    let ctx = core_eta::decompose(g, k)?;
                    let classes = core_eta::classify_components(&ctx)?;
                    let slack = core_eta::slack_report(&ctx)?;
                    let peel = ctx.core_of(ctx.r);
                    Ok(json!({
                        "context": ctx,
                        "r_core": peel,
                        "components": classes,
                        "counts": class_counts(&classes),
                        "slack": slack,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((0, render(envelope(&graphs, 0, Value::from(results)))))
        }
        Command::Search(args) => {
            let (cfg, start) = search_config(&args, None)?;
            let report = with_workers(|| match (&start, cfg.mode) {
                (Some(g), Mode::HillClimb) => search::hill_climb(&cfg, g),
                _ => search::extremal_search(&cfg),
            })?;
            let inputs: Vec<Graph> = start.into_iter().collect();
            let results = json!({ "config": config_json(&cfg), "report": report });
            Ok((0, render(envelope(&inputs, cfg.seed, results))))
        }
        Command::Verify {
            bound,
            search: args,
        } => {
            let spec = parse_bound(&bound, args.m)?;
            let (base, _) = search_config(&args, Some(spec))?;
            let cfg = search::bound_setting(spec, &base)?;
            let report = with_workers(|| search::verify_bound(spec, &base))?;
            let violated = report.bound.is_some_and(|b| b.violated);
            let results = json!({
                "bound": spec,
                "config": config_json(&cfg),
                "report": report,
            });
            Ok((
                if violated { 2 } else { 0 },
                render(envelope(&[], cfg.seed, results)),
            ))
        }
        Command::TraceIneq {
            k,
            tolerance,
            inputs,
        } => {
            let graphs = read_graphs(&inputs, stdin)?;
            let results = graphs
                .iter()
                .map(|g| {
                    let t = spectral::trace_inequality(g, k, tolerance)?;
                    let two_ways = spectral::power_trace(g, 2 * k)?;
                    Ok(json!({
                        "inequality": t,
                        "trace_walks": two_ways.walks as f64,
                        "trace_spectral": two_ways.spectral,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((0, render(envelope(&graphs, 0, Value::from(results)))))
        }
        Command::Selftest { seed } => {
            let checks = oracle::selftest(seed)?;
            let ok = checks.iter().all(|c| c.passed());
            let results = json!({ "passed": ok, "checks": checks });
            Ok((if ok { 0 } else { 1 }, render(envelope(&[], seed, results))))
        }
    }
}

fn class_counts(classes: &[core_eta::ComponentClass]) -> Value {
    let count = |f: &dyn Fn(JClass) -> bool| classes.iter().filter(|c| f(c.class)).count();
    json!({
        "J1": count(&|c| c == JClass::J1),
        "J2": count(&|c| c == JClass::J2),
        "J3": count(&|c| c == JClass::J3),
        "J4": count(&|c| c.is_j4()),
        "J5": count(&|c| c == JClass::J5),
    })
}

fn config_json(cfg: &SearchConfig) -> Value {
    json!({
        "m": cfg.m,
        "pattern": cfg.pattern.as_ref().map(|p| p.to_string()),
        "n_min": cfg.n_min,
        "n_max": cfg.n_max,
        "connected_only": cfg.connected_only,
        "forbid_isolated": cfg.forbid_isolated,
        "non_bipartite_only": cfg.non_bipartite_only,
        "mode": cfg.mode,
        "seed": cfg.seed,
        "budget": cfg.budget,
    })
}

fn search_config(
    args: &SearchArgs,
    bound: Option<BoundSpec>,
) -> Result<(SearchConfig, Option<Graph>)> {
    let mut cfg = SearchConfig::new(args.m);
    if let Some(p) = &args.pattern {
        cfg.pattern = Some(p.parse()?);
    }
    cfg.mode = match args.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::HillClimb => Mode::HillClimb,
    };
    if cfg.mode == Mode::HillClimb {
        cfg.n_max = args.m + 1;
    }
    if let Some(n) = args.nmin {
        cfg.n_min = n;
    }
    if let Some(n) = args.nmax {
        cfg.n_max = n;
    }
    cfg.connected_only = !args.allow_disconnected;
    cfg.forbid_isolated = !args.allow_isolated;
    cfg.non_bipartite_only = args.non_bipartite;
    cfg.seed = args.seed;
    if let Some(b) = args.budget {
        cfg.budget = b;
    }
    if bound.is_none() {
        cfg.validate()?;
    }
    let start = args.start.as_deref().map(graph6::decode).transpose()?;
    Ok((cfg, start))
}

fn with_workers<T: Send>(f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(f),
        _ => f(),
    }
}

/// `nosal | lnw | fan:K | f23 | bh | nikiforov:R`.
pub fn parse_bound(s: &str, m: usize) -> Result<BoundSpec> {
    let bad = || Error::Format(format!("unrecognised bound '{s}'"));
    let (kind, param) = match s.split_once(':') {
        Some((k, p)) => (k, Some(p.parse::<usize>().map_err(|_| bad())?)),
        None => (s, None),
    };
    Ok(match (kind, param) {
        ("nosal", None) => BoundSpec::Nosal { m },
        ("lnw", None) => BoundSpec::Lnw { m },
        ("fan", Some(k)) => BoundSpec::Fan { k, m },
        ("f23", None) => BoundSpec::FriendshipF23 { m },
        ("bh", None) => BoundSpec::BrualdiHoffman { m },
        ("nikiforov", Some(r)) => BoundSpec::Nikiforov { r, m },
        _ => return Err(bad()),
    })
}

fn parse_set(s: &str) -> Result<VertexSet> {
    if s.trim().is_empty() {
        return Ok(VertexSet::EMPTY);
    }
    let mut set = VertexSet::EMPTY;
    for part in s.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("bad vertex '{part}' in --set")))?;
        if v >= crate::graph::MAX_VERTICES {
            return Err(Error::Argument(format!("vertex {v} out of range")));
        }
        set = set.with(v);
    }
    Ok(set)
}

/// Family members by name; `l_family` yields several graphs.
pub fn generate(family: &str, p: &[usize]) -> Result<Vec<Graph>> {
    let want = |n: usize| -> Result<()> {
        if p.len() != n {
            return Err(Error::Argument(format!(
                "family '{family}' takes {n} parameter(s), got {}",
                p.len()
            )));
        }
        Ok(())
    };
    let one = |g: Result<Graph>| g.map(|g| vec![g]);
    match family {
        "empty" => {
            want(1)?;
            one(families::empty(p[0]))
        }
        "path" => {
            want(1)?;
            one(families::path(p[0]))
        }
        "cycle" => {
            want(1)?;
            one(families::cycle(p[0]))
        }
        "complete" => {
            want(1)?;
            one(families::complete(p[0]))
        }
        "kbip" => {
            want(2)?;
            one(families::complete_bipartite(p[0], p[1]))
        }
        "fan" => {
            want(1)?;
            one(families::fan(p[0]).map(|f| f.graph))
        }
        "friendship" | "fr" => {
            want(1)?;
            one(families::friendship(p[0]).map(|f| f.graph))
        }
        "theta" => {
            want(3)?;
            one(families::theta(p[0], p[1], p[2]))
        }
        "book" => {
            want(1)?;
            one(families::book(p[0]))
        }
        "split" => {
            want(2)?;
            one(families::split_like(p[0], p[1]).map(|f| f.graph))
        }
        "splus" => {
            want(2)?;
            one(families::s_plus(p[0], p[1]).map(|f| f.graph))
        }
        "lfamily" => {
            want(2)?;
            families::l_family(p[0], p[1])
        }
        "extremal" => {
            want(2)?;
            one(families::extremal(p[0], p[1]).map(|f| f.graph))
        }
        "matching" => {
            want(1)?;
            one(families::matching_graph(p[0]))
        }
        "skb" => {
            want(1)?;
            one(families::subdivided_kb(p[0]))
        }
        "rk" => {
            want(1)?;
            one(families::rk(p[0]))
        }
        "bh" => {
            want(2)?;
            one(families::bh_graph(p[0], p[1]))
        }
        _ => Err(Error::Argument(format!("unknown family '{family}'"))),
    }
}

fn read_graphs(inputs: &Inputs, stdin: &mut dyn Read) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for s in &inputs.g6 {
        graphs.push(graph6::decode(s)?);
    }
    if let Some(path) = &inputs.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Argument(format!("cannot read {path}: {e}")))?;
        graphs.extend(parse_batch(&text)?);
    }
    if inputs.stdin {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Argument(format!("cannot read stdin: {e}")))?;
        graphs.extend(parse_batch(&text)?);
    }
    if graphs.is_empty() {
        return Err(Error::Argument(
            "no input graphs; use --g6, --file or --stdin".into(),
        ));
    }
    Ok(graphs)
}

/// graph6 lines, one edge-list JSON object, or a JSON array of them.
pub fn parse_batch(text: &str) -> Result<Vec<Graph>> {
    let t = text.trim();
    if t.starts_with('{') {
        return Ok(vec![Graph::from_json(t)?]);
    }
    if t.starts_with('[') {
        let items: Vec<Value> =
            serde_json::from_str(t).map_err(|e| Error::Format(format!("edge-list JSON: {e}")))?;
        return items
            .iter()
            .map(|v| Graph::from_json(&v.to_string()))
            .collect();
    }
    t.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| graph6::decode(l.strip_prefix(">>graph6<<").unwrap_or(l)))
        .collect()
}

/// Round every float to 12 significant digits and print with sorted keys.
fn render(v: Value) -> String {
    serde_json::to_string_pretty(&round_floats(v)).expect("valid JSON")
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
            // normalise −0
            let r = if r == 0.0 { 0.0 } else { r };
            serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let argv: Vec<String> = std::iter::once("spexlab")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        run(&argv, &mut std::io::empty())
    }

    #[test]
    fn rounding_keeps_twelve_digits() {
        let v = round_floats(json!({"x": 100.0 / 7.0, "y": 2.0, "z": -0.0}));
        assert_eq!(v["x"].as_f64().unwrap(), 14.2857142857);
        assert_eq!(v["y"].as_f64().unwrap(), 2.0);
        assert_eq!(v["z"].as_f64().unwrap().to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn bound_grammar() {
        assert_eq!(
            parse_bound("fan:3", 15).unwrap(),
            BoundSpec::Fan { k: 3, m: 15 }
        );
        assert_eq!(
            parse_bound("bh", 7).unwrap(),
            BoundSpec::BrualdiHoffman { m: 7 }
        );
        assert!(parse_bound("fan", 7).is_err());
        assert!(parse_bound("nosal:2", 7).is_err());
    }

    #[test]
    fn gen_and_lambda() {
        let (code, out) = call(&["gen", "fan", "8", "--g6"]);
        assert_eq!(code, 0);
        assert_eq!(graph6::decode(&out).unwrap().size(), 13);
        let (code, out) = call(&["lambda", "--g6", "Bw"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"][0]["lambda1"].as_f64(), Some(2.0));
    }

    #[test]
    fn batch_formats() {
        let gs = parse_batch(">>graph6<<Bw\n\nBg\n").unwrap();
        assert_eq!(gs.len(), 2);
        let gs = parse_batch(r#"[{"n":3,"edges":[[0,1]]},{"n":2,"edges":[]}]"#).unwrap();
        assert_eq!(gs[0].size(), 1);
        assert!(parse_batch("{").is_err());
    }
}
