//! `topoprod`: construct, verify, measure and collapse complexes from JSON files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use topoprod::acceptance;
use topoprod::collapse::{
    classify_core, exhaustive_collapsibility, greedy_collapse, tree_embed, verify_tree_embedding, Collapsibility, CollapsePlan,
};
use topoprod::complex::HasIncidence;
use topoprod::constructions::{registry, REGISTRY};
use topoprod::document::{AnyComplex, ComplexDocument};
use topoprod::homology::homology_of;
use topoprod::projection::{product_decomposition, rank_bound_assert, theta_decompose};
use topoprod::verify::{closed_surface_check, free_edges, pseudo_manifold_check, ramified_manifold_check, VerifierReport};

#[derive(Parser)]
#[command(name = "topoprod", version, about = "Cell complexes in products of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the output here instead of stdout.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    /// Emit JSON (the default); `--json false` prints a one-line summary instead.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a registered construction and write its complex document.
    Construct(ConstructArgs),
    /// Run manifold-recognition checks on a complex document.
    Verify {
        path: PathBuf,
        /// Checks to run; all of them when omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
        #[arg(long)]
        pseudo: bool,
        #[arg(long)]
        ramified: bool,
        #[arg(long)]
        surface: bool,
        #[arg(long)]
        free_edges: bool,
        #[arg(long)]
        proper_cells: bool,
    },
    /// Integral homology, compared with the document's expected block when present.
    Homology { path: PathBuf },
    /// Circle-factor decomposition and rank bound of a product subcomplex.
    Decompose { path: PathBuf },
    /// Greedy collapse with exhaustive fallback, optionally embedding in a product of trees.
    Collapse {
        path: PathBuf,
        #[arg(long)]
        tree_embed: bool,
        /// Search nodes for the exhaustive fallback.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Run the acceptance criteria.
    Accept {
        /// A criterion id or tag.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    name: String,
    /// Parameters as `key=value`, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    control: Option<i64>,
    #[arg(long)]
    factors: Option<i64>,
    #[arg(long)]
    len: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Check {
    Pseudo,
    Ramified,
    Surface,
    FreeEdges,
    ProperCells,
}

/// Output of every command but `construct`. `serde_json` maps are ordered,
/// so equal inputs give byte-identical reports.
#[derive(Serialize)]
struct ReportDocument {
    command: Vec<String>,
    input_digest: Option<String>,
    results: Value,
    pass: bool,
}

enum Failure {
    Input(String),
    Budget(ReportDocument),
}

struct Outcome {
    text: String,
    summary: String,
    code: u8,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(path: &Path) -> Result<(AnyComplex, Option<topoprod::constructions::Expected>, String), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let doc = ComplexDocument::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let complex = doc.to_complex().map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((complex, doc.expected, digest(&bytes)))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn report(command: &[String], input_digest: Option<String>, results: Value, pass: bool) -> ReportDocument {
    ReportDocument {
        command: command.to_vec(),
        input_digest,
        results,
        pass,
    }
}

fn construct(a: &ConstructArgs) -> Result<Outcome, Failure> {
    let mut params = BTreeMap::new();
    for p in &a.params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("parameter `{p}` is not KEY=VALUE")))?;
        let v: i64 = v.parse().map_err(|_| Failure::Input(format!("parameter `{k}` needs an integer, got `{v}`")))?;
        params.insert(k.to_string(), v);
    }
    for (k, v) in [("m", a.m), ("n", a.n), ("k", a.k), ("control", a.control), ("factors", a.factors), ("len", a.len)] {
        if let Some(v) = v {
            params.insert(k.to_string(), v);
        }
    }
    let c = registry(&a.name, &params).map_err(|e| Failure::Input(format!("{e}\n\n{}", usage())))?;
    let mut doc = c.complex.to_document();
    doc.expected = c.expected;
    Ok(Outcome {
        summary: format!("{} {:?}: {} document", c.name, c.params, doc.kind),
        text: doc.to_json(),
        code: 0,
    })
}

fn usage() -> String {
    let lines: Vec<String> = REGISTRY
        .iter()
        .map(|(name, ps)| {
            let ps: Vec<String> = ps.iter().map(|(k, v)| format!("--{k} {v}")).collect();
            format!("  {name} {}", ps.join(" "))
        })
        .collect();
    format!("registered constructions (defaults shown):\n{}", lines.join("\n"))
}

fn regular_of(c: &AnyComplex, what: &str) -> Result<topoprod::complex::Regular2Complex, Failure> {
    c.as_regular2()
        .map(|k| k.into_owned())
        .ok_or_else(|| Failure::Input(format!("{what} needs a 2-complex, got a `{}` document", c.kind())))
}

fn verify(command: &[String], path: &Path, checks: &[Check]) -> Result<ReportDocument, Failure> {
    let (c, _, d) = load(path)?;
    let n = c.incidence().dimension().unwrap_or(0);
    let mut results = serde_json::Map::new();
    let mut pass = true;
    for &check in checks {
        if check == Check::FreeEdges {
            let free = free_edges(&regular_of(&c, "free-edges")?);
            let ok = free.is_empty();
            results.insert("free-edges".into(), json!({ "edges": free, "verdict": ok }));
            pass &= ok;
            continue;
        }
        let (name, r) = match check {
            Check::Pseudo => ("pseudo", pseudo_manifold_check(&c, n, false)),
            Check::Ramified => ("ramified", ramified_manifold_check(&c, n, false)),
            Check::Surface => ("surface", closed_surface_check(&regular_of(&c, "surface")?)),
            Check::ProperCells => {
                let r = match regular_of(&c, "proper-cells")?.proper_cells_check() {
                    Ok(()) => VerifierReport::pass(),
                    Err((cell, missing)) => VerifierReport::fail(cell, format!("missing face {missing}")),
                };
                ("proper-cells", r)
            }
            Check::FreeEdges => unreachable!("handled above"),
        };
        pass &= r.verdict;
        results.insert(name.into(), to_value(&r));
    }
    Ok(report(command, Some(d), Value::Object(results), pass))
}

fn homology_cmd(command: &[String], path: &Path) -> Result<ReportDocument, Failure> {
    let (c, expected, d) = load(path)?;
    let h = homology_of(&c);
    let mut results = json!({ "kind": c.kind(), "homology": to_value(&h) });
    if let Some(s) = c.surface_report() {
        results["surface"] = to_value(&s);
    }
    let mismatches = expected.as_ref().map(|e| e.check(&c)).unwrap_or_default();
    if expected.is_some() {
        results["expected_mismatches"] = to_value(&mismatches);
    }
    Ok(report(command, Some(d), results, mismatches.is_empty()))
}

fn decompose(command: &[String], path: &Path) -> Result<ReportDocument, Failure> {
    let (c, _, d) = load(path)?;
    let m = c
        .as_subcomplex()
        .ok_or_else(|| Failure::Input(format!("decompose needs a product-subcomplex document, got `{}`", c.kind())))?;
    let dec = product_decomposition(&m).map_err(|e| Failure::Input(e.to_string()))?;
    let bound = rank_bound_assert(&m).map_err(|e| Failure::Input(e.to_string()))?;
    let mut results = json!({ "decomposition": to_value(&dec), "rank_bound": to_value(&bound) });
    if let Ok(t) = theta_decompose(&m) {
        results["theta"] = to_value(&t);
    }
    let pass = bound.holds && (!dec.claimed || dec.exact);
    Ok(report(command, Some(d), results, pass))
}

fn collapse(command: &[String], path: &Path, embed: bool, budget: usize) -> Result<ReportDocument, Failure> {
    if budget == 0 {
        return Err(Failure::Input("--budget must be at least 1".into()));
    }
    let (c, _, d) = load(path)?;
    let k = regular_of(&c, "collapse")?;
    let greedy = greedy_collapse(&k);
    let mut results = json!({
        "greedy": to_value(&greedy),
        "core_class": to_value(&classify_core(&greedy.core)),
    });
    let search = exhaustive_collapsibility(&k, budget);
    results["collapsibility"] = to_value(&search);
    let steps = match &search {
        Collapsibility::Collapsible { steps, .. } => steps.clone(),
        Collapsibility::Refuted { .. } => return Ok(report(command, Some(d), results, false)),
        Collapsibility::NotCollapsibleWithinBudget { .. } => {
            return Err(Failure::Budget(report(command, Some(d), results, false)));
        }
    };
    let mut pass = true;
    if embed {
        let core = topoprod::collapse::replay(&k, &steps).map_err(|e| Failure::Input(e.to_string()))?;
        let plan = CollapsePlan { steps, core };
        match tree_embed(&k, &plan) {
            Ok(t) => {
                let v = verify_tree_embedding(&t, &k);
                pass = v.verdict;
                results["embedding"] = to_value(&t);
                results["embedding_check"] = to_value(&v);
            }
            Err(e) => {
                pass = false;
                results["embedding_error"] = Value::String(e.to_string());
            }
        }
    }
    Ok(report(command, Some(d), results, pass))
}

fn accept(command: &[String], filter: Option<&str>) -> Result<ReportDocument, Failure> {
    let selected = acceptance::select(filter);
    if selected.is_empty() {
        return Err(Failure::Input(format!("no criterion matches `{}`", filter.unwrap_or(""))));
    }
    let results: Vec<_> = selected.into_iter().map(|c| c.run()).collect();
    eprintln!("{:<4} {:<6} {:<60} failures", "id", "status", "claim");
    for r in &results {
        eprintln!("{}", r.line());
        for f in &r.failures {
            eprintln!("       {f}");
        }
    }
    let pass = results.iter().all(|r| r.pass);
    Ok(report(command, None, to_value(&results), pass))
}

fn summary_line(r: &ReportDocument) -> String {
    format!("{}: {}", r.command.first().map_or("", String::as_str), if r.pass { "pass" } else { "fail" })
}

fn finish(r: ReportDocument, code_if_fail: u8) -> Outcome {
    let code = if r.pass { 0 } else { code_if_fail };
    Outcome {
        summary: summary_line(&r),
        text: serde_json::to_string_pretty(&r).expect("reports serialize"),
        code,
    }
}

fn run(cli: &Cli, command: &[String]) -> Result<Outcome, Failure> {
    Ok(match &cli.command {
        Command::Construct(a) => construct(a)?,
        Command::Verify {
            path,
            checks,
            pseudo,
            ramified,
            surface,
            free_edges,
            proper_cells,
        } => {
            let mut chosen: Vec<Check> = checks.clone();
            for (on, c) in [
                (*pseudo, Check::Pseudo),
                (*ramified, Check::Ramified),
                (*surface, Check::Surface),
                (*free_edges, Check::FreeEdges),
                (*proper_cells, Check::ProperCells),
            ] {
                if on && !chosen.contains(&c) {
                    chosen.push(c);
                }
            }
            if chosen.is_empty() {
                chosen = vec![Check::Pseudo, Check::Ramified, Check::Surface, Check::FreeEdges, Check::ProperCells];
            }
            finish(verify(command, path, &chosen)?, 1)
        }
        Command::Homology { path } => finish(homology_cmd(command, path)?, 1),
        Command::Decompose { path } => finish(decompose(command, path)?, 1),
        Command::Collapse { path, tree_embed, budget } => finish(collapse(command, path, *tree_embed, *budget)?, 1),
        Command::Accept { filter } => finish(accept(command, filter.as_deref())?, 1),
    })
}

fn emit(cli: &Cli, text: &str, summary: &str) -> Result<(), String> {
    let body = if cli.json { format!("{text}\n") } else { format!("{summary}\n") };
    match &cli.out {
        Some(p) => std::fs::write(p, body).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// The invocation minus its output destination, so a report does not depend on where it is written.
fn echo(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if std::mem::take(&mut skip) {
            continue;
        }
        if a == "-o" || a == "--out" {
            skip = true;
        } else if !a.starts_with("--out=") && !(a.starts_with("-o") && a.len() > 2 && !a.starts_with("--")) {
            out.push(a);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = echo(std::env::args().skip(1));
    let outcome = match run(&cli, &command) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Budget(r)) => {
            let o = finish(r, 3);
            Outcome { code: 3, ..o }
        }
    };
    if let Err(e) = emit(&cli, &outcome.text, &outcome.summary) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code)
}
