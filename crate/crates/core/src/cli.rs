//! Command-line frontend.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::candidacy::{candidacy, CandidacyReport};
use crate::catalog::TopologyId;
use crate::dashing::{search_dashings, SearchOptions, DEFAULT_BUDGET};
use crate::fixtures::{default_fixture_dir, verify_fixtures};
use crate::garden::{garden_check, GardenReport, Side};
use crate::graph::ValiseGraph;
use crate::io::{from_json, serialize_graph, to_dot, to_json};
use crate::matrix::SignedMatrix;
use crate::search::{run_search, SearchSpec};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "adinkra", version, about = "Adinkra-candidate graph toolkit")]
pub struct Cli {
    /// Emit JSON instead of text; with a path, write the JSON there.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "-", value_name = "PATH")]
    pub json: Option<String>,

    /// Worker threads for the searches.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Candidacy filters plus the Garden Algebra check of the current dashing.
    Check { graph: String },
    /// Print the L- and R-matrices.
    Matrices { graph: String },
    /// Print every anticommutator block and the verdict.
    Garden { graph: String },
    /// Search for a dashing that satisfies the Garden Algebra.
    Dashings {
        graph: String,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, env = "ADINKRA_BUDGET")]
        budget: Option<u64>,
    },
    /// Enumerate topologies on d bosons and d fermions with N colors.
    Search {
        #[arg(long)]
        bosons: usize,
        #[arg(long)]
        colors: usize,
        #[arg(long)]
        allow_disconnected: bool,
        /// Disable the quad-closure pruning of partial assignments.
        #[arg(long)]
        no_prune: bool,
        /// Keep isomorphic candidates as separate classes.
        #[arg(long)]
        no_dedupe: bool,
        #[arg(long, env = "ADINKRA_BUDGET")]
        budget: Option<u64>,
    },
    /// Recompute the appendix product tables and diff them against the fixtures.
    Fixtures {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Write a Graphviz rendering.
    ExportDot { graph: String, path: Option<PathBuf> },
    /// Print a catalog graph as JSON.
    Builtin { name: String },
}

/// Reads a graph file, or a catalog entry written as `builtin:<name>`.
pub fn load_graph(spec: &str) -> Result<ValiseGraph, String> {
    let g = if let Some(name) = spec.strip_prefix("builtin:") {
        let id: TopologyId = name.parse().map_err(|e| format!("{e}"))?;
        id.build().map_err(|e| e.to_string())?
    } else {
        let text = fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?;
        from_json(&text).map_err(|e| format!("{spec}: {e}"))?
    };
    let violations = g.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        return Err(format!("{spec}: invalid graph\n{}", lines.join("\n")));
    }
    Ok(g)
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: Option<String>,
}

impl Ctx<'_> {
    fn text(&mut self, s: &str) {
        let _ = self.out.write_all(s.as_bytes());
    }

    fn input_error(&mut self, msg: &str) -> u8 {
        let _ = writeln!(self.err, "error: {msg}");
        EXIT_INPUT
    }

    /// Writes `value` to the JSON destination. Returns false on I/O failure.
    fn emit_json<T: Serialize>(&mut self, value: &T) -> bool {
        let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
        match self.json.as_deref() {
            Some("-") | None => {
                self.text(&text);
                true
            }
            Some(path) => match fs::write(path, text) {
                Ok(()) => true,
                Err(e) => {
                    let _ = writeln!(self.err, "error: cannot write {path}: {e}");
                    false
                }
            },
        }
    }

    fn wants_json(&self) -> bool {
        self.json.is_some()
    }
}

/// Runs one command; all output goes to `out` / `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let mut ctx = Ctx {
        out,
        err,
        json: cli.json,
    };
    let workers = cli.workers;
    match cli.command {
        Command::Check { graph } => cmd_check(&mut ctx, &graph),
        Command::Matrices { graph } => cmd_matrices(&mut ctx, &graph),
        Command::Garden { graph } => cmd_garden(&mut ctx, &graph),
        Command::Dashings {
            graph,
            exhaustive,
            budget,
        } => cmd_dashings(&mut ctx, &graph, exhaustive, budget, workers),
        Command::Search {
            bosons,
            colors,
            allow_disconnected,
            no_prune,
            no_dedupe,
            budget,
        } => {
            let mut spec = SearchSpec::new(bosons, colors);
            spec.allow_disconnected = allow_disconnected;
            spec.prune = !no_prune;
            spec.dedupe = !no_dedupe;
            if let Some(b) = budget {
                spec.budget = b;
                spec.dashing_budget = b;
            }
            spec.workers = workers;
            cmd_search(&mut ctx, &spec)
        }
        Command::Fixtures { dir } => cmd_fixtures(&mut ctx, dir.as_deref()),
        Command::ExportDot { graph, path } => cmd_export_dot(&mut ctx, &graph, path.as_deref()),
        Command::Builtin { name } => cmd_builtin(&mut ctx, &name),
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn describe(g: &ValiseGraph) -> String {
    format!(
        "graph: {} ({} bosons, {} fermions, {} colors, {} edges)\n",
        g.name(),
        g.boson_count(),
        g.fermion_count(),
        g.n_colors(),
        g.edge_count()
    )
}

fn candidacy_table(r: &CandidacyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<18} {:<6} detail", "check", "result");
    let _ = writeln!(s, "{:<18} {:<6}", "bipartite", pass_fail(r.bipartite_ok));
    let _ = writeln!(
        s,
        "{:<18} {:<6} {} bosons, {} fermions",
        "equal counts",
        pass_fail(r.equal_counts.ok),
        r.equal_counts.bosons,
        r.equal_counts.fermions
    );
    let coverage_detail = if r.coverage.ok {
        String::new()
    } else {
        format!("{} vertices miss colors", r.coverage.missing.len())
    };
    let _ = writeln!(
        s,
        "{:<18} {:<6} {coverage_detail}",
        "color coverage",
        pass_fail(r.coverage.ok)
    );
    for m in &r.coverage.missing {
        let colors: Vec<String> = m.colors.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "{:<25} {} missing {{{}}}", "", m.vertex, colors.join(", "));
    }
    let quads_detail = if r.quads.ok {
        String::new()
    } else {
        format!("{} non-quad bi-color cycles", r.quads.offending.len())
    };
    let _ = writeln!(
        s,
        "{:<18} {:<6} {quads_detail}",
        "bi-color quads",
        pass_fail(r.quads.ok)
    );
    for c in &r.quads.offending {
        let _ = writeln!(s, "{:<25} {c}", "");
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    match r.verdict.reasons() {
        [] => s.push_str("verdict: candidate\n"),
        reasons => {
            let rs: Vec<String> = reasons.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(s, "verdict: rejected: {}", rs.join("; "));
        }
    }
    s
}

fn garden_summary(r: &GardenReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "garden boson side (L_I R_J + L_J R_I):   {}", pass_fail(r.left_ok));
    let _ = writeln!(s, "garden fermion side (R_I L_J + R_J L_I): {}", pass_fail(r.right_ok));
    if !r.violations.is_empty() {
        let _ = writeln!(s, "garden violations: {}", r.violations.len());
        for v in r.violations.iter().take(20) {
            let _ = writeln!(s, "  {v}");
        }
        if r.violations.len() > 20 {
            let _ = writeln!(s, "  ... {} more", r.violations.len() - 20);
        }
    }
    s
}

fn cmd_check(ctx: &mut Ctx, spec: &str) -> u8 {
    let g = match load_graph(spec) {
        Ok(g) => g,
        Err(e) => return ctx.input_error(&e),
    };
    let report = candidacy(&g);
    let mats = g.to_matrices().expect("validated");
    let square = g.boson_count() == g.fermion_count();
    let garden = square.then(|| garden_check(&mats).ok()).flatten();
    let adinkra = report.is_candidate() && garden.as_ref().is_some_and(|r| r.ok);

    if ctx.wants_json() {
        let doc = json!({
            "graph": g.name(),
            "candidacy": report,
            "garden": garden,
            "adinkra": adinkra,
        });
        if !ctx.emit_json(&doc) {
            return EXIT_INPUT;
        }
    } else {
        let mut s = describe(&g);
        s.push_str(&candidacy_table(&report));
        match &garden {
            Some(r) => s.push_str(&garden_summary(r)),
            None => s.push_str("garden: skipped (matrices are not square)\n"),
        }
        let _ = writeln!(s, "adinkra: {}", if adinkra { "yes" } else { "no" });
        ctx.text(&s);
    }
    if adinkra {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_matrices(ctx: &mut Ctx, spec: &str) -> u8 {
    let g = match load_graph(spec) {
        Ok(g) => g,
        Err(e) => return ctx.input_error(&e),
    };
    let ls = g.to_matrices().expect("validated");
    let rs: Vec<SignedMatrix> = ls.iter().map(SignedMatrix::transpose).collect();
    if ctx.wants_json() {
        if !ctx.emit_json(&json!({ "graph": g.name(), "L": ls, "R": rs })) {
            return EXIT_INPUT;
        }
    } else {
        let mut s = describe(&g);
        for (k, m) in ls.iter().enumerate() {
            let _ = write!(s, "L{}\n{m}\n", k + 1);
        }
        for (k, m) in rs.iter().enumerate() {
            let _ = write!(s, "R{}\n{m}\n", k + 1);
        }
        ctx.text(&s);
    }
    EXIT_PASS
}

fn cmd_garden(ctx: &mut Ctx, spec: &str) -> u8 {
    let g = match load_graph(spec) {
        Ok(g) => g,
        Err(e) => return ctx.input_error(&e),
    };
    let report = match garden_check(&g.to_matrices().expect("validated")) {
        Ok(r) => r,
        Err(e) => return ctx.input_error(&e.to_string()),
    };
    if ctx.wants_json() {
        if !ctx.emit_json(&report) {
            return EXIT_INPUT;
        }
    } else {
        let mut s = describe(&g);
        s.push_str(&report.render(Side::Left));
        s.push_str(&report.render(Side::Right));
        s.push_str(&garden_summary(&report));
        ctx.text(&s);
    }
    if report.ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_dashings(
    ctx: &mut Ctx,
    spec: &str,
    exhaustive: bool,
    budget: Option<u64>,
    workers: Option<usize>,
) -> u8 {
    let g = match load_graph(spec) {
        Ok(g) => g,
        Err(e) => return ctx.input_error(&e),
    };
    let opts = SearchOptions {
        exhaustive,
        budget: budget.unwrap_or(DEFAULT_BUDGET),
        workers,
        full_garden: false,
    };
    let result = match search_dashings(&g, &opts) {
        Ok(r) => r,
        Err(e) => return ctx.input_error(&e.to_string()),
    };
    if ctx.wants_json() {
        if !ctx.emit_json(&result) {
            return EXIT_INPUT;
        }
    } else {
        let mut s = describe(&g);
        let _ = writeln!(s, "free edges after gauge fixing: {}", result.free_edges);
        if let Some(reason) = &result.pruned_reason {
            let _ = writeln!(s, "pruned: {reason}");
        }
        let _ = writeln!(s, "feasible: {}", if result.feasible { "yes" } else { "no" });
        if let Some(w) = &result.witness {
            let signs: Vec<String> = w.signs.iter().map(|x| x.value().to_string()).collect();
            let _ = writeln!(s, "witness: [{}]", signs.join(", "));
        }
        if exhaustive {
            let _ = writeln!(s, "gauge orbits: {}", result.count_gauge_orbits);
            match result.count_total {
                Some(t) => {
                    let _ = writeln!(s, "total dashings: {t}");
                }
                None => s.push_str("total dashings: unknown\n"),
            }
        }
        ctx.text(&s);
    }
    if result.feasible {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_search(ctx: &mut Ctx, spec: &SearchSpec) -> u8 {
    let outcome = match run_search(spec) {
        Ok(o) => o,
        Err(e) => return ctx.input_error(&e.to_string()),
    };
    if ctx.wants_json() {
        if !ctx.emit_json(&outcome) {
            return EXIT_INPUT;
        }
        if ctx.json.as_deref() == Some("-") {
            return EXIT_PASS;
        }
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "search: {} bosons, {} fermions, {} colors",
        spec.d, spec.d, spec.n_colors
    );
    let _ = writeln!(s, "candidates scanned: {}", outcome.scanned);
    let _ = writeln!(s, "classes examined: {}", outcome.classes);
    for (reason, n) in &outcome.pruned {
        let _ = writeln!(s, "pruned ({reason}): {n}");
    }
    let _ = writeln!(s, "solution classes: {}", outcome.solutions.len());
    for sol in &outcome.solutions {
        let shape = match sol.hypercube {
            Some(n) => format!("hypercube({n})"),
            None => "non-hypercube".to_string(),
        };
        let conn = if sol.connected {
            "connected".to_string()
        } else {
            format!("disconnected, {} components", sol.components)
        };
        let _ = writeln!(
            s,
            "  {}: {shape}, {conn}, {} candidates in class",
            sol.graph.name(),
            sol.class_size
        );
    }
    ctx.text(&s);
    EXIT_PASS
}

fn cmd_fixtures(ctx: &mut Ctx, dir: Option<&Path>) -> u8 {
    let dir = dir.map_or_else(default_fixture_dir, Path::to_path_buf);
    let summary = match verify_fixtures(&dir) {
        Ok(s) => s,
        Err(e) => return ctx.input_error(&e.to_string()),
    };
    if ctx.wants_json() {
        if !ctx.emit_json(&summary) {
            return EXIT_INPUT;
        }
    } else {
        let mut s = String::new();
        for d in &summary.diffs {
            let _ = writeln!(s, "mismatch {d}");
        }
        let _ = writeln!(s, "{}/{} matrices match", summary.matched, summary.total);
        ctx.text(&s);
    }
    if summary.all_match() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_export_dot(ctx: &mut Ctx, spec: &str, path: Option<&Path>) -> u8 {
    let g = match load_graph(spec) {
        Ok(g) => g,
        Err(e) => return ctx.input_error(&e),
    };
    let dot = to_dot(&g);
    match path {
        Some(p) => {
            if let Err(e) = fs::write(p, dot) {
                return ctx.input_error(&format!("cannot write {}: {e}", p.display()));
            }
        }
        None => ctx.text(&dot),
    }
    EXIT_PASS
}

fn cmd_builtin(ctx: &mut Ctx, name: &str) -> u8 {
    let g = match name
        .parse::<TopologyId>()
        .and_then(|id| id.build())
    {
        Ok(g) => g,
        Err(e) => return ctx.input_error(&e.to_string()),
    };
    match ctx.json.clone().as_deref() {
        Some(path) if path != "-" => {
            if let Err(e) = fs::write(path, to_json(&g)) {
                return ctx.input_error(&format!("cannot write {path}: {e}"));
            }
        }
        _ => ctx.text(&to_json(&g)),
    }
    EXIT_PASS
}

#[derive(Serialize)]
struct GraphDoc<'a>(#[serde(serialize_with = "serialize_graph")] &'a ValiseGraph);

/// Graph in the file layout as a JSON value.
pub fn graph_value(g: &ValiseGraph) -> serde_json::Value {
    serde_json::to_value(GraphDoc(g)).expect("serializable")
}
