//! Command-line front end; [`run_cli`] returns the exit status and the
//! text to print so that it can be tested without spawning a process.

use std::fmt::Write as _;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::cardcsp::{parse_csp, solve_csp_traced, CountSet, CspInstance};
use crate::classify::{classify_pattern, route_for, Route, StructureClass};
use crate::engine::{solve_dispatch_with, Decision, DispatchOptions};
use crate::error::Error;
use crate::gadgets::{
    formula_library, gen_matched_reach, library_formula, parse_mreach, reduce_reach_aa, reduce_reach_aaa,
    reduce_reach_eaa, Target, LIBRARY_SOURCES,
};
use crate::logic::{parse_formula, Formula, Mode};
use crate::oracles::{oracle_csp, oracle_models, oracle_saturation, oracle_wsat};
use crate::saturation::{solve_saturation_traced, PatternGraph};
use crate::structures::{graph_view, load_structure, Graph, GraphKind, Structure};
use crate::wsat::{parse_wcnf, solve_1wsat, solve_wsat_le_searchtree, Clause, Lit, WcnfInstance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "weso", version, about = "Weighted ESO model checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complexity bucket and route of a pattern.
    Classify {
        #[arg(long)]
        mode: Mode,
        /// Quantifier word over {a, e}; empty for no first-order quantifiers.
        #[arg(long, default_value = "")]
        pattern: String,
        #[arg(long, default_value = "arbitrary")]
        class: StructureClass,
        #[arg(long)]
        json: bool,
    },
    /// Decide an instance with the dispatching engine or a direct solver.
    Solve(SolveArgs),
    /// Decide a formula instance by brute force.
    Oracle {
        #[command(flatten)]
        formula: FormulaSource,
        #[arg(long)]
        structure: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Apply a reachability reduction to a matched-reach instance.
    Reduce {
        #[arg(long, value_enum)]
        kind: ReduceKind,
        #[arg(long)]
        instance: String,
    },
    /// Compare solvers against the oracles on small instances.
    Selftest {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct FormulaSource {
    /// File holding a formula.
    #[arg(long)]
    formula: Option<String>,
    /// Name of a library formula.
    #[arg(long)]
    library: Option<String>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    formula: FormulaSource,
    /// Pattern graph text, solved directly by the saturation solver.
    #[arg(long, conflicts_with_all = ["formula", "library", "csp", "wcnf"])]
    pattern: Option<String>,
    /// CSP file, solved directly.
    #[arg(long, conflicts_with_all = ["formula", "library", "wcnf"])]
    csp: Option<String>,
    /// Weighted CNF file, solved directly.
    #[arg(long, conflicts_with_all = ["formula", "library"])]
    wcnf: Option<String>,
    #[arg(long)]
    structure: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    route: Option<Route>,
    #[arg(long)]
    class: Option<StructureClass>,
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Seeded matched-reach instance.
    Mreach {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "yes")]
        target: TargetArg,
    },
    /// Seeded random basic graph.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TargetArg {
    Yes,
    No,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReduceKind {
    Aa,
    Aaa,
    Eaa,
}

/// Failure of a subcommand: exit status and message.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), format!("error: {e}\n"))
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::ArityMismatch { .. } | Error::OutOfRange { .. } | Error::Invalid(_) => EXIT_PARSE,
        Error::OracleBudget { .. } => EXIT_BUDGET,
        _ => EXIT_UNSUPPORTED,
    }
}

type CmdResult = Result<(i32, String), Failure>;

/// Runs the command line `args` (program name first).
pub fn run_cli(args: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let result = match cli.command {
        Command::Classify {
            mode,
            pattern,
            class,
            json,
        } => classify_cmd(mode, &pattern, class, json),
        Command::Solve(a) => solve_cmd(a),
        Command::Oracle {
            formula,
            structure,
            k,
            json,
        } => oracle_cmd(&formula, &structure, k, json),
        Command::Gen { what } => gen_cmd(what),
        Command::Reduce { kind, instance } => reduce_cmd(kind, &instance),
        Command::Selftest { max_n, max_k, seed } => Ok(selftest_cmd(max_n, max_k, seed)),
    };
    match result {
        Ok(r) => r,
        Err(Failure(code, msg)) => (code, msg),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("error: cannot read `{path}`: {e}\n")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn classify_cmd(mode: Mode, word: &str, class: StructureClass, json: bool) -> CmdResult {
    if let Some(c) = word.chars().find(|&c| c != 'a' && c != 'e') {
        return Err(Failure(
            EXIT_PARSE,
            format!("error: pattern letter `{c}` is not `a` or `e`\n"),
        ));
    }
    let label = classify_pattern(mode, word, class);
    let route = route_for(mode, word, class);
    let out = if json {
        json!({ "mode": mode, "pattern": word, "class": class, "label": label.to_string(), "route": route }).to_string()
            + "\n"
    } else {
        format!("{label}\nroute={route}\n")
    };
    Ok((EXIT_OK, out))
}

fn load_formula(src: &FormulaSource) -> Result<Option<Formula>, Failure> {
    match (&src.formula, &src.library) {
        (Some(path), _) => {
            let text = read(path)?;
            let body: String = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Some(parse_formula(&body)?))
        }
        (None, Some(name)) => library_formula(name).map(Some).ok_or_else(|| {
            let names: Vec<&str> = LIBRARY_SOURCES.iter().map(|(n, _)| *n).collect();
            Failure(
                EXIT_USAGE,
                format!("error: unknown library formula `{name}`; known: {}\n", names.join(", ")),
            )
        }),
        (None, None) => Ok(None),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure(EXIT_USAGE, format!("error: missing --{flag}\n")))
}

fn load_structure_file(path: &str) -> Result<Structure, Failure> {
    Ok(load_structure(&read(path)?)?)
}

fn render_decision(d: &Decision, trace: bool, json: bool) -> String {
    if json {
        return json!({ "answer": d.answer, "route": d.route, "label": d.label.to_string(), "stats": d.stats })
            .to_string()
            + "\n";
    }
    let mut out = format!(
        "{} (route={})\nlabel={} class={}\n",
        yes_no(d.answer),
        d.route,
        d.label,
        d.class
    );
    if trace {
        if let Some(case) = &d.stats.case {
            let _ = writeln!(out, "case: {case}");
        }
        let _ = writeln!(out, "nodes={} disjuncts={}", d.stats.nodes, d.stats.disjuncts);
    }
    out
}

fn direct(answer: bool, solver: &str, case: Option<String>, trace: bool, json: bool) -> String {
    if json {
        return json!({ "answer": answer, "solver": solver, "case": case }).to_string() + "\n";
    }
    let mut out = format!("{} (solver={solver})\n", yes_no(answer));
    if let (true, Some(c)) = (trace, case) {
        let _ = writeln!(out, "case: {c}");
    }
    out
}

fn solve_cmd(a: SolveArgs) -> CmdResult {
    if let Some(path) = &a.csp {
        let mut inst: CspInstance = parse_csp(&read(path)?)?;
        if let Some(k) = a.k {
            inst.k = k;
        }
        let (ans, trace) = solve_csp_traced(&inst);
        return Ok((EXIT_OK, direct(ans, "csp", Some(trace.to_string()), a.trace, a.json)));
    }
    if let Some(path) = &a.wcnf {
        let mut w: WcnfInstance = parse_wcnf(&read(path)?)?;
        if let Some(k) = a.k {
            w.k = k;
        }
        let (ans, solver, case) = if w.max_width() <= 1 {
            (solve_1wsat(&w)?, "1wsat", None)
        } else if w.mode == Mode::Le {
            let (ans, st) = solve_wsat_le_searchtree(&w)?;
            (
                ans,
                "search-tree",
                Some(format!("levels={:?} nodes={}", st.level_sizes, st.nodes)),
            )
        } else {
            return Err(Failure(
                EXIT_UNSUPPORTED,
                format!(
                    "error: unsupported: no direct solver for width {} with mode {}\n",
                    w.max_width(),
                    w.mode
                ),
            ));
        };
        return Ok((EXIT_OK, direct(ans, solver, case, a.trace, a.json)));
    }
    let structure = load_structure_file(&need(a.structure.clone(), "structure")?)?;
    let k = need(a.k, "k")?;
    if let Some(text) = &a.pattern {
        let p: PatternGraph = text.parse()?;
        let g = graph_view(&structure)?;
        let (ans, trace) = solve_saturation_traced(p, &g, k)?;
        return Ok((
            EXIT_OK,
            direct(ans, "saturation", Some(trace.to_string()), a.trace, a.json),
        ));
    }
    let f = need(load_formula(&a.formula)?, "formula or --library")?;
    let opts = DispatchOptions {
        route: a.route,
        class: a.class,
        ..DispatchOptions::default()
    };
    let d = solve_dispatch_with(&f, &structure, k, opts)?;
    Ok((EXIT_OK, render_decision(&d, a.trace, a.json)))
}

fn oracle_cmd(src: &FormulaSource, structure: &str, k: usize, json: bool) -> CmdResult {
    let f = need(load_formula(src)?, "formula or --library")?;
    let s = load_structure_file(structure)?;
    let opts = DispatchOptions {
        route: Some(Route::OracleOnly),
        ..DispatchOptions::default()
    };
    let d = solve_dispatch_with(&f, &s, k, opts)?;
    Ok((EXIT_OK, render_decision(&d, false, json)))
}

fn gen_cmd(what: GenCommand) -> CmdResult {
    match what {
        GenCommand::Mreach { n, k, seed, target } => {
            let target = match target {
                TargetArg::Yes => Target::Yes,
                TargetArg::No => Target::No,
            };
            Ok((EXIT_OK, gen_matched_reach(n, k, seed, target)?.to_text()))
        }
        GenCommand::Graph { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure(
                    EXIT_USAGE,
                    format!("error: edge probability {p} not in [0, 1]\n"),
                ));
            }
            Ok((
                EXIT_OK,
                random_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).to_text(),
            ))
        }
    }
}

fn reduce_cmd(kind: ReduceKind, path: &str) -> CmdResult {
    let inst = parse_mreach(&read(path)?)?;
    let (g, k) = match kind {
        ReduceKind::Aa => reduce_reach_aa(&inst)?,
        ReduceKind::Aaa => reduce_reach_aaa(&inst)?,
        ReduceKind::Eaa => reduce_reach_eaa(&inst)?,
    };
    Ok((EXIT_OK, format!("# k {k}\n{}", g.to_text())))
}

fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(GraphKind::Basic, n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[derive(Default)]
struct Tally {
    lines: Vec<String>,
    failed: bool,
}

impl Tally {
    fn record(&mut self, name: &str, checked: usize, mismatches: Vec<String>) {
        let status = if mismatches.is_empty() { "ok" } else { "FAIL" };
        self.lines.push(format!(
            "{name}: {checked} checked, {} mismatches [{status}]",
            mismatches.len()
        ));
        for m in mismatches.iter().take(5) {
            self.lines.push(format!("  {m}"));
        }
        self.failed |= !mismatches.is_empty();
    }
}

fn selftest_cmd(max_n: usize, max_k: usize, seed: u64) -> (i32, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let max_n = max_n.clamp(2, 12);

    let (mut checked, mut bad) = (0, Vec::new());
    for p in PatternGraph::all() {
        for _ in 0..4 {
            let n = rng.gen_range(2..=max_n);
            let g = random_graph(n, rng.gen_range(0.0..=1.0), &mut rng);
            for k in 0..=max_k {
                checked += 1;
                let got = solve_saturation_traced(p, &g, k).map(|r| r.0);
                let want = oracle_saturation(p, &g, k);
                if got != want {
                    bad.push(format!("{p} k={k} {}", g.to_text().replace('\n', "; ")));
                }
            }
        }
    }
    tally.record("saturation", checked, bad);

    let (mut checked, mut bad) = (0, Vec::new());
    for c in CountSet::all() {
        for d in CountSet::all() {
            for _ in 0..4 {
                let n = rng.gen_range(0..=max_n.min(8));
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                for k in 0..=max_k {
                    let inst = CspInstance::new(n, c, d, pairs.iter().copied(), CountSet::BINARY, k)
                        .expect("generated pairs are valid");
                    checked += 1;
                    if Ok(solve_csp_traced(&inst).0) != oracle_csp(&inst) {
                        bad.push(inst.to_text().replace('\n', "; "));
                    }
                }
            }
        }
    }
    tally.record("csp", checked, bad);

    let (mut checked, mut bad) = (0, Vec::new());
    for _ in 0..2000 {
        let w = random_wcnf(&mut rng, max_k);
        checked += 1;
        let want = oracle_wsat(&w);
        let got = if w.max_width() <= 1 {
            solve_1wsat(&w)
        } else {
            solve_wsat_le_searchtree(&w).map(|r| r.0)
        };
        if got != want {
            bad.push(w.to_text().replace('\n', "; "));
        }
    }
    tally.record("wsat", checked, bad);

    let (mut checked, mut bad) = (0, Vec::new());
    for (name, f) in formula_library() {
        for _ in 0..6 {
            let n = rng.gen_range(1..=max_n.min(7));
            let s = random_graph(n, rng.gen_range(0.0..=1.0), &mut rng).to_structure();
            for k in 0..=max_k {
                checked += 1;
                let want = oracle_models(&f, &s, k);
                let got = solve_dispatch_with(&f, &s, k, DispatchOptions::default()).map(|d| d.answer);
                if got != want {
                    bad.push(format!("{name} k={k} {}", s.to_text().replace('\n', "; ")));
                }
            }
        }
    }
    tally.record("end-to-end", checked, bad);

    let code = if tally.failed { EXIT_FAIL } else { EXIT_OK };
    (code, tally.lines.join("\n") + "\n")
}

fn random_wcnf(rng: &mut impl Rng, max_k: usize) -> WcnfInstance {
    let vars = rng.gen_range(1..=10);
    let unit = rng.gen_bool(0.3);
    let d = if unit { 1 } else { rng.gen_range(1..=3) };
    let clauses: Vec<Clause> = (0..rng.gen_range(0..=12))
        .map(|_| {
            (0..rng.gen_range(1..=d))
                .map(|_| Lit {
                    var: rng.gen_range(0..vars),
                    positive: rng.gen_bool(0.6),
                })
                .collect()
        })
        .collect();
    let mode = if unit { Mode::ALL[rng.gen_range(0..3)] } else { Mode::Le };
    WcnfInstance::new(vars, clauses, d, rng.gen_range(0..=max_k), mode).expect("widths within d")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let mut v = vec!["weso".to_string()];
        v.extend(args.iter().map(|s| s.to_string()));
        run_cli(&v)
    }

    #[test]
    fn classify_output() {
        let (code, out) = run(&["classify", "--mode", "ge", "--pattern", "ae", "--class", "basic"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("InParaAC0\n"));
        let (code, out) = run(&["classify", "--mode", "le", "--pattern", "ae", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["route"], "OracleOnly");
        assert_eq!(run(&["classify", "--mode", "le", "--pattern", "ax"]).0, EXIT_PARSE);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(&["--help"]).0, EXIT_OK);
        assert_eq!(run(&["solve", "--library", "clique", "--k", "1"]).0, EXIT_USAGE);
    }
}
