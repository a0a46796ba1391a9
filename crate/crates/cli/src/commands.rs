use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use nullcore::analysis::{analyze as analyze_graph, core_split, slim_reduce};
use nullcore::graph::{
    gen_complete, gen_cycle, gen_path, gen_random_graph, gen_random_tree, gen_star,
    parse_edge_list, to_dot, to_edge_list,
};
use nullcore::minimal_config::is_minimal_configuration;
use nullcore::perturbation::{apply_and_report, greedy_densify, safe_additions, PreserveMode};
use nullcore::trees::pendant_reduction;
use nullcore::verify::{run_trial, Suite, SuiteConfig, SuiteSummary};
use nullcore::{Error, Graph, VertexProvenance};

pub const USAGE: u8 = 1;
pub const PARSE: u8 = 2;
pub const PRECONDITION: u8 = 3;
pub const COUNTEREXAMPLE: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Output still worth printing, e.g. a summary listing counterexamples.
    pub stdout: Option<String>,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            stdout: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) => USAGE,
            Error::SlimReductionFailed(_) => COUNTEREXAMPLE,
            _ => PRECONDITION,
        };
        Failure::new(code, e.to_string())
    }
}

pub enum Kind {
    Path,
    Cycle,
    Star,
    Complete,
    Tree,
    Random,
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(PARSE, format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| Failure::new(PARSE, format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, w)| [u, w]).collect();
    json!({ "n": g.n(), "m": g.m(), "edges": edges })
}

fn provenance_json(p: &VertexProvenance) -> Value {
    json!(p.origins())
}

fn require_independent_core(g: &Graph) -> Result<(), Failure> {
    let (_, split) = core_split(g);
    match g.first_internal_edge(&split.cv) {
        Some((u, w)) => Err(Error::NonIndependentCore(u, w).into()),
        None => Ok(()),
    }
}

pub fn analyze(path: &Path, dot: bool) -> Result<String, Failure> {
    let g = load(path)?;
    let report = analyze_graph(&g);
    if dot {
        Ok(to_dot(&g, Some(&report.partition)))
    } else {
        Ok(pretty(&report.to_json()))
    }
}

pub fn reduce(path: &Path, slim: bool) -> Result<String, Failure> {
    let g = load(path)?;
    let out = if slim {
        let (_, split) = core_split(&g);
        let (h, prov) = slim_reduce(&g)?;
        json!({
            "mode": "slim",
            "graph": graph_json(&h),
            "provenance": provenance_json(&prov),
            "removed": split.cfvr,
        })
    } else {
        let trace = pendant_reduction(&g)?;
        let remainder = Graph::empty(trace.isolated_remainder.len());
        let prov = VertexProvenance::from_vertices(trace.isolated_remainder.iter().copied());
        json!({
            "mode": "pendant",
            "graph": graph_json(&remainder),
            "provenance": provenance_json(&prov),
            "trace": trace,
        })
    };
    Ok(pretty(&out))
}

pub fn perturb(path: &Path, mode: PreserveMode, densify: bool) -> Result<String, Failure> {
    let g = load(path)?;
    require_independent_core(&g)?;
    if !densify {
        let safe: Vec<Value> = safe_additions(&g, mode)
            .iter()
            .map(|e| apply_and_report(&g, e).map(|r| r.to_json()))
            .collect::<Result<_, _>>()?;
        return Ok(pretty(&json!({ "preserve": mode.as_str(), "safe": safe })));
    }
    let d = greedy_densify(&g, mode);
    let added: Vec<[usize; 2]> = d.added.iter().map(|&(u, w)| [u, w]).collect();
    let out = pretty(&json!({
        "preserve": mode.as_str(),
        "added": added,
        "violated_at": d.violated_at,
        "graph": graph_json(&d.graph),
    }));
    match d.violated_at {
        None => Ok(out),
        Some(step) => Err(Failure {
            stdout: Some(out),
            ..Failure::new(
                COUNTEREXAMPLE,
                format!("property {} lost at step {step}", mode.as_str()),
            )
        }),
    }
}

pub fn mc(path: &Path) -> Result<String, Failure> {
    let g = load(path)?;
    Ok(pretty(&is_minimal_configuration(&g).to_json()))
}

fn parse_probability(p: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::new(USAGE, format!("probability {p:?} is not of the form num/den"));
    let (num, den) = p.split_once('/').ok_or_else(bad)?;
    let num: u64 = num.trim().parse().map_err(|_| bad())?;
    let den: u64 = den.trim().parse().map_err(|_| bad())?;
    Ok((num, den))
}

pub fn generate(kind: Kind, n: usize, seed: u64, p: &str) -> Result<String, Failure> {
    let g = match kind {
        Kind::Path => gen_path(n),
        Kind::Cycle => gen_cycle(n),
        Kind::Star => gen_star(n),
        Kind::Complete => gen_complete(n),
        Kind::Tree => gen_random_tree(n, seed),
        Kind::Random => {
            let (num, den) = parse_probability(p)?;
            gen_random_graph(n, num, den, seed)
        }
    }
    .map_err(|e| Failure::new(USAGE, e.to_string()))?;
    Ok(to_edge_list(&g))
}

fn thread_count() -> Result<Option<usize>, Failure> {
    match std::env::var("NULLCORE_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(Failure::new(
                USAGE,
                format!("NULLCORE_THREADS={v:?} is not a positive integer"),
            )),
        },
    }
}

pub fn verify(
    suite: Suite,
    max_n: usize,
    trials: usize,
    seed: u64,
    out: &Path,
) -> Result<String, Failure> {
    let cfg = SuiteConfig {
        suite,
        max_n,
        trials,
        seed,
    };
    cfg.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = thread_count()? {
        pool = pool.num_threads(k);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::new(USAGE, format!("thread pool: {e}")))?;
    let results = pool.install(|| {
        cfg.plan()
            .par_iter()
            .map(|&(s, t)| run_trial(&cfg, s, t))
            .collect()
    });
    let summary = SuiteSummary::from_trials(cfg, results);
    for ((s, name), t) in &summary.tallies {
        eprintln!(
            "{:<14} {:<50} pass {:>5}  fail {:>5}  skip {:>5}",
            s.as_str(),
            name,
            t.passed,
            t.failed,
            t.skipped
        );
    }
    let text = pretty(&summary.to_json());
    if summary.passed() {
        return Ok(text);
    }
    fs::create_dir_all(out)
        .map_err(|e| Failure::new(USAGE, format!("{}: {e}", out.display())))?;
    for c in &summary.counterexamples {
        let file = out.join(c.file_name());
        let body = format!("# failed: {}\n{}", c.checks.join(", "), c.edge_list());
        fs::write(&file, body)
            .map_err(|e| Failure::new(USAGE, format!("{}: {e}", file.display())))?;
    }
    Err(Failure {
        stdout: Some(text),
        ..Failure::new(
            COUNTEREXAMPLE,
            format!(
                "{} counterexample(s) written to {}",
                summary.counterexamples.len(),
                out.display()
            ),
        )
    })
}
