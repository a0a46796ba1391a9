//! Randomized battery of structural checks. Each trial draws one graph from
//! a deterministic per-trial stream and evaluates every check that applies
//! to it, so trials can run in any order and be reassembled by index.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::analysis::{
    core_split, core_vertices_by_deletion, classify_vertices, single_core_neighbour_violations,
    slim_reduce, unicyclic_analysis, verify_block_theorems, VertexClass,
};
use crate::error::{Error, Result};
use crate::graph::{
    gen_random_bipartite, gen_random_graph, gen_random_tree, to_edge_list, Graph, SeededRng,
};
use crate::minimal_config::{
    bipartite_mc_slim_equivalence, bipartite_nullity1_structure, bipartite_parity_check,
    is_minimal_configuration,
};
use crate::perturbation::{
    apply_and_report, candidate_edges, greedy_densify, verify_cv_ncv_theorem, PreserveMode,
    TypePair,
};
use crate::trees::{
    cfvr_perfect_matching, incidence_rank_check, inverse_subdivision, is_mc_tree,
    matching_number, pendant_pair_check, subdivision_char_poly_identity, tree_nullity_identity,
};

/// Largest base tree for which the characteristic-polynomial identity of
/// its subdivision is checked.
const CHAR_POLY_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Trees,
    Bipartite,
    Subdivisions,
    Perturbations,
    Unicyclic,
    All,
}

impl Suite {
    pub const MEMBERS: [Suite; 5] = [
        Suite::Trees,
        Suite::Bipartite,
        Suite::Subdivisions,
        Suite::Perturbations,
        Suite::Unicyclic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Trees => "trees",
            Suite::Bipartite => "bipartite",
            Suite::Subdivisions => "subdivisions",
            Suite::Perturbations => "perturbations",
            Suite::Unicyclic => "unicyclic",
            Suite::All => "all",
        }
    }

    /// Concrete suites run for this selection.
    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::MEMBERS.to_vec(),
            s => vec![s],
        }
    }

    fn salt(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::MEMBERS
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.as_str() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 {
            return Err(Error::InvalidArgument("max_n must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(())
    }

    /// Every `(suite, trial)` pair in output order.
    pub fn plan(&self) -> Vec<(Suite, usize)> {
        self.suite
            .members()
            .into_iter()
            .flat_map(|s| (0..self.trials).map(move |t| (s, t)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// The check's hypothesis did not apply to this graph.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialResult {
    pub suite: Suite,
    pub trial: usize,
    pub graph: Graph,
    pub checks: Vec<(&'static str, Outcome)>,
}

impl TrialResult {
    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|(_, o)| *o == Outcome::Fail)
            .map(|(name, _)| *name)
            .collect()
    }
}

#[derive(Default)]
struct Checks(Vec<(&'static str, Outcome)>);

impl Checks {
    fn check(&mut self, name: &'static str, holds: bool) {
        self.0.push((name, if holds { Outcome::Pass } else { Outcome::Fail }));
    }

    /// `None` records a skip.
    fn conditional(&mut self, name: &'static str, verdict: Option<bool>) {
        match verdict {
            Some(holds) => self.check(name, holds),
            None => self.0.push((name, Outcome::Skip)),
        }
    }

    /// Folds many verdicts into one: fails if any fails, skips if none apply.
    fn all(&mut self, name: &'static str, verdicts: impl IntoIterator<Item = Option<bool>>) {
        let mut seen = false;
        for v in verdicts.into_iter().flatten() {
            if !v {
                self.check(name, false);
                return;
            }
            seen = true;
        }
        self.conditional(name, seen.then_some(true));
    }
}

fn trial_rng(cfg: &SuiteConfig, suite: Suite, trial: usize) -> SeededRng {
    let stream = (suite.salt() << 32) | trial as u64;
    let mut mix = SeededRng::new(cfg.seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    SeededRng::new(mix.next_u64())
}

/// Runs one trial of a concrete suite.
pub fn run_trial(cfg: &SuiteConfig, suite: Suite, trial: usize) -> TrialResult {
    assert!(suite != Suite::All, "run_trial needs a concrete suite");
    let mut rng = trial_rng(cfg, suite, trial);
    let mut checks = Checks::default();
    let graph = match suite {
        Suite::Trees => tree_trial(cfg, &mut rng, &mut checks),
        Suite::Bipartite => bipartite_trial(cfg, &mut rng, &mut checks),
        Suite::Subdivisions => subdivision_trial(cfg, &mut rng, &mut checks),
        Suite::Perturbations => perturbation_trial(cfg, trial, &mut rng, &mut checks),
        Suite::Unicyclic => unicyclic_trial(cfg, &mut rng, &mut checks),
        Suite::All => unreachable!(),
    };
    TrialResult {
        suite,
        trial,
        graph,
        checks: checks.0,
    }
}

fn order(rng: &mut SeededRng, lo: usize, max_n: usize) -> usize {
    rng.range_inclusive(lo.min(max_n), max_n)
}

fn common_checks(g: &Graph, checks: &mut Checks) {
    let (_, split) = core_split(g);
    checks.check(
        "core_by_support_matches_core_by_deletion",
        split.cv == core_vertices_by_deletion(g),
    );
    checks.conditional(
        "no_vertex_with_single_core_neighbour",
        split
            .independent_cv
            .then(|| single_core_neighbour_violations(g, &split.cv).is_empty()),
    );
}

fn block_checks(g: &Graph, checks: &mut Checks, singular: bool) {
    const NAMES: [&str; 5] = [
        "kernel_of_q_transpose_matches_nullity",
        "rank_q_below_core_size",
        "nullity_is_core_size_minus_rank_q",
        "q_full_column_rank_iff_nullity_is_cv_minus_ncv",
        "remote_block_nonsingular",
    ];
    match verify_block_theorems(g) {
        Ok(results) if singular => {
            for (name, r) in NAMES.iter().zip(results) {
                debug_assert_eq!(*name, r.name);
                checks.check(name, r.holds);
            }
        }
        _ => {
            for name in NAMES {
                checks.conditional(name, None);
            }
        }
    }
}

fn tree_trial(cfg: &SuiteConfig, rng: &mut SeededRng, checks: &mut Checks) -> Graph {
    let n = order(rng, 2, cfg.max_n);
    let g = gen_random_tree(n, rng.next_u64()).expect("n >= 1");
    let part = classify_vertices(&g);
    let singular = part.nullity > 0;

    checks.check(
        "tree_nullity_three_ways",
        tree_nullity_identity(&g).expect("tree").all_equal,
    );
    checks.conditional(
        "pendant_pair_removal_preserves_types",
        singular.then(|| {
            g.end_vertices().into_iter().all(|w| {
                let c = pendant_pair_check(&g, w).expect("end vertex");
                c.nullity_preserved && c.types_preserved
            })
        }),
    );
    checks.check("tree_has_independent_core", part.independent_cv);
    checks.conditional(
        "remote_forest_has_perfect_matching",
        singular.then(|| cfvr_perfect_matching(&g).expect("tree").is_some()),
    );
    checks.conditional(
        "slim_reduction_preserves_types",
        singular.then(|| slim_reduce(&g).is_ok()),
    );
    block_checks(&g, checks, singular);
    let mc = is_mc_tree(&g).expect("tree");
    checks.check("mc_tree_iff_subdivision", mc.characterizations_agree());
    checks.conditional(
        "mc_tree_matching_equals_core_neighbours",
        mc.by_definition.then_some(mc.matching_equals_ncv && mc.q_full_column_rank),
    );
    common_checks(&g, checks);
    g
}

fn bipartite_mc_checks(g: &Graph, checks: &mut Checks) {
    let mc = is_minimal_configuration(g);
    let applies = mc.is_mc && g.n() >= 2;
    checks.conditional("mc_is_connected", applies.then(|| g.is_connected()));
    let structure = if applies {
        let bip = g.is_bipartite().expect("bipartite");
        let (larger, smaller) = if bip.v1.len() >= bip.v2.len() {
            (bip.v1, bip.v2)
        } else {
            (bip.v2, bip.v1)
        };
        let part = classify_vertices(g);
        let upper = part.ncv.iter().all(|&v| part.classes[v] == VertexClass::CfvUpp);
        Some((part.cv == larger && mc.periphery == smaller, upper))
    } else {
        None
    };
    checks.conditional("bipartite_mc_core_is_larger_class", structure.map(|s| s.0));
    checks.conditional("bipartite_mc_core_neighbours_are_upper", structure.map(|s| s.1));
}

fn bipartite_trial(cfg: &SuiteConfig, rng: &mut SeededRng, checks: &mut Checks) -> Graph {
    let n = order(rng, 1, cfg.max_n);
    let n1 = rng.range_inclusive(0, n);
    let g = gen_random_bipartite(n1, n - n1, 1, 2, rng.next_u64()).expect("valid sizes");
    let parity = bipartite_parity_check(&g).expect("bipartite");
    checks.check("bipartite_rank_is_twice_biadjacency_rank", parity.rank_doubles);
    checks.check("bipartite_nullity_matches_order_parity", parity.same_parity);
    checks.conditional(
        "bipartite_nullity_one_structure",
        bipartite_nullity1_structure(&g).ok().map(|r| r.holds()),
    );
    let eq = bipartite_mc_slim_equivalence(&g).expect("bipartite");
    checks.conditional(
        "bipartite_mc_iff_slim_nullity_one",
        eq.hypothesis_met.then_some(eq.equal),
    );
    bipartite_mc_checks(&g, checks);
    common_checks(&g, checks);
    g
}

fn subdivision_trial(cfg: &SuiteConfig, rng: &mut SeededRng, checks: &mut Checks) -> Graph {
    let n = order(rng, 1, cfg.max_n);
    let t = gen_random_tree(n, rng.next_u64()).expect("n >= 1");
    let (s, _) = t.subdivision().expect("trees are connected");
    let part = classify_vertices(&s);

    let inc = incidence_rank_check(&t).expect("tree");
    checks.check("incidence_rank_is_n_minus_one", inc.rank_b + 1 == n);
    checks.check("subdivision_has_nullity_one", part.nullity == 1);
    checks.check(
        "subdivision_is_mc",
        is_minimal_configuration(&s).is_mc,
    );
    checks.check(
        "inverse_subdivision_round_trips",
        matches!(inverse_subdivision(&s), Ok(Some((back, _))) if back == t),
    );
    checks.check(
        "subdivision_matching_equals_core_neighbours",
        matching_number(&s).expect("tree") == part.ncv.len(),
    );
    checks.check(
        "subdivision_core_neighbours_are_upper",
        part.ncv.iter().all(|&v| part.classes[v] == VertexClass::CfvUpp),
    );
    checks.check("subdivision_is_mc_tree", is_mc_tree(&s).expect("tree").is_mc);
    checks.conditional(
        "subdivision_char_poly_identity",
        (n <= CHAR_POLY_MAX_N).then(|| subdivision_char_poly_identity(&t).expect("connected")),
    );
    checks.check(
        "subdivision_nullity_one_structure",
        bipartite_nullity1_structure(&s).is_ok_and(|r| r.holds()),
    );
    bipartite_mc_checks(&s, checks);
    common_checks(&s, checks);
    s
}

/// Random graph with independent core vertices, falling back to a tree when
/// a bounded number of draws finds none that is singular.
pub fn independent_core_base(n: usize, rng: &mut SeededRng) -> Graph {
    for _ in 0..64 {
        let g = gen_random_graph(n, 1, 3, rng.next_u64()).expect("valid probability");
        let (kernel, split) = core_split(&g);
        if kernel.nullity() > 0 && split.independent_cv {
            return g;
        }
    }
    gen_random_tree(n, rng.next_u64()).expect("n >= 1")
}

fn perturbation_trial(
    cfg: &SuiteConfig,
    trial: usize,
    rng: &mut SeededRng,
    checks: &mut Checks,
) -> Graph {
    let n = order(rng, 1, cfg.max_n);
    let g = if trial % 2 == 0 {
        gen_random_tree(n, rng.next_u64()).expect("n >= 1")
    } else {
        independent_core_base(n, rng)
    };
    let reports: Vec<_> = candidate_edges(&g)
        .iter()
        .map(|e| (e.type_pair, apply_and_report(&g, e).expect("valid candidate")))
        .collect();
    checks.all(
        "edge_addition_changes_nullity_by_at_most_two",
        reports.iter().map(|(_, r)| Some(r.within_rank_two_bound())),
    );
    checks.all(
        "cfv_addition_keeps_nullity_iff_core_set",
        reports.iter().map(|(_, r)| r.nullity_iff_cv),
    );
    checks.all(
        "cfv_addition_keeping_nullity_keeps_nullspace",
        reports.iter().map(|(_, r)| r.nullity_implies_same_nullspace),
    );
    checks.all(
        "cv_ncv_addition_keeping_labelling_moves_kernel",
        candidate_edges(&g)
            .iter()
            .filter(|e| e.type_pair == TypePair::CvNcv)
            .map(|e| {
                let r = verify_cv_ncv_theorem(&g, e).expect("independent core");
                r.hypothesis_met.then(|| r.holds())
            }),
    );
    // densifying rescans every candidate per step, so only some bases get it
    let densify = trial % 4 == 0;
    for (name, mode) in [
        ("densify_keeps_nullity", PreserveMode::Nullity),
        ("densify_keeps_core_set", PreserveMode::CvSet),
        ("densify_keeps_nullspace", PreserveMode::Nullspace),
    ] {
        checks.conditional(
            name,
            densify.then(|| greedy_densify(&g, mode).violated_at.is_none()),
        );
    }
    common_checks(&g, checks);
    g
}

const UNICYCLIC_CHECKS: [&str; 3] = [
    "cfv_on_4k_cycle_gives_independent_core",
    "all_core_4k_cycle_has_nullity_at_least_two",
    "non_4k_cycle_gives_independent_core",
];

fn unicyclic_trial(cfg: &SuiteConfig, rng: &mut SeededRng, checks: &mut Checks) -> Graph {
    let n = order(rng, 3, cfg.max_n.max(3));
    let tree = gen_random_tree(n, rng.next_u64()).expect("n >= 1");
    let non_edges: Vec<_> = tree.non_edges().collect();
    let (u, w) = non_edges[rng.below(non_edges.len() as u64) as usize];
    let g = tree.add_edge(u, w).expect("non-edge");
    let report = unicyclic_analysis(&g).expect("one extra edge on a tree");
    for c in &report.checks {
        let name = UNICYCLIC_CHECKS
            .iter()
            .find(|&&x| x == c.name)
            .expect("known unicyclic check");
        let met = c.witness["hypothesis_met"].as_bool().unwrap_or(true);
        checks.conditional(name, met.then_some(c.holds));
    }
    common_checks(&g, checks);
    g
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub suite: Suite,
    pub trial: usize,
    pub checks: Vec<&'static str>,
    pub graph: Graph,
}

impl Counterexample {
    /// File name used when dumping the graph.
    pub fn file_name(&self) -> String {
        format!("{}-trial{:05}.g", self.suite, self.trial)
    }

    pub fn edge_list(&self) -> String {
        to_edge_list(&self.graph)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSummary {
    pub config: SuiteConfig,
    /// Keyed by `(suite, check)`.
    pub tallies: BTreeMap<(Suite, &'static str), Tally>,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteSummary {
    /// Builds the summary from trial results in any order.
    pub fn from_trials(config: SuiteConfig, mut results: Vec<TrialResult>) -> Self {
        results.sort_by_key(|r| (r.suite, r.trial));
        let mut tallies: BTreeMap<(Suite, &'static str), Tally> = BTreeMap::new();
        let mut counterexamples = Vec::new();
        for r in results {
            for &(name, outcome) in &r.checks {
                let t = tallies.entry((r.suite, name)).or_default();
                match outcome {
                    Outcome::Pass => t.passed += 1,
                    Outcome::Fail => t.failed += 1,
                    Outcome::Skip => t.skipped += 1,
                }
            }
            let failed = r.failed_checks();
            if !failed.is_empty() {
                counterexamples.push(Counterexample {
                    suite: r.suite,
                    trial: r.trial,
                    checks: failed,
                    graph: r.graph,
                });
            }
        }
        Self {
            config,
            tallies,
            counterexamples,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .tallies
            .iter()
            .map(|((suite, name), t)| {
                json!({
                    "suite": suite.as_str(),
                    "check": name,
                    "passed": t.passed,
                    "failed": t.failed,
                    "skipped": t.skipped,
                })
            })
            .collect();
        let counterexamples: Vec<Value> = self
            .counterexamples
            .iter()
            .map(|c| {
                json!({
                    "suite": c.suite.as_str(),
                    "trial": c.trial,
                    "checks": c.checks,
                    "file": c.file_name(),
                    "n": c.graph.n(),
                    "m": c.graph.m(),
                })
            })
            .collect();
        json!({
            "suite": self.config.suite.as_str(),
            "max_n": self.config.max_n,
            "trials": self.config.trials,
            "seed": self.config.seed,
            "passed": self.passed(),
            "checks": checks,
            "counterexamples": counterexamples,
        })
    }
}

/// Runs every trial sequentially.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    cfg.validate()?;
    let results = cfg
        .plan()
        .into_iter()
        .map(|(s, t)| run_trial(cfg, s, t))
        .collect();
    Ok(SuiteSummary::from_trials(*cfg, results))
}
