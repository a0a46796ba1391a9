//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! counts and elapsed time; the process exits non-zero if any fails.
//! All checks are exact; the only tolerances are the wall-clock limits.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use nullcore::analysis::{
    classify_vertices, core_split, core_vertices_by_deletion, kernel_basis, nullity,
    single_core_neighbour_violations, verify_block_theorems, VertexClass,
};
use nullcore::graph::{
    gen_cycle, gen_path, gen_random_bipartite, gen_random_graph, gen_random_tree, to_edge_list,
    SeededRng,
};
use nullcore::minimal_config::{bipartite_parity_check, is_minimal_configuration};
use nullcore::perturbation::{
    apply_and_report, candidate_edges, greedy_densify, verify_cv_ncv_theorem, PreserveMode,
    Preserved, Snapshot, TypePair,
};
use nullcore::trees::{
    cfvr_perfect_matching, incidence_rank_check, inverse_subdivision, matching_number,
    pendant_pair_check, subdivision_char_poly_identity, tree_nullity_identity,
};
use nullcore::Graph;

/// Failures collected by one criterion; the first few offending graphs are
/// kept for the report.
#[derive(Default)]
struct Failures {
    count: usize,
    examples: Vec<String>,
}

impl Failures {
    fn record(&mut self, what: &str, g: &Graph) {
        self.count += 1;
        if self.examples.len() < 3 {
            self.examples
                .push(format!("{what}:\n{}", to_edge_list(g).trim_end()));
        }
    }

    fn expect(&mut self, holds: bool, what: &str, g: &Graph) {
        if !holds {
            self.record(what, g);
        }
    }
}

struct Outcome {
    detail: String,
    failures: Failures,
}

fn singular_trees(count: usize, lo: usize, hi: usize, rng: &mut SeededRng) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.range_inclusive(lo, hi);
        let t = gen_random_tree(n, rng.next_u64()).unwrap();
        if nullity(&t) > 0 {
            out.push(t);
        }
    }
    out
}

/// Random graphs on `2..=max_n` vertices that are singular with independent
/// core vertices.
fn independent_core_graphs(count: usize, max_n: usize, rng: &mut SeededRng) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.range_inclusive(2, max_n);
        let g = gen_random_graph(n, 1, 3, rng.next_u64()).unwrap();
        let (kernel, split) = core_split(&g);
        if kernel.nullity() > 0 && split.independent_cv {
            out.push(g);
        }
    }
    out
}

fn fixtures() -> Outcome {
    let mut f = Failures::default();
    let p4 = gen_path(4).unwrap();
    f.expect(nullity(&p4) == 0, "P4 nullity", &p4);

    let c4 = gen_cycle(4).unwrap();
    let part = classify_vertices(&c4);
    f.expect(part.nullity == 2 && part.cv == [0, 1, 2, 3], "C4 core", &c4);

    let p7 = gen_path(7).unwrap();
    let k = kernel_basis(&p7);
    let expected: Vec<BigInt> = [1, 0, -1, 0, 1, 0, -1].map(BigInt::from).to_vec();
    f.expect(k.vectors() == [expected], "P7 kernel", &p7);
    f.expect(classify_vertices(&p7).cv == [0, 2, 4, 6], "P7 core", &p7);

    let c6 = gen_cycle(6).unwrap();
    let part = classify_vertices(&c6);
    f.expect(
        part.nullity == 0 && part.classes.iter().all(|&c| c == VertexClass::CfvUpp),
        "C6 classes",
        &c6,
    );
    for n in [8, 12] {
        let c = gen_cycle(n).unwrap();
        f.expect(nullity(&c) == 2, "C8/C12 nullity", &c);
    }
    Outcome {
        detail: "P4, C4, P7, C6, C8, C12".into(),
        failures: f,
    }
}

fn tree_identity() -> Outcome {
    let mut f = Failures::default();
    let mut rng = SeededRng::new(0x7ee5);
    for _ in 0..500 {
        let n = rng.range_inclusive(2, 15);
        let t = gen_random_tree(n, rng.next_u64()).unwrap();
        f.expect(tree_nullity_identity(&t).unwrap().all_equal, "nullity identity", &t);
    }
    Outcome {
        detail: "500 random trees".into(),
        failures: f,
    }
}

fn pendant_pairs() -> Outcome {
    let mut f = Failures::default();
    let mut rng = SeededRng::new(0x9e4d);
    let trees = singular_trees(300, 2, 15, &mut rng);
    let mut removals = 0;
    for t in &trees {
        for w in t.end_vertices() {
            removals += 1;
            let c = pendant_pair_check(t, w).unwrap();
            f.expect(c.nullity_preserved && c.types_preserved, "pendant pair removal", t);
        }
    }
    Outcome {
        detail: format!("300 singular trees, {removals} pendant-pair removals"),
        failures: f,
    }
}

fn block_structure() -> Outcome {
    let mut f = Failures::default();
    let mut rng = SeededRng::new(0xb10c);
    let mut graphs = singular_trees(300, 2, 12, &mut rng);
    graphs.extend(independent_core_graphs(200, 12, &mut rng));
    let mut per_check: Vec<(String, usize)> = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let family = if i < 300 { "tree" } else { "graph" };
        let mut checks = verify_block_theorems(g).unwrap();
        let split = core_split(g).1;
        checks.push(nullcore::analysis::TheoremCheck::new(
            "no_vertex_with_single_core_neighbour",
            single_core_neighbour_violations(g, &split.cv).is_empty(),
            serde_json::Value::Null,
        ));
        for c in checks.into_iter().filter(|c| !c.holds) {
            let key = format!("{family}:{}", c.name);
            match per_check.iter_mut().find(|(k, _)| *k == key) {
                Some((_, n)) => *n += 1,
                None => per_check.push((key.clone(), 1)),
            }
            f.record(&key, g);
        }
    }
    let summary: Vec<String> = per_check.iter().map(|(k, n)| format!("{k} x{n}")).collect();
    Outcome {
        detail: if summary.is_empty() {
            "300 singular trees + 200 independent-core graphs".into()
        } else {
            format!("failed checks: {}", summary.join(", "))
        },
        failures: f,
    }
}

fn subdivisions_and_parity() -> Outcome {
    let mut f = Failures::default();
    let mut rng = SeededRng::new(0x5bd1);
    for _ in 0..200 {
        let n = rng.range_inclusive(1, 12);
        let t = gen_random_tree(n, rng.next_u64()).unwrap();
        let (s, _) = t.subdivision().unwrap();
        let part = classify_vertices(&s);
        f.expect(part.nullity == 1, "subdivision nullity", &t);
        f.expect(is_minimal_configuration(&s).is_mc, "subdivision is MC", &t);
        f.expect(
            matches!(inverse_subdivision(&s), Ok(Some((back, _))) if back == t),
            "inverse subdivision",
            &t,
        );
        f.expect(
            matching_number(&s).unwrap() == part.ncv.len(),
            "matching number equals |N(CV)|",
            &t,
        );
        f.expect(
            part.ncv.iter().all(|&v| part.classes[v] == VertexClass::CfvUpp),
            "N(CV) vertices are upper",
            &t,
        );
        f.expect(
            incidence_rank_check(&t).unwrap().rank_b + 1 == n,
            "incidence rank",
            &t,
        );
        if n <= 8 {
            f.expect(
                subdivision_char_poly_identity(&t).unwrap(),
                "char poly identity",
                &t,
            );
        }
    }
    for _ in 0..200 {
        let n1 = rng.range_inclusive(1, 7);
        let n2 = rng.range_inclusive(0, 7);
        let g = gen_random_bipartite(n1, n2, 1, 2, rng.next_u64()).unwrap();
        let p = bipartite_parity_check(&g).unwrap();
        f.expect(p.same_parity && p.nullity == nullity(&g), "bipartite parity", &g);
    }
    Outcome {
        detail: "200 subdivided trees, 200 bipartite graphs".into(),
        failures: f,
    }
}

fn remote_matching() -> Outcome {
    let mut f = Failures::default();
    let mut rng = SeededRng::new(0x3a7c);
    for t in singular_trees(300, 2, 15, &mut rng) {
        f.expect(
            cfvr_perfect_matching(&t).unwrap().is_some(),
            "perfect matching on CFV_R",
            &t,
        );
    }
    Outcome {
        detail: "300 singular trees".into(),
        failures: f,
    }
}

fn perturbations() -> Outcome {
    let mut f = Failures::default();
    let mut rng = SeededRng::new(0xed6e);
    let (mut cfv_cases, mut cv_ncv_met, mut cv_ncv_unmet) = (0, 0, 0);
    for g in independent_core_graphs(200, 10, &mut rng) {
        for e in candidate_edges(&g) {
            if e.type_pair.is_cfv_pair() {
                cfv_cases += 1;
                let r = apply_and_report(&g, &e).unwrap();
                f.expect(r.nullity_iff_cv == Some(true), "nullity kept iff core set kept", &g);
                f.expect(
                    r.nullity_implies_same_nullspace == Some(true),
                    "kept nullity keeps nullspace and labelling",
                    &g,
                );
            } else if e.type_pair == TypePair::CvNcv {
                let r = verify_cv_ncv_theorem(&g, &e).unwrap();
                if r.hypothesis_met {
                    cv_ncv_met += 1;
                    f.expect(r.holds(), "CV-NCV addition with labelling kept", &g);
                } else {
                    cv_ncv_unmet += 1;
                }
            }
        }
    }
    Outcome {
        detail: format!(
            "{cfv_cases} cfv-cfv additions, {cv_ncv_met} CV-NCV with labelling kept \
             ({cv_ncv_unmet} not kept)"
        ),
        failures: f,
    }
}

fn densification() -> Outcome {
    let mut f = Failures::default();
    let mut rng = SeededRng::new(0xde75);
    let mut steps = 0;
    for g in independent_core_graphs(50, 9, &mut rng) {
        let origin = Snapshot::of(&g);
        for mode in [PreserveMode::Nullity, PreserveMode::CvSet, PreserveMode::Nullspace] {
            let d = greedy_densify(&g, mode);
            f.expect(d.violated_at.is_none(), "densify reported a violation", &g);
            // replay every step independently of the inline check
            let mut h = g.clone();
            for &(u, w) in &d.added {
                h = h.add_edge(u, w).unwrap();
                steps += 1;
                f.expect(
                    Preserved::between(&origin, &Snapshot::of(&h)).get(mode),
                    mode.as_str(),
                    &g,
                );
            }
            f.expect(h == d.graph, "replayed graph differs", &g);
        }
    }
    Outcome {
        detail: format!("50 bases x 3 modes, {steps} steps replayed"),
        failures: f,
    }
}

fn core_equivalence() -> Outcome {
    let mut f = Failures::default();
    let mut rng = SeededRng::new(0xc0de);
    let probabilities = [(1, 4), (1, 2), (3, 4)];
    let count = 2100;
    for i in 0..count {
        let n = 1 + i % 7;
        let (num, den) = probabilities[rng.below(3) as usize];
        let g = gen_random_graph(n, num, den, rng.next_u64()).unwrap();
        f.expect(
            core_split(&g).1.cv == core_vertices_by_deletion(&g),
            "core by support vs deletion",
            &g,
        );
    }
    Outcome {
        detail: format!("{count} random graphs on 1..=7 vertices"),
        failures: f,
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("fixtures", 1, fixtures),
        ("tree nullity identity", 30, tree_identity),
        ("pendant pair removal", 60, pendant_pairs),
        ("core-labelled block structure", 120, block_structure),
        ("subdivisions and bipartite parity", 120, subdivisions_and_parity),
        ("remote forest matching", 30, remote_matching),
        ("edge additions", 300, perturbations),
        ("densification soundness", 60, densification),
        ("core vertices by support and deletion", 120, core_equivalence),
    ];
    let mut all_passed = true;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let passed = outcome.failures.count == 0 && in_time;
        all_passed &= passed;
        println!(
            "criterion {} {:<40} {} ({}; {} failure(s); {:.2}s of {}s)",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            outcome.failures.count,
            elapsed.as_secs_f64(),
            limit,
        );
        for ex in &outcome.failures.examples {
            println!("    {}", ex.replace('\n', "\n    "));
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
