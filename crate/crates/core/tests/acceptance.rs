//! End-to-end acceptance checks. Prints one `[PASS]` or `[FAIL]` line per
//! criterion and fails only if the set of failing criteria differs from
//! `KNOWN_RED`.
//!
//! Run with `cargo test -p circdim --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use circdim::constructions::{basis_t4, verify_construction_range, PRINTED_19};
use circdim::formulas::{formula_dim, literal_t4_statement};
use circdim::graph::{distance_bfs, distance_closed_form};
use circdim::lemmas::{check_lemma, find, registry, Verdict, REGISTRY_SIZE};
use circdim::resolve::is_resolving;
use circdim::solver::{
    brute_force_dim, brute_force_dim_below, exact_dim, SearchOptions, DEFAULT_ORACLE_BUDGET,
};
use circdim::CirculantGraph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criteria expected to fail, with the reason recorded in the project notes.
/// 6a: three registry lemmas have genuine counterexamples for k <= 3.
const KNOWN_RED: &[&str] = &["6a"];

const THEOREM_SWEEP_LIMIT: Duration = Duration::from_secs(15 * 60);
const CONSTRUCTION_LIMIT: Duration = Duration::from_millis(100);
const ABLATION_INSTANCES: usize = 100;
const ABLATION_SEED: u64 = 0x5eed_c1dc;

struct Ledger {
    red: BTreeSet<String>,
}

impl Ledger {
    fn record(&mut self, id: &str, ok: bool, what: &str, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {id:<3} {what}: {detail}");
        if !ok {
            self.red.insert(id.to_string());
        }
    }

    fn note(&self, id: &str, what: &str, detail: String) {
        println!("[INFO] {id:<3} {what}: {detail}");
    }
}

fn g(n: usize, t: usize) -> CirculantGraph {
    CirculantGraph::consecutive(n, t).unwrap()
}

fn oracle(graph: &CirculantGraph) -> usize {
    brute_force_dim(graph, DEFAULT_ORACLE_BUDGET).unwrap().dim
}

fn no_set_below(graph: &CirculantGraph, bound: usize) -> bool {
    brute_force_dim_below(graph, bound, DEFAULT_ORACLE_BUDGET)
        .unwrap()
        .is_none()
}

fn parallel() -> SearchOptions {
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get());
    SearchOptions::default().with_workers(workers)
}

fn criterion_1(l: &mut Ledger) {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for n in 10..=50 {
        let got = exact_dim(&g(n, 4), &parallel()).unwrap();
        let want = formula_dim(n, 4).unwrap();
        let basis_ok = is_resolving(&g(n, 4), &got.basis).unwrap().is_resolved();
        if got.dim != want || !basis_ok {
            mismatches.push((n, got.dim, want));
        }
    }
    let elapsed = start.elapsed();
    l.record(
        "1",
        mismatches.is_empty() && elapsed < THEOREM_SWEEP_LIMIT,
        "exact dim of C(n,±{1..4}) equals the residue formula, n in 10..=50",
        format!(
            "41 orders, mismatches {mismatches:?}, {:.2}s (limit {}s, tolerance 0)",
            elapsed.as_secs_f64(),
            THEOREM_SWEEP_LIMIT.as_secs()
        ),
    );
}

fn criterion_2(l: &mut Ledger) {
    let mut problems = Vec::new();
    for n in [5, 11] {
        let graph = g(n, 4);
        let r = basis_t4(n).unwrap();
        let witness_ok = r.verified && is_resolving(&graph, &r.basis).unwrap().is_resolved();
        if !witness_ok || r.basis.len() != 4 || !no_set_below(&graph, 4) {
            problems.push(format!("n={n} basis {:?}", r.basis));
        }
    }
    let graph = g(19, 4);
    let r = basis_t4(19).unwrap();
    let printed_distinct: BTreeSet<usize> = PRINTED_19.iter().map(|v| v % 19).collect();
    let flagged = r.anomaly.as_deref().is_some_and(|a| a.contains("duplicate"));
    if r.basis.len() != 4
        || !is_resolving(&graph, &r.basis).unwrap().is_resolved()
        || !no_set_below(&graph, 4)
        || !flagged
        || printed_distinct.len() != 3
    {
        problems.push(format!("n=19 basis {:?} anomaly {:?}", r.basis, r.anomaly));
    }
    l.record(
        "2",
        problems.is_empty(),
        "n = 5, 11, 19 have dimension exactly 4; printed n = 19 set flagged",
        if problems.is_empty() {
            format!("n=19 searched basis {:?}, printed {:?} has a duplicate mod 19", r.basis, PRINTED_19)
        } else {
            format!("{problems:?}")
        },
    );
}

fn criterion_3(l: &mut Ledger) {
    let mut failed = Vec::new();
    let mut slowest = Duration::ZERO;
    for residue in [9, 7] {
        for v in verify_construction_range(residue, 100).unwrap() {
            if !v.passed() {
                failed.push(v.n);
            }
        }
        // per-instance timing, serially, on the largest orders
        for k in [1, 50, 100] {
            let n = 8 * k + residue;
            let basis = if residue == 9 {
                circdim::constructions::upper_8k9(k)
            } else {
                circdim::constructions::upper_8k7()
            };
            let start = Instant::now();
            let ok = is_resolving(&g(n, 4), &basis).unwrap().is_resolved();
            slowest = slowest.max(start.elapsed());
            if !ok {
                failed.push(n);
            }
        }
    }
    l.record(
        "3",
        failed.is_empty() && slowest < CONSTRUCTION_LIMIT,
        "explicit 6-element bases for 8k+9 and 8k+7, k in 1..=100",
        format!(
            "200 orders up to n=809, failures {failed:?}, slowest single check {:.1}ms (limit {}ms)",
            slowest.as_secs_f64() * 1e3,
            CONSTRUCTION_LIMIT.as_millis()
        ),
    );
}

fn criterion_4(l: &mut Ledger) {
    let mut mismatches = Vec::new();
    for (t, lo) in [(2, 6), (3, 8)] {
        for n in lo..=40 {
            let got = oracle(&g(n, t));
            if Some(got) != formula_dim(n, t) {
                mismatches.push((n, t, got));
            }
        }
    }
    l.record(
        "4",
        mismatches.is_empty(),
        "brute force matches the t = 2 and t = 3 closed forms up to n = 40",
        format!("68 orders, mismatches {mismatches:?} (tolerance 0)"),
    );
}

fn criterion_5(l: &mut Ledger) {
    let mut general = Vec::new();
    let mut residue = Vec::new();
    let mut residue_checked = 0;
    for t in 2..=5 {
        for n in 2 * t + 2..=28 {
            let graph = g(n, t);
            if !no_set_below(&graph, t) {
                general.push((n, t));
            }
            let residue_rule = (0..=n / (2 * t)).any(|k| (t + 2..=2 * t + 1).contains(&(n - 2 * k * t)));
            if residue_rule {
                residue_checked += 1;
                if !no_set_below(&graph, t + 1) {
                    residue.push((n, t));
                }
            }
        }
    }
    l.record(
        "5",
        general.is_empty() && residue.is_empty(),
        "dim >= t for n >= 2t+2 and dim >= t+1 for residues t+2..=2t+1, t in 2..=5, n <= 28",
        format!(
            "violations {general:?} / {residue:?} over {residue_checked} residue-rule orders"
        ),
    );

    let probe: Vec<(usize, usize, usize)> = (2..=5)
        .map(|t| {
            let n = 2 * t + 1;
            (n, t, oracle(&g(n, t)))
        })
        .collect();
    let holds = probe.iter().all(|&(_, t, d)| d >= t);
    l.note(
        "5p",
        "relaxed order n = 2t+1 (not gating)",
        format!(
            "dim >= t {} at (n, t, dim) = {probe:?}; these graphs are complete",
            if holds { "holds" } else { "fails" }
        ),
    );
}

fn criterion_6(l: &mut Ledger) {
    let mut failing = Vec::new();
    let mut totals = (0, 0, 0, 0);
    for d in registry() {
        let report = check_lemma(d, 1..=3).unwrap();
        totals.0 += report.counts.pass;
        totals.1 += report.counts.fail;
        totals.2 += report.counts.vacuous;
        totals.3 += report.counts.degenerate;
        if !report.ok() {
            let orders: BTreeSet<usize> = report
                .instances
                .iter()
                .filter(|i| i.verdict == Verdict::Fail)
                .map(|i| i.n)
                .collect();
            failing.push(format!("{} fails at n in {orders:?}", d.id));
        }
    }
    l.record(
        "6a",
        failing.is_empty() && registry().len() == REGISTRY_SIZE,
        "every registry descriptor passes or is vacuous/degenerate for k in 1..=3",
        format!(
            "{} descriptors, pass/fail/vacuous/degenerate = {totals:?}; {}",
            registry().len(),
            if failing.is_empty() { "none failing".to_string() } else { failing.join("; ") }
        ),
    );

    let window = check_lemma(find("L3.1-window").unwrap(), 1..=3).unwrap();
    let found: BTreeSet<usize> = window.tightness.iter().map(|w| w.ell).collect();
    let want: BTreeSet<usize> = (2..=5).collect();
    let witnesses: Vec<String> = window
        .tightness
        .iter()
        .map(|w| format!("l={} n={} {:?}<-{:?}", w.ell, w.n, w.block, w.resolvers))
        .collect();
    l.record(
        "6b",
        want.is_subset(&found),
        "window bound is attained for each l in 2..=5",
        witnesses.join(", "),
    );
}

fn criterion_7(l: &mut Ledger) {
    let mut bad = 0usize;
    let mut pairs = 0usize;
    for n in 3..=60 {
        for t in 1..=5 {
            let graph = CirculantGraph::new(n, &(1..=t).collect::<Vec<_>>()).unwrap();
            for i in 0..n {
                for j in 0..n {
                    pairs += 1;
                    if distance_closed_form(n, t, i, j) != distance_bfs(&graph, i, j) {
                        bad += 1;
                    }
                }
            }
        }
    }
    l.record(
        "7",
        bad == 0,
        "closed-form distance equals BFS for n <= 60, t <= 5",
        format!("{pairs} pairs, {bad} discrepancies"),
    );
}

fn random_instance(rng: &mut StdRng) -> CirculantGraph {
    loop {
        let n = rng.gen_range(8..=20);
        let steps: Vec<usize> = if rng.gen_bool(0.5) {
            (1..=rng.gen_range(1..=4)).collect()
        } else {
            (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=n / 2)).collect()
        };
        if let Ok(graph) = CirculantGraph::new(n, &steps) {
            return graph;
        }
    }
}

fn criterion_8(l: &mut Ledger) {
    let mut mismatches = Vec::new();
    let mut orders = 0;
    for t in 2..=4 {
        for n in 3..=25 {
            let graph = g(n, t);
            let fast = exact_dim(&graph, &SearchOptions::default()).unwrap();
            let slow = brute_force_dim(&graph, DEFAULT_ORACLE_BUDGET).unwrap();
            orders += 1;
            if fast.dim != slow.dim || fast.basis != slow.basis {
                mismatches.push((n, t, fast.dim, slow.dim));
            }
        }
    }
    l.record(
        "8a",
        mismatches.is_empty(),
        "exact search equals brute force for n <= 25, t in 2..=4",
        format!("{orders} graphs, mismatches {mismatches:?}"),
    );

    let mut unstable = Vec::new();
    for (n, t) in [(27, 4), (33, 4), (40, 4), (41, 3), (45, 2), (56, 4)] {
        let graph = g(n, t);
        let base = exact_dim(&graph, &SearchOptions::default().with_workers(1)).unwrap();
        for w in [2, 4, 8] {
            let other = exact_dim(&graph, &SearchOptions::default().with_workers(w)).unwrap();
            if other != base {
                unstable.push((n, t, w));
            }
        }
    }
    l.record(
        "8b",
        unstable.is_empty(),
        "results, bases and node counts identical for 1, 2, 4, 8 workers",
        format!("6 graphs, differing runs {unstable:?}"),
    );

    type Toggle = fn(&mut SearchOptions);
    let rules: [(&str, Toggle); 4] = [
        ("symmetry", |o| o.use_symmetry = false),
        ("class-bound", |o| o.use_class_bound = false),
        ("hitting-sets", |o| o.use_hitting_sets = false),
        ("known-bounds", |o| o.use_known_bounds = false),
    ];
    let mut rng = StdRng::seed_from_u64(ABLATION_SEED);
    let mut wrong = Vec::new();
    let mut changed = [0usize; 4];
    for _ in 0..ABLATION_INSTANCES {
        let graph = random_instance(&mut rng);
        let truth = oracle(&graph);
        let base = exact_dim(&graph, &SearchOptions::default()).unwrap();
        let mut none = SearchOptions::default();
        for (_, off) in &rules {
            off(&mut none);
        }
        let bare = exact_dim(&graph, &none).unwrap();
        if base.dim != truth || bare.dim != truth {
            wrong.push((graph.order(), graph.steps().to_vec(), "all"));
        }
        for (idx, (name, off)) in rules.iter().enumerate() {
            let mut opts = SearchOptions::default();
            off(&mut opts);
            let r = exact_dim(&graph, &opts).unwrap();
            if r.dim != truth {
                wrong.push((graph.order(), graph.steps().to_vec(), name));
            }
            if r.nodes_explored != base.nodes_explored {
                changed[idx] += 1;
            }
        }
    }
    let summary: Vec<String> = rules
        .iter()
        .zip(changed)
        .map(|((name, _), c)| format!("{name} changes nodes on {c}"))
        .collect();
    l.record(
        "8c",
        wrong.is_empty() && changed.iter().all(|&c| c > 0),
        "disabling any pruning rule changes node counts, never the dimension",
        format!(
            "{ABLATION_INSTANCES} seeded instances, wrong dims {wrong:?}; {}",
            summary.join(", ")
        ),
    );
}

fn criterion_9(l: &mut Ledger) {
    let d8 = oracle(&g(8, 4));
    let d9 = oracle(&g(9, 4));
    let marked = formula_dim(8, 4).is_none()
        && formula_dim(9, 4).is_none()
        && literal_t4_statement(8) == Some(6)
        && literal_t4_statement(9) == Some(6);
    l.record(
        "9",
        d8 == 7 && d9 == 8 && marked,
        "complete graphs n = 8, 9 at t = 4",
        format!(
            "brute force {d8} and {d9}; the literal residue rule says {:?} and {:?}, formula abstains",
            literal_t4_statement(8),
            literal_t4_statement(9)
        ),
    );
}

fn main() -> ExitCode {
    let mut l = Ledger { red: BTreeSet::new() };
    criterion_1(&mut l);
    criterion_2(&mut l);
    criterion_3(&mut l);
    criterion_4(&mut l);
    criterion_5(&mut l);
    criterion_6(&mut l);
    criterion_7(&mut l);
    criterion_8(&mut l);
    criterion_9(&mut l);

    let known: BTreeSet<String> = KNOWN_RED.iter().map(|s| s.to_string()).collect();
    println!(
        "acceptance: {} {:?}, expected red {:?}",
        if l.red.is_empty() { "all green" } else { "red" },
        l.red,
        known
    );
    if l.red == known {
        ExitCode::SUCCESS
    } else {
        eprintln!("failing criteria differ from the documented set");
        ExitCode::FAILURE
    }
}
