//! Acceptance suite. Each test prints one `[PASS]` or `[FAIL]` line; run with
//! `cargo test -p bwcode --test acceptance -- --nocapture` to see them.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use bwcode::bounds::{patch_lower_bound, Status};
use bwcode::corpus::appendix;
use bwcode::exact::{max_clique_exact, Bound, ExactOptions};
use bwcode::graph::{build_graph, clique_is_code, BitGraph};
use bwcode::greedy::{greedy_restarts, GreedyConfig};
use bwcode::oracle::{brute_force_max_clique, brute_force_min_distance};
use bwcode::words::{CodeParams, Word};
use bwcode::{verify_code, Code, Provenance, ReferenceTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Key = (usize, usize, usize);

fn report(criterion: u32, pass: bool, summary: &str, failures: &[String]) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {summary}");
    for f in failures {
        println!("       {f}");
    }
    assert!(pass, "criterion {criterion} failed: {failures:?}");
}

#[derive(Clone, Debug)]
struct Certified {
    size: usize,
    proven: bool,
    is_code: bool,
    elapsed: Duration,
}

fn solve(n: usize, d: usize, w: usize, params: CodeParams, limit: Duration) -> Certified {
    let graph = build_graph(&params).unwrap_or_else(|e| panic!("({n},{d},{w}): {e}"));
    let options = ExactOptions {
        time_limit: Some(limit),
        ..ExactOptions::with_bound(Bound::Coloring)
    };
    let r = max_clique_exact(graph.adjacency(), &options);
    Certified {
        size: r.size,
        proven: r.proven_optimal,
        is_code: clique_is_code(graph.adjacency(), &r.clique).unwrap(),
        elapsed: r.elapsed,
    }
}

// Table 1, non-starred bounded values.
const DISTANCE_4: &[(usize, usize, usize)] = &[
    (6, 3, 4),
    (6, 4, 4),
    (6, 5, 4),
    (6, 6, 4),
    (7, 3, 7),
    (7, 4, 8),
    (7, 5, 8),
    (7, 6, 8),
    (7, 7, 8),
    (8, 3, 8),
    (8, 4, 15),
    (8, 5, 15),
    (8, 6, 16),
    (8, 7, 16),
    (8, 8, 16),
    (9, 3, 12),
    (9, 4, 19),
    (10, 3, 13),
];

fn table() -> &'static ReferenceTable {
    static TABLE: OnceLock<ReferenceTable> = OnceLock::new();
    TABLE.get_or_init(ReferenceTable::builtin)
}

// Non-starred rows of distances 6 and 8 within the stated length limits.
fn small_distance_rows() -> Vec<(Key, u64)> {
    let mut rows = Vec::new();
    for (d, max_n) in [(6, 10), (8, 13)] {
        for row in table().rows(d) {
            if row.n > max_n {
                continue;
            }
            if let Some(b) = row.bounded.filter(|b| b.status == Status::Optimal) {
                rows.push(((row.n, d, row.w), b.value));
            }
        }
    }
    rows
}

/// Bounded-mode optima for every row checked by criteria 1 and 2.
fn certified_bounded() -> &'static BTreeMap<Key, Certified> {
    static CELL: OnceLock<BTreeMap<Key, Certified>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = BTreeMap::new();
        for &(n, w, _) in DISTANCE_4 {
            let limit = if (n, w) == (9, 4) { 30 * 60 } else { 60 };
            let params = CodeParams::bounded(n, 4, w).unwrap();
            out.insert(
                (n, 4, w),
                solve(n, 4, w, params, Duration::from_secs(limit)),
            );
        }
        for ((n, d, w), _) in small_distance_rows() {
            let params = CodeParams::bounded(n, d, w).unwrap();
            out.insert((n, d, w), solve(n, d, w, params, Duration::from_secs(60)));
        }
        out
    })
}

#[derive(Clone, Debug)]
struct GreedyAttempt {
    key: Key,
    target: usize,
    best: usize,
    seeds_tried: u64,
    all_codes: bool,
    elapsed: Duration,
}

const STARRED_TARGETS: &[(Key, usize)] = &[
    ((9, 4, 5), 19),
    ((9, 4, 6), 19),
    ((9, 4, 7), 19),
    ((9, 4, 8), 20),
    ((9, 4, 9), 20),
    ((10, 4, 4), 31),
    ((12, 6, 6), 23),
    ((14, 8, 7), 8),
    ((11, 4, 6), 71),
];

fn greedy_attempts() -> &'static Vec<GreedyAttempt> {
    static CELL: OnceLock<Vec<GreedyAttempt>> = OnceLock::new();
    CELL.get_or_init(|| {
        STARRED_TARGETS
            .iter()
            .map(|&((n, d, w), target)| {
                let graph = build_graph(&CodeParams::bounded(n, d, w).unwrap()).unwrap();
                let start = Instant::now();
                let mut best = 0;
                let mut seeds_tried = 0;
                let mut all_codes = true;
                for seed in 1..=5 {
                    seeds_tried = seed;
                    let r = greedy_restarts(graph.adjacency(), &GreedyConfig::with_seed(seed));
                    all_codes &= clique_is_code(graph.adjacency(), &r.clique).unwrap();
                    best = best.max(r.size);
                    if best >= target {
                        break;
                    }
                }
                GreedyAttempt {
                    key: (n, d, w),
                    target,
                    best,
                    seeds_tried,
                    all_codes,
                    elapsed: start.elapsed(),
                }
            })
            .collect()
    })
}

#[test]
fn criterion_1_distance_4_exact_rows() {
    let certified = certified_bounded();
    let mut failures = Vec::new();
    for &(n, w, expected) in DISTANCE_4 {
        let reference = table()
            .get(n, 4, w, bwcode::WeightMode::Bounded)
            .map(|e| e.value);
        if reference != Some(expected as u64) {
            failures.push(format!(
                "({n},4,{w}): reference table has {reference:?}, expected {expected}"
            ));
        }
        let c = &certified[&(n, 4, w)];
        if c.size != expected || !c.proven {
            failures.push(format!(
                "({n},4,{w}): computed {} proven={} in {:.2?}, expected {expected}",
                c.size, c.proven, c.elapsed
            ));
        }
    }
    let slowest = DISTANCE_4
        .iter()
        .map(|&(n, w, _)| ((n, w), certified[&(n, 4, w)].elapsed))
        .max_by_key(|&(_, t)| t)
        .unwrap();
    report(
        1,
        failures.is_empty(),
        &format!(
            "{} distance-4 rows exact and proven; slowest ({},4,{}) in {:.2?}",
            DISTANCE_4.len(),
            slowest.0 .0,
            slowest.0 .1,
            slowest.1
        ),
        &failures,
    );
}

#[test]
fn criterion_2_distance_6_and_8_exact_rows() {
    let certified = certified_bounded();
    let rows = small_distance_rows();
    let mut failures = Vec::new();
    let mut total = Duration::ZERO;
    for ((n, d, w), expected) in &rows {
        let c = &certified[&(*n, *d, *w)];
        total += c.elapsed;
        if c.size as u64 != *expected || !c.proven {
            failures.push(format!(
                "({n},{d},{w}): computed {} proven={}, expected {expected}",
                c.size, c.proven
            ));
        }
    }
    if total > Duration::from_secs(60) {
        failures.push(format!("total solve time {total:.2?} exceeds one minute"));
    }
    report(
        2,
        failures.is_empty(),
        &format!("{} distance-6/8 rows exact in {total:.2?}", rows.len()),
        &failures,
    );
}

#[test]
fn criterion_3_greedy_starred_rows() {
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for a in greedy_attempts() {
        let (n, d, w) = a.key;
        let reached = a.best >= a.target;
        let line = format!(
            "({n},{d},{w}): best {} vs target {} after {} seed(s) in {:.2?}",
            a.best, a.target, a.seeds_tried, a.elapsed
        );
        if a.key == (11, 4, 6) {
            lines.push(format!("{line} (reported only)"));
        } else if !reached {
            failures.push(line);
        } else {
            lines.push(line);
        }
    }
    println!("       {}", lines.join("\n       "));
    report(
        3,
        failures.is_empty(),
        &format!(
            "{} starred targets attained",
            STARRED_TARGETS.len() - 1 - failures.len()
        ),
        &failures,
    );
}

#[test]
fn criterion_4_appendix_corpus() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for listing in appendix() {
        count += 1;
        let name = listing.file_name();
        let code = match listing.parse() {
            Ok(code) => code,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let report = verify_code(&code);
        if !report.passed() {
            let summary = report.to_string().replace('\n', "; ");
            failures.push(format!("{name}: {summary}"));
        }
        let expected = table()
            .get(listing.n, listing.d, listing.w, bwcode::WeightMode::Bounded)
            .map(|e| e.value);
        if expected != Some(code.len() as u64) {
            failures.push(format!(
                "{name}: {} words, table says {expected:?}",
                code.len()
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("took {elapsed:.2?}"));
    }
    report(
        4,
        failures.is_empty(),
        &format!("{count} appendix listings parsed and verified in {elapsed:.2?}"),
        &failures,
    );
}

#[test]
fn criterion_5_patching_bound() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in table().distances() {
        for row in table().rows(d) {
            let (Some(_), Some(bounded)) = (&row.constant, &row.bounded) else {
                continue;
            };
            checked += 1;
            match patch_lower_bound(row.n, d, row.w, table()) {
                Ok(p) if p.value <= bounded.value => {}
                Ok(p) => failures.push(format!(
                    "({},{d},{}): patch {} > bounded {}",
                    row.n, row.w, p.value, bounded.value
                )),
                Err(e) => failures.push(format!("({},{d},{}): {e}", row.n, row.w)),
            }
        }
    }
    let patch = patch_lower_bound(8, 4, 6, table()).unwrap().value;
    let exact = solve(
        8,
        4,
        6,
        CodeParams::bounded(8, 4, 6).unwrap(),
        Duration::from_secs(60),
    );
    if !(patch == 15 && exact.proven && exact.size == 16) {
        failures.push(format!(
            "(8,4,6): patch {patch}, exact {} proven={}",
            exact.size, exact.proven
        ));
    }
    report(
        5,
        failures.is_empty(),
        &format!(
            "patch bound <= bounded on {checked} rows; (8,4,6) patch {patch} < exact {}",
            exact.size
        ),
        &failures,
    );
}

fn random_graph(rng: &mut ChaCha8Rng, order: usize) -> BitGraph {
    let density = rng.random_range(0.0..=1.0);
    let mut g = BitGraph::new(order);
    for u in 0..order {
        for v in u + 1..order {
            if rng.random_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn criterion_6_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    for i in 0..200 {
        let order = rng.random_range(0..=20);
        let g = random_graph(&mut rng, order);
        let expected = brute_force_max_clique(&g).unwrap();
        for bound in [Bound::Basic, Bound::Coloring] {
            let got = max_clique_exact(&g, &ExactOptions::with_bound(bound)).size;
            if got != expected {
                failures.push(format!(
                    "graph {i} ({order} vertices, {bound:?}): {got} vs {expected}"
                ));
            }
        }
    }
    for i in 0..200 {
        let n = rng.random_range(1..=24);
        let size = rng.random_range(2..=10);
        let words: Vec<Word> = (0..size)
            .map(|_| {
                Word::from_ones(
                    n,
                    &(0..n).filter(|_| rng.random_bool(0.4)).collect::<Vec<_>>(),
                )
            })
            .collect();
        let code = Code::new(
            CodeParams::bounded(n, 1, n).unwrap(),
            words.clone(),
            Provenance::External,
        );
        let packed = verify_code(&code).min_distance.map(|(m, _, _)| m as usize);
        let oracle = brute_force_min_distance(&words).unwrap().0;
        if packed != Some(oracle) {
            failures.push(format!("code {i}: packed {packed:?} vs oracle {oracle}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures.push(format!("took {elapsed:.2?}"));
    }
    report(
        6,
        failures.is_empty(),
        &format!("200 graphs and 200 codes agree with the oracles in {elapsed:.2?}"),
        &failures,
    );
}

#[test]
fn criterion_7_structural_properties() {
    let certified = certified_bounded();
    let mut failures = Vec::new();

    for (&(n, d, w), bounded) in certified {
        let constant = solve(
            n,
            d,
            w,
            CodeParams::constant(n, d, w).unwrap(),
            Duration::from_secs(60),
        );
        if !constant.proven || !constant.is_code {
            failures.push(format!("({n},{d},{w}) constant: unproven or invalid"));
        } else if bounded.proven && bounded.size < constant.size {
            failures.push(format!(
                "({n},{d},{w}): bounded {} < constant {}",
                bounded.size, constant.size
            ));
        }
        if !bounded.is_code {
            failures.push(format!("({n},{d},{w}) bounded output is not a code"));
        }
    }

    // monotone in w within each (n,d) block, both for the solver and the table
    let mut previous: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (&(n, d, w), c) in certified {
        if let Some(&(pw, size)) = previous.get(&(n, d)) {
            if c.size < size {
                failures.push(format!(
                    "({n},{d}): w={w} gives {} < {size} at w={pw}",
                    c.size
                ));
            }
        }
        previous.insert((n, d), (w, c.size));
    }
    for d in table().distances() {
        let rows = table().rows(d);
        for pair in rows.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if let (true, Some(x), Some(y)) = (a.n == b.n, &a.bounded, &b.bounded) {
                if y.value < x.value {
                    failures.push(format!(
                        "table ({},{d}): w={} {} < w={} {}",
                        a.n, b.w, y.value, a.w, x.value
                    ));
                }
            }
        }
    }

    for a in greedy_attempts() {
        if !a.all_codes {
            failures.push(format!("{:?}: greedy output is not a code", a.key));
        }
    }

    report(
        7,
        failures.is_empty(),
        &format!(
            "{} certified rows: bounded >= constant, monotone in w, all {} outputs are codes",
            certified.len(),
            certified.len() * 2 + greedy_attempts().len()
        ),
        &failures,
    );
}

#[test]
fn criterion_8_search_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    let runs: &[(&str, Option<&str>)] = &[
        ("greedy", None),
        ("greedy", None),
        ("greedy", Some("1")),
        ("greedy", Some("4")),
        ("exact", None),
        ("exact", Some("1")),
    ];
    for (i, (solver, threads)) in runs.iter().enumerate() {
        let path = dir.path().join(format!("run{i}.txt"));
        let (n, w) = if *solver == "greedy" {
            ("10", "4")
        } else {
            ("8", "6")
        };
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_bwcode"));
        cmd.args([
            "search", "-n", n, "-d", "4", "-w", w, "--solver", solver, "--seed", "1",
        ])
        .arg("--out")
        .arg(&path);
        if let Some(t) = threads {
            cmd.args(["--threads", t]);
        }
        let status = cmd.output().unwrap().status;
        assert!(status.success(), "run {i} exited with {status}");
        outputs.push(std::fs::read(&path).unwrap());
    }
    let greedy_same = outputs[..4].windows(2).all(|w| w[0] == w[1]);
    let exact_same = outputs[4] == outputs[5];
    let mut failures = Vec::new();
    if !greedy_same {
        failures.push("greedy outputs differ between runs".into());
    }
    if !exact_same {
        failures.push("exact outputs differ between runs".into());
    }
    report(
        8,
        failures.is_empty(),
        "search --seed 1 output files identical across runs and thread counts",
        &failures,
    );
}
