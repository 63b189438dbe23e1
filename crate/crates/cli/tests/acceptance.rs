//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::fs;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diffuse_cli::commands::{cmd_verify, Input, VerifyArgs};
use diffuse_core::generators::{convex, random_simple, spiral, zigzag};
use diffuse_core::geom::{general_position_with_source, sample_interior, triangulate};
use diffuse_core::oracle::min_reflections_bfs;
use diffuse_core::paths::{extract_path, locate_k, validate_path};
use diffuse_core::regions::{audit_criticality, check_properties, illuminate, Breach, IlluminationResult};
use diffuse_core::{Point, Polygon, Rational};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(problems: &[String], ok_detail: String) -> Outcome {
    if problems.is_empty() {
        Outcome { pass: true, detail: ok_detail }
    } else {
        let shown: Vec<&str> = problems.iter().take(5).map(String::as_str).collect();
        Outcome { pass: false, detail: format!("{} problems: {}", problems.len(), shown.join(" | ")) }
    }
}

fn source_for(p: &Polygon, tris: &[[usize; 3]], rng: &mut ChaCha8Rng) -> Point {
    loop {
        let s = sample_interior(p, tris, rng);
        if general_position_with_source(p, &s).is_ok_and(|r| r.is_ok()) {
            return s;
        }
    }
}

/// Counters gathered over the corpus for criteria 1 and 4 to 6.
#[derive(Default)]
struct Corpus {
    instances: usize,
    bound: Vec<String>,
    counting: Vec<String>,
    properties: Vec<String>,
    critical: Vec<String>,
    critical_steps: usize,
    zigzag_critical_steps: usize,
    property_checks: usize,
    dark_at_end: usize,
}

impl Corpus {
    fn record(&mut self, name: &str, res: &IlluminationResult, samples: &[Point], zigzag: bool) {
        self.instances += 1;
        let n = res.polygon.n();
        let bound = (n / 2).saturating_sub(1);
        if res.terminated_at > bound {
            self.bound.push(format!("{name}: K={} > {bound}", res.terminated_at));
        }
        // The closure of the final region must be P: no pockets left, and
        // lit plus dark arcs (host-edge pieces a probe point reaches only
        // along the boundary) cover every edge.
        let last = res.regions.last().expect("at least R_0");
        let closure = last.lit().union(last.dark());
        let full = vec![(Rational::zero(), Rational::one())];
        if !last.windows().is_empty() || (0..n).any(|e| closure.edge_intervals(e) != full) {
            self.bound.push(format!("{name}: closure of the final region misses part of the boundary"));
        }
        if !last.dark().is_empty() {
            self.dark_at_end += 1;
        }
        if let Some(t) = samples.iter().find(|t| last.pocket_of(t).is_some()) {
            self.bound.push(format!("{name}: {t} outside the final region"));
        }

        // Counting invariants straight from the ledger.
        let steps = &res.ledger.steps;
        if steps[0].mu < 3 {
            self.counting.push(format!("{name}: mu_0 = {}", steps[0].mu));
        }
        for (k, st) in steps.iter().enumerate() {
            if st.mu < (2 * k + 3).min(n) {
                self.counting.push(format!("{name}: k={k} mu={}", st.mu));
            }
            if let Some(next) = steps.get(k + 1) {
                if next.mu < (st.mu + st.lambda).min(n) {
                    self.counting.push(format!("{name}: k={k} mu'={} < {}+{}", next.mu, st.mu, st.lambda));
                }
            }
            // Criticality: mu_k = 2k+3 < n forces (A) all saturated or (B)
            // two or more windows with one unsaturated.
            if st.mu == 2 * k + 3 && st.mu < n {
                self.critical_steps += 1;
                if zigzag {
                    self.zigzag_critical_steps += 1;
                }
                let a = !st.saturated.is_empty() && st.saturated.iter().all(|&s| s);
                let b = st.lambda >= 2 && st.saturated.iter().any(|&s| !s);
                if !(a || b) {
                    self.critical.push(format!("{name}: critical step {k} meets neither condition"));
                }
            }
        }
        for b in audit_criticality(res).breaches {
            let list = match b {
                Breach::Critical(_) => &mut self.critical,
                Breach::Bound { .. } => &mut self.bound,
                Breach::Expansion { .. } => &mut self.properties,
                _ => &mut self.counting,
            };
            list.push(format!("{name}: audit {b}"));
        }
        for (k, r) in res.regions.iter().enumerate() {
            self.property_checks += 1;
            if let Err(e) = check_properties(&res.polygon, r) {
                self.properties.push(format!("{name}: R_{k}: {e}"));
            }
        }
    }
}

fn build_corpus() -> (Corpus, Vec<String>, f64) {
    let start = Instant::now();
    let mut c = Corpus::default();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut run = |c: &mut Corpus, name: String, p: &Polygon, sources: usize, zz: bool, rng: &mut ChaCha8Rng| {
        let tris = triangulate(p);
        for i in 0..sources {
            let s = source_for(p, &tris, rng);
            let samples: Vec<Point> = (0..1000).map(|_| sample_interior(p, &tris, rng)).collect();
            match illuminate(p, &s) {
                Ok(res) => c.record(&format!("{name} s#{i}"), &res, &samples, zz),
                Err(e) => failures.push(format!("{name} s={s}: {e}")),
            }
        }
    };
    for n in 3..=30 {
        for seed in 0..10 {
            run(&mut c, format!("convex({n},{seed})"), &convex(n, seed).unwrap(), 10, false, &mut rng);
            run(&mut c, format!("random({n},{seed})"), &random_simple(n, seed).unwrap(), 10, false, &mut rng);
        }
    }
    for n in (8..=30).step_by(2) {
        let (p, s, _) = zigzag(n).unwrap();
        match illuminate(&p, &s) {
            Ok(res) => c.record(&format!("zigzag({n})"), &res, &[], true),
            Err(e) => failures.push(format!("zigzag({n}): {e}")),
        }
    }
    (c, failures, start.elapsed().as_secs_f64())
}

fn criterion_2() -> Outcome {
    let (p, s, t) = zigzag(16).unwrap();
    let res = illuminate(&p, &s).unwrap();
    let path = extract_path(&res, &t).unwrap();
    let oracle = min_reflections_bfs(&p, &s, &t, 64).unwrap();
    let mut problems = Vec::new();
    if res.terminated_at != 7 {
        problems.push(format!("terminated_at = {}", res.terminated_at));
    }
    if path.reflection_count() != 7 || !validate_path(&p, &path).is_ok() {
        problems.push(format!("path has {} reflections", path.reflection_count()));
    }
    if oracle.min_reflections != 7 {
        problems.push(format!("oracle = {}", oracle.min_reflections));
    }
    outcome(&problems, "terminated_at=7, path=7, oracle(m=64)=7".into())
}

fn criterion_3() -> Outcome {
    let (p, s, t) = spiral(20).unwrap();
    let res = illuminate(&p, &s).unwrap();
    let path = extract_path(&res, &t).unwrap();
    let oracle = min_reflections_bfs(&p, &s, &t, 64).unwrap();
    let mut problems = Vec::new();
    if oracle.min_reflections < 8 {
        problems.push(format!("oracle = {}", oracle.min_reflections));
    }
    if path.reflection_count() > 9 {
        problems.push(format!("path has {} reflections", path.reflection_count()));
    }
    if !validate_path(&p, &path).is_ok() || !validate_path(&p, &oracle.witness).is_ok() {
        problems.push("invalid path".into());
    }
    outcome(
        &problems,
        format!(
            "oracle(m=64)={} (lower bound: evidence at resolution 64, not a proof), path={}",
            oracle.min_reflections,
            path.reflection_count()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut problems = Vec::new();
    let mut targets = 0;
    let mut deepest = 0;
    while targets < 1000 {
        let n = rng.gen_range(6..=30);
        let p = random_simple(n, rng.gen()).unwrap();
        let tris = triangulate(&p);
        let s = source_for(&p, &tris, &mut rng);
        let res = illuminate(&p, &s).unwrap();
        for _ in 0..20 {
            let t = sample_interior(&p, &tris, &mut rng);
            targets += 1;
            let k = match locate_k(&res, &t) {
                Ok(k) => k,
                Err(e) => {
                    problems.push(format!("n={n} t={t}: {e}"));
                    continue;
                }
            };
            deepest = deepest.max(k);
            match extract_path(&res, &t) {
                Ok(path) if !validate_path(&p, &path).is_ok() => problems.push(format!("n={n} t={t}: invalid path")),
                Ok(path) if path.reflection_count() > k => {
                    problems.push(format!("n={n} t={t}: {} > {k}", path.reflection_count()))
                }
                Ok(_) => {}
                Err(e) => problems.push(format!("n={n} t={t}: {e}")),
            }
        }
    }
    outcome(&problems, format!("{targets} targets, deepest level {deepest}"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut problems = Vec::new();
    let mut improved = 0;
    for i in 0..100 {
        let n = rng.gen_range(6..=14);
        let p = random_simple(n, rng.gen()).unwrap();
        let tris = triangulate(&p);
        let s = source_for(&p, &tris, &mut rng);
        let t = sample_interior(&p, &tris, &mut rng);
        let res = illuminate(&p, &s).unwrap();
        let path = match extract_path(&res, &t) {
            Ok(path) => path,
            Err(e) => {
                problems.push(format!("triple {i}: {e}"));
                continue;
            }
        };
        let mut last = usize::MAX;
        for m in [8, 16, 32] {
            match min_reflections_bfs(&p, &s, &t, m) {
                Ok(o) => {
                    if !validate_path(&p, &o.witness).is_ok() || o.witness.reflection_count() != o.min_reflections {
                        problems.push(format!("triple {i} m={m}: bad witness"));
                    }
                    // Coarse node sets may miss short paths, so the bound is
                    // checked at the finest resolution.
                    if m == 32 && o.min_reflections > path.reflection_count() {
                        problems.push(format!(
                            "triple {i} m={m}: oracle {} > path {}",
                            o.min_reflections,
                            path.reflection_count()
                        ));
                    }
                    if o.min_reflections > last {
                        problems.push(format!("triple {i}: oracle rose at m={m}"));
                    }
                    if last != usize::MAX && o.min_reflections < last {
                        improved += 1;
                    }
                    last = o.min_reflections;
                }
                Err(e) => problems.push(format!("triple {i} m={m}: {e}")),
            }
        }
    }
    outcome(&problems, format!("100 triples, oracle(m=32) <= path, monotone over m in {{8,16,32}}, {improved} refinements lowered the count"))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut problems = Vec::new();
    let fixtures = [
        ("zigzag", diffuse_core::generators::FixtureSpec::generate("zigzag".parse().unwrap(), 16, 0).unwrap()),
        ("random", diffuse_core::generators::FixtureSpec::generate("random".parse().unwrap(), 20, 7).unwrap()),
    ];
    for (name, spec) in fixtures {
        let file = dir.path().join(format!("{name}.txt"));
        let text = diffuse_cli::PolygonFile::new(&spec.polygon, Some(spec.source), spec.target).to_string();
        fs::write(&file, text).unwrap();
        let mut runs = Vec::new();
        for run in 0..2 {
            let out = |ext: &str| Some(dir.path().join(format!("{name}-{run}.{ext}")));
            let args = VerifyArgs {
                input: Input { polygon: file.clone(), source: None },
                samples: 8,
                oracle_m: 8,
                seed: 3,
                ledger: out("json"),
                paths: out("paths"),
                svg: out("svg"),
            };
            let mut stdout = Vec::new();
            if let Err(e) = cmd_verify(&args, &mut stdout) {
                problems.push(format!("{name} run {run}: {e}"));
            }
            let read = |ext: &str| fs::read(out(ext).unwrap()).unwrap_or_default();
            runs.push([stdout, read("json"), read("paths"), read("svg")]);
        }
        for (i, what) in ["report", "ledger", "paths", "svg"].iter().enumerate() {
            if runs[0][i].is_empty() || runs[0][i] != runs[1][i] {
                problems.push(format!("{name}: {what} differs between runs"));
            }
        }
    }
    outcome(&problems, "ledgers, paths, SVGs and reports byte-identical over two runs".into())
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; listing mode
    // must print nothing.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    let (corpus, failures, secs) = build_corpus();
    let mut c1 = failures.clone();
    c1.extend(corpus.bound.iter().cloned());
    if secs > 300.0 {
        c1.push(format!("corpus took {secs:.0}s"));
    }
    results.push((
        1,
        "reflection bound",
        outcome(
            &c1,
            format!(
                "{} instances, 1000 samples each, {} end with dark arcs in the closure, {secs:.1}s",
                corpus.instances, corpus.dark_at_end
            ),
        ),
    ));
    results.push((2, "zig-zag tightness", criterion_2()));
    results.push((3, "spiral lower bound", criterion_3()));
    results.push((
        4,
        "counting invariants",
        outcome(
            &corpus.counting,
            format!(
                "{} ledgers satisfy mu_k >= min(2k+3, n), mu_{{k+1}} >= mu_k + lambda_k and mu_0 >= 3",
                corpus.instances
            ),
        ),
    ));
    results.push((
        5,
        "structural properties",
        outcome(&corpus.properties, format!("{} regions checked", corpus.property_checks)),
    ));
    let mut c6 = corpus.critical.clone();
    if corpus.zigzag_critical_steps == 0 {
        c6.push("no zigzag instance exercised a critical step".into());
    }
    results.push((
        6,
        "criticality audit",
        outcome(&c6, format!("{} critical steps ({} in zigzag)", corpus.critical_steps, corpus.zigzag_critical_steps)),
    ));
    results.push((7, "path validity", criterion_7()));
    results.push((8, "oracle consistency", criterion_8()));
    results.push((9, "determinism", criterion_9()));

    let mut failed = 0;
    for (i, name, o) in &results {
        println!("criterion {i} ({name}): {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
