//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dyncover::bench::{bench_scaling, run, Algo, RunConfig, RunError, RunMetrics, ScalingSpec};
use dyncover::engine::levels::find_critical_level;
use dyncover::exact::{exact_cover, ExactResult, DEFAULT_CAP};
use dyncover::induced::{InducedInstance, MapScratch};
use dyncover::random_cover::random_cover;
use dyncover::workloads::{
    gen_clique_instance, gen_deletion_trace, gen_element_update_gadget, gen_mixed_trace, gen_random_system,
    gen_set_update_gadget, ContainmentInstance, ContainmentParams, DeletionOrder, Planted, UpdateTrace,
};
use dyncover::{deterministic_cover, greedy_cover, SetSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const EPSILONS: [f64; 3] = [0.1, 0.25, 0.5];
const SEEDS_PER_EPSILON: u64 = 70;

struct Outcome {
    pass: bool,
    detail: String,
    took: Duration,
    limit: Option<Duration>,
}

/// One randomized workload of the approximation criteria.
struct Case {
    system: SetSystem,
    trace: UpdateTrace,
    algo: Algo,
    epsilon: f64,
    seed: u64,
}

/// Fully dynamic runs on mixed traces and decremental runs on random
/// deletion traces, over random systems with n ≤ 14, m ≤ 20, f ≤ 4.
fn small_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for (k, &epsilon) in EPSILONS.iter().enumerate() {
        for seed in 0..SEEDS_PER_EPSILON {
            let id = k as u64 * 1000 + seed;
            let mut rng = ChaCha8Rng::seed_from_u64(id);
            let n = rng.gen_range(4..=14);
            let f = rng.gen_range(1..=4);
            let m = rng.gen_range(1..=20usize.min(n * f));
            let system = gen_random_system(n, m, f, id).unwrap();
            let len = rng.gen_range(1..=3 * n);
            out.push(Case {
                trace: gen_mixed_trace(&system, len, id).unwrap(),
                system: system.clone(),
                algo: Algo::FullyDynamic,
                epsilon,
                seed: id,
            });
            out.push(Case {
                trace: gen_deletion_trace(&system, DeletionOrder::Random, id).unwrap(),
                system,
                algo: Algo::Decremental,
                epsilon,
                seed: id,
            });
        }
    }
    out
}

fn run_case(c: &Case) -> Result<RunMetrics, RunError> {
    run(&RunConfig::new(c.algo, c.epsilon, c.seed).checked(), &c.system, &c.trace)
}

fn first_failure(cases: &[Case]) -> Result<Vec<RunMetrics>, String> {
    cases
        .iter()
        .map(|c| run_case(c).map_err(|e| format!("{} seed {}: {e}", c.algo, c.seed)))
        .collect()
}

fn criterion_1(cases: &[Case]) -> Outcome {
    let mut queries = 0;
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for c in cases {
        match run_case(c) {
            Ok(m) => {
                for q in &m.queries {
                    queries += 1;
                    let Some(opt) = q.opt else {
                        bad.push(format!("seed {}: query {} without oracle", c.seed, q.index));
                        continue;
                    };
                    let bound = c.system.f() as f64 / (1.0 - c.epsilon) * opt as f64;
                    if q.cover_size as f64 > bound + 1e-9 {
                        bad.push(format!("seed {}: cover {} > {bound}", c.seed, q.cover_size));
                    }
                    if opt > 0 {
                        let slack = q.cover_size as f64 / (c.system.f() as f64 / (1.0 - c.epsilon) * opt as f64);
                        worst = worst.max(slack);
                    }
                }
            }
            Err(RunError::Violation(v)) if v.violation.check == "approximation" => bad.push(v.dump()),
            Err(_) => {}
        }
    }
    Outcome {
        pass: bad.is_empty() && cases.len() >= 200,
        detail: format!(
            "{} runs, {queries} queries, max cover/(f·OPT/(1-eps)) = {worst:.3}, violations {}{}",
            cases.len(),
            bad.len(),
            bad.first().map(|b| format!(": {b}")).unwrap_or_default()
        ),
        took: Duration::ZERO,
        limit: Some(Duration::from_secs(120)),
    }
}

fn adversarial_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for i in 0..50u64 {
        let system = if i % 2 == 0 {
            gen_clique_instance(2 + (i as usize / 2) % 4, 2 + (2 + (i as usize / 2) % 4) * 3).unwrap()
        } else {
            gen_random_system(14, 20, 4, i).unwrap()
        };
        let trace = gen_deletion_trace(&system, DeletionOrder::PivotAdversarial, i).unwrap();
        let algo = if i % 4 < 2 { Algo::Decremental } else { Algo::FullyDynamic };
        out.push(Case {
            system,
            trace,
            algo,
            epsilon: EPSILONS[i as usize % 3],
            seed: 10_000 + i,
        });
    }
    out
}

fn criterion_2(cases: &[Case], adversarial: &[Case]) -> Outcome {
    let all: Vec<&Case> = cases.iter().chain(adversarial).collect();
    let mut events = 0;
    let mut bad = None;
    for c in &all {
        match run_case(c) {
            Ok(m) => events += m.events,
            Err(e) => {
                bad.get_or_insert(format!("{} seed {}: {e}", c.algo, c.seed));
            }
        }
    }
    Outcome {
        pass: bad.is_none(),
        detail: format!(
            "{} audited runs ({} pivot-adversarial), {events} events{}",
            all.len(),
            adversarial.len(),
            bad.map(|b| format!(", first violation: {b}")).unwrap_or_default()
        ),
        took: Duration::ZERO,
        limit: None,
    }
}

/// Lowest non-empty level at which every suffix has `d/p ≥ num/den`, in
/// exact integer arithmetic.
fn brute_critical(p: &[usize], d: &[usize], num: usize, den: usize) -> Option<usize> {
    (0..p.len()).filter(|&l| p[l] > 0).find(|&l| {
        (0..=l).all(|i| {
            let ps: usize = p[i..=l].iter().sum();
            let ds: usize = d[i..=l].iter().sum();
            ds * den >= num * ps
        })
    })
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ratios = [(1, 10), (1, 4), (1, 2), (1, 3), (3, 4), (9, 10), (1, 100), (7, 20)];
    let mut tested = 0;
    let mut bad = Vec::new();
    while tested < 1000 {
        let levels = rng.gen_range(1..=13);
        let p: Vec<usize> = (0..levels).map(|_| if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..12) }).collect();
        let d: Vec<usize> = p.iter().map(|&x| if rng.gen_bool(0.5) { rng.gen_range(0..=x) } else { 0 }).collect();
        let (num, den) = ratios[rng.gen_range(0..ratios.len())];
        let (pt, dt): (usize, usize) = (p.iter().sum(), d.iter().sum());
        if dt == 0 || dt * den < num * pt {
            continue;
        }
        tested += 1;
        let eps = num as f64 / den as f64;
        let want = brute_critical(&p, &d, num, den);
        match (find_critical_level(&p, &d, eps), want) {
            (Ok(l), Some(w)) if l == w => {}
            (got, _) => bad.push(format!("P {p:?} D {d:?} eps {num}/{den}: got {got:?}, brute {want:?}")),
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{tested} counter vectors, mismatches {}{}",
            bad.len(),
            bad.first().map(|b| format!(": {b}")).unwrap_or_default()
        ),
        took: Duration::ZERO,
        limit: Some(Duration::from_secs(5)),
    }
}

const TOUCH_CONSTANT: f64 = 4.0;

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    let mut scratch_rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..500u64 {
        let n = scratch_rng.gen_range(1..=60);
        let f = scratch_rng.gen_range(1..=6);
        let m = scratch_rng.gen_range(1..=n * f);
        let sys = gen_random_system(n, m, f, i).unwrap();
        let x: Vec<usize> = (0..n).filter(|_| scratch_rng.gen_bool(0.7)).collect();
        let inst = InducedInstance::build(&mut MapScratch::for_system(&sys), &sys, &x, None).unwrap();
        let run = random_cover(&inst, &mut ChaCha8Rng::seed_from_u64(i));
        let in_cover = |s: usize| run.cover.contains(&s);
        if !x.iter().all(|&e| sys.sets_of(e).iter().any(|&s| in_cover(s))) {
            bad.push(format!("instance {i}: infeasible"));
        }
        let mut owner = vec![usize::MAX; sys.m()];
        for (k, p) in run.pivots.iter().enumerate() {
            for &s in &p.sets {
                if owner[s] != usize::MAX {
                    bad.push(format!("instance {i}: set {s} claimed twice"));
                }
                owner[s] = k;
            }
        }
        let pivots: Vec<usize> = run.pivots.iter().map(|p| p.pivot).collect();
        for &s in &run.cover {
            if sys.elems_of(s).iter().filter(|e| pivots.contains(e)).count() > 1 {
                bad.push(format!("instance {i}: set {s} holds two pivots"));
            }
        }
        if !run.pivots.windows(2).all(|w| w[0].level >= w[1].level) {
            bad.push(format!("instance {i}: levels increase"));
        }
        let scale = (inst.f().max(1) * inst.local_n().max(1)) as f64;
        let c = run.touches as f64 / scale;
        worst = worst.max(c);
        if c > TOUCH_CONSTANT {
            bad.push(format!("instance {i}: {} touches > {TOUCH_CONSTANT}·f·n'", run.touches));
        }
    }

    // first pivot's position inside its set, over 10^4 seeds
    let size = 10;
    let mut sets = vec![(0..size).collect::<Vec<_>>()];
    sets.push(vec![0, size]);
    sets.push(vec![size, size + 1]);
    let inst = InducedInstance::from_sets(size + 2, &sets);
    let mut counts = vec![0f64; size];
    let trials = 10_000;
    for seed in 0..trials {
        let run = random_cover(&inst, &mut ChaCha8Rng::seed_from_u64(seed));
        let first = &run.pivots[0];
        let pos = sets[first.source.unwrap()].iter().position(|&e| e == first.pivot).unwrap();
        counts[pos] += 1.0;
    }
    let expect = trials as f64 / size as f64;
    let chi2: f64 = counts.iter().map(|c| (c - expect).powi(2) / expect).sum();
    let critical = ChiSquared::new((size - 1) as f64).unwrap().inverse_cdf(0.999);
    if chi2 >= critical {
        bad.push(format!("chi-square {chi2:.2} ≥ {critical:.2}"));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "500 instances, C = {TOUCH_CONSTANT} (max observed {worst:.3}); chi-square {chi2:.2} < {critical:.2} on {size} positions{}",
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
        took: Duration::ZERO,
        limit: None,
    }
}

fn scaling_spec() -> ScalingSpec {
    ScalingSpec::doubling(1024, 3, 5, 0.5, 10)
}

fn criterion_5() -> Outcome {
    match bench_scaling(&scaling_spec()) {
        Ok(r) => Outcome {
            pass: r.spread < 3.0,
            detail: format!(
                "touches/deletion {} (spread {:.3}, exponent {:.3})",
                r.points
                    .iter()
                    .map(|p| format!("n={}: {:.1}", p.n, p.mean_per_deletion))
                    .collect::<Vec<_>>()
                    .join(", "),
                r.spread,
                r.exponent
            ),
            took: Duration::ZERO,
            limit: Some(Duration::from_secs(120)),
        },
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
            took: Duration::ZERO,
            limit: None,
        },
    }
}

/// Movement never fires at n ≤ 14, so the bound is also checked on larger
/// audited fully dynamic runs where it does.
fn movement_cases() -> Vec<Case> {
    (0..20u64)
        .map(|seed| {
            let system = gen_random_system(256, 128, 5, 500 + seed).unwrap();
            Case {
                trace: gen_mixed_trace(&system, 2560, 500 + seed).unwrap(),
                system,
                algo: Algo::FullyDynamic,
                epsilon: 0.5,
                seed: 500 + seed,
            }
        })
        .collect()
}

fn criterion_6(cases: &[Case]) -> Outcome {
    let extra = movement_cases();
    let mut worst = 0;
    let mut moved = [0usize; 2];
    let mut bad = Vec::new();
    let small = cases.iter().filter(|c| c.algo == Algo::FullyDynamic);
    for (c, big) in small.map(|c| (c, 0)).chain(extra.iter().map(|c| (c, 1))) {
        let cfg = RunConfig {
            check_invariants: true,
            ..RunConfig::new(c.algo, c.epsilon, c.seed)
        };
        let m = match run(&cfg, &c.system, &c.trace) {
            Ok(m) => m,
            Err(e) => {
                bad.push(format!("seed {}: {e}", c.seed));
                continue;
            }
        };
        let bound = (usize::BITS - 1 - c.system.n().leading_zeros()) + 1;
        worst = worst.max(m.max_moves);
        moved[big] += m.phases.iter().map(|p| p.moved).sum::<usize>();
        if m.max_moves > bound {
            bad.push(format!("seed {}: {} moves > {bound}", c.seed, m.max_moves));
        }
    }
    Outcome {
        pass: bad.is_empty() && moved[1] > 0,
        detail: format!(
            "movement steps: {} in criterion-1 runs, {} in {} audited n=256 runs; max per element {worst}; violations {}{}",
            moved[0],
            moved[1],
            extra.len(),
            bad.len(),
            bad.first().map(|b| format!(": {b}")).unwrap_or_default()
        ),
        took: Duration::ZERO,
        limit: None,
    }
}

fn containment(n: usize, planted: Planted, seed: u64) -> ContainmentInstance {
    let p = ContainmentParams {
        n,
        a_count: 6,
        b_count: 6,
        t: 3,
        planted,
    };
    ContainmentInstance::generate(p, seed).unwrap()
}

/// Element gadget at n = 12; set gadget at n = 7, the largest universe for
/// which `k·t > (n+k)(t−1)` holds at k = 16, t = 3.
fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for planted in [Planted::Yes, Planted::No] {
        for seed in 0..20 {
            let ci = containment(12, planted, seed);
            if ci.verify().is_err() {
                bad.push(format!("{planted:?} {seed}: planted flag fails exhaustive check"));
            }
            let g = gen_element_update_gadget(&ci).unwrap();
            g.trace.check_against(&g.system).unwrap();
            let mut scratch = MapScratch::for_system(&g.system);
            let answers: Vec<usize> = g
                .trace
                .query_states()
                .iter()
                .map(|act| {
                    let inst = InducedInstance::build(&mut scratch, &g.system, act, None).unwrap();
                    exact_cover(&inst, DEFAULT_CAP).optimum().unwrap()
                })
                .collect();
            checked += answers.len();
            match planted {
                Planted::Yes => {
                    let (_, j) = ci.contained_pair().unwrap();
                    let q = g.stages[j].query.unwrap();
                    if answers[q] != 1 {
                        bad.push(format!("element YES {seed}: planted stage OPT {}", answers[q]));
                    }
                }
                Planted::No => {
                    if let Some(a) = answers.iter().find(|&&a| a < ci.t) {
                        bad.push(format!("element NO {seed}: stage OPT {a} < t"));
                    }
                }
            }

            let ci = containment(7, planted, 100 + seed);
            let g = gen_set_update_gadget(&ci, 16).unwrap();
            g.trace.validate().unwrap();
            if !g.gap_holds() {
                bad.push(format!("set gadget gap fails: {} ≤ {}", g.no_floor, g.yes_threshold));
            }
            let answers: Vec<usize> = g
                .trace
                .query_states()
                .iter()
                .map(|act| g.stage_optimum(act).unwrap().unwrap())
                .collect();
            checked += answers.len();
            match planted {
                Planted::Yes => {
                    let (_, j) = ci.contained_pair().unwrap();
                    let a = answers[g.stages[j].query.unwrap()];
                    if a > g.n + g.k {
                        bad.push(format!("set YES {seed}: planted stage OPT {a} > n+k"));
                    }
                    if !g.decide(&answers) {
                        bad.push(format!("set YES {seed}: decided NO"));
                    }
                }
                Planted::No => {
                    if let Some(a) = answers.iter().find(|&&a| a < g.no_floor) {
                        bad.push(format!("set NO {seed}: stage OPT {a} < k·t"));
                    }
                    if g.decide(&answers) {
                        bad.push(format!("set NO {seed}: decided YES"));
                    }
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "40 element gadgets (n=12) + 40 set gadgets (n=7, k=16: 48 > 46), {checked} stage optima, violations {}{}",
            bad.len(),
            bad.first().map(|b| format!(": {b}")).unwrap_or_default()
        ),
        took: Duration::ZERO,
        limit: Some(Duration::from_secs(60)),
    }
}

fn criterion_8(cases: &[Case]) -> Outcome {
    let mut states = 0;
    let mut bad = Vec::new();
    for c in cases {
        let mut scratch = MapScratch::for_system(&c.system);
        for act in c.trace.query_states() {
            let inst = InducedInstance::build(&mut scratch, &c.system, &act, None).unwrap();
            let ExactResult::Optimum(opt) = exact_cover(&inst, DEFAULT_CAP) else {
                bad.push(format!("seed {}: no exact optimum", c.seed));
                continue;
            };
            states += 1;
            let det = deterministic_cover(&inst).cover.len();
            let gr = greedy_cover(&inst).cover.len();
            let ln = (act.len().max(1) as f64).ln() + 1.0;
            if det > c.system.f() * opt {
                bad.push(format!("seed {}: deterministic {det} > f·{opt}", c.seed));
            }
            if gr as f64 > ln * opt as f64 + 1e-9 {
                bad.push(format!("seed {}: greedy {gr} > (ln n + 1)·{opt}", c.seed));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{states} instances, violations {}{}",
            bad.len(),
            bad.first().map(|b| format!(": {b}")).unwrap_or_default()
        ),
        took: Duration::ZERO,
        limit: None,
    }
}

fn documents(cases: &[Case]) -> Result<String, String> {
    let mut out = String::new();
    for m in first_failure(cases)? {
        out.push_str(&m.to_json());
    }
    Ok(out)
}

fn criterion_9(cases: &[Case], adversarial: &[Case]) -> Outcome {
    let mut mismatches = Vec::new();
    let mut bytes = 0;
    for (name, set) in [("approximation runs", cases), ("adversarial runs", adversarial)] {
        match (documents(set), documents(set)) {
            (Ok(a), Ok(b)) if a == b => bytes += a.len(),
            (Ok(_), Ok(_)) => mismatches.push(name.to_string()),
            (Err(e), _) | (_, Err(e)) => mismatches.push(format!("{name}: {e}")),
        }
    }
    let small = ScalingSpec::doubling(256, 2, 5, 0.5, 3);
    let a = serde_json::to_string(&bench_scaling(&small).unwrap()).unwrap();
    let b = serde_json::to_string(&bench_scaling(&small).unwrap()).unwrap();
    if a != b {
        mismatches.push("scaling report".into());
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!(
            "{} metrics documents + scaling report, {bytes} bytes compared, mismatches {}{}",
            cases.len() + adversarial.len(),
            mismatches.len(),
            mismatches.first().map(|m| format!(": {m}")).unwrap_or_default()
        ),
        took: Duration::ZERO,
        limit: None,
    }
}

fn timed(f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    o.took = start.elapsed();
    if let Some(limit) = o.limit {
        if o.took > limit {
            o.pass = false;
            o.detail.push_str(&format!("; over the {limit:?} limit"));
        }
    }
    o
}

fn main() -> ExitCode {
    let cases = small_cases();
    let adversarial = adversarial_cases();
    let results = [
        ("approximation", timed(|| criterion_1(&cases))),
        ("structural invariants", timed(|| criterion_2(&cases, &adversarial))),
        ("critical level", timed(criterion_3)),
        ("random cover contract", timed(criterion_4)),
        ("work scaling", timed(criterion_5)),
        ("movement bound", timed(|| criterion_6(&cases))),
        ("gadget gap", timed(criterion_7)),
        ("baseline dominance", timed(|| criterion_8(&cases))),
        ("determinism", timed(|| criterion_9(&cases, &adversarial))),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{name}]: {verdict} ({:.2?}) {}", i + 1, o.took, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
