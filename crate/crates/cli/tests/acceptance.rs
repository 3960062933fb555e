use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cornet::cornet::cancel::{cancellation_suite, direct_cancellation_suite};
use cornet::cornet::laws::{check_cornet_laws, check_lemma_identities};
use cornet::cornet::order::{closure_props_suite, subcornet_closure_suite};
use cornet::cornet::{case_rng, is_n_convex, Cornet, Exec, LawReport, SuiteConfig};
use cornet::embed::{chi_suite, phi_suite};
use cornet::fuzzy::{fuzzy_arch_family, no_archimedean_suite, oplus, FuzzyCornet, Level, StepFuzzy};
use cornet::geometry::{rat, ratio, RVec, Rational};
use cornet::sample::SamplerConfig;
use cornet::sets::universe::violates_cancellation;
use cornet::sets::{
    is_n_convex_set, make_int_set_cornet, set_arch_family, Carrier, Repr, SetCornet, UpperSet, MULTISET_CAP,
};
use cornet::wedge::{elem_arch_family, ElemCornet, Wedge};
use cornet_cli::commands::{cmd_hunt, HuntArgs};
use serde_json::Value;

const LAW_CASES: u64 = 1000;
const LEMMA_CASES: u64 = 500;
const EMBED_CASES: u64 = 500;
const ORACLE_PAIRS: u64 = 200;
const CONVEX_SETS: u64 = 200;
const CANCEL_HITS: u64 = 1000;
const NO_ARCH_CASES: u64 = 200;
const STRUCTURE_CASES: u64 = 500;
const LAW_BUDGET: Duration = Duration::from_secs(120);
const CANCEL_BUDGET: Duration = Duration::from_secs(60);
const HUNT_BUDGET: Duration = Duration::from_secs(5);

type Check = (bool, String);
type Criterion = (&'static str, fn() -> Check);

fn cfg(seed: u64, cases: u64) -> SuiteConfig {
    SuiteConfig {
        seed,
        cases,
        n_max: 6,
        exec: Exec::Parallel,
    }
}

fn orthant(d: usize) -> Arc<Wedge> {
    Arc::new(Wedge::orthant(d))
}

fn elem(d: usize) -> ElemCornet {
    ElemCornet::new(orthant(d), SamplerConfig::default())
}

fn set_q(d: usize, repr: Repr) -> SetCornet {
    SetCornet::new(orthant(d), Carrier::Rational, repr, SamplerConfig::default())
}

fn fuzzy(d: usize, p: Rational) -> FuzzyCornet {
    FuzzyCornet::new(orthant(d), p, Repr::Discrete, SamplerConfig::default()).expect("valid fuzzy cornet")
}

fn eps() -> Vec<Rational> {
    vec![rat(1), ratio(1, 2), ratio(1, 4), ratio(1, 8), ratio(1, 1 << 20)]
}

/// Tallies reports: all must have at least `min_cases` cases and no violations.
#[derive(Default)]
struct Tally {
    laws: usize,
    violations: u64,
    short: Vec<String>,
    failing: Vec<String>,
}

impl Tally {
    fn add(&mut self, family: &str, reports: &[LawReport], min_cases: u64) {
        for r in reports {
            self.laws += 1;
            self.violations += r.violations;
            if r.cases < min_cases {
                self.short.push(format!("{family}/{}", r.law));
            }
            if r.violations > 0 {
                self.failing.push(format!("{family}/{}", r.law));
            }
        }
    }

    fn ok(&self) -> bool {
        self.violations == 0 && self.short.is_empty() && self.laws > 0
    }

    fn summary(&self) -> String {
        let mut s = format!("{} laws, {} violations", self.laws, self.violations);
        if !self.failing.is_empty() {
            s += &format!(", failing {:?}", self.failing);
        }
        if !self.short.is_empty() {
            s += &format!(", too few cases {:?}", self.short);
        }
        s
    }
}

fn law_families(c: &SuiteConfig, run: &mut dyn FnMut(&str, Vec<LawReport>)) {
    for d in 1..=3 {
        run(&format!("elemQ d={d}"), check_cornet_laws(&elem(d), c));
    }
    for d in 1..=3 {
        run(&format!("setQ discrete d={d}"), check_cornet_laws(&set_q(d, Repr::Discrete), c));
    }
    for d in 1..=2 {
        run(&format!("setQ polytopic d={d}"), check_cornet_laws(&set_q(d, Repr::Polytopic), c));
    }
    let z = make_int_set_cornet(1, SamplerConfig::integer_range(-4, 4));
    run("setZ d=1", check_cornet_laws(&z, c));
    for d in 1..=2 {
        run(&format!("fuzzyQ d={d}"), check_cornet_laws(&fuzzy(d, rat(1)), c));
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut t = Tally::default();
    law_families(&cfg(101, LAW_CASES), &mut |fam, r| t.add(fam, &r, LAW_CASES));
    let elapsed = start.elapsed();
    (
        t.ok() && elapsed < LAW_BUDGET,
        format!("{}, {:.1}s (budget {}s)", t.summary(), elapsed.as_secs_f64(), LAW_BUDGET.as_secs()),
    )
}

fn criterion_2() -> Check {
    let c = cfg(202, LEMMA_CASES);
    let mut t = Tally::default();
    for d in 1..=3 {
        t.add("elemQ", &check_lemma_identities(&elem(d), &c), LEMMA_CASES);
        t.add("setQ discrete", &check_lemma_identities(&set_q(d, Repr::Discrete), &c), LEMMA_CASES);
    }
    for d in 1..=2 {
        t.add("setQ polytopic", &check_lemma_identities(&set_q(d, Repr::Polytopic), &c), LEMMA_CASES);
        t.add("fuzzyQ", &check_lemma_identities(&fuzzy(d, rat(1)), &c), LEMMA_CASES);
    }
    let z = make_int_set_cornet(1, SamplerConfig::integer_range(-4, 4));
    t.add("setZ", &check_lemma_identities(&z, &c), LEMMA_CASES);
    (t.ok(), t.summary())
}

fn criterion_3() -> Check {
    let c = cfg(303, EMBED_CASES);
    let mut t = Tally::default();
    for d in 1..=2 {
        match phi_suite(&elem(d), &set_q(d, Repr::Discrete), &c) {
            Ok(r) => t.add("phi", &r, EMBED_CASES),
            Err(e) => t.failing.push(format!("phi d={d}: {e}")),
        }
        for repr in [Repr::Discrete, Repr::Polytopic] {
            match chi_suite(&set_q(d, repr), &fuzzy(d, rat(1)), &c) {
                Ok(r) => t.add("chi", &r, EMBED_CASES),
                Err(e) => t.failing.push(format!("chi d={d}: {e}")),
            }
        }
    }
    (t.ok() && t.failing.is_empty(), t.summary())
}

fn int_vec(v: &[i64]) -> RVec {
    RVec::new(v.iter().map(|&x| rat(x)).collect())
}

fn grid(d: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for _ in 0..d {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

/// A step function with up to three levels whose cuts have integer generators.
fn integer_step(d: usize, sampler: &SamplerConfig, seed: u64, case: u64) -> StepFuzzy {
    let mut rng = case_rng(seed, case);
    let w = orthant(d);
    let alphas = [rat(1), ratio(2, 3), ratio(1, 3)];
    let k = 1 + (sampler.integer(&mut rng).unsigned_abs() as usize % 3);
    let mut gens: Vec<RVec> = Vec::new();
    let mut levels = Vec::new();
    for alpha in alphas.iter().take(k) {
        for _ in 0..sampler.generator_count(&mut rng) {
            gens.push(sampler.integer_vector(&mut rng, d));
        }
        let cut = UpperSet::discrete(w.clone(), Carrier::Rational, gens.clone()).expect("valid cut");
        levels.push(Level {
            alpha: alpha.clone(),
            cut,
        });
    }
    StepFuzzy::new(rat(1), levels).expect("valid step function")
}

fn criterion_4() -> Check {
    let sampler = SamplerConfig {
        max_generators: 2,
        ..SamplerConfig::integer_range(-2, 2)
    };
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    let mut points = 0u64;
    for d in 1..=2usize {
        let box_pts = grid(d, -8, 8);
        for case in 0..ORACLE_PAIRS {
            let f = integer_step(d, &sampler, 404 + d as u64, 2 * case);
            let g = integer_step(d, &sampler, 404 + d as u64, 2 * case + 1);
            let h = match oplus(&f, &g) {
                Ok(h) => h,
                Err(e) => {
                    mismatches.push(format!("d={d} case {case}: {e}"));
                    continue;
                }
            };
            pairs += 1;
            let fv: BTreeMap<&Vec<i64>, Rational> = box_pts.iter().map(|p| (p, f.value(&int_vec(p)))).collect();
            let gv: BTreeMap<&Vec<i64>, Rational> = box_pts.iter().map(|p| (p, g.value(&int_vec(p)))).collect();
            for x in grid(d, -4, 4) {
                let mut best = rat(0);
                for u in &box_pts {
                    let v: Vec<i64> = x.iter().zip(u).map(|(a, b)| a - b).collect();
                    if let Some(gval) = gv.get(&v) {
                        let m = std::cmp::min(&fv[u], gval);
                        if *m > best {
                            best = m.clone();
                        }
                    }
                }
                points += 1;
                if h.value(&int_vec(&x)) != best {
                    mismatches.push(format!("d={d} case {case} at {x:?}"));
                    break;
                }
            }
        }
    }
    (
        mismatches.is_empty() && pairs >= 2 * ORACLE_PAIRS,
        format!("{pairs} pairs, {points} grid points, {} mismatches {:?}", mismatches.len(), mismatches.iter().take(3).collect::<Vec<_>>()),
    )
}

/// `A` is n-convex iff `n*A = n·A`; both sides are computed on the integer
/// box that holds every minimal point, `n·A` from tuples of grid points of A.
fn tuple_convex(a: &UpperSet, n: i64) -> bool {
    let d = a.dim();
    let hi = 3 * n;
    let b = grid(d, 0, hi);
    let s1: BTreeSet<Vec<i64>> = b.iter().filter(|p| a.contains_point(&int_vec(p))).cloned().collect();
    let mut sums = s1.clone();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for s in &sums {
            for q in &s1 {
                let t: Vec<i64> = s.iter().zip(q).map(|(x, y)| x + y).collect();
                if t.iter().all(|&c| c <= hi) {
                    next.insert(t);
                }
            }
        }
        sums = next;
    }
    b.iter().all(|p| {
        let scaled = RVec::new(p.iter().map(|&c| ratio(c, n)).collect());
        sums.contains(p) == a.contains_point(&scaled)
    })
}

fn criterion_5() -> Check {
    let sampler = SamplerConfig {
        max_generators: 4,
        ..SamplerConfig::integer_range(0, 3)
    };
    let mut disagreements = Vec::new();
    let mut convex_hits = 0;
    for case in 0..CONVEX_SETS {
        let d = 1 + (case % 2) as usize;
        let inst = SetCornet::new(orthant(d), Carrier::Rational, Repr::Discrete, sampler.clone());
        let a = inst.sample(&mut case_rng(505, case));
        for n in 2..=3u64 {
            let brute = tuple_convex(&a, n as i64);
            let decided = is_n_convex_set(&a, n, MULTISET_CAP);
            let law = is_n_convex(&inst, &a, n);
            convex_hits += brute as u64;
            if decided.as_ref().ok() != Some(&brute) || law != brute {
                disagreements.push(format!("{a} n={n}: brute {brute}, decided {decided:?}, law {law}"));
            }
        }
    }
    (
        disagreements.is_empty(),
        format!(
            "{CONVEX_SETS} sets, n in 2..=3, {convex_hits} convex, {} disagreements {:?}",
            disagreements.len(),
            disagreements.iter().take(2).collect::<Vec<_>>()
        ),
    )
}

fn cancel_check(label: &str, theorem: LawReport, direct: LawReport, elapsed: Duration) -> Check {
    let hits = theorem.premise_hits.unwrap_or(0);
    let direct_hits = direct.premise_hits.unwrap_or(0);
    (
        hits >= CANCEL_HITS
            && direct_hits >= CANCEL_HITS
            && theorem.violations == 0
            && direct.violations == 0
            && elapsed < CANCEL_BUDGET,
        format!(
            "{label}: {hits} theorem and {direct_hits} direct premise hits, {} violations, {:.1}s",
            theorem.violations + direct.violations,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Check {
    let c = cfg(606, CANCEL_HITS);
    let start = Instant::now();
    let sets = set_q(2, Repr::Discrete);
    let set = match set_arch_family(&sets, &eps()) {
        Ok(fam) => {
            let th = cancellation_suite(&sets, &fam, &c, 2, "cancel.theorem", |rng| sets.cancellation_triple(rng));
            let dr = direct_cancellation_suite(&sets, &c, "cancel.direct", |rng| sets.cancellation_triple(rng));
            match th {
                Ok(th) => cancel_check("setQ d=2", th, dr, start.elapsed()),
                Err(e) => (false, format!("setQ d=2: {e}")),
            }
        }
        Err(e) => (false, format!("setQ d=2 family: {e}")),
    };
    let start = Instant::now();
    let fz = fuzzy(1, rat(1));
    let fuzz = match fuzzy_arch_family(&fz, &eps()) {
        Ok(fam) => {
            let th = cancellation_suite(&fz, &fam, &c, 2, "cancel.theorem", |rng| fz.cancellation_triple(rng));
            let dr = direct_cancellation_suite(&fz, &c, "cancel.direct", |rng| fz.cancellation_triple(rng));
            match th {
                Ok(th) => cancel_check("fuzzyQ d=1", th, dr, start.elapsed()),
                Err(e) => (false, format!("fuzzyQ d=1: {e}")),
            }
        }
        Err(e) => (false, format!("fuzzyQ d=1 family: {e}")),
    };
    (set.0 && fuzz.0, format!("{}; {}", set.1, fuzz.1))
}

fn hunt(universe: &str, ablate: &str) -> Result<(Value, Duration), String> {
    let start = Instant::now();
    let r = cmd_hunt(&HuntArgs {
        universe: universe.into(),
        range: "0..3".into(),
        ablate: ablate.into(),
        max_n: 6,
    })
    .map_err(|e| e.to_string())?;
    Ok((r.json, start.elapsed()))
}

fn criterion_7() -> Check {
    let inst = make_int_set_cornet(1, SamplerConfig::integer_range(0, 3));
    let s = |pts: &[i64]| {
        UpperSet::discrete(inst.wedge_arc(), Carrier::Integer, pts.iter().map(|&p| int_vec(&[p])).collect())
            .expect("valid set")
    };
    let example = violates_cancellation(&inst, &s(&[0, 1, 2]), &s(&[0, 2]), &s(&[0, 1]));
    let found = match hunt("z1", "convexity") {
        Ok((j, t)) => {
            let hit = !j["hit"].is_null();
            (hit && t < HUNT_BUDGET, format!("convexity ablated: hit {hit} after {} triples in {:.3}s", j["triples_examined"], t.as_secs_f64()))
        }
        Err(e) => (false, e),
    };
    let exhausted = match hunt("z1-intervals", "none") {
        Ok((j, _)) => (
            j["hit"].is_null() && j["passed"] == Value::Bool(true),
            format!("intervals, no ablation: {} triples, hit {}", j["triples_examined"], !j["hit"].is_null()),
        ),
        Err(e) => (false, e),
    };
    (
        example && found.0 && exhausted.0,
        format!("x={{0,1,2}} y={{0,2}} z={{0,1}} violates: {example}; {}; {}", found.1, exhausted.1),
    )
}

fn criterion_8() -> Check {
    let c = cfg(808, NO_ARCH_CASES);
    let mut t = Tally::default();
    for d in 1..=2 {
        t.add("fuzzyQ p=1/2", &[no_archimedean_suite(&fuzzy(d, ratio(1, 2)), &c)], NO_ARCH_CASES);
    }
    (t.ok(), t.summary())
}

fn criterion_9() -> Check {
    let c = cfg(909, STRUCTURE_CASES);
    let mut t = Tally::default();
    let mut errors = Vec::new();
    let e = elem(2);
    match elem_arch_family(&e, &eps()) {
        Ok(fam) => {
            t.add("elemQ", &subcornet_closure_suite(&e, &fam, &c, 3), STRUCTURE_CASES);
            match closure_props_suite(&e, &fam, &c) {
                Ok(r) => t.add("elemQ", &r, STRUCTURE_CASES),
                Err(err) => errors.push(err.to_string()),
            }
        }
        Err(err) => errors.push(err.to_string()),
    }
    let s = set_q(2, Repr::Discrete);
    match set_arch_family(&s, &eps()) {
        Ok(fam) => {
            t.add("setQ", &subcornet_closure_suite(&s, &fam, &c, 3), STRUCTURE_CASES);
            match closure_props_suite(&s, &fam, &c) {
                Ok(r) => t.add("setQ", &r, STRUCTURE_CASES),
                Err(err) => errors.push(err.to_string()),
            }
        }
        Err(err) => errors.push(err.to_string()),
    }
    let f = fuzzy(1, rat(1));
    match fuzzy_arch_family(&f, &eps()) {
        Ok(fam) => {
            t.add("fuzzyQ", &subcornet_closure_suite(&f, &fam, &c, 3), STRUCTURE_CASES);
            match closure_props_suite(&f, &fam, &c) {
                Ok(r) => t.add("fuzzyQ", &r, STRUCTURE_CASES),
                Err(err) => errors.push(err.to_string()),
            }
        }
        Err(err) => errors.push(err.to_string()),
    }
    let mut summary = t.summary();
    if !errors.is_empty() {
        summary += &format!(", errors {errors:?}");
    }
    (t.ok() && errors.is_empty(), summary)
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cornet"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    match out.status.code() {
        Some(0) | Some(1) => Ok(out.stdout),
        code => Err(format!("exit {code:?}: {}", String::from_utf8_lossy(&out.stderr))),
    }
}

fn criterion_10() -> Check {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../instances");
    let mut notes = Vec::new();
    let mut ok = true;
    for file in ["setq_orthant_d2.json", "fuzzy_q1.json"] {
        let path = format!("{dir}/{file}");
        let run = |jobs: &str| run_cli(&["--format", "json", "--jobs", jobs, "laws", &path, "--cases", "40"]);
        match (run("1"), run("4")) {
            (Ok(a), Ok(b)) => {
                let same = a == b && !a.is_empty();
                ok &= same;
                notes.push(format!("{file}: {} bytes, identical {same}", a.len()));
            }
            (a, b) => {
                ok = false;
                notes.push(format!("{file}: {:?} / {:?}", a.err(), b.err()));
            }
        }
    }
    (ok, notes.join("; "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cornet laws", criterion_1),
        ("lemma identities", criterion_2),
        ("embeddings", criterion_3),
        ("sup-min grid oracle", criterion_4),
        ("n-convexity against tuple brute force", criterion_5),
        ("randomized cancellation", criterion_6),
        ("ablation hunt", criterion_7),
        ("no Archimedean elements below p = 1", criterion_8),
        ("structure and closure suites", criterion_9),
        ("determinism across --jobs", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = check();
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} [{:.1}s] {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
