//! The four subcommands. Each returns a [`RunReport`] whose JSON form is a
//! deterministic function of the file, the flags and the seed.

use std::fmt::Write as _;
use std::str::FromStr;

use cornet::cornet::cancel::{
    ablation_hunt, cancellation_check, cancellation_suite, direct_cancellation_suite, Ablation, CancelOptions,
    CancelOutcome, Hypotheses,
};
use cornet::cornet::hull::hull_props_check;
use cornet::cornet::laws::{check_cornet_laws, check_lemma_identities, convexity_suite};
use cornet::cornet::order::{closure_props_suite, subcornet_closure_suite};
use cornet::cornet::{ArchFamily, CaseRng, Cornet, Exec, LawReport, SuiteConfig};
use cornet::embed::{chi_suite, phi_suite};
use cornet::fuzzy::{chi_embed, is_n_quasiconcave, no_archimedean_suite, support, FuzzyCornet};
use cornet::geometry::RVec;
use cornet::sets::universe::{parse_range, z1_universe, z_convex, Z1Universe};
use cornet::sets::{is_n_convex_set, make_int_set_cornet, phi_embed, Carrier, SetCornet};
use cornet::wedge::ElemCornet;
use cornet::sample::SamplerConfig;
use serde_json::{json, Map, Value};

use crate::instance::{all_elements, element, load, InstanceFile, Loaded, Universe};
use crate::{CliError, CliResult, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Laws,
    Lemma,
    Convexity,
    Hull,
    Structure,
    Closure,
    Cancellation,
    Embedding,
}

#[derive(Clone, Debug)]
pub struct LawsArgs {
    pub seed: Option<u64>,
    pub cases: Option<u64>,
    pub max_n: Option<u64>,
    /// Empty means every suite that applies to the universe.
    pub suites: Vec<Suite>,
    pub timings: bool,
    pub exec: Exec,
}

fn wants(args: &LawsArgs, s: Suite) -> bool {
    args.suites.is_empty() || args.suites.contains(&s)
}

type Triple<'a, E> = dyn Fn(&mut CaseRng) -> (E, E, E) + Sync + Send + 'a;

fn generic_suites<U: Universe>(
    inst: &U,
    fam: Option<&ArchFamily<U::Elem>>,
    cfg: &SuiteConfig,
    args: &LawsArgs,
    triple: Option<&Triple<'_, U::Elem>>,
) -> CliResult<Vec<LawReport>> {
    let mut out = Vec::new();
    if wants(args, Suite::Laws) {
        out.extend(check_cornet_laws(inst, cfg));
    }
    if wants(args, Suite::Lemma) {
        out.extend(check_lemma_identities(inst, cfg));
    }
    if wants(args, Suite::Convexity) {
        out.extend(convexity_suite(inst, cfg));
    }
    if wants(args, Suite::Hull) && inst.hull(&inst.zero()).is_some() {
        out.extend(hull_props_check(inst, cfg)?);
    }
    if let Some(fam) = fam {
        if wants(args, Suite::Structure) {
            out.extend(subcornet_closure_suite(inst, fam, cfg, 3));
        }
        if wants(args, Suite::Closure) {
            out.extend(closure_props_suite(inst, fam, cfg)?);
        }
        if let (true, Some(t)) = (wants(args, Suite::Cancellation), triple) {
            out.push(cancellation_suite(inst, fam, cfg, 2, "cancel.theorem", t)?);
            out.push(direct_cancellation_suite(inst, cfg, "cancel.direct", t));
        }
    }
    Ok(out)
}

fn laws_report(universe: String, cfg: &SuiteConfig, reports: Vec<LawReport>, timings: bool) -> RunReport {
    let violations: u64 = reports.iter().map(|r| r.violations).sum();
    let passed = violations == 0;
    let mut text = String::new();
    let _ = writeln!(text, "universe {universe}, seed {}, {} cases, n <= {}", cfg.seed, cfg.cases, cfg.n_max);
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = write!(text, "{status} {:<34} cases={}", r.law, r.cases);
        if let Some(h) = r.premise_hits {
            let _ = write!(text, " premise_hits={h}");
        }
        if r.violations > 0 {
            let _ = write!(text, " violations={}", r.violations);
        }
        if !r.findings.is_empty() {
            let _ = write!(text, " findings={}", r.findings.len());
        }
        if timings {
            let _ = write!(text, " time={:.3}s", r.elapsed.as_secs_f64());
        }
        text.push('\n');
        for c in &r.counterexamples {
            let _ = writeln!(text, "    counterexample: {c}");
        }
    }
    let _ = writeln!(
        text,
        "{} laws, {} violations: {}",
        reports.len(),
        violations,
        if passed { "all hold" } else { "VIOLATED" }
    );
    let mut json = json!({
        "command": "laws",
        "universe": universe,
        "seed": cfg.seed,
        "cases": cfg.cases,
        "n_max": cfg.n_max,
        "passed": passed,
        "violations": violations,
        "laws": reports,
    });
    if timings {
        let t: Vec<Value> = reports
            .iter()
            .map(|r| json!({ "law": r.law, "seconds": r.elapsed.as_secs_f64() }))
            .collect();
        json["timings"] = Value::Array(t);
    }
    RunReport { json, text, passed }
}

fn elem_triple(inst: &ElemCornet) -> impl Fn(&mut CaseRng) -> (RVec, RVec, RVec) + Sync + Send + '_ {
    move |rng| {
        let y = inst.sample(rng);
        let w = inst.sample_nonnegative(rng).expect("wedge members");
        (&y - &w, y, inst.sample(rng))
    }
}

pub fn cmd_laws(file: &InstanceFile, args: &LawsArgs) -> CliResult<RunReport> {
    let loaded = load(file)?;
    let o = &file.options;
    let cfg = SuiteConfig {
        seed: args.seed.unwrap_or(o.seed),
        cases: args.cases.unwrap_or(o.cases),
        n_max: args.max_n.unwrap_or(o.n_max),
        exec: args.exec,
    };
    if cfg.n_max == 0 || cfg.n_max > 64 {
        return Err(CliError::input("--max-n must be between 1 and 64"));
    }
    let (name, reports) = match &loaded {
        Loaded::Elem(inst, fam) => {
            let t = elem_triple(inst);
            (inst.name(), generic_suites(inst, fam.as_ref(), &cfg, args, Some(&t))?)
        }
        Loaded::Set(inst, fam) => {
            let t = |rng: &mut CaseRng| inst.cancellation_triple(rng);
            let triple: Option<&Triple<'_, _>> = (inst.carrier() == Carrier::Rational).then_some(&t as &Triple<'_, _>);
            let mut r = generic_suites(inst, fam.as_ref(), &cfg, args, triple)?;
            if wants(args, Suite::Embedding) && inst.carrier() == Carrier::Rational {
                let elems = ElemCornet::new(inst.wedge_arc(), inst.sampler().clone());
                let fz = FuzzyCornet::new(inst.wedge_arc(), cornet::geometry::rat(1), cornet::sets::Repr::Discrete, inst.sampler().clone())?;
                r.extend(phi_suite(&elems, inst, &cfg)?);
                r.extend(chi_suite(inst, &fz, &cfg)?);
            }
            (inst.name(), r)
        }
        Loaded::Fuzzy(inst, fam) => {
            let t = |rng: &mut CaseRng| inst.cancellation_triple(rng);
            let mut r = generic_suites(inst, fam.as_ref(), &cfg, args, Some(&t))?;
            if wants(args, Suite::Structure) && fam.is_none() && *inst.p() < cornet::geometry::rat(1) {
                r.push(no_archimedean_suite(inst, &cfg));
            }
            (inst.name(), r)
        }
    };
    Ok(laws_report(name, &cfg, reports, args.timings))
}

#[derive(Clone, Debug)]
pub struct CancelArgs {
    pub x: String,
    pub y: String,
    pub z: String,
    pub m: u64,
    pub horizon: Option<u64>,
}

fn cancel_generic<U: Universe>(
    inst: &U,
    fam: Option<&ArchFamily<U::Elem>>,
    file: &InstanceFile,
    args: &CancelArgs,
) -> CliResult<RunReport> {
    let fam = fam.ok_or_else(|| {
        CliError::input(format!("{} has no Archimedean family; cancel needs one", inst.name()))
    })?;
    let x = element(inst, file, &args.x)?;
    let y = element(inst, file, &args.y)?;
    let z = element(inst, file, &args.z)?;
    let challenge: Vec<U::Elem> = all_elements(inst, file)?.into_iter().map(|(_, e)| e).collect();
    let opts = CancelOptions {
        n_max: args.horizon.or(file.options.horizon).unwrap_or(file.options.n_max),
        replay: true,
    };
    let rec = cancellation_check(inst, &x, &y, &z, args.m, fam, &challenge, &opts)?;
    let passed = rec.outcome != CancelOutcome::ConclusionFails;
    let mark = |b: bool| if b { "ok" } else { "FAILS" };
    let mut text = String::new();
    let _ = writeln!(text, "universe {}", inst.name());
    let _ = writeln!(text, "x = {}: {}", args.x, inst.encode(&x));
    let _ = writeln!(text, "y = {}: {}", args.y, inst.encode(&y));
    let _ = writeln!(text, "z = {}: {}", args.z, inst.encode(&z));
    let _ = writeln!(text, "hypothesis z bounded: {}", mark(rec.z_bounded.holds()));
    let _ = writeln!(
        text,
        "hypothesis y closed: {} ({} challenges)",
        mark(rec.y_closed.holds()),
        rec.y_closed.challenges
    );
    let _ = writeln!(text, "hypothesis y {}-convex: {}", args.m, mark(rec.y_m_convex));
    match rec.premise {
        None => {
            let _ = writeln!(text, "hypothesis not met: conclusion not asserted");
        }
        Some(p) => {
            let _ = writeln!(text, "premise x+z <= y+z: {}", mark(p));
            if let Some(c) = rec.conclusion {
                let _ = writeln!(text, "conclusion x <= y: {}", mark(c));
            }
        }
    }
    for l in &rec.chain {
        let _ = writeln!(text, "  {} {}", if l.holds { "ok   " } else { "FAILS" }, l.link);
    }
    let outcome = serde_json::to_value(rec.outcome).expect("outcome serializes");
    let _ = writeln!(text, "outcome: {}", outcome.as_str().unwrap_or_default());
    let json = json!({
        "command": "cancel",
        "universe": inst.name(),
        "elements": { "x": args.x, "y": args.y, "z": args.z },
        "passed": passed,
        "record": rec,
    });
    Ok(RunReport { json, text, passed })
}

pub fn cmd_cancel(file: &InstanceFile, args: &CancelArgs) -> CliResult<RunReport> {
    if args.m < 2 {
        return Err(CliError::input("--m must be at least 2"));
    }
    match &load(file)? {
        Loaded::Elem(inst, fam) => cancel_generic(inst, fam.as_ref(), file, args),
        Loaded::Set(inst, fam) => cancel_generic(inst, fam.as_ref(), file, args),
        Loaded::Fuzzy(inst, fam) => cancel_generic(inst, fam.as_ref(), file, args),
    }
}

#[derive(Clone, Debug)]
pub struct HuntArgs {
    pub universe: String,
    pub range: String,
    pub ablate: String,
    pub max_n: u64,
}

pub fn cmd_hunt(args: &HuntArgs) -> CliResult<RunReport> {
    let kind = Z1Universe::from_str(&args.universe)?;
    let ablate = Ablation::from_str(&args.ablate)?;
    let (lo, hi) = parse_range(&args.range)?;
    if args.max_n < 2 || args.max_n > 64 {
        return Err(CliError::input("--max-n must be between 2 and 64"));
    }
    let inst = make_int_set_cornet(1, SamplerConfig::integer_range(lo, hi));
    let universe = z1_universe(&inst, kind, lo, hi)?;
    let always = |_: &cornet::sets::UpperSet| true;
    let convex = |x: &cornet::sets::UpperSet| z_convex(&inst, x, args.max_n);
    let hyp = Hypotheses {
        bounded: &always,
        closed: &always,
        convex: &convex,
    };
    let hunt = ablation_hunt(&inst, &universe, ablate, &hyp);
    let passed = !(ablate == Ablation::None && hunt.hit.is_some());
    let ablate_json = serde_json::to_value(ablate).expect("ablation serializes");
    let mut text = String::new();
    let _ = writeln!(
        text,
        "universe {} over {lo}..{hi}: {} elements, ablate {}",
        args.universe,
        universe.len(),
        ablate_json.as_str().unwrap_or_default()
    );
    let hit = match &hunt.hit {
        Some((x, y, z)) => {
            let _ = writeln!(text, "counterexample after {} triples:", hunt.triples_examined);
            let _ = writeln!(text, "  x = {x}\n  y = {y}\n  z = {z}");
            let _ = writeln!(text, "  x+z = {}, y+z = {}, x <= y fails", inst.add(x, z), inst.add(y, z));
            json!({ "x": inst.encode(x), "y": inst.encode(y), "z": inst.encode(z) })
        }
        None => {
            let _ = writeln!(text, "exhausted {} triples: no counterexample", hunt.triples_examined);
            Value::Null
        }
    };
    let json = json!({
        "command": "hunt",
        "universe": args.universe,
        "range": [lo, hi],
        "ablate": ablate_json,
        "elements": universe.len(),
        "triples_examined": hunt.triples_examined,
        "hit": hit,
        "passed": passed,
    });
    Ok(RunReport { json, text, passed })
}

#[derive(Clone, Debug)]
pub struct InspectArgs {
    pub element: String,
    pub op: String,
}

enum Op {
    Hull,
    Convex(u64),
    Closure,
    Support,
    Embed,
}

fn parse_op(s: &str) -> CliResult<Op> {
    match s {
        "hull" => Ok(Op::Hull),
        "closure" => Ok(Op::Closure),
        "support" => Ok(Op::Support),
        "embed" => Ok(Op::Embed),
        _ => match s.strip_prefix("convex:").map(str::parse::<u64>) {
            Some(Ok(n)) if n >= 1 => Ok(Op::Convex(n)),
            _ => Err(CliError::input(format!(
                "unknown op {s:?} (expected hull, convex:N, closure, support or embed)"
            ))),
        },
    }
}

fn inapplicable(op: &str, universe: &str) -> CliError {
    CliError::input(format!("op {op} does not apply to {universe}"))
}

pub fn cmd_inspect(file: &InstanceFile, args: &InspectArgs) -> CliResult<RunReport> {
    let op = parse_op(&args.op)?;
    let loaded = load(file)?;
    let (universe, input, target, result) = match &loaded {
        Loaded::Elem(inst, _) => {
            let x = element(inst, file, &args.element)?;
            let (target, r) = match op {
                Op::Hull => (inst.name(), inst.encode(&inst.hull(&x).expect("identity hull"))),
                Op::Closure => (inst.name(), inst.encode(&inst.closure(&x).expect("identity closure"))),
                Op::Convex(_) => (inst.name(), Value::Bool(true)),
                Op::Embed => {
                    let s = SetCornet::new(inst.wedge_arc(), Carrier::Rational, cornet::sets::Repr::Discrete, SamplerConfig::default());
                    (s.name(), s.encode(&phi_embed(inst.wedge_arc(), x.clone())?))
                }
                Op::Support => return Err(inapplicable(&args.op, &inst.name())),
            };
            (inst.name(), inst.encode(&x), target, r)
        }
        Loaded::Set(inst, _) => {
            let a = element(inst, file, &args.element)?;
            let (target, r) = match op {
                Op::Hull => match inst.hull(&a) {
                    Some(h) => (inst.name(), inst.encode(&h)),
                    None => return Err(inapplicable(&args.op, &inst.name())),
                },
                Op::Closure => (inst.name(), inst.encode(&a)),
                Op::Convex(n) => (inst.name(), Value::Bool(is_n_convex_set(&a, n, inst.multiset_cap())?)),
                Op::Embed if inst.carrier() == Carrier::Rational => {
                    let f = FuzzyCornet::new(inst.wedge_arc(), cornet::geometry::rat(1), cornet::sets::Repr::Discrete, SamplerConfig::default())?;
                    (f.name(), f.encode(&chi_embed(a.clone())?))
                }
                _ => return Err(inapplicable(&args.op, &inst.name())),
            };
            (inst.name(), inst.encode(&a), target, r)
        }
        Loaded::Fuzzy(inst, _) => {
            let f = element(inst, file, &args.element)?;
            let (target, r) = match op {
                Op::Hull => (inst.name(), inst.encode(&inst.hull(&f).expect("rational cuts"))),
                Op::Closure => (inst.name(), inst.encode(&f)),
                Op::Convex(n) => (
                    inst.name(),
                    Value::Bool(is_n_quasiconcave(&f, n, cornet::sets::MULTISET_CAP)?),
                ),
                Op::Support => {
                    let s = SetCornet::new(inst.wedge_arc(), Carrier::Rational, cornet::sets::Repr::Discrete, SamplerConfig::default());
                    (s.name(), s.encode(support(&f)))
                }
                Op::Embed => return Err(inapplicable(&args.op, &inst.name())),
            };
            (inst.name(), inst.encode(&f), target, r)
        }
    };
    let mut text = String::new();
    let _ = writeln!(text, "universe {universe}");
    let _ = writeln!(text, "{} = {input}", args.element);
    let _ = writeln!(text, "{}({}) in {target}:", args.op, args.element);
    let _ = writeln!(text, "{result}");
    let mut body = Map::new();
    body.insert("command".into(), json!("inspect"));
    body.insert("universe".into(), json!(universe));
    body.insert("element".into(), json!(args.element));
    body.insert("input".into(), input);
    body.insert("op".into(), json!(args.op));
    body.insert("target".into(), json!(target));
    body.insert("result".into(), result);
    body.insert("passed".into(), json!(true));
    Ok(RunReport {
        json: Value::Object(body),
        text,
        passed: true,
    })
}
