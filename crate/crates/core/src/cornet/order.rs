//! Nonnegative, Archimedean and bounded elements, continuity of the family,
//! closures, and the subcornet properties built on them.

use serde::Serialize;
use serde_json::Value;

use super::laws::{nonneg, tuple, with_ints};
use super::report::{multipliers, Case, LawReport, SuiteConfig};
use super::{dot_mul, is_n_convex, ArchFamily, CaseRng, Cornet, Horizon, Verdict};
use crate::error::{Error, Result};

pub fn is_nonnegative<C: Cornet + ?Sized>(inst: &C, x: &C::Elem) -> bool {
    inst.leq(&inst.zero(), x)
}

/// Smallest `n0 <= n_max` such that `pred(n)` holds for all `n0 <= n <= n_max`.
fn stable_from(n_max: u64, pred: impl Fn(u64) -> bool) -> Option<u64> {
    let mut n0 = None;
    for n in (1..=n_max).rev() {
        if pred(n) {
            n0 = Some(n);
        } else {
            break;
        }
    }
    n0
}

/// Searches `0 ⪯ u + n * x` for `n <= n_max` and every probe `u`.
pub fn archimedean_at_horizon<C: Cornet + ?Sized>(
    inst: &C,
    x: &C::Elem,
    h: &Horizon<C::Elem>,
) -> Verdict {
    let zero = inst.zero();
    let multiples: Vec<C::Elem> = (1..=h.n_max).map(|n| inst.star(n, x)).collect();
    let mut n0 = 1;
    for (i, u) in h.probes.iter().enumerate() {
        let found = stable_from(h.n_max, |n| {
            inst.leq(&zero, &inst.add(u, &multiples[(n - 1) as usize]))
        });
        match found {
            Some(k) => n0 = n0.max(k),
            None => {
                return Verdict::RefutedAtHorizon {
                    probe: i,
                    horizon: h.n_max,
                }
            }
        }
    }
    Verdict::VerifiedAtHorizon {
        n0,
        horizon: h.n_max,
    }
}

/// Exact decision when the instance provides one, horizon search otherwise.
pub fn is_archimedean<C: Cornet + ?Sized>(inst: &C, x: &C::Elem, h: &Horizon<C::Elem>) -> Verdict {
    inst.archimedean_exact(x, &h.probes)
        .unwrap_or_else(|| archimedean_at_horizon(inst, x, h))
}

/// `x ⪯ n * a` for all `n0 <= n <= n_max`.
pub fn bounded_at_horizon<C: Cornet + ?Sized>(
    inst: &C,
    x: &C::Elem,
    a: &C::Elem,
    n_max: u64,
) -> Option<u64> {
    stable_from(n_max, |n| inst.leq(x, &inst.star(n, a)))
}

pub fn is_a_bounded<C: Cornet + ?Sized>(
    inst: &C,
    x: &C::Elem,
    fam: &ArchFamily<C::Elem>,
    n_max: u64,
) -> Verdict {
    let mut n0 = 1;
    let mut analytic = true;
    for (i, a) in fam.elements().enumerate() {
        match inst.bounded_exact(x, a) {
            Some(Some(k)) => n0 = n0.max(k),
            Some(None) => {
                return Verdict::AnalyticallyRefuted {
                    reason: format!("not below any multiple of family member {i}"),
                }
            }
            None => {
                analytic = false;
                match bounded_at_horizon(inst, x, a, n_max) {
                    Some(k) => n0 = n0.max(k),
                    None => {
                        return Verdict::RefutedAtHorizon {
                            probe: i,
                            horizon: n_max,
                        }
                    }
                }
            }
        }
    }
    if analytic {
        Verdict::AnalyticallyVerified { n0 }
    } else {
        Verdict::VerifiedAtHorizon { n0, horizon: n_max }
    }
}

/// One member's continuity check: `b + b ⪯ a` for the witness `b`, then the
/// halving chain `a_k = witness(a_{k-1})` with `n · a_k ⪯ a` and `n * a_k ⪯ a`
/// whenever `n <= 2^k`.
fn continuity_case<C: Cornet + ?Sized>(
    inst: &C,
    fam: &ArchFamily<C::Elem>,
    a: &C::Elem,
    n_max: u64,
) -> Case {
    let Some(b) = fam.witness(a) else {
        return Case::Fail(serde_json::json!({ "a": inst.encode(a), "reason": "missing witness" }));
    };
    if !inst.leq(&inst.add(&b, &b), a) {
        return Case::Fail(tuple(inst, &[("a", a), ("b", &b)]));
    }
    let mut chain = vec![a.clone(), b];
    for n in 1..=n_max {
        let k = (64 - (n - 1).leading_zeros()) as usize;
        while chain.len() <= k {
            let last = chain.last().expect("chain is nonempty");
            match fam.witness(last) {
                Some(next) => chain.push(next),
                None => {
                    return Case::Fail(serde_json::json!({
                        "a": inst.encode(a),
                        "reason": format!("halving chain stops at depth {}", chain.len() - 1),
                    }))
                }
            }
        }
        let ak = &chain[k];
        if !inst.leq(&dot_mul(inst, n, ak), a) || !inst.leq(&inst.star(n, ak), a) {
            return Case::Fail(with_ints(tuple(inst, &[("a", a), ("a_k", ak)]), &[("n", n)]));
        }
    }
    Case::Pass
}

/// Every listed member of the family.
pub fn check_a_continuity<C: Cornet + ?Sized>(
    inst: &C,
    fam: &ArchFamily<C::Elem>,
    n_max: u64,
) -> LawReport {
    let start = std::time::Instant::now();
    let outcomes = fam
        .elements()
        .map(|a| continuity_case(inst, fam, a, n_max))
        .collect();
    LawReport::tally("continuity.halving", outcomes, start.elapsed())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureCheck {
    /// `y ⪯ x + a` for every family member `a`.
    pub below_perturbations: bool,
    pub challenges: usize,
    /// Every challenge `z` below all `x + a` is below `y`.
    pub maximal_on_challenges: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Value>,
}

impl ClosureCheck {
    pub fn holds(&self) -> bool {
        self.below_perturbations && self.maximal_on_challenges
    }
}

/// Checks that `y` is the closure of `x`; maximality only against `challenge`.
pub fn verify_closure<C: Cornet + ?Sized>(
    inst: &C,
    x: &C::Elem,
    y: &C::Elem,
    fam: &ArchFamily<C::Elem>,
    challenge: &[C::Elem],
) -> ClosureCheck {
    let perturbed: Vec<C::Elem> = fam.elements().map(|a| inst.add(x, a)).collect();
    let mut check = ClosureCheck {
        below_perturbations: true,
        challenges: challenge.len(),
        maximal_on_challenges: true,
        failure: None,
    };
    if let Some(p) = perturbed.iter().find(|p| !inst.leq(y, p)) {
        check.below_perturbations = false;
        check.failure = Some(tuple(inst, &[("y", y), ("x_plus_a", p)]));
        return check;
    }
    for z in challenge {
        if perturbed.iter().all(|p| inst.leq(z, p)) && !inst.leq(z, y) {
            check.maximal_on_challenges = false;
            check.failure = Some(tuple(inst, &[("y", y), ("challenge", z)]));
            break;
        }
    }
    check
}

fn require_closure<C: Cornet + ?Sized>(inst: &C, x: &C::Elem) -> C::Elem {
    inst.closure(x).expect("closure availability checked before the suite runs")
}

fn eq_case<C: Cornet + ?Sized>(inst: &C, l: &C::Elem, r: &C::Elem, witness: impl FnOnce() -> Value) -> Case {
    if inst.equal(l, r) {
        Case::Pass
    } else {
        Case::Fail(witness())
    }
}

/// Properties (i)-(ix) of the closure map, plus the defining property itself.
pub fn closure_props_suite<C: Cornet>(
    inst: &C,
    fam: &ArchFamily<C::Elem>,
    cfg: &SuiteConfig,
) -> Result<Vec<LawReport>> {
    let probe = inst.zero();
    if inst.closure(&probe).is_none() {
        return Err(Error::Unsupported(format!("{} has no closure map", inst.name())));
    }
    let n_max = cfg.n_max;
    let cl = |x: &C::Elem| require_closure(inst, x);
    let mut out = Vec::new();

    out.push(LawReport::run("closure.defining", cfg, |_, rng| {
        let (x, y, u) = (inst.sample(rng), inst.sample(rng), nonneg(inst, rng));
        let c = cl(&x);
        let challenge = [x.clone(), y, inst.add(&x, &u), c.clone()];
        let check = verify_closure(inst, &x, &c, fam, &challenge);
        if check.holds() {
            Case::Pass
        } else {
            Case::Fail(check.failure.unwrap_or(Value::Null))
        }
    }));

    out.push(LawReport::run("closure.i", cfg, |_, rng| {
        let x = inst.sample(rng);
        let c = cl(&x);
        if inst.leq(&x, &c) {
            Case::Pass
        } else {
            Case::Fail(tuple(inst, &[("x", &x)]))
        }
    }));

    out.push(LawReport::run_conditional("closure.ii", cfg, |_, rng| {
        let (x, y, u) = (inst.sample(rng), inst.sample(rng), nonneg(inst, rng));
        let pairs = [(x.clone(), y), (x.clone(), inst.add(&x, &u))];
        let mut hit = false;
        for (a, b) in &pairs {
            if inst.leq(a, b) {
                hit = true;
                if !inst.leq(&cl(a), &cl(b)) {
                    return Case::Fail(tuple(inst, &[("x", a), ("y", b)]));
                }
            }
        }
        if hit {
            Case::Pass
        } else {
            Case::Vacuous
        }
    }));

    out.push(LawReport::run("closure.iii", cfg, |_, rng| {
        let x = inst.sample(rng);
        let c = cl(&x);
        eq_case(inst, &cl(&c), &c, || tuple(inst, &[("x", &x)]))
    }));

    out.push(LawReport::run_conditional("closure.iv", cfg, |_, rng| {
        let (x, u) = (inst.sample(rng), nonneg(inst, rng));
        let c = cl(&x);
        let mut hit = false;
        for y in [x.clone(), c.clone(), inst.add(&x, &u)] {
            if inst.leq(&x, &y) && inst.leq(&y, &c) {
                hit = true;
                if !inst.equal(&cl(&y), &c) {
                    return Case::Fail(tuple(inst, &[("x", &x), ("y", &y)]));
                }
            }
        }
        if hit {
            Case::Pass
        } else {
            Case::Vacuous
        }
    }));

    out.push(LawReport::run("closure.v", cfg, |_, rng| {
        let (x, y) = (inst.sample(rng), inst.sample(rng));
        let l = cl(&inst.add(&cl(&x), &cl(&y)));
        eq_case(inst, &l, &cl(&inst.add(&x, &y)), || tuple(inst, &[("x", &x), ("y", &y)]))
    }));

    out.push(LawReport::run("closure.vi", cfg, |i, rng| {
        let (n, _) = multipliers(i, n_max);
        let x = inst.sample(rng);
        let l = cl(&dot_mul(inst, n, &cl(&x)));
        let r = cl(&dot_mul(inst, n, &x));
        eq_case(inst, &l, &r, || with_ints(tuple(inst, &[("x", &x)]), &[("n", n)]))
    }));

    out.push(LawReport::run("closure.vii", cfg, |i, rng| {
        let (n, _) = multipliers(i, n_max);
        let x = inst.sample(rng);
        let l = cl(&inst.star(n, &cl(&x)));
        let r = cl(&inst.star(n, &x));
        eq_case(inst, &l, &r, || with_ints(tuple(inst, &[("x", &x)]), &[("n", n)]))
    }));

    out.push(LawReport::run_conditional("closure.viii", cfg, |_, rng| {
        let x = inst.sample(rng);
        if !is_a_bounded(inst, &x, fam, n_max).holds() {
            return Case::Vacuous;
        }
        if is_a_bounded(inst, &cl(&x), fam, n_max).holds() {
            Case::Pass
        } else {
            Case::Fail(tuple(inst, &[("x", &x)]))
        }
    }));

    out.push(LawReport::run_conditional("closure.ix", cfg, |i, rng| {
        let (n, _) = multipliers(i, n_max);
        let x = inst.sample(rng);
        let mut xs = vec![x.clone()];
        if let Some(h) = inst.hull(&x) {
            xs.push(h);
        }
        let mut hit = false;
        for x in &xs {
            if is_n_convex(inst, x, n) {
                hit = true;
                if !is_n_convex(inst, &cl(x), n) {
                    return Case::Fail(with_ints(tuple(inst, &[("x", x)]), &[("n", n)]));
                }
            }
        }
        if hit {
            Case::Pass
        } else {
            Case::Vacuous
        }
    }));

    Ok(out)
}

fn sample_probes<C: Cornet + ?Sized>(inst: &C, rng: &mut CaseRng, count: usize) -> Vec<C::Elem> {
    (0..count).map(|_| inst.sample(rng)).collect()
}

/// Archimedean candidates: a family member, a member shifted by a nonnegative
/// element, and a raw sample.
fn archimedean_candidates<C: Cornet + ?Sized>(
    inst: &C,
    fam: &ArchFamily<C::Elem>,
    rng: &mut CaseRng,
) -> Vec<C::Elem> {
    let a = fam.sample_member(rng);
    let u = nonneg(inst, rng);
    vec![a.clone(), inst.add(&a, &u), inst.sample(rng)]
}

/// Archimedean elements are nonnegative and absorb nonnegative summands;
/// bounded elements are closed under `+` and `m *`.
pub fn subcornet_closure_suite<C: Cornet>(
    inst: &C,
    fam: &ArchFamily<C::Elem>,
    cfg: &SuiteConfig,
    probes: usize,
) -> Vec<LawReport> {
    let n_max = cfg.n_max;
    let mut out = Vec::new();

    out.push(LawReport::run_conditional("prp1.archimedean_nonnegative", cfg, |_, rng| {
        let h = Horizon::new(n_max, sample_probes(inst, rng, probes));
        let mut hit = false;
        for x in archimedean_candidates(inst, fam, rng) {
            if is_archimedean(inst, &x, &h).holds() {
                hit = true;
                if !is_nonnegative(inst, &x) {
                    return Case::Fail(tuple(inst, &[("x", &x)]));
                }
            }
        }
        if hit {
            Case::Pass
        } else {
            Case::Vacuous
        }
    }));

    out.push(LawReport::run_conditional("prp1.incl", cfg, |_, rng| {
        let h = Horizon::new(n_max, sample_probes(inst, rng, probes));
        let y = nonneg(inst, rng);
        let mut hit = false;
        for x in archimedean_candidates(inst, fam, rng) {
            if is_archimedean(inst, &x, &h).holds() {
                hit = true;
                let s = inst.add(&x, &y);
                // The sum may need a later n0 than the summand; give it twice the horizon.
                let wide = Horizon::new(2 * n_max, h.probes.clone());
                if !is_archimedean(inst, &s, &wide).holds() {
                    return Case::Fail(tuple(inst, &[("x", &x), ("y", &y)]));
                }
            }
        }
        if hit {
            Case::Pass
        } else {
            Case::Vacuous
        }
    }));

    out.push(LawReport::run_conditional("atop.sum", cfg, |_, rng| {
        let (x, y) = (inst.sample(rng), inst.sample(rng));
        if !(is_a_bounded(inst, &x, fam, n_max).holds() && is_a_bounded(inst, &y, fam, n_max).holds()) {
            return Case::Vacuous;
        }
        if is_a_bounded(inst, &inst.add(&x, &y), fam, 2 * n_max).holds() {
            Case::Pass
        } else {
            Case::Fail(tuple(inst, &[("x", &x), ("y", &y)]))
        }
    }));

    out.push(LawReport::run_conditional("atop.star", cfg, |i, rng| {
        let (m, _) = multipliers(i, n_max);
        let x = inst.sample(rng);
        if !is_a_bounded(inst, &x, fam, n_max).holds() {
            return Case::Vacuous;
        }
        if is_a_bounded(inst, &inst.star(m, &x), fam, 2 * n_max).holds() {
            Case::Pass
        } else {
            Case::Fail(with_ints(tuple(inst, &[("x", &x)]), &[("m", m)]))
        }
    }));

    out.push(LawReport::run("continuity.halving", cfg, |_, rng| {
        let a = fam.sample_member(rng);
        continuity_case(inst, fam, &a, n_max)
    }));

    out
}
