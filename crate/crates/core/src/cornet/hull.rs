//! Convex hull properties and the n-continuity probe.

use serde_json::json;

use super::laws::{nonneg, tuple, with_ints};
use super::report::{multipliers, Case, LawReport, SuiteConfig};
use super::{is_n_convex, Cornet};
use crate::error::{Error, Result};

fn pass_if(ok: bool, witness: impl FnOnce() -> serde_json::Value) -> Case {
    if ok {
        Case::Pass
    } else {
        Case::Fail(witness())
    }
}

/// Extensive, idempotent, monotone, convex, subadditive, star-compatible and
/// minimal among sampled convex majorants.
pub fn hull_props_check<C: Cornet>(inst: &C, cfg: &SuiteConfig) -> Result<Vec<LawReport>> {
    if inst.hull(&inst.zero()).is_none() {
        return Err(Error::Unsupported(format!("{} has no hull map", inst.name())));
    }
    let n_max = cfg.n_max;
    let hull = |x: &C::Elem| inst.hull(x).expect("hull availability checked");
    let mut out = Vec::new();

    out.push(LawReport::run("hull.extensive", cfg, |_, rng| {
        let x = inst.sample(rng);
        pass_if(inst.leq(&x, &hull(&x)), || tuple(inst, &[("x", &x)]))
    }));

    out.push(LawReport::run("hull.idempotent", cfg, |_, rng| {
        let x = inst.sample(rng);
        let h = hull(&x);
        pass_if(inst.equal(&hull(&h), &h), || tuple(inst, &[("x", &x)]))
    }));

    out.push(LawReport::run_conditional("hull.monotone", cfg, |_, rng| {
        let (x, y, u) = (inst.sample(rng), inst.sample(rng), nonneg(inst, rng));
        let mut hit = false;
        for (a, b) in [(x.clone(), y), (x.clone(), inst.add(&x, &u))] {
            if inst.leq(&a, &b) {
                hit = true;
                if !inst.leq(&hull(&a), &hull(&b)) {
                    return Case::Fail(tuple(inst, &[("x", &a), ("y", &b)]));
                }
            }
        }
        if hit {
            Case::Pass
        } else {
            Case::Vacuous
        }
    }));

    out.push(LawReport::run("hull.convex", cfg, |i, rng| {
        let (n, _) = multipliers(i, n_max);
        let x = inst.sample(rng);
        pass_if(is_n_convex(inst, &hull(&x), n), || {
            with_ints(tuple(inst, &[("x", &x)]), &[("n", n)])
        })
    }));

    out.push(LawReport::run("hull.subadditive", cfg, |_, rng| {
        let (x, y) = (inst.sample(rng), inst.sample(rng));
        let l = hull(&inst.add(&x, &y));
        let r = inst.add(&hull(&x), &hull(&y));
        pass_if(inst.leq(&l, &r), || tuple(inst, &[("x", &x), ("y", &y)]))
    }));

    out.push(LawReport::run("hull.star", cfg, |i, rng| {
        let (m, _) = multipliers(i, n_max);
        let x = inst.sample(rng);
        let ok = inst.leq(&hull(&inst.star(m, &x)), &inst.star(m, &hull(&x)));
        pass_if(ok, || with_ints(tuple(inst, &[("x", &x)]), &[("m", m)]))
    }));

    out.push(LawReport::run("hull.minimal", cfg, |_, rng| {
        let (x, u) = (inst.sample(rng), nonneg(inst, rng));
        let h = hull(&x);
        let mut majorants = vec![hull(&inst.add(&x, &u)), inst.add(&h, &hull(&u))];
        if (2..=n_max).all(|n| is_n_convex(inst, &x, n)) {
            majorants.push(x.clone());
        }
        for z in &majorants {
            if inst.leq(&x, z) && !inst.leq(&h, z) {
                return Case::Fail(tuple(inst, &[("x", &x), ("majorant", z)]));
            }
        }
        Case::Pass
    }));

    Ok(out)
}

/// Compares `inf(n * H)` with `n * inf(H)` on each list; gaps are findings.
pub fn n_continuity_probe<C: Cornet + ?Sized>(
    inst: &C,
    n: u64,
    lists: &[Vec<C::Elem>],
) -> Result<LawReport> {
    let start = std::time::Instant::now();
    let mut outcomes = Vec::new();
    for h in lists {
        let scaled: Vec<C::Elem> = h.iter().map(|x| inst.star(n, x)).collect();
        let (Some(inf_h), Some(inf_scaled)) = (inst.finite_inf(h), inst.finite_inf(&scaled)) else {
            return Err(Error::Unsupported(format!(
                "{} has no finite infimum for these elements",
                inst.name()
            )));
        };
        let star_inf = inst.star(n, &inf_h);
        outcomes.push(if inst.equal(&inf_scaled, &star_inf) {
            Case::Pass
        } else {
            let members: Vec<_> = h.iter().map(|x| inst.encode(x)).collect();
            Case::Finding(json!({
                "n": n,
                "list": members,
                "inf_of_star": inst.encode(&inf_scaled),
                "star_of_inf": inst.encode(&star_inf),
            }))
        });
    }
    Ok(LawReport::tally("n_continuity", outcomes, start.elapsed())
        .with_note("gaps are findings, not violations"))
}
