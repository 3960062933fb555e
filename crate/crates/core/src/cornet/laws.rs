//! The cornet axioms, the dot/star identities and the convexity semigroup.

use serde_json::{Map, Value};

use super::report::{multipliers, Case, LawReport, SuiteConfig};
use super::{convexity_set, dot_mul, is_n_convex, CaseRng, Cornet};

pub(crate) fn tuple<C: Cornet + ?Sized>(inst: &C, items: &[(&str, &C::Elem)]) -> Value {
    let mut m = Map::new();
    for (k, v) in items {
        m.insert((*k).to_string(), inst.encode(v));
    }
    Value::Object(m)
}

pub(crate) fn with_ints(mut v: Value, ints: &[(&str, u64)]) -> Value {
    if let Value::Object(m) = &mut v {
        for (k, n) in ints {
            m.insert((*k).to_string(), Value::from(*n));
        }
    }
    v
}

pub(crate) fn nonneg<C: Cornet + ?Sized>(inst: &C, rng: &mut CaseRng) -> C::Elem {
    inst.sample_nonnegative(rng).unwrap_or_else(|| inst.zero())
}

fn verdict(ok: bool, witness: impl FnOnce() -> Value) -> Case {
    if ok {
        Case::Pass
    } else {
        Case::Fail(witness())
    }
}

/// Folds candidate checks: `None` = premise false, `Some(ok)` otherwise.
fn candidates(results: impl IntoIterator<Item = Option<Result<(), Value>>>) -> Case {
    let mut hit = false;
    for r in results.into_iter().flatten() {
        hit = true;
        if let Err(v) = r {
            return Case::Fail(v);
        }
    }
    if hit {
        Case::Pass
    } else {
        Case::Vacuous
    }
}

/// Semigroup, unit, order and star laws; law (iv) in both directions.
pub fn check_cornet_laws<C: Cornet>(inst: &C, cfg: &SuiteConfig) -> Vec<LawReport> {
    let n_max = cfg.n_max;
    let mut out = Vec::new();

    out.push(LawReport::run("add.associativity", cfg, |_, rng| {
        let (x, y, z) = (inst.sample(rng), inst.sample(rng), inst.sample(rng));
        let l = inst.add(&x, &inst.add(&y, &z));
        let r = inst.add(&inst.add(&x, &y), &z);
        verdict(inst.equal(&l, &r), || tuple(inst, &[("x", &x), ("y", &y), ("z", &z)]))
    }));

    out.push(LawReport::run("add.commutativity", cfg, |_, rng| {
        let (x, y) = (inst.sample(rng), inst.sample(rng));
        let ok = inst.equal(&inst.add(&x, &y), &inst.add(&y, &x));
        verdict(ok, || tuple(inst, &[("x", &x), ("y", &y)]))
    }));

    out.push(LawReport::run("add.unit", cfg, |_, rng| {
        let x = inst.sample(rng);
        let ok = inst.equal(&inst.add(&x, &inst.zero()), &x);
        verdict(ok, || tuple(inst, &[("x", &x)]))
    }));

    out.push(LawReport::run("order.reflexivity", cfg, |_, rng| {
        let x = inst.sample(rng);
        verdict(inst.leq(&x, &x), || tuple(inst, &[("x", &x)]))
    }));

    out.push(LawReport::run_conditional("order.antisymmetry", cfg, |_, rng| {
        let (x, y, u) = (inst.sample(rng), inst.sample(rng), nonneg(inst, rng));
        let pairs = [
            (x.clone(), y.clone()),
            (inst.add(&x, &y), inst.add(&y, &x)),
            (x.clone(), inst.star(1, &x)),
            (x.clone(), inst.add(&x, &u)),
        ];
        candidates(pairs.iter().map(|(a, b)| {
            let both = inst.leq(a, b) && inst.leq(b, a);
            let eq = inst.equal(a, b);
            if !both && !eq {
                return None;
            }
            Some(if both == eq {
                Ok(())
            } else {
                Err(tuple(inst, &[("x", a), ("y", b)]))
            })
        }))
    }));

    out.push(LawReport::run_conditional("order.transitivity", cfg, |i, rng| {
        let (n, m) = multipliers(i, n_max);
        let (x, y, z) = (inst.sample(rng), inst.sample(rng), inst.sample(rng));
        let (u, v) = (nonneg(inst, rng), nonneg(inst, rng));
        let xu = inst.add(&x, &u);
        let split = inst.add(&inst.star(n, &x), &inst.star(m, &x));
        let triples = [
            (x.clone(), y, z),
            (x.clone(), xu.clone(), inst.add(&xu, &v)),
            (inst.star(n + m, &x), split.clone(), inst.add(&split, &u)),
        ];
        candidates(triples.iter().map(|(a, b, c)| {
            if !(inst.leq(a, b) && inst.leq(b, c)) {
                return None;
            }
            Some(if inst.leq(a, c) {
                Ok(())
            } else {
                Err(tuple(inst, &[("x", a), ("y", b), ("z", c)]))
            })
        }))
    }));

    out.push(LawReport::run_conditional("order.translation", cfg, |i, rng| {
        let (n, m) = multipliers(i, n_max);
        let (x, y, z, u) = (inst.sample(rng), inst.sample(rng), inst.sample(rng), nonneg(inst, rng));
        let pairs = [
            (x.clone(), y),
            (x.clone(), inst.add(&x, &u)),
            (inst.star(n + m, &x), inst.add(&inst.star(n, &x), &inst.star(m, &x))),
        ];
        candidates(pairs.iter().map(|(a, b)| {
            if !inst.leq(a, b) {
                return None;
            }
            Some(if inst.leq(&inst.add(a, &z), &inst.add(b, &z)) {
                Ok(())
            } else {
                Err(tuple(inst, &[("x", a), ("y", b), ("z", &z)]))
            })
        }))
    }));

    out.push(LawReport::run("star.i", cfg, |i, rng| {
        let (n, m) = multipliers(i, n_max);
        let x = inst.sample(rng);
        let ok = inst.equal(&inst.star(n * m, &x), &inst.star(n, &inst.star(m, &x)));
        verdict(ok, || with_ints(tuple(inst, &[("x", &x)]), &[("n", n), ("m", m)]))
    }));

    out.push(LawReport::run("star.ii", cfg, |i, rng| {
        let (n, _) = multipliers(i, n_max);
        let (x, y) = (inst.sample(rng), inst.sample(rng));
        let l = inst.star(n, &inst.add(&x, &y));
        let r = inst.add(&inst.star(n, &x), &inst.star(n, &y));
        verdict(inst.equal(&l, &r), || {
            with_ints(tuple(inst, &[("x", &x), ("y", &y)]), &[("n", n)])
        })
    }));

    out.push(LawReport::run("star.iii", cfg, |i, rng| {
        let (n, m) = multipliers(i, n_max);
        let x = inst.sample(rng);
        let l = inst.star(n + m, &x);
        let r = inst.add(&inst.star(n, &x), &inst.star(m, &x));
        verdict(inst.leq(&l, &r), || with_ints(tuple(inst, &[("x", &x)]), &[("n", n), ("m", m)]))
    }));

    out.push(LawReport::run_conditional("star.iv.forward", cfg, |i, rng| {
        let (n, _) = multipliers(i, n_max);
        let (x, y, u) = (inst.sample(rng), inst.sample(rng), nonneg(inst, rng));
        let pairs = [(x.clone(), y), (x.clone(), inst.add(&x, &u))];
        candidates(pairs.iter().map(|(a, b)| {
            if !inst.leq(a, b) {
                return None;
            }
            Some(if inst.leq(&inst.star(n, a), &inst.star(n, b)) {
                Ok(())
            } else {
                Err(with_ints(tuple(inst, &[("x", a), ("y", b)]), &[("n", n)]))
            })
        }))
    }));

    out.push(LawReport::run_conditional("star.iv.reverse", cfg, |i, rng| {
        let (n, _) = multipliers(i, n_max);
        let (x, y, u) = (inst.sample(rng), inst.sample(rng), nonneg(inst, rng));
        let xy = inst.add(&x, &y);
        let xu = inst.add(&x, &u);
        let pairs = [
            (x.clone(), y.clone()),
            (y.clone(), x.clone()),
            (x.clone(), xy.clone()),
            (xy, x.clone()),
            (x.clone(), xu.clone()),
            (xu, x.clone()),
        ];
        candidates(pairs.iter().map(|(a, b)| {
            if !inst.leq(&inst.star(n, a), &inst.star(n, b)) {
                return None;
            }
            Some(if inst.leq(a, b) {
                Ok(())
            } else {
                Err(with_ints(tuple(inst, &[("x", a), ("y", b)]), &[("n", n)]))
            })
        }))
    }));

    out.push(LawReport::run("star.v", cfg, |_, rng| {
        let x = inst.sample(rng);
        verdict(inst.equal(&inst.star(1, &x), &x), || tuple(inst, &[("x", &x)]))
    }));

    out.push(LawReport::run("star.vi", cfg, |i, _| {
        let (n, _) = multipliers(i, n_max);
        let z = inst.zero();
        verdict(inst.equal(&inst.star(n, &z), &z), || {
            with_ints(Value::Object(Map::new()), &[("n", n)])
        })
    }));

    out
}

/// `n * (m · x) = m · (n * x)` and `(mn) * x ⪯ n · (m * x)`.
pub fn check_lemma_identities<C: Cornet>(inst: &C, cfg: &SuiteConfig) -> Vec<LawReport> {
    let n_max = cfg.n_max;
    vec![
        LawReport::run("lemma.nmx", cfg, |i, rng| {
            let (n, m) = multipliers(i, n_max);
            let x = inst.sample(rng);
            let l = inst.star(n, &dot_mul(inst, m, &x));
            let r = dot_mul(inst, m, &inst.star(n, &x));
            verdict(inst.equal(&l, &r), || {
                with_ints(tuple(inst, &[("x", &x)]), &[("n", n), ("m", m)])
            })
        }),
        LawReport::run("lemma.nx", cfg, |i, rng| {
            let (n, m) = multipliers(i, n_max);
            let x = inst.sample(rng);
            let l = inst.star(m * n, &x);
            let r = dot_mul(inst, n, &inst.star(m, &x));
            verdict(inst.leq(&l, &r), || {
                with_ints(tuple(inst, &[("x", &x)]), &[("n", n), ("m", m)])
            })
        }),
    ]
}

/// `1 ∈ C_x` and `n, m ∈ C_x ⇒ nm ∈ C_x` for `nm <= n_max`.
pub fn convexity_semigroup_check<C: Cornet>(inst: &C, x: &C::Elem, n_max: u64) -> LawReport {
    let start = std::time::Instant::now();
    let c = convexity_set(inst, x, n_max);
    let mut outcomes = Vec::new();
    outcomes.push(if c.contains(&1) {
        Case::Pass
    } else {
        Case::Fail(tuple(inst, &[("x", x)]))
    });
    for &n in &c {
        for &m in &c {
            if n * m > n_max {
                continue;
            }
            outcomes.push(if c.contains(&(n * m)) {
                Case::Pass
            } else {
                Case::Fail(with_ints(tuple(inst, &[("x", x)]), &[("n", n), ("m", m)]))
            });
        }
    }
    LawReport::tally("convexity.semigroup", outcomes, start.elapsed())
}

/// Sampled version of the semigroup check plus closure of `C^n` under `+` and `m *`.
pub fn convexity_suite<C: Cornet>(inst: &C, cfg: &SuiteConfig) -> Vec<LawReport> {
    let n_max = cfg.n_max;
    let convex_candidates = |rng: &mut CaseRng| {
        let x = inst.sample(rng);
        let mut v = vec![x.clone()];
        if let Some(h) = inst.hull(&x) {
            v.push(h);
        }
        v
    };
    vec![
        LawReport::run("convexity.semigroup", cfg, |_, rng| {
            let x = inst.sample(rng);
            let r = convexity_semigroup_check(inst, &x, n_max);
            match r.counterexamples.into_iter().next() {
                Some(v) => Case::Fail(v),
                None => Case::Pass,
            }
        }),
        LawReport::run_conditional("convexity.closed_under_sum", cfg, |i, rng| {
            let (n, _) = multipliers(i, n_max);
            let xs = convex_candidates(rng);
            let ys = convex_candidates(rng);
            let cx: Vec<bool> = xs.iter().map(|x| is_n_convex(inst, x, n)).collect();
            let cy: Vec<bool> = ys.iter().map(|y| is_n_convex(inst, y, n)).collect();
            let mut res = Vec::new();
            for (x, &ox) in xs.iter().zip(&cx) {
                for (y, &oy) in ys.iter().zip(&cy) {
                    if !(ox && oy) {
                        res.push(None);
                        continue;
                    }
                    let s = inst.add(x, y);
                    res.push(Some(if is_n_convex(inst, &s, n) {
                        Ok(())
                    } else {
                        Err(with_ints(tuple(inst, &[("x", x), ("y", y)]), &[("n", n)]))
                    }));
                }
            }
            candidates(res)
        }),
        LawReport::run_conditional("convexity.closed_under_star", cfg, |i, rng| {
            let (n, m) = multipliers(i, n_max);
            let xs = convex_candidates(rng);
            candidates(xs.iter().map(|x| {
                if !is_n_convex(inst, x, n) {
                    return None;
                }
                Some(if is_n_convex(inst, &inst.star(m, x), n) {
                    Ok(())
                } else {
                    Err(with_ints(tuple(inst, &[("x", x)]), &[("n", n), ("m", m)]))
                })
            }))
        }),
    ]
}
