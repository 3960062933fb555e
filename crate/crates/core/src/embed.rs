//! The embeddings `φ(x) = x + W` of vectors into sets and `Φ(A) = χ_A` of sets
//! into fuzzy functions, checked as homomorphisms on sampled inputs.

use rand::Rng;

use crate::cornet::laws::{nonneg, tuple, with_ints};
use crate::cornet::report::{multipliers, Case};
use crate::cornet::{Cornet, LawReport, SuiteConfig};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyCornet, StepFuzzy};
use crate::geometry::RVec;
use crate::sets::{phi_embed, Carrier, SetCornet, UpperSet};
use crate::wedge::ElemCornet;

fn check(ok: bool, witness: impl FnOnce() -> serde_json::Value) -> Case {
    if ok {
        Case::Pass
    } else {
        Case::Fail(witness())
    }
}

/// Homomorphism, order reversal and injectivity of `φ`.
pub fn phi_suite(elems: &ElemCornet, sets: &SetCornet, cfg: &SuiteConfig) -> Result<Vec<LawReport>> {
    if *elems.wedge() != *sets.wedge() || sets.carrier() != Carrier::Rational {
        return Err(Error::WedgeMismatch);
    }
    let phi = |x: &RVec| phi_embed(sets.wedge_arc(), x.clone()).expect("dimensions agree");
    let pair = |rng: &mut crate::cornet::CaseRng| {
        let x = elems.sample(rng);
        let y = match rng.gen_range(0..3) {
            0 => elems.sample(rng),
            1 => x.clone(),
            _ => &x + &nonneg(elems, rng),
        };
        (x, y)
    };
    let n_max = cfg.n_max;
    Ok(vec![
        LawReport::run("phi.add", cfg, |_, rng| {
            let (x, y) = (elems.sample(rng), elems.sample(rng));
            check(sets.equal(&phi(&(&x + &y)), &sets.add(&phi(&x), &phi(&y))), || {
                tuple(elems, &[("x", &x), ("y", &y)])
            })
        }),
        LawReport::run("phi.star", cfg, |i, rng| {
            let (n, _) = multipliers(i, n_max);
            let x = elems.sample(rng);
            check(sets.equal(&phi(&elems.star(n, &x)), &sets.star(n, &phi(&x))), || {
                with_ints(tuple(elems, &[("x", &x)]), &[("n", n)])
            })
        }),
        LawReport::run("phi.order_reversal", cfg, |_, rng| {
            let (x, y) = pair(rng);
            check(elems.leq(&x, &y) == sets.leq(&phi(&y), &phi(&x)), || {
                tuple(elems, &[("x", &x), ("y", &y)])
            })
        }),
        LawReport::run("phi.injective", cfg, |_, rng| {
            let (x, y) = pair(rng);
            check(sets.equal(&phi(&x), &phi(&y)) == (x == y), || tuple(elems, &[("x", &x), ("y", &y)]))
        }),
    ])
}

/// Homomorphism, order preservation and injectivity of `Φ`, plus
/// `Φ(W) = χ_W`.
pub fn chi_suite(sets: &SetCornet, fuzzy: &FuzzyCornet, cfg: &SuiteConfig) -> Result<Vec<LawReport>> {
    if *sets.wedge() != *fuzzy.sets().wedge() || sets.carrier() != Carrier::Rational {
        return Err(Error::WedgeMismatch);
    }
    let chi = |a: &UpperSet| -> StepFuzzy { fuzzy.indicator(a.clone()) };
    let pair = |rng: &mut crate::cornet::CaseRng| {
        let a = sets.sample(rng);
        let b = match rng.gen_range(0..3) {
            0 => sets.sample(rng),
            1 => a.clone(),
            _ => sets.add(&a, &nonneg(sets, rng)),
        };
        (a, b)
    };
    let n_max = cfg.n_max;
    Ok(vec![
        LawReport::run("chi.add", cfg, |_, rng| {
            let (a, b) = (sets.sample(rng), sets.sample(rng));
            check(fuzzy.equal(&chi(&sets.add(&a, &b)), &fuzzy.add(&chi(&a), &chi(&b))), || {
                tuple(sets, &[("a", &a), ("b", &b)])
            })
        }),
        LawReport::run("chi.star", cfg, |i, rng| {
            let (n, _) = multipliers(i, n_max);
            let a = sets.sample(rng);
            check(fuzzy.equal(&chi(&sets.star(n, &a)), &fuzzy.star(n, &chi(&a))), || {
                with_ints(tuple(sets, &[("a", &a)]), &[("n", n)])
            })
        }),
        LawReport::run("chi.order", cfg, |_, rng| {
            let (a, b) = pair(rng);
            check(sets.leq(&a, &b) == fuzzy.leq(&chi(&a), &chi(&b)), || tuple(sets, &[("a", &a), ("b", &b)]))
        }),
        LawReport::run("chi.injective", cfg, |_, rng| {
            let (a, b) = pair(rng);
            check(fuzzy.equal(&chi(&a), &chi(&b)) == sets.equal(&a, &b), || {
                tuple(sets, &[("a", &a), ("b", &b)])
            })
        }),
        LawReport::run("chi.unit", cfg, |_, _| {
            check(fuzzy.equal(&chi(&sets.zero()), &fuzzy.zero()), || serde_json::Value::Null)
        }),
    ])
}
