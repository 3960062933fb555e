//! The cancellation theorem: checker, proof-chain replay and ablation search.

use serde::{Deserialize, Serialize};

use super::laws::{nonneg, tuple, with_ints};
use super::order::{is_a_bounded, verify_closure, ClosureCheck};
use super::report::{Case, LawReport, SuiteConfig};
use super::{dot_mul, is_n_convex, ArchFamily, CaseRng, Cornet, Verdict};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CancelOutcome {
    HypothesisNotMet,
    PremiseFalse,
    ConclusionHolds,
    /// Hypotheses and premise hold but `x ⪯ y` fails: a defect somewhere.
    ConclusionFails,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainLink {
    pub link: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CancellationRecord {
    pub m: u64,
    pub z_bounded: Verdict,
    pub y_closed: ClosureCheck,
    pub y_m_convex: bool,
    pub premise: Option<bool>,
    pub conclusion: Option<bool>,
    pub outcome: CancelOutcome,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<ChainLink>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failing_link: Option<String>,
}

impl CancellationRecord {
    pub fn hypotheses_hold(&self) -> bool {
        self.z_bounded.holds() && self.y_closed.holds() && self.y_m_convex
    }
}

#[derive(Clone, Debug)]
pub struct CancelOptions {
    pub n_max: u64,
    /// Replay the intermediate inequalities of the proof.
    pub replay: bool,
}

impl Default for CancelOptions {
    fn default() -> Self {
        CancelOptions {
            n_max: 6,
            replay: true,
        }
    }
}

/// Checks `x + z ⪯ y + z ⇒ x ⪯ y` under the hypotheses: `z` bounded, `y`
/// closed (maximality against `challenge`) and `m`-convex.
#[allow(clippy::too_many_arguments)]
pub fn cancellation_check<C: Cornet + ?Sized>(
    inst: &C,
    x: &C::Elem,
    y: &C::Elem,
    z: &C::Elem,
    m: u64,
    fam: &ArchFamily<C::Elem>,
    challenge: &[C::Elem],
    opts: &CancelOptions,
) -> Result<CancellationRecord> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("m must be at least 2, got {m}")));
    }
    let mut rec = CancellationRecord {
        m,
        z_bounded: is_a_bounded(inst, z, fam, opts.n_max),
        y_closed: verify_closure(inst, y, y, fam, challenge),
        y_m_convex: is_n_convex(inst, y, m),
        premise: None,
        conclusion: None,
        outcome: CancelOutcome::HypothesisNotMet,
        chain: Vec::new(),
        first_failing_link: None,
    };
    if !rec.hypotheses_hold() {
        return Ok(rec);
    }
    let premise = inst.leq(&inst.add(x, z), &inst.add(y, z));
    rec.premise = Some(premise);
    if !premise {
        rec.outcome = CancelOutcome::PremiseFalse;
        return Ok(rec);
    }
    let conclusion = inst.leq(x, y);
    rec.conclusion = Some(conclusion);
    rec.outcome = if conclusion {
        CancelOutcome::ConclusionHolds
    } else {
        CancelOutcome::ConclusionFails
    };
    if opts.replay || !conclusion {
        rec.chain = replay_chain(inst, x, y, z, m, fam, opts.n_max);
        rec.first_failing_link = rec.chain.iter().find(|l| !l.holds).map(|l| l.link.clone());
    }
    Ok(rec)
}

fn replay_chain<C: Cornet + ?Sized>(
    inst: &C,
    x: &C::Elem,
    y: &C::Elem,
    z: &C::Elem,
    m: u64,
    fam: &ArchFamily<C::Elem>,
    n_max: u64,
) -> Vec<ChainLink> {
    let mut chain = Vec::new();
    for n in 1..=n_max {
        let l = inst.add(&dot_mul(inst, n, x), z);
        let r = inst.add(&dot_mul(inst, n, y), z);
        chain.push(ChainLink {
            link: format!("n.x+z <= n.y+z (n={n})"),
            holds: inst.leq(&l, &r),
        });
    }
    let mut mk = m;
    while mk <= n_max {
        let sx = inst.star(mk, x);
        let sy = inst.star(mk, y);
        chain.push(ChainLink {
            link: format!("m^k*x <= m^k.x (m^k={mk})"),
            holds: inst.leq(&sx, &dot_mul(inst, mk, x)),
        });
        chain.push(ChainLink {
            link: format!("m^k.y = m^k*y (m^k={mk})"),
            holds: inst.equal(&dot_mul(inst, mk, y), &sy),
        });
        chain.push(ChainLink {
            link: format!("m^k*x+z <= m^k*y+z (m^k={mk})"),
            holds: inst.leq(&inst.add(&sx, z), &inst.add(&sy, z)),
        });
        mk *= m;
    }
    for (label, a) in fam.members() {
        chain.push(ChainLink {
            link: format!("x <= y+a (a={label})"),
            holds: inst.leq(x, &inst.add(y, a)),
        });
    }
    chain
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ablation {
    Convexity,
    Closedness,
    Boundedness,
    None,
}

impl std::str::FromStr for Ablation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convexity" => Ok(Ablation::Convexity),
            "closedness" => Ok(Ablation::Closedness),
            "boundedness" => Ok(Ablation::Boundedness),
            "none" => Ok(Ablation::None),
            other => Err(Error::InvalidInput(format!("unknown ablation {other:?}"))),
        }
    }
}

/// Hypothesis predicates of the theorem on a finite universe.
pub struct Hypotheses<'a, E> {
    pub bounded: &'a (dyn Fn(&E) -> bool + Sync),
    pub closed: &'a (dyn Fn(&E) -> bool + Sync),
    /// `m`-convex for some admissible `m >= 2`.
    pub convex: &'a (dyn Fn(&E) -> bool + Sync),
}

#[derive(Clone, Debug)]
pub struct Hunt<E> {
    pub triples_examined: u64,
    /// `(x, y, z)` with `x + z ⪯ y + z`, `x ⋠ y`.
    pub hit: Option<(E, E, E)>,
}

/// Exhaustive search for `(x, y, z)` with premise true and conclusion false,
/// where exactly the ablated hypothesis fails (on `y` for convexity and
/// closedness, on `z` for boundedness). Triples are visited in the order
/// `(x, y, z)` of the universe, so the first hit is lexicographically least.
pub fn ablation_hunt<C: Cornet + ?Sized>(
    inst: &C,
    universe: &[C::Elem],
    ablate: Ablation,
    hyp: &Hypotheses<'_, C::Elem>,
) -> Hunt<C::Elem> {
    let convex: Vec<bool> = universe.iter().map(|e| (hyp.convex)(e)).collect();
    let closed: Vec<bool> = universe.iter().map(|e| (hyp.closed)(e)).collect();
    let bounded: Vec<bool> = universe.iter().map(|e| (hyp.bounded)(e)).collect();
    let y_ok = |j: usize| match ablate {
        Ablation::Convexity => !convex[j] && closed[j],
        Ablation::Closedness => convex[j] && !closed[j],
        _ => convex[j] && closed[j],
    };
    let z_ok = |k: usize| match ablate {
        Ablation::Boundedness => !bounded[k],
        _ => bounded[k],
    };
    let mut examined = 0u64;
    for x in universe {
        for (j, y) in universe.iter().enumerate() {
            if !y_ok(j) || inst.leq(x, y) {
                continue;
            }
            for (k, z) in universe.iter().enumerate() {
                if !z_ok(k) {
                    continue;
                }
                examined += 1;
                if inst.leq(&inst.add(x, z), &inst.add(y, z)) {
                    return Hunt {
                        triples_examined: examined,
                        hit: Some((x.clone(), y.clone(), z.clone())),
                    };
                }
            }
        }
    }
    Hunt {
        triples_examined: examined,
        hit: None,
    }
}

/// Runs [`cancellation_check`] on sampled triples. Cases whose hypotheses or
/// premise fail are vacuous; a violation is a conclusion failure.
pub fn cancellation_suite<C, F>(
    inst: &C,
    fam: &ArchFamily<C::Elem>,
    cfg: &SuiteConfig,
    m: u64,
    law: &str,
    triple: F,
) -> Result<LawReport>
where
    C: Cornet,
    F: Fn(&mut CaseRng) -> (C::Elem, C::Elem, C::Elem) + Sync + Send,
{
    if m < 2 {
        return Err(Error::InvalidInput(format!("m must be at least 2, got {m}")));
    }
    let opts = CancelOptions {
        n_max: cfg.n_max,
        replay: false,
    };
    Ok(LawReport::run_conditional(law, cfg, |_, rng| {
        let (x, y, z) = triple(rng);
        let challenge = [x.clone(), inst.add(&y, &nonneg(inst, rng)), inst.add(&y, &fam.sample_member(rng))];
        let rec = cancellation_check(inst, &x, &y, &z, m, fam, &challenge, &opts)
            .expect("m checked above");
        match rec.outcome {
            CancelOutcome::ConclusionHolds => Case::Pass,
            CancelOutcome::ConclusionFails => Case::Fail(with_ints(
                tuple(inst, &[("x", &x), ("y", &y), ("z", &z)]),
                &[("m", m)],
            )),
            _ => Case::Vacuous,
        }
    }))
}

/// `x + z ⪯ y + z ⇒ x ⪯ y` on sampled triples whose hypotheses hold by
/// construction; cases with a false premise are vacuous.
pub fn direct_cancellation_suite<C, F>(inst: &C, cfg: &SuiteConfig, law: &str, triple: F) -> LawReport
where
    C: Cornet,
    F: Fn(&mut CaseRng) -> (C::Elem, C::Elem, C::Elem) + Sync + Send,
{
    LawReport::run_conditional(law, cfg, |_, rng| {
        let (x, y, z) = triple(rng);
        if !inst.leq(&inst.add(&x, &z), &inst.add(&y, &z)) {
            Case::Vacuous
        } else if inst.leq(&x, &y) {
            Case::Pass
        } else {
            Case::Fail(tuple(inst, &[("x", &x), ("y", &y), ("z", &z)]))
        }
    })
}
