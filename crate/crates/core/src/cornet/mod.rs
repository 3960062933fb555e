//! The abstract cornet signature and everything that is generic over it.

use std::fmt::Debug;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub mod cancel;
pub mod exec;
pub mod hull;
pub mod laws;
pub mod order;
pub mod report;

pub use exec::{case_rng, run_cases, CaseRng, Exec};
pub use report::{LawReport, SuiteConfig};

/// An ordered commutative monoid `(X, +, 0, ⪯)` with an action `n * x` of the
/// positive integers.
///
/// Operations are total on canonical elements. Optional capabilities return
/// `None` when an instance does not provide them.
pub trait Cornet: Sync {
    type Elem: Clone + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn star(&self, n: u64, x: &Self::Elem) -> Self::Elem;
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    /// Equality of canonical forms.
    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn sample(&self, rng: &mut CaseRng) -> Self::Elem;
    fn encode(&self, x: &Self::Elem) -> serde_json::Value;

    /// A random element with `0 ⪯ x`.
    fn sample_nonnegative(&self, _rng: &mut CaseRng) -> Option<Self::Elem> {
        None
    }

    fn finite_inf(&self, _xs: &[Self::Elem]) -> Option<Self::Elem> {
        None
    }

    /// The smallest element above `x` that is n-convex for every n.
    fn hull(&self, _x: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn closure(&self, _x: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Exact Archimedean decision against the given probes.
    fn archimedean_exact(&self, _x: &Self::Elem, _probes: &[Self::Elem]) -> Option<Verdict> {
        None
    }

    /// Exact least `n0` with `x ⪯ n * a` for all `n >= n0`; `Some(None)` means never.
    fn bounded_exact(&self, _x: &Self::Elem, _a: &Self::Elem) -> Option<Option<u64>> {
        None
    }
}

/// `n · x`: iterated addition by binary doubling, with `0 · x = 0`.
pub fn dot_mul<C: Cornet + ?Sized>(inst: &C, n: u64, x: &C::Elem) -> C::Elem {
    let mut acc: Option<C::Elem> = None;
    let mut base = x.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => inst.add(&a, &base),
            });
        }
        k >>= 1;
        if k > 0 {
            base = inst.add(&base, &base);
        }
    }
    acc.unwrap_or_else(|| inst.zero())
}

/// `n * x = n · x`.
pub fn is_n_convex<C: Cornet + ?Sized>(inst: &C, x: &C::Elem, n: u64) -> bool {
    n == 1 || inst.equal(&inst.star(n, x), &dot_mul(inst, n, x))
}

/// `C_x ∩ {1, ..., n_max}`.
pub fn convexity_set<C: Cornet + ?Sized>(inst: &C, x: &C::Elem, n_max: u64) -> Vec<u64> {
    (1..=n_max).filter(|&n| is_n_convex(inst, x, n)).collect()
}

/// Outcome of a finitized existential check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Holds for every `n` in `n0..=horizon`; a semi-decision.
    VerifiedAtHorizon { n0: u64, horizon: u64 },
    /// Fails at `n = horizon` for the probe with this index.
    RefutedAtHorizon { probe: usize, horizon: u64 },
    AnalyticallyVerified { n0: u64 },
    AnalyticallyRefuted { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(
            self,
            Verdict::VerifiedAtHorizon { .. } | Verdict::AnalyticallyVerified { .. }
        )
    }

    pub fn n0(&self) -> Option<u64> {
        match self {
            Verdict::VerifiedAtHorizon { n0, .. } | Verdict::AnalyticallyVerified { n0 } => Some(*n0),
            _ => None,
        }
    }
}

/// Finitization of "there exists n0" quantifiers.
#[derive(Clone, Debug)]
pub struct Horizon<E> {
    pub n_max: u64,
    pub probes: Vec<E>,
}

impl<E> Horizon<E> {
    pub fn new(n_max: u64, probes: Vec<E>) -> Self {
        assert!(n_max >= 1, "horizon must be positive");
        Horizon { n_max, probes }
    }
}

type WitnessFn<E> = Arc<dyn Fn(&E) -> Option<E> + Send + Sync>;
type MemberFn<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;
type SampleFn<E> = Arc<dyn Fn(&mut CaseRng) -> E + Send + Sync>;

/// A finite sample of a subsemigroup of Archimedean elements together with the
/// continuity witness `a ↦ b` (`b + b ⪯ a`) and a membership test for the
/// whole family.
#[derive(Clone)]
pub struct ArchFamily<E> {
    members: Vec<(String, E)>,
    witness: WitnessFn<E>,
    member: MemberFn<E>,
    sampler: Option<SampleFn<E>>,
}

impl<E: Clone> ArchFamily<E> {
    /// Checks closure under addition on all listed pairs.
    pub fn new<C: Cornet<Elem = E> + ?Sized>(
        inst: &C,
        members: Vec<(String, E)>,
        witness: impl Fn(&E) -> Option<E> + Send + Sync + 'static,
        member: impl Fn(&E) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidInput("family needs at least one member".into()));
        }
        for (la, a) in &members {
            if !member(a) {
                return Err(Error::InvalidInput(format!("{la} fails the family membership test")));
            }
            for (lb, b) in &members {
                if !member(&inst.add(a, b)) {
                    return Err(Error::InvalidInput(format!(
                        "family is not closed under addition: {la} + {lb}"
                    )));
                }
            }
        }
        Ok(ArchFamily {
            members,
            witness: Arc::new(witness),
            member: Arc::new(member),
            sampler: None,
        })
    }

    /// Same family with a replaced witness map (used to exercise failure paths).
    pub fn with_witness(&self, witness: impl Fn(&E) -> Option<E> + Send + Sync + 'static) -> Self {
        ArchFamily {
            members: self.members.clone(),
            witness: Arc::new(witness),
            member: self.member.clone(),
            sampler: self.sampler.clone(),
        }
    }

    /// Draws further family members beyond the listed ones.
    pub fn with_sampler(mut self, sampler: impl Fn(&mut CaseRng) -> E + Send + Sync + 'static) -> Self {
        self.sampler = Some(Arc::new(sampler));
        self
    }

    pub fn sample_member(&self, rng: &mut CaseRng) -> E {
        use rand::Rng;
        match &self.sampler {
            Some(s) => s(rng),
            None => self.members[rng.gen_range(0..self.members.len())].1.clone(),
        }
    }

    pub fn members(&self) -> &[(String, E)] {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = &E> {
        self.members.iter().map(|(_, e)| e)
    }

    pub fn witness(&self, a: &E) -> Option<E> {
        (self.witness)(a)
    }

    pub fn contains(&self, a: &E) -> bool {
        (self.member)(a)
    }
}

impl<E> Debug for ArchFamily<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<&str> = self.members.iter().map(|(l, _)| l.as_str()).collect();
        f.debug_struct("ArchFamily").field("members", &labels).finish()
    }
}
