//! Wedges in Q^d, the order they induce, and the element cornet over them.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cornet::{ArchFamily, CaseRng, Cornet, Horizon, Verdict};
use crate::cornet::order::archimedean_at_horizon;
use crate::error::{Error, Result};
use crate::geometry::rational::ceil_at_least_one;
use crate::geometry::{ConeH, Pointedness, RVec, Rational};
use crate::sample::SamplerConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WedgeKind {
    Orthant,
    Zero,
    General,
}

/// A pointed polyhedral cone `W`; `x ⪯ y` iff `y - x ∈ W`.
///
/// Preimages under `x ↦ n x` stay inside `W` automatically: `M(nx) >= 0` iff `Mx >= 0`.
#[derive(Clone, Debug)]
pub struct Wedge {
    cone: ConeH,
    kind: WedgeKind,
    rays: Vec<RVec>,
    interior: Option<RVec>,
}

impl PartialEq for Wedge {
    fn eq(&self, other: &Self) -> bool {
        self.cone == other.cone
    }
}

impl Eq for Wedge {}

impl Wedge {
    /// Rejects cones that contain a line.
    pub fn new(cone: ConeH) -> Result<Self> {
        if let Pointedness::NotPointed(witness) = cone.pointedness() {
            return Err(Error::NotPointed { witness });
        }
        let d = cone.dim();
        let kind = if cone == ConeH::orthant(d) {
            WedgeKind::Orthant
        } else if cone == ConeH::zero(d) {
            WedgeKind::Zero
        } else {
            WedgeKind::General
        };
        Ok(Wedge {
            rays: cone.extreme_rays(),
            interior: cone.interior_point(),
            cone,
            kind,
        })
    }

    pub fn orthant(dim: usize) -> Self {
        Self::new(ConeH::orthant(dim)).expect("orthant is pointed")
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(ConeH::zero(dim)).expect("zero cone is pointed")
    }

    pub fn from_rows(dim: usize, rows: Vec<RVec>) -> Result<Self> {
        Self::new(ConeH::new(dim, rows)?)
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn cone(&self) -> &ConeH {
        &self.cone
    }

    pub fn kind(&self) -> WedgeKind {
        self.kind
    }

    pub fn is_orthant(&self) -> bool {
        self.kind == WedgeKind::Orthant
    }

    pub fn is_zero(&self) -> bool {
        self.kind == WedgeKind::Zero
    }

    pub fn rays(&self) -> &[RVec] {
        &self.rays
    }

    /// A strictly interior direction (all-ones for the orthant), if any.
    pub fn interior_point(&self) -> Option<&RVec> {
        self.interior.as_ref()
    }

    pub fn contains(&self, x: &RVec) -> bool {
        self.cone.holds(x)
    }

    pub fn strictly_interior(&self, x: &RVec) -> bool {
        !self.cone.rows().is_empty() && self.cone.strictly_interior(x)
    }

    /// `x ⪯ y`, panicking on dimension mismatch.
    pub fn le(&self, x: &RVec, y: &RVec) -> bool {
        self.cone.holds(&(y - x))
    }

    pub fn leq(&self, x: &RVec, y: &RVec) -> Result<bool> {
        self.cone.check_dim(x)?;
        self.cone.check_dim(y)?;
        Ok(self.le(x, y))
    }

    pub fn spec(&self) -> WedgeSpec {
        match self.kind {
            WedgeKind::Orthant => WedgeSpec::Named(WedgeName::Orthant),
            WedgeKind::Zero => WedgeSpec::Named(WedgeName::Zero),
            WedgeKind::General => WedgeSpec::Rows(RowsSpec {
                rows: self.cone.rows().to_vec(),
            }),
        }
    }

    /// A random member: a nonnegative combination of extreme rays.
    pub fn sample_member(&self, cfg: &SamplerConfig, rng: &mut CaseRng) -> RVec {
        let mut v = RVec::zeros(self.dim());
        for r in &self.rays {
            v = &v + &r.scale(&cfg.nonnegative(rng));
        }
        v
    }
}

pub fn leq_w(w: &Wedge, x: &RVec, y: &RVec) -> Result<bool> {
    w.leq(x, y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WedgeName {
    Orthant,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowsSpec {
    pub rows: Vec<RVec>,
}

/// Wire form: `"orthant"`, `"zero"` or `{"rows": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WedgeSpec {
    Named(WedgeName),
    Rows(RowsSpec),
}

impl WedgeSpec {
    pub fn build(&self, dim: usize) -> Result<Wedge> {
        match self {
            WedgeSpec::Named(WedgeName::Orthant) => Ok(Wedge::orthant(dim)),
            WedgeSpec::Named(WedgeName::Zero) => Ok(Wedge::zero(dim)),
            WedgeSpec::Rows(r) => Wedge::from_rows(dim, r.rows.clone()),
        }
    }
}

/// `(Q^d, +, ·, ⪯_W)`: star is scalar multiplication, so every element is convex.
#[derive(Clone, Debug)]
pub struct ElemCornet {
    wedge: Arc<Wedge>,
    sampler: SamplerConfig,
}

pub fn make_elem_cornet(w: Wedge) -> ElemCornet {
    ElemCornet::new(Arc::new(w), SamplerConfig::default())
}

impl ElemCornet {
    pub fn new(wedge: Arc<Wedge>, sampler: SamplerConfig) -> Self {
        ElemCornet { wedge, sampler }
    }

    pub fn wedge(&self) -> &Wedge {
        &self.wedge
    }

    pub fn wedge_arc(&self) -> Arc<Wedge> {
        self.wedge.clone()
    }

    pub fn dim(&self) -> usize {
        self.wedge.dim()
    }
}

impl Cornet for ElemCornet {
    type Elem = RVec;

    fn name(&self) -> String {
        format!("elemQ(d={})", self.dim())
    }

    fn zero(&self) -> RVec {
        RVec::zeros(self.dim())
    }

    fn add(&self, x: &RVec, y: &RVec) -> RVec {
        x + y
    }

    fn star(&self, n: u64, x: &RVec) -> RVec {
        x.scale_int(n)
    }

    fn leq(&self, x: &RVec, y: &RVec) -> bool {
        self.wedge.le(x, y)
    }

    fn equal(&self, x: &RVec, y: &RVec) -> bool {
        x == y
    }

    fn sample(&self, rng: &mut CaseRng) -> RVec {
        self.sampler.vector(rng, self.dim())
    }

    fn encode(&self, x: &RVec) -> serde_json::Value {
        serde_json::to_value(x).expect("vectors serialize")
    }

    fn sample_nonnegative(&self, rng: &mut CaseRng) -> Option<RVec> {
        Some(self.wedge.sample_member(&self.sampler, rng))
    }

    fn finite_inf(&self, xs: &[RVec]) -> Option<RVec> {
        if !self.wedge.is_orthant() || xs.is_empty() {
            return None;
        }
        let mut it = xs.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, x| {
            RVec::new(
                acc.coords()
                    .iter()
                    .zip(x.coords())
                    .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                    .collect(),
            )
        }))
    }

    fn hull(&self, x: &RVec) -> Option<RVec> {
        Some(x.clone())
    }

    fn closure(&self, x: &RVec) -> Option<RVec> {
        Some(x.clone())
    }

    fn archimedean_exact(&self, x: &RVec, probes: &[RVec]) -> Option<Verdict> {
        interior_n0(&self.wedge, x, probes).map(|n0| Verdict::AnalyticallyVerified { n0 })
    }

    fn bounded_exact(&self, x: &RVec, a: &RVec) -> Option<Option<u64>> {
        wbounded_n0(&self.wedge, x, a).ok().map(Some)
    }
}

/// For strictly interior `x`: the least `n0` with `0 ⪯ u + n x` for all `n >= n0`
/// and every probe, `max ceil((-m·u)/(m·x))` over rows and probes.
fn interior_n0(w: &Wedge, x: &RVec, probes: &[RVec]) -> Option<u64> {
    if !w.strictly_interior(x) {
        return None;
    }
    let mut n0 = 1;
    for u in probes {
        for m in w.cone().rows() {
            let q: Rational = -m.dot(u) / m.dot(x);
            n0 = n0.max(ceil_at_least_one(&q));
        }
    }
    Some(n0)
}

/// Exact verdict for strictly interior `x`, horizon search otherwise.
pub fn interior_archimedean(inst: &ElemCornet, x: &RVec, h: &Horizon<RVec>) -> Verdict {
    match interior_n0(inst.wedge(), x, &h.probes) {
        Some(n0) => Verdict::AnalyticallyVerified { n0 },
        None => archimedean_at_horizon(inst, x, h),
    }
}

fn wbounded_n0(w: &Wedge, x: &RVec, a: &RVec) -> Result<u64> {
    if !w.strictly_interior(a) {
        return Err(Error::InvalidInput(format!("{a} is not strictly interior")));
    }
    let mut n0 = 1;
    for m in w.cone().rows() {
        let q: Rational = m.dot(x) / m.dot(a);
        n0 = n0.max(ceil_at_least_one(&q));
    }
    Ok(n0)
}

/// Least `n0` with `x ⪯ n a` for all `n >= n0`; `a` must be strictly interior.
pub fn wbounded_check(w: &Wedge, x: &RVec, a: &RVec) -> Result<Verdict> {
    w.cone().check_dim(x)?;
    w.cone().check_dim(a)?;
    wbounded_n0(w, x, a).map(|n0| Verdict::AnalyticallyVerified { n0 })
}

/// `{ε d}` for the interior direction `d`, witness `a ↦ a / 2`; the family is
/// the semigroup of strictly interior vectors.
pub fn elem_arch_family(inst: &ElemCornet, epsilons: &[Rational]) -> Result<ArchFamily<RVec>> {
    let w = inst.wedge.clone();
    let d = w
        .interior_point()
        .cloned()
        .ok_or_else(|| Error::InvalidInput("wedge has empty interior".into()))?;
    if epsilons.iter().any(|e| !e.is_positive()) {
        return Err(Error::InvalidInput("epsilons must be positive".into()));
    }
    let members = epsilons
        .iter()
        .map(|e| (format!("eps={}", crate::geometry::format_rational(e)), d.scale(e)))
        .collect();
    let member_w = w.clone();
    let sampler_w = w.clone();
    let cfg = inst.sampler.clone();
    let fam = ArchFamily::new(inst, members, |a: &RVec| Some(a.divide(2)), move |a: &RVec| {
        member_w.strictly_interior(a)
    })?;
    Ok(fam.with_sampler(move |rng: &mut CaseRng| {
        let mut eps = cfg.nonnegative(rng);
        if eps.is_zero() {
            eps = Rational::from_integer(1.into());
        }
        &d.scale(&eps) + &sampler_w.sample_member(&cfg, rng)
    }))
}
