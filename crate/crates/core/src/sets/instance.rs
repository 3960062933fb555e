use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    convex_hull, intersect, set_eq, Carrier, Repr, UpperSet, MULTISET_CAP,
};
use crate::geometry::in_hull_plus_cone;
use crate::cornet::{dot_mul, CaseRng, Cornet, Verdict};
use crate::geometry::rational::ceil_at_least_one;
use crate::geometry::{ratio, LinearProgram, LpOutcome, Rational, Relation, RVec};
use crate::sample::SamplerConfig;
use crate::wedge::Wedge;

/// Deliberate faults for checking that the law suites notice them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// `n * A` computed as the n-fold Minkowski sum `A + ... + A`.
    StarAsSum,
}

pub struct SetCornet {
    wedge: Arc<Wedge>,
    carrier: Carrier,
    repr: Repr,
    sampler: SamplerConfig,
    mutation: Option<Mutation>,
    multiset_cap: u128,
}

/// Rational set cornet sampling sets of the given representation.
pub fn make_set_cornet(w: Wedge, repr: Repr) -> SetCornet {
    SetCornet::new(Arc::new(w), Carrier::Rational, repr, SamplerConfig::default())
}

/// Finite subsets of Z^d with `W = {0}`.
pub fn make_int_set_cornet(dim: usize, sampler: SamplerConfig) -> SetCornet {
    SetCornet::new(Arc::new(Wedge::zero(dim)), Carrier::Integer, Repr::Discrete, sampler)
}

impl SetCornet {
    pub fn new(wedge: Arc<Wedge>, carrier: Carrier, repr: Repr, sampler: SamplerConfig) -> Self {
        let repr = if carrier == Carrier::Integer { Repr::Discrete } else { repr };
        SetCornet {
            wedge,
            carrier,
            repr,
            sampler,
            mutation: None,
            multiset_cap: MULTISET_CAP,
        }
    }

    pub fn with_mutation(mut self, mutation: Option<Mutation>) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn with_multiset_cap(mut self, cap: u128) -> Self {
        self.multiset_cap = cap;
        self
    }

    pub fn wedge(&self) -> &Wedge {
        &self.wedge
    }

    pub fn wedge_arc(&self) -> Arc<Wedge> {
        self.wedge.clone()
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn sampler(&self) -> &SamplerConfig {
        &self.sampler
    }

    pub fn multiset_cap(&self) -> u128 {
        self.multiset_cap
    }

    pub fn dim(&self) -> usize {
        self.wedge.dim()
    }

    fn point(&self, rng: &mut CaseRng) -> RVec {
        match self.carrier {
            Carrier::Rational => self.sampler.vector(rng, self.dim()),
            Carrier::Integer => self.sampler.integer_vector(rng, self.dim()),
        }
    }

    pub fn build(&self, points: Vec<RVec>) -> UpperSet {
        let w = self.wedge.clone();
        match self.repr {
            Repr::Polytopic => UpperSet::polytopic(w, points),
            _ => UpperSet::discrete(w, self.carrier, points),
        }
        .expect("sampled generators fit the instance")
    }

    pub fn sample_points(&self, rng: &mut CaseRng) -> Vec<RVec> {
        let k = self.sampler.generator_count(rng);
        (0..k).map(|_| self.point(rng)).collect()
    }

    /// A random point of `a`: a convex combination of one piece's vertices
    /// plus a member of `W`.
    pub fn sample_point_in(&self, a: &UpperSet, rng: &mut CaseRng) -> RVec {
        let piece = a.pieces().choose(rng).expect("sets are nonempty");
        let vs = piece.vertices();
        if self.carrier == Carrier::Integer {
            return vs.choose(rng).expect("pieces are nonempty").clone();
        }
        let mut weights: Vec<u64> = vs.iter().map(|_| rng.gen_range(0..=3)).collect();
        if weights.iter().all(|&w| w == 0) {
            weights[0] = 1;
        }
        let total: u64 = weights.iter().sum();
        let mut p = self.wedge.sample_member(&self.sampler, rng);
        for (v, &wt) in vs.iter().zip(&weights) {
            p = &p + &v.scale(&ratio(wt as i64, total as i64));
        }
        p
    }

    /// `(x, y, z)` over Q^d with `y` POLYTOPIC and `x ⊆ y`, so every
    /// hypothesis of the cancellation theorem and its premise hold.
    pub fn cancellation_triple(&self, rng: &mut CaseRng) -> (UpperSet, UpperSet, UpperSet) {
        assert_eq!(self.carrier, Carrier::Rational, "convex sets need a rational carrier");
        let y = UpperSet::polytopic(self.wedge.clone(), self.sample_points(rng)).expect("sampled points fit");
        let z = self.sample(rng);
        let inside = |rng: &mut CaseRng| -> Vec<RVec> {
            let k = rng.gen_range(1..=3);
            (0..k).map(|_| self.sample_point_in(&y, rng)).collect()
        };
        let x = match rng.gen_range(0..3) {
            0 => UpperSet::discrete(self.wedge.clone(), Carrier::Rational, inside(rng)),
            1 => UpperSet::polytopic(self.wedge.clone(), inside(rng)),
            _ => {
                let w = self.wedge.sample_member(&self.sampler, rng);
                UpperSet::discrete(self.wedge.clone(), Carrier::Rational, vec![w]).map(|s| y.plus(&s))
            }
        }
        .expect("sampled points fit");
        (x, y, z)
    }
}

impl Cornet for SetCornet {
    type Elem = UpperSet;

    fn name(&self) -> String {
        let carrier = match self.carrier {
            Carrier::Rational => "setQ",
            Carrier::Integer => "setZ",
        };
        let repr = match self.repr {
            Repr::Discrete => "discrete",
            Repr::Polytopic => "polytopic",
            Repr::Union => "union",
        };
        let mutated = if self.mutation.is_some() { ",mutated" } else { "" };
        format!("{carrier}(d={},{repr}{mutated})", self.dim())
    }

    fn zero(&self) -> UpperSet {
        UpperSet::unit(self.wedge.clone(), self.carrier)
    }

    fn add(&self, x: &UpperSet, y: &UpperSet) -> UpperSet {
        x.plus(y)
    }

    fn star(&self, n: u64, x: &UpperSet) -> UpperSet {
        match self.mutation {
            Some(Mutation::StarAsSum) => {
                let plain = SetCornet::new(self.wedge.clone(), self.carrier, self.repr, self.sampler.clone());
                dot_mul(&plain, n, x)
            }
            None => x.scaled(n),
        }
    }

    fn leq(&self, x: &UpperSet, y: &UpperSet) -> bool {
        x.le(y)
    }

    fn equal(&self, x: &UpperSet, y: &UpperSet) -> bool {
        set_eq(x, y)
    }

    fn sample(&self, rng: &mut CaseRng) -> UpperSet {
        let pts = self.sample_points(rng);
        self.build(pts)
    }

    fn encode(&self, x: &UpperSet) -> serde_json::Value {
        serde_json::to_value(x.spec()).expect("sets serialize")
    }

    fn sample_nonnegative(&self, rng: &mut CaseRng) -> Option<UpperSet> {
        let mut pts = self.sample_points(rng);
        pts.push(RVec::zeros(self.dim()));
        Some(self.build(pts))
    }

    fn finite_inf(&self, xs: &[UpperSet]) -> Option<UpperSet> {
        if !self.wedge.is_orthant() {
            return None;
        }
        let (first, rest) = xs.split_first()?;
        rest.iter()
            .try_fold(first.clone(), |acc, x| intersect(&acc, x).ok())
    }

    fn hull(&self, x: &UpperSet) -> Option<UpperSet> {
        convex_hull(x).ok()
    }

    fn closure(&self, x: &UpperSet) -> Option<UpperSet> {
        Some(x.clone())
    }

    fn archimedean_exact(&self, x: &UpperSet, probes: &[UpperSet]) -> Option<Verdict> {
        Some(set_archimedean(x, probes))
    }

    fn bounded_exact(&self, x: &UpperSet, a: &UpperSet) -> Option<Option<u64>> {
        set_bounded_n0(x, a).map(Some)
    }
}

/// Whether some point `p` of the set has `-p` in the interior of `W`.
fn has_interior_negative(x: &UpperSet) -> bool {
    let w = x.wedge();
    if w.interior_point().is_none() || w.cone().rows().is_empty() {
        return false;
    }
    x.pieces().iter().any(|p| {
        let vs = p.vertices();
        if vs.iter().any(|v| w.strictly_interior(&-v)) {
            return true;
        }
        if vs.len() == 1 {
            return false;
        }
        // max t s.t. m·(Σλv) + t <= 0 for every row m
        let k = vs.len();
        let mut lp = LinearProgram::new(k + 1);
        for i in 0..k {
            lp.set_nonnegative(i);
        }
        let mut sum = vec![Rational::one(); k + 1];
        sum[k] = Rational::zero();
        lp.push(sum, Relation::Eq, Rational::one());
        for m in w.cone().rows() {
            let mut row: Vec<Rational> = vs.iter().map(|v| m.dot(v)).collect();
            row.push(Rational::one());
            lp.push(row, Relation::Le, Rational::zero());
        }
        let mut obj = vec![Rational::zero(); k + 1];
        obj[k] = Rational::one();
        lp.push(obj.clone(), Relation::Le, Rational::one());
        matches!(lp.maximize(&obj), LpOutcome::Optimal { value, .. } if value.is_positive())
    })
}

/// Whether `0 ∈ U + n * X`.
fn absorbs(u: &UpperSet, x: &UpperSet, n: u64) -> bool {
    let origin = RVec::zeros(x.dim());
    let nx = x.scaled(n);
    u.pieces().iter().any(|p| {
        nx.pieces().iter().any(|q| {
            let sums: Vec<RVec> = p
                .vertices()
                .iter()
                .flat_map(|a| q.vertices().iter().map(move |b| a + b))
                .collect();
            in_hull_plus_cone(&origin, &sums, x.wedge().cone())
        })
    })
}

/// Least `n` with `0 ∈ U + n * X`; monotone in `n` once it holds.
fn least_absorbing(u: &UpperSet, x: &UpperSet) -> u64 {
    if absorbs(u, x, 1) {
        return 1;
    }
    let mut hi = 2u64;
    while !absorbs(u, x, hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if absorbs(u, x, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `X` is Archimedean iff some `p ∈ X` has `-p ∈ int W`; then `n0` is the
/// largest least absorbing multiple over the probes.
pub fn set_archimedean(x: &UpperSet, probes: &[UpperSet]) -> Verdict {
    if !has_interior_negative(x) {
        return Verdict::AnalyticallyRefuted {
            reason: "no point p of x has -p in the interior of W".into(),
        };
    }
    let n0 = probes.iter().map(|u| least_absorbing(u, x)).max().unwrap_or(1);
    Verdict::AnalyticallyVerified { n0 }
}

/// For `a = {q} + W` with `-q` strictly interior: the least `n0` with
/// `X ⊆ n q + W` for all `n >= n0`.
pub fn set_bounded_n0(x: &UpperSet, a: &UpperSet) -> Option<u64> {
    let w = a.wedge();
    if a.repr() != Repr::Discrete || a.pieces().len() != 1 {
        return None;
    }
    let q = &a.pieces()[0].vertices()[0];
    if w.cone().rows().is_empty() || !w.strictly_interior(&-q) {
        return None;
    }
    let mut n0 = 1u64;
    for v in x.generators() {
        for m in w.cone().rows() {
            n0 = n0.max(ceil_at_least_one(&(m.dot(&v) / m.dot(q))));
        }
    }
    Some(n0)
}
