//! Finitely generated W-invariant sets: the set cornet.
//!
//! An [`UpperSet`] is a finite union of pieces `conv(V) + W`. A set whose
//! pieces are all single points is DISCRETE (`F + W`); a single piece with
//! several vertices is POLYTOPIC (`conv(F) + W`). Sums of the two kinds give
//! unions of several convex pieces.

mod contain;
pub mod family;
pub mod instance;
pub mod universe;

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{facets, in_hull_plus_cone, HalfSpace, RVec};
use crate::wedge::Wedge;

pub use family::{set_arch_family, set_closure};
pub use instance::{make_int_set_cornet, make_set_cornet, Mutation, SetCornet};

/// Default bound on generator multisets enumerated by [`is_n_convex_set`].
pub const MULTISET_CAP: u128 = 56;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Carrier {
    /// Q^d
    Rational,
    /// Z^d, only with `W = {0}`.
    Integer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Repr {
    Discrete,
    Polytopic,
    Union,
}

/// `conv(vertices) + W` with a minimal, sorted vertex list.
#[derive(Clone)]
pub struct Piece {
    vertices: Vec<RVec>,
    facets: Arc<OnceLock<Vec<HalfSpace>>>,
}

impl Piece {
    fn new(vertices: Vec<RVec>) -> Self {
        Piece {
            vertices,
            facets: Arc::new(OnceLock::new()),
        }
    }

    pub fn vertices(&self) -> &[RVec] {
        &self.vertices
    }

    fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    fn contains(&self, p: &RVec, w: &Wedge) -> bool {
        if self.is_point() {
            w.contains(&(p - &self.vertices[0]))
        } else {
            in_hull_plus_cone(p, &self.vertices, w.cone())
        }
    }

    fn facets(&self, w: &Wedge) -> &[HalfSpace] {
        self.facets.get_or_init(|| facets(&self.vertices, w.rays()))
    }

    fn within(&self, other: &Piece, w: &Wedge) -> bool {
        self.vertices.iter().all(|v| other.contains(v, w))
    }
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

/// A nonempty finitely generated W-invariant set in canonical form.
///
/// `PartialEq` compares canonical forms; use [`set_eq`] for denotational
/// equality, which differs only when unions are involved.
#[derive(Clone)]
pub struct UpperSet {
    wedge: Arc<Wedge>,
    carrier: Carrier,
    pieces: Vec<Piece>,
}

impl PartialEq for UpperSet {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.pieces == other.pieces && *self.wedge == *other.wedge
    }
}

impl Eq for UpperSet {}

impl PartialOrd for UpperSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the canonical piece lists.
impl Ord for UpperSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pieces.cmp(&other.pieces)
    }
}

fn canonical_piece(w: &Wedge, mut vs: Vec<RVec>) -> Vec<RVec> {
    vs.sort();
    vs.dedup();
    let undominated: Vec<RVec> = vs
        .iter()
        .enumerate()
        .filter(|(i, v)| {
            !vs.iter()
                .enumerate()
                .any(|(j, u)| j != *i && w.contains(&(*v - u)))
        })
        .map(|(_, v)| v.clone())
        .collect();
    let mut keep = undominated;
    if keep.len() >= 3 {
        let mut i = 0;
        while i < keep.len() {
            let others: Vec<RVec> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if in_hull_plus_cone(&keep[i], &others, w.cone()) {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
    }
    keep
}

fn canonical_pieces(w: &Wedge, raw: Vec<Vec<RVec>>) -> Vec<Piece> {
    let mut ps: Vec<Vec<RVec>> = raw.into_iter().map(|p| canonical_piece(w, p)).collect();
    ps.sort();
    ps.dedup();
    let mut pieces: Vec<Piece> = ps.into_iter().map(Piece::new).collect();
    let mut i = 0;
    while i < pieces.len() {
        let covered = pieces
            .iter()
            .enumerate()
            .any(|(j, q)| j != i && pieces[i].within(q, w));
        if covered {
            pieces.remove(i);
        } else {
            i += 1;
        }
    }
    pieces
}

impl UpperSet {
    fn check_points(wedge: &Wedge, carrier: Carrier, points: &[RVec]) -> Result<()> {
        if points.is_empty() {
            return Err(Error::InvalidInput("an upper set needs at least one generator".into()));
        }
        for p in points {
            wedge.cone().check_dim(p)?;
            if carrier == Carrier::Integer && !p.is_integral() {
                return Err(Error::InvalidInput(format!(
                    "generator {p} is not integral in an integer carrier"
                )));
            }
        }
        if carrier == Carrier::Integer && !wedge.is_zero() {
            return Err(Error::InvalidInput(
                "integer carriers are supported only with the zero wedge".into(),
            ));
        }
        Ok(())
    }

    /// `F + W`.
    pub fn discrete(wedge: Arc<Wedge>, carrier: Carrier, generators: Vec<RVec>) -> Result<Self> {
        Self::check_points(&wedge, carrier, &generators)?;
        let raw = generators.into_iter().map(|g| vec![g]).collect();
        Ok(Self::from_raw(wedge, carrier, raw))
    }

    /// `conv(F) + W` over Q^d.
    pub fn polytopic(wedge: Arc<Wedge>, generators: Vec<RVec>) -> Result<Self> {
        Self::check_points(&wedge, Carrier::Rational, &generators)?;
        Ok(Self::from_raw(wedge, Carrier::Rational, vec![generators]))
    }

    /// Union of pieces `conv(V_i) + W` over Q^d.
    pub fn union(wedge: Arc<Wedge>, pieces: Vec<Vec<RVec>>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidInput("a union needs at least one piece".into()));
        }
        for p in &pieces {
            Self::check_points(&wedge, Carrier::Rational, p)?;
        }
        Ok(Self::from_raw(wedge, Carrier::Rational, pieces))
    }

    /// `W` itself, the unit of the set cornet.
    pub fn unit(wedge: Arc<Wedge>, carrier: Carrier) -> Self {
        let z = RVec::zeros(wedge.dim());
        Self::from_raw(wedge, carrier, vec![vec![z]])
    }

    fn from_raw(wedge: Arc<Wedge>, carrier: Carrier, raw: Vec<Vec<RVec>>) -> Self {
        let pieces = canonical_pieces(&wedge, raw);
        UpperSet {
            wedge,
            carrier,
            pieces,
        }
    }

    pub fn wedge(&self) -> &Wedge {
        &self.wedge
    }

    pub fn wedge_arc(&self) -> &Arc<Wedge> {
        &self.wedge
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn dim(&self) -> usize {
        self.wedge.dim()
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn repr(&self) -> Repr {
        if self.pieces.iter().all(Piece::is_point) {
            Repr::Discrete
        } else if self.pieces.len() == 1 {
            Repr::Polytopic
        } else {
            Repr::Union
        }
    }

    /// Every vertex of every piece, sorted.
    pub fn generators(&self) -> Vec<RVec> {
        let mut g: Vec<RVec> = self.pieces.iter().flat_map(|p| p.vertices.iter().cloned()).collect();
        g.sort();
        g.dedup();
        g
    }

    fn compatible(&self, other: &UpperSet) -> Result<()> {
        if !Arc::ptr_eq(&self.wedge, &other.wedge) && *self.wedge != *other.wedge {
            return Err(Error::WedgeMismatch);
        }
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        Ok(())
    }

    pub fn contains_point(&self, p: &RVec) -> bool {
        if self.carrier == Carrier::Integer && !p.is_integral() {
            return false;
        }
        self.pieces.iter().any(|q| q.contains(p, &self.wedge))
    }

    /// Minkowski sum, assuming compatible operands.
    pub fn plus(&self, other: &UpperSet) -> UpperSet {
        let mut raw = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for p in &self.pieces {
            for q in &other.pieces {
                let mut sums = Vec::with_capacity(p.vertices.len() * q.vertices.len());
                for a in &p.vertices {
                    for b in &q.vertices {
                        sums.push(a + b);
                    }
                }
                raw.push(sums);
            }
        }
        Self::from_raw(self.wedge.clone(), self.carrier, raw)
    }

    /// `n * A = n F + W`; positive scaling preserves canonical form.
    pub fn scaled(&self, n: u64) -> UpperSet {
        assert!(n >= 1, "star needs n >= 1");
        UpperSet {
            wedge: self.wedge.clone(),
            carrier: self.carrier,
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(p.vertices.iter().map(|v| v.scale_int(n)).collect()))
                .collect(),
        }
    }

    /// Inclusion, assuming compatible operands.
    pub fn le(&self, other: &UpperSet) -> bool {
        self.pieces.iter().all(|p| other.covers_piece(p))
    }

    fn covers_piece(&self, p: &Piece) -> bool {
        let w = &self.wedge;
        if self.pieces.len() == 1 {
            return p.within(&self.pieces[0], w);
        }
        if !p.vertices.iter().all(|v| self.contains_point(v)) {
            return false;
        }
        if p.is_point() || self.pieces.iter().any(|q| p.within(q, w)) {
            return true;
        }
        contain::covered_by_union(p, &self.pieces, w)
    }

    pub fn spec(&self) -> SetSpec {
        match self.repr() {
            Repr::Union => SetSpec {
                repr: Repr::Union,
                generators: None,
                pieces: Some(self.pieces.iter().map(|p| p.vertices.clone()).collect()),
            },
            r => SetSpec {
                repr: r,
                generators: Some(self.generators()),
                pieces: None,
            },
        }
    }
}

impl fmt::Debug for UpperSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UpperSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, vs: &[RVec]| -> fmt::Result {
            write!(f, "{{")?;
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")
        };
        match self.repr() {
            Repr::Discrete => {
                list(f, &self.generators())?;
                write!(f, "+W")
            }
            Repr::Polytopic => {
                write!(f, "conv")?;
                list(f, &self.pieces[0].vertices)?;
                write!(f, "+W")
            }
            Repr::Union => {
                for (i, p) in self.pieces.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ∪ ")?;
                    }
                    write!(f, "conv")?;
                    list(f, &p.vertices)?;
                }
                write!(f, "+W")
            }
        }
    }
}

/// Wire form: `{"repr": "discrete"|"polytopic", "generators": [...]}` or
/// `{"repr": "union", "pieces": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    pub repr: Repr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<RVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pieces: Option<Vec<Vec<RVec>>>,
}

impl SetSpec {
    pub fn build(&self, wedge: Arc<Wedge>, carrier: Carrier) -> Result<UpperSet> {
        let need = |what: &str| Error::InvalidInput(format!("{what} set needs a \"{}\" field", if what == "union" { "pieces" } else { "generators" }));
        match (self.repr, &self.generators, &self.pieces) {
            (Repr::Discrete, Some(g), None) => UpperSet::discrete(wedge, carrier, g.clone()),
            (Repr::Polytopic | Repr::Union, _, _) if carrier == Carrier::Integer => Err(
                Error::InvalidInput("integer carriers hold discrete sets only".into()),
            ),
            (Repr::Polytopic, Some(g), None) => UpperSet::polytopic(wedge, g.clone()),
            (Repr::Union, None, Some(p)) => UpperSet::union(wedge, p.clone()),
            (Repr::Discrete, _, _) => Err(need("discrete")),
            (Repr::Polytopic, _, _) => Err(need("polytopic")),
            (Repr::Union, _, _) => Err(need("union")),
        }
    }
}

pub fn msum(a: &UpperSet, b: &UpperSet) -> Result<UpperSet> {
    a.compatible(b)?;
    Ok(a.plus(b))
}

pub fn star_set(n: u64, a: &UpperSet) -> Result<UpperSet> {
    if n == 0 {
        return Err(Error::InvalidInput("star needs n >= 1".into()));
    }
    Ok(a.scaled(n))
}

pub fn subset(a: &UpperSet, b: &UpperSet) -> Result<bool> {
    a.compatible(b)?;
    Ok(a.le(b))
}

/// Denotational equality.
pub fn set_eq(a: &UpperSet, b: &UpperSet) -> bool {
    if a.repr() == Repr::Union || b.repr() == Repr::Union {
        a.le(b) && b.le(a)
    } else {
        a == b
    }
}

/// Intersection of DISCRETE sets: coordinatewise joins for the orthant,
/// common points for the zero wedge.
pub fn intersect(a: &UpperSet, b: &UpperSet) -> Result<UpperSet> {
    a.compatible(b)?;
    if a.repr() != Repr::Discrete || b.repr() != Repr::Discrete {
        return Err(Error::Unsupported("intersection needs discrete sets".into()));
    }
    let (fa, fb) = (a.generators(), b.generators());
    if a.wedge.is_orthant() {
        let joins = fa
            .iter()
            .flat_map(|f| fb.iter().map(move |g| vec![f.join_orthant(g)]))
            .collect();
        Ok(UpperSet::from_raw(a.wedge.clone(), a.carrier, joins))
    } else if a.wedge.is_zero() {
        let common: Vec<Vec<RVec>> = fa.into_iter().filter(|f| fb.contains(f)).map(|f| vec![f]).collect();
        if common.is_empty() {
            return Err(Error::InvalidInput("intersection is empty".into()));
        }
        Ok(UpperSet::from_raw(a.wedge.clone(), a.carrier, common))
    } else {
        Err(Error::Unsupported(
            "intersection needs the orthant or the zero wedge".into(),
        ))
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Calls `f` on each `n`-multiset of `0..k` (as a nondecreasing index list)
/// until it returns false; returns false if some call did.
fn all_multisets(k: usize, n: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, k: usize, n: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if acc.len() == n {
            return f(acc);
        }
        for i in start..k {
            acc.push(i);
            let ok = go(i, k, n, acc, f);
            acc.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(0, k, n, &mut Vec::with_capacity(n), f)
}

/// n-convexity via averages of generator multisets: over Q, the average of
/// any `n` pieces must lie in `A`; over Z every `n`-fold sum must be
/// divisible by `n` with quotient in `A`.
pub fn is_n_convex_set(a: &UpperSet, n: u64, cap: u128) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if n == 1 || a.repr() == Repr::Polytopic {
        return Ok(true);
    }
    let k = a.pieces.len();
    let count = binomial(k as u128 + n as u128 - 1, n as u128);
    if count > cap {
        return Err(Error::CapExceeded {
            what: "generator multisets",
            count,
            cap,
        });
    }
    let n_usize = n as usize;
    let ok = match a.carrier {
        Carrier::Integer => {
            let nb = BigInt::from(n);
            all_multisets(k, n_usize, &mut |idx| {
                let sum = idx
                    .iter()
                    .fold(RVec::zeros(a.dim()), |s, &i| &s + &a.pieces[i].vertices[0]);
                let divisible = sum.coords().iter().all(|c| c.numer().is_multiple_of(&nb));
                divisible && a.contains_point(&sum.divide(n))
            })
        }
        Carrier::Rational => all_multisets(k, n_usize, &mut |idx| {
            let mut verts = vec![RVec::zeros(a.dim())];
            for &i in idx {
                verts = verts
                    .iter()
                    .flat_map(|s| a.pieces[i].vertices.iter().map(move |v| s + v))
                    .collect();
            }
            let avg = Piece::new(canonical_piece(&a.wedge, verts.iter().map(|v| v.divide(n)).collect()));
            a.covers_piece(&avg)
        }),
    };
    Ok(ok)
}

/// Smallest convex W-invariant superset: POLYTOPIC on all generators.
pub fn convex_hull(a: &UpperSet) -> Result<UpperSet> {
    if a.carrier == Carrier::Integer {
        return Err(Error::Unsupported("convex hulls need a rational carrier".into()));
    }
    UpperSet::polytopic(a.wedge.clone(), a.generators())
}

/// `φ(x) = x + W`.
pub fn phi_embed(w: Arc<Wedge>, x: RVec) -> Result<UpperSet> {
    UpperSet::discrete(w, Carrier::Rational, vec![x])
}

#[cfg(test)]
mod tests;
