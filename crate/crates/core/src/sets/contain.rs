//! Containment of a convex piece in a finite union of convex pieces.
//!
//! Search for a point of `conv(P) + W` outside every piece: pick a point, find
//! a piece containing it, and branch on which facet of that piece the next
//! point must violate strictly. Each branch is one LP.

use num_traits::{One, Zero};

use super::Piece;
use crate::geometry::{HalfSpace, LinearProgram, LpOutcome, Rational, Relation, RVec};
use crate::wedge::Wedge;

pub(super) fn covered_by_union(p: &Piece, pieces: &[Piece], w: &Wedge) -> bool {
    let facet_lists: Vec<&[HalfSpace]> = pieces.iter().map(|q| q.facets(w)).collect();
    let all: Vec<usize> = (0..pieces.len()).collect();
    !escapes(p, &facet_lists, w, &mut Vec::new(), &all)
}

fn escapes(
    p: &Piece,
    facets: &[&[HalfSpace]],
    w: &Wedge,
    chosen: &mut Vec<HalfSpace>,
    remaining: &[usize],
) -> bool {
    let Some(x) = point_violating(p, chosen, w) else {
        return false;
    };
    let Some(&j) = remaining.iter().find(|&&j| facets[j].iter().all(|h| h.holds(&x))) else {
        return true;
    };
    let rest: Vec<usize> = remaining.iter().copied().filter(|&k| k != j).collect();
    for h in facets[j] {
        chosen.push(h.clone());
        let found = escapes(p, facets, w, chosen, &rest);
        chosen.pop();
        if found {
            return true;
        }
    }
    false
}

/// A point of `conv(P) + W` violating every chosen half-space strictly.
fn point_violating(p: &Piece, chosen: &[HalfSpace], w: &Wedge) -> Option<RVec> {
    let vs = p.vertices();
    if chosen.is_empty() {
        return Some(vs[0].clone());
    }
    let (k, d) = (vs.len(), w.dim());
    // variables: λ (k, >= 0), w (d, free), t
    let nv = k + d + 1;
    let t = k + d;
    let mut lp = LinearProgram::new(nv);
    for i in 0..k {
        lp.set_nonnegative(i);
    }
    let mut sum = vec![Rational::zero(); nv];
    sum[..k].iter_mut().for_each(|c| *c = Rational::one());
    lp.push(sum, Relation::Eq, Rational::one());
    for m in w.cone().rows() {
        let mut row = vec![Rational::zero(); nv];
        row[k..k + d].clone_from_slice(m.coords());
        lp.push(row, Relation::Ge, Rational::zero());
    }
    // normal·x >= offset violated strictly: normal·x + t <= offset
    for h in chosen {
        let mut row = vec![Rational::zero(); nv];
        for (i, v) in vs.iter().enumerate() {
            row[i] = h.normal.dot(v);
        }
        row[k..k + d].clone_from_slice(h.normal.coords());
        row[t] = Rational::one();
        lp.push(row, Relation::Le, h.offset.clone());
    }
    let mut cap = vec![Rational::zero(); nv];
    cap[t] = Rational::one();
    lp.push(cap.clone(), Relation::Le, Rational::one());
    match lp.maximize(&cap) {
        LpOutcome::Optimal { point, value } if value > Rational::zero() => {
            let mut x = RVec::new(point[k..k + d].to_vec());
            for (i, v) in vs.iter().enumerate() {
                x = &x + &v.scale(&point[i]);
            }
            Some(x)
        }
        _ => None,
    }
}
