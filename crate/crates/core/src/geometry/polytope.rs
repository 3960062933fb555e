//! Polyhedra of the form `conv(V) + C` for a finite point set `V` and a pointed cone `C`.

use num_traits::{Signed, Zero};

use super::cone::{for_each_subset, primitive_direction, ConeH};
use super::linalg::{nullspace, rank};
use super::lp::{LinearProgram, Relation};
use super::rational::{rat, Rational};
use super::vector::RVec;

/// `normal · x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: RVec,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn slack(&self, x: &RVec) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    pub fn holds(&self, x: &RVec) -> bool {
        !self.slack(x).is_negative()
    }

    fn normalized(normal: RVec, offset: Rational) -> Self {
        let scaled = primitive_direction(&normal);
        let lead = normal
            .coords()
            .iter()
            .zip(scaled.coords())
            .find(|(a, _)| !a.is_zero())
            .map(|(a, b)| b / a)
            .unwrap_or_else(|| rat(1));
        HalfSpace {
            normal: scaled,
            offset: offset * lead,
        }
    }
}

/// Exact membership `p ∈ conv(vertices) + cone` by LP over convex multipliers.
pub fn in_hull_plus_cone(p: &RVec, vertices: &[RVec], cone: &ConeH) -> bool {
    if vertices.iter().any(|v| cone.holds(&(p - v))) {
        return true;
    }
    if vertices.len() < 2 {
        return false;
    }
    let k = vertices.len();
    let mut lp = LinearProgram::new(k);
    for i in 0..k {
        lp.set_nonnegative(i);
    }
    lp.push(vec![rat(1); k], Relation::Eq, rat(1));
    for m in cone.rows() {
        let coeffs = vertices.iter().map(|v| m.dot(v)).collect();
        lp.push(coeffs, Relation::Le, m.dot(p));
    }
    lp.feasible_point().is_some()
}

/// Inequality description of `conv(vertices) + cone(rays)`; equalities of a
/// lower-dimensional polyhedron appear as opposite pairs.
///
/// Facets are found by enumeration: each one contains a vertex `a` and is
/// spanned by directions drawn from `{v - a} ∪ rays`.
pub fn facets(vertices: &[RVec], rays: &[RVec]) -> Vec<HalfSpace> {
    assert!(!vertices.is_empty(), "polyhedron needs a vertex");
    let dim = vertices[0].dim();
    let base = &vertices[0];
    let mut span: Vec<RVec> = vertices[1..].iter().map(|v| v - base).collect();
    span.extend(rays.iter().cloned());
    let r = rank(&span, dim);
    let complement = nullspace(&span, dim);

    let mut out = Vec::new();
    for e in &complement {
        out.push(HalfSpace::normalized(e.clone(), e.dot(base)));
        let ne = -e;
        out.push(HalfSpace::normalized(ne.clone(), ne.dot(base)));
    }
    if r > 0 {
        for a in vertices {
            let mut dirs: Vec<RVec> = vertices
                .iter()
                .filter(|v| *v != a)
                .map(|v| v - a)
                .collect();
            dirs.extend(rays.iter().cloned());
            for_each_subset(dirs.len(), r - 1, &mut |idx| {
                let mut system: Vec<RVec> = idx.iter().map(|&i| dirs[i].clone()).collect();
                system.extend(complement.iter().cloned());
                let ker = nullspace(&system, dim);
                if ker.len() != 1 {
                    return;
                }
                for h in [ker[0].clone(), -&ker[0]] {
                    let b = h.dot(a);
                    let valid = rays.iter().all(|ray| !h.dot(ray).is_negative())
                        && vertices.iter().all(|v| h.dot(v) >= b);
                    if valid {
                        out.push(HalfSpace::normalized(h, b));
                    }
                }
            });
        }
    }
    out.sort();
    out.dedup();
    out
}
