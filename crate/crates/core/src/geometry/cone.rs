use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{nullspace, rank};
use super::lp::{LinearProgram, Relation};
use super::rational::{rat, Rational};
use super::vector::RVec;
use crate::error::{Error, Result};

/// Polyhedral cone `{x : m · x >= 0 for every row m}`. No rows means the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeH {
    dim: usize,
    rows: Vec<RVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pointedness {
    Pointed,
    /// Nonzero `u` with `u` and `-u` both in the cone.
    NotPointed(RVec),
}

impl ConeH {
    pub fn new(dim: usize, rows: Vec<RVec>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("cone dimension must be positive".into()));
        }
        for r in &rows {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.dim(),
                });
            }
        }
        Ok(ConeH { dim, rows })
    }

    pub fn orthant(dim: usize) -> Self {
        ConeH {
            dim,
            rows: (0..dim).map(|i| RVec::unit(dim, i)).collect(),
        }
    }

    /// `{0}`, written as `x_i >= 0` and `-x_i >= 0`.
    pub fn zero(dim: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let e = RVec::unit(dim, i);
            rows.push(-&e);
            rows.push(e);
        }
        ConeH { dim, rows }
    }

    pub fn whole_space(dim: usize) -> Self {
        ConeH {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[RVec] {
        &self.rows
    }

    pub fn contains(&self, x: &RVec) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.holds(x))
    }

    /// Membership without the dimension check; panics on mismatch.
    pub fn holds(&self, x: &RVec) -> bool {
        self.rows.iter().all(|m| !m.dot(x).is_negative())
    }

    /// Every row strictly positive at `x`.
    pub fn strictly_interior(&self, x: &RVec) -> bool {
        self.rows.iter().all(|m| m.dot(x).is_positive())
    }

    pub fn check_dim(&self, x: &RVec) -> Result<()> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            })
        }
    }

    /// The cone meets its negation only in 0 iff the row matrix has full column rank.
    pub fn pointedness(&self) -> Pointedness {
        if rank(&self.rows, self.dim) == self.dim {
            return Pointedness::Pointed;
        }
        let kernel = nullspace(&self.rows, self.dim);
        Pointedness::NotPointed(kernel[0].clone())
    }

    pub fn is_pointed(&self) -> bool {
        matches!(self.pointedness(), Pointedness::Pointed)
    }

    /// A strictly interior point, if the cone has nonempty interior.
    /// The orthant yields the all-ones vector.
    pub fn interior_point(&self) -> Option<RVec> {
        let ones = RVec::splat(self.dim, rat(1));
        if self.strictly_interior(&ones) {
            return Some(ones);
        }
        let mut lp = LinearProgram::new(self.dim);
        for m in &self.rows {
            lp.push(m.coords().to_vec(), Relation::Ge, rat(1));
        }
        lp.feasible_point().map(RVec::new)
    }

    /// Extreme rays of a pointed cone: one-dimensional solutions of `dim - 1`
    /// independent tight rows that satisfy every row.
    pub fn extreme_rays(&self) -> Vec<RVec> {
        let mut rays: Vec<RVec> = Vec::new();
        let k = self.dim - 1;
        let push = |r: RVec, rays: &mut Vec<RVec>| {
            let r = primitive_direction(&r);
            if !rays.contains(&r) {
                rays.push(r);
            }
        };
        for_each_subset(self.rows.len(), k, &mut |idx| {
            let tight: Vec<RVec> = idx.iter().map(|&i| self.rows[i].clone()).collect();
            let ker = nullspace(&tight, self.dim);
            if ker.len() != 1 {
                return;
            }
            for cand in [ker[0].clone(), -&ker[0]] {
                if self.holds(&cand) {
                    push(cand, &mut rays);
                }
            }
        });
        rays.sort();
        rays
    }
}

/// Scales a nonzero vector so its first nonzero coordinate has absolute value 1.
pub fn primitive_direction(v: &RVec) -> RVec {
    match v.coords().iter().find(|c| !c.is_zero()) {
        Some(lead) => v.scale(&(Rational::from_integer(1.into()) / lead.abs())),
        None => v.clone(),
    }
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(i + 1, n, k, acc, f);
            acc.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

pub fn cone_contains(c: &ConeH, x: &RVec) -> Result<bool> {
    c.contains(x)
}

pub fn cone_pointed(c: &ConeH) -> Pointedness {
    c.pointedness()
}
