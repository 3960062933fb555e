//! Exact dense simplex over the rationals (two-phase, Bland's rule).
//!
//! Bland's rule guarantees termination without any tolerance, so every answer is
//! exact. Problems in this crate have at most a few dozen columns and rows.

use num_traits::{Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }
}

/// `coeffs · x (relation) rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: Vec<Rational>, value: Rational },
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    nonneg: Vec<bool>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    /// All variables free.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            nonneg: vec![false; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn set_nonnegative(&mut self, var: usize) {
        self.nonneg[var] = true;
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        let mut sf = StandardForm::build(self);
        if !sf.phase_one() {
            return None;
        }
        Some(sf.extract())
    }

    pub fn maximize(&self, objective: &[Rational]) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars, "objective width");
        let mut sf = StandardForm::build(self);
        if !sf.phase_one() {
            return LpOutcome::Infeasible;
        }
        let mut cost = vec![Rational::zero(); sf.ncols];
        for (j, c) in objective.iter().enumerate() {
            let (pos, neg) = sf.var_cols[j];
            cost[pos] = c.clone();
            if let Some(neg) = neg {
                cost[neg] = -c;
            }
        }
        let allowed: Vec<bool> = (0..sf.ncols).map(|j| !sf.artificial[j]).collect();
        match sf.tableau.optimize(&cost, &allowed) {
            Ok(value) => LpOutcome::Optimal {
                point: sf.extract(),
                value,
            },
            Err(Unbounded) => LpOutcome::Unbounded,
        }
    }

    pub fn minimize(&self, objective: &[Rational]) -> LpOutcome {
        let neg: Vec<Rational> = objective.iter().map(|c| -c).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { point, value } => LpOutcome::Optimal {
                point,
                value: -value,
            },
            other => other,
        }
    }
}

struct Unbounded;

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · x` from the current basis; returns the optimal value.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Result<Rational, Unbounded> {
        let n = self.ncols;
        let mut reduced: Vec<Rational> = cost.to_vec();
        reduced.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            let cb = cost[b].clone();
            for (v, a) in reduced.iter_mut().zip(&self.rows[i]) {
                *v -= &cb * a;
            }
        }
        loop {
            let Some(enter) = (0..n).find(|&j| allowed[j] && reduced[j].is_positive()) else {
                return Ok(-reduced[n].clone());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[n] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(Unbounded);
            };
            self.pivot(r, enter);
            let f = reduced[enter].clone();
            for (v, a) in reduced.iter_mut().zip(&self.rows[r]) {
                if !a.is_zero() {
                    *v -= &f * a;
                }
            }
        }
    }
}

struct StandardForm {
    tableau: Tableau,
    ncols: usize,
    var_cols: Vec<(usize, Option<usize>)>,
    artificial: Vec<bool>,
}

impl StandardForm {
    fn build(lp: &LinearProgram) -> Self {
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut ncols = 0;
        for &nn in &lp.nonneg {
            if nn {
                var_cols.push((ncols, None));
                ncols += 1;
            } else {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
        let structural = ncols;
        // Normalize to nonnegative right-hand sides and count auxiliary columns.
        let mut normalized = Vec::with_capacity(lp.constraints.len());
        for c in &lp.constraints {
            if c.rhs.is_negative() {
                normalized.push((
                    c.coeffs.iter().map(|a| -a).collect::<Vec<_>>(),
                    c.relation.flipped(),
                    -&c.rhs,
                ));
            } else {
                normalized.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
            }
        }
        let mut aux = 0;
        for (_, rel, _) in &normalized {
            aux += match rel {
                Relation::Le => 1,
                Relation::Ge => 2,
                Relation::Eq => 1,
            };
        }
        ncols += aux;
        let mut artificial = vec![false; ncols];
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let mut next = structural;
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![Rational::zero(); ncols + 1];
            for (j, a) in coeffs.iter().enumerate() {
                let (pos, neg) = var_cols[j];
                row[pos] = a.clone();
                if let Some(neg) = neg {
                    row[neg] = -a;
                }
            }
            row[ncols] = rhs;
            match rel {
                Relation::Le => {
                    row[next] = Rational::from_integer(1.into());
                    basis.push(next);
                    next += 1;
                }
                Relation::Ge => {
                    row[next] = Rational::from_integer((-1).into());
                    row[next + 1] = Rational::from_integer(1.into());
                    artificial[next + 1] = true;
                    basis.push(next + 1);
                    next += 2;
                }
                Relation::Eq => {
                    row[next] = Rational::from_integer(1.into());
                    artificial[next] = true;
                    basis.push(next);
                    next += 1;
                }
            }
            rows.push(row);
        }
        StandardForm {
            tableau: Tableau { rows, basis, ncols },
            ncols,
            var_cols,
            artificial,
        }
    }

    /// Drives the artificial variables to zero; false if the system is infeasible.
    fn phase_one(&mut self) -> bool {
        if self.artificial.iter().any(|&a| a) {
            let cost: Vec<Rational> = self
                .artificial
                .iter()
                .map(|&a| {
                    if a {
                        Rational::from_integer((-1).into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            let allowed = vec![true; self.ncols];
            let value = match self.tableau.optimize(&cost, &allowed) {
                Ok(v) => v,
                // Phase one is bounded above by zero.
                Err(Unbounded) => unreachable!("phase one objective is bounded"),
            };
            if value.is_negative() {
                return false;
            }
            self.evict_artificials();
        }
        true
    }

    fn evict_artificials(&mut self) {
        let mut r = 0;
        while r < self.tableau.rows.len() {
            if self.artificial[self.tableau.basis[r]] {
                let col = (0..self.ncols)
                    .find(|&j| !self.artificial[j] && !self.tableau.rows[r][j].is_zero());
                match col {
                    Some(j) => {
                        self.tableau.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        // Redundant equality row.
                        self.tableau.rows.remove(r);
                        self.tableau.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }

    fn extract(&self) -> Vec<Rational> {
        let mut values = vec![Rational::zero(); self.ncols];
        for (i, &b) in self.tableau.basis.iter().enumerate() {
            values[b] = self.tableau.rows[i][self.ncols].clone();
        }
        self.var_cols
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &values[pos] - &values[neg],
                None => values[pos].clone(),
            })
            .collect()
    }
}

/// Affine inequality `coeffs · x <= bound` over free variables.
#[derive(Clone, Debug)]
pub struct AffineInequality {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
}

/// Exact feasibility of a system of affine inequalities; returns a witness point.
///
/// An empty system is feasible with the zero witness.
pub fn lp_feasible(num_vars: usize, constraints: &[AffineInequality]) -> Option<Vec<Rational>> {
    let mut lp = LinearProgram::new(num_vars);
    for c in constraints {
        lp.push(c.coeffs.clone(), Relation::Le, c.bound.clone());
    }
    lp.feasible_point()
}
