//! Fuzzy W-nondecreasing step functions with sup-min addition.
//!
//! A [`StepFuzzy`] is stored by its level sets: `f(x)` is the largest `α_i`
//! with `x ∈ C_i`, where the alphas decrease and the cuts `C_i` grow.

pub mod instance;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{format_rational, Rational, RVec};
use crate::sets::{convex_hull, intersect, is_n_convex_set, msum, set_eq, Carrier, SetSpec, UpperSet};
use crate::wedge::Wedge;

pub use instance::{fuzzy_arch_family, make_fuzzy_cornet, no_archimedean_suite, FuzzyCornet};

#[derive(Clone, Debug)]
pub struct Level {
    pub alpha: Rational,
    pub cut: UpperSet,
}

#[derive(Clone)]
pub struct StepFuzzy {
    p: Rational,
    levels: Vec<Level>,
}

fn merged(levels: Vec<Level>) -> Vec<Level> {
    let mut out: Vec<Level> = Vec::with_capacity(levels.len());
    for l in levels {
        match out.last() {
            Some(prev) if set_eq(&prev.cut, &l.cut) => {}
            _ => out.push(l),
        }
    }
    out
}

impl StepFuzzy {
    /// Validates the level structure and merges equal adjacent cuts.
    pub fn new(p: Rational, levels: Vec<Level>) -> Result<Self> {
        if !p.is_positive() || p > Rational::one() {
            return Err(Error::InvalidInput(format!("p = {} is not in (0, 1]", format_rational(&p))));
        }
        let Some(first) = levels.first() else {
            return Err(Error::InvalidInput("a fuzzy element needs at least one level".into()));
        };
        for l in &levels {
            if !l.alpha.is_positive() || l.alpha > Rational::one() {
                return Err(Error::InvalidInput(format!(
                    "level {} is not in (0, 1]",
                    format_rational(&l.alpha)
                )));
            }
            if l.cut.carrier() != Carrier::Rational {
                return Err(Error::CarrierMismatch);
            }
            if *l.cut.wedge() != *first.cut.wedge() {
                return Err(Error::WedgeMismatch);
            }
        }
        for pair in levels.windows(2) {
            if pair[0].alpha <= pair[1].alpha {
                return Err(Error::InvalidInput("levels must be strictly decreasing".into()));
            }
            if !pair[0].cut.le(&pair[1].cut) {
                return Err(Error::InvalidInput(format!(
                    "cut at level {} is not contained in the cut at level {}",
                    format_rational(&pair[0].alpha),
                    format_rational(&pair[1].alpha)
                )));
            }
        }
        if first.alpha < p {
            return Err(Error::SupBelowP {
                sup: format_rational(&first.alpha),
                p: format_rational(&p),
            });
        }
        Ok(StepFuzzy {
            p,
            levels: merged(levels),
        })
    }

    fn from_trusted(p: Rational, levels: Vec<Level>) -> Self {
        StepFuzzy {
            p,
            levels: merged(levels),
        }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn sup(&self) -> &Rational {
        &self.levels[0].alpha
    }

    pub fn wedge(&self) -> &Wedge {
        self.levels[0].cut.wedge()
    }

    pub fn value(&self, x: &RVec) -> Rational {
        self.levels
            .iter()
            .find(|l| l.cut.contains_point(x))
            .map(|l| l.alpha.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// `{x : f(x) >= alpha}`, or `None` when empty.
    pub fn level_cut(&self, alpha: &Rational) -> Option<&UpperSet> {
        self.levels.iter().rev().find(|l| l.alpha >= *alpha).map(|l| &l.cut)
    }

    pub fn spec(&self) -> FuzzySpec {
        FuzzySpec {
            p: Some(self.p.clone()),
            levels: self
                .levels
                .iter()
                .map(|l| LevelSpec {
                    alpha: l.alpha.clone(),
                    set: l.cut.spec(),
                })
                .collect(),
        }
    }
}

impl PartialEq for StepFuzzy {
    fn eq(&self, other: &Self) -> bool {
        fuzzy_eq(self, other)
    }
}

impl fmt::Debug for StepFuzzy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for StepFuzzy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.levels.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} on {}", format_rational(&l.alpha), l.cut)?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    #[serde(with = "crate::geometry::rational")]
    pub alpha: Rational,
    pub set: SetSpec,
}

/// Wire form: `{"p": "1", "levels": [{"alpha": "1", "set": {...}}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzySpec {
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::geometry::rational::option"
    )]
    pub p: Option<Rational>,
    pub levels: Vec<LevelSpec>,
}

impl FuzzySpec {
    /// `p` defaults to the instance value and must agree with it when given.
    pub fn build(&self, wedge: Arc<Wedge>, p: &Rational) -> Result<StepFuzzy> {
        if let Some(q) = &self.p {
            if q != p {
                return Err(Error::PMismatch {
                    left: format_rational(q),
                    right: format_rational(p),
                });
            }
        }
        let levels = self
            .levels
            .iter()
            .map(|l| {
                Ok(Level {
                    alpha: l.alpha.clone(),
                    cut: l.set.build(wedge.clone(), Carrier::Rational)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StepFuzzy::new(p.clone(), levels)
    }
}

fn same_p(f: &StepFuzzy, g: &StepFuzzy) -> Result<()> {
    if f.p != g.p {
        return Err(Error::PMismatch {
            left: format_rational(&f.p),
            right: format_rational(&g.p),
        });
    }
    if *f.wedge() != *g.wedge() {
        return Err(Error::WedgeMismatch);
    }
    Ok(())
}

/// Level values of both operands up to `top`, decreasing.
fn joint_alphas(f: &StepFuzzy, g: &StepFuzzy, top: &Rational) -> Vec<Rational> {
    let mut alphas: Vec<Rational> = f
        .levels
        .iter()
        .chain(&g.levels)
        .map(|l| l.alpha.clone())
        .filter(|a| a <= top)
        .collect();
    alphas.sort_by(|a, b| b.cmp(a));
    alphas.dedup();
    alphas
}

/// `(f ⊕ g)(x) = sup_{u+v=x} min(f(u), g(v))`, computed levelwise:
/// `{f ⊕ g >= α} = {f >= α} + {g >= α}`.
pub fn oplus(f: &StepFuzzy, g: &StepFuzzy) -> Result<StepFuzzy> {
    same_p(f, g)?;
    let top = f.sup().min(g.sup()).clone();
    let levels = joint_alphas(f, g, &top)
        .into_iter()
        .map(|a| {
            let cut = msum(f.level_cut(&a).expect("below sup"), g.level_cut(&a).expect("below sup"))?;
            Ok(Level { alpha: a, cut })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StepFuzzy::from_trusted(f.p.clone(), levels))
}

/// `(n ⊙ f)(x) = f(x / n)`.
pub fn odot(n: u64, f: &StepFuzzy) -> Result<StepFuzzy> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    Ok(StepFuzzy {
        p: f.p.clone(),
        levels: f
            .levels
            .iter()
            .map(|l| Level {
                alpha: l.alpha.clone(),
                cut: l.cut.scaled(n),
            })
            .collect(),
    })
}

/// Pointwise order.
pub fn leq_fuzzy(f: &StepFuzzy, g: &StepFuzzy) -> Result<bool> {
    same_p(f, g)?;
    Ok(leq_unchecked(f, g))
}

pub(crate) fn leq_unchecked(f: &StepFuzzy, g: &StepFuzzy) -> bool {
    f.levels
        .iter()
        .all(|l| g.level_cut(&l.alpha).is_some_and(|c| l.cut.le(c)))
}

pub fn fuzzy_eq(f: &StepFuzzy, g: &StepFuzzy) -> bool {
    f.p == g.p
        && f.levels.len() == g.levels.len()
        && f.levels
            .iter()
            .zip(&g.levels)
            .all(|(a, b)| a.alpha == b.alpha && set_eq(&a.cut, &b.cut))
}

/// `n`-quasiconcavity via the level sets: every cut must be n-convex.
pub fn is_n_quasiconcave(f: &StepFuzzy, n: u64, cap: u128) -> Result<bool> {
    for l in &f.levels {
        if !is_n_convex_set(&l.cut, n, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indicator of `A` in the cornet with parameter `p`.
pub fn chi(a: UpperSet, p: Rational) -> Result<StepFuzzy> {
    StepFuzzy::new(
        p,
        vec![Level {
            alpha: Rational::one(),
            cut: a,
        }],
    )
}

/// `Φ(A) = χ_A`.
pub fn chi_embed(a: UpperSet) -> Result<StepFuzzy> {
    chi(a, Rational::one())
}

pub fn support(f: &StepFuzzy) -> &UpperSet {
    &f.levels.last().expect("nonempty").cut
}

/// Pointwise minimum, levelwise intersection.
pub fn fuzzy_inf(fs: &[StepFuzzy]) -> Result<StepFuzzy> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::InvalidInput("infimum of an empty list".into()))?;
    let mut acc = first.clone();
    for g in rest {
        same_p(&acc, g)?;
        let top = acc.sup().min(g.sup()).clone();
        let mut levels = Vec::new();
        for a in joint_alphas(&acc, g, &top) {
            let (x, y) = (acc.level_cut(&a).expect("below sup"), g.level_cut(&a).expect("below sup"));
            match intersect(x, y) {
                Ok(cut) => levels.push(Level { alpha: a, cut }),
                Err(Error::InvalidInput(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let sup = levels.first().map(|l| l.alpha.clone()).unwrap_or_else(Rational::zero);
        if sup < acc.p {
            return Err(Error::SupBelowP {
                sup: format_rational(&sup),
                p: format_rational(&acc.p),
            });
        }
        acc = StepFuzzy::from_trusted(acc.p.clone(), levels);
    }
    Ok(acc)
}

/// Smallest quasiconcave majorant: the convex hull of every cut.
pub fn fuzzy_hull(f: &StepFuzzy) -> Result<StepFuzzy> {
    let levels = f
        .levels
        .iter()
        .map(|l| {
            Ok(Level {
                alpha: l.alpha.clone(),
                cut: convex_hull(&l.cut)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StepFuzzy::from_trusted(f.p.clone(), levels))
}

#[cfg(test)]
mod tests;
