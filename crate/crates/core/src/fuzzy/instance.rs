use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{chi, fuzzy_eq, fuzzy_hull, fuzzy_inf, leq_unchecked, oplus, odot, support, Level, StepFuzzy};
use crate::cornet::report::Case;
use crate::cornet::{ArchFamily, CaseRng, Cornet, LawReport, SuiteConfig, Verdict};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, ratio, Rational, RVec};
use crate::sample::SamplerConfig;
use crate::sets::instance::{set_archimedean, set_bounded_n0};
use crate::sets::{set_arch_family, Carrier, Repr, SetCornet, UpperSet};
use crate::wedge::Wedge;

pub const MAX_LEVELS: usize = 3;

pub struct FuzzyCornet {
    sets: SetCornet,
    p: Rational,
}

pub fn make_fuzzy_cornet(w: Wedge, p: Rational) -> Result<FuzzyCornet> {
    FuzzyCornet::new(Arc::new(w), p, Repr::Discrete, SamplerConfig::default())
}

impl FuzzyCornet {
    pub fn new(wedge: Arc<Wedge>, p: Rational, repr: Repr, sampler: SamplerConfig) -> Result<Self> {
        if p <= Rational::zero() || p > Rational::one() {
            return Err(Error::InvalidInput(format!("p = {} is not in (0, 1]", format_rational(&p))));
        }
        Ok(FuzzyCornet {
            sets: SetCornet::new(wedge, Carrier::Rational, repr, sampler),
            p,
        })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn sets(&self) -> &SetCornet {
        &self.sets
    }

    pub fn wedge_arc(&self) -> Arc<Wedge> {
        self.sets.wedge_arc()
    }

    pub fn dim(&self) -> usize {
        self.sets.dim()
    }

    /// `χ_A` in this cornet.
    pub fn indicator(&self, a: UpperSet) -> StepFuzzy {
        chi(a, self.p.clone()).expect("level 1 is at least p")
    }

    /// The constant `p` on `W`: below every Archimedean candidate when `p < 1`.
    pub fn p_unit(&self) -> StepFuzzy {
        StepFuzzy::new(
            self.p.clone(),
            vec![Level {
                alpha: self.p.clone(),
                cut: self.sets.zero(),
            }],
        )
        .expect("p is a valid level")
    }

    /// `(x, y, z)` with `y` quasiconcave and `x <= y` pointwise, so every
    /// hypothesis of the cancellation theorem and its premise hold.
    pub fn cancellation_triple(&self, rng: &mut CaseRng) -> (StepFuzzy, StepFuzzy, StepFuzzy) {
        let y = fuzzy_hull(&self.sample(rng)).expect("rational cuts");
        let z = self.sample(rng);
        let w = self.wedge_arc();
        let discrete = |pts: Vec<RVec>| UpperSet::discrete(w.clone(), Carrier::Rational, pts).expect("points fit");
        let x = match rng.gen_range(0..3) {
            0 => {
                let shift = self.sets.wedge().sample_member(self.sets.sampler(), rng);
                oplus(&y, &self.indicator(discrete(vec![shift]))).expect("same p")
            }
            1 => {
                let top = &y.levels()[0];
                let pts = (0..rng.gen_range(1..=3)).map(|_| self.sets.sample_point_in(&top.cut, rng)).collect();
                StepFuzzy::new(self.p.clone(), vec![Level { alpha: top.alpha.clone(), cut: discrete(pts) }])
                    .expect("level of y")
            }
            _ => {
                let mut pts = Vec::new();
                let mut levels = Vec::new();
                for l in y.levels() {
                    for _ in 0..rng.gen_range(1..=2) {
                        pts.push(self.sets.sample_point_in(&l.cut, rng));
                    }
                    levels.push(Level { alpha: l.alpha.clone(), cut: discrete(pts.clone()) });
                }
                StepFuzzy::new(self.p.clone(), levels).expect("nested by construction")
            }
        };
        (x, y, z)
    }

    fn alphas(&self, rng: &mut CaseRng, force_one: bool) -> Vec<Rational> {
        let grid = [ratio(1, 1), ratio(3, 4), ratio(1, 2), ratio(1, 4)];
        let tops: Vec<&Rational> = grid.iter().filter(|a| **a >= self.p).collect();
        let top = if force_one {
            Rational::one()
        } else {
            (*tops.choose(rng).expect("1 >= p")).clone()
        };
        let count = rng.gen_range(1..=MAX_LEVELS);
        let mut lower: Vec<Rational> = grid.iter().filter(|a| **a < top).cloned().collect();
        lower.shuffle(rng);
        lower.truncate(count - 1);
        lower.sort_by(|a, b| b.cmp(a));
        let mut out = vec![top];
        out.extend(lower);
        out
    }

    fn sample_levels(&self, rng: &mut CaseRng, with_origin: bool) -> StepFuzzy {
        let alphas = self.alphas(rng, with_origin);
        let mut points = self.sets.sample_points(rng);
        if with_origin {
            points.push(RVec::zeros(self.dim()));
        }
        let mut levels = Vec::with_capacity(alphas.len());
        for (i, alpha) in alphas.into_iter().enumerate() {
            if i > 0 {
                let extra = rng.gen_range(1..=2);
                points.extend(self.sets.sample_points(rng).into_iter().take(extra));
            }
            levels.push(Level {
                alpha,
                cut: self.sets.build(points.clone()),
            });
        }
        StepFuzzy::new(self.p.clone(), levels).expect("sampled levels are nested")
    }
}

impl Cornet for FuzzyCornet {
    type Elem = StepFuzzy;

    fn name(&self) -> String {
        format!("fuzzyQ(d={},p={})", self.dim(), format_rational(&self.p))
    }

    fn zero(&self) -> StepFuzzy {
        self.indicator(self.sets.zero())
    }

    fn add(&self, x: &StepFuzzy, y: &StepFuzzy) -> StepFuzzy {
        oplus(x, y).expect("operands share the instance p")
    }

    fn star(&self, n: u64, x: &StepFuzzy) -> StepFuzzy {
        odot(n, x).expect("n >= 1")
    }

    fn leq(&self, x: &StepFuzzy, y: &StepFuzzy) -> bool {
        leq_unchecked(x, y)
    }

    fn equal(&self, x: &StepFuzzy, y: &StepFuzzy) -> bool {
        fuzzy_eq(x, y)
    }

    fn sample(&self, rng: &mut CaseRng) -> StepFuzzy {
        self.sample_levels(rng, false)
    }

    fn encode(&self, x: &StepFuzzy) -> serde_json::Value {
        serde_json::to_value(x.spec()).expect("fuzzy elements serialize")
    }

    fn sample_nonnegative(&self, rng: &mut CaseRng) -> Option<StepFuzzy> {
        Some(self.sample_levels(rng, true))
    }

    fn finite_inf(&self, xs: &[StepFuzzy]) -> Option<StepFuzzy> {
        if !self.sets.wedge().is_orthant() {
            return None;
        }
        fuzzy_inf(xs).ok()
    }

    fn hull(&self, x: &StepFuzzy) -> Option<StepFuzzy> {
        fuzzy_hull(x).ok()
    }

    fn closure(&self, x: &StepFuzzy) -> Option<StepFuzzy> {
        Some(x.clone())
    }

    /// With `p = 1` the question reduces to the level-1 cuts; with `p < 1`
    /// the probe `p χ_W` keeps `(u ⊕ n ⊙ x)(0) <= p < 1` for all `n`.
    fn archimedean_exact(&self, x: &StepFuzzy, probes: &[StepFuzzy]) -> Option<Verdict> {
        if !self.p.is_one() {
            return Some(Verdict::AnalyticallyRefuted {
                reason: format!(
                    "p = {} < 1: the probe p·χ_W keeps the value at 0 at most p",
                    format_rational(&self.p)
                ),
            });
        }
        let one = Rational::one();
        let Some(top) = x.level_cut(&one) else {
            return Some(Verdict::AnalyticallyRefuted {
                reason: "x never reaches the value 1".into(),
            });
        };
        let cuts: Vec<UpperSet> = probes.iter().filter_map(|u| u.level_cut(&one).cloned()).collect();
        Some(set_archimedean(top, &cuts))
    }

    /// For `a = χ_{q+W}`: `x ⪯ n ⊙ a` iff the support of `x` lies in `n q + W`.
    fn bounded_exact(&self, x: &StepFuzzy, a: &StepFuzzy) -> Option<Option<u64>> {
        if a.levels().len() != 1 || !a.sup().is_one() {
            return None;
        }
        set_bounded_n0(support(x), &a.levels()[0].cut).map(Some)
    }
}

/// `χ_{{-ε d}+W}` with witness `ε ↦ ε / 2`; only for `p = 1`.
pub fn fuzzy_arch_family(inst: &FuzzyCornet, epsilons: &[Rational]) -> Result<ArchFamily<StepFuzzy>> {
    if !inst.p.is_one() {
        return Err(Error::InvalidInput(format!(
            "no Archimedean elements exist for p = {} < 1",
            format_rational(&inst.p)
        )));
    }
    let sets = set_arch_family(&inst.sets, epsilons)?;
    let lift = |a: &UpperSet| chi(a.clone(), Rational::one()).expect("level 1");
    let members = sets.members().iter().map(|(l, a)| (l.clone(), lift(a))).collect();
    let sample_fam = sets.clone();
    let (wf, mf) = (sets.clone(), sets);
    let single = |f: &StepFuzzy| (f.levels().len() == 1 && f.sup().is_one()).then(|| f.levels()[0].cut.clone());
    let fam = ArchFamily::new(
        inst,
        members,
        move |f: &StepFuzzy| single(f).and_then(|c| wf.witness(&c)).map(|c| lift(&c)),
        move |f: &StepFuzzy| single(f).is_some_and(|c| mf.contains(&c)),
    )?;
    Ok(fam.with_sampler(move |rng: &mut CaseRng| lift(&sample_fam.sample_member(rng))))
}

/// With `p < 1` every sampled element must be refuted analytically, and the
/// probe `p χ_W` must keep `(u ⊕ n ⊙ f)(0) <= p` for all `n <= n_max`.
pub fn no_archimedean_suite(inst: &FuzzyCornet, cfg: &SuiteConfig) -> LawReport {
    let probe = inst.p_unit();
    let origin = RVec::zeros(inst.dim());
    LawReport::run("archimedean.none_below_one", cfg, |_, rng| {
        let f = inst.sample(rng);
        let analytic = inst.archimedean_exact(&f, std::slice::from_ref(&probe));
        let refuted = matches!(analytic, Some(Verdict::AnalyticallyRefuted { .. }));
        let capped = (1..=cfg.n_max).all(|n| inst.add(&probe, &inst.star(n, &f)).value(&origin) <= inst.p);
        if refuted && capped && !inst.p.is_one() {
            Case::Pass
        } else {
            Case::Fail(serde_json::json!({ "f": inst.encode(&f), "refuted": refuted, "capped": capped }))
        }
    })
}
