use std::sync::Arc;

use super::*;
use crate::cornet::{Cornet, Verdict};
use crate::geometry::{rat, ratio};
use crate::sets::{phi_embed, Carrier};

fn o1() -> Arc<Wedge> {
    Arc::new(Wedge::orthant(1))
}

fn ray(w: &Arc<Wedge>, a: i64) -> UpperSet {
    phi_embed(w.clone(), RVec::from_ints(&[a])).unwrap()
}

fn step(w: &Arc<Wedge>, levels: &[(Rational, i64)]) -> StepFuzzy {
    StepFuzzy::new(
        rat(1),
        levels.iter().map(|(a, s)| Level { alpha: a.clone(), cut: ray(w, *s) }).collect(),
    )
    .unwrap()
}

#[test]
fn oplus_examples() {
    let w = o1();
    let f = step(&w, &[(rat(1), 2)]);
    let g = step(&w, &[(rat(1), 1), (ratio(1, 2), 0)]);
    let h = oplus(&f, &g).unwrap();
    assert_eq!(h, step(&w, &[(rat(1), 3), (ratio(1, 2), 2)]));
    let unit = chi_embed(UpperSet::unit(w.clone(), Carrier::Rational)).unwrap();
    assert_eq!(oplus(&g, &unit).unwrap(), g);
    let (a, b) = (ray(&w, 1), ray(&w, -3));
    assert_eq!(
        oplus(&chi_embed(a.clone()).unwrap(), &chi_embed(b.clone()).unwrap()).unwrap(),
        chi_embed(msum(&a, &b).unwrap()).unwrap()
    );
    for x in -8..=8 {
        let x = RVec::from_ints(&[x]);
        let brute = (-8..=8)
            .map(|u| {
                let u = RVec::from_ints(&[u]);
                f.value(&u).min(g.value(&(&x - &u)))
            })
            .max()
            .unwrap();
        assert_eq!(h.value(&x), brute, "at {x}");
    }
}

#[test]
fn odot_examples() {
    let w = o1();
    let f = step(&w, &[(rat(1), 1), (ratio(1, 2), 0)]);
    assert_eq!(odot(1, &f).unwrap(), f);
    let unit = chi_embed(UpperSet::unit(w.clone(), Carrier::Rational)).unwrap();
    assert_eq!(odot(5, &unit).unwrap(), unit);
    assert_eq!(odot(2, &step(&w, &[(rat(1), 1)])).unwrap(), step(&w, &[(rat(1), 2)]));
}

#[test]
fn order_examples() {
    let w = o1();
    assert!(leq_fuzzy(&step(&w, &[(rat(1), 1)]), &step(&w, &[(rat(1), 0)])).unwrap());
    let f = step(&w, &[(rat(1), 3), (ratio(1, 2), 2)]);
    let g = step(&w, &[(rat(1), 1), (ratio(1, 2), 0)]);
    assert!(leq_fuzzy(&f, &f).unwrap());
    assert!(leq_fuzzy(&f, &g).unwrap());
    assert!(!leq_fuzzy(&g, &f).unwrap());
    for x in -8..=8 {
        let x = RVec::from_ints(&[x]);
        assert!(f.value(&x) <= g.value(&x));
    }
    let half = StepFuzzy::new(ratio(1, 2), vec![Level { alpha: rat(1), cut: ray(&w, 0) }]).unwrap();
    assert!(matches!(leq_fuzzy(&f, &half), Err(Error::PMismatch { .. })));
}

#[test]
fn level_cut_and_support() {
    let w = o1();
    let a = ray(&w, 2);
    let ca = chi_embed(a.clone()).unwrap();
    assert_eq!(ca.level_cut(&rat(1)), Some(&a));
    assert_eq!(ca.level_cut(&ratio(1, 2)), Some(&a));
    assert_eq!(support(&ca), &a);
    let f = step(&w, &[(rat(1), 3), (ratio(1, 2), 1)]);
    assert_eq!(f.level_cut(&ratio(3, 4)), Some(&ray(&w, 3)));
    assert_eq!(support(&f), &ray(&w, 1));
    let low = StepFuzzy::new(ratio(1, 4), vec![Level { alpha: ratio(1, 2), cut: a }]).unwrap();
    assert_eq!(low.level_cut(&ratio(3, 4)), None);
}

#[test]
fn construction_rules() {
    let w = o1();
    let bad_order = StepFuzzy::new(
        rat(1),
        vec![Level { alpha: rat(1), cut: ray(&w, 0) }, Level { alpha: ratio(1, 2), cut: ray(&w, 1) }],
    );
    assert!(bad_order.is_err());
    let below = StepFuzzy::new(rat(1), vec![Level { alpha: ratio(1, 2), cut: ray(&w, 0) }]);
    assert!(matches!(below, Err(Error::SupBelowP { .. })));
    let merged = StepFuzzy::new(
        rat(1),
        vec![Level { alpha: rat(1), cut: ray(&w, 0) }, Level { alpha: ratio(1, 2), cut: ray(&w, 0) }],
    )
    .unwrap();
    assert_eq!(merged.levels().len(), 1);
}

#[test]
fn quasiconcavity_examples() {
    let w = o1();
    let unit = chi_embed(UpperSet::unit(w.clone(), Carrier::Rational)).unwrap();
    assert!(is_n_quasiconcave(&unit, 3, 56).unwrap());
    let z = Arc::new(Wedge::zero(1));
    let gap = UpperSet::discrete(z.clone(), Carrier::Rational, vec![RVec::from_ints(&[0]), RVec::from_ints(&[2])]).unwrap();
    let f = chi_embed(gap).unwrap();
    assert!(!is_n_quasiconcave(&f, 2, 56).unwrap());
    assert_eq!(f.value(&RVec::from_ints(&[1])), rat(0));
    let q2 = Arc::new(Wedge::orthant(2));
    let p1 = UpperSet::polytopic(q2.clone(), vec![RVec::from_ints(&[0, 2]), RVec::from_ints(&[2, 0])]).unwrap();
    let p2 = UpperSet::polytopic(q2, vec![RVec::from_ints(&[0, 1]), RVec::from_ints(&[1, 0])]).unwrap();
    let nested = StepFuzzy::new(rat(1), vec![Level { alpha: rat(1), cut: p1 }, Level { alpha: ratio(1, 2), cut: p2 }]).unwrap();
    assert!(is_n_quasiconcave(&nested, 2, 56).unwrap());
}

#[test]
fn inf_examples() {
    let q = Arc::new(Wedge::orthant(2));
    let d = |pts: &[[i64; 2]]| UpperSet::discrete(q.clone(), Carrier::Rational, pts.iter().map(|p| RVec::from_ints(p)).collect()).unwrap();
    let f = StepFuzzy::new(rat(1), vec![Level { alpha: rat(1), cut: d(&[[0, 2]]) }, Level { alpha: ratio(1, 2), cut: d(&[[0, 1], [1, 0]]) }]).unwrap();
    assert_eq!(fuzzy_inf(&[f.clone(), f.clone()]).unwrap(), f);
    let (a, b) = (d(&[[0, 2]]), d(&[[1, 0]]));
    let ab = fuzzy_inf(&[chi_embed(a.clone()).unwrap(), chi_embed(b.clone()).unwrap()]).unwrap();
    assert_eq!(ab, chi_embed(intersect(&a, &b).unwrap()).unwrap());
    let g = StepFuzzy::new(rat(1), vec![Level { alpha: rat(1), cut: d(&[[3, 0]]) }, Level { alpha: ratio(3, 4), cut: d(&[[0, 0]]) }]).unwrap();
    let m = fuzzy_inf(&[f.clone(), g.clone()]).unwrap();
    for x in -2..=4 {
        for y in -2..=4 {
            let p = RVec::from_ints(&[x, y]);
            assert_eq!(m.value(&p), f.value(&p).min(g.value(&p)), "at {p}");
        }
    }
}

#[test]
fn archimedean_family() {
    let inst = make_fuzzy_cornet(Wedge::orthant(1), rat(1)).unwrap();
    let fam = fuzzy_arch_family(&inst, &[rat(1), ratio(1, 2)]).unwrap();
    let a1 = fam.members()[0].1.clone();
    let probe = inst.indicator(ray(&inst.wedge_arc(), 5));
    assert_eq!(inst.archimedean_exact(&a1, &[probe]), Some(Verdict::AnalyticallyVerified { n0: 5 }));
    let half = fam.witness(&a1).unwrap();
    assert!(inst.leq(&inst.add(&half, &half), &a1));
    let half_inst = make_fuzzy_cornet(Wedge::orthant(1), ratio(1, 2)).unwrap();
    assert!(fuzzy_arch_family(&half_inst, &[rat(1)]).is_err());
    let pu = half_inst.p_unit();
    let v = half_inst.archimedean_exact(&pu, std::slice::from_ref(&pu)).unwrap();
    assert!(!v.holds());
}

#[test]
fn spec_round_trip() {
    let w = o1();
    let f = step(&w, &[(rat(1), 3), (ratio(1, 2), 1)]);
    let json = serde_json::to_string(&f.spec()).unwrap();
    let back: FuzzySpec = serde_json::from_str(&json).unwrap();
    assert_eq!(back.build(w.clone(), &rat(1)).unwrap(), f);
    assert!(matches!(back.build(w, &ratio(1, 2)), Err(Error::PMismatch { .. })));
}
