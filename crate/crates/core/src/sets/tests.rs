use std::sync::Arc;

use super::*;
use crate::cornet::{Cornet, Verdict};
use crate::geometry::{rat, ratio};
use crate::wedge::Wedge;

fn v(c: &[i64]) -> RVec {
    RVec::from_ints(c)
}

fn orth2() -> Arc<Wedge> {
    Arc::new(Wedge::orthant(2))
}

fn zset(w: &Arc<Wedge>, pts: &[i64]) -> UpperSet {
    UpperSet::discrete(w.clone(), Carrier::Integer, pts.iter().map(|&p| v(&[p])).collect()).unwrap()
}

fn disc(w: &Arc<Wedge>, pts: &[&[i64]]) -> UpperSet {
    UpperSet::discrete(w.clone(), Carrier::Rational, pts.iter().map(|p| v(p)).collect()).unwrap()
}

fn poly(w: &Arc<Wedge>, pts: &[&[i64]]) -> UpperSet {
    UpperSet::polytopic(w.clone(), pts.iter().map(|p| v(p)).collect()).unwrap()
}

#[test]
fn msum_examples() {
    let z = Arc::new(Wedge::zero(1));
    assert_eq!(msum(&zset(&z, &[0, 1]), &zset(&z, &[0, 2])).unwrap(), zset(&z, &[0, 1, 2, 3]));
    let q = orth2();
    let a = disc(&q, &[&[0, 1], &[1, 0]]);
    let s = msum(&a, &a).unwrap();
    assert_eq!(s.generators(), vec![v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]);
    assert_eq!(msum(&a, &UpperSet::unit(q, Carrier::Rational)).unwrap(), a);
}

#[test]
fn star_examples() {
    let z = Arc::new(Wedge::zero(1));
    assert_eq!(star_set(2, &zset(&z, &[0, 1])).unwrap(), zset(&z, &[0, 2]));
    let q = orth2();
    let a = disc(&q, &[&[0, 1], &[1, 0]]);
    assert_eq!(star_set(1, &a).unwrap(), a);
    assert_eq!(star_set(2, &a).unwrap(), disc(&q, &[&[0, 2], &[2, 0]]));
    assert!(star_set(0, &a).is_err());
}

#[test]
fn subset_examples() {
    let z = Arc::new(Wedge::zero(1));
    assert!(subset(&zset(&z, &[0, 2]), &zset(&z, &[0, 1, 2])).unwrap());
    let q = orth2();
    let a = disc(&q, &[&[1, 1]]);
    let b = disc(&q, &[&[0, 1], &[1, 0]]);
    assert!(subset(&a, &b).unwrap());
    assert!(!subset(&b, &a).unwrap());
    assert!(subset(&b, &b).unwrap());
    assert_eq!(subset(&a, &zset(&z, &[0])), Err(Error::WedgeMismatch));
}

#[test]
fn intersect_examples() {
    let q = orth2();
    let r = intersect(&disc(&q, &[&[0, 2]]), &disc(&q, &[&[1, 0]])).unwrap();
    assert_eq!(r, disc(&q, &[&[1, 2]]));
    let a = disc(&q, &[&[0, 1], &[1, 0]]);
    assert_eq!(intersect(&a, &a).unwrap(), a);
    assert_eq!(intersect(&a, &disc(&q, &[&[2, 0]])).unwrap(), disc(&q, &[&[2, 0]]));
    assert!(matches!(intersect(&poly(&q, &[&[0, 1], &[1, 0]]), &a), Err(Error::Unsupported(_))));
}

#[test]
fn convexity_examples() {
    let q = orth2();
    let unit = UpperSet::unit(q.clone(), Carrier::Rational);
    for n in 1..=4 {
        assert!(is_n_convex_set(&unit, n, MULTISET_CAP).unwrap());
    }
    assert!(!is_n_convex_set(&disc(&q, &[&[0, 1], &[1, 0]]), 2, MULTISET_CAP).unwrap());
    assert!(is_n_convex_set(&poly(&q, &[&[0, 1], &[1, 0]]), 2, MULTISET_CAP).unwrap());
    let z = Arc::new(Wedge::zero(1));
    assert!(!is_n_convex_set(&zset(&z, &[0, 1, 2]), 2, MULTISET_CAP).unwrap());
    assert!(is_n_convex_set(&zset(&z, &[0, 2, 4]), 3, MULTISET_CAP).is_ok());
    let big = zset(&z, &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
    assert!(matches!(is_n_convex_set(&big, 3, MULTISET_CAP), Err(Error::CapExceeded { .. })));
}

#[test]
fn hull_examples() {
    let q = orth2();
    let p = poly(&q, &[&[0, 1], &[1, 0]]);
    assert_eq!(convex_hull(&p).unwrap(), p);
    let w1 = Arc::new(Wedge::zero(1));
    let two = UpperSet::discrete(w1.clone(), Carrier::Rational, vec![v(&[0]), v(&[2])]).unwrap();
    let h = convex_hull(&two).unwrap();
    assert_eq!(h.repr(), Repr::Polytopic);
    assert!(h.contains_point(&RVec::new(vec![ratio(1, 3)])));
    assert!(!h.contains_point(&v(&[3])));
    let z = Arc::new(Wedge::zero(1));
    assert!(convex_hull(&zset(&z, &[0, 2])).is_err());
}

#[test]
fn phi_examples() {
    let q = orth2();
    assert_eq!(phi_embed(q.clone(), v(&[0, 0])).unwrap(), UpperSet::unit(q.clone(), Carrier::Rational));
    let s = msum(&phi_embed(q.clone(), v(&[1, 2])).unwrap(), &phi_embed(q.clone(), v(&[3, 4])).unwrap()).unwrap();
    assert_eq!(s, phi_embed(q, v(&[4, 6])).unwrap());
    let o1 = Arc::new(Wedge::orthant(1));
    let (p0, p1) = (phi_embed(o1.clone(), v(&[0])).unwrap(), phi_embed(o1, v(&[1])).unwrap());
    assert!(p1.le(&p0) && !p0.le(&p1));
}

#[test]
fn canonical_forms() {
    let q = orth2();
    let a = disc(&q, &[&[1, 0], &[0, 1], &[2, 2], &[1, 0]]);
    assert_eq!(a.generators(), vec![v(&[0, 1]), v(&[1, 0])]);
    let p = poly(&q, &[&[0, 2], &[1, 1], &[2, 0]]);
    assert_eq!(p.generators(), vec![v(&[0, 2]), v(&[2, 0])]);
    assert_eq!(poly(&q, &[&[0, 0], &[1, 1]]).repr(), Repr::Discrete);
}

#[test]
fn unions_of_pieces() {
    let q = orth2();
    let d = disc(&q, &[&[0, 3], &[3, 0]]);
    let p = poly(&q, &[&[0, 1], &[1, 0]]);
    let u = msum(&d, &p).unwrap();
    assert_eq!(u.repr(), Repr::Union);
    assert_eq!(u.pieces().len(), 2);
    // (2,2) lies in neither piece: conv{(0,4),(1,3)}+W and conv{(3,1),(4,0)}+W
    assert!(!u.contains_point(&v(&[2, 2])));
    assert!(u.le(&p) && !p.le(&u));
    // covered only jointly
    let a = poly(&q, &[&[0, 2], &[2, 0]]);
    let b = poly(&q, &[&[0, 2], &[1, 1]]);
    let c = poly(&q, &[&[1, 1], &[2, 0]]);
    let bc = UpperSet::union(q.clone(), vec![b.generators(), c.generators()]).unwrap();
    assert_eq!(bc.repr(), Repr::Union);
    assert!(a.le(&bc) && bc.le(&a));
    assert!(set_eq(&a, &bc));
    let gap = UpperSet::union(q.clone(), vec![vec![v(&[0, 2]), v(&[1, 1])], vec![v(&[3, 0]), v(&[1, 1])]]).unwrap();
    assert!(!a.le(&gap));
    assert!(gap.le(&a));
}

#[test]
fn family_examples() {
    let inst = make_set_cornet(Wedge::orthant(2), Repr::Discrete);
    let fam = set_arch_family(&inst, &[rat(1), ratio(1, 2)]).unwrap();
    let a1 = fam.members()[0].1.clone();
    let half = fam.witness(&a1).unwrap();
    assert_eq!(half, fam.members()[1].1);
    assert!(inst.equal(&inst.add(&half, &half), &a1));
    let u = disc(&inst.wedge_arc(), &[&[3, 5]]);
    assert_eq!(
        inst.archimedean_exact(&a1, std::slice::from_ref(&u)),
        Some(Verdict::AnalyticallyVerified { n0: 5 })
    );
    assert_eq!(inst.archimedean_exact(&a1, &[inst.zero()]), Some(Verdict::AnalyticallyVerified { n0: 1 }));
    assert!(!inst.archimedean_exact(&u, &[inst.zero()]).unwrap().holds());
    assert_eq!(inst.bounded_exact(&u, &a1), Some(Some(1)));
    let far = disc(&inst.wedge_arc(), &[&[-3, -5]]);
    assert_eq!(inst.bounded_exact(&far, &a1), Some(Some(5)));
    assert!(set_arch_family(&make_set_cornet(Wedge::zero(2), Repr::Discrete), &[rat(1)]).is_err());
}

#[test]
fn archimedean_via_polytope_point() {
    // neither vertex has a negated interior point but the midpoint does
    let inst = make_set_cornet(Wedge::orthant(2), Repr::Polytopic);
    let x = poly(&inst.wedge_arc(), &[&[-2, 1], &[1, -2]]);
    let v = inst.archimedean_exact(&x, &[inst.zero()]).unwrap();
    assert!(v.holds());
    let d = disc(&inst.wedge_arc(), &[&[-2, 1], &[1, -2]]);
    assert!(!inst.archimedean_exact(&d, &[inst.zero()]).unwrap().holds());
}

#[test]
fn integer_carrier_rules() {
    let z = Arc::new(Wedge::zero(1));
    assert!(UpperSet::discrete(z.clone(), Carrier::Integer, vec![RVec::new(vec![ratio(1, 2)])]).is_err());
    assert!(UpperSet::discrete(Arc::new(Wedge::orthant(1)), Carrier::Integer, vec![v(&[0])]).is_err());
    assert!(!zset(&z, &[0]).contains_point(&RVec::new(vec![ratio(1, 2)])));
}

#[test]
fn spec_round_trip() {
    let q = orth2();
    let u = msum(&disc(&q, &[&[0, 3], &[3, 0]]), &poly(&q, &[&[0, 1], &[1, 0]])).unwrap();
    for s in [u, disc(&q, &[&[0, 1]]), poly(&q, &[&[0, 1], &[1, 0]])] {
        let json = serde_json::to_string(&s.spec()).unwrap();
        let back: SetSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build(q.clone(), Carrier::Rational).unwrap(), s);
    }
    let bad: std::result::Result<SetSpec, _> = serde_json::from_str(r#"{"repr":"discrete","gens":[]}"#);
    assert!(bad.is_err());
}

#[test]
fn mutation_breaks_only_order_reflection() {
    let inst = make_int_set_cornet(1, crate::sample::SamplerConfig::integer_range(0, 3))
        .with_mutation(Some(Mutation::StarAsSum));
    let w = inst.wedge_arc();
    let (x, y) = (zset(&w, &[0, 2]), zset(&w, &[0, 1, 3]));
    assert!(inst.leq(&inst.star(2, &x), &inst.star(2, &y)));
    assert!(!inst.leq(&x, &y));
}

#[test]
fn z1_hunt_hits() {
    use crate::cornet::cancel::{ablation_hunt, Ablation, Hypotheses};
    let inst = make_int_set_cornet(1, crate::sample::SamplerConfig::integer_range(0, 3));
    let uni = universe::z1_universe(&inst, universe::Z1Universe::Z1, 0, 3).unwrap();
    assert_eq!(uni.len(), 15);
    let always = |_: &UpperSet| true;
    let convex = |x: &UpperSet| universe::z_convex(&inst, x, 4);
    let hyp = Hypotheses { bounded: &always, closed: &always, convex: &convex };
    let hunt = ablation_hunt(&inst, &uni, Ablation::Convexity, &hyp);
    let (x, y, z) = hunt.hit.unwrap();
    let w = inst.wedge_arc();
    assert_eq!((x, y, z), (zset(&w, &[0, 1]), zset(&w, &[0, 2]), zset(&w, &[0, 1])));
    assert!(universe::violates_cancellation(&inst, &zset(&w, &[0, 1, 2]), &zset(&w, &[0, 2]), &zset(&w, &[0, 1])));
    let ints = universe::z1_universe(&inst, universe::Z1Universe::Z1Intervals, 0, 3).unwrap();
    assert!(ablation_hunt(&inst, &ints, Ablation::None, &hyp).hit.is_none());
}
