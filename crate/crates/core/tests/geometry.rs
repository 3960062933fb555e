use cornet::geometry::{facets, in_hull_plus_cone, rat, ConeH, LinearProgram, LpOutcome, Pointedness, RVec, Rational, Relation};
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Maximum of `c · x` over `{a · x <= b}` by enumerating every pairwise
/// intersection of constraint lines.
fn vertex_oracle(rows: &[(i64, i64, i64)], c: (i64, i64)) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for (i, &(a1, b1, r1)) in rows.iter().enumerate() {
        for &(a2, b2, r2) in &rows[i + 1..] {
            let det = a1 * b2 - a2 * b1;
            if det == 0 {
                continue;
            }
            let x = Rational::new((r1 * b2 - r2 * b1).into(), det.into());
            let y = Rational::new((a1 * r2 - a2 * r1).into(), det.into());
            let feasible = rows.iter().all(|&(a, b, r)| rat(a) * &x + rat(b) * &y <= rat(r));
            if feasible {
                let v = rat(c.0) * &x + rat(c.1) * &y;
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

fn boxed(mut rows: Vec<(i64, i64, i64)>) -> Vec<(i64, i64, i64)> {
    rows.extend([(1, 0, 10), (-1, 0, 10), (0, 1, 10), (0, -1, 10)]);
    rows
}

proptest! {
    #[test]
    fn lp_matches_vertex_enumeration(
        raw in prop::collection::vec((-5i64..=5, -5i64..=5, -10i64..=10), 0..5),
        c in (-5i64..=5, -5i64..=5),
    ) {
        let rows = boxed(raw);
        let mut lp = LinearProgram::new(2);
        for &(a, b, r) in &rows {
            lp.push(ints(&[a, b]), Relation::Le, rat(r));
        }
        let expected = vertex_oracle(&rows, c);
        match lp.maximize(&ints(&[c.0, c.1])) {
            LpOutcome::Optimal { point, value } => {
                prop_assert_eq!(Some(value.clone()), expected);
                prop_assert_eq!(rat(c.0) * &point[0] + rat(c.1) * &point[1], value);
            }
            LpOutcome::Infeasible => prop_assert_eq!(expected, None),
            LpOutcome::Unbounded => prop_assert!(false, "boxed program reported unbounded"),
        }
    }

    #[test]
    fn pointedness_matches_lineality_lp(
        d in 1usize..=3,
        raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 0..4),
    ) {
        let rows: Vec<RVec> = raw.iter().map(|r| RVec::from_ints(&r[..d])).collect();
        let cone = ConeH::new(d, rows.clone()).unwrap();
        // The lineality space {x : Mx = 0} is trivial iff every coordinate
        // is pinned to 0 on its unit box.
        let mut trivial = true;
        for i in 0..d {
            for sign in [1, -1] {
                let mut lp = LinearProgram::new(d);
                for r in &rows {
                    lp.push(r.coords().to_vec(), Relation::Eq, rat(0));
                }
                for j in 0..d {
                    let mut e = vec![rat(0); d];
                    e[j] = rat(1);
                    lp.push(e.clone(), Relation::Le, rat(1));
                    lp.push(e, Relation::Ge, rat(-1));
                }
                let mut obj = vec![rat(0); d];
                obj[i] = rat(sign);
                if let LpOutcome::Optimal { value, .. } = lp.maximize(&obj) {
                    if value > rat(0) {
                        trivial = false;
                    }
                }
            }
        }
        prop_assert_eq!(cone.is_pointed(), trivial);
        if let Pointedness::NotPointed(u) = cone.pointedness() {
            prop_assert!(!u.is_zero());
            prop_assert!(cone.holds(&u) && cone.holds(&-&u));
        }
    }

    #[test]
    fn facets_agree_with_hull_membership(
        verts in prop::collection::vec((-3i64..=3, -3i64..=3), 1..5),
        probe in (-5i64..=5, -5i64..=5),
    ) {
        let vs: Vec<RVec> = verts.iter().map(|&(a, b)| RVec::from_ints(&[a, b])).collect();
        let cone = ConeH::orthant(2);
        let rays = vec![RVec::from_ints(&[1, 0]), RVec::from_ints(&[0, 1])];
        let hs = facets(&vs, &rays);
        let p = RVec::from_ints(&[probe.0, probe.1]);
        prop_assert_eq!(hs.iter().all(|h| h.holds(&p)), in_hull_plus_cone(&p, &vs, &cone));
        for v in &vs {
            prop_assert!(in_hull_plus_cone(v, &vs, &cone));
        }
    }
}

#[test]
fn orthant_interior_point_is_ones() {
    assert_eq!(ConeH::orthant(3).interior_point(), Some(RVec::from_ints(&[1, 1, 1])));
    assert_eq!(ConeH::zero(2).interior_point(), None);
}
