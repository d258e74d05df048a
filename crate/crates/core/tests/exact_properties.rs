//! Properties of exact cells: canonical forms, isometry invariance, cones
//! and volume additivity.

use orthocell::cell::{cone, volume};
use orthocell::complex::verify_cell_decomposition;
use orthocell::rational::{int, rat};
use orthocell::symmetric::build_k_subdivided;
use orthocell::{AffineSignedIsometry, ConvexCell, Point, Rational};
use proptest::prelude::*;

fn arb_point(n: usize) -> impl Strategy<Value = Point> {
    proptest::collection::vec((-6i64..6, 1i64..4), n)
        .prop_map(|v| Point::new(v.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

fn arb_cell(n: usize) -> impl Strategy<Value = ConvexCell> {
    proptest::collection::vec(arb_point(n), 1..7).prop_map(|pts| ConvexCell::hull(&pts))
}

fn arb_isometry(n: usize) -> impl Strategy<Value = AffineSignedIsometry> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], n),
        arb_point(n),
    )
        .prop_map(|(perm, signs, t)| AffineSignedIsometry::new(perm, signs, t))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonicalization_is_idempotent(c in arb_cell(3)) {
        let again = ConvexCell::from_hrep(3, &c.hrep()).unwrap();
        prop_assert_eq!(&again, &c);
        prop_assert_eq!(again.dim(), c.dim());
        prop_assert_eq!(ConvexCell::hull(c.vertices()), c);
    }

    #[test]
    fn vertices_are_tight_on_enough_facets(c in arb_cell(3)) {
        for (i, v) in c.vertices().iter().enumerate() {
            prop_assert!(c.hrep().iter().all(|h| h.is_satisfied(v)));
            if c.dim() > 0 {
                let tight = c.facets().iter().filter(|f| f.vertices.contains(&i)).count();
                prop_assert!(tight >= c.dim());
            }
        }
    }

    #[test]
    fn isometries_preserve_volume_and_invert(c in arb_cell(2), g in arb_isometry(2)) {
        let img = c.apply_isometry(&g);
        prop_assert_eq!(img.apply_isometry(&g.inverse()), c.clone());
        prop_assert_eq!(img.dim(), c.dim());
        if c.dim() == 2 || c.dim() == 0 {
            prop_assert_eq!(volume(&img, c.dim()).unwrap(), volume(&c, c.dim()).unwrap());
        }
        let d = |a: &Point, b: &Point| a.squared_distance(b);
        let (v, w) = (c.vertices(), img.vertices());
        let mut dv: Vec<Rational> = v.iter().flat_map(|a| v.iter().map(move |b| d(a, b))).collect();
        let mut dw: Vec<Rational> = w.iter().flat_map(|a| w.iter().map(move |b| d(a, b))).collect();
        dv.sort();
        dw.sort();
        prop_assert_eq!(dv, dw);
    }

    #[test]
    fn cones_are_idempotent(c in arb_cell(3), apex in arb_point(3)) {
        let once = cone(&apex, &c).cell;
        prop_assert_eq!(cone(&apex, &once).cell, once.clone());
        prop_assert!(once.contains_cell(&c));
        prop_assert!(once.contains_point(&apex));
    }

    #[test]
    fn intersection_is_commutative(a in arb_cell(2), b in arb_cell(2)) {
        let ab = a.intersect(&b);
        prop_assert_eq!(&ab, &b.intersect(&a));
        if let Some(p) = ab {
            prop_assert!(a.contains_cell(&p) && b.contains_cell(&p));
        }
    }

    #[test]
    fn relative_interior_point_is_interior(c in arb_cell(3)) {
        prop_assert!(c.relint_contains(&c.relative_interior_point()));
    }
}

#[test]
fn volumes_add_up_over_decompositions() {
    for (n, l) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
        let k = build_k_subdivided(n, l).unwrap();
        assert!(verify_cell_decomposition(&k).passed());
        let total = k.top_cells().iter().fold(int(0), |acc, c| acc + volume(c, n).unwrap());
        assert_eq!(total, int(2_i64.pow(n as u32)), "n = {n}, l = {l}");
    }
}
