//! Invariance of the symmetric decompositions under the cube group and the
//! stabilizer property, for cubes and stretched orthotopes.

use std::time::Instant;

use orthocell::rational::int;
use orthocell::symmetric::{
    build_k_orthotope, build_k_standard, build_k_subdivided, build_k_subdivided_orthotope, build_ko,
};
use orthocell::symmetry::{
    check_family_invariance, check_stabilizer_property, enumerate_cube_symmetries, enumerate_orthotope_symmetries,
};
use orthocell::Orthotope;

#[test]
fn cube_group_preserves_ko_and_subdivisions() {
    for d in 2..=3 {
        let start = Instant::now();
        let group = enumerate_cube_symmetries(d);
        assert_eq!(group.order(), [1, 2, 8, 48][d]);
        let ko = build_ko(d).unwrap();
        let sub = build_k_subdivided(d, 2).unwrap();
        for t in group.elements() {
            assert!(check_family_invariance(t, &ko).unwrap(), "{t} on K°_{d}");
            assert!(check_family_invariance(t, sub.cells()).unwrap(), "{t} on K_{{{d},2}}");
        }
        eprintln!("invariance at d = {d} in {:?}", start.elapsed());
    }
}

#[test]
fn stabilizer_property_on_k() {
    for d in 2..=3 {
        let start = Instant::now();
        let k = build_k_standard(d).unwrap();
        let r = check_stabilizer_property(k.cells(), &enumerate_cube_symmetries(d), 100, 2024);
        assert!(r.passed(), "{r}");
        eprintln!("stabilizer at d = {d} in {:?}", start.elapsed());
    }
}

#[test]
fn orthotope_symmetries_preserve_stretched_decompositions() {
    let q = Orthotope::centered(&[int(2), int(2), int(3)]).unwrap();
    let group = enumerate_orthotope_symmetries(&q);
    let k = build_k_orthotope(&q).unwrap();
    let sub = build_k_subdivided_orthotope(&q, 2).unwrap();
    for t in group.elements() {
        assert!(check_family_invariance(t, k.cells()).unwrap());
        assert!(check_family_invariance(t, sub.cells()).unwrap());
    }
    assert!(check_stabilizer_property(k.cells(), &group, 20, 5).passed());

    let corner = Orthotope::corner(&[int(1), int(3)]).unwrap();
    let group = enumerate_orthotope_symmetries(&corner);
    let k = build_k_orthotope(&corner).unwrap();
    assert!(group.elements().iter().all(|t| check_family_invariance(t, k.cells()).unwrap()));
    assert!(check_stabilizer_property(k.cells(), &group, 20, 5).passed());
}

#[test]
fn stabilizer_report_is_reproducible() {
    let k = build_k_standard(2).unwrap();
    let g = enumerate_cube_symmetries(2);
    let a = check_stabilizer_property(k.cells(), &g, 30, 9);
    let b = check_stabilizer_property(k.cells(), &g, 30, 9);
    assert_eq!(a, b);
    assert_eq!(a.checks[0].checked, k.len() * 8);
}
