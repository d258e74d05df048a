//! Torus Lattès maps `x ↦ λx`: quotient complexes, the induced cell map and
//! its cellular Markov property, checked against brute-force orbit counts.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use orthocell::crystal::{make_orthotopic_group, torus_group};
use orthocell::lattes::{
    build_lattes_cell_map, build_quotient_complexes, degree_count, evaluate, origin_class, subdivision_matrix,
    verify_conjugation, verify_markov,
};
use orthocell::rational::{int, rat};
use orthocell::symmetric::build_k_orthotope;
use orthocell::{AffineSignedIsometry, ConvexCell, Orthotope, OrthotopicGroup, Point};

fn tor(n: usize) -> OrthotopicGroup {
    torus_group(&vec![int(1); n]).unwrap()
}

/// Orbit classes of `K_n([0,1]^n)` under `Z^n`, counted by dimension, found
/// by closing each cell under the unit translations `{-1, 0, 1}^n` that
/// send it to another cell.
fn brute_force_classes(n: usize) -> BTreeMap<usize, usize> {
    let q = Orthotope::corner(&vec![int(1); n]).unwrap();
    let k = build_k_orthotope(&q).unwrap();
    let cells: BTreeSet<ConvexCell> = k.cells().iter().cloned().collect();
    let mut seen: BTreeSet<ConvexCell> = BTreeSet::new();
    let mut by_dim = BTreeMap::new();
    for c in &cells {
        if seen.contains(c) {
            continue;
        }
        // Every translate of c by an integer vector that is again a cell.
        let mut stack = vec![c.clone()];
        while let Some(x) = stack.pop() {
            if !seen.insert(x.clone()) {
                continue;
            }
            for v in 0..3usize.pow(n as u32) {
                let shift: Vec<i64> = (0..n).map(|i| (v / 3usize.pow(i as u32) % 3) as i64 - 1).collect();
                let t = AffineSignedIsometry::translation(Point::from_ints(&shift));
                let y = x.apply_isometry(&t);
                if cells.contains(&y) && !seen.contains(&y) {
                    stack.push(y);
                }
            }
        }
        *by_dim.entry(c.dim()).or_insert(0) += 1;
    }
    by_dim
}

#[test]
fn torus_quotients_match_brute_force_orbits() {
    let (d0, _) = build_quotient_complexes(&tor(2), 2).unwrap();
    assert_eq!(d0.counts_by_dim(), vec![4, 12, 8]);
    let oracle = brute_force_classes(2);
    assert_eq!(oracle, BTreeMap::from([(0, 4), (1, 12), (2, 8)]));
    assert_eq!(d0.euler_characteristic(), 0);

    let (d0, _) = build_quotient_complexes(&tor(1), 2).unwrap();
    assert_eq!(d0.counts_by_dim(), vec![2, 2]);
    let (d0, _) = build_quotient_complexes(&tor(3), 1).unwrap();
    let oracle: Vec<usize> = brute_force_classes(3).into_values().collect();
    assert_eq!(d0.counts_by_dim(), oracle);
    assert_eq!(d0.euler_characteristic(), 0);
}

#[test]
fn torus_markov_partitions() {
    for (n, lambda) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let start = Instant::now();
        let record = build_lattes_cell_map(&tor(n), lambda).unwrap();
        let built = start.elapsed();
        let report = verify_markov(&record);
        assert!(report.passed(), "{report}");
        let degree = lambda.pow(n as u32);
        assert!(degree_count(&record).values().all(|&c| c == degree));
        assert_eq!(record.d1.top_cells().len(), degree * record.d0.top_cells().len());
        assert_eq!(record.d0.euler_characteristic(), 0);
        assert_eq!(record.d1.euler_characteristic(), 0);
        for row in subdivision_matrix(&record) {
            assert_eq!(row.iter().sum::<usize>(), degree);
        }
        let o = origin_class(&record).unwrap();
        let o1 = record.d1.class_of(&record.d0.cells()[o].representative).unwrap();
        assert_eq!(record.table[o1].target, o);
        eprintln!("n = {n}, λ = {lambda}: built {built:?}, verified {:?}", start.elapsed() - built);
    }
}

#[test]
fn identity_scale_is_a_bijection() {
    let record = build_lattes_cell_map(&tor(2), 1).unwrap();
    assert_eq!(record.d0.len(), record.d1.len());
    assert!(verify_markov(&record).passed());
    let m = subdivision_matrix(&record);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.iter().sum::<usize>(), 1);
        assert_eq!(m.iter().map(|r| r[i]).sum::<usize>(), 1);
    }
    let targets: BTreeSet<usize> = record.table.iter().map(|e| e.target).collect();
    assert_eq!(targets.len(), record.d0.len());
}

#[test]
fn corrupted_entries_fail() {
    let mut record = build_lattes_cell_map(&tor(2), 2).unwrap();
    let k = record.d1.top_cells()[0];
    let wrong = (record.table[k].target + 1) % record.d0.len();
    record.table[k].target = wrong;
    let r = verify_markov(&record);
    assert!(!r.passed());
    let failed = r.failed_checks().next().unwrap();
    assert!(failed.condition.starts_with("(b)"));
    assert!(!failed.witnesses.is_empty());

    let mut record = build_lattes_cell_map(&tor(1), 2).unwrap();
    record.table[0].gamma = AffineSignedIsometry::translation(Point::from_ints(&[5]));
    assert!(!verify_markov(&record).passed());
}

#[test]
fn conjugation() {
    for l in 1..=3 {
        assert!(verify_conjugation(&tor(2), &int(l)).unwrap());
    }
    assert!(verify_conjugation(&tor(2), &rat(3, 2)).is_err());
    // x ↦ -x + 1 with lattice 2Z: λ = 3 gives x ↦ -x + 3 = (x ↦ -x + 1) + 2.
    let g = AffineSignedIsometry::new(vec![0], vec![-1], Point::from_ints(&[1]));
    let group = make_orthotopic_group(&[int(2)], vec![g]).unwrap();
    assert!(verify_conjugation(&group, &int(3)).unwrap());
    // x ↦ -x + 1/2: λ = 2 gives x ↦ -x + 1, which is not in the group.
    let g = AffineSignedIsometry::new(vec![0], vec![-1], Point::new(vec![rat(1, 2)]));
    let group = make_orthotopic_group(&[int(2)], vec![g]).unwrap();
    assert!(!verify_conjugation(&group, &int(2)).unwrap());
}

#[test]
fn reflection_group_quotient() {
    let flip = AffineSignedIsometry::linear(vec![0], vec![-1]);
    let group = make_orthotopic_group(&[int(2)], vec![flip])
        .unwrap()
        .with_domain(Orthotope::corner(&[int(1)]).unwrap())
        .unwrap();
    let record = build_lattes_cell_map(&group, 2).unwrap();
    assert!(verify_markov(&record).passed());
    // The quotient is the interval [0, 1] itself.
    assert_eq!(record.d0.counts_by_dim(), vec![3, 2]);
    assert_eq!(record.d0.euler_characteristic(), 1);
    assert_eq!(evaluate(&record, &Point::new(vec![rat(3, 4)])), Point::new(vec![rat(1, 2)]));
}

#[test]
fn point_evaluation_matches_the_quotient_of_scaling() {
    let record = build_lattes_cell_map(&tor(2), 3).unwrap();
    for (p, q) in [((1, 5), (2, 7)), ((0, 1), (1, 2)), ((4, 9), (1, 3))] {
        let x = Point::new(vec![rat(p.0, p.1), rat(q.0, q.1)]);
        let expected = orthocell::crystal::canonicalize_point(&record.group, &x.scaled(&int(3)));
        assert_eq!(evaluate(&record, &x), expected);
    }
}
