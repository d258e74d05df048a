//! Acceptance suite: one PASS/FAIL line per criterion, computed from
//! scratch. Exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use orthocell::cell::cone;
use orthocell::complex::{verify_cell_decomposition, verify_refinement};
use orthocell::crystal::{orbit_intersection_check, torus_group};
use orthocell::lattes::{build_lattes_cell_map, degree_count, verify_conjugation, verify_markov};
use orthocell::linalg::rank;
use orthocell::rational::int;
use orthocell::symmetric::{boundary_k, build_k_orthotope, build_k_standard, build_k_subdivided, build_ko};
use orthocell::symmetry::{check_family_invariance, check_stabilizer_property, enumerate_cube_symmetries};
use orthocell::{CellComplex, ConvexCell, Orthotope, OrthotopicGroup, Point, Space};
use orthocell_cli::ComplexDocument;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn cube(d: usize) -> Orthotope {
    Orthotope::standard_cube(d, d)
}

fn tor(n: usize) -> OrthotopicGroup {
    torus_group(&vec![int(1); n]).unwrap()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let k1: BTreeSet<ConvexCell> = build_k_standard(1).map_err(|e| e.to_string())?.into_cells().into_iter().collect();
    let p = |x: i64| Point::from_ints(&[x]);
    let expected: BTreeSet<ConvexCell> = [
        ConvexCell::point(p(-1)),
        ConvexCell::point(p(0)),
        ConvexCell::point(p(1)),
        ConvexCell::hull(&[p(-1), p(0)]),
        ConvexCell::hull(&[p(0), p(1)]),
    ]
    .into_iter()
    .collect();
    ensure(k1 == expected, || format!("K_1 = {k1:?}"))?;
    within(start, Duration::from_secs(1), "K_1")?;
    Ok("K_1 = {{-1},{0},{1},[-1,0],[0,1]}".into())
}

/// Faces of the arrangement `{x_i = 0, x_i = ±x_j}` meeting the open cube,
/// by dimension: distinct sign vectors over the grid `{-d..d}^d`, each of
/// dimension `d - rank` of the hyperplanes it lies on.
fn arrangement_faces(d: usize) -> BTreeMap<usize, usize> {
    let mut forms: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|k| i64::from(k == i)).collect()).collect();
    for i in 0..d {
        for j in i + 1..d {
            for s in [-1, 1] {
                forms.push((0..d).map(|k| i64::from(k == i) + s * i64::from(k == j)).collect());
            }
        }
    }
    let m = d as i64;
    let side = (2 * m + 1) as usize;
    let mut faces: BTreeSet<Vec<i64>> = BTreeSet::new();
    for idx in 0..side.pow(d as u32) {
        let x: Vec<i64> = (0..d).map(|i| (idx / side.pow(i as u32) % side) as i64 - m).collect();
        faces.insert(forms.iter().map(|f| f.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>().signum()).collect());
    }
    let mut out = BTreeMap::new();
    for sv in faces {
        let on: Vec<Vec<orthocell::Rational>> =
            sv.iter().zip(&forms).filter(|(s, _)| **s == 0).map(|(_, f)| f.iter().map(|&v| int(v)).collect()).collect();
        *out.entry(d - rank(&on)).or_insert(0) += 1;
    }
    out
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for d in 1..=3 {
        let ko = build_ko(d).map_err(|e| e.to_string())?;
        let mut by_dim = BTreeMap::new();
        for c in &ko {
            *by_dim.entry(c.dim()).or_insert(0) += 1;
        }
        let oracle = arrangement_faces(d);
        ensure(by_dim == oracle, || format!("K°_{d} counts {by_dim:?}, arrangement oracle {oracle:?}"))?;
        let k = build_k_standard(d).map_err(|e| e.to_string())?;
        let top = k.top_cells().len();
        ensure(top == (1 << d) * factorial(d), || format!("K_{d} has {top} top cells"))?;
        summary.push(format!("|K°_{d}| = {}, |K_{d}| = {}, top = {top}", ko.len(), k.len()));
        let expected = match d {
            1 => None,
            2 => Some((17, 8, 33)),
            _ => Some((147, 48, 293)),
        };
        if let Some((ko_n, ko_top, k_n)) = expected {
            let got = (ko.len(), by_dim[&d], k.len());
            ensure(got == (ko_n, ko_top, k_n), || format!("d = {d}: (|K°|, top, |K|) = {got:?}"))?;
        }
    }
    within(start, Duration::from_secs(60), "counts")?;
    Ok(summary.join("; "))
}

fn passes(what: &str, r: orthocell::VerificationReport) -> Result<(), String> {
    ensure(r.passed(), || format!("{what}:\n{r}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for d in 1..=3 {
        let k = build_k_standard(d).map_err(|e| e.to_string())?;
        passes(&format!("K_{d} decomposition"), verify_cell_decomposition(&k))?;
        passes(&format!("K_{d} over Cube_{d}"), verify_refinement(&k, &cube(d).structure()))?;
        checked += 2;
    }
    for (n, l) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let sub = build_k_subdivided(n, l).map_err(|e| e.to_string())?;
        passes(&format!("K_{{{n},{l}}} decomposition"), verify_cell_decomposition(&sub))?;
        let k = build_k_standard(n).map_err(|e| e.to_string())?;
        passes(&format!("K_{{{n},{l}}} over K_{n}"), verify_refinement(&sub, &k))?;
        checked += 2;
    }
    within(start, Duration::from_secs(300), "decompositions")?;
    Ok(format!("{checked} decomposition and refinement reports pass"))
}

fn criterion_4() -> Outcome {
    for d in 1..=3 {
        let k = build_k_standard(d).map_err(|e| e.to_string())?;
        if let Some(c) = k.cells().iter().find(|c| c.vertices().len() != c.dim() + 1) {
            return Err(format!("{c} in K_{d} is not a simplex"));
        }
        let origin = Point::origin(d);
        let boundary = boundary_k(d, &cube(d).to_cell()).map_err(|e| e.to_string())?;
        let mut cones: BTreeSet<ConvexCell> = boundary.cells().iter().map(|c| cone(&origin, c).cell).collect();
        cones.insert(ConvexCell::point(origin));
        let ko: BTreeSet<ConvexCell> = build_ko(d).map_err(|e| e.to_string())?.into_iter().collect();
        ensure(cones == ko, || format!("d = {d}: cones over ∂K_d differ from K°_d"))?;
    }
    Ok("all cells are simplices and K°_d = {0} ∪ cones over ∂K_d for d = 1, 2, 3".into())
}

fn criterion_5() -> Outcome {
    let mut summary = Vec::new();
    for d in 2..=3 {
        let g = enumerate_cube_symmetries(d);
        ensure(g.order() == (1 << d) * factorial(d), || format!("{} symmetries at d = {d}", g.order()))?;
        let ko = build_ko(d).map_err(|e| e.to_string())?;
        let sub = build_k_subdivided(d, 2).map_err(|e| e.to_string())?;
        for t in g.elements() {
            for (name, cells) in [("K°", &ko[..]), ("K_{d,2}", sub.cells())] {
                match check_family_invariance(t, cells) {
                    Ok(true) => {}
                    Ok(false) => return Err(format!("{t} does not preserve {name} at d = {d}")),
                    Err(e) => return Err(format!("{t} on {name} at d = {d}: {e}")),
                }
            }
        }
        summary.push(format!("{} symmetries at d = {d}", g.order()));
    }
    Ok(summary.join(", ") + " preserve K°_d and K_{d,2}")
}

fn criterion_6() -> Outcome {
    for d in 2..=3 {
        let k = build_k_standard(d).map_err(|e| e.to_string())?;
        let r = check_stabilizer_property(k.cells(), &enumerate_cube_symmetries(d), 100, 2024);
        passes(&format!("cube stabilizer at d = {d}"), r)?;
    }
    for n in 2..=3 {
        let group = tor(n);
        let k = build_k_orthotope(group.domain()).map_err(|e| e.to_string())?;
        passes(
            &format!("torus orbit intersections at n = {n}"),
            orbit_intersection_check(&group, k.cells(), 100, 2024),
        )?;
    }
    Ok("cube symmetries at d = 2, 3 and Γ_tor at n = 2, 3 with vertices + 100 samples per cell".into())
}

/// Classes of `K_n([0,1]^n)` under `Z^n`: each cell is translated by the
/// integer vector moving the lower corner of its bounding box into
/// `[0,1)^n`, which picks one translate per orbit.
fn brute_force_classes(n: usize) -> Vec<usize> {
    let q = Orthotope::corner(&vec![int(1); n]).unwrap();
    let k = build_k_orthotope(&q).unwrap();
    let mut keys: BTreeSet<ConvexCell> = BTreeSet::new();
    for c in k.cells() {
        let shift: Vec<orthocell::Rational> = c.lower().iter().map(|x| -x.floor()).collect();
        let t = orthocell::AffineSignedIsometry::translation(Point::new(shift));
        keys.insert(c.apply_isometry(&t));
    }
    let mut counts = vec![0; n + 1];
    for c in &keys {
        counts[c.dim()] += 1;
    }
    counts
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for (n, lambda) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let record = build_lattes_cell_map(&tor(n), lambda).map_err(|e| format!("(n, λ) = ({n}, {lambda}): {e}"))?;
        passes(&format!("Markov at (n, λ) = ({n}, {lambda})"), verify_markov(&record))?;
        let deg = lambda.pow(n as u32);
        for (class, count) in degree_count(&record) {
            ensure(count == deg, || format!("({n}, {lambda}): class {class} has {count} preimages"))?;
        }
        let (top0, top1) = (record.d0.top_cells().len(), record.d1.top_cells().len());
        ensure(top1 == deg * top0, || format!("({n}, {lambda}): |D1 top| = {top1}, |D0 top| = {top0}"))?;
        ensure(record.d0.euler_characteristic() == 0, || format!("({n}, {lambda}): χ(D0) ≠ 0"))?;
        if (n, lambda) == (2, 2) {
            let counts = record.d0.counts_by_dim();
            let oracle = brute_force_classes(2);
            ensure(counts == vec![4, 12, 8] && counts == oracle, || {
                format!("D0 counts {counts:?}, oracle {oracle:?}")
            })?;
        }
        summary.push(format!("({n},{lambda})"));
    }
    within(start, Duration::from_secs(600), "Markov pipeline")?;
    Ok(format!("Markov partitions verified for (n, λ) ∈ {{{}}}; D0 at n = 2 is [4, 12, 8]", summary.join(", ")))
}

/// Runs the binary and returns its exit code and JSON report.
fn cli_report(args: &[&str]) -> Result<(Option<i32>, serde_json::Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_orthocell")).args(args).output().map_err(|e| e.to_string())?;
    let report = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: no JSON report ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((out.status.code(), report))
}

/// The first failing condition mentioning `condition`, with its first witness.
fn first_witness(report: &serde_json::Value, condition: &str) -> Option<(String, String)> {
    report["reports"].as_array()?.iter().flat_map(|r| r["checks"].as_array().cloned().unwrap_or_default()).find_map(
        |c| {
            if c["passed"] != false || !c["condition"].as_str()?.contains(condition) {
                return None;
            }
            Some((c["condition"].as_str()?.to_string(), c["witnesses"][0].as_str()?.to_string()))
        },
    )
}

fn expect_failure(label: &str, condition: &str, args: &[&str]) -> Result<String, String> {
    let (code, report) = cli_report(args)?;
    ensure(code == Some(1), || format!("{label}: exit code {code:?}, expected 1"))?;
    ensure(report["passed"] == false, || format!("{label}: report claims success"))?;
    let (condition, witness) = first_witness(&report, condition)
        .ok_or_else(|| format!("{label}: no failing {condition:?} check with a witness"))?;
    Ok(format!("{label} → {condition} [{witness}]"))
}

fn write_doc(dir: &std::path::Path, name: &str, space: ConvexCell, cells: Vec<ConvexCell>) -> String {
    let doc = ComplexDocument::from_complex(&CellComplex::new(Space::Cell(space), cells), BTreeMap::new());
    let path = dir.join(name);
    std::fs::write(&path, doc.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

fn criterion_8() -> Outcome {
    for lambda in 1..=3 {
        let ok = verify_conjugation(&tor(2), &int(lambda)).map_err(|e| e.to_string())?;
        ensure(ok, || format!("verify_conjugation(Γ_tor, {lambda}) = false"))?;
    }
    let p = |x: i64| Point::from_ints(&[x]);
    let seg = |a: i64, b: i64| ConvexCell::hull(&[p(a), p(b)]);
    let v = |a: i64| ConvexCell::point(p(a));
    let dir = std::env::temp_dir().join(format!("orthocell-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let overlap = write_doc(&dir, "overlap.json", seg(-1, 1), vec![seg(-1, 1), seg(0, 1), v(-1), v(0), v(1)]);
    let missing = write_doc(&dir, "missing.json", seg(-1, 1), vec![seg(-1, 0), seg(0, 1), v(-1), v(0)]);

    let (code, clean) = cli_report(&["verify", "markov", "--dim", "2", "--lambda", "2"])?;
    ensure(code == Some(0) && clean["passed"] == true, || "uncorrupted Markov run did not pass".into())?;
    let lines = [
        expect_failure(
            "corrupted table entry",
            "(b)",
            &["verify", "markov", "--dim", "2", "--lambda", "2", "--inject-fault", "table-entry"],
        )?,
        expect_failure("overlapping interiors", "(ii)", &["verify", "cell-decomp", "--input", &overlap])?,
        expect_failure("missing boundary vertex", "(iii)", &["verify", "cell-decomp", "--input", &missing])?,
    ];
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("conjugation holds for λ = 1, 2, 3; faults detected:\n    {}", lines.join("\n    ")))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.1} s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.1} s) {why}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
