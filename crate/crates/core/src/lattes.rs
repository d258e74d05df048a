//! Orthotopic Lattès maps `x ↦ λx` on `R^n / Γ`: the quotient complexes
//! `D0 = K_n(Q)/Γ` and `D1 = K_{n,λ}(Q)/Γ`, the induced cell map, and its
//! cellular Markov property.
//!
//! Quotient cells are orbit classes of cells of the complexes over `Q`.
//! Two cells of `K(Q)` are identified when a group element whose tile meets
//! `Q` carries one onto the other.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::affine::AffineMap;
use crate::cell::ConvexCell;
use crate::complex::{minimal_containing_cell, verify_cell_decomposition, verify_refinement, CellComplex};
use crate::crystal::{canonicalize_point, OrthotopicGroup};
use crate::error::{Error, Result};
use crate::isometry::AffineSignedIsometry;
use crate::point::Point;
use crate::rational::{int, Rational};
use crate::report::{CheckOutcome, VerificationReport};
use crate::symmetric::{build_k_orthotope, build_k_subdivided_orthotope};
use crate::symmetry::stabilizer_report;

/// An orbit class of cells of a complex over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCell {
    /// Least member in cell order; its vertex list is the orbit key.
    pub representative: ConvexCell,
    pub members: Vec<ConvexCell>,
}

impl QuotientCell {
    pub fn dim(&self) -> usize {
        self.representative.dim()
    }

    pub fn orbit_key(&self) -> &[Point] {
        self.representative.vertices()
    }
}

/// A complex over `Q` together with its orbit classes, ordered by
/// representative.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    complex: CellComplex,
    cells: Vec<QuotientCell>,
    class_of: HashMap<ConvexCell, usize>,
}

impl QuotientComplex {
    /// Partitions the cells of `complex` into orbits under `group`.
    pub fn new(group: &OrthotopicGroup, complex: CellComplex) -> Self {
        let cells = complex.cells();
        let position: HashMap<&ConvexCell, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let shell: Vec<AffineSignedIsometry> =
            group.adjacency_shell().into_iter().filter(|g| !g.is_identity()).collect();
        let links: Vec<(usize, usize)> = cells
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, c)| {
                shell
                    .iter()
                    .filter(|g| group.maps_into_domain(g, c))
                    .filter_map(|g| position.get(&c.apply_isometry(g)).map(|&j| (i, j)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut parent: Vec<usize> = (0..cells.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, j) in links {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        // Cells are sorted, so each root is the least member of its class.
        let mut by_root: BTreeMap<usize, Vec<ConvexCell>> = BTreeMap::new();
        for i in 0..cells.len() {
            let r = find(&mut parent, i);
            by_root.entry(r).or_default().push(cells[i].clone());
        }
        let mut classes: Vec<QuotientCell> =
            by_root.into_values().map(|members| QuotientCell { representative: members[0].clone(), members }).collect();
        classes.sort_by(|a, b| a.representative.cmp(&b.representative));
        let class_of =
            classes.iter().enumerate().flat_map(|(k, q)| q.members.iter().map(move |m| (m.clone(), k))).collect();
        Self { complex, cells: classes, class_of }
    }

    /// The complex over `Q` whose cells are the representatives.
    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn cells(&self) -> &[QuotientCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Index of the class containing a cell of the complex over `Q`.
    pub fn class_of(&self, c: &ConvexCell) -> Option<usize> {
        self.class_of.get(c).copied()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(QuotientCell::dim).max().unwrap_or(0)
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim() + 1];
        for c in &self.cells {
            out[c.dim()] += 1;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts_by_dim().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Indices of the top-dimensional classes.
    pub fn top_cells(&self) -> Vec<usize> {
        let d = self.dim();
        (0..self.cells.len()).filter(|&k| self.cells[k].dim() == d).collect()
    }
}

/// Checks that `qc` is a cell decomposition of `R^n / Γ`: the complex over
/// `Q` is a decomposition of `Q`, each representative projects injectively,
/// and any image `γ(σ)` whose interior meets a cell `τ` over `Q` equals `τ`.
pub fn verify_quotient(group: &OrthotopicGroup, qc: &QuotientComplex) -> VerificationReport {
    let mut report = VerificationReport::new("quotient decomposition");
    report.absorb(verify_cell_decomposition(qc.complex()));
    let cells = qc.complex().cells();
    report.absorb(stabilizer_report("each cell projects injectively", cells, &group.adjacency_shell(), 0, 0));

    let shell: Vec<AffineSignedIsometry> = group.adjacency_shell().into_iter().filter(|g| !g.is_identity()).collect();
    let domain = group.domain().to_cell();
    let results: Vec<Option<String>> = cells
        .par_iter()
        .flat_map_iter(|s| {
            shell
                .iter()
                .map(|g| {
                    let img = s.apply_isometry(g);
                    if !img.bbox_overlaps(&domain) {
                        return None;
                    }
                    cells
                        .iter()
                        .find(|t| t.bbox_overlaps(&img) && img != **t && img.relints_meet(t))
                        .map(|t| format!("{g} sends {s} onto {img}, whose interior meets {t}"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    report.push(CheckOutcome::from_results("meeting orbit images coincide", results));
    report
}

/// Checks that `d1` refines `d0` cellwise through representatives: the
/// complexes over `Q` refine, and the minimal coarser cell containing a
/// cell depends only on its class.
pub fn verify_quotient_refinement(d1: &QuotientComplex, d0: &QuotientComplex) -> VerificationReport {
    let mut report = VerificationReport::new("quotient refinement");
    report.absorb(verify_refinement(d1.complex(), d0.complex()));
    let results: Vec<Option<String>> = d1
        .cells
        .par_iter()
        .map(|q| {
            let classes: Vec<Option<usize>> = q
                .members
                .iter()
                .map(|m| minimal_containing_cell(d0.complex(), m).ok().and_then(|t| d0.class_of(&t)))
                .collect();
            let consistent = classes[0].is_some() && classes.iter().all(|c| *c == classes[0]);
            (!consistent).then(|| format!("members of [{}] lie in different coarser classes", q.representative))
        })
        .collect();
    report.push(CheckOutcome::from_results("containing classes are independent of the representative", results));
    report
}

/// Builds `D0 = K_n(Q)/Γ` and `D1 = K_{n,λ}(Q)/Γ` and verifies both as
/// decompositions of the quotient, with `D1` refining `D0`.
pub fn build_quotient_complexes(group: &OrthotopicGroup, lambda: usize) -> Result<(QuotientComplex, QuotientComplex)> {
    if lambda == 0 {
        return Err(Error::NonIntegerScale("0".into()));
    }
    let q = group.domain();
    let d0 = QuotientComplex::new(group, build_k_orthotope(q)?);
    let d1 = QuotientComplex::new(group, build_k_subdivided_orthotope(q, lambda)?);
    for r in [verify_quotient(group, &d0), verify_quotient(group, &d1), verify_quotient_refinement(&d1, &d0)] {
        if !r.passed() {
            return Err(Error::VerificationFailed(r.to_string()));
        }
    }
    Ok((d0, d1))
}

/// Whether `x ↦ λx` conjugates `Γ` into itself: `λ Σ e_i ∈ Σ Z^n` and
/// `x ↦ L x + λ t ∈ Γ` for every point generator `x ↦ L x + t`.
pub fn verify_conjugation(group: &OrthotopicGroup, lambda: &Rational) -> Result<bool> {
    if !lambda.is_integer() || !lambda.is_positive() {
        return Err(Error::NonIntegerScale(lambda.to_string()));
    }
    Ok(group.point_generators().iter().all(|g| group.is_element(&g.conjugate_by_scaling(lambda))))
}

/// One row of the cell map: `f([σ]) = [τ]` with `τ = γ⁻¹(λσ)` in `K_n(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    /// Class index in `D1`.
    pub source: usize,
    pub sigma: ConvexCell,
    /// Class index in `D0`.
    pub target: usize,
    pub tau: ConvexCell,
    pub gamma: AffineSignedIsometry,
    /// `x ↦ γ⁻¹(λx)`, which carries `σ` onto `τ`.
    pub witness: AffineMap,
}

#[derive(Clone, Debug)]
pub struct LattesMapRecord {
    pub group: OrthotopicGroup,
    pub lambda: usize,
    pub d0: QuotientComplex,
    pub d1: QuotientComplex,
    /// Indexed by `D1` class.
    pub table: Vec<TableEntry>,
}

fn witness_map(n: usize, lambda: usize, gamma: &AffineSignedIsometry) -> AffineMap {
    gamma.inverse().to_affine().compose(&AffineMap::scaling(n, &int(lambda as i64)))
}

/// Searches `elements` (whose tiles are precomputed) for the first `γ` with
/// `γ⁻¹(λσ)` a cell of `K_n(Q)`.
fn find_witness(
    d0: &QuotientComplex,
    elements: &[(AffineSignedIsometry, ConvexCell)],
    lambda: usize,
    sigma: &ConvexCell,
) -> Option<(AffineSignedIsometry, ConvexCell)> {
    let n = sigma.ambient_dim();
    let scaled = sigma.image(&AffineMap::scaling(n, &int(lambda as i64)));
    elements.iter().filter(|(_, tile)| tile.contains_cell(&scaled)).find_map(|(g, _)| {
        let tau = scaled.apply_isometry(&g.inverse());
        d0.class_of(&tau).map(|_| (g.clone(), tau))
    })
}

fn witness_elements(group: &OrthotopicGroup, lambda: usize) -> Vec<(AffineSignedIsometry, ConvexCell)> {
    group
        .shell(lambda + 1)
        .into_iter()
        .map(|g| {
            let tile = group.tile(&g).to_cell();
            (g, tile)
        })
        .collect()
}

/// Builds the quotient complexes and the table of the map induced by
/// `x ↦ λx`.
pub fn build_lattes_cell_map(group: &OrthotopicGroup, lambda: usize) -> Result<LattesMapRecord> {
    if !verify_conjugation(group, &int(lambda as i64))? {
        return Err(Error::VerificationFailed(format!("x ↦ {lambda}x does not normalize the group")));
    }
    let (d0, d1) = build_quotient_complexes(group, lambda)?;
    let elements = witness_elements(group, lambda);
    let n = group.ambient_dim();
    let table = d1
        .cells
        .par_iter()
        .enumerate()
        .map(|(source, q)| {
            let sigma = q.representative.clone();
            let (gamma, tau) = find_witness(&d0, &elements, lambda, &sigma)
                .ok_or_else(|| Error::WitnessNotFound(sigma.to_string()))?;
            let target = d0.class_of(&tau).expect("witness lies in K_n(Q)");
            let witness = witness_map(n, lambda, &gamma);
            Ok(TableEntry { source, sigma, target, tau, gamma, witness })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LattesMapRecord { group: group.clone(), lambda, d0, d1, table })
}

/// Checks (a) `D1` refines `D0` and (b) the table is a cellular map of the
/// quotients: every witness carries its representative onto a `D0` cell of
/// the recorded class, the class does not depend on the representative,
/// and faces are sent consistently. Together these give (c) the cellular
/// Markov property.
pub fn verify_markov(record: &LattesMapRecord) -> VerificationReport {
    let mut report = VerificationReport::new("cellular Markov partition");
    let (d0, d1) = (&record.d0, &record.d1);
    let mut a = verify_quotient_refinement(d1, d0);
    a.title = "(a) D1 refines D0".into();
    report.absorb(a);

    let mut entries = CheckOutcome::new("(b) every D1 cell has exactly one table entry");
    entries.record(record.table.len() == d1.len(), || format!("{} entries for {} cells", record.table.len(), d1.len()));
    for (k, e) in record.table.iter().enumerate() {
        entries.record(e.source == k && e.sigma == d1.cells[k].representative, || {
            format!("entry {k} is recorded for class {} ({})", e.source, e.sigma)
        });
    }
    report.push(entries);

    let n = record.group.ambient_dim();
    let images: Vec<Option<String>> = record
        .table
        .par_iter()
        .map(|e| {
            let expected = witness_map(n, record.lambda, &e.gamma);
            if e.witness != expected || !e.witness.is_invertible() {
                return Some(format!("witness of [{}] is not x ↦ γ⁻¹(λx) for γ = {}", e.sigma, e.gamma));
            }
            let img = e.sigma.image(&e.witness);
            match d0.class_of(&img) {
                Some(c) if c == e.target && img == e.tau && img.dim() == e.sigma.dim() => None,
                Some(c) => Some(format!(
                    "[{}] maps onto {img} in class {c}, but the table records class {}",
                    e.sigma, e.target
                )),
                None => Some(format!("[{}] maps onto {img}, which is not a cell of K_n(Q)", e.sigma)),
            }
        })
        .collect();
    report.push(CheckOutcome::from_results("(b) witnesses map representatives onto recorded cells", images));

    let elements = witness_elements(&record.group, record.lambda);
    let independence: Vec<Option<String>> = record
        .table
        .par_iter()
        .flat_map_iter(|e| {
            d1.cells[e.source]
                .members
                .iter()
                .map(|m| match find_witness(d0, &elements, record.lambda, m) {
                    Some((_, tau)) if d0.class_of(&tau) == Some(e.target) => None,
                    Some((_, tau)) => Some(format!("{m} maps to {tau} outside class {} of [{}]", e.target, e.sigma)),
                    None => Some(format!("no witness for {m}")),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    report.push(CheckOutcome::from_results("(b) the image class is independent of the representative", independence));

    let faces: Vec<Option<String>> = record
        .table
        .par_iter()
        .filter(|e| e.sigma.dim() > 0)
        .flat_map_iter(|e| {
            e.sigma
                .facet_cells()
                .expect("positive dimension")
                .into_iter()
                .map(|rho| {
                    let via_sigma = d0.class_of(&rho.image(&e.witness));
                    let own = d1.class_of(&rho).map(|k| record.table[k].target);
                    (via_sigma.is_none() || via_sigma != own).then(|| {
                        format!(
                            "facet {rho} of [{}] maps to class {via_sigma:?} but its own entry gives {own:?}",
                            e.sigma
                        )
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    report.push(CheckOutcome::from_results("(b) facets are mapped consistently", faces));
    report
}

/// For each top class of `D0`, the number of top classes of `D1` mapped
/// onto it.
pub fn degree_count(record: &LattesMapRecord) -> BTreeMap<usize, usize> {
    let mut out: BTreeMap<usize, usize> = record.d0.top_cells().into_iter().map(|k| (k, 0)).collect();
    for k in record.d1.top_cells() {
        *out.entry(record.table[k].target).or_insert(0) += 1;
    }
    out
}

/// `M[c][c']`: number of top `D1` classes inside the top `D0` class `c`
/// mapped onto `c'`, rows and columns in the order of `D0.top_cells()`.
pub fn subdivision_matrix(record: &LattesMapRecord) -> Vec<Vec<usize>> {
    let top = record.d0.top_cells();
    let pos: HashMap<usize, usize> = top.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut m = vec![vec![0; top.len()]; top.len()];
    for k in record.d1.top_cells() {
        let sigma = &record.d1.cells[k].representative;
        let Some(row) = record
            .d0
            .complex()
            .cells()
            .iter()
            .find(|t| t.dim() == sigma.dim() && t.contains_cell(sigma))
            .and_then(|t| record.d0.class_of(t))
        else {
            continue;
        };
        m[pos[&row]][pos[&record.table[k].target]] += 1;
    }
    m
}

/// `f(h(x))` as a point of `Q`: locate the lowest-dimensional `D1` cell
/// containing the representative of `x` and apply its witness.
pub fn evaluate(record: &LattesMapRecord, x: &Point) -> Point {
    let group = &record.group;
    let y = canonicalize_point(group, x);
    let cell = record
        .d1
        .complex()
        .cells()
        .iter()
        .filter(|c| c.contains_point(&y))
        .min_by_key(|c| c.dim())
        .expect("the complex covers Q");
    let class = record.d1.class_of(cell).expect("member cell");
    let entry = &record.table[class];
    // Move y into the representative of its class before applying the witness.
    let to_rep = group
        .adjacency_shell()
        .into_iter()
        .find(|g| cell.apply_isometry(g) == entry.sigma)
        .unwrap_or_else(|| AffineSignedIsometry::identity(group.ambient_dim()));
    canonicalize_point(group, &entry.witness.apply(&to_rep.apply(&y)))
}

/// Whether `λ > 1`, so that `x ↦ λx` is expanding.
pub fn is_expanding(lambda: usize) -> bool {
    lambda > 1
}

/// The index of the class of the origin in `D0`, a fixed point of `f`.
pub fn origin_class(record: &LattesMapRecord) -> Option<usize> {
    let n = record.group.ambient_dim();
    record.d0.class_of(&ConvexCell::point(canonicalize_point(&record.group, &Point::origin(n))))
}
