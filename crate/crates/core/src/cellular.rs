//! Cellular maps between decompositions, stored as per-cell tables with
//! affine witnesses, and the cellular Markov property.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::affine::AffineMap;
use crate::cell::ConvexCell;
use crate::complex::{verify_refinement, CellComplex};
use crate::report::{CheckOutcome, VerificationReport};

/// `f` restricted to each source cell `σ`: the image cell `f(σ)` and an
/// affine map agreeing with `f` on `σ`.
#[derive(Clone, Debug)]
pub struct CellularMapTable {
    pub source: CellComplex,
    pub target: CellComplex,
    pub assignment: BTreeMap<ConvexCell, (ConvexCell, AffineMap)>,
}

impl CellularMapTable {
    /// The table of a single affine map, assigning each source cell its image.
    pub fn from_affine(source: CellComplex, target: CellComplex, map: &AffineMap) -> Self {
        let assignment = source.cells().iter().map(|c| (c.clone(), (c.image(map), map.clone()))).collect();
        Self { source, target, assignment }
    }

    pub fn identity(d: &CellComplex) -> Self {
        Self::from_affine(d.clone(), d.clone(), &AffineMap::identity(d.ambient_dim()))
    }
}

/// For every source cell: an assignment exists, the witness carries the
/// cell onto the assigned target cell without collapsing dimension, and
/// the witnesses of a cell and of each of its facets agree on the facet.
pub fn verify_cellular_map(t: &CellularMapTable) -> VerificationReport {
    let mut report = VerificationReport::new("cellular map");
    let cells = t.source.cells();
    let mut assigned = CheckOutcome::new("every source cell is assigned");
    for c in cells {
        assigned.record(t.assignment.contains_key(c), || format!("{c} has no image"));
    }
    report.push(assigned);

    let onto: Vec<Option<String>> = t
        .assignment
        .par_iter()
        .map(|(sigma, (image, w))| {
            let img = sigma.image(w);
            if img.dim() != sigma.dim() {
                Some(format!("{sigma} collapses to {img}"))
            } else if img != *image {
                Some(format!("witness sends {sigma} onto {img}, not the assigned {image}"))
            } else if !t.target.contains(image) {
                Some(format!("{image} is not a target cell"))
            } else {
                None
            }
        })
        .collect();
    report.push(CheckOutcome::from_results("each cell maps homeomorphically onto its assigned cell", onto));

    let faces: Vec<Option<String>> = t
        .assignment
        .par_iter()
        .filter(|(sigma, _)| sigma.dim() > 0)
        .flat_map_iter(|(sigma, (_, w))| {
            sigma
                .facet_cells()
                .expect("positive dimension")
                .into_iter()
                .filter_map(|rho| t.assignment.get(&rho).map(|entry| (rho, entry)))
                .map(|(rho, (rho_image, v))| {
                    let agree = rho.vertices().iter().all(|x| w.apply(x) == v.apply(x));
                    (!agree || rho.image(w) != *rho_image)
                        .then(|| format!("witnesses of {sigma} and its facet {rho} disagree"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    report.push(CheckOutcome::from_results("assignments agree on shared faces", faces));
    report
}

/// `(source, target)` is a cellular Markov partition: the source refines
/// the target and the table is cellular.
pub fn verify_cellular_markov(t: &CellularMapTable) -> VerificationReport {
    let mut report = VerificationReport::new("cellular Markov partition");
    report.absorb(verify_refinement(&t.source, &t.target));
    report.absorb(verify_cellular_map(t));
    report
}
