//! Writers for complex documents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use orthocell::rational::to_decimal;
use orthocell::Point;

use crate::document::ComplexDocument;
use crate::error::CliError;

pub const DEFAULT_PRECISION: usize = 12;

pub trait Exporter: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn export(&self, doc: &ComplexDocument, precision: usize) -> Result<String, CliError>;
}

/// The lossless JSON document itself.
pub struct JsonExporter;

impl Exporter for JsonExporter {
    fn name(&self) -> &'static str {
        "json"
    }

    fn describe(&self) -> &'static str {
        "lossless JSON document with p/q coordinates"
    }

    fn export(&self, doc: &ComplexDocument, _precision: usize) -> Result<String, CliError> {
        Ok(doc.to_json() + "\n")
    }
}

/// OFF mesh of the top-dimensional cells, each triangulated into simplices.
/// Coordinates are rounded decimals and padded to three.
pub struct OffExporter;

impl Exporter for OffExporter {
    fn name(&self) -> &'static str {
        "off"
    }

    fn describe(&self) -> &'static str {
        "OFF mesh of the top-dimensional simplices (lossy decimals, ambient dimension ≤ 3)"
    }

    fn export(&self, doc: &ComplexDocument, precision: usize) -> Result<String, CliError> {
        if doc.ambient_dim > 3 {
            return Err(CliError::Usage(format!("OFF needs ambient dimension ≤ 3, got {}", doc.ambient_dim)));
        }
        let cells = doc.cells()?;
        let top = doc.top_dim().unwrap_or(0);

        let vertices: BTreeSet<Point> = cells.iter().flat_map(|c| c.vertices().iter().cloned()).collect();
        let index: BTreeMap<&Point, usize> = vertices.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let mut faces: Vec<Vec<usize>> = Vec::new();
        if top > 0 {
            for c in cells.iter().filter(|c| c.dim() == top) {
                for s in c.simplices() {
                    faces.push(s.iter().map(|p| index[p]).collect());
                }
            }
        }
        let edges: BTreeSet<(usize, usize)> = faces
            .iter()
            .flat_map(|f| {
                f.iter().enumerate().flat_map(move |(a, &i)| f[a + 1..].iter().map(move |&j| (i.min(j), i.max(j))))
            })
            .collect();

        let mut out = String::new();
        writeln!(out, "OFF").unwrap();
        writeln!(out, "{} {} {}", vertices.len(), faces.len(), edges.len()).unwrap();
        for p in &vertices {
            let mut coords: Vec<String> = p.coords().iter().map(|x| to_decimal(x, precision)).collect();
            coords.resize(3, to_decimal(&orthocell::rational::zero(), precision));
            writeln!(out, "{}", coords.join(" ")).unwrap();
        }
        for f in &faces {
            let ids: Vec<String> = f.iter().map(ToString::to_string).collect();
            writeln!(out, "{} {}", f.len(), ids.join(" ")).unwrap();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use orthocell::symmetric::build_k_standard;

    #[test]
    fn off_of_k1() {
        let doc = ComplexDocument::from_complex(&build_k_standard(1).unwrap(), BTreeMap::new());
        let off = OffExporter.export(&doc, 2).unwrap();
        assert_eq!(off, "OFF\n3 2 2\n-1.00 0.00 0.00\n0.00 0.00 0.00\n1.00 0.00 0.00\n2 0 1\n2 1 2\n");
    }
}
