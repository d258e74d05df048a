//! The JSON document for complexes. Coordinates are reduced rational
//! strings `"p/q"`, so a document round-trips without loss.

use std::collections::BTreeMap;

use orthocell::lattes::QuotientComplex;
use orthocell::rational::{format_rational, parse_rational};
use orthocell::{CellComplex, ConvexCell, Point, Space};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEntry {
    pub id: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    /// Vertices of the orbit representative, for cells of a quotient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_key: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub schema_version: u32,
    pub ambient_dim: usize,
    pub cells: Vec<CellEntry>,
    /// `(cell id, facet id)` pairs.
    pub incidence: Vec<(usize, usize)>,
    /// Pieces of the underlying space, each given by its vertices.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub space: Vec<Vec<Vec<String>>>,
    pub metadata: BTreeMap<String, String>,
}

fn encode_point(p: &Point) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

fn encode_cell(c: &ConvexCell) -> Vec<Vec<String>> {
    c.vertices().iter().map(encode_point).collect()
}

fn decode_point(coords: &[String], n: usize) -> Result<Point, CliError> {
    if coords.len() != n {
        return Err(CliError::Input(format!("point with {} coordinates in a {n}-dimensional document", coords.len())));
    }
    let values = coords
        .iter()
        .map(|s| {
            let r = parse_rational(s).map_err(|e| CliError::Input(e.to_string()))?;
            if format_rational(&r) != *s {
                return Err(CliError::Input(format!("rational {s:?} is not in reduced p/q form")));
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Point::new(values))
}

fn decode_cell(vertices: &[Vec<String>], n: usize) -> Result<ConvexCell, CliError> {
    if vertices.is_empty() {
        return Err(CliError::Input("cell without vertices".into()));
    }
    let pts = vertices.iter().map(|v| decode_point(v, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(ConvexCell::hull(&pts))
}

impl ComplexDocument {
    fn from_cells<'a>(
        ambient_dim: usize,
        cells: impl IntoIterator<Item = (&'a ConvexCell, Option<&'a ConvexCell>)>,
        space: Option<&Space>,
        metadata: BTreeMap<String, String>,
    ) -> Self {
        let cells: Vec<(&ConvexCell, Option<&ConvexCell>)> = cells.into_iter().collect();
        let ids: BTreeMap<&ConvexCell, usize> = cells.iter().enumerate().map(|(i, (c, _))| (*c, i)).collect();
        let mut incidence = Vec::new();
        for (i, (c, _)) in cells.iter().enumerate() {
            if c.dim() == 0 {
                continue;
            }
            for f in c.facet_cells().expect("positive dimension") {
                if let Some(&j) = ids.get(&f) {
                    incidence.push((i, j));
                }
            }
        }
        let entries = cells
            .iter()
            .enumerate()
            .map(|(id, (c, rep))| CellEntry {
                id,
                dim: c.dim(),
                vertices: encode_cell(c),
                orbit_key: rep.map(encode_cell),
            })
            .collect();
        let space = space.map(|s| s.pieces().iter().map(encode_cell).collect()).unwrap_or_default();
        Self { schema_version: SCHEMA_VERSION, ambient_dim, cells: entries, incidence, space, metadata }
    }

    pub fn from_complex(d: &CellComplex, metadata: BTreeMap<String, String>) -> Self {
        Self::from_cells(d.ambient_dim(), d.cells().iter().map(|c| (c, None)), Some(d.space()), metadata)
    }

    /// Cells with no recorded space, e.g. `K°_d`.
    pub fn from_cell_list(ambient_dim: usize, cells: &[ConvexCell], metadata: BTreeMap<String, String>) -> Self {
        Self::from_cells(ambient_dim, cells.iter().map(|c| (c, None)), None, metadata)
    }

    /// Every cell over `Q`, tagged with the vertices of its orbit
    /// representative.
    pub fn from_quotient(q: &QuotientComplex, metadata: BTreeMap<String, String>) -> Self {
        let complex = q.complex();
        let reps: Vec<(&ConvexCell, Option<&ConvexCell>)> =
            complex.cells().iter().map(|c| (c, q.class_of(c).map(|k| &q.cells()[k].representative))).collect();
        Self::from_cells(complex.ambient_dim(), reps, Some(complex.space()), metadata)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Structural checks: schema version, ids, dimensions and reduced
    /// rational strings.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!("unsupported schema version {}", self.schema_version)));
        }
        for (i, c) in self.cells.iter().enumerate() {
            if c.id != i {
                return Err(CliError::Input(format!("cell at position {i} has id {}", c.id)));
            }
            let cell = decode_cell(&c.vertices, self.ambient_dim)?;
            if cell.dim() != c.dim {
                return Err(CliError::Input(format!(
                    "cell {i} is declared {}-dimensional but spans {}",
                    c.dim,
                    cell.dim()
                )));
            }
            if let Some(key) = &c.orbit_key {
                decode_cell(key, self.ambient_dim)?;
            }
        }
        if let Some(&(a, b)) = self.incidence.iter().find(|(a, b)| *a >= self.cells.len() || *b >= self.cells.len()) {
            return Err(CliError::Input(format!("incidence ({a}, {b}) refers to a missing cell")));
        }
        for piece in &self.space {
            decode_cell(piece, self.ambient_dim)?;
        }
        Ok(())
    }

    pub fn cells(&self) -> Result<Vec<ConvexCell>, CliError> {
        self.cells.iter().map(|c| decode_cell(&c.vertices, self.ambient_dim)).collect()
    }

    /// The complex described by the document. Without a recorded space the
    /// convex hull of all vertices is used.
    pub fn to_complex(&self) -> Result<CellComplex, CliError> {
        let cells = self.cells()?;
        let space = match self.space.len() {
            0 => {
                let pts: Vec<Point> = cells.iter().flat_map(|c| c.vertices().iter().cloned()).collect();
                if pts.is_empty() {
                    return Err(CliError::Input("document has no cells".into()));
                }
                Space::Cell(ConvexCell::hull(&pts))
            }
            1 => Space::Cell(decode_cell(&self.space[0], self.ambient_dim)?),
            _ => Space::Union(self.space.iter().map(|p| decode_cell(p, self.ambient_dim)).collect::<Result<_, _>>()?),
        };
        Ok(CellComplex::new(space, cells))
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use orthocell::symmetric::build_k_standard;

    #[test]
    fn round_trip() {
        let k = build_k_standard(2).unwrap();
        let doc = ComplexDocument::from_complex(&k, BTreeMap::from([("kind".into(), "k".into())]));
        assert_eq!(doc.cells.len(), 33);
        let back = ComplexDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_complex().unwrap(), k);
        // Each triangle has three facets and each edge two endpoints.
        assert_eq!(doc.incidence.len(), 8 * 3 + 16 * 2);
    }

    #[test]
    fn rejects_unreduced_rationals() {
        let mut doc = ComplexDocument::from_complex(&build_k_standard(1).unwrap(), BTreeMap::new());
        doc.cells[0].vertices[0][0] = "2/2".into();
        assert!(matches!(ComplexDocument::from_json(&doc.to_json()), Err(CliError::Input(_))));
    }
}
