use super::triangulation::{Triangulation, VertexKind};
use super::ComplexError;

/// A shipped triangulation and the checks it must pass when loaded.
#[derive(Clone, Copy, Debug)]
pub struct BuiltinInfo {
    pub name: &'static str,
    pub description: &'static str,
    source: &'static str,
    edge_classes: usize,
    interior_vertices: usize,
    ideal_vertices: usize,
    /// `(b0_closed, b2)`
    betti: (u32, u32),
}

pub const BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo {
        name: "s3_2tet",
        description: "3-sphere, two tetrahedra, one vertex",
        source: include_str!("../../data/s3_2tet.json"),
        edge_classes: 3,
        interior_vertices: 1,
        ideal_vertices: 0,
        betti: (1, 0),
    },
    BuiltinInfo {
        name: "s3_3tet",
        description: "3-sphere, three tetrahedra, one vertex",
        source: include_str!("../../data/s3_3tet.json"),
        edge_classes: 4,
        interior_vertices: 1,
        ideal_vertices: 0,
        betti: (1, 0),
    },
    BuiltinInfo {
        name: "s2xs1",
        description: "S2 x S1, two tetrahedra, one vertex",
        source: include_str!("../../data/s2xs1.json"),
        edge_classes: 3,
        interior_vertices: 1,
        ideal_vertices: 0,
        betti: (1, 1),
    },
    BuiltinInfo {
        name: "t2xi",
        description: "T2 x I, three tetrahedra, two ideal vertices",
        source: include_str!("../../data/t2xi.json"),
        edge_classes: 3,
        interior_vertices: 0,
        ideal_vertices: 2,
        betti: (0, 1),
    },
    BuiltinInfo {
        name: "fig8",
        description: "figure-eight knot complement, two ideal tetrahedra",
        source: include_str!("../../data/fig8.json"),
        edge_classes: 2,
        interior_vertices: 0,
        ideal_vertices: 1,
        betti: (0, 0),
    },
    BuiltinInfo {
        name: "s3_2tet_s2xs1",
        description: "disjoint union of s3_2tet and s2xs1",
        source: include_str!("../../data/s3_2tet_s2xs1.json"),
        edge_classes: 6,
        interior_vertices: 2,
        ideal_vertices: 0,
        betti: (2, 1),
    },
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|b| b.name)
}

impl BuiltinInfo {
    pub fn manifest_text(&self) -> &'static str {
        self.source
    }

    /// Parses the shipped manifest and checks its recorded invariants.
    pub fn load(&self) -> Result<Triangulation, ComplexError> {
        let tri = Triangulation::parse_manifest(self.source)?;
        let fail = |detail: String| ComplexError::CensusValidation {
            name: self.name.into(),
            detail,
        };
        if tri.edge_classes().len() != self.edge_classes {
            return Err(fail(format!(
                "{} edge classes, expected {}",
                tri.edge_classes().len(),
                self.edge_classes
            )));
        }
        let kinds = tri.classify_vertices();
        let interior = kinds.iter().filter(|&&k| k == VertexKind::Interior).count();
        if (interior, kinds.len() - interior) != (self.interior_vertices, self.ideal_vertices) {
            return Err(fail(format!(
                "{interior} interior / {} ideal vertices",
                kinds.len() - interior
            )));
        }
        let betti = tri.betti_gf2()?;
        if (betti.b0_closed, betti.b2) != self.betti {
            return Err(fail(format!(
                "betti (b0_closed, b2) = ({}, {})",
                betti.b0_closed, betti.b2
            )));
        }
        if let Some(meta) = tri.metadata() {
            if meta.b0_closed.is_some_and(|b| b != self.betti.0)
                || meta.b2_gf2.is_some_and(|b| b != self.betti.1)
            {
                return Err(fail(
                    "metadata Betti numbers disagree with the cell structure".into(),
                ));
            }
        }
        if tri.is_closed() && tri.euler_characteristic() != 0 {
            return Err(fail(format!(
                "Euler characteristic {}",
                tri.euler_characteristic()
            )));
        }
        Ok(tri)
    }
}

/// Loads a shipped triangulation by name.
pub fn builtin(name: &str) -> Result<Triangulation, ComplexError> {
    BUILTINS
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| ComplexError::UnknownBuiltin(name.into()))?
        .load()
}
