use serde::{Deserialize, Serialize};

use super::triangulation::Triangulation;
use super::ComplexError;
use crate::sixj::{EDGE_VERTICES, FACE_SLOTS};

/// Betti data used by the `2^{b2-b0}` normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiNumbers {
    pub b0_closed: u32,
    pub b2: u32,
    /// True when computed from the cell structure, false when taken from metadata.
    pub computed: bool,
}

/// Rank over GF(2) of a matrix given as bit-packed rows.
pub fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..64 * width {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) =
            (rank..rows.len()).find(|&i| rows[i].get(w).is_some_and(|x| x & bit != 0))
        else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.get(w).is_some_and(|x| x & bit != 0) {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn row(len: usize, ones: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut r = vec![0u64; len.div_ceil(64)];
    for i in ones {
        r[i / 64] ^= 1 << (i % 64);
    }
    r
}

impl Triangulation {
    /// Ranks of the cellular boundary maps `∂1, ∂2, ∂3` over GF(2).
    fn boundary_ranks(&self) -> [usize; 3] {
        let n_vertices = self.vertex_classes().len();
        let n_edges = self.edge_classes().len();
        let faces = self.gluings();
        let mut face_id = vec![[0usize; 4]; self.tet_count()];
        for (id, g) in faces.iter().enumerate() {
            face_id[g.tet][g.face] = id;
            face_id[g.to_tet][g.to_face()] = id;
        }

        let d1: Vec<Vec<u64>> = self
            .edge_classes()
            .iter()
            .map(|e| {
                let m = e.members[0];
                let (i, j) = EDGE_VERTICES[m.slot];
                row(
                    n_vertices,
                    [
                        self.vertex_class_of(m.tet, i),
                        self.vertex_class_of(m.tet, j),
                    ],
                )
            })
            .collect();
        // slots of the face opposite each vertex
        let opposite_face = [3usize, 1, 2, 0];
        let d2: Vec<Vec<u64>> = faces
            .iter()
            .map(|g| {
                let slots = FACE_SLOTS[opposite_face.iter().position(|&v| v == g.face).unwrap()];
                row(n_edges, slots.map(|s| self.edge_class_of(g.tet, s)))
            })
            .collect();
        let d3: Vec<Vec<u64>> = (0..self.tet_count())
            .map(|t| row(faces.len(), face_id[t]))
            .collect();
        [gf2_rank(d1), gf2_rank(d2), gf2_rank(d3)]
    }

    /// `b0` (closed components) and `b2` over GF(2). Computed from the cells
    /// when every vertex is interior, otherwise read from the metadata.
    pub fn betti_gf2(&self) -> Result<BettiNumbers, ComplexError> {
        if self.is_closed() {
            let [r1, r2, r3] = self.boundary_ranks();
            let b0 = self.vertex_classes().len() - r1;
            let b2 = 2 * self.tet_count() - r2 - r3;
            return Ok(BettiNumbers {
                b0_closed: b0 as u32,
                b2: b2 as u32,
                computed: true,
            });
        }
        let meta = self.metadata();
        match (meta.and_then(|m| m.b0_closed), meta.and_then(|m| m.b2_gf2)) {
            (Some(b0_closed), Some(b2)) => Ok(BettiNumbers {
                b0_closed,
                b2,
                computed: false,
            }),
            _ => Err(ComplexError::MetadataRequired(format!(
                "{} has ideal vertices; b0_closed and b2_gf2 must be supplied",
                self.name().unwrap_or("triangulation")
            ))),
        }
    }

    /// All GF(2) Betti numbers `b0..b3` of the cell complex (ideal vertices
    /// included as points).
    pub fn cellular_betti_gf2(&self) -> [usize; 4] {
        let [r1, r2, r3] = self.boundary_ranks();
        let (v, e, f, t) = (
            self.vertex_classes().len(),
            self.edge_classes().len(),
            2 * self.tet_count(),
            self.tet_count(),
        );
        [v - r1, e - r1 - r2, f - r2 - r3, t - r3]
    }
}
