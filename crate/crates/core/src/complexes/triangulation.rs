use serde::{Deserialize, Serialize};

use super::manifest::{GluingRecord, Manifest, Metadata};
use super::perm::Perm4;
use super::ComplexError;
use crate::sixj::EDGE_VERTICES;

/// Face `face` of `tet` is glued to face `to_face = perm(face)` of `to_tet`,
/// vertex `v` going to `perm(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub to_tet: usize,
    pub perm: Perm4,
}

impl Gluing {
    pub fn to_face(&self) -> usize {
        self.perm.apply(self.face)
    }
}

/// Edge slot `slot` (0-based, `a1..a6`) of tetrahedron `tet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSlot {
    pub tet: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub id: usize,
    /// Members in cyclic order around the edge, starting from the lowest.
    pub members: Vec<EdgeSlot>,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Interior,
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    pub id: usize,
    /// `(tet, vertex)` corners, sorted.
    pub corners: Vec<(usize, usize)>,
    pub kind: VertexKind,
    pub link_euler: i64,
}

/// A closed, orientable 3-pseudo-manifold triangulation whose vertex links
/// are spheres (interior vertices) or tori (ideal vertices).
#[derive(Clone, Debug, PartialEq)]
pub struct Triangulation {
    name: Option<String>,
    adj: Vec<[(usize, Perm4); 4]>,
    metadata: Option<Metadata>,
    edges: Vec<EdgeClass>,
    edge_of: Vec<[usize; 6]>,
    vertices: Vec<VertexClass>,
    vertex_of: Vec<[usize; 4]>,
    components: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl Triangulation {
    /// The triangulation with no tetrahedra.
    pub fn empty() -> Self {
        Triangulation {
            name: Some("empty".into()),
            adj: Vec::new(),
            metadata: None,
            edges: Vec::new(),
            edge_of: Vec::new(),
            vertices: Vec::new(),
            vertex_of: Vec::new(),
            components: 0,
        }
    }

    pub fn parse_manifest(text: &str) -> Result<Self, ComplexError> {
        Self::from_manifest(&Manifest::from_json(text)?)
    }

    pub fn from_manifest(m: &Manifest) -> Result<Self, ComplexError> {
        if m.tet_count == 0 {
            return Err(ComplexError::NoTetrahedra);
        }
        let mut gluings = Vec::with_capacity(m.gluings.len());
        for g in &m.gluings {
            check_index("tet", g.tet, m.tet_count)?;
            check_index("to_tet", g.to_tet, m.tet_count)?;
            check_index("face", g.face, 4)?;
            check_index("to_face", g.to_face, 4)?;
            let perm = Perm4::from_face_map(g.face, g.to_face, g.perm).ok_or_else(|| {
                ComplexError::MalformedPermutation {
                    tet: g.tet,
                    face: g.face,
                    detail: format!(
                        "{:?} is not a bijection onto the vertices of face {}",
                        g.perm, g.to_face
                    ),
                }
            })?;
            gluings.push(Gluing {
                tet: g.tet,
                face: g.face,
                to_tet: g.to_tet,
                perm,
            });
        }
        Self::from_gluings(m.tet_count, &gluings, m.name.clone(), m.metadata.clone())
    }

    /// Builds and validates a triangulation. Each face pairing may be given
    /// from one side or from both; in the latter case the two must be inverse.
    pub fn from_gluings(
        tet_count: usize,
        gluings: &[Gluing],
        name: Option<String>,
        metadata: Option<Metadata>,
    ) -> Result<Self, ComplexError> {
        let mut adj: Vec<[Option<(usize, Perm4)>; 4]> = vec![[None; 4]; tet_count];
        let mut explicit = vec![[false; 4]; tet_count];
        for g in gluings {
            check_index("tet", g.tet, tet_count)?;
            check_index("to_tet", g.to_tet, tet_count)?;
            check_index("face", g.face, 4)?;
            let (t, f, t2, f2) = (g.tet, g.face, g.to_tet, g.to_face());
            if (t, f) == (t2, f2) {
                return Err(ComplexError::SelfGluedFace { tet: t, face: f });
            }
            let inv = g.perm.inverse();
            match adj[t][f] {
                None => {}
                Some(existing) if existing == (t2, g.perm) && !explicit[t][f] => {
                    explicit[t][f] = true;
                    continue;
                }
                Some((et, ep)) => {
                    if !explicit[t][f] && (et, ep.apply(f)) == (t2, f2) {
                        return Err(ComplexError::NonInvolutive { tet: t, face: f });
                    }
                    return Err(ComplexError::DuplicateGluing { tet: t, face: f });
                }
            }
            if let Some((et, ep)) = adj[t2][f2] {
                if (et, ep.apply(f2)) == (t, f) {
                    return Err(ComplexError::NonInvolutive { tet: t2, face: f2 });
                }
                return Err(ComplexError::DuplicateGluing { tet: t2, face: f2 });
            }
            adj[t][f] = Some((t2, g.perm));
            explicit[t][f] = true;
            adj[t2][f2] = Some((t, inv));
        }
        let mut full = Vec::with_capacity(tet_count);
        for (t, faces) in adj.iter().enumerate() {
            let mut row = [(0, Perm4::IDENTITY); 4];
            for f in 0..4 {
                row[f] = faces[f].ok_or(ComplexError::UnpairedFace { tet: t, face: f })?;
            }
            full.push(row);
        }
        Self::from_adjacency(full, name, metadata)
    }

    fn from_adjacency(
        adj: Vec<[(usize, Perm4); 4]>,
        name: Option<String>,
        metadata: Option<Metadata>,
    ) -> Result<Self, ComplexError> {
        let mut tri = Triangulation {
            name,
            adj,
            metadata,
            edges: Vec::new(),
            edge_of: Vec::new(),
            vertices: Vec::new(),
            vertex_of: Vec::new(),
            components: 0,
        };
        tri.build_vertices()?;
        tri.check_orientable()?;
        tri.build_edges()?;
        Ok(tri)
    }

    fn build_vertices(&mut self) -> Result<(), ComplexError> {
        let n = self.tet_count();
        let corner = |t: usize, v: usize| 4 * t + v;
        let mut uf = UnionFind::new(4 * n);
        // link vertices: directed tet edges (t, v -> w)
        let link_vertex = |t: usize, v: usize, w: usize| 16 * t + 4 * v + w;
        let mut link_uf = UnionFind::new(16 * n);
        let mut tets = UnionFind::new(n);
        for t in 0..n {
            for f in 0..4 {
                let (t2, p) = self.adj[t][f];
                tets.union(t, t2);
                for v in (0..4).filter(|&v| v != f) {
                    uf.union(corner(t, v), corner(t2, p.apply(v)));
                    for w in (0..4).filter(|&w| w != f && w != v) {
                        link_uf.union(
                            link_vertex(t, v, w),
                            link_vertex(t2, p.apply(v), p.apply(w)),
                        );
                    }
                }
            }
        }
        self.components = (0..n).filter(|&t| tets.find(t) == t).count();

        let mut class_of_root = vec![usize::MAX; 4 * n];
        self.vertex_of = vec![[0; 4]; n];
        let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
        for t in 0..n {
            for v in 0..4 {
                let root = uf.find(corner(t, v));
                if class_of_root[root] == usize::MAX {
                    class_of_root[root] = classes.len();
                    classes.push(Vec::new());
                }
                let id = class_of_root[root];
                classes[id].push((t, v));
                self.vertex_of[t][v] = id;
            }
        }

        self.vertices = Vec::with_capacity(classes.len());
        for (id, corners) in classes.into_iter().enumerate() {
            let faces = corners.len() as i64;
            let mut link_roots: Vec<usize> = corners
                .iter()
                .flat_map(|&(t, v)| (0..4).filter(move |&w| w != v).map(move |w| (t, v, w)))
                .map(|(t, v, w)| link_uf.find(link_vertex(t, v, w)))
                .collect();
            link_roots.sort_unstable();
            link_roots.dedup();
            let chi = link_roots.len() as i64 - 3 * faces / 2 + faces;
            if !self.link_orientable(&corners) {
                return Err(ComplexError::NonOrientableLink { vertex: id });
            }
            let kind = match chi {
                2 => VertexKind::Interior,
                0 => VertexKind::Ideal,
                _ => return Err(ComplexError::BadLinkEuler { vertex: id, chi }),
            };
            self.vertices.push(VertexClass {
                id,
                corners,
                kind,
                link_euler: chi,
            });
        }
        Ok(())
    }

    fn link_orientable(&self, corners: &[(usize, usize)]) -> bool {
        let mut sign = std::collections::HashMap::with_capacity(corners.len());
        sign.insert(corners[0], 1i8);
        let mut stack = vec![corners[0]];
        while let Some((t, v)) = stack.pop() {
            let s = sign[&(t, v)];
            for f in (0..4).filter(|&f| f != v) {
                let (t2, p) = self.adj[t][f];
                let want = -s * p.sign();
                match sign.get(&(t2, p.apply(v))) {
                    Some(&have) if have != want => return false,
                    Some(_) => {}
                    None => {
                        sign.insert((t2, p.apply(v)), want);
                        stack.push((t2, p.apply(v)));
                    }
                }
            }
        }
        true
    }

    fn check_orientable(&self) -> Result<(), ComplexError> {
        let n = self.tet_count();
        let mut orient = vec![0i8; n];
        for start in 0..n {
            if orient[start] != 0 {
                continue;
            }
            orient[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for f in 0..4 {
                    let (t2, p) = self.adj[t][f];
                    let want = -orient[t] * p.sign();
                    if orient[t2] == 0 {
                        orient[t2] = want;
                        stack.push(t2);
                    } else if orient[t2] != want {
                        return Err(ComplexError::NonOrientable);
                    }
                }
            }
        }
        Ok(())
    }

    fn build_edges(&mut self) -> Result<(), ComplexError> {
        let n = self.tet_count();
        const UNSET: usize = usize::MAX;
        self.edge_of = vec![[UNSET; 6]; n];
        self.edges.clear();
        for t in 0..n {
            for (slot, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
                if self.edge_of[t][slot] != UNSET {
                    continue;
                }
                let id = self.edges.len();
                let mut members = Vec::new();
                for (tt, a, b) in self.edge_walk(t, i, j) {
                    let s = crate::sixj::slot_of(a, b);
                    if self.edge_of[tt][s] != UNSET {
                        return Err(ComplexError::InvalidEdge { tet: tt, slot: s });
                    }
                    self.edge_of[tt][s] = id;
                    members.push(EdgeSlot { tet: tt, slot: s });
                }
                self.edges.push(EdgeClass { id, members });
            }
        }
        Ok(())
    }

    /// Wedges around the edge `(i, j)` of `tet`, as `(tet, i, j)` in cyclic
    /// order, crossing faces towards the first remaining vertex.
    fn edge_walk(&self, tet: usize, i: usize, j: usize) -> Vec<(usize, usize, usize)> {
        let mut rest = (0..4).filter(|&x| x != i && x != j);
        let (k, l) = (rest.next().unwrap(), rest.next().unwrap());
        let start = (tet, i, j, k, l);
        let mut cur = start;
        let mut out = Vec::new();
        loop {
            let (t, i, j, k, l) = cur;
            out.push((t, i, j));
            let (t2, p) = self.adj[t][k];
            cur = (t2, p.apply(i), p.apply(j), p.apply(l), p.apply(k));
            if cur == start {
                return out;
            }
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn metadata(&self) -> Option<&Metadata> {
        self.metadata.as_ref()
    }

    pub fn with_metadata(mut self, metadata: Option<Metadata>) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn tet_count(&self) -> usize {
        self.adj.len()
    }

    /// The tetrahedron and permutation across face `face` of `tet`.
    pub fn neighbor(&self, tet: usize, face: usize) -> (usize, Perm4) {
        self.adj[tet][face]
    }

    /// Each face pairing once, from its lower `(tet, face)` side.
    pub fn gluings(&self) -> Vec<Gluing> {
        let mut out = Vec::with_capacity(2 * self.tet_count());
        for (t, row) in self.adj.iter().enumerate() {
            for (f, &(t2, p)) in row.iter().enumerate() {
                if (t, f) < (t2, p.apply(f)) {
                    out.push(Gluing {
                        tet: t,
                        face: f,
                        to_tet: t2,
                        perm: p,
                    });
                }
            }
        }
        out
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn edge_class_of(&self, tet: usize, slot: usize) -> usize {
        self.edge_of[tet][slot]
    }

    /// Edge class ids of the six slots of `tet`.
    pub fn tet_edges(&self, tet: usize) -> [usize; 6] {
        self.edge_of[tet]
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.vertices
    }

    pub fn vertex_class_of(&self, tet: usize, vertex: usize) -> usize {
        self.vertex_of[tet][vertex]
    }

    pub fn classify_vertices(&self) -> Vec<VertexKind> {
        self.vertices.iter().map(|v| v.kind).collect()
    }

    pub fn interior_vertex_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Interior)
            .count()
    }

    pub fn ideal_vertex_count(&self) -> usize {
        self.vertices.len() - self.interior_vertex_count()
    }

    /// True when every vertex is interior.
    pub fn is_closed(&self) -> bool {
        self.ideal_vertex_count() == 0
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// `V - E + F - T` over all cells.
    pub fn euler_characteristic(&self) -> i64 {
        let t = self.tet_count() as i64;
        self.vertices.len() as i64 - self.edges.len() as i64 + 2 * t - t
    }

    pub fn to_manifest(&self) -> Manifest {
        Manifest {
            name: self.name.clone(),
            tet_count: self.tet_count(),
            gluings: self
                .gluings()
                .into_iter()
                .map(|g| GluingRecord {
                    tet: g.tet,
                    face: g.face,
                    to_tet: g.to_tet,
                    to_face: g.to_face(),
                    perm: g.perm.face_images(g.face),
                })
                .collect(),
            metadata: self.metadata.clone(),
        }
    }

    /// Disjoint union; tetrahedra of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let shift = self.tet_count();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row.map(|(t, p)| (t + shift, p))));
        let name = match (self.name(), other.name()) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        let metadata = match (&self.metadata, &other.metadata) {
            (Some(a), Some(b)) => Some(Metadata {
                b0_closed: a.b0_closed.zip(b.b0_closed).map(|(x, y)| x + y),
                b2_gf2: a.b2_gf2.zip(b.b2_gf2).map(|(x, y)| x + y),
                gromov_norm: a.gromov_norm.zip(b.gromov_norm).map(|(x, y)| x + y),
                volume_hint: None,
                expected_tv_description: None,
            }),
            _ => None,
        };
        Self::from_adjacency(adj, name, metadata).expect("union of valid triangulations is valid")
    }

    /// Renumbers tetrahedra: old tet `t` becomes `order[t]`.
    pub fn relabel(&self, order: &[usize]) -> Result<Triangulation, ComplexError> {
        let n = self.tet_count();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(ComplexError::IndexOutOfRange {
                what: "relabeling length",
                index: order.len(),
                limit: n,
            });
        }
        for &x in order {
            check_index("relabeled tet", x, n)?;
            if std::mem::replace(&mut seen[x], true) {
                return Err(ComplexError::Parse(format!("relabeling repeats tet {x}")));
            }
        }
        let mut adj = vec![[(0, Perm4::IDENTITY); 4]; n];
        for (t, row) in self.adj.iter().enumerate() {
            adj[order[t]] = row.map(|(t2, p)| (order[t2], p));
        }
        Self::from_adjacency(adj, self.name.clone(), self.metadata.clone())
    }
}

fn check_index(what: &'static str, index: usize, limit: usize) -> Result<(), ComplexError> {
    if index >= limit {
        return Err(ComplexError::IndexOutOfRange { what, index, limit });
    }
    Ok(())
}
