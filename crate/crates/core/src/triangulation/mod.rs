//! Ideal triangulations given as gluing tables.
//!
//! A triangulation is a list of tetrahedra with vertices labelled `0..4`.
//! Face `k` of a tetrahedron is the vertex triple `FACE_VERTICES[k]`
//! (`012, 013, 023, 123`) and a gluing sends it to a face of another (or the
//! same) tetrahedron by listing the images of its vertices in ascending order.
//! Edge and vertex identification classes, vertex links and the combinatorial
//! hypotheses of the flow are derived from that table.

mod classes;
mod links;
mod orient;
mod parse;
mod validate;

use serde::Serialize;

pub use classes::{EdgeClass, VertexClass};
pub use links::{vertex_links, LinkSummary};
pub use orient::{check_orientability, permutation_sign};
pub use parse::{parse_triangulation, TetEntry, TriangulationDoc};
pub use validate::{
    check_properly_glued, check_valence_hypothesis, validate, CheckResult, ClassViolation,
    EdgeSummary, TypeCounts, ValenceReport, ValidationReport, VertexSummary, HYPER_MIN_VALENCE,
    HYPER_MIN_VALENCE_ALL_40, IDEAL_VALENCE,
};

use crate::error::Result;
use crate::tetgeom::TetKind;

/// Vertex triples of the four faces, in file order.
pub const FACE_VERTICES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

/// Vertex pairs of the six edges. The same order is used for the six edge
/// lengths of a tetrahedron once its vertices are put in standard position.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Index into [`EDGE_VERTICES`] of the edge joining `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// Index into [`FACE_VERTICES`] of the face with the given vertex set.
pub fn face_index(vertices: [usize; 3]) -> Option<usize> {
    let mut v = vertices;
    v.sort_unstable();
    FACE_VERTICES.iter().position(|f| *f == v)
}

/// The face opposite vertex `v`.
pub fn face_opposite(v: usize) -> usize {
    3 - v
}

/// A bijection of the vertex labels `0..4`; entry `i` is the image of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPerm(pub [usize; 4]);

impl VertexPerm {
    pub fn identity() -> Self {
        VertexPerm([0, 1, 2, 3])
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0; 4];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        VertexPerm(inv)
    }

    pub fn compose(&self, first: &VertexPerm) -> VertexPerm {
        let mut out = [0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[first.0[i]];
        }
        VertexPerm(out)
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        permutation_sign(&self.0)
    }
}

/// Where one face of a tetrahedron is glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaceGluing {
    pub target: usize,
    /// Images of the source face's vertices, listed in ascending order of the source labels.
    pub images: [usize; 3],
}

impl FaceGluing {
    /// Full vertex map of the gluing of face `face`, sending the opposite vertex
    /// to the opposite vertex of the image face.
    pub fn perm(&self, face: usize) -> VertexPerm {
        let src = FACE_VERTICES[face];
        let mut p = [0; 4];
        for (i, &v) in src.iter().enumerate() {
            p[v] = self.images[i];
        }
        p[3 - face] = 6 - self.images.iter().sum::<usize>();
        VertexPerm(p)
    }

    /// Index of the face this gluing lands on.
    pub fn target_face(&self) -> usize {
        face_index(self.images).expect("image triple validated at construction")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TetSpec {
    pub index: usize,
    /// The ideal vertex, if any. Tetrahedra are of type 3-1 (one ideal vertex)
    /// or 4-0 (none).
    pub ideal_vertex: Option<usize>,
    pub gluings: [Option<FaceGluing>; 4],
}

impl TetSpec {
    pub fn kind(&self) -> TetKind {
        if self.ideal_vertex.is_some() {
            TetKind::ThreeOne
        } else {
            TetKind::FourZero
        }
    }

    pub fn is_ideal(&self, v: usize) -> bool {
        self.ideal_vertex == Some(v)
    }

    /// Local labels of the vertices in standard position: the ideal vertex
    /// first (for 3-1 tetrahedra) followed by the others in ascending order.
    pub fn standard_order(&self) -> [usize; 4] {
        match self.ideal_vertex {
            None => [0, 1, 2, 3],
            Some(iv) => {
                let mut out = [iv, 0, 0, 0];
                let mut k = 1;
                for v in 0..4 {
                    if v != iv {
                        out[k] = v;
                        k += 1;
                    }
                }
                out
            }
        }
    }

    /// Local edge slot of each edge in standard position, in [`EDGE_VERTICES`] order.
    pub fn standard_edge_slots(&self) -> [usize; 6] {
        let order = self.standard_order();
        let mut slots = [0; 6];
        for (k, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            slots[k] = edge_index(order[*a], order[*b]);
        }
        slots
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexKind {
    Ideal,
    HyperIdeal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    Ideal,
    HyperIdeal,
}

/// A parsed triangulation together with its identification classes.
#[derive(Clone, Debug)]
pub struct Triangulation {
    tets: Vec<TetSpec>,
    edge_classes: Vec<EdgeClass>,
    vertex_classes: Vec<VertexClass>,
    tet_edge_class: Vec<[usize; 6]>,
    tet_vertex_class: Vec<[usize; 4]>,
    edge_reversals: Vec<usize>,
}

impl Triangulation {
    /// Builds a triangulation from tetrahedron records, checking gluing
    /// consistency and deriving all classes.
    pub fn from_tets(tets: Vec<TetSpec>) -> Result<Self> {
        parse::check_gluings(&tets)?;
        let classes = classes::compute_classes(&tets);
        let mut tri = Triangulation {
            tets,
            edge_classes: classes.edges,
            vertex_classes: classes.vertices,
            tet_edge_class: classes.tet_edge_class,
            tet_vertex_class: classes.tet_vertex_class,
            edge_reversals: classes.reversed_edges,
        };
        links::attach_links(&mut tri, &classes.directed_edge_class);
        links::cross_check_vertex_types(&tri)?;
        Ok(tri)
    }

    pub fn tets(&self) -> &[TetSpec] {
        &self.tets
    }

    pub fn tet_count(&self) -> usize {
        self.tets.len()
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edge_classes
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.vertex_classes
    }

    /// Edge class of every local edge slot of tetrahedron `tet`.
    pub fn tet_edge_classes(&self, tet: usize) -> &[usize; 6] {
        &self.tet_edge_class[tet]
    }

    pub fn tet_vertex_classes(&self, tet: usize) -> &[usize; 4] {
        &self.tet_vertex_class[tet]
    }

    /// Edge classes of tetrahedron `tet` in standard position order.
    pub fn standard_edge_classes(&self, tet: usize) -> [usize; 6] {
        let slots = self.tets[tet].standard_edge_slots();
        let classes = &self.tet_edge_class[tet];
        slots.map(|s| classes[s])
    }

    pub fn d_max(&self) -> usize {
        self.edge_classes.iter().map(|e| e.valence).max().unwrap_or(0)
    }

    /// Ids of the ideal edge classes, ascending.
    pub fn ideal_edge_classes(&self) -> Vec<usize> {
        self.edge_classes
            .iter()
            .filter(|e| e.kind == EdgeKind::Ideal)
            .map(|e| e.id)
            .collect()
    }

    /// Ids of the hyper-ideal edge classes, ascending.
    pub fn hyper_edge_classes(&self) -> Vec<usize> {
        self.edge_classes
            .iter()
            .filter(|e| e.kind == EdgeKind::HyperIdeal)
            .map(|e| e.id)
            .collect()
    }

    /// Edge classes that are identified with themselves in reverse.
    pub fn reversed_edge_classes(&self) -> &[usize] {
        &self.edge_reversals
    }

    pub fn to_doc(&self) -> TriangulationDoc {
        parse::to_doc(&self.tets)
    }
}
