use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::classes::directed_slot;
use super::{permutation_sign, Triangulation, VertexKind, FACE_VERTICES};
use crate::error::{Error, Result};

/// Combinatorics of the link surface of one vertex class.
///
/// The link is assembled from one triangle per corner in the class; two
/// triangles share an edge when the faces they sit in are glued, and link
/// vertices are the classes of edge ends at the vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinkSummary {
    pub triangles: usize,
    pub edges: usize,
    pub vertices: usize,
    pub boundary_edges: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub closed: bool,
    /// Genus of a closed orientable link.
    pub genus: Option<u32>,
}

impl LinkSummary {
    pub fn is_torus(&self) -> bool {
        self.closed && self.orientable && self.euler_characteristic == 0
    }

    pub fn is_sphere(&self) -> bool {
        self.closed && self.euler_characteristic == 2
    }
}

/// The three labels other than `v`, ascending.
fn others(v: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for w in 0..4 {
        if w != v {
            out[k] = w;
            k += 1;
        }
    }
    out
}

pub(super) fn attach_links(tri: &mut Triangulation, directed_edge_class: &[usize]) {
    let summaries: Vec<LinkSummary> = (0..tri.vertex_classes.len())
        .map(|id| link_of(tri, id, directed_edge_class))
        .collect();
    for (class, summary) in tri.vertex_classes.iter_mut().zip(summaries) {
        class.link = summary;
    }
}

fn link_of(tri: &Triangulation, class_id: usize, directed_edge_class: &[usize]) -> LinkSummary {
    let members = &tri.vertex_classes[class_id].members;
    let triangles = members.len();
    let mut glued_sides = 0;
    let mut boundary_edges = 0;
    let mut ends = BTreeSet::new();
    for &(t, v) in members {
        for (face, verts) in FACE_VERTICES.iter().enumerate() {
            if !verts.contains(&v) {
                continue;
            }
            if tri.tets[t].gluings[face].is_some() {
                glued_sides += 1;
            } else {
                boundary_edges += 1;
            }
        }
        for w in others(v) {
            ends.insert(directed_edge_class[directed_slot(t, v, w)]);
        }
    }
    let edges = glued_sides / 2 + boundary_edges;
    let vertices = ends.len();
    let chi = vertices as i64 - edges as i64 + triangles as i64;
    let orientable = link_orientable(tri, class_id);
    let closed = boundary_edges == 0;
    let genus = (closed && orientable && chi <= 2).then(|| ((2 - chi) / 2) as u32);
    LinkSummary {
        triangles,
        edges,
        vertices,
        boundary_edges,
        euler_characteristic: chi,
        orientable,
        closed,
        genus,
    }
}

/// Breadth-first sign propagation over the link triangles. Adjacent
/// triangles must be glued by an orientation-reversing map of their sorted
/// vertex lists.
fn link_orientable(tri: &Triangulation, class_id: usize) -> bool {
    let members = &tri.vertex_classes[class_id].members;
    let index_of = |t: usize, v: usize| members.binary_search(&(t, v)).ok();
    let mut sign = vec![0i32; members.len()];
    let mut queue = VecDeque::new();
    for start in 0..members.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            let (t, v) = members[i];
            for (face, verts) in FACE_VERTICES.iter().enumerate() {
                if !verts.contains(&v) {
                    continue;
                }
                let Some(g) = tri.tets[t].gluings[face] else { continue };
                let p = g.perm(face);
                let (t2, v2) = (g.target, p.apply(v));
                let src = others(v);
                let dst = others(v2);
                let mut q = [0; 3];
                for (k, &w) in src.iter().enumerate() {
                    q[k] = dst.iter().position(|&d| d == p.apply(w)).expect("bijection");
                }
                let want = -sign[i] * permutation_sign(&q);
                let j = index_of(t2, v2).expect("glued corner belongs to the same class");
                if sign[j] == 0 {
                    sign[j] = want;
                    queue.push_back(j);
                } else if sign[j] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// Vertex types are declared in the file; check them against the link
/// topology. Sphere and non-orientable links are left for validation to report.
pub(super) fn cross_check_vertex_types(tri: &Triangulation) -> Result<()> {
    for class in &tri.vertex_classes {
        let link = &class.link;
        if !link.closed {
            continue;
        }
        match class.kind {
            VertexKind::Ideal if !link.is_torus() => {
                return Err(Error::Consistency(format!(
                    "vertex class {} is declared ideal but its link has Euler characteristic {}{}",
                    class.id,
                    link.euler_characteristic,
                    if link.orientable { "" } else { " and is non-orientable" }
                )));
            }
            VertexKind::HyperIdeal if link.euler_characteristic == 0 => {
                return Err(Error::Consistency(format!(
                    "vertex class {} is declared hyper-ideal but its link has Euler characteristic 0",
                    class.id
                )));
            }
            _ => {}
        }
    }
    Ok(())
}

/// Link summaries of all vertex classes; fails on the first link that is
/// not a closed surface.
pub fn vertex_links(tri: &Triangulation) -> Result<Vec<LinkSummary>> {
    tri.vertex_classes
        .iter()
        .map(|c| {
            if c.link.closed {
                Ok(c.link.clone())
            } else {
                Err(Error::NonClosedLink {
                    vertex_class: c.id,
                    boundary_edges: c.link.boundary_edges,
                })
            }
        })
        .collect()
}
