use serde::Serialize;

use super::{
    check_orientability, edge_index, EdgeKind, Triangulation, VertexKind, FACE_VERTICES,
};
use crate::tetgeom::TetKind;

/// Required valence of every ideal edge.
pub const IDEAL_VALENCE: usize = 6;
/// Minimum valence of a hyper-ideal edge.
pub const HYPER_MIN_VALENCE: usize = 11;
/// Minimum valence that suffices for a hyper-ideal edge whose incident
/// tetrahedra are all of type 4-0.
pub const HYPER_MIN_VALENCE_ALL_40: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassViolation {
    pub edge_class: Option<usize>,
    pub message: String,
}

/// Checks the matching condition on faces through an ideal vertex, and that
/// every ideal edge has valence 6.
///
/// When two 3-1 tetrahedra are glued along a face through their ideal
/// vertices, the two hyper-ideal edges leaving that face towards the opposite
/// vertex must be identified with the corresponding edges across the gluing.
pub fn check_properly_glued(tri: &Triangulation) -> Vec<ClassViolation> {
    let mut out = Vec::new();
    for (t, tet) in tri.tets().iter().enumerate() {
        let Some(iv) = tet.ideal_vertex else { continue };
        for (face, g) in tet.gluings.iter().enumerate() {
            let Some(g) = g else { continue };
            let verts = FACE_VERTICES[face];
            if !verts.contains(&iv) || tri.tets()[g.target].kind() != TetKind::ThreeOne {
                continue;
            }
            // Each glued pair is visited from both sides; report it once.
            if (g.target, g.target_face()) < (t, face) {
                continue;
            }
            let p = g.perm(face);
            let opposite = 3 - face;
            for &v in verts.iter().filter(|&&v| v != iv) {
                let here = tri.tet_edge_classes(t)[edge_index(v, opposite)];
                let there =
                    tri.tet_edge_classes(g.target)[edge_index(p.apply(v), p.apply(opposite))];
                if here != there {
                    out.push(ClassViolation {
                        edge_class: Some(here),
                        message: format!(
                            "tetrahedron {t} face {face} -> tetrahedron {}: edge {v}{opposite} is in class {here} but its partner {}{} is in class {there}",
                            g.target,
                            p.apply(v),
                            p.apply(opposite)
                        ),
                    });
                }
            }
        }
    }
    for e in tri.edge_classes() {
        if e.kind == EdgeKind::Ideal && e.valence != IDEAL_VALENCE {
            out.push(ClassViolation {
                edge_class: Some(e.id),
                message: format!(
                    "ideal edge class {} has valence {}, expected {IDEAL_VALENCE}",
                    e.id, e.valence
                ),
            });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ValenceReport {
    pub ok: bool,
    pub violations: Vec<ClassViolation>,
    /// Informational remarks that do not affect `ok`.
    pub notes: Vec<String>,
}

/// Ideal edges must have valence exactly 6 and hyper-ideal edges at least 11.
pub fn check_valence_hypothesis(tri: &Triangulation) -> ValenceReport {
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    for e in tri.edge_classes() {
        match e.kind {
            EdgeKind::Ideal if e.valence != IDEAL_VALENCE => violations.push(ClassViolation {
                edge_class: Some(e.id),
                message: format!("ideal edge class {} has valence {}", e.id, e.valence),
            }),
            EdgeKind::HyperIdeal if e.valence < HYPER_MIN_VALENCE => {
                violations.push(ClassViolation {
                    edge_class: Some(e.id),
                    message: format!(
                        "hyper-ideal edge class {} has valence {} < {HYPER_MIN_VALENCE}",
                        e.id, e.valence
                    ),
                });
                let all_40 = e
                    .members
                    .iter()
                    .all(|&(t, _)| tri.tets()[t].kind() == TetKind::FourZero);
                if all_40 && e.valence >= HYPER_MIN_VALENCE_ALL_40 {
                    notes.push(format!(
                        "hyper-ideal edge class {} lies only in 4-0 tetrahedra; valence {} >= {HYPER_MIN_VALENCE_ALL_40} suffices for the upper length barrier there",
                        e.id, e.valence
                    ));
                }
            }
            _ => {}
        }
    }
    ValenceReport {
        ok: violations.is_empty(),
        violations,
        notes,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeSummary {
    pub id: usize,
    pub kind: EdgeKind,
    pub valence: usize,
    pub endpoints: [usize; 2],
    /// `(tet, [a, b])` of the representative slot.
    pub representative: (usize, [usize; 2]),
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexSummary {
    pub id: usize,
    pub kind: VertexKind,
    pub euler_characteristic: i64,
    pub genus: Option<u32>,
    pub orientable: bool,
    pub closed: bool,
    pub corners: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub ok: bool,
    pub violations: Vec<ClassViolation>,
}

impl CheckResult {
    fn from(violations: Vec<ClassViolation>) -> Self {
        CheckResult {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// Everything the flow needs to know about a triangulation before running.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub tet_count: usize,
    pub tet_types: TypeCounts,
    pub d_max: usize,
    pub edge_classes: Vec<EdgeSummary>,
    pub vertex_classes: Vec<VertexSummary>,
    pub properly_glued: CheckResult,
    pub valence_hypothesis: ValenceReport,
    pub orientable_manifold: bool,
    /// Sphere, non-orientable or non-closed links, and edges folded onto themselves.
    pub links: CheckResult,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeCounts {
    #[serde(rename = "3-1")]
    pub three_one: usize,
    #[serde(rename = "4-0")]
    pub four_zero: usize,
}

pub fn validate(tri: &Triangulation) -> ValidationReport {
    let edge_classes = tri
        .edge_classes()
        .iter()
        .map(|e| {
            let (t, slot) = e.members[0];
            EdgeSummary {
                id: e.id,
                kind: e.kind,
                valence: e.valence,
                endpoints: e.endpoints,
                representative: (t, super::EDGE_VERTICES[slot]),
            }
        })
        .collect();
    let vertex_classes = tri
        .vertex_classes()
        .iter()
        .map(|v| VertexSummary {
            id: v.id,
            kind: v.kind,
            euler_characteristic: v.link.euler_characteristic,
            genus: v.link.genus,
            orientable: v.link.orientable,
            closed: v.link.closed,
            corners: v.members.len(),
        })
        .collect();

    let mut link_violations = Vec::new();
    for v in tri.vertex_classes() {
        let link = &v.link;
        let problem = if !link.closed {
            Some(format!("link has {} boundary edges", link.boundary_edges))
        } else if link.is_sphere() {
            Some("link is a 2-sphere".to_string())
        } else if !link.orientable {
            Some(format!(
                "link is non-orientable (Euler characteristic {})",
                link.euler_characteristic
            ))
        } else if link.euler_characteristic > 0 {
            Some(format!(
                "link has Euler characteristic {}",
                link.euler_characteristic
            ))
        } else {
            None
        };
        if let Some(p) = problem {
            link_violations.push(ClassViolation {
                edge_class: None,
                message: format!("vertex class {}: {p}", v.id),
            });
        }
    }
    for &e in tri.reversed_edge_classes() {
        link_violations.push(ClassViolation {
            edge_class: Some(e),
            message: format!("edge class {e} is identified with itself in reverse"),
        });
    }

    let properly_glued = CheckResult::from(check_properly_glued(tri));
    let valence_hypothesis = check_valence_hypothesis(tri);
    let orientable_manifold = check_orientability(tri);
    let links = CheckResult::from(link_violations);
    let passed = properly_glued.ok && valence_hypothesis.ok && orientable_manifold && links.ok;
    let three_one = tri
        .tets()
        .iter()
        .filter(|t| t.kind() == TetKind::ThreeOne)
        .count();

    ValidationReport {
        tet_count: tri.tet_count(),
        tet_types: TypeCounts {
            three_one,
            four_zero: tri.tet_count() - three_one,
        },
        d_max: tri.d_max(),
        edge_classes,
        vertex_classes,
        properly_glued,
        valence_hypothesis,
        orientable_manifold,
        links,
        passed,
    }
}
