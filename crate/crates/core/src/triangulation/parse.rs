use serde::{Deserialize, Serialize};

use super::{face_index, FaceGluing, TetSpec, Triangulation, FACE_VERTICES};
use crate::error::{Error, Result};

/// On-disk form of a triangulation.
///
/// ```json
/// { "tetrahedra": [ { "ideal_vertices": [0],
///                     "gluings": [[3, [0,1,2]], [5, [0,1,3]], [1, [0,2,3]], [2, [2,1,3]]] } ] }
/// ```
///
/// `gluings[k]` describes face `k` (`012, 013, 023, 123`); `null` leaves the
/// face unglued.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TriangulationDoc {
    pub tetrahedra: Vec<TetEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TetEntry {
    #[serde(default)]
    pub ideal_vertices: Vec<usize>,
    pub gluings: Vec<Option<(usize, Vec<usize>)>>,
}

/// Parses a gluing-table document and derives the full triangulation.
pub fn parse_triangulation(text: &str) -> Result<Triangulation> {
    let doc: TriangulationDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Triangulation::from_tets(doc_to_tets(&doc)?)
}

impl TriangulationDoc {
    pub fn into_triangulation(self) -> Result<Triangulation> {
        Triangulation::from_tets(doc_to_tets(&self)?)
    }
}

fn doc_to_tets(doc: &TriangulationDoc) -> Result<Vec<TetSpec>> {
    if doc.tetrahedra.is_empty() {
        return Err(Error::Parse("no tetrahedra".into()));
    }
    doc.tetrahedra
        .iter()
        .enumerate()
        .map(|(index, entry)| entry_to_spec(index, entry))
        .collect()
}

fn entry_to_spec(index: usize, entry: &TetEntry) -> Result<TetSpec> {
    let ideal_vertex = match entry.ideal_vertices.as_slice() {
        [] => None,
        [v] if *v < 4 => Some(*v),
        [v] => {
            return Err(Error::Parse(format!(
                "tetrahedron {index}: vertex label {v} out of range"
            )))
        }
        _ => {
            return Err(Error::Parse(format!(
                "tetrahedron {index}: at most one ideal vertex is supported, got {:?}",
                entry.ideal_vertices
            )))
        }
    };
    if entry.gluings.len() != 4 {
        return Err(Error::Parse(format!(
            "tetrahedron {index}: expected 4 face gluings, got {}",
            entry.gluings.len()
        )));
    }
    let mut gluings = [None; 4];
    for (face, g) in entry.gluings.iter().enumerate() {
        let Some((target, images)) = g else { continue };
        let images: [usize; 3] = images.as_slice().try_into().map_err(|_| {
            Error::Parse(format!(
                "tetrahedron {index} face {face}: image must list 3 vertices"
            ))
        })?;
        if images.iter().any(|&v| v > 3) {
            return Err(Error::Parse(format!(
                "tetrahedron {index} face {face}: vertex label out of range in {images:?}"
            )));
        }
        gluings[face] = Some(FaceGluing {
            target: *target,
            images,
        });
    }
    Ok(TetSpec {
        index,
        ideal_vertex,
        gluings,
    })
}

/// Checks that gluings are well-formed involutions that respect vertex types.
pub(super) fn check_gluings(tets: &[TetSpec]) -> Result<()> {
    let n = tets.len();
    for (t, tet) in tets.iter().enumerate() {
        if tet.index != t {
            return Err(Error::Consistency(format!(
                "tetrahedron at position {t} carries index {}",
                tet.index
            )));
        }
        for (face, g) in tet.gluings.iter().enumerate() {
            let Some(g) = g else {
                if let Some(iv) = tet.ideal_vertex {
                    if FACE_VERTICES[face].contains(&iv) {
                        return Err(Error::Consistency(format!(
                            "tetrahedron {t} face {face} is unglued but contains the ideal vertex {iv}"
                        )));
                    }
                }
                continue;
            };
            if g.target >= n {
                return Err(Error::Consistency(format!(
                    "tetrahedron {t} face {face}: target {} does not exist",
                    g.target
                )));
            }
            let img = g.images;
            if img[0] == img[1] || img[0] == img[2] || img[1] == img[2] {
                return Err(Error::Consistency(format!(
                    "tetrahedron {t} face {face}: image {img:?} repeats a vertex"
                )));
            }
            let back_face = face_index(img).expect("distinct labels below 4 form a face");
            if g.target == t && back_face == face {
                return Err(Error::Consistency(format!(
                    "tetrahedron {t} face {face} is glued to itself"
                )));
            }
            let Some(back) = tets[g.target].gluings[back_face] else {
                return Err(Error::Consistency(format!(
                    "tetrahedron {t} face {face} is glued to tetrahedron {} face {back_face}, which is unglued",
                    g.target
                )));
            };
            let forward = g.perm(face);
            let round_trip = back.perm(back_face).compose(&forward);
            let returns = back.target == t
                && FACE_VERTICES[face]
                    .iter()
                    .all(|&v| round_trip.apply(v) == v);
            if !returns {
                return Err(Error::Consistency(format!(
                    "gluing of tetrahedron {t} face {face} is not an involution"
                )));
            }
            let target = &tets[g.target];
            for &v in &FACE_VERTICES[face] {
                if tet.is_ideal(v) != target.is_ideal(forward.apply(v)) {
                    return Err(Error::Consistency(format!(
                        "tetrahedron {t} face {face}: vertex {v} and its image {} in tetrahedron {} differ in type",
                        forward.apply(v),
                        g.target
                    )));
                }
            }
        }
    }
    Ok(())
}

pub(super) fn to_doc(tets: &[TetSpec]) -> TriangulationDoc {
    TriangulationDoc {
        tetrahedra: tets
            .iter()
            .map(|t| TetEntry {
                ideal_vertices: t.ideal_vertex.into_iter().collect(),
                gluings: t
                    .gluings
                    .iter()
                    .map(|g| g.map(|g| (g.target, g.images.to_vec())))
                    .collect(),
            })
            .collect(),
    }
}
