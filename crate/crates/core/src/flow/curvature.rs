use std::f64::consts::PI;

use serde::Serialize;

use crate::covolume::GeneralMetric;
use crate::error::Result;
use crate::tetgeom::{extended_angles, TetAngles};
use crate::triangulation::Triangulation;

/// Curvature `K_e = 2 pi - (cone angle at e)` for every edge class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureVector {
    pub values: Vec<f64>,
}

impl CurvatureVector {
    pub fn inf_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Entries of the listed classes, in the order given.
    pub fn restrict(&self, classes: &[usize]) -> Vec<f64> {
        classes.iter().map(|&c| self.values[c]).collect()
    }
}

/// Extended angles of every tetrahedron, in standard position.
pub fn tet_angles(l: &GeneralMetric, tri: &Triangulation) -> Result<Vec<TetAngles>> {
    (0..tri.tet_count())
        .map(|t| extended_angles(&l.tet_lengths(tri, t)))
        .collect()
}

pub fn cone_angles(l: &GeneralMetric, tri: &Triangulation) -> Result<Vec<f64>> {
    let mut cone = vec![0.0; tri.edge_classes().len()];
    for (t, a) in tet_angles(l, tri)?.iter().enumerate() {
        for (k, class) in tri.standard_edge_classes(t).iter().enumerate() {
            cone[*class] += a.alpha[k];
        }
    }
    Ok(cone)
}

pub fn curvature(l: &GeneralMetric, tri: &Triangulation) -> Result<CurvatureVector> {
    Ok(CurvatureVector {
        values: cone_angles(l, tri)?.into_iter().map(|c| 2.0 * PI - c).collect(),
    })
}
