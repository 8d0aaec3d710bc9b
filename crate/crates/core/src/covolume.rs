//! Co-volume potentials and the Lyapunov functionals of the flow.
//!
//! The co-volume of a tetrahedron is the integral of the closed 1-form
//! `sum_k alpha_k(l) dl_k`, normalised to vanish at the zero length vector.
//! Extended angles only see the clamped lengths `l+`, so the integrand is
//! continuous but has kinks on the walls `l_k = 0` of the hyper-ideal
//! coordinates; segments are split there before quadrature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::reconstruct_full_metric;
use crate::quadrature::{integrate, QuadConfig};
use crate::tetgeom::{equilateral_lengths, extended_angles, TetKind, TetLengths};
use crate::triangulation::{EdgeKind, Triangulation};

/// A length for every edge class of a triangulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralMetric {
    pub values: Vec<f64>,
}

impl GeneralMetric {
    pub fn new(tri: &Triangulation, values: Vec<f64>) -> Result<Self> {
        if values.len() != tri.edge_classes().len() {
            return Err(Error::MetricMismatch(format!(
                "{} lengths for {} edge classes",
                values.len(),
                tri.edge_classes().len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::MetricMismatch(format!(
                "length of edge class {i} is {}",
                values[i]
            )));
        }
        Ok(GeneralMetric { values })
    }

    pub fn constant(tri: &Triangulation, value: f64) -> Self {
        GeneralMetric {
            values: vec![value; tri.edge_classes().len()],
        }
    }

    /// Lengths of the ideal edge classes, ascending by class id.
    pub fn ideal_part(&self, tri: &Triangulation) -> Vec<f64> {
        tri.ideal_edge_classes().iter().map(|&e| self.values[e]).collect()
    }

    /// Lengths of the hyper-ideal edge classes, ascending by class id.
    pub fn hyper_part(&self, tri: &Triangulation) -> Vec<f64> {
        tri.hyper_edge_classes().iter().map(|&e| self.values[e]).collect()
    }

    /// The six lengths of tetrahedron `tet` in standard position.
    pub fn tet_lengths(&self, tri: &Triangulation, tet: usize) -> TetLengths {
        let classes = tri.standard_edge_classes(tet);
        TetLengths::new(tri.tets()[tet].kind(), classes.map(|c| self.values[c]))
    }
}

/// A co-volume together with what it was computed from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CovolumeValue {
    pub value: f64,
    /// Vertices of the polygonal path, starting at the reference point.
    pub path: Vec<[f64; 6]>,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn mu_along(kind: TetKind, p: &[f64; 6], q: &[f64; 6], cfg: &QuadConfig) -> Result<(f64, f64, usize)> {
    let d: Vec<f64> = (0..6).map(|k| q[k] - p[k]).collect();
    // Wall crossings of clamped coordinates.
    let first_clamped = match kind {
        TetKind::ThreeOne => 3,
        TetKind::FourZero => 0,
    };
    let breaks: Vec<f64> = (first_clamped..6)
        .filter(|&k| d[k] != 0.0)
        .map(|k| -p[k] / d[k])
        .filter(|t| *t > 0.0 && *t < 1.0)
        .collect();
    let r = integrate(
        |t| {
            let mut l = [0.0; 6];
            for k in 0..6 {
                l[k] = p[k] + t * d[k];
            }
            let a = extended_angles(&TetLengths::new(kind, l))?;
            Ok((0..6).map(|k| a.alpha[k] * d[k]).sum())
        },
        0.0,
        1.0,
        &breaks,
        cfg,
    )?;
    Ok((r.value, r.error_estimate, r.evaluations))
}

/// Integral of the angle 1-form along the polygonal path through `points`.
pub fn path_integral(kind: TetKind, points: &[[f64; 6]], cfg: &QuadConfig) -> Result<CovolumeValue> {
    let mut out = CovolumeValue {
        value: 0.0,
        path: points.to_vec(),
        error_estimate: 0.0,
        evaluations: 0,
    };
    let segments = points.len().saturating_sub(1).max(1) as f64;
    let seg_cfg = QuadConfig {
        abs_tol: cfg.abs_tol / segments,
        ..*cfg
    };
    for w in points.windows(2) {
        let (v, e, n) = mu_along(kind, &w[0], &w[1], &seg_cfg)?;
        out.value += v;
        out.error_estimate += e;
        out.evaluations += n;
    }
    Ok(out)
}

/// Co-volume of one tetrahedron, integrated along the ray from the origin.
pub fn cov_tet_detailed(l: &TetLengths, cfg: &QuadConfig) -> Result<CovolumeValue> {
    path_integral(l.kind(), &[[0.0; 6], l.to_array()], cfg)
}

pub fn cov_tet(l: &TetLengths, cfg: &QuadConfig) -> Result<f64> {
    Ok(cov_tet_detailed(l, cfg)?.value)
}

/// Sum of the co-volumes of all tetrahedra, in index order.
pub fn cov_total(l: &GeneralMetric, tri: &Triangulation, cfg: &QuadConfig) -> Result<f64> {
    let per_tet = QuadConfig {
        abs_tol: cfg.abs_tol / tri.tet_count().max(1) as f64,
        ..*cfg
    };
    let mut total = 0.0;
    for t in 0..tri.tet_count() {
        total += cov_tet(&l.tet_lengths(tri, t), &per_tet)?;
    }
    Ok(total)
}

/// `cov(l) - 2 pi * sum of all lengths`.
#[allow(non_snake_case)]
pub fn H_total(l: &GeneralMetric, tri: &Triangulation, cfg: &QuadConfig) -> Result<f64> {
    Ok(cov_total(l, tri, cfg)? - 2.0 * PI * l.values.iter().sum::<f64>())
}

/// `H` at the full metric reconstructed from the hyper-ideal lengths `lh`
/// (ascending hyper-ideal class order).
#[allow(non_snake_case)]
pub fn H_reduced(lh: &[f64], tri: &Triangulation, cfg: &QuadConfig) -> Result<f64> {
    let full = reconstruct_full_metric(lh, tri)?;
    H_total(&full, tri, cfg)
}

/// Co-volume of a 3-1 tetrahedron as a function of its hyper-ideal lengths
/// `[l23, l24, l34]`, with the ideal lengths fixed by the equilateral decoration.
pub fn induced_cov_tet(hyper: [f64; 3], cfg: &QuadConfig) -> Result<f64> {
    let l = equilateral_lengths(hyper.map(|x| x.max(0.0)))?;
    cov_tet(&TetLengths::ThreeOne(l), cfg)
}

/// Number of hyper-ideal classes; the dimension of the reduced flow.
pub fn reduced_dimension(tri: &Triangulation) -> usize {
    tri.edge_classes()
        .iter()
        .filter(|e| e.kind == EdgeKind::HyperIdeal)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> QuadConfig {
        QuadConfig::with_tol(1e-13)
    }

    #[test]
    fn zero_at_reference_point() {
        let l = TetLengths::new(TetKind::ThreeOne, [0.0; 6]);
        assert_eq!(cov_tet(&l, &tight()).unwrap(), 0.0);
    }

    #[test]
    fn gradient_is_angle() {
        let base = [0.2, -0.1, 0.3, 0.8, 0.6, 1.0];
        let kind = TetKind::ThreeOne;
        let a = extended_angles(&TetLengths::new(kind, base)).unwrap();
        let h = 1e-4;
        for k in 0..6 {
            let mut p = base;
            let mut m = base;
            p[k] += h;
            m[k] -= h;
            let fd = (cov_tet(&TetLengths::new(kind, p), &tight()).unwrap()
                - cov_tet(&TetLengths::new(kind, m), &tight()).unwrap())
                / (2.0 * h);
            assert!((fd - a.alpha[k]).abs() < 1e-6 * a.alpha[k].max(1.0), "edge {k}");
        }
    }

    #[test]
    fn induced_ignores_negative_parts() {
        let a = induced_cov_tet([-0.3, 0.5, 0.9], &tight()).unwrap();
        let b = induced_cov_tet([0.0, 0.5, 0.9], &tight()).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
