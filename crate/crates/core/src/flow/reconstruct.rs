use crate::covolume::GeneralMetric;
use crate::error::{Error, Result};
use crate::tetgeom::{equilateral_lengths, TetKind};
use crate::triangulation::Triangulation;

/// Largest disagreement tolerated between two tetrahedra that assign a
/// length to the same ideal edge class.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// The full metric determined by the hyper-ideal lengths `lh` (ascending
/// hyper-ideal class order): every 3-1 tetrahedron gets the ideal lengths of
/// the equilateral decoration of its three hyper-ideal edges.
///
/// Fails with a logic error when two tetrahedra disagree on an ideal edge,
/// which cannot happen on a properly glued triangulation.
pub fn reconstruct_full_metric(lh: &[f64], tri: &Triangulation) -> Result<GeneralMetric> {
    let hyper = tri.hyper_edge_classes();
    if lh.len() != hyper.len() {
        return Err(Error::MetricMismatch(format!(
            "{} hyper-ideal lengths for {} hyper-ideal edge classes",
            lh.len(),
            hyper.len()
        )));
    }
    if let Some(i) = lh.iter().position(|v| !v.is_finite()) {
        return Err(Error::numeric(format!("hyper-ideal length {i} is {}", lh[i])));
    }
    let n = tri.edge_classes().len();
    let mut values = vec![f64::NAN; n];
    for (&c, &v) in hyper.iter().zip(lh) {
        values[c] = v;
    }
    let mut owner = vec![usize::MAX; n];
    for t in 0..tri.tet_count() {
        if tri.tets()[t].kind() != TetKind::ThreeOne {
            continue;
        }
        let cls = tri.standard_edge_classes(t);
        let l = equilateral_lengths([values[cls[3]], values[cls[4]], values[cls[5]]])?;
        for (k, ideal) in [l.l12, l.l13, l.l14].into_iter().enumerate() {
            let c = cls[k];
            if owner[c] == usize::MAX {
                values[c] = ideal;
                owner[c] = t;
            } else if (values[c] - ideal).abs() > RECONSTRUCTION_TOL {
                return Err(Error::Logic(format!(
                    "ideal edge class {c} gets length {} from tetrahedron {} but {ideal} from tetrahedron {t}; the triangulation is not properly glued",
                    values[c], owner[c]
                )));
            }
        }
    }
    if let Some(c) = values.iter().position(|v| v.is_nan()) {
        return Err(Error::Logic(format!(
            "edge class {c} lies in no 3-1 tetrahedron and has no hyper-ideal length"
        )));
    }
    Ok(GeneralMetric { values })
}
