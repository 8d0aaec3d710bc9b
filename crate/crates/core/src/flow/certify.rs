use serde::{Deserialize, Serialize};

use super::{curvature, tet_angles};
use crate::covolume::GeneralMetric;
use crate::error::Result;
use crate::tetgeom::ARCCOSH_2;
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyConfig {
    /// Largest acceptable `|K|` on any edge class.
    pub residual_tol: f64,
    /// Every angle function must lie in `(-1 + margin, 1 - margin)`.
    pub real_margin: f64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            residual_tol: 1e-8,
            real_margin: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TetRealness {
    pub tet: usize,
    pub phi: [f64; 6],
    pub alpha: [f64; 6],
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LengthBounds {
    /// `1 / (3 d_max)`.
    pub lower: f64,
    /// `arccosh 2`.
    pub upper: f64,
    /// Hyper-ideal classes outside `[lower, upper]`, with their lengths.
    pub violations: Vec<(usize, f64)>,
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificationReport {
    pub residual_inf: f64,
    pub residual_tol: f64,
    pub residual_ok: bool,
    pub tets: Vec<TetRealness>,
    pub all_real: bool,
    pub length_bounds: LengthBounds,
    pub verdict: Verdict,
    pub summary: String,
}

/// Checks that `l` is a zero-curvature metric whose tetrahedra are all real,
/// with hyper-ideal lengths inside the a priori barriers.
pub fn certify_limit(l: &GeneralMetric, tri: &Triangulation, cfg: &CertifyConfig) -> Result<CertificationReport> {
    let k = curvature(l, tri)?;
    let residual_inf = k.inf_norm();
    let residual_ok = residual_inf < cfg.residual_tol;
    let tets: Vec<TetRealness> = tet_angles(l, tri)?
        .into_iter()
        .enumerate()
        .map(|(tet, a)| TetRealness {
            tet,
            phi: a.phi,
            alpha: a.alpha,
            real: a.phi.iter().all(|p| p.abs() < 1.0 - cfg.real_margin),
        })
        .collect();
    let all_real = tets.iter().all(|t| t.real);
    let lower = 1.0 / (3.0 * tri.d_max().max(1) as f64);
    let violations: Vec<(usize, f64)> = tri
        .hyper_edge_classes()
        .into_iter()
        .map(|c| (c, l.values[c]))
        .filter(|&(_, v)| !(lower..=ARCCOSH_2).contains(&v))
        .collect();
    let length_bounds = LengthBounds {
        lower,
        upper: ARCCOSH_2,
        ok: violations.is_empty(),
        violations,
    };
    let pass = residual_ok && all_real && length_bounds.ok;
    let summary = if pass {
        "hyperbolic structure found, triangulation geometric".to_string()
    } else {
        let mut why = Vec::new();
        if !residual_ok {
            why.push(format!("curvature residual {residual_inf:e} >= {:e}", cfg.residual_tol));
        }
        if !all_real {
            let bad: Vec<String> = tets.iter().filter(|t| !t.real).map(|t| t.tet.to_string()).collect();
            why.push(format!("tetrahedra not real: {}", bad.join(", ")));
        }
        if !length_bounds.ok {
            why.push(format!(
                "{} hyper-ideal lengths outside [{lower}, arccosh 2]",
                length_bounds.violations.len()
            ));
        }
        format!("not certified: {}", why.join("; "))
    };
    Ok(CertificationReport {
        residual_inf,
        residual_tol: cfg.residual_tol,
        residual_ok,
        tets,
        all_real,
        length_bounds,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        summary,
    })
}
