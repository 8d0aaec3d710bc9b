//! Curvature, metric reconstruction and the extended combinatorial Ricci flow.

mod certify;
mod curvature;
mod integrate;
mod reconstruct;

use serde::{Deserialize, Serialize};

pub use certify::{certify_limit, CertificationReport, CertifyConfig, LengthBounds, TetRealness, Verdict};
pub use curvature::{cone_angles, curvature, tet_angles, CurvatureVector};
pub use integrate::{run_flow, FlowSample, FlowTrace, Termination};
pub use reconstruct::{reconstruct_full_metric, RECONSTRUCTION_TOL};

use crate::quadrature::QuadConfig;
use crate::tetgeom::ARCCOSH_2;

/// Printed with every full-mode run.
pub const FULL_MODE_BANNER: &str =
    "unsupported-by-theory: convergence of the full flow is not established for triangulations with torus boundary; results are experimental";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowMode {
    /// Flow of the hyper-ideal lengths with ideal lengths reconstructed.
    Reduced,
    /// Flow of every edge length.
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialMetric {
    /// The same value on every flow variable.
    Constant(f64),
    /// One value per flow variable: hyper-ideal classes in reduced mode,
    /// all classes in full mode, ascending by class id.
    Values(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    pub mode: FlowMode,
    pub initial: InitialMetric,
    /// First trial step.
    pub dt0: f64,
    /// Local error target per component of one step.
    pub local_tol: f64,
    /// Stop once the sup norm of the curvature falls below this.
    pub stop_tol: f64,
    pub max_time: f64,
    /// Minimum time between recorded samples; 0 records every accepted step.
    pub sample_interval: f64,
    /// Quadrature used for the line-integral value of the Lyapunov function.
    pub quad: QuadConfig,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            mode: FlowMode::Reduced,
            initial: InitialMetric::Constant(0.5 * ARCCOSH_2),
            dt0: 1e-3,
            local_tol: 1e-10,
            stop_tol: 1e-10,
            max_time: 1e4,
            sample_interval: 0.0,
            quad: QuadConfig::with_tol(1e-13),
        }
    }
}
