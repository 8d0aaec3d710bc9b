//! Reduced extended combinatorial Ricci flow on ideal triangulations of
//! 3-manifolds whose boundary consists of tori and higher-genus surfaces.
//!
//! [`triangulation`] parses gluing tables and checks the combinatorial
//! hypotheses, [`tetgeom`] holds the single-tetrahedron angle functions,
//! [`covolume`] the potentials, and [`flow`] curvature, the flow itself and
//! certification of its limit.

pub mod covolume;
pub mod error;
pub mod flow;
pub mod quadrature;
pub mod tetgeom;
pub mod triangulation;

pub use covolume::GeneralMetric;
pub use error::{Error, Result};
pub use flow::{certify_limit, run_flow, CertifyConfig, FlowConfig, FlowMode, FlowTrace};
pub use triangulation::{parse_triangulation, validate, Triangulation};

/// The twelve-tetrahedron triangulation used as the reference example.
pub const M12_FIXTURE: &str = include_str!("../fixtures/m12.json");
