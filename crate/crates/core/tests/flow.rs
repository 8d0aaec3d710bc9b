mod common;

use std::f64::consts::PI;

use common::*;
use hyperflow::covolume::GeneralMetric;
use hyperflow::flow::*;
use hyperflow::tetgeom::ARCCOSH_2;
use hyperflow::triangulation::check_properly_glued;
use hyperflow::{Error, FlowConfig, FlowMode};

const LIMIT: f64 = 0.20431263483215714;

fn reduced(initial: f64) -> FlowConfig {
    FlowConfig {
        initial: InitialMetric::Constant(initial),
        ..FlowConfig::default()
    }
}

#[test]
fn reconstruction_of_symmetric_decoration() {
    let tri = m12();
    let m = reconstruct_full_metric(&[ARCCOSH_2], &tri).unwrap();
    for c in tri.ideal_edge_classes() {
        assert!((m.values[c] - 1.5f64.sqrt().ln()).abs() < 1e-12);
    }
    let h = tri.hyper_edge_classes()[0];
    assert_eq!(m.values[h], ARCCOSH_2);
}

#[test]
fn constant_hyper_lengths_give_equal_ideal_lengths() {
    let tri = m12();
    for x in [0.1, 0.7, 1.2] {
        let m = reconstruct_full_metric(&[x], &tri).unwrap();
        let ideal = m.ideal_part(&tri);
        assert!(ideal.iter().all(|v| (v - ideal[0]).abs() < 1e-14));
    }
}

#[test]
fn negative_hyper_lengths_reconstruct_like_zero() {
    let tri = m12();
    let neg = reconstruct_full_metric(&[-0.4], &tri).unwrap();
    let zero = reconstruct_full_metric(&[0.0], &tri).unwrap();
    assert_eq!(neg.ideal_part(&tri), zero.ideal_part(&tri));
    assert_eq!(neg.hyper_part(&tri), vec![-0.4]);
}

#[test]
fn reconstruction_rejects_wrong_length() {
    let tri = m12();
    assert!(matches!(
        reconstruct_full_metric(&[0.1, 0.2], &tri),
        Err(Error::MetricMismatch(_))
    ));
}

fn improperly_glued() -> hyperflow::Triangulation {
    two_tet_candidates()
        .into_iter()
        .filter_map(|t| build(t).ok())
        .find(|t| !check_properly_glued(t).is_empty())
        .expect("some pairing is improperly glued")
}

#[test]
fn reconstruction_detects_disagreement() {
    let tri = improperly_glued();
    // Distinct hyper-ideal lengths make the decorations disagree.
    let n = tri.hyper_edge_classes().len();
    let lh: Vec<f64> = (0..n).map(|i| 0.3 + 0.4 * i as f64).collect();
    assert!(matches!(reconstruct_full_metric(&lh, &tri), Err(Error::Logic(_))));
    let err = run_flow(&tri, &FlowConfig::default()).unwrap_err();
    assert!(matches!(err, Error::Logic(_)));
}

#[test]
fn m12_initial_curvature() {
    let tri = m12();
    let m = reconstruct_full_metric(&[0.5 * ARCCOSH_2], &tri).unwrap();
    let k = curvature(&m, &tri).unwrap();
    let h = tri.hyper_edge_classes()[0];
    // 36 equal angles around the hyper-ideal class.
    let alpha = tet_angles(&m, &tri).unwrap()[0].alpha[3];
    assert!((k.values[h] - (2.0 * PI - 36.0 * alpha)).abs() < 1e-12);
    assert!((k.values[h] - -11.833270326001067).abs() < 1e-9);
    for c in tri.ideal_edge_classes() {
        assert!(k.values[c].abs() < 1e-12);
    }
}

#[test]
fn reduced_flow_converges_and_is_monotone() {
    let tri = m12();
    let trace = run_flow(&tri, &reduced(0.5 * ARCCOSH_2)).unwrap();
    assert_eq!(trace.termination, Termination::Converged);
    assert!(trace.banner.is_none());
    assert!(trace.last().k_inf < 1e-8);
    assert!((trace.last().state[0] - LIMIT).abs() < 1e-7);
    assert!(trace.max_h_increase() <= 1e-12);
    assert!(trace.max_h_drift() < 1e-6);
    let (lo, hi) = trace.state_range();
    assert!(lo >= 1.0 / 108.0 && hi <= ARCCOSH_2);
    // Ideal classes stay flat along the reduced flow.
    let ideal = tri.ideal_edge_classes();
    for s in &trace.samples {
        for &c in &ideal {
            assert!(s.curvature[c].abs() < 1e-9);
        }
    }
    let csv = trace.to_csv();
    let header = csv.lines().next().unwrap();
    assert_eq!(header, format!("t,l_e{},K_inf,K_l2,H_lineintegral,H_accumulated", trace.variables[0]));
    assert_eq!(csv.lines().count(), trace.samples.len() + 1);
}

#[test]
fn limit_does_not_depend_on_start() {
    let tri = m12();
    for x in [0.05, 1.2] {
        let trace = run_flow(&tri, &reduced(x)).unwrap();
        assert_eq!(trace.termination, Termination::Converged);
        assert!((trace.last().state[0] - LIMIT).abs() < 1e-7, "from {x}");
    }
}

#[test]
fn flat_start_converges_immediately() {
    let tri = m12();
    let trace = run_flow(&tri, &reduced(LIMIT)).unwrap();
    assert_eq!(trace.termination, Termination::Converged);
    assert_eq!(trace.accepted_steps, 0);
    assert_eq!(trace.samples.len(), 1);
}

#[test]
fn max_time_stops_the_flow() {
    let tri = m12();
    let cfg = FlowConfig {
        max_time: 0.01,
        ..reduced(0.5 * ARCCOSH_2)
    };
    let trace = run_flow(&tri, &cfg).unwrap();
    assert_eq!(trace.termination, Termination::MaxTime);
    assert!((trace.last().t - 0.01).abs() < 1e-12);
}

#[test]
fn invalid_configs_are_rejected() {
    let tri = m12();
    let bad = FlowConfig {
        stop_tol: 0.0,
        ..FlowConfig::default()
    };
    assert!(run_flow(&tri, &bad).is_err());
    let wrong = FlowConfig {
        initial: InitialMetric::Values(vec![0.1, 0.2]),
        ..FlowConfig::default()
    };
    assert!(matches!(run_flow(&tri, &wrong), Err(Error::MetricMismatch(_))));
}

#[test]
fn full_mode_carries_banner() {
    let tri = m12();
    let cfg = FlowConfig {
        mode: FlowMode::Full,
        max_time: 0.01,
        ..FlowConfig::default()
    };
    let trace = run_flow(&tri, &cfg).unwrap();
    assert_eq!(trace.banner.as_deref(), Some(FULL_MODE_BANNER));
    assert_eq!(trace.variables.len(), tri.edge_classes().len());
    assert!(trace.max_h_increase() <= 1e-12);
}

#[test]
fn certification_of_the_limit() {
    let tri = m12();
    let trace = run_flow(&tri, &reduced(0.5 * ARCCOSH_2)).unwrap();
    let report = certify_limit(&trace.final_metric, &tri, &CertifyConfig::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    assert!(report.all_real && report.length_bounds.ok && report.residual_ok);
    assert_eq!(report.summary, "hyperbolic structure found, triangulation geometric");

    let strict = CertifyConfig {
        residual_tol: 1e-30,
        ..CertifyConfig::default()
    };
    let report = certify_limit(&trace.final_metric, &tri, &strict).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(!report.residual_ok && report.all_real);
    assert!(report.summary.contains("curvature residual"));
}

#[test]
fn degenerate_metric_fails_certification() {
    let tri = m12();
    let m = reconstruct_full_metric(&[0.0], &tri).unwrap();
    let report = certify_limit(&m, &tri, &CertifyConfig::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(!report.all_real);
    assert!(!report.length_bounds.ok);

    let off = GeneralMetric::constant(&tri, 0.5 * ARCCOSH_2);
    let report = certify_limit(&off, &tri, &CertifyConfig::default()).unwrap();
    assert!(!report.residual_ok);
}
