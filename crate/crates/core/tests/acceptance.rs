//! Acceptance checks. Each test prints one `[PASS]` or `[FAIL]` line.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::*;
use hyperflow::covolume::{cov_tet, path_integral, H_reduced};
use hyperflow::flow::{curvature, reconstruct_full_metric, InitialMetric, Termination, Verdict};
use hyperflow::quadrature::QuadConfig;
use hyperflow::tetgeom::*;
use hyperflow::triangulation::VertexKind;
use hyperflow::{certify_limit, run_flow, validate, CertifyConfig, FlowConfig};
use rand::Rng;

type Outcome = std::result::Result<String, String>;

fn report(n: u32, title: &str, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let ms = start.elapsed().as_secs_f64() * 1e3;
    match &outcome {
        Ok(detail) => println!("[PASS] criterion {n}: {title} ({detail}; {ms:.0} ms)"),
        Err(why) => println!("[FAIL] criterion {n}: {title} ({why}; {ms:.0} ms)"),
    }
    outcome.is_ok()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1_corner_values() -> bool {
    report(1, "exact corner values", || {
        let refined = corner_bound_with_floor(2.0, 1.6, 2.0, 0.8);
        let want = 7.0 * 2f64.sqrt() / 12.0;
        check((refined - want).abs() < 1e-12, || format!("refined corner max {refined} != {want}"))?;
        check(refined.acos() > 2.0 * PI / 11.0, || "arccos bound below 2pi/11".into())?;
        let four = phi40_corner_max(2.0);
        check((four - 7.0 / 9.0).abs() < 1e-12, || format!("4-0 corner max {four} != 7/9"))?;
        check((7.0f64 / 9.0).acos() > PI / 5.0, || "arccos(7/9) <= pi/5".into())?;
        let t = tau(1.0);
        check(t.iter().all(|v| (v - 1.0).abs() < 1e-12), || format!("tau(1) = {t:?}"))?;
        Ok(format!("7sqrt2/12 err {:.1e}, 7/9 err {:.1e}", (refined - want).abs(), (four - 7.0 / 9.0).abs()))
    })
}

/// `g(m, n) = 2mn - (m/n + n/m)/2`, the right-hand side of the decoration system.
fn g(m: f64, n: f64) -> f64 {
    2.0 * m * n - 0.5 * (m / n + n / m)
}

/// Positive root `n` of `(4m^2 - 1) n^2 - 2kmn - m^2 = 0`, i.e. `g(m, n) = k`.
fn root_n(k: f64, m: f64) -> f64 {
    let a = 4.0 * m * m - 1.0;
    (2.0 * k * m + (4.0 * k * k * m * m + 4.0 * a * m * m).sqrt()) / (2.0 * a)
}

/// Independent solver: shoot on `x2`, closing the cycle `x2 -> x4 -> x6 -> x2`.
fn oracle_inverse(x1: f64, x3: f64, x5: f64) -> Option<[f64; 3]> {
    let miss = |x2: f64| {
        let x4 = root_n(x1, x2);
        let x6 = root_n(x3, x4);
        g(x2, x6) - x5
    };
    let top = x1.max(x3).max(x5) + 1.0;
    let n = 400;
    let grid: Vec<f64> = (0..=n).map(|i| 0.5 + 1e-9 + (top - 0.5) * i as f64 / n as f64).collect();
    let (mut lo, mut hi) = grid
        .windows(2)
        .map(|w| (w[0], w[1]))
        .find(|&(a, b)| miss(a).signum() != miss(b).signum())?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if miss(mid).signum() == miss(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x2 = 0.5 * (lo + hi);
    let x4 = root_n(x1, x2);
    Some([x2, x4, root_n(x3, x4)])
}

fn criterion_2_inverse_map() -> bool {
    report(2, "inverse of the decoration map", || {
        let mut r = rng(2);
        let mut worst_round: f64 = 0.0;
        let mut worst_oracle: f64 = 0.0;
        for i in 0..10_000 {
            let y = [r.gen_range(1.0..10.0), r.gen_range(1.0..10.0), r.gen_range(1.0..10.0)];
            let (a, b, c) = equilateral_inverse(y[0], y[1], y[2]).map_err(|e| e.to_string())?;
            let (f1, f3, f5) = (g(a, b), g(b, c), g(a, c));
            let round = (f1 - y[0]).abs().max((f3 - y[1]).abs()).max((f5 - y[2]).abs());
            worst_round = worst_round.max(round);
            let big = y[0].max(y[1]).max(y[2]);
            let (lo, hi) = lemma_bounds(big);
            for v in [a, b, c] {
                check(v >= lo - 1e-12 && v <= hi + 1e-12, || format!("{v} outside [{lo}, {hi}] for {y:?}"))?;
            }
            if i % 10 == 0 {
                let o = oracle_inverse(y[0], y[1], y[2]).ok_or_else(|| format!("oracle found no root for {y:?}"))?;
                for (p, q) in [a, b, c].iter().zip(o) {
                    worst_oracle = worst_oracle.max((p - q).abs());
                }
            }
        }
        check(worst_round < 1e-9, || format!("roundtrip error {worst_round:e}"))?;
        check(worst_oracle < 1e-9, || format!("oracle disagreement {worst_oracle:e}"))?;
        Ok(format!("10^4 targets, roundtrip {worst_round:.1e}, oracle {worst_oracle:.1e} on 10^3"))
    })
}

fn criterion_3_ideal_angle_law() -> bool {
    report(3, "ideal angles are pi/3", || {
        let mut r = rng(3);
        let mut worst: f64 = 0.0;
        let mut n = 0;
        while n < 1000 {
            let (x2, x4, x6) = (r.gen_range(0.5..3.0), r.gen_range(0.5..3.0), r.gen_range(0.5..3.0));
            let (x1, x3, x5) = (g(x2, x4), g(x4, x6), g(x2, x6));
            if x1 < 1.0 || x3 < 1.0 || x5 < 1.0 {
                continue;
            }
            n += 1;
            let t = TetXCoords { x: [x1, x2, x3, x4, x5, x6] }.to_lengths();
            for i in 2..=4 {
                let p = phi31_ideal(&t, i).map_err(|e| e.to_string())?;
                worst = worst.max((p - 0.5).abs());
            }
        }
        check(worst < 1e-10, || format!("max |phi - 1/2| = {worst:e}"))?;
        Ok(format!("10^3 tets, max deviation {worst:.1e}"))
    })
}

fn criterion_4_bound_properties() -> bool {
    report(4, "corner domination, sign disjunction, small-edge estimate", || {
        let mut r = rng(4);
        for _ in 0..10_000 {
            let x1 = r.gen_range(1.0..4.0);
            let a = r.gen_range(0.5..4.0);
            let b = r.gen_range(1.0..4.0);
            let x = [
                x1,
                r.gen_range(0.5..=a),
                r.gen_range(1.0..=b),
                r.gen_range(0.5..=a),
                r.gen_range(1.0..=b),
                r.gen_range(0.5..=a),
            ];
            let bound = corner_bound(x1, a, b);
            check(phi_x(&x) <= bound + 1e-12, || format!("phi {x:?} above corner bound {bound}"))?;
            let p = phi_partials(&x);
            check(p.degenerate || (p.d2 > 0.0 && p.d3 > 0.0) || (p.d4 > 0.0 && p.d5 > 0.0), || {
                format!("sign disjunction fails at {x:?}")
            })?;
        }
        for eps in [0.1, 0.5, 1.0] {
            let delta = small_edge_angle_bound(2.0, eps);
            check((delta - eps * eps / (6.0 * PI * PI)).abs() < 1e-15, || format!("delta({eps}) = {delta}"))?;
            for _ in 0..3000 {
                let x = [
                    r.gen_range(1.0..=1.0 + delta),
                    r.gen_range(0.5..=2.0),
                    r.gen_range(1.0..=2.0),
                    r.gen_range(0.5..=2.0),
                    r.gen_range(1.0..=2.0),
                    r.gen_range(0.5..=2.0),
                ];
                let alpha = phi_x(&x).clamp(-1.0, 1.0).acos();
                check(alpha <= eps, || format!("angle {alpha} > {eps} at {x:?}"))?;
            }
        }
        Ok("10^4 box samples, 3 x 3000 small-edge samples".into())
    })
}

fn criterion_5_gradients_and_quadrature() -> bool {
    report(5, "gradient and path-independence suite", || {
        let cfg = QuadConfig::with_tol(1e-13);
        let mut r = rng(5);
        let mut worst_grad: f64 = 0.0;
        let mut worst_path: f64 = 0.0;
        let sample = |r: &mut rand_chacha::ChaCha8Rng, kind| -> [f64; 6] {
            let mut l = [0.0; 6];
            for (k, v) in l.iter_mut().enumerate() {
                *v = match (kind, k) {
                    (TetKind::ThreeOne, 0..=2) => r.gen_range(-1.0..1.0),
                    _ => r.gen_range(-0.3..1.5),
                };
            }
            l
        };
        for kind in [TetKind::ThreeOne, TetKind::FourZero] {
            for _ in 0..10 {
                let l = sample(&mut r, kind);
                let alpha = extended_angles(&TetLengths::new(kind, l)).map_err(|e| e.to_string())?.alpha;
                for k in 0..6 {
                    let h = 1e-4;
                    let (mut a, mut b) = (l, l);
                    a[k] += h;
                    b[k] -= h;
                    let fa = cov_tet(&TetLengths::new(kind, a), &cfg).map_err(|e| e.to_string())?;
                    let fb = cov_tet(&TetLengths::new(kind, b), &cfg).map_err(|e| e.to_string())?;
                    let fd = (fa - fb) / (2.0 * h);
                    worst_grad = worst_grad.max((fd - alpha[k]).abs() / alpha[k].abs().max(1e-2));
                }
                let end = sample(&mut r, kind);
                let one = [[0.0; 6], sample(&mut r, kind), end];
                let two = [[0.0; 6], sample(&mut r, kind), sample(&mut r, kind), end];
                let v1 = path_integral(kind, &one, &cfg).map_err(|e| e.to_string())?.value;
                let v2 = path_integral(kind, &two, &cfg).map_err(|e| e.to_string())?.value;
                worst_path = worst_path.max((v1 - v2).abs());
            }
        }
        let tri = m12();
        for x in [0.15, 0.5 * ARCCOSH_2, 1.1] {
            let m = reconstruct_full_metric(&[x], &tri).map_err(|e| e.to_string())?;
            let k = curvature(&m, &tri).map_err(|e| e.to_string())?;
            let kh = k.values[tri.hyper_edge_classes()[0]];
            let h = 1e-5;
            let up = H_reduced(&[x + h], &tri, &cfg).map_err(|e| e.to_string())?;
            let dn = H_reduced(&[x - h], &tri, &cfg).map_err(|e| e.to_string())?;
            let fd = (up - dn) / (2.0 * h);
            worst_grad = worst_grad.max((fd + kh).abs() / kh.abs().max(1e-2));
        }
        check(worst_grad < 1e-5, || format!("relative gradient error {worst_grad:e}"))?;
        check(worst_path < 1e-6, || format!("path dependence {worst_path:e}"))?;
        Ok(format!("gradient rel err {worst_grad:.1e}, path gap {worst_path:.1e}"))
    })
}

fn m12_run() -> std::result::Result<(hyperflow::FlowTrace, hyperflow::Triangulation), String> {
    let tri = m12();
    let cfg = FlowConfig {
        initial: InitialMetric::Constant(0.5 * ARCCOSH_2),
        ..FlowConfig::default()
    };
    let trace = run_flow(&tri, &cfg).map_err(|e| e.to_string())?;
    Ok((trace, tri))
}

fn criterion_6_m12_end_to_end() -> bool {
    report(6, "12-tetrahedron manifold end to end", || {
        let (trace, tri) = m12_run()?;
        let v = validate(&tri);
        check(v.passed, || "validation failed".into())?;
        check(v.tet_count == 12, || format!("{} tetrahedra", v.tet_count))?;
        for e in tri.edge_classes() {
            let want = if tri.hyper_edge_classes().contains(&e.id) { 36 } else { 6 };
            check(e.valence == want, || format!("edge class {} has valence {}", e.id, e.valence))?;
        }
        let chis: Vec<i64> = tri.vertex_classes().iter().map(|c| c.link.euler_characteristic).collect();
        check(chis == [0, -10, 0], || format!("link Euler characteristics {chis:?}"))?;
        let hyper_link = tri.vertex_classes().iter().find(|c| c.kind == VertexKind::HyperIdeal);
        check(hyper_link.and_then(|c| c.link.genus) == Some(6), || "hyper-ideal link is not genus 6".into())?;

        check(trace.termination == Termination::Converged, || format!("{:?}", trace.termination))?;
        let k = trace.last().k_inf;
        check(k < 1e-8, || format!("|K| = {k:e}"))?;
        let rise = trace.max_h_increase();
        check(rise <= 1e-12, || format!("H increased by {rise:e}"))?;
        let (lo, hi) = trace.state_range();
        check(lo > 1.0 / 108.0 && hi < ARCCOSH_2, || format!("state left ({}, arccosh 2): [{lo}, {hi}]", 1.0 / 108.0))?;
        let cert = certify_limit(&trace.final_metric, &tri, &CertifyConfig::default()).map_err(|e| e.to_string())?;
        check(cert.verdict == Verdict::Pass, || cert.summary.clone())?;
        let baseline = expected_report()["reduced_limit"][0].as_f64().unwrap();
        let got = trace.last().state[0];
        check((got - baseline).abs() < 1e-7, || format!("limit {got} vs baseline {baseline}"))?;
        Ok(format!("t = {:.3}, |K| = {k:.1e}, l = {got:.10}, verdict pass", trace.last().t))
    })
}

fn criterion_7_honesty_gate() -> bool {
    report(7, "only residual, monotonicity, barriers and stationarity are claimed", || {
        let (trace, tri) = m12_run()?;
        let last = trace.last();
        check(last.k_inf < 1e-8, || "residual".into())?;
        check(trace.max_h_increase() <= 1e-12, || "monotonicity".into())?;
        let (lo, hi) = trace.state_range();
        check(lo > 1.0 / 108.0 && hi < ARCCOSH_2, || "barriers".into())?;
        // Stationarity: restarting at the final state does not move.
        let again = run_flow(
            &tri,
            &FlowConfig {
                initial: InitialMetric::Values(last.state.clone()),
                stop_tol: 1e-8,
                ..FlowConfig::default()
            },
        )
        .map_err(|e| e.to_string())?;
        check(
            again.termination == Termination::Converged && again.accepted_steps == 0,
            || format!("restart took {} steps", again.accepted_steps),
        )?;
        Ok("residual, monotone H, barriers, stationary restart".into())
    })
}

fn main() {
    let results = [
        criterion_1_corner_values(),
        criterion_2_inverse_map(),
        criterion_3_ideal_angle_law(),
        criterion_4_bound_properties(),
        criterion_5_gradients_and_quadrature(),
        criterion_6_m12_end_to_end(),
        criterion_7_honesty_gate(),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
