use std::fmt::Write as _;

use log::{debug, info, warn};
use serde::Serialize;

use super::{curvature, reconstruct_full_metric, FlowConfig, FlowMode, InitialMetric, FULL_MODE_BANNER};
use crate::covolume::{GeneralMetric, H_total};
use crate::error::{Error, Result};
use crate::triangulation::{check_properly_glued, Triangulation};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Termination {
    Converged,
    MaxTime,
    NumericError { message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowSample {
    pub t: f64,
    /// Flow variables, in the order of [`FlowTrace::variables`].
    pub state: Vec<f64>,
    /// Curvature of every edge class.
    pub curvature: Vec<f64>,
    /// Norms of the curvature restricted to the flow variables.
    pub k_inf: f64,
    pub k_l2: f64,
    /// Lyapunov function evaluated by quadrature.
    pub h_line: f64,
    /// Lyapunov function obtained by integrating `-|K|^2` along the flow.
    pub h_acc: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowTrace {
    pub mode: FlowMode,
    /// Edge class ids of the flow variables.
    pub variables: Vec<usize>,
    pub samples: Vec<FlowSample>,
    pub termination: Termination,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    /// Full metric at the last sample.
    pub final_metric: GeneralMetric,
    pub banner: Option<String>,
}

impl FlowTrace {
    pub fn last(&self) -> &FlowSample {
        self.samples.last().expect("a trace always has its initial sample")
    }

    /// Largest increase of the line-integral Lyapunov value between
    /// consecutive samples (0 if it never increases).
    pub fn max_h_increase(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| w[1].h_line - w[0].h_line)
            .fold(0.0, f64::max)
    }

    /// Largest gap between the two Lyapunov trackers.
    pub fn max_h_drift(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.h_line - s.h_acc).abs())
            .fold(0.0, f64::max)
    }

    /// Smallest and largest value of any flow variable over the trace.
    pub fn state_range(&self) -> (f64, f64) {
        self.samples
            .iter()
            .flat_map(|s| s.state.iter())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    /// CSV with one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for v in &self.variables {
            write!(out, ",l_e{v}").unwrap();
        }
        out.push_str(",K_inf,K_l2,H_lineintegral,H_accumulated\n");
        for s in &self.samples {
            write!(out, "{:e}", s.t).unwrap();
            for x in &s.state {
                write!(out, ",{x:e}").unwrap();
            }
            writeln!(out, ",{:e},{:e},{:e},{:e}", s.k_inf, s.k_l2, s.h_line, s.h_acc).unwrap();
        }
        out
    }
}

struct System<'a> {
    tri: &'a Triangulation,
    mode: FlowMode,
    vars: Vec<usize>,
}

impl System<'_> {
    fn metric(&self, y: &[f64]) -> Result<GeneralMetric> {
        match self.mode {
            FlowMode::Reduced => reconstruct_full_metric(y, self.tri),
            FlowMode::Full => GeneralMetric::new(self.tri, y.to_vec())
                .map_err(|e| Error::numeric(e.to_string())),
        }
    }

    /// Derivative of the augmented state `(l, H_acc)`.
    fn rhs(&self, y: &[f64]) -> Result<Vec<f64>> {
        let n = self.vars.len();
        let k = curvature(&self.metric(&y[..n])?, self.tri)?.restrict(&self.vars);
        let mut d = k.clone();
        d.push(-k.iter().map(|v| v * v).sum::<f64>());
        Ok(d)
    }

    fn rk4(&self, y: &[f64], h: f64) -> Result<Vec<f64>> {
        let axpy = |a: &[f64], s: f64, b: &[f64]| -> Vec<f64> {
            a.iter().zip(b).map(|(x, d)| x + s * d).collect()
        };
        let k1 = self.rhs(y)?;
        let k2 = self.rhs(&axpy(y, 0.5 * h, &k1))?;
        let k3 = self.rhs(&axpy(y, 0.5 * h, &k2))?;
        let k4 = self.rhs(&axpy(y, h, &k3))?;
        let out: Vec<f64> = (0..y.len())
            .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect();
        if out.iter().all(|v| v.is_finite()) {
            Ok(out)
        } else {
            Err(Error::numeric("non-finite state"))
        }
    }

    fn sample(&self, t: f64, y: &[f64], cfg: &FlowConfig) -> Result<(FlowSample, GeneralMetric)> {
        let n = self.vars.len();
        let metric = self.metric(&y[..n])?;
        let k = curvature(&metric, self.tri)?;
        let kv = k.restrict(&self.vars);
        let h_line = H_total(&metric, self.tri, &cfg.quad)?;
        let sample = FlowSample {
            t,
            state: y[..n].to_vec(),
            k_inf: kv.iter().fold(0.0, |m, v| m.max(v.abs())),
            k_l2: kv.iter().map(|v| v * v).sum::<f64>().sqrt(),
            curvature: k.values,
            h_line,
            h_acc: y[n],
        };
        Ok((sample, metric))
    }
}

const MIN_STEP: f64 = 1e-14;

/// Integrates the flow from the configured initial metric with classical
/// Runge-Kutta steps and step-doubling error control.
///
/// Stops when the curvature on the flow variables drops below
/// `cfg.stop_tol` or at `cfg.max_time`. A non-finite state or collapsing
/// step size ends the run with [`Termination::NumericError`]; invalid input
/// is an error.
pub fn run_flow(tri: &Triangulation, cfg: &FlowConfig) -> Result<FlowTrace> {
    if !(cfg.stop_tol > 0.0 && cfg.max_time > 0.0 && cfg.dt0 > 0.0 && cfg.local_tol > 0.0) {
        return Err(Error::numeric(
            "tolerances, first step and maximum time must be positive",
        ));
    }
    let vars = match cfg.mode {
        FlowMode::Reduced => {
            let violations = check_properly_glued(tri);
            if !violations.is_empty() {
                return Err(Error::Logic(format!(
                    "the reduced flow needs a properly glued triangulation: {}",
                    violations[0].message
                )));
            }
            tri.hyper_edge_classes()
        }
        FlowMode::Full => (0..tri.edge_classes().len()).collect(),
    };
    let banner = (cfg.mode == FlowMode::Full).then(|| {
        warn!("{FULL_MODE_BANNER}");
        FULL_MODE_BANNER.to_string()
    });
    let n = vars.len();
    let mut y = match &cfg.initial {
        InitialMetric::Constant(c) => vec![*c; n],
        InitialMetric::Values(v) if v.len() == n => v.clone(),
        InitialMetric::Values(v) => {
            return Err(Error::MetricMismatch(format!(
                "{} initial values for {n} flow variables",
                v.len()
            )))
        }
    };
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric("non-finite initial metric"));
    }
    let sys = System {
        tri,
        mode: cfg.mode,
        vars: vars.clone(),
    };
    y.push(0.0);
    let (mut first, mut metric) = sys.sample(0.0, &y, cfg)?;
    y[n] = first.h_line;
    first.h_acc = first.h_line;

    let mut trace = FlowTrace {
        mode: cfg.mode,
        variables: vars,
        samples: vec![first],
        termination: Termination::MaxTime,
        accepted_steps: 0,
        rejected_steps: 0,
        final_metric: metric.clone(),
        banner,
    };
    if trace.last().k_inf < cfg.stop_tol {
        trace.termination = Termination::Converged;
        return Ok(trace);
    }

    let mut t = 0.0;
    let mut h = cfg.dt0;
    let mut last_sample_t = 0.0;
    let reduced = cfg.mode == FlowMode::Reduced;
    let termination = loop {
        if t >= cfg.max_time {
            break Termination::MaxTime;
        }
        h = h.min(cfg.max_time - t);
        if h < MIN_STEP * t.max(1.0) {
            break Termination::NumericError {
                message: format!("step size collapsed to {h:e} at t = {t}"),
            };
        }
        let attempt = sys.rk4(&y, h).and_then(|big| {
            let half = sys.rk4(&y, 0.5 * h)?;
            let two = sys.rk4(&half, 0.5 * h)?;
            Ok((big, half, two))
        });
        let (big, half, two) = match attempt {
            Ok(v) => v,
            Err(e) => {
                debug!("step {h:e} at t = {t} failed: {e}; halving");
                h *= 0.5;
                trace.rejected_steps += 1;
                continue;
            }
        };
        if reduced && [&big, &half, &two].iter().any(|s| s[..n].iter().any(|&v| v <= 0.0)) {
            h *= 0.5;
            trace.rejected_steps += 1;
            continue;
        }
        let err = (0..n)
            .map(|i| (two[i] - big[i]).abs() / 15.0)
            .fold(0.0, f64::max);
        let factor = if err == 0.0 {
            4.0
        } else {
            (0.9 * (cfg.local_tol / err).powf(0.2)).clamp(0.1, 4.0)
        };
        if err > cfg.local_tol {
            h *= factor;
            trace.rejected_steps += 1;
            continue;
        }
        y = two;
        t += h;
        trace.accepted_steps += 1;
        h *= factor;

        let (s, m) = match sys.sample(t, &y, cfg) {
            Ok(v) => v,
            Err(e) => break Termination::NumericError { message: e.to_string() },
        };
        let converged = s.k_inf < cfg.stop_tol;
        let due = t - last_sample_t >= cfg.sample_interval || t >= cfg.max_time;
        if converged || due {
            last_sample_t = t;
            trace.samples.push(s);
            metric = m;
        }
        if converged {
            break Termination::Converged;
        }
    };
    if let Termination::NumericError { message } = &termination {
        warn!("flow stopped: {message}");
    }
    // Make sure the trace ends at the final state.
    if trace.last().t < t {
        if let Ok((s, m)) = sys.sample(t, &y, cfg) {
            trace.samples.push(s);
            metric = m;
        }
    }
    info!(
        "flow finished at t = {t} after {} steps ({} rejected): {:?}",
        trace.accepted_steps, trace.rejected_steps, termination
    );
    trace.final_metric = metric;
    trace.termination = termination;
    Ok(trace)
}
