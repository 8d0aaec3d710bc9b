//! Adaptive Gauss-Kronrod (7/15) quadrature on a bounded interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Absolute error target for the whole interval.
    pub abs_tol: f64,
    /// Maximum number of bisections before giving up.
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-9,
            max_subdivisions: 20_000,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadConfig {
            abs_tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64, evals: &mut usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx)? + f(c + dx)?;
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    *evals += 15;
    Ok((k * h, ((k - g) * h).abs()))
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over `[a, b]`, splitting first at every breakpoint strictly
/// inside the interval.
///
/// Globally adaptive: the piece with the largest error estimate is bisected
/// until the summed estimate meets `cfg.abs_tol`. Rounding noise in the
/// integrand therefore costs at most its share of the total budget instead of
/// forcing every noisy piece down to machine resolution.
pub fn integrate<F>(mut f: F, a: f64, b: f64, breaks: &[f64], cfg: &QuadConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&t| t > a.min(b) && t < a.max(b))
        .collect();
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();
    if b < a {
        cuts.reverse();
    }
    let mut nodes = vec![a];
    nodes.extend(cuts);
    nodes.push(b);

    let mut evaluations = 0;
    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0;
    for w in nodes.windows(2) {
        if w[0] != w[1] {
            let (value, err) = kronrod(&mut f, w[0], w[1], &mut evaluations)?;
            total_err += err;
            heap.push(Piece { a: w[0], b: w[1], value, err });
        }
    }
    // Pieces a few ulps wide cannot be refined further.
    let mut frozen = Vec::new();
    let mut splits = 0;
    while total_err > cfg.abs_tol {
        let Some(worst) = heap.pop() else { break };
        let m = 0.5 * (worst.a + worst.b);
        let scale = worst.a.abs().max(worst.b.abs()).max(1.0);
        if (worst.b - worst.a).abs() <= 100.0 * f64::EPSILON * scale {
            frozen.push(worst);
            continue;
        }
        if splits >= cfg.max_subdivisions {
            return Err(Error::numeric(format!(
                "quadrature did not converge after {splits} subdivisions (error estimate {total_err:e}, worst piece [{}, {}])",
                worst.a, worst.b
            )));
        }
        splits += 1;
        let (v1, e1) = kronrod(&mut f, worst.a, m, &mut evaluations)?;
        let (v2, e2) = kronrod(&mut f, m, worst.b, &mut evaluations)?;
        total_err += e1 + e2 - worst.err;
        heap.push(Piece { a: worst.a, b: m, value: v1, err: e1 });
        heap.push(Piece { a: m, b: worst.b, value: v2, err: e2 });
    }
    let mut pieces: Vec<Piece> = heap.into_vec();
    pieces.extend(frozen);
    // Sum in interval order so the result does not depend on heap layout.
    pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
    Ok(QuadResult {
        value: pieces.iter().map(|p| p.value).sum(),
        error_estimate: pieces.iter().map(|p| p.err).sum(),
        evaluations,
    })
}
