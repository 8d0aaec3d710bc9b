//! Partial derivatives of the 3-1 angle function and the a priori bounds
//! built on them.

use std::f64::consts::PI;

use serde::Serialize;

use super::{equilateral_lengths, extended_angle, phi31_hyper, phi40_x, phi_x};
use crate::error::Result;

/// Dihedral angle that the longest hyper-ideal edge of a tetrahedron with
/// all hyper-ideal lengths at most `arccosh 2` always exceeds.
pub const LONGEST_EDGE_MIN_ANGLE: f64 = 2.0 * PI / 11.0;

/// Partial derivatives of [`phi_x`] in `x2, ..., x6`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiPartials {
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    pub d5: f64,
    pub d6: f64,
    /// `x1 = 1`: every partial carries the factor `x1^2 - 1` and vanishes.
    pub degenerate: bool,
}

pub fn phi_partials(x: &[f64; 6]) -> PhiPartials {
    let [x1, x2, x3, x4, x5, x6] = *x;
    let f = x1 * x1 - 1.0;
    if f == 0.0 {
        return PhiPartials {
            d2: 0.0,
            d3: 0.0,
            d4: 0.0,
            d5: 0.0,
            d6: 0.0,
            degenerate: true,
        };
    }
    let s = x1 * x1 + x3 * x3 + x5 * x5 + 2.0 * x1 * x3 * x5 - 1.0;
    let t = x2 * x2 + x4 * x4 + 2.0 * x1 * x2 * x4;
    let a0 = 1.0 / (s.sqrt() * t.powf(1.5));
    let a1 = 1.0 / (s.powf(1.5) * t.sqrt());
    let p = x1 * x6 + x2 * x3 - x4 * x5;
    let m = x1 * x6 - x2 * x3 + x4 * x5;
    PhiPartials {
        d2: a0 * f * (x4 * p + x2 * x6),
        d3: a1 * f * (x5 * p + x4 + x1 * x2 + x3 * x6),
        d4: a0 * f * (x2 * m + x4 * x6),
        d5: a1 * f * (x3 * m + x2 + x1 * x4 + x5 * x6),
        d6: -f / (s.sqrt() * t.sqrt()),
        degenerate: false,
    }
}

/// The four corners whose maximum bounds `phi_x` over the box
/// `x3, x5 in [1, b]`, `x2, x4, x6 in [floor, a]`.
pub fn corner_points(x1: f64, a: f64, b: f64, floor: f64) -> [[f64; 6]; 4] {
    [
        [x1, a, b, a, b, floor],
        [x1, a, b, a, 1.0, floor],
        [x1, a, b, floor, b, floor],
        [x1, a, b, floor, 1.0, floor],
    ]
}

/// Upper bound for `phi_x` at fixed `x1` over the box with lower bound 1/2
/// on `x2, x4, x6`.
pub fn corner_bound(x1: f64, a: f64, b: f64) -> f64 {
    corner_bound_with_floor(x1, a, b, 0.5)
}

pub fn corner_bound_with_floor(x1: f64, a: f64, b: f64, floor: f64) -> f64 {
    corner_points(x1, a, b, floor)
        .iter()
        .map(phi_x)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Closed forms of the four corner values at `x1 = a = b = k`.
pub fn corner_h(k: f64) -> [f64; 4] {
    let k2 = k * k;
    let k3 = k2 * k;
    [
        (4.0 * k3 + 3.0 * k2 + 1.0)
            / (2.0 * ((2.0 * k3 + 3.0 * k2 - 1.0) * (2.0 * k3 + 2.0 * k2)).sqrt()),
        (2.0 * k3 + 3.0 * k2 + 2.0 * k + 1.0) / (4.0 * k * (2.0 * k3 + 2.0 * k2).sqrt()),
        (2.0 * k3 + 2.0 * k2 + k + 1.0) / ((2.0 * k3 + 3.0 * k2 - 1.0) * (8.0 * k2 + 1.0)).sqrt(),
        (2.0 * k3 - k2 + 4.0 * k + 1.0) / (2.0 * k * (8.0 * k2 + 1.0).sqrt()),
    ]
}

/// Closed forms of the corner values at `a = b = 2` as functions of `x1`.
pub fn tau(x: f64) -> [f64; 4] {
    let x2 = x * x;
    [
        (-x2 + 16.0 * x + 17.0) / (4.0 * ((2.0 + 2.0 * x) * (x2 + 8.0 * x + 7.0)).sqrt()),
        (-x2 + 12.0 * x + 13.0) / (4.0 * (x + 2.0) * (2.0 + 2.0 * x).sqrt()),
        (-x2 + 10.0 * x + 11.0) / ((8.0 * x + 17.0) * (x2 + 8.0 * x + 7.0)).sqrt(),
        (-x2 + 9.0 * x + 7.0) / ((x + 2.0) * (8.0 * x + 17.0).sqrt()),
    ]
}

/// The three 4-0 corner values at `x1`, evaluated through [`phi40_x`].
pub fn phi40_corner_values(x1: f64) -> [f64; 3] {
    [
        phi40_x(&[x1, 2.0, 2.0, 1.0, 2.0, 2.0]),
        phi40_x(&[x1, 2.0, 1.0, 1.0, 2.0, 1.0]),
        phi40_x(&[x1, 2.0, 2.0, 1.0, 2.0, 1.0]),
    ]
}

pub fn phi40_corner_max(x1: f64) -> f64 {
    phi40_corner_values(x1)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Lower bound for `phi_x` when `x1 <= 1 + delta` and all other coordinates are at most `c`.
pub fn small_edge_lower_bound(c: f64, delta: f64) -> f64 {
    let q = 2.0 * delta + delta * delta;
    (1.0 - 0.5 * q * c) / (1.0 + 2.0 * delta * c * c + q)
}

/// A `delta` such that `x1 <= 1 + delta` and all other coordinates at most `c`
/// force the angle at edge 23 to be at most `eps`.
///
/// For `c = 2` this is `eps^2 / (6 pi^2)`. Otherwise the largest `delta` below
/// `1 / (2c)` with [`small_edge_lower_bound`] `>= cos eps` is found by bisection.
pub fn small_edge_angle_bound(c: f64, eps: f64) -> f64 {
    assert!(c > 1.0 && eps > 0.0 && eps < PI, "need c > 1 and 0 < eps < pi");
    if c == 2.0 {
        return eps * eps / (6.0 * PI * PI);
    }
    let target = eps.cos();
    let (mut lo, mut hi) = (0.0, 0.5 / c);
    if small_edge_lower_bound(c, hi) >= target {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if small_edge_lower_bound(c, mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LongestEdge {
    /// Vertex labels of the longest hyper-ideal edge.
    pub pair: (usize, usize),
    pub length: f64,
    pub phi: f64,
    pub alpha: f64,
}

/// Dihedral angle at the longest hyper-ideal edge of the 3-1 tetrahedron
/// with hyper-ideal lengths `[l23, l24, l34]` and the equilateral decoration.
pub fn longest_edge_angle(hyper: [f64; 3]) -> Result<LongestEdge> {
    let l = equilateral_lengths(hyper)?.clamp_plus();
    let pairs = [(2, 3), (2, 4), (3, 4)];
    let mut best = 0;
    for k in 1..3 {
        if hyper[k] > hyper[best] {
            best = k;
        }
    }
    let (i, j) = pairs[best];
    let phi = phi31_hyper(&l, i, j)?;
    Ok(LongestEdge {
        pair: (i, j),
        length: hyper[best],
        phi,
        alpha: extended_angle(phi),
    })
}

/// True when the angle at the longest hyper-ideal edge exceeds `2 pi / 11`.
pub fn longest_edge_angle_check(hyper: [f64; 3]) -> Result<bool> {
    Ok(longest_edge_angle(hyper)?.alpha > LONGEST_EDGE_MIN_ANGLE)
}
