//! The decoration constraint that makes the three faces at the ideal vertex
//! of a 3-1 tetrahedron cut the horosphere in a unit equilateral triangle.

use super::TetLengths31;
use crate::error::{Error, Result};

/// Gap kept above the pole at `x2 = 1/2`.
const POLE_GUARD: f64 = 1e-12;
const BISECTION_STEPS: usize = 200;
const NEWTON_STEPS: usize = 4;
const RESIDUAL_TOL: f64 = 1e-12;

fn g(m: f64, n: f64) -> f64 {
    2.0 * m * n - 0.5 * (m / n + n / m)
}

fn dg_dm(m: f64, n: f64) -> f64 {
    2.0 * n - 0.5 * (1.0 / n - n / (m * m))
}

/// `(x1, x3, x5)` from `(x2, x4, x6)`; `x1` pairs `x2, x4`, `x3` pairs `x4, x6`
/// and `x5` pairs `x2, x6`.
pub fn equilateral_forward(x2: f64, x4: f64, x6: f64) -> (f64, f64, f64) {
    (g(x2, x4), g(x4, x6), g(x2, x6))
}

/// Jacobian of [`equilateral_forward`], rows `x1, x3, x5`, columns `x2, x4, x6`.
pub fn equilateral_jacobian(x2: f64, x4: f64, x6: f64) -> [[f64; 3]; 3] {
    [
        [dg_dm(x2, x4), dg_dm(x4, x2), 0.0],
        [0.0, dg_dm(x4, x6), dg_dm(x6, x4)],
        [dg_dm(x2, x6), 0.0, dg_dm(x6, x2)],
    ]
}

/// The `n > 0` with `g(m, n) = k`, for `m > 1/2`.
pub fn partner(k: f64, m: f64) -> f64 {
    let q = 4.0 * m * m - 1.0;
    m * (k + (k * k + q).sqrt()) / q
}

/// Closed-form bounds on the solution of the inverse problem when every
/// target is at most `a`: `(lower, upper)`.
pub fn lemma_bounds(a: f64) -> (f64, f64) {
    let lower = (2.0 * (a + 1.0) + (2.0 * (a + 1.0)).sqrt()) / (4.0 * a + 2.0);
    let upper = (a + (a * a + 3.0).sqrt()) / 3.0;
    (lower, upper)
}

fn residual(y: [f64; 3], target: [f64; 3]) -> f64 {
    let (a, b, c) = equilateral_forward(y[0], y[1], y[2]);
    (a - target[0])
        .abs()
        .max((b - target[1]).abs())
        .max((c - target[2]).abs())
}

fn solve3(m: [[f64; 3]; 3], r: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(m);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for (c, o) in out.iter_mut().enumerate() {
        let mut mc = m;
        for row in 0..3 {
            mc[row][c] = r[row];
        }
        *o = det(mc) / d;
    }
    Some(out)
}

fn bisect(x1: f64, x3: f64, x5: f64) -> [f64; 3] {
    let a_max = x1.max(x3).max(x5);
    let f = |a: f64| g(partner(x1, a), partner(x5, a)) - x3;
    let (mut lo, mut hi) = (0.5 + POLE_GUARD, a_max);
    // f decreases in a; f(lo) > 0 always and f(a_max) <= 0 up to rounding,
    // so the bracket collapses onto a_max when the root sits there.
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    [a, partner(x1, a), partner(x5, a)]
}

/// The unique `(x2, x4, x6)` with `equilateral_forward(x2, x4, x6) = (x1, x3, x5)`,
/// for targets `>= 1`. Bisection on `x2` followed by Newton polishing.
pub fn equilateral_inverse(x1: f64, x3: f64, x5: f64) -> Result<(f64, f64, f64)> {
    if !(x1 >= 1.0 && x3 >= 1.0 && x5 >= 1.0) || !(x1.is_finite() && x3.is_finite() && x5.is_finite())
    {
        return Err(Error::numeric(format!(
            "equilateral inverse needs finite targets >= 1, got ({x1}, {x3}, {x5})"
        )));
    }
    let target = [x1, x3, x5];
    let mut y = bisect(x1, x3, x5);
    let mut res = residual(y, target);
    for _ in 0..NEWTON_STEPS {
        if res == 0.0 {
            break;
        }
        let (a, b, c) = equilateral_forward(y[0], y[1], y[2]);
        let r = [x1 - a, x3 - b, x5 - c];
        let Some(step) = solve3(equilateral_jacobian(y[0], y[1], y[2]), r) else { break };
        let next = [y[0] + step[0], y[1] + step[1], y[2] + step[2]];
        let next_res = residual(next, target);
        if next.iter().all(|&v| v > 0.5) && next_res < res {
            y = next;
            res = next_res;
        } else {
            break;
        }
    }
    let scale = x1.max(x3).max(x5);
    if !(res <= RESIDUAL_TOL * scale) {
        return Err(Error::numeric(format!(
            "equilateral inverse residual {res:e} at ({x1}, {x3}, {x5})"
        )));
    }
    Ok((y[0], y[1], y[2]))
}

/// Full length vector of a 3-1 tetrahedron from its hyper-ideal lengths
/// `[l23, l24, l34]`. Negative lengths act as 0 for the reconstruction and
/// are kept as given in the output.
pub fn equilateral_lengths(hyper: [f64; 3]) -> Result<TetLengths31> {
    let [l23, l24, l34] = hyper;
    let (x2, x4, x6) = equilateral_inverse(
        l23.max(0.0).cosh(),
        l34.max(0.0).cosh(),
        l24.max(0.0).cosh(),
    )?;
    Ok(TetLengths31 {
        l12: x2.ln(),
        l13: x4.ln(),
        l14: x6.ln(),
        l23,
        l24,
        l34,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_fixed_points() {
        assert_eq!(equilateral_forward(1.0, 1.0, 1.0), (1.0, 1.0, 1.0));
        let a = 1.5f64.sqrt();
        let (p, q, r) = equilateral_forward(a, a, a);
        for v in [p, q, r] {
            assert!((v - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn forward_direct_evaluation() {
        let (p, q, r) = equilateral_forward(0.6, 0.9, 1.2);
        assert!((p - (2.0 * 0.54 - 0.5 * (0.6 / 0.9 + 0.9 / 0.6))).abs() < 1e-15);
        assert!((q - (2.0 * 1.08 - 0.5 * (0.9 / 1.2 + 1.2 / 0.9))).abs() < 1e-15);
        assert!((r - (2.0 * 0.72 - 0.5 * (0.6 / 1.2 + 1.2 / 0.6))).abs() < 1e-15);
    }

    #[test]
    fn inverse_symmetric_points() {
        let (a, b, c) = equilateral_inverse(1.0, 1.0, 1.0).unwrap();
        for v in [a, b, c] {
            assert!((v - 1.0).abs() < 1e-12);
        }
        let (a, b, c) = equilateral_inverse(2.0, 2.0, 2.0).unwrap();
        for v in [a, b, c] {
            assert!((v - 1.5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn partner_solves_g() {
        for (k, m) in [(1.0, 0.7), (3.5, 1.2), (9.0, 0.51)] {
            assert!((g(m, partner(k, m)) - k).abs() < 1e-10 * k);
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let y = [0.8, 1.3, 1.1];
        let jac = equilateral_jacobian(y[0], y[1], y[2]);
        let h = 1e-6;
        for c in 0..3 {
            let mut p = y;
            let mut m = y;
            p[c] += h;
            m[c] -= h;
            let fp = equilateral_forward(p[0], p[1], p[2]);
            let fm = equilateral_forward(m[0], m[1], m[2]);
            let d = [(fp.0 - fm.0) / (2.0 * h), (fp.1 - fm.1) / (2.0 * h), (fp.2 - fm.2) / (2.0 * h)];
            for r in 0..3 {
                assert!((d[r] - jac[r][c]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn rejects_targets_below_one() {
        assert!(equilateral_inverse(0.9, 1.0, 1.0).is_err());
        assert!(equilateral_inverse(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn negative_hyper_lengths_reconstruct_like_zero() {
        let a = equilateral_lengths([-0.4, 0.7, 0.2]).unwrap();
        let b = equilateral_lengths([0.0, 0.7, 0.2]).unwrap();
        assert_eq!((a.l12, a.l13, a.l14), (b.l12, b.l13, b.l14));
        assert_eq!(a.l23, -0.4);
    }
}
