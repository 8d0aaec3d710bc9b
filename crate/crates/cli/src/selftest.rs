//! Randomised self-checks of the single-tetrahedron kernels.

use hyperflow::covolume::cov_tet;
use hyperflow::quadrature::QuadConfig;
use hyperflow::tetgeom::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub samples: usize,
    /// Largest observed error (or bound violation; 0 when none).
    pub worst: f64,
    pub tolerance: f64,
    pub ok: bool,
}

#[derive(Debug, Serialize)]
pub struct SelfTest {
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn check(name: &'static str, samples: usize, worst: f64, tolerance: f64) -> Check {
    Check {
        name,
        samples,
        worst,
        tolerance,
        ok: worst.is_finite() && worst < tolerance,
    }
}

pub fn run(seed: u64, samples: usize) -> hyperflow::Result<SelfTest> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let y: [f64; 3] = [r.gen_range(1.0..10.0), r.gen_range(1.0..10.0), r.gen_range(1.0..10.0)];
        let (a, b, c) = equilateral_inverse(y[0], y[1], y[2])?;
        let (f1, f3, f5) = equilateral_forward(a, b, c);
        worst = worst.max((f1 - y[0]).abs()).max((f3 - y[1]).abs()).max((f5 - y[2]).abs());
    }
    checks.push(check("inverse roundtrip", samples, worst, 1e-9));

    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let h = [r.gen_range(0.0..2.5), r.gen_range(0.0..2.5), r.gen_range(0.0..2.5)];
        let t = equilateral_lengths(h)?;
        for i in 2..=4 {
            worst = worst.max((phi31_ideal(&t, i)? - 0.5).abs());
        }
    }
    checks.push(check("ideal angle law", samples, worst, 1e-10));

    let mut excess: f64 = 0.0;
    let mut disjunction_failures = 0.0;
    for _ in 0..samples {
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
        excess = excess.max(phi_x(&x) - corner_bound(x1, a, b));
        let p = phi_partials(&x);
        if !(p.degenerate || (p.d2 > 0.0 && p.d3 > 0.0) || (p.d4 > 0.0 && p.d5 > 0.0)) {
            disjunction_failures += 1.0;
        }
    }
    checks.push(check("corner domination", samples, excess.max(0.0), 1e-12));
    checks.push(check("sign disjunction", samples, disjunction_failures, 0.5));

    let cfg = QuadConfig::with_tol(1e-13);
    let n = (samples / 100).max(1);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let mut l = [0.0; 6];
        for (k, v) in l.iter_mut().enumerate() {
            *v = if k < 3 { r.gen_range(-1.0..1.0) } else { r.gen_range(-0.3..1.5) };
        }
        let alpha = extended_angles(&TetLengths::new(TetKind::ThreeOne, l))?.alpha;
        let k = r.gen_range(0..6);
        let h = 1e-4;
        let (mut up, mut dn) = (l, l);
        up[k] += h;
        dn[k] -= h;
        let fd = (cov_tet(&TetLengths::new(TetKind::ThreeOne, up), &cfg)?
            - cov_tet(&TetLengths::new(TetKind::ThreeOne, dn), &cfg)?)
            / (2.0 * h);
        worst = worst.max((fd - alpha[k]).abs() / alpha[k].abs().max(1e-2));
    }
    checks.push(check("co-volume gradient", n, worst, 1e-5));

    let passed = checks.iter().all(|c| c.ok);
    Ok(SelfTest { seed, checks, passed })
}
