use super::{TetLengths31, TetLengths40};
use crate::error::{finite, Result};

fn third(i: usize, j: usize) -> usize {
    9 - i - j
}

fn check_hyper_pair(i: usize, j: usize) {
    assert!(
        i != j && (2..=4).contains(&i) && (2..=4).contains(&j),
        "hyper-ideal pair must be two distinct labels in 2..=4, got {{{i}, {j}}}"
    );
}

/// Angle function of the hyper-ideal edge `ij` of a 3-1 tetrahedron,
/// `{i, j} ⊂ {2, 3, 4}`. Expects clamped lengths.
pub fn phi31_hyper(l: &TetLengths31, i: usize, j: usize) -> Result<f64> {
    check_hyper_pair(i, j);
    let k = third(i, j);
    let lij = l.get(i, j);
    if lij == 0.0 {
        return Ok(1.0);
    }
    let (ui, uj, uk) = (l.get(1, i).exp(), l.get(1, j).exp(), l.get(1, k).exp());
    let (cij, cik, cjk) = (lij.cosh(), l.get(i, k).cosh(), l.get(j, k).cosh());
    let s2 = lij.sinh().powi(2);
    let num = (uj + ui * cij) * (cjk + cij * cik) - (uk + ui * cik) * s2;
    let den = ((cjk * cjk + cij * cij + cik * cik + 2.0 * cjk * cij * cik - 1.0)
        * (uj * uj + 2.0 * uj * ui * cij + ui * ui))
        .sqrt();
    finite(num / den, "phi31_hyper")
}

/// Angle function of the ideal edge `1i` of a 3-1 tetrahedron, `i ∈ {2, 3, 4}`.
pub fn phi31_ideal(l: &TetLengths31, i: usize) -> Result<f64> {
    assert!((2..=4).contains(&i), "ideal edge is 1i with i in 2..=4, got {i}");
    let (j, k) = match i {
        2 => (3, 4),
        3 => (2, 4),
        _ => (2, 3),
    };
    let (ui, uj, uk) = (l.get(1, i).exp(), l.get(1, j).exp(), l.get(1, k).exp());
    let (cij, cik, cjk) = (l.get(i, j).cosh(), l.get(i, k).cosh(), l.get(j, k).cosh());
    let num = uj * uk + ui * (uk * cij + uj * cik - ui * cjk);
    let den = ((uj * uj + 2.0 * uj * ui * cij + ui * ui) * (uk * uk + 2.0 * uk * ui * cik + ui * ui))
        .sqrt();
    finite(num / den, "phi31_ideal")
}

/// Angle function of edge `ij` of a 4-0 tetrahedron. Expects clamped lengths.
pub fn phi40(l: &TetLengths40, i: usize, j: usize) -> Result<f64> {
    assert!(i != j && (1..=4).contains(&i) && (1..=4).contains(&j));
    let lij = l.get(i, j);
    if lij == 0.0 {
        return Ok(1.0);
    }
    let mut rest = (1..=4).filter(|&v| v != i && v != j);
    let (k, m) = (rest.next().unwrap(), rest.next().unwrap());
    let c = |a: usize, b: usize| l.get(a, b).cosh();
    let (cij, cik, cim, cjk, cjm, ckm) = (lij.cosh(), c(i, k), c(i, m), c(j, k), c(j, m), c(k, m));
    let s2 = lij.sinh().powi(2);
    let num = cik * cim + cjk * cjm + cij * (cik * cjm + cim * cjk) - ckm * s2;
    let den = (cij * cij + cik * cik + cjk * cjk + 2.0 * cij * cik * cjk - 1.0).sqrt()
        * (cij * cij + cim * cim + cjm * cjm + 2.0 * cij * cim * cjm - 1.0).sqrt();
    finite(num / den, "phi40")
}

/// The 3-1 hyper-ideal angle function in x-coordinates, `φ23` as a function
/// of `(x1, ..., x6)`.
pub fn phi_x(x: &[f64; 6]) -> f64 {
    let [x1, x2, x3, x4, x5, x6] = *x;
    let num = x4 * x3 + x2 * x5 + x1 * x2 * x3 + x1 * x4 * x5 - x1 * x1 * x6 + x6;
    let den = (x1 * x1 + x3 * x3 + x5 * x5 + 2.0 * x1 * x3 * x5 - 1.0).sqrt()
        * (x2 * x2 + x4 * x4 + 2.0 * x1 * x2 * x4).sqrt();
    num / den
}

/// The 4-0 angle function of edge `12` written in the variables
/// `x1 = c12, x2 = c13, x3 = c14, x4 = c34, x5 = c24, x6 = c23`.
pub fn phi40_x(x: &[f64; 6]) -> f64 {
    let [x1, x2, x3, x4, x5, x6] = *x;
    let num = x2 * x3 + x5 * x6 + x1 * (x2 * x5 + x3 * x6) - x4 * (x1 * x1 - 1.0);
    let den = (x1 * x1 + x2 * x2 + x6 * x6 + 2.0 * x1 * x2 * x6 - 1.0).sqrt()
        * (x1 * x1 + x3 * x3 + x5 * x5 + 2.0 * x1 * x3 * x5 - 1.0).sqrt();
    num / den
}
