//! Dihedral-angle functions of single generalized tetrahedra.
//!
//! A 3-1 tetrahedron has one ideal vertex and three hyper-ideal ones, a 4-0
//! tetrahedron has four hyper-ideal vertices. Vertices are labelled `1..=4`
//! and edge lengths are stored in the order `12, 13, 14, 23, 24, 34`; for a
//! 3-1 tetrahedron vertex 1 is the ideal one, so the first three lengths are
//! decorated (signed) lengths of ideal edges.

mod bounds;
mod equilateral;
mod phi;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use bounds::{
    corner_bound, corner_bound_with_floor, corner_h, corner_points, longest_edge_angle,
    longest_edge_angle_check, phi40_corner_max, phi40_corner_values, phi_partials,
    small_edge_angle_bound, small_edge_lower_bound, tau, LongestEdge, PhiPartials,
    LONGEST_EDGE_MIN_ANGLE,
};
pub use equilateral::{
    equilateral_forward, equilateral_inverse, equilateral_jacobian, equilateral_lengths,
    lemma_bounds, partner,
};
pub use phi::{phi31_hyper, phi31_ideal, phi40, phi40_x, phi_x};

/// `arccosh 2`, the upper barrier for hyper-ideal lengths.
pub const ARCCOSH_2: f64 = 1.316_957_896_924_816_6;

/// Pairs of vertex labels in storage order.
pub const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Storage index of the pair `{i, j}` of labels in `1..=4`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    PAIRS
        .iter()
        .position(|&p| p == (a, b))
        .unwrap_or_else(|| panic!("invalid vertex pair {{{i}, {j}}}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TetKind {
    #[serde(rename = "3-1")]
    ThreeOne,
    #[serde(rename = "4-0")]
    FourZero,
}

/// Edge lengths of a 3-1 tetrahedron. `l12, l13, l14` are the decorated
/// lengths of the edges at the ideal vertex 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetLengths31 {
    pub l12: f64,
    pub l13: f64,
    pub l14: f64,
    pub l23: f64,
    pub l24: f64,
    pub l34: f64,
}

impl TetLengths31 {
    pub fn from_array(l: [f64; 6]) -> Self {
        TetLengths31 {
            l12: l[0],
            l13: l[1],
            l14: l[2],
            l23: l[3],
            l24: l[4],
            l34: l[5],
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.l12, self.l13, self.l14, self.l23, self.l24, self.l34]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.to_array()[pair_index(i, j)]
    }

    /// Hyper-ideal lengths clamped at 0, ideal lengths untouched.
    pub fn clamp_plus(&self) -> Self {
        TetLengths31 {
            l23: self.l23.max(0.0),
            l24: self.l24.max(0.0),
            l34: self.l34.max(0.0),
            ..*self
        }
    }
}

/// Edge lengths of a 4-0 tetrahedron, in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetLengths40 {
    pub l: [f64; 6],
}

impl TetLengths40 {
    pub fn from_array(l: [f64; 6]) -> Self {
        TetLengths40 { l }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.l[pair_index(i, j)]
    }

    pub fn clamp_plus(&self) -> Self {
        TetLengths40 {
            l: self.l.map(|x| x.max(0.0)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TetLengths {
    ThreeOne(TetLengths31),
    FourZero(TetLengths40),
}

impl TetLengths {
    pub fn new(kind: TetKind, l: [f64; 6]) -> Self {
        match kind {
            TetKind::ThreeOne => TetLengths::ThreeOne(TetLengths31::from_array(l)),
            TetKind::FourZero => TetLengths::FourZero(TetLengths40::from_array(l)),
        }
    }

    pub fn kind(&self) -> TetKind {
        match self {
            TetLengths::ThreeOne(_) => TetKind::ThreeOne,
            TetLengths::FourZero(_) => TetKind::FourZero,
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        match self {
            TetLengths::ThreeOne(l) => l.to_array(),
            TetLengths::FourZero(l) => l.l,
        }
    }

    pub fn clamp_plus(&self) -> Self {
        match self {
            TetLengths::ThreeOne(l) => TetLengths::ThreeOne(l.clamp_plus()),
            TetLengths::FourZero(l) => TetLengths::FourZero(l.clamp_plus()),
        }
    }

    /// The raw angle function of edge `k` (storage order) at already clamped lengths.
    pub fn phi(&self, k: usize) -> Result<f64> {
        let (i, j) = PAIRS[k];
        match self {
            TetLengths::ThreeOne(l) if i == 1 => phi31_ideal(l, j),
            TetLengths::ThreeOne(l) => phi31_hyper(l, i, j),
            TetLengths::FourZero(l) => phi40(l, i, j),
        }
    }
}

/// The x-coordinates of a 3-1 tetrahedron:
/// `x1 = cosh l23, x3 = cosh l34, x5 = cosh l24` and
/// `x2 = e^l12, x4 = e^l13, x6 = e^l14`. Stored as `x[0] = x1, ..., x[5] = x6`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetXCoords {
    pub x: [f64; 6],
}

impl TetXCoords {
    pub fn from_lengths(l: &TetLengths31) -> Self {
        let l = l.clamp_plus();
        TetXCoords {
            x: [
                l.l23.cosh(),
                l.l12.exp(),
                l.l34.cosh(),
                l.l13.exp(),
                l.l24.cosh(),
                l.l14.exp(),
            ],
        }
    }

    /// Inverse of [`from_lengths`](Self::from_lengths); needs `x1, x3, x5 >= 1`
    /// and `x2, x4, x6 > 0`.
    pub fn to_lengths(&self) -> TetLengths31 {
        let [x1, x2, x3, x4, x5, x6] = self.x;
        TetLengths31 {
            l12: x2.ln(),
            l13: x4.ln(),
            l14: x6.ln(),
            l23: x1.max(1.0).acosh(),
            l24: x5.max(1.0).acosh(),
            l34: x3.max(1.0).acosh(),
        }
    }
}

/// Extended dihedral angles and the raw angle-function values, in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetAngles {
    pub alpha: [f64; 6],
    pub phi: [f64; 6],
}

/// `arccos` of `phi` clamped into `[-1, 1]`.
pub fn extended_angle(phi: f64) -> f64 {
    phi.clamp(-1.0, 1.0).acos()
}

/// Extended dihedral angles at `l`, clamping hyper-ideal lengths first.
pub fn extended_angles(l: &TetLengths) -> Result<TetAngles> {
    let lp = l.clamp_plus();
    let mut phi = [0.0; 6];
    for (k, p) in phi.iter_mut().enumerate() {
        *p = lp.phi(k)?;
    }
    Ok(TetAngles {
        alpha: phi.map(extended_angle),
        phi,
    })
}

/// True iff every angle function lies strictly inside `(-1 + margin, 1 - margin)`.
/// Non-finite evaluations count as not real.
pub fn is_real(l: &TetLengths, margin: f64) -> bool {
    match extended_angles(l) {
        Ok(a) => a.phi.iter().all(|&p| p.abs() < 1.0 - margin),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamp_plus_31_keeps_ideal_lengths() {
        let l = TetLengths31::from_array([-1.0, 2.0, 0.5, -0.3, 1.0, 2.0]);
        assert_eq!(l.clamp_plus().to_array(), [-1.0, 2.0, 0.5, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn clamp_plus_40_clamps_everything() {
        let l = TetLengths40::from_array([-1.0; 6]);
        assert_eq!(l.clamp_plus().l, [0.0; 6]);
        let m = TetLengths40::from_array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6]);
        assert_eq!(m.clamp_plus(), m);
    }

    #[test]
    fn arccosh_2_constant() {
        assert!((ARCCOSH_2 - 2f64.acosh()).abs() < 1e-15);
    }

    #[test]
    fn clamped_angle_saturates() {
        assert_eq!(extended_angle(-1.3), std::f64::consts::PI);
        assert_eq!(extended_angle(1.0000001), 0.0);
    }

    #[test]
    fn zero_hyper_edge_gives_zero_angle() {
        let l = TetLengths::new(TetKind::ThreeOne, [0.2, 0.1, -0.3, 0.0, 1.0, 0.7]);
        let a = extended_angles(&l).unwrap();
        assert_eq!(a.phi[3], 1.0);
        assert_eq!(a.alpha[3], 0.0);
        assert!(!is_real(&l, 0.0));
    }

    #[test]
    fn x_coords_roundtrip() {
        let l = TetLengths31::from_array([0.3, -0.2, 0.1, 0.9, 1.1, 0.4]);
        let back = TetXCoords::from_lengths(&l).to_lengths().to_array();
        for (a, b) in back.iter().zip(l.to_array()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
