#![allow(dead_code)]

use hyperflow::triangulation::{TetEntry, FACE_VERTICES, Triangulation, TriangulationDoc};
use hyperflow::{Result, M12_FIXTURE};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn m12() -> Triangulation {
    hyperflow::parse_triangulation(M12_FIXTURE).expect("fixture parses")
}

pub fn m12_doc() -> TriangulationDoc {
    serde_json::from_str(M12_FIXTURE).unwrap()
}

pub fn expected_report() -> serde_json::Value {
    serde_json::from_str(include_str!("../../fixtures/m12.expected.json")).unwrap()
}

pub type Glue = Option<(usize, [usize; 3])>;

pub fn tet(ideal: Option<usize>, gluings: [Glue; 4]) -> TetEntry {
    TetEntry {
        ideal_vertices: ideal.into_iter().collect(),
        gluings: gluings
            .iter()
            .map(|g| g.map(|(t, im)| (t, im.to_vec())))
            .collect(),
    }
}

pub fn build(tets: Vec<TetEntry>) -> Result<Triangulation> {
    TriangulationDoc { tetrahedra: tets }.into_triangulation()
}

/// Ring of `n` 4-0 tetrahedra around the edge `01`; faces `023` and `123`
/// stay unglued.
pub fn ring_40(n: usize) -> Triangulation {
    let tets = (0..n)
        .map(|i| {
            let next = (i + 1) % n;
            let prev = (i + n - 1) % n;
            tet(
                None,
                [Some((prev, [0, 1, 3])), Some((next, [0, 1, 2])), None, None],
            )
        })
        .collect();
    build(tets).expect("ring is consistent")
}

/// Relative error with an absolute floor of 1.
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Every way of pairing the three faces at vertex 0 of two 3-1
/// tetrahedra, with both orientations of each gluing.
pub fn two_tet_candidates() -> Vec<Vec<TetEntry>> {
    let faces: Vec<(usize, usize)> = (0..2).flat_map(|t| (0..3).map(move |f| (t, f))).collect();
    let mut matchings = Vec::new();
    fn rec(rest: Vec<(usize, usize)>, acc: Vec<((usize, usize), (usize, usize))>, out: &mut Vec<Vec<((usize, usize), (usize, usize))>>) {
        if rest.is_empty() {
            out.push(acc);
            return;
        }
        let a = rest[0];
        for i in 1..rest.len() {
            let mut r = rest.clone();
            let b = r.remove(i);
            r.remove(0);
            let mut acc2 = acc.clone();
            acc2.push((a, b));
            rec(r, acc2, out);
        }
    }
    rec(faces, vec![], &mut matchings);
    let mut out = Vec::new();
    for m in matchings {
        for swaps in 0..8u32 {
            let mut g: [[Glue; 4]; 2] = [[None; 4]; 2];
            for (k, &((ta, fa), (tb, fb))) in m.iter().enumerate() {
                let (va, vb) = (FACE_VERTICES[fa], FACE_VERTICES[fb]);
                // vertex 0 -> 0, the other two either in order or swapped
                let swap = swaps >> k & 1 == 1;
                let fwd = if swap { [0, vb[2], vb[1]] } else { [0, vb[1], vb[2]] };
                let back = if swap { [0, va[2], va[1]] } else { [0, va[1], va[2]] };
                g[ta][fa] = Some((tb, fwd));
                g[tb][fb] = Some((ta, back));
            }
            out.push(vec![tet(Some(0), g[0]), tet(Some(0), g[1])]);
        }
    }
    out
}
