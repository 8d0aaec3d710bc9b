use std::collections::VecDeque;

use super::Triangulation;

/// Sign of a permutation of `0..n` given as an image list.
pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// True iff the tetrahedra can be oriented so that every face gluing
/// reverses orientation.
pub fn check_orientability(tri: &Triangulation) -> bool {
    let tets = tri.tets();
    let mut sign = vec![0i32; tets.len()];
    let mut queue = VecDeque::new();
    for start in 0..tets.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        queue.push_back(start);
        while let Some(t) = queue.pop_front() {
            for (face, g) in tets[t].gluings.iter().enumerate() {
                let Some(g) = g else { continue };
                let want = -sign[t] * g.perm(face).sign();
                if sign[g.target] == 0 {
                    sign[g.target] = want;
                    queue.push_back(g.target);
                } else if sign[g.target] != want {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_of_small_permutations() {
        assert_eq!(permutation_sign(&[0, 1, 2, 3]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2, 3]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[0, 2, 1]), -1);
    }
}
