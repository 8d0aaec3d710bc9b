use serde::Serialize;

use super::{edge_index, EdgeKind, LinkSummary, TetSpec, VertexKind, EDGE_VERTICES, FACE_VERTICES};

/// Union-find over slot indices.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != node {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
    }

    /// Dense class labels, numbered by smallest member.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut next = 0;
        for i in 0..n {
            let r = self.find(i);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels[i] = root_label[r];
        }
        (labels, next)
    }
}

/// One edge of the triangulation: a class of tetrahedron edge slots.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeClass {
    pub id: usize,
    pub kind: EdgeKind,
    pub valence: usize,
    /// Vertex classes of the two ends, ascending.
    pub endpoints: [usize; 2],
    /// `(tet, local edge slot)` members, ascending. The first one is the
    /// representative that fixes the id.
    pub members: Vec<(usize, usize)>,
}

/// One vertex of the triangulation: a class of tetrahedron corners.
#[derive(Clone, Debug, Serialize)]
pub struct VertexClass {
    pub id: usize,
    pub kind: VertexKind,
    /// `(tet, local vertex)` members, ascending.
    pub members: Vec<(usize, usize)>,
    pub link: LinkSummary,
}

pub(super) struct Classes {
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    pub tet_edge_class: Vec<[usize; 6]>,
    pub tet_vertex_class: Vec<[usize; 4]>,
    /// Class label of each directed edge slot `tet * 16 + tail * 4 + head`.
    pub directed_edge_class: Vec<usize>,
    pub reversed_edges: Vec<usize>,
}

pub(super) fn directed_slot(tet: usize, tail: usize, head: usize) -> usize {
    tet * 16 + tail * 4 + head
}

/// Union-find closure of edge slots, directed edge slots and corners under
/// every face gluing.
pub(super) fn compute_classes(tets: &[TetSpec]) -> Classes {
    let n = tets.len();
    let mut edges = DisjointSet::new(6 * n);
    let mut directed = DisjointSet::new(16 * n);
    let mut corners = DisjointSet::new(4 * n);

    for (t, tet) in tets.iter().enumerate() {
        for (face, g) in tet.gluings.iter().enumerate() {
            let Some(g) = g else { continue };
            let p = g.perm(face);
            let f = FACE_VERTICES[face];
            for &v in &f {
                corners.union(4 * t + v, 4 * g.target + p.apply(v));
            }
            for (i, &a) in f.iter().enumerate() {
                for &b in &f[i + 1..] {
                    let (pa, pb) = (p.apply(a), p.apply(b));
                    edges.union(6 * t + edge_index(a, b), 6 * g.target + edge_index(pa, pb));
                    directed.union(directed_slot(t, a, b), directed_slot(g.target, pa, pb));
                    directed.union(directed_slot(t, b, a), directed_slot(g.target, pb, pa));
                }
            }
        }
    }

    let (edge_label, edge_count) = edges.labels();
    let (corner_label, corner_count) = corners.labels();
    let (directed_label, _) = directed.labels();

    let mut tet_edge_class = vec![[0; 6]; n];
    let mut tet_vertex_class = vec![[0; 4]; n];
    for t in 0..n {
        for e in 0..6 {
            tet_edge_class[t][e] = edge_label[6 * t + e];
        }
        for v in 0..4 {
            tet_vertex_class[t][v] = corner_label[4 * t + v];
        }
    }

    let mut vertices: Vec<VertexClass> = (0..corner_count)
        .map(|id| VertexClass {
            id,
            kind: VertexKind::HyperIdeal,
            members: Vec::new(),
            link: LinkSummary::default(),
        })
        .collect();
    for (t, tet) in tets.iter().enumerate() {
        for v in 0..4 {
            let class = &mut vertices[tet_vertex_class[t][v]];
            class.members.push((t, v));
            if tet.is_ideal(v) {
                class.kind = VertexKind::Ideal;
            }
        }
    }

    let mut edge_classes: Vec<EdgeClass> = (0..edge_count)
        .map(|id| EdgeClass {
            id,
            kind: EdgeKind::HyperIdeal,
            valence: 0,
            endpoints: [0, 0],
            members: Vec::new(),
        })
        .collect();
    for t in 0..n {
        for (e, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            let class = &mut edge_classes[tet_edge_class[t][e]];
            if class.members.is_empty() {
                let mut ends = [tet_vertex_class[t][*a], tet_vertex_class[t][*b]];
                ends.sort_unstable();
                class.endpoints = ends;
                if tets[t].is_ideal(*a) || tets[t].is_ideal(*b) {
                    class.kind = EdgeKind::Ideal;
                }
            }
            class.members.push((t, e));
            class.valence += 1;
        }
    }

    let mut reversed_edges = Vec::new();
    for class in &edge_classes {
        let (t, e) = class.members[0];
        let [a, b] = EDGE_VERTICES[e];
        if directed_label[directed_slot(t, a, b)] == directed_label[directed_slot(t, b, a)] {
            reversed_edges.push(class.id);
        }
    }

    Classes {
        edges: edge_classes,
        vertices,
        tet_edge_class,
        tet_vertex_class,
        directed_edge_class: directed_label,
        reversed_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_set_merges_transitively() {
        let mut ds = DisjointSet::new(5);
        ds.union(0, 3);
        ds.union(3, 4);
        let (labels, count) = ds.labels();
        assert_eq!(count, 3);
        assert_eq!(labels, vec![0, 1, 2, 0, 0]);
    }
}
