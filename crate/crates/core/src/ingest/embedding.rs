use std::cmp::Ordering;

/// A graph together with a rotation system: for each vertex, its
/// neighbours in cyclic order. Vertices are `0..n`.
///
/// Orientation convention: if `b` follows `a` in the rotation of `v`, then
/// `(v, a, b)` is a face traversed in that direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedGraph {
    rotation: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("vertex {vertex} lists neighbour {neighbor} outside 0..{n}")]
    NeighborOutOfRange {
        vertex: usize,
        neighbor: usize,
        n: usize,
    },
    #[error("vertex {0} has a loop")]
    Loop(usize),
    #[error("vertices {0} and {1} are joined more than once")]
    MultiEdge(usize, usize),
    #[error("edge {0}-{1} is missing from the rotation of {1}")]
    Asymmetric(usize, usize),
    #[error("embedding is not spherical: V - E + F = {vertices} - {edges} + {faces}")]
    NonSpherical {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
}

impl EmbeddedGraph {
    /// Checks range, simplicity and that every edge appears at both ends.
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        let n = rotation.len();
        for (v, nbrs) in rotation.iter().enumerate() {
            let mut seen = vec![false; n];
            for &u in nbrs {
                if u >= n {
                    return Err(EmbeddingError::NeighborOutOfRange {
                        vertex: v,
                        neighbor: u,
                        n,
                    });
                }
                if u == v {
                    return Err(EmbeddingError::Loop(v));
                }
                if std::mem::replace(&mut seen[u], true) {
                    return Err(EmbeddingError::MultiEdge(v, u));
                }
            }
        }
        for (v, nbrs) in rotation.iter().enumerate() {
            for &u in nbrs {
                if !rotation[u].contains(&v) {
                    return Err(EmbeddingError::Asymmetric(v, u));
                }
            }
        }
        Ok(EmbeddedGraph { rotation })
    }

    /// Builds the rotation system of a triangulation from its oriented faces.
    pub fn from_triangles(n: usize, faces: &[[usize; 3]]) -> Result<Self, EmbeddingError> {
        let mut next: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for f in faces {
            for k in 0..3 {
                next[f[k]].push((f[(k + 1) % 3], f[(k + 2) % 3]));
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, succ) in next.iter().enumerate() {
            let Some(&(start, _)) = succ.iter().min() else {
                rotation.push(Vec::new());
                continue;
            };
            let mut ring = vec![start];
            let mut cur = start;
            loop {
                let nxt = succ
                    .iter()
                    .find(|&&(a, _)| a == cur)
                    .map(|&(_, b)| b)
                    .ok_or(EmbeddingError::Asymmetric(v, cur))?;
                if nxt == start {
                    break;
                }
                if ring.len() > succ.len() {
                    return Err(EmbeddingError::MultiEdge(v, nxt));
                }
                ring.push(nxt);
                cur = nxt;
            }
            if ring.len() != succ.len() {
                return Err(EmbeddingError::NonSpherical {
                    vertices: n,
                    edges: 0,
                    faces: faces.len(),
                });
            }
            rotation.push(ring);
        }
        EmbeddedGraph::new(rotation)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    fn position(&self, v: usize, u: usize) -> usize {
        self.rotation[v]
            .iter()
            .position(|&w| w == u)
            .expect("edge present at both ends")
    }

    /// Traces every face of the rotation system; each directed edge is used
    /// exactly once. Fails unless `V − E + F = 2`.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>, EmbeddingError> {
        let n = self.vertex_count();
        let mut used: Vec<Vec<bool>> = self.rotation.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for v in 0..n {
            for i in 0..self.rotation[v].len() {
                if used[v][i] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut ai) = (v, i);
                while !used[a][ai] {
                    used[a][ai] = true;
                    face.push(a);
                    let b = self.rotation[a][ai];
                    // Next edge leaves b towards the predecessor of a.
                    let deg = self.rotation[b].len();
                    let bi = (self.position(b, a) + deg - 1) % deg;
                    a = b;
                    ai = bi;
                }
                faces.push(face);
            }
        }
        let (vertices, edges) = (n, self.edge_count());
        if vertices + faces.len() != edges + 2 {
            return Err(EmbeddingError::NonSpherical {
                vertices,
                edges,
                faces: faces.len(),
            });
        }
        Ok(faces)
    }

    /// Oriented triangles, assuming every face is a triangle.
    pub fn triangles(&self) -> Result<Vec<[usize; 3]>, EmbeddingError> {
        Ok(self
            .faces()?
            .into_iter()
            .filter(|f| f.len() == 3)
            .map(|f| [f[0], f[1], f[2]])
            .collect())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.rotation[v] {
                if !std::mem::replace(&mut seen[u], true) {
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Breadth-first code from directed edge `start -> first`, walking
    /// rotations forwards or backwards. Returns `None` as soon as the code
    /// exceeds `bound`.
    fn bfs_code(
        &self,
        start: usize,
        first: usize,
        forward: bool,
        bound: Option<&[u8]>,
    ) -> Option<(Vec<u8>, Vec<usize>)> {
        let n = self.vertex_count();
        let mut number = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        let mut code: Vec<u8> = Vec::with_capacity(2 * self.edge_count() + n);
        let mut tight = bound.is_some();
        number[start] = 1;
        order.push(start);
        parent[start] = first;
        let mut head = 0;
        let push = |code: &mut Vec<u8>, value: u8, tight: &mut bool| -> bool {
            if *tight {
                let b = bound.unwrap()[code.len()];
                match value.cmp(&b) {
                    Ordering::Greater => return false,
                    Ordering::Less => *tight = false,
                    Ordering::Equal => {}
                }
            }
            code.push(value);
            true
        };
        while head < order.len() {
            let v = order[head];
            head += 1;
            let ring = &self.rotation[v];
            let deg = ring.len();
            let base = self.position(v, parent[v]);
            for k in 0..deg {
                let idx = if forward {
                    (base + k) % deg
                } else {
                    (base + deg - k) % deg
                };
                let u = ring[idx];
                if number[u] == 0 {
                    order.push(u);
                    number[u] = order.len();
                    parent[u] = v;
                }
                if !push(&mut code, number[u] as u8, &mut tight) {
                    return None;
                }
            }
            if !push(&mut code, 0, &mut tight) {
                return None;
            }
        }
        Some((code, order))
    }

    /// A code identifying the embedded graph up to orientation-preserving
    /// and orientation-reversing isomorphism, together with the vertex order
    /// realising it. Requires a connected graph with fewer than 255 vertices.
    pub fn canonical(&self) -> (Vec<u8>, Vec<usize>, bool) {
        let min_deg = (0..self.vertex_count())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0);
        let mut best: Option<(Vec<u8>, Vec<usize>, bool)> = None;
        for v in 0..self.vertex_count() {
            if self.degree(v) != min_deg {
                continue;
            }
            for &u in &self.rotation[v] {
                for forward in [true, false] {
                    let bound = best.as_ref().map(|b| b.0.as_slice());
                    if let Some((code, order)) = self.bfs_code(v, u, forward, bound) {
                        if best.as_ref().is_none_or(|b| code < b.0) {
                            best = Some((code, order, forward));
                        }
                    }
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn canonical_code(&self) -> Vec<u8> {
        self.canonical().0
    }

    /// The isomorphic copy whose vertex numbering and orientation realise
    /// [`EmbeddedGraph::canonical_code`].
    pub fn canonical_form(&self) -> EmbeddedGraph {
        let (code, _, _) = self.canonical();
        let n = self.vertex_count();
        let mut rotation = Vec::with_capacity(n);
        let mut cur = Vec::new();
        for &x in &code {
            if x == 0 {
                rotation.push(std::mem::take(&mut cur));
            } else {
                cur.push(x as usize - 1);
            }
        }
        // Backward codes list rotations reversed; the embedding is kept as
        // the code reads so that equal codes give equal graphs.
        EmbeddedGraph { rotation }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> EmbeddedGraph {
        // Poles 0 and 5, equator 1-2-3-4.
        let faces = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 1],
            [5, 2, 1],
            [5, 3, 2],
            [5, 4, 3],
            [5, 1, 4],
        ];
        EmbeddedGraph::from_triangles(6, &faces).unwrap()
    }

    #[test]
    fn octahedron_faces() {
        let g = octahedron();
        assert_eq!(g.vertex_count(), 6);
        assert!((0..6).all(|v| g.degree(v) == 4));
        let faces = g.faces().unwrap();
        assert_eq!(faces.len(), 8);
        assert!(faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn reversed_rotation_breaks_euler() {
        let g = octahedron();
        let mut rot = g.rotations().to_vec();
        rot[0].reverse();
        let bad = EmbeddedGraph::new(rot).unwrap();
        assert!(matches!(
            bad.faces(),
            Err(EmbeddingError::NonSpherical { .. })
        ));
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = EmbeddedGraph::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let faces = g.faces().unwrap();
        assert_eq!(faces.len(), 2);
    }

    #[test]
    fn simplicity_is_enforced() {
        assert_eq!(
            EmbeddedGraph::new(vec![vec![0]]).unwrap_err(),
            EmbeddingError::Loop(0)
        );
        assert_eq!(
            EmbeddedGraph::new(vec![vec![1, 1], vec![0, 0]]).unwrap_err(),
            EmbeddingError::MultiEdge(0, 1)
        );
        assert_eq!(
            EmbeddedGraph::new(vec![vec![1], vec![]]).unwrap_err(),
            EmbeddingError::Asymmetric(0, 1)
        );
    }

    #[test]
    fn canonical_code_ignores_labels_and_mirroring() {
        let g = octahedron();
        let perm = [3, 5, 0, 1, 4, 2];
        let relabelled: Vec<Vec<usize>> = {
            let mut rot = vec![Vec::new(); 6];
            for v in 0..6 {
                rot[perm[v]] = g.rotation(v).iter().map(|&u| perm[u]).collect();
            }
            rot
        };
        let h = EmbeddedGraph::new(relabelled).unwrap();
        let mirrored = EmbeddedGraph::new(
            g.rotations()
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(g.canonical_code(), h.canonical_code());
        assert_eq!(g.canonical_code(), mirrored.canonical_code());
        let c = g.canonical_form();
        assert_eq!(c.canonical_code(), g.canonical_code());
        assert_eq!(c.faces().unwrap().len(), 8);
    }
}
