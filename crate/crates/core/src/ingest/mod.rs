//! From embedded planar graphs to spherical latin bitrades.
//!
//! A simple planar Eulerian triangulation has a proper 2-colouring of its
//! faces and a proper 3-colouring of its vertices. Taking the colour
//! classes of vertices as rows, columns and symbols, every white face
//! becomes a `T*` triple and every black face a `T△` triple.

mod embedding;
pub mod generate;
pub mod planar_code;

use std::collections::VecDeque;

pub use embedding::{EmbeddedGraph, EmbeddingError};
pub use generate::{
    brute_force_eulerian_triangulations, eulerian_triangulations, eulerian_triangulations_by_order,
};
pub use planar_code::{parse_planar_code, write_planar_code, PlanarCodeError, PlanarCodeErrorKind};

use crate::bitrade::{validate_bitrade, Bitrade, BitradeError, Triple};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),
    #[error("not Eulerian: vertex {vertex} has degree {degree}")]
    NotEulerian { vertex: usize, degree: usize },
    #[error("graph is not properly colourable: {0}")]
    Uncolorable(String),
    #[error("converted bitrade is invalid: {0}")]
    Bitrade(#[from] BitradeError),
    #[error("converted bitrade is not separated and spherical")]
    NotSphericalSeparated,
    #[error("bound {requested} exceeds the brute-force limit {limit}")]
    BoundTooLarge { requested: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceColor {
    White,
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub color: FaceColor,
}

/// Faces of the embedding; V − E + F = 2 is enforced.
pub fn faces_from_embedding(g: &EmbeddedGraph) -> Result<Vec<Vec<usize>>, IngestError> {
    Ok(g.faces()?)
}

fn check_triangulation(g: &EmbeddedGraph) -> Result<Vec<Vec<usize>>, IngestError> {
    let n = g.vertex_count();
    if n < 4 {
        return Err(IngestError::NotATriangulation(format!("{n} vertices")));
    }
    if !g.is_connected() {
        return Err(IngestError::NotATriangulation("disconnected".into()));
    }
    let faces = g.faces()?;
    if let Some(f) = faces.iter().find(|f| f.len() != 3) {
        return Err(IngestError::NotATriangulation(format!(
            "face of length {}",
            f.len()
        )));
    }
    if let Some(v) = (0..n).find(|&v| !g.degree(v).is_multiple_of(2)) {
        return Err(IngestError::NotEulerian {
            vertex: v,
            degree: g.degree(v),
        });
    }
    Ok(faces)
}

/// Properly 2-colours the faces of an Eulerian triangulation, the first
/// traced face being white.
pub fn color_faces(g: &EmbeddedGraph) -> Result<Vec<Face>, IngestError> {
    let faces = check_triangulation(g)?;
    let n = g.vertex_count();
    // Directed edge (a, b) -> face index.
    let mut edge_face = std::collections::HashMap::with_capacity(faces.len() * 3);
    for (i, f) in faces.iter().enumerate() {
        for k in 0..3 {
            edge_face.insert((f[k], f[(k + 1) % 3]), i);
        }
    }
    let mut color: Vec<Option<FaceColor>> = vec![None; faces.len()];
    let mut queue = VecDeque::from([0]);
    color[0] = Some(FaceColor::White);
    while let Some(i) = queue.pop_front() {
        let mine = color[i].unwrap();
        let other = match mine {
            FaceColor::White => FaceColor::Black,
            FaceColor::Black => FaceColor::White,
        };
        let f = &faces[i];
        for k in 0..3 {
            let j = edge_face[&(f[(k + 1) % 3], f[k])];
            match color[j] {
                None => {
                    color[j] = Some(other);
                    queue.push_back(j);
                }
                Some(c) if c == mine => {
                    return Err(IngestError::Uncolorable(format!(
                        "faces {i} and {j} share an edge"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    debug_assert!(n >= 4);
    Ok(faces
        .into_iter()
        .zip(color)
        .map(|(vertices, c)| Face {
            vertices,
            color: c.expect("face graph of a triangulation is connected"),
        })
        .collect())
}

/// Proper vertex 3-colouring, classes numbered by their least vertex.
fn color_vertices(faces: &[Face], n: usize) -> Result<Vec<usize>, IngestError> {
    let mut color: Vec<Option<usize>> = vec![None; n];
    let f0 = &faces[0].vertices;
    for k in 0..3 {
        color[f0[k]] = Some(k);
    }
    let mut changed = true;
    while changed {
        changed = false;
        for f in faces {
            let known: Vec<usize> = f.vertices.iter().filter_map(|&v| color[v]).collect();
            if known.len() == 2 {
                let missing = 3 - known[0] - known[1];
                if known[0] == known[1] {
                    return Err(IngestError::Uncolorable(format!("face {:?}", f.vertices)));
                }
                let v = *f.vertices.iter().find(|&&v| color[v].is_none()).unwrap();
                color[v] = Some(missing);
                changed = true;
            } else if known.len() == 3 {
                let mut k = known.clone();
                k.sort_unstable();
                if k != [0, 1, 2] {
                    return Err(IngestError::Uncolorable(format!("face {:?}", f.vertices)));
                }
            }
        }
    }
    let color: Vec<usize> = color
        .into_iter()
        .map(|c| c.ok_or_else(|| IngestError::Uncolorable("vertex left uncoloured".into())))
        .collect::<Result<_, _>>()?;
    // Relabel classes in order of first appearance by vertex id.
    let mut rank = [usize::MAX; 3];
    let mut next = 0;
    for &c in &color {
        if rank[c] == usize::MAX {
            rank[c] = next;
            next += 1;
        }
    }
    Ok(color.into_iter().map(|c| rank[c]).collect())
}

/// Converts a simple planar Eulerian triangulation on `V` vertices into a
/// separated spherical bitrade of size `V − 2`.
pub fn triangulation_to_bitrade(g: &EmbeddedGraph) -> Result<Bitrade, IngestError> {
    let faces = color_faces(g)?;
    let n = g.vertex_count();
    let role = color_vertices(&faces, n)?;
    // Label = rank of the vertex within its class.
    let mut label = vec![0u32; n];
    let mut counters = [0u32; 3];
    for v in 0..n {
        label[v] = counters[role[v]];
        counters[role[v]] += 1;
    }
    let mut star = Vec::with_capacity(n - 2);
    let mut delta = Vec::with_capacity(n - 2);
    for f in &faces {
        let mut t = [0u32; 3];
        for &v in &f.vertices {
            t[role[v]] = label[v];
        }
        let triple = Triple::new(t[0], t[1], t[2]);
        match f.color {
            FaceColor::White => star.push(triple),
            FaceColor::Black => delta.push(triple),
        }
    }
    let b = validate_bitrade(star, delta)?;
    if b.size() != n - 2 || !b.is_separated() || b.genus()? != 0 {
        return Err(IngestError::NotSphericalSeparated);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitrade::is_isotopic;
    use crate::catalog;

    #[test]
    fn octahedron_gives_the_intercalate() {
        let b = triangulation_to_bitrade(&generate::octahedron()).unwrap();
        assert_eq!(b.size(), 4);
        assert!(is_isotopic(&b, &catalog::intercalate()));
    }

    #[test]
    fn faces_alternate_colours() {
        let faces = color_faces(&generate::octahedron()).unwrap();
        assert_eq!(faces[0].color, FaceColor::White);
        assert_eq!(
            faces.iter().filter(|f| f.color == FaceColor::White).count(),
            4
        );
    }

    #[test]
    fn odd_degree_is_rejected() {
        // Triangulations on 5 vertices all have odd-degree vertices.
        for g in generate::all_triangulations(5) {
            assert!(matches!(
                triangulation_to_bitrade(&g),
                Err(IngestError::NotEulerian { .. })
            ));
        }
    }

    #[test]
    fn non_triangle_face_is_rejected() {
        let square =
            EmbeddedGraph::new(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        assert!(matches!(
            triangulation_to_bitrade(&square),
            Err(IngestError::NotATriangulation(_))
        ));
    }

    #[test]
    fn face_two_colouring_exists_iff_all_degrees_even() {
        for n in 4..=8 {
            for g in generate::all_triangulations(n) {
                let even = (0..n).all(|v| g.degree(v) % 2 == 0);
                let faces = g.faces().unwrap();
                // Direct check, independent of `color_faces`.
                let colourable = two_colourable(&faces);
                assert_eq!(even, colourable, "n = {n}");
            }
        }
    }

    fn two_colourable(faces: &[Vec<usize>]) -> bool {
        let m = faces.len();
        let shares =
            |a: &Vec<usize>, b: &Vec<usize>| a.iter().filter(|v| b.contains(v)).count() == 2;
        let mut color = vec![None; m];
        color[0] = Some(false);
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if i != j && shares(&faces[i], &faces[j]) {
                    match color[j] {
                        None => {
                            color[j] = Some(!color[i].unwrap());
                            stack.push(j);
                        }
                        Some(c) if c == color[i].unwrap() => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    #[test]
    fn every_generated_triangulation_converts() {
        for g in eulerian_triangulations(12) {
            let b = triangulation_to_bitrade(&g).unwrap();
            assert_eq!(b.size(), g.vertex_count() - 2);
            assert!(b.is_separated());
            assert_eq!(b.genus().unwrap(), 0);
        }
    }
}
