//! Isomorph-free generation of simple planar Eulerian triangulations.
//!
//! Two independent generators live here:
//!
//! * [`eulerian_triangulations`] grows every class from the octahedron with
//!   two expansions: splitting a vertex through a new degree-4 vertex (+2
//!   vertices) and inserting an octahedral triangle into a face (+3). Each
//!   level is deduplicated by canonical code.
//! * [`brute_force_eulerian_triangulations`] walks the flip graph of *all*
//!   triangulations on `n` vertices, which is connected, and keeps the
//!   Eulerian ones. It is exhaustive but only practical for small `n`.

use std::collections::{BTreeMap, HashSet, VecDeque};

use super::embedding::EmbeddedGraph;
use super::IngestError;

/// Largest vertex count accepted by the flip-graph oracle.
pub const BRUTE_FORCE_LIMIT: usize = 12;

fn faces_of(g: &EmbeddedGraph) -> Vec<[usize; 3]> {
    g.triangles()
        .expect("generator graphs are spherical triangulations")
}

pub fn octahedron() -> EmbeddedGraph {
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
    EmbeddedGraph::from_triangles(6, &faces)
        .expect("octahedron is a triangulation")
        .canonical_form()
}

/// Splits `x` at rotation positions `i < j` into two vertices joined
/// through a new degree-4 vertex adjacent to the neighbours at `i` and `j`.
fn split_vertex(g: &EmbeddedGraph, x: usize, i: usize, j: usize) -> EmbeddedGraph {
    let n = g.vertex_count();
    let ring = g.rotation(x);
    let d = ring.len();
    let (c, v) = (n, n + 1);
    let mut faces: Vec<[usize; 3]> = faces_of(g)
        .into_iter()
        .filter(|f| !f.contains(&x))
        .collect();
    for k in 0..d {
        let owner = if (i..j).contains(&k) { x } else { c };
        faces.push([owner, ring[k], ring[(k + 1) % d]]);
    }
    let (ni, nj) = (ring[i], ring[j]);
    faces.extend([[ni, x, v], [x, nj, v], [nj, c, v], [c, ni, v]]);
    EmbeddedGraph::from_triangles(n + 2, &faces).expect("vertex split keeps a triangulation")
}

/// Replaces face `f` by seven faces around a new inner triangle.
fn insert_octahedron(g: &EmbeddedGraph, f: [usize; 3]) -> EmbeddedGraph {
    let n = g.vertex_count();
    let [x, y, z] = f;
    let (p, q, r) = (n, n + 1, n + 2);
    let mut faces: Vec<[usize; 3]> = faces_of(g).into_iter().filter(|&h| h != f).collect();
    faces.extend([
        [x, y, p],
        [y, z, q],
        [z, x, r],
        [x, p, r],
        [y, q, p],
        [z, r, q],
        [p, q, r],
    ]);
    EmbeddedGraph::from_triangles(n + 3, &faces).expect("face insertion keeps a triangulation")
}

fn expansions(g: &EmbeddedGraph, plus: usize) -> Vec<EmbeddedGraph> {
    let mut out = Vec::new();
    match plus {
        2 => {
            for x in 0..g.vertex_count() {
                let d = g.degree(x);
                for i in 0..d {
                    for j in (i + 2..d).step_by(2) {
                        if d - (j - i) >= 2 {
                            out.push(split_vertex(g, x, i, j));
                        }
                    }
                }
            }
        }
        3 => {
            for f in faces_of(g) {
                out.push(insert_octahedron(g, f));
            }
        }
        _ => unreachable!(),
    }
    out
}

/// All simple planar Eulerian triangulations with at most `max_vertices`
/// vertices, one canonical representative per isomorphism class (mirror
/// images identified), ordered by vertex count then canonical code.
pub fn eulerian_triangulations(max_vertices: usize) -> Vec<EmbeddedGraph> {
    eulerian_triangulations_by_order(max_vertices)
        .into_iter()
        .flatten()
        .collect()
}

/// As [`eulerian_triangulations`], grouped by vertex count; entry `n`
/// holds the classes on `n` vertices.
pub fn eulerian_triangulations_by_order(max_vertices: usize) -> Vec<Vec<EmbeddedGraph>> {
    let mut levels: Vec<Vec<EmbeddedGraph>> = vec![Vec::new(); max_vertices + 1];
    if max_vertices < 6 {
        return levels;
    }
    levels[6] = vec![octahedron()];
    for n in 7..=max_vertices {
        let mut found: BTreeMap<Vec<u8>, EmbeddedGraph> = BTreeMap::new();
        for plus in [2, 3] {
            for g in &levels[n - plus] {
                for h in expansions(g, plus) {
                    let code = h.canonical_code();
                    found.entry(code).or_insert_with(|| h.canonical_form());
                }
            }
        }
        levels[n] = found.into_values().collect();
    }
    levels
}

fn seed_triangulation(n: usize) -> EmbeddedGraph {
    let faces: Vec<[usize; 3]> = if n == 4 {
        vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]
    } else {
        // Bipyramid over the cycle 2..n with poles 0 and 1.
        let m = n - 2;
        (0..m)
            .flat_map(|k| {
                let (a, b) = (2 + k, 2 + (k + 1) % m);
                [[0, a, b], [1, b, a]]
            })
            .collect()
    };
    EmbeddedGraph::from_triangles(n, &faces).expect("seed is a triangulation")
}

fn flip(g: &EmbeddedGraph, u: usize, v: usize) -> Option<EmbeddedGraph> {
    if g.degree(u) <= 3 || g.degree(v) <= 3 {
        return None;
    }
    let succ = |a: usize, b: usize| {
        let ring = g.rotation(a);
        let i = ring.iter().position(|&t| t == b).unwrap();
        ring[(i + 1) % ring.len()]
    };
    let w = succ(u, v);
    let x = succ(v, u);
    if w == x || g.rotation(w).contains(&x) {
        return None;
    }
    let mut faces: Vec<[usize; 3]> = faces_of(g)
        .into_iter()
        .filter(|f| !(f.contains(&u) && f.contains(&v)))
        .collect();
    faces.extend([[w, u, x], [x, v, w]]);
    EmbeddedGraph::from_triangles(g.vertex_count(), &faces).ok()
}

/// Every simple triangulation of the sphere on `n ≥ 4` vertices, as
/// canonical forms sorted by code.
pub fn all_triangulations(n: usize) -> Vec<EmbeddedGraph> {
    assert!(n >= 4);
    let seed = seed_triangulation(n);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut found: BTreeMap<Vec<u8>, EmbeddedGraph> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let code = seed.canonical_code();
    seen.insert(code.clone());
    found.insert(code, seed.canonical_form());
    queue.push_back(seed);
    while let Some(g) = queue.pop_front() {
        for u in 0..n {
            for &v in g.rotation(u) {
                if u > v {
                    continue;
                }
                if let Some(h) = flip(&g, u, v) {
                    let code = h.canonical_code();
                    if seen.insert(code.clone()) {
                        found.insert(code, h.canonical_form());
                        queue.push_back(h);
                    }
                }
            }
        }
    }
    found.into_values().collect()
}

/// Exhaustive oracle: Eulerian triangulations on at most `max_vertices`
/// vertices, found by filtering the full flip-graph enumeration.
pub fn brute_force_eulerian_triangulations(
    max_vertices: usize,
) -> Result<Vec<EmbeddedGraph>, IngestError> {
    if max_vertices > BRUTE_FORCE_LIMIT {
        return Err(IngestError::BoundTooLarge {
            requested: max_vertices,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut out = Vec::new();
    for n in 6..=max_vertices {
        out.extend(
            all_triangulations(n)
                .into_iter()
                .filter(|g| (0..n).all(|v| g.degree(v) % 2 == 0)),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(levels: &[Vec<EmbeddedGraph>]) -> Vec<usize> {
        levels.iter().map(Vec::len).collect()
    }

    #[test]
    fn all_triangulation_counts() {
        // Classes of triangulations of the sphere on 4..=9 vertices.
        let got: Vec<usize> = (4..=9).map(|n| all_triangulations(n).len()).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 14, 50]);
    }

    #[test]
    fn brute_force_small_bounds() {
        assert!(brute_force_eulerian_triangulations(5).unwrap().is_empty());
        assert_eq!(brute_force_eulerian_triangulations(6).unwrap().len(), 1);
        assert_eq!(brute_force_eulerian_triangulations(7).unwrap().len(), 1);
        assert!(matches!(
            brute_force_eulerian_triangulations(13),
            Err(IngestError::BoundTooLarge {
                requested: 13,
                limit: 12
            })
        ));
    }

    #[test]
    fn expansion_generator_matches_flip_oracle() {
        let levels = eulerian_triangulations_by_order(10);
        let oracle = brute_force_eulerian_triangulations(10).unwrap();
        let mut by_n = vec![Vec::new(); 11];
        for g in oracle {
            by_n[g.vertex_count()].push(g.canonical_code());
        }
        for n in 0..=10 {
            let mine: Vec<Vec<u8>> = levels[n]
                .iter()
                .map(EmbeddedGraph::canonical_code)
                .collect();
            assert_eq!(mine, by_n[n], "n = {n}");
        }
        assert_eq!(counts(&levels)[6..], [1, 0, 1, 1, 2]);
    }

    #[test]
    fn generated_graphs_are_eulerian_triangulations() {
        for g in eulerian_triangulations(12) {
            let n = g.vertex_count();
            assert!((0..n).all(|v| g.degree(v) % 2 == 0 && g.degree(v) >= 4));
            let faces = g.faces().unwrap();
            assert_eq!(faces.len(), 2 * n - 4);
            assert!(faces.iter().all(|f| f.len() == 3));
        }
    }
}
