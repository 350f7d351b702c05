//! Classification and canonical forms of integer dissections.
//!
//! Everything works on [`IntegerDissection`] at its own scale `L`, where the
//! six symmetries of the outer triangle act by integer affine maps.

mod grid;
mod recover;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::solver::{IntTriangle, IntegerDissection, Orientation, OverlapCheck, ValidationFailure};

pub use grid::{grid_dissections, grid_signatures, MAX_GRID_SIDE};
pub use recover::{recover_bitrade, RecoverError, RecoveredBitrade};

/// The six maps of Σ onto itself, in sheared coordinates at scale `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymmetryMap {
    Identity,
    SwapXY,
    ReflectX,
    ReflectY,
    RotateForward,
    RotateBack,
}

impl SymmetryMap {
    pub const ALL: [SymmetryMap; 6] = [
        SymmetryMap::Identity,
        SymmetryMap::SwapXY,
        SymmetryMap::ReflectX,
        SymmetryMap::ReflectY,
        SymmetryMap::RotateForward,
        SymmetryMap::RotateBack,
    ];

    pub fn apply(self, (x, y): (i64, i64), scale: i64) -> (i64, i64) {
        let z = scale - x - y;
        match self {
            SymmetryMap::Identity => (x, y),
            SymmetryMap::SwapXY => (y, x),
            SymmetryMap::ReflectX => (z, y),
            SymmetryMap::ReflectY => (x, z),
            SymmetryMap::RotateForward => (y, z),
            SymmetryMap::RotateBack => (z, x),
        }
    }

    pub fn apply_triangle(self, t: &IntTriangle, scale: i64) -> IntTriangle {
        IntTriangle::from_vertices(t.vertices().map(|p| self.apply(p, scale)))
    }

    pub fn apply_dissection(self, d: &IntegerDissection) -> IntegerDissection {
        IntegerDissection {
            scale: d.scale,
            triangles: d
                .triangles
                .iter()
                .map(|t| self.apply_triangle(t, d.scale))
                .collect(),
        }
    }
}

/// Divides the scale and all coordinates by their common gcd.
pub fn normalize(d: &IntegerDissection) -> IntegerDissection {
    let g = d
        .triangles
        .iter()
        .fold(d.scale, |g, t| g.gcd(&t.side).gcd(&t.x).gcd(&t.y));
    if g <= 1 {
        return d.clone();
    }
    IntegerDissection {
        scale: d.scale / g,
        triangles: d
            .triangles
            .iter()
            .map(|t| IntTriangle {
                orientation: t.orientation,
                x: t.x / g,
                y: t.y / g,
                side: t.side / g,
            })
            .collect(),
    }
}

fn sorted(mut v: Vec<IntTriangle>) -> Vec<IntTriangle> {
    v.sort_unstable();
    v
}

fn images(d: &IntegerDissection) -> impl Iterator<Item = Vec<IntTriangle>> + '_ {
    SymmetryMap::ALL.into_iter().map(move |s| {
        sorted(
            d.triangles
                .iter()
                .map(|t| s.apply_triangle(t, d.scale))
                .collect(),
        )
    })
}

/// Orbit-minimal serialized dissection; the dedup key.
///
/// Format: `L|o x y s|o x y s|...` with `o` in `{up, down}` and `x`, `y`,
/// `s` as reduced fractions `p/q` of the unit triangle, triangles sorted
/// by (orientation, x, y, side).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("malformed signature: {0}")]
    Malformed(String),
    #[error("signature does not describe a dissection: {0}")]
    Invalid(ValidationFailure),
    #[error("signature is not in canonical form")]
    NotCanonical,
}

fn fraction(n: i64, scale: i64) -> String {
    let g = n.gcd(&scale);
    format!("{}/{}", n / g, scale / g)
}

impl Signature {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    fn render(scale: i64, triangles: &[IntTriangle]) -> Signature {
        let mut s = scale.to_string();
        for t in triangles {
            s.push('|');
            s.push_str(t.orientation.as_str());
            for v in [t.x, t.y, t.side] {
                s.push(' ');
                s.push_str(&fraction(v, scale));
            }
        }
        Signature(s)
    }

    /// Decodes and validates a signature back into a dissection at its
    /// recorded scale.
    pub fn parse(text: &str) -> Result<IntegerDissection, SignatureError> {
        let bad = |m: &str| SignatureError::Malformed(m.to_string());
        let mut parts = text.trim().split('|');
        let scale: i64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .filter(|&l| l > 0)
            .ok_or_else(|| bad("scale"))?;
        let value = |f: &str| -> Result<i64, SignatureError> {
            let (p, q) = f.split_once('/').ok_or_else(|| bad(f))?;
            let (p, q): (i64, i64) = (
                p.parse().map_err(|_| bad(f))?,
                q.parse().map_err(|_| bad(f))?,
            );
            if q <= 0 || (p * scale) % q != 0 {
                return Err(bad(f));
            }
            Ok(p * scale / q)
        };
        let mut triangles = Vec::new();
        for part in parts {
            let fields: Vec<&str> = part.split(' ').collect();
            let [o, x, y, s] = fields[..] else {
                return Err(bad(part));
            };
            let orientation = match o {
                "up" => Orientation::Up,
                "down" => Orientation::Down,
                _ => return Err(bad(o)),
            };
            triangles.push(IntTriangle {
                orientation,
                x: value(x)?,
                y: value(y)?,
                side: value(s)?,
            });
        }
        if triangles.is_empty() {
            return Err(bad("no triangles"));
        }
        let d = IntegerDissection { scale, triangles };
        d.validate(OverlapCheck::Pairwise)
            .map_err(SignatureError::Invalid)?;
        Ok(d)
    }
}

impl Signature {
    /// Parses text that must already be a canonical signature.
    pub fn parse_canonical(text: &str) -> Result<(Signature, IntegerDissection), SignatureError> {
        let d = Signature::parse(text)?;
        let sig = canonical_signature(&d);
        if sig.as_str() != text {
            return Err(SignatureError::NotCanonical);
        }
        Ok((sig, d))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Signature {
    type Err = SignatureError;

    /// Accepts any valid encoding and re-canonicalizes it.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(canonical_signature(&Signature::parse(s)?))
    }
}

pub fn canonical_signature(d: &IntegerDissection) -> Signature {
    let d = normalize(d);
    let best = images(&d).min().expect("six images");
    Signature::render(d.scale, &best)
}

/// The vertex-list variant: the orbit-minimal sorted list of vertices.
/// Kept for cross-checking counts against the triangle-list signature.
pub fn canonical_vertex_signature(d: &IntegerDissection) -> Signature {
    let d = normalize(d);
    let best = SymmetryMap::ALL
        .into_iter()
        .map(|s| {
            let mut v: Vec<(i64, i64)> = vertex_degrees(&d)
                .into_keys()
                .map(|p| s.apply(p, d.scale))
                .collect();
            v.sort_unstable();
            v
        })
        .min()
        .expect("six images");
    let mut s = d.scale.to_string();
    for (x, y) in best {
        s.push('|');
        s.push_str(&fraction(x, d.scale));
        s.push(' ');
        s.push_str(&fraction(y, d.scale));
    }
    Signature(s)
}

/// Number of symmetries fixing the triangle set: 1, 2, 3 or 6.
pub fn automorphism_order(d: &IntegerDissection) -> usize {
    let base = sorted(d.triangles.clone());
    images(d).filter(|img| *img == base).count()
}

/// Number of triangles having each point as a corner.
pub fn vertex_degrees(d: &IntegerDissection) -> BTreeMap<(i64, i64), usize> {
    let mut deg = BTreeMap::new();
    for t in &d.triangles {
        for p in t.vertices() {
            *deg.entry(p).or_insert(0) += 1;
        }
    }
    deg
}

/// Direction of a dissecting line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Direction {
    /// `y = k`, parameter `x`.
    Horizontal,
    /// `x = k`, parameter `y`.
    Vertical,
    /// `x + y = k`, parameter `y`.
    Diagonal,
}

/// `(direction, constant, from, to)` for each side of a triangle.
pub(crate) fn sides(t: &IntTriangle) -> [(Direction, i64, i64, i64); 3] {
    let (x, y, s) = (t.x, t.y, t.side);
    match t.orientation {
        Orientation::Up => [
            (Direction::Horizontal, y, x, x + s),
            (Direction::Vertical, x, y, y + s),
            (Direction::Diagonal, x + y + s, y, y + s),
        ],
        Orientation::Down => [
            (Direction::Horizontal, y, x - s, x),
            (Direction::Vertical, x, y - s, y),
            (Direction::Diagonal, x + y - s, y - s, y),
        ],
    }
}

/// Maximal segments of triangle sides on every dissecting line.
pub(crate) fn segments(d: &IntegerDissection) -> BTreeMap<(Direction, i64), Vec<(i64, i64)>> {
    let mut raw: HashMap<(Direction, i64), Vec<(i64, i64)>> = HashMap::new();
    for t in &d.triangles {
        for (dir, k, a, b) in sides(t) {
            raw.entry((dir, k)).or_default().push((a, b));
        }
    }
    raw.into_iter()
        .map(|(key, mut iv)| {
            iv.sort_unstable();
            let mut merged: Vec<(i64, i64)> = Vec::new();
            for (a, b) in iv {
                match merged.last_mut() {
                    Some(last) if a <= last.1 => last.1 = last.1.max(b),
                    _ => merged.push((a, b)),
                }
            }
            (key, merged)
        })
        .collect()
}

/// Separated: every dissecting line carries a single segment and no vertex
/// is the corner of exactly six triangles.
pub fn classify_separated(d: &IntegerDissection) -> bool {
    vertex_degrees(d).values().all(|&k| k != 6) && segments(d).values().all(|s| s.len() == 1)
}

/// No two triangles share both side and orientation.
pub fn is_perfect(d: &IntegerDissection) -> bool {
    let (up, down) = d.tallies();
    up.values().chain(down.values()).all(|&n| n == 1)
}

/// All sides equal.
pub fn is_trivial(d: &IntegerDissection) -> bool {
    d.triangles.windows(2).all(|w| w[0].side == w[1].side)
}

/// `(max side, min side)`.
pub fn max_min_sides(d: &IntegerDissection) -> (i64, i64) {
    let max = d.triangles.iter().map(|t| t.side).max().unwrap_or(0);
    let min = d.triangles.iter().map(|t| t.side).min().unwrap_or(0);
    (max, min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitrade::Triple;
    use crate::catalog;
    use crate::solver::pointed_integer_dissection;

    fn up(x: i64, y: i64, side: i64) -> IntTriangle {
        IntTriangle {
            orientation: Orientation::Up,
            x,
            y,
            side,
        }
    }

    fn down(x: i64, y: i64, side: i64) -> IntTriangle {
        IntTriangle {
            orientation: Orientation::Down,
            x,
            y,
            side,
        }
    }

    pub(crate) fn unit_grid(l: i64) -> IntegerDissection {
        let mut triangles = Vec::new();
        for y in 0..l {
            for x in 0..l - y {
                triangles.push(up(x, y, 1));
                if x + y + 2 <= l {
                    triangles.push(down(x + 1, y + 1, 1));
                }
            }
        }
        IntegerDissection {
            scale: l,
            triangles,
        }
    }

    fn intercalate() -> IntegerDissection {
        pointed_integer_dissection(
            &catalog::intercalate(),
            Triple::new(0, 0, 0),
            OverlapCheck::Pairwise,
        )
        .unwrap()
    }

    fn example_two() -> IntegerDissection {
        pointed_integer_dissection(
            &catalog::example_two(),
            catalog::EXAMPLE_TWO_ANCHOR,
            OverlapCheck::Pairwise,
        )
        .unwrap()
    }

    #[test]
    fn maps_preserve_sigma_and_orientation() {
        let l = 7;
        for s in SymmetryMap::ALL {
            for (x, y) in [(0, 0), (l, 0), (0, l), (2, 3)] {
                let (u, v) = s.apply((x, y), l);
                assert!(u >= 0 && v >= 0 && u + v <= l);
            }
            let t = s.apply_triangle(&up(1, 2, 3), l);
            assert_eq!((t.orientation, t.side), (Orientation::Up, 3));
            let t = s.apply_triangle(&down(3, 3, 2), l);
            assert_eq!((t.orientation, t.side), (Orientation::Down, 2));
        }
    }

    #[test]
    fn maps_form_a_group() {
        let (l, p) = (11, (2, 5));
        let orbit: Vec<_> = SymmetryMap::ALL.map(|s| s.apply(p, l)).to_vec();
        let mut distinct = orbit.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 6);
        for a in SymmetryMap::ALL {
            for b in SymmetryMap::ALL {
                assert!(orbit.contains(&a.apply(b.apply(p, l), l)));
            }
        }
    }

    #[test]
    fn intercalate_signature_and_symmetry() {
        let d = intercalate();
        let sig = canonical_signature(&d);
        assert_eq!(
            sig.as_str(),
            "2|up 0/1 0/1 1/2|up 0/1 1/2 1/2|up 1/2 0/1 1/2|down 1/2 1/2 1/2"
        );
        for s in SymmetryMap::ALL {
            assert_eq!(canonical_signature(&s.apply_dissection(&d)), sig);
        }
        assert_eq!(automorphism_order(&d), 6);
        assert!(is_trivial(&d));
        assert!(!is_perfect(&d));
        assert_eq!(max_min_sides(&d), (1, 1));
        assert!(classify_separated(&d));
    }

    #[test]
    fn signature_parses_back() {
        let d = example_two();
        let sig = canonical_signature(&d);
        let back = Signature::parse(sig.as_str()).unwrap();
        assert_eq!(canonical_signature(&back), sig);
        assert_eq!(sig.as_str().parse::<Signature>().unwrap(), sig);
        assert_eq!(Signature::parse_canonical(sig.as_str()).unwrap().0, sig);
        let other = Signature::render(d.scale, &d.triangles);
        if other != sig {
            assert_eq!(
                Signature::parse_canonical(other.as_str()),
                Err(SignatureError::NotCanonical)
            );
        }
        assert!(Signature::parse("2|up 0/1 0/1 1/2").is_err());
        assert!(Signature::parse("x|up").is_err());
        assert!(Signature::parse("1|side 0/1 0/1 1/1").is_err());
    }

    #[test]
    fn example_two_analysis() {
        let d = example_two();
        assert_eq!(d.scale, 14);
        assert_eq!(automorphism_order(&d), 1);
        assert!(classify_separated(&d));
        assert!(!is_trivial(&d));
        assert_eq!(vertex_degrees(&d).len(), 14);
    }

    #[test]
    fn example_two_and_its_swap() {
        // The swapped bitrade at the same anchor slot gives a different
        // dissection; pinned as a regression value.
        let b = catalog::example_two().swap();
        let a = *b
            .t_star()
            .iter()
            .find(|t| **t == Triple::new(0, 0, 0))
            .unwrap();
        let swapped = pointed_integer_dissection(&b, a, OverlapCheck::Pairwise).unwrap();
        let s1 = canonical_signature(&example_two());
        let s2 = canonical_signature(&swapped);
        assert_eq!(s1 == s2, SWAP_SIGNATURES_MATCH);
    }

    const SWAP_SIGNATURES_MATCH: bool = false;

    #[test]
    fn grid_of_side_three() {
        let d = unit_grid(3);
        assert_eq!(d.size(), 9);
        assert!(d.validate(OverlapCheck::Pairwise).is_ok());
        assert!(is_trivial(&d));
        assert!(!classify_separated(&d));
        assert_eq!(vertex_degrees(&d)[&(1, 1)], 6);
        assert_eq!(automorphism_order(&d), 6);
    }

    #[test]
    fn split_line_is_nonseparated() {
        // Four side-2 triangles: the intercalate at scale 4.
        let quad = [up(0, 0, 2), up(2, 0, 2), up(0, 2, 2), down(2, 2, 2)];
        let refine = |x: i64, y: i64| {
            [
                up(x, y, 1),
                up(x + 1, y, 1),
                up(x, y + 1, 1),
                down(x + 1, y + 1, 1),
            ]
        };
        let d = IntegerDissection {
            scale: 4,
            triangles: quad.to_vec(),
        };
        assert_eq!(canonical_signature(&d), canonical_signature(&intercalate()));

        // One corner refined: still separated.
        let mut t = vec![quad[1], quad[2], quad[3]];
        t.extend(refine(0, 0));
        let e = IntegerDissection {
            scale: 4,
            triangles: t,
        };
        assert!(e.validate(OverlapCheck::Pairwise).is_ok());
        assert!(classify_separated(&e));
        assert_eq!(automorphism_order(&e), 2);

        // Two corners refined: the line x = 1 carries two segments.
        let mut t = vec![quad[1], quad[3]];
        t.extend(refine(0, 0));
        t.extend(refine(0, 2));
        let f = IntegerDissection {
            scale: 4,
            triangles: t,
        };
        assert!(f.validate(OverlapCheck::Pairwise).is_ok());
        assert_eq!(
            segments(&f)[&(Direction::Vertical, 1)],
            vec![(0, 1), (2, 3)]
        );
        assert!(vertex_degrees(&f).values().all(|&k| k != 6));
        assert!(!classify_separated(&f));
    }

    #[test]
    fn perfect_detection() {
        let d = IntegerDissection {
            scale: 3,
            triangles: vec![up(0, 0, 2), up(2, 0, 1), up(0, 2, 1), down(2, 1, 1)],
        };
        assert!(!is_perfect(&d));
        let (up_t, down_t) = d.tallies();
        assert_eq!(up_t[&1], 2);
        assert_eq!(down_t[&1], 1);
    }
}
