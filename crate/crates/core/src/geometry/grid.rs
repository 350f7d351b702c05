//! Brute-force enumeration of dissections of small triangular grids.
//!
//! Every triangle with integer corners inside the side-`L` triangle is a
//! union of unit cells, so dissections of side `L` are exact covers of the
//! `L²` cells by such triangles. Backtracking always covers the first
//! uncovered cell. This shares nothing with the bitrade pipeline beyond
//! the signature, which makes it an independent oracle.

use std::collections::BTreeSet;

use super::{canonical_signature, Signature};
use crate::solver::{IntTriangle, IntegerDissection, Orientation};

/// Cells are tracked in a `u64`.
pub const MAX_GRID_SIDE: i64 = 8;

fn contains(big: &IntTriangle, small: &IntTriangle) -> bool {
    big.extents()
        .iter()
        .zip(small.extents())
        .all(|(b, s)| b.0 <= s.0 && s.1 <= b.1)
}

fn all_triangles(l: i64) -> Vec<IntTriangle> {
    let mut out = Vec::new();
    for side in 1..=l {
        for y in 0..=l {
            for x in 0..=l {
                let up = IntTriangle {
                    orientation: Orientation::Up,
                    x,
                    y,
                    side,
                };
                if x + y + side <= l {
                    out.push(up);
                }
                let down = IntTriangle {
                    orientation: Orientation::Down,
                    x,
                    y,
                    side,
                };
                if x >= side && y >= side && x + y <= l {
                    out.push(down);
                }
            }
        }
    }
    out
}

/// Every dissection of the side-`l` triangle into at least two integer
/// triangles, as raw (non-canonical) triangle lists.
pub fn grid_dissections(l: i64) -> Vec<IntegerDissection> {
    assert!((1..=MAX_GRID_SIDE).contains(&l), "grid side out of range");
    let cells: Vec<IntTriangle> = all_triangles(l)
        .into_iter()
        .filter(|t| t.side == 1)
        .collect();
    let pieces: Vec<(IntTriangle, u64)> = all_triangles(l)
        .into_iter()
        .filter(|t| t.side < l)
        .map(|t| {
            let mask = cells
                .iter()
                .enumerate()
                .filter(|(_, c)| contains(&t, c))
                .fold(0u64, |m, (i, _)| m | 1 << i);
            (t, mask)
        })
        .collect();
    let full = if cells.len() == 64 {
        u64::MAX
    } else {
        (1u64 << cells.len()) - 1
    };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fill(&pieces, full, 0, &mut chosen, &mut out, l);
    out
}

fn fill(
    pieces: &[(IntTriangle, u64)],
    full: u64,
    covered: u64,
    chosen: &mut Vec<IntTriangle>,
    out: &mut Vec<IntegerDissection>,
    l: i64,
) {
    if covered == full {
        out.push(IntegerDissection {
            scale: l,
            triangles: chosen.clone(),
        });
        return;
    }
    let first = 1u64 << (!covered).trailing_zeros();
    for &(t, mask) in pieces {
        if mask & first != 0 && mask & covered == 0 {
            chosen.push(t);
            fill(pieces, full, covered | mask, chosen, out, l);
            chosen.pop();
        }
    }
}

/// Canonical signatures of all dissections with minimal scale at most
/// `max_side`.
pub fn grid_signatures(max_side: i64) -> BTreeSet<Signature> {
    (2..=max_side)
        .flat_map(grid_dissections)
        .map(|d| canonical_signature(&d))
        .collect()
}
