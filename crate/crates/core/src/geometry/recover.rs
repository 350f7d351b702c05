//! Reading a bitrade back off a dissection.
//!
//! Rows, columns and symbols are the maximal segments of horizontal,
//! vertical and diagonal dissecting lines. At a vertex that is the corner
//! of six triangles the vertical and diagonal segments through it are cut,
//! and the pieces below the vertex get their own labels. Each vertex other
//! than the three outer corners gives a `T*` triple (two at a degree-6
//! vertex), the outer triangle gives the anchor, and each triangle gives a
//! `T△` triple.

use std::collections::BTreeMap;

use super::{segments, sides, vertex_degrees, Direction};
use crate::bitrade::{validate_bitrade, Bitrade, BitradeError, Triple};
use crate::solver::IntegerDissection;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecoverError {
    #[error("no dissecting line segment covers {0:?}")]
    MissingSegment((i64, i64)),
    #[error(transparent)]
    Bitrade(#[from] BitradeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredBitrade {
    pub bitrade: Bitrade,
    /// The `T*` triple of the outer triangle's three sides.
    pub anchor: Triple,
}

/// Labelled pieces of one line, sorted and disjoint except at cut points.
struct Line {
    pieces: Vec<(i64, i64, u32)>,
}

impl Line {
    fn covering(&self, lo: i64, hi: i64) -> Option<u32> {
        self.pieces
            .iter()
            .find(|p| p.0 <= lo && hi <= p.1)
            .map(|p| p.2)
    }

    fn ending_at(&self, t: i64) -> Option<u32> {
        self.pieces.iter().find(|p| p.1 == t).map(|p| p.2)
    }

    fn starting_at(&self, t: i64) -> Option<u32> {
        self.pieces.iter().find(|p| p.0 == t).map(|p| p.2)
    }
}

fn slot(dir: Direction) -> usize {
    match dir {
        Direction::Horizontal => 0,
        Direction::Vertical => 1,
        Direction::Diagonal => 2,
    }
}

/// Position of a point along a line of the given direction.
fn along(dir: Direction, (x, y): (i64, i64)) -> (i64, i64) {
    match dir {
        Direction::Horizontal => (y, x),
        Direction::Vertical => (x, y),
        Direction::Diagonal => (x + y, y),
    }
}

pub fn recover_bitrade(d: &IntegerDissection) -> Result<RecoveredBitrade, RecoverError> {
    let l = d.scale;
    let degrees = vertex_degrees(d);
    let cuts: Vec<(i64, i64)> = degrees
        .iter()
        .filter(|(_, &k)| k == 6)
        .map(|(&p, _)| p)
        .collect();
    let mut next = [0u32; 3];
    let mut lines: BTreeMap<(Direction, i64), Line> = BTreeMap::new();
    for ((dir, k), intervals) in segments(d) {
        let mut pieces = Vec::new();
        for (a, b) in intervals {
            let mut bounds = vec![a];
            if dir != Direction::Horizontal {
                bounds.extend(
                    cuts.iter()
                        .map(|&p| along(dir, p))
                        .filter(|&(c, t)| c == k && a < t && t < b)
                        .map(|(_, t)| t),
                );
            }
            bounds.push(b);
            bounds.sort_unstable();
            for w in bounds.windows(2) {
                let s = slot(dir);
                pieces.push((w[0], w[1], next[s]));
                next[s] += 1;
            }
        }
        lines.insert((dir, k), Line { pieces });
    }
    let at = |dir: Direction, p: (i64, i64)| -> Option<u32> {
        let (k, t) = along(dir, p);
        lines.get(&(dir, k))?.covering(t, t)
    };

    let mut star = Vec::with_capacity(degrees.len());
    let anchor = Triple::new(
        lines
            .get(&(Direction::Horizontal, 0))
            .and_then(|s| s.covering(0, l))
            .ok_or(RecoverError::MissingSegment((0, 0)))?,
        lines
            .get(&(Direction::Vertical, 0))
            .and_then(|s| s.covering(0, l))
            .ok_or(RecoverError::MissingSegment((0, 0)))?,
        lines
            .get(&(Direction::Diagonal, l))
            .and_then(|s| s.covering(0, l))
            .ok_or(RecoverError::MissingSegment((l, 0)))?,
    );
    star.push(anchor);
    for (&p, &k) in &degrees {
        if p == (0, 0) || p == (l, 0) || p == (0, l) {
            continue;
        }
        let row = at(Direction::Horizontal, p).ok_or(RecoverError::MissingSegment(p))?;
        if k == 6 {
            let v = &lines[&(Direction::Vertical, p.0)];
            let g = &lines[&(Direction::Diagonal, p.0 + p.1)];
            let pair = |f: fn(&Line, i64) -> Option<u32>| -> Result<Triple, RecoverError> {
                Ok(Triple::new(
                    row,
                    f(v, p.1).ok_or(RecoverError::MissingSegment(p))?,
                    f(g, p.1).ok_or(RecoverError::MissingSegment(p))?,
                ))
            };
            star.push(pair(Line::starting_at)?);
            star.push(pair(Line::ending_at)?);
        } else {
            star.push(Triple::new(
                row,
                at(Direction::Vertical, p).ok_or(RecoverError::MissingSegment(p))?,
                at(Direction::Diagonal, p).ok_or(RecoverError::MissingSegment(p))?,
            ));
        }
    }

    let mut delta = Vec::with_capacity(d.triangles.len());
    for t in &d.triangles {
        let mut labels = [0u32; 3];
        for (dir, k, a, b) in sides(t) {
            labels[slot(dir)] = lines[&(dir, k)]
                .covering(a, b)
                .ok_or(RecoverError::MissingSegment((t.x, t.y)))?;
        }
        delta.push(Triple::new(labels[0], labels[1], labels[2]));
    }
    let bitrade = validate_bitrade(star, delta)?;
    Ok(RecoveredBitrade { bitrade, anchor })
}
