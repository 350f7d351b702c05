//! The `planar_code` binary format written by plantri (single-byte form).
//!
//! After an optional `>>planar_code<<` header, each graph is one byte `n`
//! followed, for every vertex `1..=n`, by its neighbours in rotation order
//! and a terminating zero byte.

use std::fmt;

use super::embedding::{EmbeddedGraph, EmbeddingError};

pub const HEADER: &[u8] = b">>planar_code<<";
const HEADER_VARIANTS: [&[u8]; 3] = [HEADER, b">>planar_code le<<", b">>planar_code be<<"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarCodeErrorKind {
    MalformedHeader,
    TruncatedGraph,
    NeighborOutOfRange {
        neighbor: u8,
        vertices: u8,
    },
    /// A zero vertex count introduces the two-byte encoding.
    UnsupportedEncoding,
    Embedding(EmbeddingError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct PlanarCodeError {
    pub kind: PlanarCodeErrorKind,
    /// Byte offset into the stream.
    pub offset: usize,
    /// Zero-based index of the offending graph record.
    pub record: usize,
}

impl fmt::Display for PlanarCodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "planar_code record {} at byte {}: ",
            self.record, self.offset
        )?;
        match &self.kind {
            PlanarCodeErrorKind::MalformedHeader => write!(f, "malformed header"),
            PlanarCodeErrorKind::TruncatedGraph => write!(f, "truncated graph"),
            PlanarCodeErrorKind::NeighborOutOfRange { neighbor, vertices } => {
                write!(f, "neighbour {neighbor} out of range 1..={vertices}")
            }
            PlanarCodeErrorKind::UnsupportedEncoding => {
                write!(f, "two-byte encoding is not supported")
            }
            PlanarCodeErrorKind::Embedding(e) => write!(f, "{e}"),
        }
    }
}

fn strip_header(bytes: &[u8]) -> Result<usize, PlanarCodeError> {
    if !bytes.starts_with(b">>") {
        return Ok(0);
    }
    HEADER_VARIANTS
        .iter()
        .find(|h| bytes.starts_with(h))
        .map(|h| h.len())
        .ok_or(PlanarCodeError {
            kind: PlanarCodeErrorKind::MalformedHeader,
            offset: 0,
            record: 0,
        })
}

/// Decodes every graph in the stream.
pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<EmbeddedGraph>, PlanarCodeError> {
    let mut pos = strip_header(bytes)?;
    let mut graphs = Vec::new();
    while pos < bytes.len() {
        let record = graphs.len();
        let start = pos;
        let err = |kind, offset| PlanarCodeError {
            kind,
            offset,
            record,
        };
        let n = bytes[pos];
        if n == 0 {
            return Err(err(PlanarCodeErrorKind::UnsupportedEncoding, pos));
        }
        pos += 1;
        let mut rotation = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let mut nbrs = Vec::new();
            loop {
                let Some(&b) = bytes.get(pos) else {
                    return Err(err(PlanarCodeErrorKind::TruncatedGraph, pos));
                };
                pos += 1;
                if b == 0 {
                    break;
                }
                if b > n {
                    return Err(err(
                        PlanarCodeErrorKind::NeighborOutOfRange {
                            neighbor: b,
                            vertices: n,
                        },
                        pos - 1,
                    ));
                }
                nbrs.push(b as usize - 1);
            }
            rotation.push(nbrs);
        }
        let g = EmbeddedGraph::new(rotation)
            .map_err(|e| err(PlanarCodeErrorKind::Embedding(e), start))?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// Encodes graphs with the header. Panics on graphs with more than 254
/// vertices.
pub fn write_planar_code<'a>(graphs: impl IntoIterator<Item = &'a EmbeddedGraph>) -> Vec<u8> {
    let mut out = HEADER.to_vec();
    for g in graphs {
        let n = g.vertex_count();
        assert!(
            n > 0 && n < 255,
            "single-byte planar_code holds 1..=254 vertices"
        );
        out.push(n as u8);
        for ring in g.rotations() {
            out.extend(ring.iter().map(|&u| (u + 1) as u8));
            out.push(0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_record() {
        let mut bytes = HEADER.to_vec();
        bytes.extend([3, 2, 3, 0, 3, 1, 0, 1, 2, 0]);
        let graphs = parse_planar_code(&bytes).unwrap();
        assert_eq!(graphs.len(), 1);
        assert_eq!(graphs[0].vertex_count(), 3);
        assert_eq!(graphs[0].faces().unwrap().len(), 2);
    }

    #[test]
    fn empty_stream_after_header() {
        assert!(parse_planar_code(HEADER).unwrap().is_empty());
        assert!(parse_planar_code(&[]).unwrap().is_empty());
    }

    #[test]
    fn headerless_data_is_accepted() {
        let graphs = parse_planar_code(&[3, 2, 3, 0, 3, 1, 0, 1, 2, 0]).unwrap();
        assert_eq!(graphs.len(), 1);
    }

    #[test]
    fn errors_report_offsets() {
        let e = parse_planar_code(b">>planar_cod<<").unwrap_err();
        assert_eq!(e.kind, PlanarCodeErrorKind::MalformedHeader);

        let mut bytes = HEADER.to_vec();
        bytes.extend([3, 2, 3, 0, 3, 1]);
        let e = parse_planar_code(&bytes).unwrap_err();
        assert_eq!(e.kind, PlanarCodeErrorKind::TruncatedGraph);
        assert_eq!(e.offset, HEADER.len() + 6);

        let mut bytes = HEADER.to_vec();
        bytes.extend([3, 2, 4, 0, 3, 1, 0, 1, 2, 0]);
        let e = parse_planar_code(&bytes).unwrap_err();
        assert_eq!(
            e.kind,
            PlanarCodeErrorKind::NeighborOutOfRange {
                neighbor: 4,
                vertices: 3
            }
        );
        assert_eq!(e.offset, HEADER.len() + 2);

        let mut bytes = HEADER.to_vec();
        bytes.extend([3, 2, 3, 0, 3, 1, 0, 1, 2, 0, 0]);
        let e = parse_planar_code(&bytes).unwrap_err();
        assert_eq!(
            (e.kind, e.record),
            (PlanarCodeErrorKind::UnsupportedEncoding, 1)
        );
    }

    #[test]
    fn multi_edges_are_rejected_at_parse_time() {
        let mut bytes = HEADER.to_vec();
        bytes.extend([2, 2, 2, 0, 1, 1, 0]);
        let e = parse_planar_code(&bytes).unwrap_err();
        assert!(matches!(
            e.kind,
            PlanarCodeErrorKind::Embedding(EmbeddingError::MultiEdge(0, 1))
        ));
    }

    #[test]
    fn write_then_parse() {
        let g = EmbeddedGraph::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let bytes = write_planar_code([&g, &g]);
        assert_eq!(parse_planar_code(&bytes).unwrap(), vec![g.clone(), g]);
    }
}
