//! Text forms of a bitrade.
//!
//! Two layouts are understood, both introduced by a marker line whose first
//! token is `*` (for T*) or `^` (for T△):
//!
//! ```text
//! * | 0 1 2 3 4        *
//! 0 | 4 . 0 . 2        0 0 4
//! 1 | . . . 2 4        0 2 0
//! ^ | 0 1 2 3 4        ...
//! 0 | 0 . 2 . 4        ^
//! ...                  0 0 0
//! ```
//!
//! The left is the partial-array layout (rows down, columns across, cells
//! hold the symbol or `.`), the right the line-oriented triple list. A
//! record file holds several bitrades, each optionally preceded by
//! `# key=value` provenance lines and closed by a line `end`.

use std::fmt::Write as _;

use super::{validate_bitrade, Bitrade, BitradeError, Coord, Triple};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("record ending at line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: BitradeError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitradeRecord {
    pub provenance: Vec<(String, String)>,
    pub bitrade: Bitrade,
}

/// Partial-array layout.
pub fn to_table(b: &Bitrade) -> String {
    let mut out = String::new();
    let rows = b.labels(Coord::Row);
    let cols = b.labels(Coord::Col);
    for (marker, half) in [('*', b.t_star()), ('^', b.t_delta())] {
        let _ = write!(out, "{marker} |");
        for c in &cols {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
        for r in &rows {
            let _ = write!(out, "{r} |");
            for c in &cols {
                match half.iter().find(|t| t.row == *r && t.col == *c) {
                    Some(t) => {
                        let _ = write!(out, " {}", t.sym);
                    }
                    None => out.push_str(" ."),
                }
            }
            out.push('\n');
        }
    }
    out
}

/// Triple-list layout.
pub fn to_triple_list(b: &Bitrade) -> String {
    let mut out = String::new();
    for (marker, half) in [('*', b.t_star()), ('^', b.t_delta())] {
        out.push(marker);
        out.push('\n');
        for t in half {
            let _ = writeln!(out, "{} {} {}", t.row, t.col, t.sym);
        }
    }
    out
}

pub fn write_record(out: &mut String, rec: &BitradeRecord) {
    for (k, v) in &rec.provenance {
        let _ = writeln!(out, "# {k}={v}");
    }
    out.push_str(&to_triple_list(&rec.bitrade));
    out.push_str("end\n");
}

pub fn write_records(records: &[BitradeRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        write_record(&mut out, rec);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Half {
    Star,
    Delta,
}

enum Section {
    None,
    List(Half),
    Table(Half, Vec<u32>),
}

#[derive(Default)]
struct Pending {
    provenance: Vec<(String, String)>,
    star: Vec<Triple>,
    delta: Vec<Triple>,
    seen_marker: bool,
}

fn syntax(line: usize, message: impl Into<String>) -> TextError {
    TextError::Syntax {
        line,
        message: message.into(),
    }
}

fn number(tok: &str, line: usize) -> Result<u32, TextError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a label id, found `{tok}`")))
}

/// Parses one or more records. A trailing record without `end` is accepted.
pub fn parse_records(text: &str) -> Result<Vec<BitradeRecord>, TextError> {
    let mut records = Vec::new();
    let mut pending = Pending::default();
    let mut section = Section::None;
    let mut last_line = 0;

    let finish = |pending: &mut Pending, line: usize| -> Result<BitradeRecord, TextError> {
        let p = std::mem::take(pending);
        let bitrade = validate_bitrade(p.star, p.delta)
            .map_err(|source| TextError::Invalid { line, source })?;
        Ok(BitradeRecord {
            provenance: p.provenance,
            bitrade,
        })
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = comment.trim().split_once('=') {
                pending
                    .provenance
                    .push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if trimmed == "end" {
            if !pending.seen_marker {
                return Err(syntax(line, "`end` without a bitrade"));
            }
            records.push(finish(&mut pending, line)?);
            section = Section::None;
            continue;
        }
        let first = trimmed.split_whitespace().next().unwrap_or("");
        if first == "*" || first == "^" {
            let half = if first == "*" {
                Half::Star
            } else {
                Half::Delta
            };
            pending.seen_marker = true;
            let rest = trimmed[1..].trim();
            section = match rest.strip_prefix('|') {
                Some(cols) => Section::Table(
                    half,
                    cols.split_whitespace()
                        .map(|t| number(t, line))
                        .collect::<Result<_, _>>()?,
                ),
                None if rest.is_empty() => Section::List(half),
                None => {
                    return Err(syntax(
                        line,
                        "marker must be followed by `|` and column ids, or nothing",
                    ))
                }
            };
            continue;
        }
        let (half, triples) = match &section {
            Section::None => return Err(syntax(line, "data before a `*` or `^` marker")),
            Section::List(half) => {
                let toks: Vec<&str> = trimmed.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(syntax(line, "expected `row col sym`"));
                }
                (
                    *half,
                    vec![Triple::new(
                        number(toks[0], line)?,
                        number(toks[1], line)?,
                        number(toks[2], line)?,
                    )],
                )
            }
            Section::Table(half, cols) => {
                let (row, cells) = trimmed
                    .split_once('|')
                    .ok_or_else(|| syntax(line, "table row must be `row | cells`"))?;
                let row = number(row.trim(), line)?;
                let cells: Vec<&str> = cells.split_whitespace().collect();
                if cells.len() != cols.len() {
                    return Err(syntax(
                        line,
                        format!("expected {} cells, found {}", cols.len(), cells.len()),
                    ));
                }
                let mut out = Vec::new();
                for (cell, &col) in cells.iter().zip(cols) {
                    if *cell != "." {
                        out.push(Triple::new(row, col, number(cell, line)?));
                    }
                }
                (*half, out)
            }
        };
        match half {
            Half::Star => pending.star.extend(triples),
            Half::Delta => pending.delta.extend(triples),
        }
    }
    if pending.seen_marker {
        records.push(finish(&mut pending, last_line)?);
    }
    Ok(records)
}

/// Parses exactly one bitrade in either layout.
pub fn parse_bitrade(text: &str) -> Result<Bitrade, TextError> {
    let mut recs = parse_records(text)?;
    match recs.len() {
        1 => Ok(recs.pop().unwrap().bitrade),
        n => Err(syntax(0, format!("expected one bitrade, found {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn table_round_trip() {
        let b = catalog::spherical_example();
        let text = to_table(&b);
        assert!(text.starts_with("* | 0 1 2 3 4\n0 | 0 . 2 . 4\n"));
        assert_eq!(parse_bitrade(&text).unwrap(), b);
    }

    #[test]
    fn records_with_provenance() {
        let recs = vec![
            BitradeRecord {
                provenance: vec![("source".into(), "gen:0".into())],
                bitrade: catalog::intercalate(),
            },
            BitradeRecord {
                provenance: vec![],
                bitrade: catalog::example_two(),
            },
        ];
        let text = write_records(&recs);
        assert_eq!(parse_records(&text).unwrap(), recs);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_records("*\n0 0\n").unwrap_err();
        assert_eq!(
            err,
            TextError::Syntax {
                line: 2,
                message: "expected `row col sym`".into()
            }
        );
        assert!(matches!(
            parse_records("0 0 0\n"),
            Err(TextError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn invalid_bitrade_is_reported() {
        let err = parse_records("*\n0 0 0\n^\n0 0 1\nend\n").unwrap_err();
        assert!(matches!(err, TextError::Invalid { line: 5, .. }));
    }
}
