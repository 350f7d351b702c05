//! On-disk store layout:
//!
//! ```text
//! manifest.json
//! bitrade_sizes.tsv
//! segments/nNN-SS.tsv
//! ```
//!
//! Segment `nNN-SS` holds the dissections of size `NN` whose signature hash
//! falls in shard `SS`, one record per line, sorted by signature. The hash
//! only spreads records across files; lookups and merges compare the
//! signatures themselves.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{analyze, BitradeSizes, DissectionRecord, DissectionStore, Order, OrderSizes, Source};
use crate::bitrade::Triple;
use crate::geometry::Signature;

pub const FORMAT_VERSION: u32 = 1;
const SHARDS: u64 = 16;
const SEGMENT_DIR: &str = "segments";
const MANIFEST: &str = "manifest.json";
const SIZES: &str = "bitrade_sizes.tsv";
const SIZES_HEADER: &str =
    "label\tsize\tstar_triangles\tstar_vertices\tswap_triangles\tswap_vertices\n";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
    pub records: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentInfo {
    pub file: String,
    pub size: usize,
    pub shard: u64,
    pub records: usize,
    pub sha256: String,
}

/// Run parameters and contents. Worker count and timestamps are left out
/// so that reruns produce identical bytes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub max_size: usize,
    pub class: String,
    pub pairwise_checks: bool,
    pub source_counting: bool,
    /// Sizes `4..=n` are complete when the inputs covered every bitrade of
    /// size at most `n`.
    pub complete_through: Option<usize>,
    pub inputs: Vec<InputDigest>,
    pub records: usize,
    pub segments: Vec<SegmentInfo>,
}

#[derive(Debug, thiserror::Error)]
pub enum PersistError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

/// A failed store check, named by the invariant it breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoreIssue {
    pub invariant: &'static str,
    pub detail: String,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> PersistError + '_ {
    move |source| PersistError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn shard_of(sig: &Signature) -> u64 {
    let d = Sha256::digest(sig.as_str().as_bytes());
    u64::from_be_bytes(d[..8].try_into().expect("8 bytes")) % SHARDS
}

pub fn segment_file_name(size: usize, shard: u64) -> String {
    format!("n{size:02}-{shard:02}.tsv")
}

fn record_line(sig: &Signature, r: &DissectionRecord) -> String {
    let a = r.witness.anchor;
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{} {} {}\t{}\n",
        sig,
        r.size,
        r.automorphisms,
        r.separated as u8,
        r.perfect as u8,
        r.trivial as u8,
        r.scale,
        r.max_side,
        r.min_side,
        r.witness.bitrade,
        r.witness.order.as_str(),
        a.row,
        a.col,
        a.sym,
        r.sources
    )
}

fn parse_line(
    line: &str,
) -> Result<
    (
        Signature,
        DissectionRecord,
        crate::solver::IntegerDissection,
    ),
    String,
> {
    let f: Vec<&str> = line.split('\t').collect();
    if f.len() != 13 {
        return Err(format!("expected 13 fields, found {}", f.len()));
    }
    let (sig, d) = Signature::parse_canonical(f[0]).map_err(|e| e.to_string())?;
    let num = |i: usize| -> Result<i64, String> {
        f[i].parse().map_err(|_| format!("field {i}: {:?}", f[i]))
    };
    let flag = |i: usize| -> Result<bool, String> {
        match f[i] {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(format!("field {i}: {other:?}")),
        }
    };
    let anchor: Vec<u32> = f[11]
        .split(' ')
        .map(|x| x.parse().map_err(|_| format!("anchor {:?}", f[11])))
        .collect::<Result<_, _>>()?;
    let [row, col, sym] = anchor[..] else {
        return Err(format!("anchor {:?}", f[11]));
    };
    let rec = DissectionRecord {
        size: num(1)? as usize,
        automorphisms: num(2)? as usize,
        separated: flag(3)?,
        perfect: flag(4)?,
        trivial: flag(5)?,
        scale: num(6)?,
        max_side: num(7)?,
        min_side: num(8)?,
        witness: Source {
            bitrade: num(9)? as usize,
            order: Order::parse(f[10]).ok_or_else(|| format!("order {:?}", f[10]))?,
            anchor: Triple::new(row, col, sym),
        },
        sources: num(12)? as u64,
    };
    Ok((sig, rec, d))
}

/// Writes the store, the per-bitrade size sets and the manifest. The
/// manifest's `max_size`, `records` and `segments` are filled in here.
pub fn save_store(
    dir: &Path,
    store: &DissectionStore,
    sizes: &[BitradeSizes],
    mut manifest: Manifest,
) -> Result<Manifest, PersistError> {
    let seg_dir = dir.join(SEGMENT_DIR);
    if seg_dir.exists() {
        fs::remove_dir_all(&seg_dir).map_err(io_err(&seg_dir))?;
    }
    fs::create_dir_all(&seg_dir).map_err(io_err(&seg_dir))?;
    let mut shards: BTreeMap<(usize, u64), String> = BTreeMap::new();
    let mut counts: BTreeMap<(usize, u64), usize> = BTreeMap::new();
    for (sig, r) in store.iter() {
        let key = (r.size, shard_of(sig));
        shards
            .entry(key)
            .or_default()
            .push_str(&record_line(sig, r));
        *counts.entry(key).or_default() += 1;
    }
    manifest.segments.clear();
    for ((size, shard), text) in &shards {
        let file = segment_file_name(*size, *shard);
        let path = seg_dir.join(&file);
        fs::write(&path, text).map_err(io_err(&path))?;
        manifest.segments.push(SegmentInfo {
            file,
            size: *size,
            shard: *shard,
            records: counts[&(*size, *shard)],
            sha256: hex_digest(text.as_bytes()),
        });
    }
    let mut tsv = String::from(SIZES_HEADER);
    for b in sizes {
        tsv.push_str(&format!("{}\t{}", b.label, b.size));
        for set in [
            &b.star.triangles,
            &b.star.vertices,
            &b.swapped.triangles,
            &b.swapped.vertices,
        ] {
            let s: Vec<String> = set.iter().map(usize::to_string).collect();
            tsv.push('\t');
            tsv.push_str(&s.join(","));
        }
        tsv.push('\n');
    }
    let path = dir.join(SIZES);
    fs::write(&path, tsv).map_err(io_err(&path))?;
    manifest.format_version = FORMAT_VERSION;
    manifest.max_size = store.max_size();
    manifest.records = store.len();
    let path = dir.join(MANIFEST);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    fs::write(&path, json).map_err(io_err(&path))?;
    Ok(manifest)
}

fn read_manifest(dir: &Path) -> Result<Manifest, PersistError> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    serde_json::from_str(&text).map_err(|e| PersistError::Format {
        path,
        message: e.to_string(),
    })
}

pub fn load_store(dir: &Path) -> Result<(Manifest, DissectionStore), PersistError> {
    let manifest = read_manifest(dir)?;
    let mut store = DissectionStore::new(manifest.max_size);
    for seg in &manifest.segments {
        let path = dir.join(SEGMENT_DIR).join(&seg.file);
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        for (i, line) in text.lines().enumerate() {
            let (sig, rec, _) = parse_line(line).map_err(|m| PersistError::Format {
                path: path.clone(),
                message: format!("line {}: {m}", i + 1),
            })?;
            store.insert(sig, rec).map_err(|e| PersistError::Format {
                path: path.clone(),
                message: e.to_string(),
            })?;
        }
    }
    Ok((manifest, store))
}

pub fn read_bitrade_sizes(dir: &Path) -> Result<Vec<BitradeSizes>, PersistError> {
    let path = dir.join(SIZES);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let bad = |i: usize| PersistError::Format {
        path: path.clone(),
        message: format!("line {}", i + 1),
    };
    let mut out = Vec::new();
    if !text.starts_with(SIZES_HEADER) {
        return Err(bad(0));
    }
    for (i, line) in text.lines().enumerate().skip(1) {
        let f: Vec<&str> = line.split('\t').collect();
        let [label, size, sets @ ..] = &f[..] else {
            return Err(bad(i));
        };
        if sets.len() != 4 {
            return Err(bad(i));
        }
        let parse = |s: &str| -> Result<BTreeSet<usize>, PersistError> {
            if s.is_empty() {
                return Ok(BTreeSet::new());
            }
            s.split(',')
                .map(|x| x.parse())
                .collect::<Result<_, _>>()
                .map_err(|_| bad(i))
        };
        out.push(BitradeSizes {
            label: label.to_string(),
            size: size.parse().map_err(|_| bad(i))?,
            star: OrderSizes {
                triangles: parse(sets[0])?,
                vertices: parse(sets[1])?,
            },
            swapped: OrderSizes {
                triangles: parse(sets[2])?,
                vertices: parse(sets[3])?,
            },
        });
    }
    Ok(out)
}

/// Re-derives everything recorded in a store directory. An empty result
/// means every check passed.
pub fn verify_store(dir: &Path) -> Vec<StoreIssue> {
    let mut issues = Vec::new();
    let mut issue =
        |invariant: &'static str, detail: String| issues.push(StoreIssue { invariant, detail });
    let manifest = match read_manifest(dir) {
        Ok(m) => m,
        Err(e) => {
            issue("manifest-readable", e.to_string());
            return issues;
        }
    };
    if manifest.format_version != FORMAT_VERSION {
        issue(
            "format-version",
            format!("{} != {FORMAT_VERSION}", manifest.format_version),
        );
    }
    let mut seen: BTreeSet<Signature> = BTreeSet::new();
    let mut total = 0;
    for seg in &manifest.segments {
        let path = dir.join(SEGMENT_DIR).join(&seg.file);
        let text = match fs::read(&path) {
            Ok(t) => t,
            Err(e) => {
                issue("segment-present", format!("{}: {e}", seg.file));
                continue;
            }
        };
        if hex_digest(&text) != seg.sha256 {
            issue("segment-digest", seg.file.clone());
        }
        let text = String::from_utf8_lossy(&text);
        let mut count = 0;
        let mut prev: Option<Signature> = None;
        for (i, line) in text.lines().enumerate() {
            count += 1;
            let at = format!("{}:{}", seg.file, i + 1);
            let (sig, rec, d) = match parse_line(line) {
                Ok(x) => x,
                Err(m) => {
                    issue("record-parses", format!("{at}: {m}"));
                    continue;
                }
            };
            let expect = analyze(&d, rec.witness, rec.sources);
            if expect != rec {
                issue("record-matches-dissection", at.clone());
            }
            if rec.size != seg.size || shard_of(&sig) != seg.shard {
                issue("record-in-its-segment", at.clone());
            }
            if rec.size > manifest.max_size {
                issue("record-within-max-size", at.clone());
            }
            if rec.sources == 0 {
                issue("record-has-a-source", at.clone());
            }
            if prev.as_ref().is_some_and(|p| *p >= sig) {
                issue("segment-sorted", at.clone());
            }
            if !seen.insert(sig.clone()) {
                issue("signature-unique", at);
            }
            prev = Some(sig);
        }
        if count != seg.records {
            issue(
                "segment-record-count",
                format!("{}: {count} != {}", seg.file, seg.records),
            );
        }
        total += count;
    }
    if total != manifest.records {
        issue(
            "manifest-record-count",
            format!("{total} != {}", manifest.records),
        );
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::tests::generated;
    use crate::enumerate::{enumerate_dissections, EnumerateConfig};

    #[test]
    fn save_load_round_trip_and_verify() {
        let input = generated(9);
        let e = enumerate_dissections(
            &input,
            &EnumerateConfig {
                max_size: 9,
                ..Default::default()
            },
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let m = save_store(dir.path(), &e.store, &e.bitrade_sizes, Manifest::default()).unwrap();
        assert_eq!(m.records, e.store.len());
        let (m2, loaded) = load_store(dir.path()).unwrap();
        assert_eq!(m, m2);
        assert_eq!(loaded, e.store);
        assert_eq!(read_bitrade_sizes(dir.path()).unwrap(), e.bitrade_sizes);
        assert!(verify_store(dir.path()).is_empty());
    }

    #[test]
    fn corrupted_segment_is_detected() {
        let input = generated(8);
        let e = enumerate_dissections(
            &input,
            &EnumerateConfig {
                max_size: 8,
                ..Default::default()
            },
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let m = save_store(dir.path(), &e.store, &e.bitrade_sizes, Manifest::default()).unwrap();
        let path = dir.path().join(SEGMENT_DIR).join(&m.segments[0].file);
        let text = fs::read_to_string(&path).unwrap();
        // Flip the automorphism column of the first record.
        let mut fields: Vec<String> = text
            .lines()
            .next()
            .unwrap()
            .split('\t')
            .map(String::from)
            .collect();
        fields[2] = if fields[2] == "1" {
            "2".into()
        } else {
            "1".into()
        };
        let mut corrupted = fields.join("\t");
        corrupted.push('\n');
        corrupted.push_str(
            &text
                .lines()
                .skip(1)
                .map(|l| format!("{l}\n"))
                .collect::<String>(),
        );
        fs::write(&path, corrupted).unwrap();
        let issues = verify_store(dir.path());
        let names: BTreeSet<&str> = issues.iter().map(|i| i.invariant).collect();
        assert!(names.contains("segment-digest"));
        assert!(names.contains("record-matches-dissection"));
    }
}
