use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tridiss::geometry::{canonical_signature, grid_dissections};

fn tridiss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tridiss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn enumerate(dir: &Path, max_size: usize, extra: &[&str]) {
    let max = max_size.to_string();
    let mut args = vec!["enumerate", "--max-size", &max, "--out", path(dir)];
    args.extend_from_slice(extra);
    let out = tridiss(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&tridiss(&["frobnicate"])), 2);
    assert_eq!(code(&tridiss(&["enumerate", "--max-size", "3"])), 2);
}

#[test]
fn generate_then_convert() {
    let dir = tempfile::tempdir().unwrap();
    let pc = dir.path().join("t.pc");
    let out = tridiss(&["generate", "--max-size", "6", "--out", path(&pc)]);
    assert_eq!(code(&out), 0);
    assert!(fs::read(&pc).unwrap().starts_with(b">>planar_code<<"));

    let out = tridiss(&["convert", "--input", path(&pc)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("# source"), "{text}");
}

#[test]
fn convert_empty_and_corrupt_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.pc");
    fs::write(&empty, b"").unwrap();
    assert_eq!(code(&tridiss(&["convert", "--input", path(&empty)])), 0);

    let bad = dir.path().join("bad.pc");
    fs::write(&bad, b">>planar_code<<\x06\x02\x03").unwrap();
    let out = tridiss(&["convert", "--input", path(&bad)]);
    assert_eq!(code(&out), 3);
    assert!(!out.stderr.is_empty());
}

#[test]
fn enumerate_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    enumerate(&store, 9, &["--workers", "2"]);

    let out = tridiss(&["report", "counts", "--store", path(&store)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.lines().any(|l| l.starts_with("9,9,4,4,0,1,")),
        "{text}"
    );

    let out = tridiss(&[
        "report",
        "counts",
        "--store",
        path(&store),
        "--class",
        "separated",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).trim_start().starts_with(['{', '[']));

    let out = tridiss(&["report", "perfect", "--store", path(&store)]);
    assert_eq!(code(&out), 0);

    let out = tridiss(&[
        "report",
        "counts",
        "--store",
        path(&store),
        "--max-size",
        "10",
    ]);
    assert_eq!(code(&out), 5);
}

#[test]
fn sources_and_unknown_signature() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    enumerate(&store, 8, &["--with-source-counts"]);
    let out = tridiss(&["report", "sources", "--store", path(&store)]);
    assert_eq!(code(&out), 0);
    // A size-9 dissection cannot be in a size-8 store.
    let absent = grid_dissections(3)
        .iter()
        .find(|d| d.size() == 9)
        .map(canonical_signature)
        .expect("size-9 grid dissection");
    let out = tridiss(&[
        "report",
        "sources",
        "--store",
        path(&store),
        "--signature",
        absent.as_str(),
    ]);
    assert_eq!(code(&out), 6, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn render_store_records() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    enumerate(&store, 7, &[]);
    let figures = dir.path().join("figures");
    let out = tridiss(&["render", "--store", path(&store), "--out", path(&figures)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let svgs: Vec<_> = fs::read_dir(&figures).unwrap().collect();
    assert_eq!(svgs.len(), 4);

    let out = tridiss(&["report", "extremes", "--store", path(&store)]);
    let text = stdout(&out);
    let sig = text
        .lines()
        .nth(1)
        .and_then(|l| l.split(',').find(|f| f.contains('|')))
        .expect("extremes row with signature")
        .to_string();
    let out = tridiss(&["render", &sig, "--format", "tikz"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("\\draw"));
}

#[test]
fn verify_detects_corrupted_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    enumerate(&store, 8, &[]);
    let args = ["verify", "--scope", "store", "--store", path(&store)];
    assert_eq!(code(&tridiss(&args)), 0);

    let segment = fs::read_dir(store.join("segments"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.is_file())
        .expect("a segment file");
    let mut bytes = fs::read(&segment).unwrap();
    bytes.extend_from_slice(b"garbage\n");
    fs::write(&segment, bytes).unwrap();
    assert_eq!(code(&tridiss(&args)), 4);
}
