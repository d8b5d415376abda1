//! Temporal inputs.
//!
//! A record file holds `time src dst [weight]` lines. Each distinct time
//! value becomes one snapshot, in increasing order. A manifest holds
//! `path [timestamp]` lines naming one edge-list file per snapshot, in
//! order. Relative paths are resolved against the manifest's directory and a
//! missing timestamp defaults to the line's position. Either way the node
//! set is the union over all snapshots.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use super::TemporalGraph;
use crate::error::{Error, Result};
use crate::graph::io::{fields, graph_from_records, is_skippable, node_universe, parse_weight};
use crate::graph::{parse_edge_records, EdgeRecord, ParseOptions};

fn build(
    times: Vec<f64>,
    groups: Vec<Vec<EdgeRecord>>,
    opts: &ParseOptions,
) -> Result<TemporalGraph> {
    let (labels, index) = node_universe(
        groups
            .iter()
            .flatten()
            .flat_map(|r| [r.src.as_str(), r.dst.as_str()]),
        opts.node_order,
    );
    let snapshots = groups
        .iter()
        .map(|g| graph_from_records(&labels, &index, g, opts))
        .collect::<Result<Vec<_>>>()?;
    TemporalGraph::new(labels, snapshots, times)
}

/// Parses `time src dst [weight]` records into snapshots by distinct time.
pub fn parse_temporal_records<R: Read>(reader: R, opts: &ParseOptions) -> Result<TemporalGraph> {
    let mut records: Vec<(f64, EdgeRecord)> = Vec::new();
    for (k, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        if is_skippable(&line) {
            continue;
        }
        let f = fields(&line);
        if f.len() != 3 && f.len() != 4 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected `time src dst [weight]`, found {} fields", f.len()),
            });
        }
        let time: f64 = f[0]
            .parse()
            .ok()
            .filter(|t: &f64| t.is_finite())
            .ok_or_else(|| Error::Parse {
                line: lineno,
                msg: format!("time {:?} is not a finite number", f[0]),
            })?;
        let weight = if f.len() == 4 {
            parse_weight(f[3], lineno)?
        } else {
            1.0
        };
        records.push((
            time,
            EdgeRecord {
                line: lineno,
                src: f[1].to_string(),
                dst: f[2].to_string(),
                weight,
            },
        ));
    }
    // stable: keeps file order within a snapshot, so first-appearance
    // node order is by time first
    records.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut times: Vec<f64> = Vec::new();
    let mut groups: Vec<Vec<EdgeRecord>> = Vec::new();
    for (t, r) in records {
        if times.last() != Some(&t) {
            times.push(t);
            groups.push(Vec::new());
        }
        groups.last_mut().unwrap().push(r);
    }
    build(times, groups, opts)
}

pub fn read_temporal_file<P: AsRef<Path>>(path: P, opts: &ParseOptions) -> Result<TemporalGraph> {
    parse_temporal_records(File::open(path)?, opts)
}

/// Reads a manifest of per-snapshot edge lists.
pub fn read_temporal_manifest<P: AsRef<Path>>(
    path: P,
    opts: &ParseOptions,
) -> Result<TemporalGraph> {
    let path = path.as_ref();
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut times = Vec::new();
    let mut groups = Vec::new();
    for (k, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        if is_skippable(&line) {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let time = match f.len() {
            1 => times.len() as f64,
            2 => f[1]
                .parse()
                .ok()
                .filter(|t: &f64| t.is_finite())
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("timestamp {:?} is not a finite number", f[1]),
                })?,
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected `path [timestamp]`".into(),
                })
            }
        };
        let snapshot = base.join(f[0]);
        let file = File::open(&snapshot).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", snapshot.display()),
            ))
        })?;
        times.push(time);
        groups.push(parse_edge_records(file)?);
    }
    build(times, groups, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{DuplicatePolicy, LoopPolicy};

    #[test]
    fn records_split_by_time() {
        let text = "# t s d w\n2 b a 3\n1 a b 2\n1 c a\n";
        let tg = parse_temporal_records(text.as_bytes(), &ParseOptions::default()).unwrap();
        assert_eq!(tg.len(), 2);
        assert_eq!(tg.timestamps(), &[1.0, 2.0]);
        assert_eq!(tg.node_labels(), &["a", "b", "c"]);
        assert_eq!(tg.snapshots()[0].m(), 2);
        assert_eq!(tg.snapshots()[1].adjacency().get(1, 0), 3.0);
    }

    #[test]
    fn record_errors() {
        let opts = ParseOptions::default();
        assert!(matches!(
            parse_temporal_records("x a b 1\n".as_bytes(), &opts),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_temporal_records("1 a b 1 9\n".as_bytes(), &opts).is_err());
        assert!(parse_temporal_records("1 a a 1\n".as_bytes(), &opts).is_err());
        let drop = ParseOptions {
            loops: LoopPolicy::Drop,
            duplicates: DuplicatePolicy::Sum,
            ..opts
        };
        let tg = parse_temporal_records("1 a a 1\n1 a b 1\n1 a b 2\n".as_bytes(), &drop).unwrap();
        assert_eq!(tg.snapshots()[0].adjacency().get(0, 1), 3.0);
    }

    #[test]
    fn manifest_with_empty_snapshot() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("s1.txt"), "a b 2\n").unwrap();
        std::fs::write(dir.path().join("s2.txt"), "# nothing\n").unwrap();
        std::fs::write(dir.path().join("s3.txt"), "c a 1.5\n").unwrap();
        std::fs::write(
            dir.path().join("m.txt"),
            "s1.txt 10\ns2.txt 10\ns3.txt 12.5\n",
        )
        .unwrap();
        let tg =
            read_temporal_manifest(dir.path().join("m.txt"), &ParseOptions::default()).unwrap();
        assert_eq!(tg.len(), 3);
        assert_eq!(tg.n(), 3);
        assert_eq!(tg.timestamps(), &[10.0, 10.0, 12.5]);
        assert_eq!(tg.snapshots()[1].m(), 0);

        std::fs::write(dir.path().join("bad.txt"), "s3.txt 5\ns1.txt 1\n").unwrap();
        assert!(
            read_temporal_manifest(dir.path().join("bad.txt"), &ParseOptions::default()).is_err()
        );
        std::fs::write(dir.path().join("missing.txt"), "nope.txt\n").unwrap();
        assert!(matches!(
            read_temporal_manifest(dir.path().join("missing.txt"), &ParseOptions::default()),
            Err(Error::Io(_))
        ));
    }
}
