//! Edge-list and MatrixMarket ingestion.
//!
//! Edge lists hold one record per line, `src dst [weight]`, separated by
//! whitespace or commas. A missing weight means 1. Blank lines and lines
//! starting with `#` or `%` are skipped. Node IDs are arbitrary strings.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::{Edge, WeightedGraph};
use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// How node IDs are mapped to dense indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NodeOrder {
    #[default]
    FirstAppearance,
    Sorted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LoopPolicy {
    #[default]
    Reject,
    Drop,
}

/// What to do when the same `(src, dst)` pair occurs more than once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    #[default]
    Reject,
    Sum,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    pub node_order: NodeOrder,
    pub loops: LoopPolicy,
    pub duplicates: DuplicatePolicy,
}

/// One parsed `src dst weight` line.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub line: usize,
    pub src: String,
    pub dst: String,
    pub weight: f64,
}

pub(crate) fn fields(line: &str) -> Vec<&str> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

pub(crate) fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#') || t.starts_with('%')
}

pub(crate) fn parse_weight(raw: &str, line: usize) -> Result<f64> {
    let w: f64 = raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("weight {raw:?} is not a number"),
    })?;
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::Parse {
            line,
            msg: format!("weight {w} must be positive and finite"),
        });
    }
    Ok(w)
}

/// Reads raw `src dst [weight]` records without building a graph.
pub fn parse_edge_records<R: Read>(reader: R) -> Result<Vec<EdgeRecord>> {
    let mut out = Vec::new();
    for (k, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        if is_skippable(&line) {
            continue;
        }
        let f = fields(&line);
        let weight = match f.len() {
            2 => 1.0,
            3 => parse_weight(f[2], lineno)?,
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `src dst [weight]`, found {} fields", f.len()),
                })
            }
        };
        out.push(EdgeRecord {
            line: lineno,
            src: f[0].to_string(),
            dst: f[1].to_string(),
            weight,
        });
    }
    Ok(out)
}

/// Dense node indexing for a set of records.
pub(crate) fn node_universe<'a, I>(
    ids: I,
    order: NodeOrder,
) -> (Vec<String>, HashMap<String, usize>)
where
    I: IntoIterator<Item = &'a str>,
{
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for id in ids {
        if !index.contains_key(id) {
            index.insert(id.to_string(), labels.len());
            labels.push(id.to_string());
        }
    }
    if order == NodeOrder::Sorted {
        labels.sort();
        for (i, l) in labels.iter().enumerate() {
            index.insert(l.clone(), i);
        }
    }
    (labels, index)
}

/// Applies the loop and duplicate policies and validates the result.
pub(crate) fn graph_from_records(
    labels: &[String],
    index: &HashMap<String, usize>,
    records: &[EdgeRecord],
    opts: &ParseOptions,
) -> Result<WeightedGraph> {
    let mut weights: HashMap<(usize, usize), f64> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for r in records {
        let (s, d) = (index[&r.src], index[&r.dst]);
        if s == d {
            match opts.loops {
                LoopPolicy::Drop => continue,
                LoopPolicy::Reject => {
                    return Err(Error::Parse {
                        line: r.line,
                        msg: format!("self-loop on node {:?}", r.src),
                    })
                }
            }
        }
        match weights.get_mut(&(s, d)) {
            Some(w) => match opts.duplicates {
                DuplicatePolicy::Sum => *w += r.weight,
                DuplicatePolicy::Reject => {
                    return Err(Error::Parse {
                        line: r.line,
                        msg: format!("duplicate edge {:?} -> {:?}", r.src, r.dst),
                    })
                }
            },
            None => {
                weights.insert((s, d), r.weight);
                order.push((s, d));
            }
        }
    }
    let edges = order
        .into_iter()
        .map(|(src, dst)| Edge {
            src,
            dst,
            weight: weights[&(src, dst)],
        })
        .collect();
    WeightedGraph::new(labels.to_vec(), edges)
}

/// Parses an edge list into a validated graph.
pub fn parse_edge_list<R: Read>(reader: R, opts: &ParseOptions) -> Result<WeightedGraph> {
    let records = parse_edge_records(reader)?;
    let (labels, index) = node_universe(
        records
            .iter()
            .flat_map(|r| [r.src.as_str(), r.dst.as_str()]),
        opts.node_order,
    );
    graph_from_records(&labels, &index, &records, opts)
}

pub fn read_edge_list<P: AsRef<Path>>(path: P, opts: &ParseOptions) -> Result<WeightedGraph> {
    parse_edge_list(File::open(path)?, opts)
}

/// Reads a MatrixMarket coordinate file (`real`, `integer` or `pattern`;
/// `general` or `symmetric`). Indices are 1-based in the file.
pub fn read_matrix_market<R: Read>(reader: R) -> Result<SparseMatrix> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty MatrixMarket file".into(),
    })?;
    let header = header?.to_lowercase();
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() < 5 || h[0] != "%%matrixmarket" || h[1] != "matrix" || h[2] != "coordinate" {
        return Err(Error::Parse {
            line: 1,
            msg: "expected `%%MatrixMarket matrix coordinate <field> <symmetry>`".into(),
        });
    }
    let pattern = match h[3] {
        "real" | "integer" => false,
        "pattern" => true,
        other => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("unsupported field {other:?}"),
            })
        }
    };
    let symmetric = match h[4] {
        "general" => false,
        "symmetric" => true,
        other => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("unsupported symmetry {other:?}"),
            })
        }
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut trip = Vec::new();
    let mut raw_entries = 0usize;
    for (k, line) in lines {
        let line = line?;
        let lineno = k + 1;
        if is_skippable(&line) {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("{s:?} is not an index"),
            })
        };
        match size {
            None => {
                if f.len() != 3 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `rows cols entries`".into(),
                    });
                }
                size = Some((num(f[0])?, num(f[1])?, num(f[2])?));
            }
            Some((rows, cols, _)) => {
                let want = if pattern { 2 } else { 3 };
                if f.len() < want {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected {want} fields"),
                    });
                }
                let (i, j) = (num(f[0])?, num(f[1])?);
                if i == 0 || j == 0 || i > rows || j > cols {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("index ({i}, {j}) outside {rows}x{cols}"),
                    });
                }
                let v: f64 = if pattern {
                    1.0
                } else {
                    f[2].parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("{:?} is not a number", f[2]),
                    })?
                };
                raw_entries += 1;
                trip.push((i - 1, j - 1, v));
                if symmetric && i != j {
                    trip.push((j - 1, i - 1, v));
                }
            }
        }
    }
    let (rows, cols, entries) = size.ok_or(Error::Parse {
        line: 0,
        msg: "missing size line".into(),
    })?;
    if raw_entries != entries {
        return Err(Error::Parse {
            line: 0,
            msg: format!("size line promises {entries} entries, found {raw_entries}"),
        });
    }
    SparseMatrix::from_triplets(rows, cols, trip)
}

/// Writes `m` as `coordinate real general`, values in shortest round-trip form.
pub fn write_matrix_market<W: Write>(m: &SparseMatrix, mut out: W) -> Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
    let m = m.drop_zeros();
    writeln!(out, "{} {} {}", m.nrows(), m.ncols(), m.nnz())?;
    for (r, c, v) in m.iter() {
        writeln!(out, "{} {} {}", r + 1, c + 1, v)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, opts: ParseOptions) -> Result<WeightedGraph> {
        parse_edge_list(text.as_bytes(), &opts)
    }

    #[test]
    fn reciprocated_pair() {
        let g = parse("a b 2\nb a 2", ParseOptions::default()).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 2);
        assert!(g.edges().iter().all(|e| e.weight == 2.0));
        assert_eq!(g.node_labels(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn self_loop_rejected_or_dropped() {
        assert!(parse("a a 1", ParseOptions::default()).is_err());
        let opts = ParseOptions {
            loops: LoopPolicy::Drop,
            ..Default::default()
        };
        let g = parse("a a 1\na b 1", opts).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn duplicates_rejected_or_summed() {
        assert!(parse("a b 2\na b 3", ParseOptions::default()).is_err());
        let opts = ParseOptions {
            duplicates: DuplicatePolicy::Sum,
            ..Default::default()
        };
        let g = parse("a b 2\na b 3", opts).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edges()[0].weight, 5.0);
    }

    #[test]
    fn delimiters_defaults_and_comments() {
        let g = parse(
            "# comment\nx,y\n\n% other\ny z 0.5\n",
            ParseOptions::default(),
        )
        .unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edges()[0].weight, 1.0);
        assert_eq!(g.edges()[1].weight, 0.5);
    }

    #[test]
    fn bad_weights_rejected() {
        assert!(parse("a b 0", ParseOptions::default()).is_err());
        assert!(parse("a b -1", ParseOptions::default()).is_err());
        assert!(parse("a b nope", ParseOptions::default()).is_err());
        assert!(parse("a b 1 2", ParseOptions::default()).is_err());
    }

    #[test]
    fn sorted_node_order() {
        let opts = ParseOptions {
            node_order: NodeOrder::Sorted,
            ..Default::default()
        };
        let g = parse("z a\nm z", opts).unwrap();
        assert_eq!(g.node_labels(), &["a", "m", "z"]);
        assert_eq!(g.edge_index(2, 0), Some(1));
    }

    #[test]
    fn matrix_market_round_trip() {
        let g = parse("a b 2.5\nb c 1e-3\nc a 7", ParseOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&g.adjacency(), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("%%MatrixMarket matrix coordinate real general\n3 3 3\n1 2 2.5\n"));
        assert_eq!(read_matrix_market(buf.as_slice()).unwrap(), g.adjacency());
    }

    #[test]
    fn matrix_market_symmetric_pattern() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 2\n2 1\n3 2\n";
        let m = read_matrix_market(text.as_bytes()).unwrap();
        assert_eq!(m.nnz(), 4);
        assert!(m.is_symmetric());
        assert!(
            read_matrix_market("%%MatrixMarket matrix array real general\n".as_bytes()).is_err()
        );
        assert!(read_matrix_market(
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n".as_bytes()
        )
        .is_err());
    }
}
