//! Reading edge lists and time-stamped records, and round-tripping an
//! adjacency matrix through MatrixMarket.

use nbtwalk::graph::{parse_edge_list, read_matrix_market, write_matrix_market, ParseOptions};
use nbtwalk::temporal::parse_temporal_records;

fn main() -> nbtwalk::Result<()> {
    let text = "# comment\nalice bob 2\nbob carol 1\ncarol alice 0.5\n";
    let g = parse_edge_list(text.as_bytes(), &ParseOptions::default())?;
    println!("nodes {:?}, {} edges", g.node_labels(), g.m());

    let mut buf = Vec::new();
    write_matrix_market(&g.adjacency(), &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    let back = read_matrix_market(buf.as_slice())?;
    println!("round trip equal: {}", back == g.adjacency());

    let records = "10 alice bob\n10 bob alice\n20 bob carol 3\n35 carol alice\n";
    let tg = parse_temporal_records(records.as_bytes(), &ParseOptions::default())?;
    println!("timestamps {:?}", tg.timestamps());
    for (s, snap) in tg.snapshots().iter().enumerate() {
        println!("snapshot {s}: {} edges", snap.m());
    }
    Ok(())
}
