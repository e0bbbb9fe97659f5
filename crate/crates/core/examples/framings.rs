//! Parse a graph manifold, print the canonical framing of every piece and
//! the Euler numbers of the filled pieces.
//!
//! `cargo run --example framings -- path/to/graph.json`

use gmanvol::graph;

const DEFAULT: &str = r#"{"edges":[{"head":["B",0],"matrix":[[1,1],[1,0]],"tail":["A",0]},
    {"head":["B",1],"matrix":[[0,1],[1,0]],"tail":["A",1]}],
    "pieces":[{"boundary":2,"genus":2,"id":"A"},{"boundary":2,"genus":3,"id":"B"}]}"#;

fn main() -> gmanvol::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read(&path).map_err(|e| gmanvol::Error::Io(e.to_string()))?,
        None => DEFAULT.as_bytes().to_vec(),
    };
    let gm = graph::parse_graph(&text)?;
    println!("{}", String::from_utf8_lossy(&graph::serialize_graph(&gm)));
    for p in &gm.pieces {
        let framing = graph::canonical_framing(&gm, &p.id)?;
        let filled = graph::filled_piece_invariants(&gm, &p.id, &framing)?;
        let slopes: Vec<String> = framing.iter().map(|s| format!("({}, {})", s.a(), s.b())).collect();
        println!("{}: framing [{}] -> {filled}, e = {}", p.id, slopes.join(", "), graph::framed_euler_number(&gm, &p.id)?);
    }
    println!("|e| = {}", graph::absolute_euler_number(&gm)?);
    println!("+-J form: {}", graph::is_pm_j_form(&gm));
    Ok(())
}
