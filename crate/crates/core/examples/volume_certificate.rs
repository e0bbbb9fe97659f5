//! Seifert-volume lower bounds for a few graph manifolds.

use gmanvol::graph;
use gmanvol::volume::{self, SideCondition, VolumeConfig};

const GRAPHS: [(&str, &str); 3] = [
    (
        "single edge, non-zero Euler number",
        r#"{"edges":[{"head":["B",0],"matrix":[[1,1],[1,0]],"tail":["A",0]}],
            "pieces":[{"boundary":1,"genus":2,"id":"A"},{"boundary":1,"genus":2,"id":"B"}]}"#,
    ),
    (
        "two J edges",
        r#"{"edges":[{"head":["B",0],"matrix":[[0,1],[1,0]],"tail":["A",0]},
            {"head":["B",1],"matrix":[[0,1],[1,0]],"tail":["A",1]}],
            "pieces":[{"boundary":2,"genus":2,"id":"A"},{"boundary":2,"genus":2,"id":"B"}]}"#,
    ),
    (
        "five J edges, needs a cover",
        r#"{"edges":[{"head":["B",0],"matrix":[[0,1],[1,0]],"tail":["A",0]},
            {"head":["B",1],"matrix":[[0,1],[1,0]],"tail":["A",1]},
            {"head":["B",2],"matrix":[[0,1],[1,0]],"tail":["A",2]},
            {"head":["B",3],"matrix":[[0,1],[1,0]],"tail":["A",3]},
            {"head":["B",4],"matrix":[[0,1],[1,0]],"tail":["A",4]}],
            "pieces":[{"boundary":5,"genus":2,"id":"A"},{"boundary":5,"genus":2,"id":"B"}]}"#,
    ),
];

fn main() -> gmanvol::Result<()> {
    let config = VolumeConfig::default();
    for (label, text) in GRAPHS {
        let gm = graph::parse_graph(text.as_bytes())?;
        let cert = volume::volume_lower_bound(&gm, &config)?;
        println!("{label}");
        println!("  SV >= {} (~{})", cert.bound_pi2, cert.bound_pi2.decimal());
        println!("  case {:?}, cover degree {}", cert.case, cert.cover_degree);
        for stage in &cert.tower {
            let genera: Vec<i64> = stage.per_piece.values().map(|p| p.genus_up).collect();
            println!("  tower stage q = {}: genera {genera:?}", stage.characteristic_level);
        }
        for cond in &cert.side_conditions {
            if let SideCondition::FoliationCriterion { piece, filled, holds, .. } = cond {
                println!("  {piece} filled as {filled}: foliation {holds}");
            }
        }
    }
    Ok(())
}
