//! Decide whether the set of mapping degrees onto a prime manifold is finite.

use gmanvol::classify::{self, PrimeManifoldDescription};
use gmanvol::seifert::{GeometryType, SeifertInvariants};

fn main() -> gmanvol::Result<()> {
    for geom in GeometryType::ALL {
        println!("{geom:?}: {:?}", classify::geometry_finiteness(geom));
    }
    let descriptions = [
        PrimeManifoldDescription::Seifert { invariants: SeifertInvariants::new(0, [(2, 1), (3, 1), (7, 1)])? },
        PrimeManifoldDescription::Seifert { invariants: SeifertInvariants::new(2, [])? },
        PrimeManifoldDescription::TorusBundleCovered,
        PrimeManifoldDescription::HyperbolicOrContainsHyperbolicPiece,
        classify::parse_description(
            br#"{"edges":[{"head":["B",0],"matrix":[[0,1],[1,0]],"tail":["A",0]}],
                "pieces":[{"boundary":1,"genus":2,"id":"A"},{"boundary":1,"genus":2,"id":"B"}]}"#,
        )?,
    ];
    for desc in &descriptions {
        let v = classify::mapping_degree_finiteness(desc)?;
        println!("{}", serde_json::to_string(&v).unwrap());
    }
    Ok(())
}
