//! Finiteness of the set of mapping degrees `D(M, N)` onto a closed prime
//! 3-manifold `N`, decided from coarse data about `N`.

use serde::{Deserialize, Serialize};

use crate::graph::{self, GraphManifold};
use crate::seifert::{self, GeometryType, SeifertInvariants};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimeManifoldDescription {
    Seifert {
        #[serde(flatten)]
        invariants: SeifertInvariants,
    },
    Graph {
        graph: GraphManifold,
    },
    /// Caller asserts the manifold is finitely covered by a torus bundle
    /// (Euclidean, Nil or Sol geometry).
    TorusBundleCovered,
    /// Caller asserts hyperbolic geometry or a hyperbolic JSJ piece.
    HyperbolicOrContainsHyperbolicPiece,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Finite,
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// Positive Seifert volume of an `SL2~` manifold bounds every degree.
    PositiveSeifertVolume,
    /// A non-trivial graph manifold has a finite cover of positive Seifert volume.
    VirtuallyPositiveSeifertVolume,
    /// Positive simplicial volume bounds every degree.
    PositiveSimplicialVolume,
    /// Covered by `S^3`: self-maps of every degree.
    CoveredBySphere,
    /// Covered by a trivial circle bundle: self-maps of every degree.
    CoveredByTrivialCircleBundle,
    /// Covered by a torus bundle: self-maps of every degree.
    CoveredByTorusBundle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitenessVerdict {
    pub reason: Reason,
    pub verdict: Verdict,
}

impl FinitenessVerdict {
    fn new(verdict: Verdict, reason: Reason) -> Self {
        FinitenessVerdict { reason, verdict }
    }
}

pub fn geometry_finiteness(geom: GeometryType) -> FinitenessVerdict {
    use GeometryType::*;
    match geom {
        SL2tilde => FinitenessVerdict::new(Verdict::Finite, Reason::PositiveSeifertVolume),
        Spherical => FinitenessVerdict::new(Verdict::Infinite, Reason::CoveredBySphere),
        S2xR | H2xR => FinitenessVerdict::new(Verdict::Infinite, Reason::CoveredByTrivialCircleBundle),
        Euclidean | Nil => FinitenessVerdict::new(Verdict::Infinite, Reason::CoveredByTorusBundle),
    }
}

pub fn mapping_degree_finiteness(desc: &PrimeManifoldDescription) -> Result<FinitenessVerdict> {
    Ok(match desc {
        PrimeManifoldDescription::Seifert { invariants } => {
            geometry_finiteness(seifert::geometry_type(invariants))
        }
        PrimeManifoldDescription::Graph { graph: gm } => {
            let violations = graph::validate(gm);
            if !violations.is_empty() {
                return Err(Error::Validation(violations));
            }
            FinitenessVerdict::new(Verdict::Finite, Reason::VirtuallyPositiveSeifertVolume)
        }
        PrimeManifoldDescription::TorusBundleCovered => {
            FinitenessVerdict::new(Verdict::Infinite, Reason::CoveredByTorusBundle)
        }
        PrimeManifoldDescription::HyperbolicOrContainsHyperbolicPiece => {
            FinitenessVerdict::new(Verdict::Finite, Reason::PositiveSimplicialVolume)
        }
    })
}

/// Reads a description document. A bare graph document (with `pieces` and
/// `edges` at the top level) is accepted as a graph description.
pub fn parse_description(text: &[u8]) -> Result<PrimeManifoldDescription> {
    let value: serde_json::Value =
        serde_json::from_slice(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("kind").is_none() && value.get("pieces").is_some() {
        return Ok(PrimeManifoldDescription::Graph { graph: graph::parse_graph(text)? });
    }
    let desc: PrimeManifoldDescription =
        serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    if let PrimeManifoldDescription::Seifert { invariants } = &desc {
        // re-run the constructor checks skipped by deserialization
        let pairs = invariants.exceptional().iter().map(|f| (f.alpha, f.beta));
        SeifertInvariants::new(invariants.genus(), pairs)?;
    }
    Ok(desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_table() {
        for geom in GeometryType::ALL {
            let verdict = geometry_finiteness(geom).verdict;
            assert_eq!(verdict == Verdict::Finite, geom == GeometryType::SL2tilde, "{geom:?}");
        }
        assert_eq!(geometry_finiteness(GeometryType::Euclidean).verdict, Verdict::Infinite);
        assert_eq!(geometry_finiteness(GeometryType::H2xR).verdict, Verdict::Infinite);
    }

    #[test]
    fn description_examples() {
        let inv = SeifertInvariants::new(0, [(2, 1), (3, 1), (7, 1)]).unwrap();
        let v = mapping_degree_finiteness(&PrimeManifoldDescription::Seifert { invariants: inv }).unwrap();
        assert_eq!(v.verdict, Verdict::Finite);
        let v = mapping_degree_finiteness(&PrimeManifoldDescription::TorusBundleCovered).unwrap();
        assert_eq!(v.verdict, Verdict::Infinite);
        let v = mapping_degree_finiteness(&PrimeManifoldDescription::HyperbolicOrContainsHyperbolicPiece)
            .unwrap();
        assert_eq!(v, FinitenessVerdict::new(Verdict::Finite, Reason::PositiveSimplicialVolume));
    }

    #[test]
    fn parses_descriptions() {
        let desc = parse_description(br#"{"kind":"seifert","genus":0,"exceptional":[{"alpha":2,"beta":1}]}"#)
            .unwrap();
        assert!(matches!(desc, PrimeManifoldDescription::Seifert { .. }));
        assert!(parse_description(br#"{"kind":"seifert","genus":0,"exceptional":[{"alpha":2,"beta":4}]}"#)
            .is_err());
        assert_eq!(
            parse_description(br#"{"kind":"torus_bundle_covered"}"#).unwrap(),
            PrimeManifoldDescription::TorusBundleCovered
        );
        let graph = br#"{"pieces":[{"id":"A","genus":2,"boundary":1},{"id":"B","genus":2,"boundary":1}],
            "edges":[{"tail":["A",0],"head":["B",0],"matrix":[[0,1],[1,0]]}]}"#;
        let desc = parse_description(graph).unwrap();
        assert_eq!(mapping_degree_finiteness(&desc).unwrap().verdict, Verdict::Finite);
        assert!(matches!(parse_description(b"[1,"), Err(Error::Parse(_))));
    }
}
