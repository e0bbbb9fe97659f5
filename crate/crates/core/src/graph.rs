//! Coordinated graph manifolds as decorated multigraphs.
//!
//! Every vertex is a trivial circle bundle `F x S^1` with a fixed section, so
//! each boundary torus carries a section-fiber basis `(s, h)`. Every edge is a
//! JSJ torus, directed from `tail` to `head`, with gluing matrix `A` acting on
//! curve coordinates by columns: a curve with coordinates `(a, b)` on the tail
//! side has coordinates `A (a, b)^T` on the head side.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::seifert::{self, SeifertInvariants};
use crate::{Error, Rational, Result};

/// Unoriented primitive slope `a s + b h`, stored with `a > 0` or as `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Slope {
    a: i64,
    b: i64,
}

impl Slope {
    /// The regular fiber `h`.
    pub const FIBER: Slope = Slope { a: 0, b: 1 };
    /// The section boundary `s`.
    pub const SECTION: Slope = Slope { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Result<Slope> {
        if (a, b) == (0, 0) {
            return Err(Error::InvalidArgument("slope (0, 0)".into()));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidArgument(format!("slope ({a}, {b}) is not primitive")));
        }
        Ok(Slope::canonical(a, b))
    }

    fn canonical(a: i64, b: i64) -> Slope {
        let g = a.gcd(&b).max(1);
        let (a, b) = (a / g, b / g);
        if a < 0 || (a == 0 && b < 0) {
            Slope { a: -a, b: -b }
        } else {
            Slope { a, b }
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn is_fiber(&self) -> bool {
        self.a == 0
    }
}

impl TryFrom<[i64; 2]> for Slope {
    type Error = Error;

    fn try_from([a, b]: [i64; 2]) -> Result<Slope> {
        Slope::new(a, b)
    }
}

impl From<Slope> for [i64; 2] {
    fn from(s: Slope) -> [i64; 2] {
        [s.a, s.b]
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Integer 2x2 gluing matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GluingMatrix(pub [[i64; 2]; 2]);

impl GluingMatrix {
    pub const J: GluingMatrix = GluingMatrix([[0, 1], [1, 0]]);
    pub const MINUS_J: GluingMatrix = GluingMatrix([[0, -1], [-1, 0]]);

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    /// Inverse of a determinant -1 matrix.
    pub fn inverse(&self) -> GluingMatrix {
        let [[a, b], [c, d]] = self.0;
        let det = self.det();
        GluingMatrix([[d * det, -b * det], [-c * det, a * det]])
    }

    fn apply(&self, s: Slope) -> Slope {
        let [[a, b], [c, d]] = self.0;
        Slope::canonical(a * s.a + b * s.b, c * s.a + d * s.b)
    }

    pub fn is_pm_j(&self) -> bool {
        *self == Self::J || *self == Self::MINUS_J
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundlePiece {
    #[serde(rename = "boundary")]
    pub boundary_count: i64,
    pub genus: i64,
    pub id: String,
}

impl BundlePiece {
    /// Euler characteristic of the base surface with its boundary circles.
    pub fn base_euler_char(&self) -> i64 {
        2 - 2 * self.genus - self.boundary_count
    }
}

/// A boundary slot `(piece id, slot index)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(String, usize)", into = "(String, usize)")]
pub struct Endpoint {
    pub piece: String,
    pub slot: usize,
}

impl Endpoint {
    pub fn new(piece: impl Into<String>, slot: usize) -> Endpoint {
        Endpoint { piece: piece.into(), slot }
    }
}

impl From<(String, usize)> for Endpoint {
    fn from((piece, slot): (String, usize)) -> Endpoint {
        Endpoint { piece, slot }
    }
}

impl From<Endpoint> for (String, usize) {
    fn from(e: Endpoint) -> (String, usize) {
        (e.piece, e.slot)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.piece, self.slot)
    }
}

// Field order is the sorted key order of the canonical JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub head: Endpoint,
    pub matrix: GluingMatrix,
    pub tail: Endpoint,
}

impl Edge {
    pub fn new(tail: Endpoint, head: Endpoint, matrix: GluingMatrix) -> Edge {
        Edge { head, matrix, tail }
    }

    fn sort_key(&self) -> (&Endpoint, &Endpoint, &GluingMatrix) {
        (&self.tail, &self.head, &self.matrix)
    }

    /// The same torus described with the opposite direction.
    pub fn reversed(&self) -> Edge {
        Edge::new(self.head.clone(), self.tail.clone(), self.matrix.inverse())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    TailToHead,
    HeadToTail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Tail,
    Head,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphManifold {
    pub edges: Vec<Edge>,
    pub pieces: Vec<BundlePiece>,
}

/// One failed structural requirement of a graph manifold document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoPieces,
    NoEdges,
    DuplicatePiece(String),
    GenusBelowTwo { piece: String, genus: i64 },
    NoBoundary { piece: String, boundary: i64 },
    UnknownPiece { edge: usize, piece: String },
    SlotOutOfRange { piece: String, slot: usize, boundary: i64 },
    SlotReused { piece: String, slot: usize },
    SlotUnused { piece: String, slot: usize },
    SelfLoop { edge: usize, piece: String },
    Determinant { edge: usize, det: i64 },
    Minimality { edge: usize },
    Disconnected,
}

impl Violation {
    /// Short tag naming the violated requirement.
    pub fn rule(&self) -> &'static str {
        match self {
            Violation::NoPieces | Violation::NoEdges => "nontrivial_decomposition",
            Violation::DuplicatePiece(_) => "unique_piece_ids",
            Violation::GenusBelowTwo { .. } => "genus_at_least_two",
            Violation::NoBoundary { .. } => "nonempty_boundary",
            Violation::UnknownPiece { .. } => "known_endpoints",
            Violation::SlotOutOfRange { .. }
            | Violation::SlotReused { .. }
            | Violation::SlotUnused { .. } => "slot_bookkeeping",
            Violation::SelfLoop { .. } => "torus_between_distinct_pieces",
            Violation::Determinant { .. } => "determinant",
            Violation::Minimality { .. } => "minimality",
            Violation::Disconnected => "connected",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoPieces => write!(f, "graph has no pieces"),
            Violation::NoEdges => write!(f, "graph has no JSJ torus"),
            Violation::DuplicatePiece(id) => write!(f, "duplicate piece id `{id}`"),
            Violation::GenusBelowTwo { piece, genus } => {
                write!(f, "genus below 2 (piece `{piece}` has genus {genus})")
            }
            Violation::NoBoundary { piece, boundary } => {
                write!(f, "piece `{piece}` has boundary count {boundary}, expected at least 1")
            }
            Violation::UnknownPiece { edge, piece } => {
                write!(f, "edge {edge} refers to unknown piece `{piece}`")
            }
            Violation::SlotOutOfRange { piece, slot, boundary } => write!(
                f,
                "slot {slot} of piece `{piece}` is out of range (boundary count {boundary})"
            ),
            Violation::SlotReused { piece, slot } => {
                write!(f, "slot {slot} of piece `{piece}` is used by more than one edge")
            }
            Violation::SlotUnused { piece, slot } => {
                write!(f, "slot {slot} of piece `{piece}` is not used by any edge")
            }
            Violation::SelfLoop { edge, piece } => {
                write!(f, "edge joins a piece to itself (edge {edge}, piece `{piece}`)")
            }
            Violation::Determinant { edge, det } => {
                write!(f, "determinant of the gluing matrix on edge {edge} is {det}, expected -1")
            }
            Violation::Minimality { edge } => write!(
                f,
                "minimality: gluing matrix on edge {edge} sends the fiber to a fiber (b = 0)"
            ),
            Violation::Disconnected => write!(f, "dual graph is disconnected"),
        }
    }
}

impl Serialize for Violation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Violation", 2)?;
        st.serialize_field("message", &self.to_string())?;
        st.serialize_field("rule", self.rule())?;
        st.end()
    }
}

impl GraphManifold {
    pub fn new(pieces: Vec<BundlePiece>, edges: Vec<Edge>) -> GraphManifold {
        GraphManifold { edges, pieces }
    }

    pub fn piece(&self, id: &str) -> Option<&BundlePiece> {
        self.pieces.iter().find(|p| p.id == id)
    }

    fn require_piece(&self, id: &str) -> Result<&BundlePiece> {
        self.piece(id).ok_or_else(|| Error::UnknownPiece(id.to_string()))
    }

    /// Pieces sorted by id, edges sorted by `(tail, head, matrix)`.
    pub fn canonicalize(&mut self) {
        self.pieces.sort_by(|a, b| a.id.cmp(&b.id));
        self.edges.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    }

    pub fn canonicalized(mut self) -> GraphManifold {
        self.canonicalize();
        self
    }

    /// The edge using a given boundary slot, with the side of the edge it sits on.
    pub fn edge_at(&self, piece: &str, slot: usize) -> Option<(usize, &Edge, Side)> {
        self.edges.iter().enumerate().find_map(|(i, e)| {
            if e.tail.piece == piece && e.tail.slot == slot {
                Some((i, e, Side::Tail))
            } else if e.head.piece == piece && e.head.slot == slot {
                Some((i, e, Side::Head))
            } else {
                None
            }
        })
    }

    /// Number of JSJ tori shared with each neighbouring piece.
    pub fn neighbours(&self, piece: &str) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            let other = if e.tail.piece == piece {
                &e.head.piece
            } else if e.head.piece == piece {
                &e.tail.piece
            } else {
                continue;
            };
            if other != piece {
                *out.entry(other.clone()).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn shared_tori(&self, a: &str, b: &str) -> usize {
        self.edges
            .iter()
            .filter(|e| {
                (e.tail.piece == a && e.head.piece == b) || (e.tail.piece == b && e.head.piece == a)
            })
            .count()
    }

    fn is_connected(&self) -> bool {
        let Some(first) = self.pieces.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([first.id.as_str()]);
        let mut queue = VecDeque::from([first.id.as_str()]);
        while let Some(current) = queue.pop_front() {
            for e in &self.edges {
                let next = if e.tail.piece == current {
                    e.head.piece.as_str()
                } else if e.head.piece == current {
                    e.tail.piece.as_str()
                } else {
                    continue;
                };
                if self.piece(next).is_some() && seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        self.pieces.iter().all(|p| seen.contains(p.id.as_str()))
    }
}

/// All violated requirements; empty iff the graph is a valid coordinated
/// graph manifold in reduced form.
pub fn validate(gm: &GraphManifold) -> Vec<Violation> {
    let mut out = Vec::new();
    if gm.pieces.is_empty() {
        out.push(Violation::NoPieces);
    }
    if gm.edges.is_empty() {
        out.push(Violation::NoEdges);
    }

    let mut ids = BTreeSet::new();
    for p in &gm.pieces {
        if !ids.insert(p.id.as_str()) {
            out.push(Violation::DuplicatePiece(p.id.clone()));
        }
        if p.genus < 2 {
            out.push(Violation::GenusBelowTwo { piece: p.id.clone(), genus: p.genus });
        }
        if p.boundary_count < 1 {
            out.push(Violation::NoBoundary { piece: p.id.clone(), boundary: p.boundary_count });
        }
    }

    let mut used: BTreeMap<(&str, usize), usize> = BTreeMap::new();
    for (i, e) in gm.edges.iter().enumerate() {
        for end in [&e.tail, &e.head] {
            match gm.piece(&end.piece) {
                None => out.push(Violation::UnknownPiece { edge: i, piece: end.piece.clone() }),
                Some(p) if end.slot as i64 >= p.boundary_count => {
                    out.push(Violation::SlotOutOfRange {
                        piece: p.id.clone(),
                        slot: end.slot,
                        boundary: p.boundary_count,
                    })
                }
                Some(_) => {
                    let uses = used.entry((end.piece.as_str(), end.slot)).or_insert(0);
                    *uses += 1;
                    if *uses == 2 {
                        out.push(Violation::SlotReused { piece: end.piece.clone(), slot: end.slot });
                    }
                }
            }
        }
        if e.tail.piece == e.head.piece {
            out.push(Violation::SelfLoop { edge: i, piece: e.tail.piece.clone() });
        }
        let det = e.matrix.det();
        if det != -1 {
            out.push(Violation::Determinant { edge: i, det });
        }
        if e.matrix.0[0][1] == 0 {
            out.push(Violation::Minimality { edge: i });
        }
    }

    for p in &gm.pieces {
        for slot in 0..p.boundary_count.max(0) as usize {
            if !used.contains_key(&(p.id.as_str(), slot)) {
                out.push(Violation::SlotUnused { piece: p.id.clone(), slot });
            }
        }
    }

    if !gm.is_connected() {
        out.push(Violation::Disconnected);
    }
    out
}

/// Reads a graph document without validating it.
pub fn parse_document(text: &[u8]) -> Result<GraphManifold> {
    serde_json::from_slice(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and validates a graph document, returning it in canonical order.
pub fn parse_graph(text: &[u8]) -> Result<GraphManifold> {
    let gm = parse_document(text)?;
    let violations = validate(&gm);
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    Ok(gm.canonicalized())
}

/// Canonical compact JSON: sorted keys, pieces by id, edges by `(tail, head, matrix)`.
pub fn serialize_graph(gm: &GraphManifold) -> Vec<u8> {
    let canonical = gm.clone().canonicalized();
    serde_json::to_vec(&canonical).expect("graph manifolds always serialize")
}

pub fn transport_slope(edge: &Edge, direction: Direction, s: Slope) -> Slope {
    match direction {
        Direction::TailToHead => edge.matrix.apply(s),
        Direction::HeadToTail => edge.matrix.inverse().apply(s),
    }
}

/// For each boundary slot of `piece`, the slope of the fiber of the piece on
/// the other side of the torus, in this piece's coordinates.
pub fn canonical_framing(gm: &GraphManifold, piece: &str) -> Result<Vec<Slope>> {
    let p = gm.require_piece(piece)?;
    (0..p.boundary_count.max(0) as usize)
        .map(|slot| match gm.edge_at(piece, slot) {
            Some((_, e, Side::Tail)) => Ok(transport_slope(e, Direction::HeadToTail, Slope::FIBER)),
            Some((_, e, Side::Head)) => Ok(transport_slope(e, Direction::TailToHead, Slope::FIBER)),
            None => Err(Error::Validation(vec![Violation::SlotUnused {
                piece: piece.to_string(),
                slot,
            }])),
        })
        .collect()
}

pub fn filled_piece_invariants(
    gm: &GraphManifold,
    piece: &str,
    slopes: &[Slope],
) -> Result<SeifertInvariants> {
    let p = gm.require_piece(piece)?;
    if slopes.len() as i64 != p.boundary_count {
        return Err(Error::SlopeCount { expected: p.boundary_count.max(0) as usize, got: slopes.len() });
    }
    seifert::fill_framed_piece(p.genus, slopes)
}

/// Euler number of the piece filled along its canonical framing.
pub fn framed_euler_number(gm: &GraphManifold, piece: &str) -> Result<Rational> {
    let framing = canonical_framing(gm, piece)?;
    let filled = filled_piece_invariants(gm, piece, &framing)?;
    Ok(seifert::euler_number(&filled))
}

pub fn absolute_euler_number(gm: &GraphManifold) -> Result<Rational> {
    gm.pieces.iter().try_fold(Rational::zero(), |acc, p| {
        Ok(acc + framed_euler_number(gm, &p.id)?.abs())
    })
}

pub fn is_pm_j_form(gm: &GraphManifold) -> bool {
    gm.edges.iter().all(|e| e.matrix.is_pm_j())
}
