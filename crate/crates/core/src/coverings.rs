//! Finite covers of graph manifolds built combinatorially.
//!
//! Two constructions are provided:
//!
//! - [`characteristic_cover`]: degree `q^2`, one connected preimage of every
//!   piece and torus, fiber degree `q`, base covering of degree `q` that is
//!   of order `q` on each boundary circle. Gluing matrices lift unchanged.
//! - [`genus_raising_cover`]: degree `q`, trivial over a chosen centre piece
//!   and over every torus; each neighbour of the centre is replaced by one
//!   connected cover whose base has genus `1 + q(g - 1)`.
//!
//! Every cover comes with a [`CoveringCertificate`] that
//! [`verify_covering_certificate`] checks against the base manifold.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{self, BundlePiece, Edge, Endpoint, GraphManifold, Slope, Violation};
use crate::seifert::{self, SeifertInvariants};
use crate::{Error, Result};

/// Order of each boundary circle of the base surface under the covering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryOrder {
    /// Every boundary circle lifts homeomorphically (`o = 1`).
    Trivial,
    /// Every boundary circle is covered by a single circle (`o = q`).
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Characteristic,
    GenusRaising,
}

/// Why every piece covering is separable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Separability {
    /// Regular cover from a product epimorphism `pi_1 F x Z -> G_1 x G_2`.
    ProductEpimorphism,
    /// Fiber degree one.
    FiberDegreeOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceCover {
    /// Downstairs slot under each upstairs boundary slot.
    pub boundary_over: Vec<usize>,
    pub boundary_up: i64,
    pub degree: u64,
    pub genus_up: i64,
    pub horizontal_degree: u64,
    pub over: String,
    pub vertical_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<String>,
    pub characteristic_level: u64,
    pub construction: Construction,
    pub per_piece: BTreeMap<String, PieceCover>,
    pub separability: Separability,
    pub separable: bool,
    /// Degree of each torus preimage component over its downstairs torus.
    pub torus_degree: u64,
    pub total_degree: u64,
}

/// A cover together with its certificate; `torus_map[i]` is the index of the
/// downstairs edge (in canonical order) under covered edge `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "CoveredGraphDoc", into = "CoveredGraphDoc")]
pub struct CoveredGraph {
    pub manifold: GraphManifold,
    pub certificate: CoveringCertificate,
    pub torus_map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoveredGraphDoc {
    certificate: CoveringCertificate,
    edges: Vec<Edge>,
    pieces: Vec<BundlePiece>,
    torus_map: Vec<usize>,
}

impl From<CoveredGraphDoc> for CoveredGraph {
    fn from(doc: CoveredGraphDoc) -> CoveredGraph {
        CoveredGraph {
            manifold: GraphManifold::new(doc.pieces, doc.edges),
            certificate: doc.certificate,
            torus_map: doc.torus_map,
        }
    }
}

impl From<CoveredGraph> for CoveredGraphDoc {
    fn from(c: CoveredGraph) -> CoveredGraphDoc {
        CoveredGraphDoc {
            certificate: c.certificate,
            edges: c.manifold.edges,
            pieces: c.manifold.pieces,
            torus_map: c.torus_map,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> u64 {
    (n + 1..).find(|&k| is_prime(k)).expect("primes are unbounded")
}

/// Genus and boundary count of a degree-`q` cover of a surface of genus
/// `genus` with `boundary` circles, when every boundary circle has order
/// `order` (either 1 or `q`).
pub fn riemann_hurwitz_genus(
    genus: i64,
    boundary: i64,
    q: u64,
    order: BoundaryOrder,
) -> Result<(i64, i64)> {
    if genus < 2 || boundary < 1 || q < 1 {
        return Err(Error::InvalidArgument(format!(
            "Riemann-Hurwitz needs genus >= 2, boundary >= 1, q >= 1 (got {genus}, {boundary}, {q})"
        )));
    }
    let qi = q as i64;
    match order {
        BoundaryOrder::Full => {
            // 2 (g_q - g) = (2g + p - 2)(q - 1)
            let twice = (2 * genus + boundary - 2) * (qi - 1);
            if twice % 2 != 0 {
                return Err(Error::NonIntegralGenus { genus, boundary, q });
            }
            Ok((genus + twice / 2, boundary))
        }
        BoundaryOrder::Trivial => Ok((1 + qi * (genus - 1), qi * boundary)),
    }
}

fn ensure_valid(gm: &GraphManifold) -> Result<()> {
    let violations = graph::validate(gm);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(violations))
    }
}

fn max_boundary(gm: &GraphManifold) -> i64 {
    gm.pieces.iter().map(|p| p.boundary_count).max().unwrap_or(0)
}

/// Smallest prime `>= at_least` accepted by [`characteristic_cover`] on `gm`.
pub fn admissible_characteristic_prime(gm: &GraphManifold, at_least: u64) -> u64 {
    let floor = at_least.max(max_boundary(gm).max(0) as u64 + 1);
    if is_prime(floor) {
        floor
    } else {
        next_prime_above(floor)
    }
}

fn sorted_with_map(mut gm: GraphManifold, torus_map: Vec<usize>) -> (GraphManifold, Vec<usize>) {
    let mut tagged: Vec<(Edge, usize)> = gm.edges.drain(..).zip(torus_map).collect();
    tagged.sort_by(|(a, _), (b, _)| (&a.tail, &a.head, &a.matrix).cmp(&(&b.tail, &b.head, &b.matrix)));
    let (edges, map): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
    gm.edges = edges;
    gm.pieces.sort_by(|a, b| a.id.cmp(&b.id));
    (gm, map)
}

/// The separable `q`-characteristic cover of degree `q^2`.
pub fn characteristic_cover(gm: &GraphManifold, q: u64) -> Result<CoveredGraph> {
    ensure_valid(gm)?;
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if let Some(p) = gm.pieces.iter().find(|p| p.boundary_count < 2) {
        return Err(Error::BoundaryCountTooSmall {
            piece: p.id.clone(),
            boundary: p.boundary_count,
        });
    }
    let max_boundary = max_boundary(gm);
    if q as i64 <= max_boundary {
        return Err(Error::PrimeTooSmall { q, max_boundary });
    }

    let mut pieces = Vec::with_capacity(gm.pieces.len());
    let mut per_piece = BTreeMap::new();
    for p in &gm.pieces {
        let (genus_up, boundary_up) =
            riemann_hurwitz_genus(p.genus, p.boundary_count, q, BoundaryOrder::Full)?;
        pieces.push(BundlePiece { id: p.id.clone(), genus: genus_up, boundary_count: boundary_up });
        per_piece.insert(
            p.id.clone(),
            PieceCover {
                boundary_over: (0..p.boundary_count as usize).collect(),
                boundary_up,
                degree: q * q,
                genus_up,
                horizontal_degree: q,
                over: p.id.clone(),
                vertical_degree: q,
            },
        );
    }
    let manifold = GraphManifold::new(pieces, gm.edges.clone());
    let torus_map = (0..gm.edges.len()).collect();
    let (manifold, torus_map) = sorted_with_map(manifold, torus_map);

    Ok(CoveredGraph {
        manifold,
        certificate: CoveringCertificate {
            center: None,
            characteristic_level: q,
            construction: Construction::Characteristic,
            per_piece,
            separability: Separability::ProductEpimorphism,
            separable: true,
            torus_degree: q * q,
            total_degree: q * q,
        },
        torus_map,
    })
}

fn copy_id(piece: &str, label: u64) -> String {
    format!("{piece}#{label}")
}

/// Degree-`q` cover that is trivial over `center` and over every torus, and
/// raises the genus of each neighbour of `center`.
///
/// The centre and every piece not adjacent to it appear as `q` copies labelled
/// `id#k`; torus lifts join equal labels, and lift `k` of slot `j` of a
/// neighbour is its slot `j*q + k`.
pub fn genus_raising_cover(gm: &GraphManifold, center: &str, q: u64) -> Result<CoveredGraph> {
    ensure_valid(gm)?;
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if gm.piece(center).is_none() {
        return Err(Error::UnknownPiece(center.to_string()));
    }
    let adjacent = gm.neighbours(center);
    let is_adjacent = |id: &str| adjacent.contains_key(id);
    let qs = q as usize;

    let mut pieces = Vec::new();
    let mut per_piece = BTreeMap::new();
    for p in &gm.pieces {
        if is_adjacent(&p.id) {
            let (genus_up, boundary_up) =
                riemann_hurwitz_genus(p.genus, p.boundary_count, q, BoundaryOrder::Trivial)?;
            pieces.push(BundlePiece { id: p.id.clone(), genus: genus_up, boundary_count: boundary_up });
            per_piece.insert(
                p.id.clone(),
                PieceCover {
                    boundary_over: (0..boundary_up as usize).map(|slot| slot / qs).collect(),
                    boundary_up,
                    degree: q,
                    genus_up,
                    horizontal_degree: q,
                    over: p.id.clone(),
                    vertical_degree: 1,
                },
            );
        } else {
            for k in 0..q {
                let id = copy_id(&p.id, k);
                pieces.push(BundlePiece { id: id.clone(), ..p.clone() });
                per_piece.insert(
                    id,
                    PieceCover {
                        boundary_over: (0..p.boundary_count as usize).collect(),
                        boundary_up: p.boundary_count,
                        degree: 1,
                        genus_up: p.genus,
                        horizontal_degree: 1,
                        over: p.id.clone(),
                        vertical_degree: 1,
                    },
                );
            }
        }
    }

    let lift = |end: &Endpoint, k: u64| {
        if is_adjacent(&end.piece) {
            Endpoint::new(end.piece.clone(), end.slot * qs + k as usize)
        } else {
            Endpoint::new(copy_id(&end.piece, k), end.slot)
        }
    };
    let mut edges = Vec::new();
    let mut torus_map = Vec::new();
    for (i, e) in gm.edges.iter().enumerate() {
        for k in 0..q {
            edges.push(Edge::new(lift(&e.tail, k), lift(&e.head, k), e.matrix));
            torus_map.push(i);
        }
    }
    let (manifold, torus_map) = sorted_with_map(GraphManifold::new(pieces, edges), torus_map);

    let violations = graph::validate(&manifold);
    if violations.contains(&Violation::Disconnected) {
        return Err(Error::DisconnectedCover);
    }
    if !violations.is_empty() {
        return Err(Error::Internal(format!("genus-raising cover is invalid: {violations:?}")));
    }

    Ok(CoveredGraph {
        manifold,
        certificate: CoveringCertificate {
            center: Some(center.to_string()),
            characteristic_level: 1,
            construction: Construction::GenusRaising,
            per_piece,
            separability: Separability::FiberDegreeOne,
            separable: true,
            torus_degree: 1,
            total_degree: q,
        },
        torus_map,
    })
}

/// Checks the certificate of `cov` against `base`; empty iff every degree,
/// Euler characteristic and gluing-matrix identity holds.
pub fn verify_covering_certificate(cov: &CoveredGraph, base: &GraphManifold) -> Vec<String> {
    let mut report = Vec::new();
    let cert = &cov.certificate;
    let up = &cov.manifold;

    for v in graph::validate(up) {
        report.push(format!("covered graph: {v}"));
    }
    if !cert.separable {
        report.push("separability: certificate does not claim a separable cover".into());
    }
    if cert.characteristic_level == 0 || cert.total_degree == 0 {
        report.push("degree bookkeeping: zero degree".into());
    }
    let level = cert.characteristic_level;
    if cert.torus_degree != level * level {
        report.push(format!(
            "characteristic level: torus degree {} is not {level}^2",
            cert.torus_degree
        ));
    }

    for p in &up.pieces {
        if !cert.per_piece.contains_key(&p.id) {
            report.push(format!("piece record: covered piece `{}` has no record", p.id));
        }
    }
    let mut degree_over: BTreeMap<&str, u64> = BTreeMap::new();
    for (id, rec) in &cert.per_piece {
        let Some(down) = base.piece(&rec.over) else {
            report.push(format!("piece record: `{id}` lies over unknown piece `{}`", rec.over));
            continue;
        };
        match up.piece(id) {
            None => report.push(format!("piece record: `{id}` is not a piece of the cover")),
            Some(p) if p.genus != rec.genus_up || p.boundary_count != rec.boundary_up => {
                report.push(format!("piece record: `{id}` genus/boundary disagree with the cover"))
            }
            Some(_) => {}
        }
        if rec.vertical_degree * rec.horizontal_degree != rec.degree {
            report.push(format!(
                "degree factorization: `{id}` has {} x {} != {}",
                rec.vertical_degree, rec.horizontal_degree, rec.degree
            ));
        }
        let chi_up = 2 - 2 * rec.genus_up - rec.boundary_up;
        if chi_up != rec.horizontal_degree as i64 * down.base_euler_char() {
            report.push(format!(
                "chi multiplicativity: `{id}` has chi {chi_up}, expected {} x {}",
                rec.horizontal_degree,
                down.base_euler_char()
            ));
        }
        if rec.boundary_over.len() as i64 != rec.boundary_up
            || rec.boundary_over.iter().any(|&s| s as i64 >= down.boundary_count)
        {
            report.push(format!("boundary map: `{id}` has an inconsistent boundary map"));
        }
        *degree_over.entry(rec.over.as_str()).or_insert(0) += rec.degree;
    }
    for p in &base.pieces {
        let total = degree_over.get(p.id.as_str()).copied().unwrap_or(0);
        if total != cert.total_degree {
            report.push(format!(
                "degree bookkeeping: pieces over `{}` have total degree {total}, expected {}",
                p.id, cert.total_degree
            ));
        }
    }

    if cov.torus_map.len() != up.edges.len() {
        report.push("torus map: length differs from the number of covered edges".into());
    }
    let mut preimages = vec![0u64; base.edges.len()];
    for (e, &down_idx) in up.edges.iter().zip(&cov.torus_map) {
        let Some(down) = base.edges.get(down_idx) else {
            report.push(format!("torus map: unknown downstairs edge {down_idx}"));
            continue;
        };
        preimages[down_idx] += 1;
        if e.matrix != down.matrix {
            report.push(format!(
                "matrix lift: edge {} -> {} has matrix {:?}, downstairs {:?}",
                e.tail, e.head, e.matrix.0, down.matrix.0
            ));
        }
        let lies_over = |end: &Endpoint, below: &Endpoint| {
            cert.per_piece.get(&end.piece).is_some_and(|rec| {
                rec.over == below.piece && rec.boundary_over.get(end.slot) == Some(&below.slot)
            })
        };
        if !lies_over(&e.tail, &down.tail) || !lies_over(&e.head, &down.head) {
            report.push(format!(
                "torus map: edge {} -> {} does not lie over {} -> {}",
                e.tail, e.head, down.tail, down.head
            ));
        }
    }
    for (i, count) in preimages.iter().enumerate() {
        if count * cert.torus_degree != cert.total_degree {
            report.push(format!(
                "torus bookkeeping: edge {i} has {count} preimages of degree {}, total {}",
                cert.torus_degree, cert.total_degree
            ));
        }
    }
    report
}

/// Smallest prime `q` above the boundary count of `piece` for which the
/// characteristic cover makes the filled piece satisfy the foliation
/// criterion; `1` when the criterion already holds downstairs.
pub fn min_prime_for_ehn_cover(gm: &GraphManifold, piece: &str, slopes: &[Slope]) -> Result<u64> {
    let filled = graph::filled_piece_invariants(gm, piece, slopes)?;
    if seifert::ehn_horizontal_foliation(&filled)? {
        return Ok(1);
    }
    let p = gm.piece(piece).ok_or_else(|| Error::UnknownPiece(piece.to_string()))?;
    if p.boundary_count < 2 {
        return Err(Error::BoundaryCountTooSmall {
            piece: p.id.clone(),
            boundary: p.boundary_count,
        });
    }
    let pairs: Vec<_> = filled.exceptional().iter().map(|f| (f.alpha, f.beta)).collect();
    let mut q = next_prime_above(p.boundary_count as u64);
    loop {
        let (genus_up, _) = riemann_hurwitz_genus(p.genus, p.boundary_count, q, BoundaryOrder::Full)?;
        let upstairs = SeifertInvariants::new(genus_up, pairs.iter().copied())?;
        if seifert::ehn_horizontal_foliation(&upstairs)? {
            return Ok(q);
        }
        q = next_prime_above(q);
    }
}
