//! Seifert-volume lower-bound certificates.
//!
//! The certified statement is always about an explicit finite cover of the
//! input: `SV(cover) >= bound_pi2 * pi^2`. Chern-Simons values come from the
//! closed form `cs = 2 pi^2 e` of a filled piece that carries a horizontal
//! foliation, and the volume (Godbillon-Vey number) is twice that.
//!
//! When the absolute Euler number is non-zero, a piece with `e != 0` is
//! filled along its canonical framing; neighbouring pieces are made to carry
//! connections killing their fiber, whose contribution vanishes. When it is
//! zero and all gluings are `J` or `-J`, two adjacent pieces are filled along
//! `s - h` on their common tori and contribute `2 pi^2 r` each.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coverings::{self, CoveringCertificate};
use crate::graph::{self, Direction, GraphManifold, Side, Slope};
use crate::seifert::{self, SeifertInvariants, TranslationClass};
use crate::{Error, Rational, Result};

/// An exact multiple of `pi^2`, stored as its rational coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PiSquared(#[serde(with = "crate::rational::as_string")] pub Rational);

impl PiSquared {
    pub fn coefficient(&self) -> Rational {
        self.0
    }

    pub fn abs(&self) -> PiSquared {
        PiSquared(self.0.abs())
    }

    /// Decimal rendering with 12 significant digits, for display only.
    pub fn decimal(&self) -> String {
        let value = self.0.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(2);
        format!("{:.*e}", 11, value)
    }
}

impl fmt::Display for PiSquared {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} pi^2", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VolumeConfig {
    /// Assumed bound on the total translation number of the boundary
    /// holonomy entering each neighbouring piece.
    pub alpha_bound: u64,
}

impl Default for VolumeConfig {
    fn default() -> Self {
        VolumeConfig { alpha_bound: 1_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "e_nonzero")]
    NonzeroAbsoluteEuler,
    #[serde(rename = "e_zero_pmj")]
    ZeroAbsoluteEulerPmJ,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Chosen {
    Piece { piece: String },
    Pair { pieces: [String; 2], r: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingSlope {
    pub piece: String,
    pub slot: usize,
    pub slope: Slope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SideCondition {
    /// The filled piece satisfies the horizontal-foliation criterion at the
    /// top of the tower, so the flat connection exists.
    FoliationCriterion {
        piece: String,
        genus: i64,
        filled: String,
        #[serde(with = "crate::rational::as_string")]
        euler: Rational,
        holds: bool,
    },
    /// A neighbour sharing `tori` tori with the chosen piece must reach base
    /// genus above `(alpha_bound + 1) / 2` so that the boundary holonomy is a
    /// product of commutators; `genus_raising_prime` is a prime for which the
    /// genus-raising cover centred at the chosen piece achieves it.
    NeighbourGenus {
        piece: String,
        tori: usize,
        alpha_bound: u64,
        genus: i64,
        required_genus: i64,
        genus_raising_prime: u64,
        commutator_inequality: String,
        realizable_at_required_genus: bool,
    },
    /// Pieces whose connection kills the fiber contribute zero volume.
    ZeroContribution { pieces: Vec<String>, rule: String },
    /// The filling slope `s - h` lifts across every common `+-J` torus to the
    /// same slope, so the two boundary normal forms match.
    GluingCompatibility {
        pieces: [String; 2],
        tori: usize,
        slope: Slope,
        matches_across_every_torus: bool,
    },
    /// How the two Chern-Simons values are combined.
    OrientationConvention {
        #[serde(with = "crate::rational::as_string")]
        e1: Rational,
        #[serde(with = "crate::rational::as_string")]
        e2: Rational,
        cs_magnitude_pi2: PiSquared,
        rule: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeCertificate {
    /// Coefficient `c` in `SV(cover) >= c pi^2`.
    pub bound_pi2: PiSquared,
    pub case: Case,
    pub chosen: Chosen,
    pub cover_degree: u64,
    /// Chern-Simons value of the certified flat connection.
    pub cs_pi2: PiSquared,
    pub filling_slopes: Vec<FillingSlope>,
    /// Volume of the associated representation (twice `cs_pi2`).
    pub gv_pi2: PiSquared,
    pub side_conditions: Vec<SideCondition>,
    /// Covers applied left to right.
    pub tower: Vec<CoveringCertificate>,
}

/// `cs = 2 pi^2 e` for a filled piece admitting a horizontal foliation.
pub fn cs_of_filled_piece(inv: &SeifertInvariants) -> Result<PiSquared> {
    if !seifert::ehn_horizontal_foliation(inv)? {
        return Err(Error::EhnFails);
    }
    Ok(PiSquared(Rational::from_integer(2) * seifert::euler_number(inv)))
}

pub fn gv_of_certified_connection(cs: PiSquared) -> PiSquared {
    PiSquared(cs.0 * Rational::from_integer(2))
}

fn ensure_valid(gm: &GraphManifold) -> Result<()> {
    let violations = graph::validate(gm);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(violations))
    }
}

/// Applies the characteristic cover at the smallest admissible prime
/// `>= q`, or nothing when `q == 1`.
fn characteristic_stage(
    gm: &GraphManifold,
    q: u64,
) -> Result<(GraphManifold, Vec<CoveringCertificate>, u64)> {
    if q == 1 {
        return Ok((gm.clone(), Vec::new(), 1));
    }
    let prime = coverings::admissible_characteristic_prime(gm, q);
    let cov = coverings::characteristic_cover(gm, prime)?;
    let report = coverings::verify_covering_certificate(&cov, gm);
    if !report.is_empty() {
        return Err(Error::Internal(format!("tower stage fails verification: {report:?}")));
    }
    let degree = cov.certificate.total_degree;
    Ok((cov.manifold, vec![cov.certificate], degree))
}

fn foliation_condition(gm: &GraphManifold, piece: &str, slopes: &[Slope]) -> Result<SideCondition> {
    let filled = graph::filled_piece_invariants(gm, piece, slopes)?;
    Ok(SideCondition::FoliationCriterion {
        piece: piece.to_string(),
        genus: filled.genus(),
        filled: filled.to_string(),
        euler: seifert::euler_number(&filled),
        holds: seifert::ehn_horizontal_foliation(&filled)?,
    })
}

fn neighbour_condition(
    gm: &GraphManifold,
    neighbour: &str,
    tori: usize,
    alpha_bound: u64,
) -> Result<SideCondition> {
    let p = gm.piece(neighbour).ok_or_else(|| Error::UnknownPiece(neighbour.to_string()))?;
    let bound = alpha_bound as i64;
    // |sum alpha_T| <= B < 2g - 1  <=>  g > (B + 1) / 2
    let required_genus = (bound + 1) / 2 + 1;
    // genus after a degree-q raise is 1 + q (g - 1)
    let needed = num_integer::Integer::div_ceil(&(required_genus - 1), &(p.genus - 1)).max(1) as u64;
    let prime = if needed <= 1 { 1 } else { coverings::next_prime_above(needed - 1) };
    let realizable = seifert::commutator_realizable(
        &[TranslationClass(Rational::from_integer(bound))],
        required_genus,
    )?;
    Ok(SideCondition::NeighbourGenus {
        piece: neighbour.to_string(),
        tori,
        alpha_bound,
        genus: p.genus,
        required_genus,
        genus_raising_prime: prime,
        commutator_inequality: "|sum alpha_T| < 2 genus - 1".into(),
        realizable_at_required_genus: realizable,
    })
}

/// Certificate for graphs with non-zero absolute Euler number.
pub fn case1_bound(gm: &GraphManifold, config: &VolumeConfig) -> Result<VolumeCertificate> {
    ensure_valid(gm)?;
    let abs_e = graph::absolute_euler_number(gm)?;
    if abs_e.is_zero() {
        return Err(Error::WrongCase(abs_e.to_string()));
    }

    // pieces are canonically sorted, so the first maximum has the smallest id
    let mut best: Option<(String, Rational)> = None;
    let mut ids: Vec<&str> = gm.pieces.iter().map(|p| p.id.as_str()).collect();
    ids.sort();
    for id in ids {
        let e = graph::framed_euler_number(gm, id)?;
        if best.as_ref().is_none_or(|(_, b)| e.abs() > b.abs()) {
            best = Some((id.to_string(), e));
        }
    }
    let (piece, e_down) = best.expect("valid graphs have pieces");

    let framing = graph::canonical_framing(gm, &piece)?;
    let q = coverings::min_prime_for_ehn_cover(gm, &piece, &framing)?;
    let (stage, tower, cover_degree) = characteristic_stage(gm, q)?;

    let stage_framing = graph::canonical_framing(&stage, &piece)?;
    let filled = graph::filled_piece_invariants(&stage, &piece, &stage_framing)?;
    let e_up = seifert::euler_number(&filled);
    if e_up != e_down {
        return Err(Error::Internal(format!(
            "framed Euler number changed under the cover: {e_down} -> {e_up}"
        )));
    }
    let cs = cs_of_filled_piece(&filled)?;
    let gv = gv_of_certified_connection(cs);
    let bound = gv.abs();

    let mut side_conditions = vec![foliation_condition(&stage, &piece, &stage_framing)?];
    let neighbours = stage.neighbours(&piece);
    for (neighbour, tori) in &neighbours {
        side_conditions.push(neighbour_condition(&stage, neighbour, *tori, config.alpha_bound)?);
    }
    side_conditions.push(SideCondition::ZeroContribution {
        pieces: neighbours.keys().cloned().collect(),
        rule: "fiber-killing representation factors through the base surface group; \
               its volume class vanishes since the surface has no 3-dimensional cohomology"
            .into(),
    });

    let filling_slopes = stage_framing
        .iter()
        .enumerate()
        .map(|(slot, slope)| FillingSlope { piece: piece.clone(), slot, slope: *slope })
        .collect();

    Ok(VolumeCertificate {
        bound_pi2: bound,
        case: Case::NonzeroAbsoluteEuler,
        chosen: Chosen::Piece { piece },
        cover_degree,
        cs_pi2: cs,
        filling_slopes,
        gv_pi2: gv,
        side_conditions,
        tower,
    })
}

/// Filling slopes for the pair construction: `s - h` on tori shared with
/// `other`, the canonical framing elsewhere.
fn pair_filling(gm: &GraphManifold, piece: &str, other: &str) -> Result<Vec<Slope>> {
    let framing = graph::canonical_framing(gm, piece)?;
    let diagonal = Slope::new(1, -1)?;
    Ok(framing
        .into_iter()
        .enumerate()
        .map(|(slot, canonical)| match gm.edge_at(piece, slot) {
            Some((_, e, Side::Tail)) if e.head.piece == other => diagonal,
            Some((_, e, Side::Head)) if e.tail.piece == other => diagonal,
            _ => canonical,
        })
        .collect())
}

/// Euler numbers of two adjacent pieces of a `+-J` graph filled along
/// `s - h` on their `r` common tori and canonically elsewhere.
pub fn case2_euler_pair(
    gm: &GraphManifold,
    piece1: &str,
    piece2: &str,
) -> Result<(Rational, Rational, usize)> {
    if !graph::is_pm_j_form(gm) {
        return Err(Error::NotPmJ);
    }
    for id in [piece1, piece2] {
        if gm.piece(id).is_none() {
            return Err(Error::UnknownPiece(id.to_string()));
        }
    }
    let r = gm.shared_tori(piece1, piece2);
    if r == 0 || piece1 == piece2 {
        return Err(Error::NotAdjacent(piece1.to_string(), piece2.to_string()));
    }
    let euler = |piece: &str, other: &str| -> Result<Rational> {
        let slopes = pair_filling(gm, piece, other)?;
        Ok(seifert::euler_number(&graph::filled_piece_invariants(gm, piece, &slopes)?))
    };
    Ok((euler(piece1, piece2)?, euler(piece2, piece1)?, r))
}

/// Certificate for graphs with zero absolute Euler number and `+-J` gluings.
pub fn case2_bound(gm: &GraphManifold, _config: &VolumeConfig) -> Result<VolumeCertificate> {
    ensure_valid(gm)?;
    let abs_e = graph::absolute_euler_number(gm)?;
    if !abs_e.is_zero() {
        return Err(Error::WrongCase(abs_e.to_string()));
    }
    if !graph::is_pm_j_form(gm) {
        return Err(Error::PmJFormRequired);
    }

    let mut best: Option<(usize, String, String)> = None;
    for e in &gm.edges {
        let (a, b) = if e.tail.piece <= e.head.piece {
            (&e.tail.piece, &e.head.piece)
        } else {
            (&e.head.piece, &e.tail.piece)
        };
        let r = gm.shared_tori(a, b);
        let better = match &best {
            None => true,
            Some((br, ba, bb)) => r > *br || (r == *br && (a, b) < (ba, bb)),
        };
        if better {
            best = Some((r, a.clone(), b.clone()));
        }
    }
    let (_, piece1, piece2) = best.expect("valid graphs have edges");

    let q = [(&piece1, &piece2), (&piece2, &piece1)]
        .into_iter()
        .map(|(p, o)| {
            let slopes = pair_filling(gm, p, o)?;
            coverings::min_prime_for_ehn_cover(gm, p, &slopes)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);
    let (stage, tower, cover_degree) = characteristic_stage(gm, q)?;

    let (e1, e2, r) = case2_euler_pair(&stage, &piece1, &piece2)?;
    let slopes1 = pair_filling(&stage, &piece1, &piece2)?;
    let slopes2 = pair_filling(&stage, &piece2, &piece1)?;
    let cs1 = cs_of_filled_piece(&graph::filled_piece_invariants(&stage, &piece1, &slopes1)?)?;
    let cs2 = cs_of_filled_piece(&graph::filled_piece_invariants(&stage, &piece2, &slopes2)?)?;

    // |cs| = 2 pi^2 (|e1| + |e2|); both fillings are -r in the lifted coordinates
    let cs = PiSquared(cs1.0.abs() + cs2.0.abs());
    let expected = Rational::from_integer(4 * r as i64);
    if cs.0 != expected {
        return Err(Error::Internal(format!("pair Chern-Simons magnitude {} != 4r = {expected}", cs.0)));
    }
    let gv = gv_of_certified_connection(cs);

    let diagonal = Slope::new(1, -1)?;
    let matches_across_every_torus = stage
        .edges
        .iter()
        .filter(|e| {
            (e.tail.piece == piece1 && e.head.piece == piece2)
                || (e.tail.piece == piece2 && e.head.piece == piece1)
        })
        .all(|e| graph::transport_slope(e, Direction::TailToHead, diagonal) == diagonal);

    let mut outer: Vec<String> = stage
        .neighbours(&piece1)
        .into_keys()
        .chain(stage.neighbours(&piece2).into_keys())
        .filter(|id| *id != piece1 && *id != piece2)
        .collect();
    outer.sort();
    outer.dedup();

    let side_conditions = vec![
        foliation_condition(&stage, &piece1, &slopes1)?,
        foliation_condition(&stage, &piece2, &slopes2)?,
        SideCondition::GluingCompatibility {
            pieces: [piece1.clone(), piece2.clone()],
            tori: r,
            slope: diagonal,
            matches_across_every_torus,
        },
        SideCondition::OrientationConvention {
            e1,
            e2,
            cs_magnitude_pi2: cs,
            rule: "cs magnitude is 2 pi^2 (|e1| + |e2|) with orientation-coherent signs".into(),
        },
        SideCondition::ZeroContribution {
            pieces: outer,
            rule: "pieces outside the pair carry connections killing the adjacent fibers; \
                   their volume class vanishes"
                .into(),
        },
    ];

    let mut filling_slopes = Vec::new();
    for (piece, slopes) in [(&piece1, &slopes1), (&piece2, &slopes2)] {
        for (slot, slope) in slopes.iter().enumerate() {
            filling_slopes.push(FillingSlope { piece: piece.clone(), slot, slope: *slope });
        }
    }

    Ok(VolumeCertificate {
        bound_pi2: gv.abs(),
        case: Case::ZeroAbsoluteEulerPmJ,
        chosen: Chosen::Pair { pieces: [piece1, piece2], r },
        cover_degree,
        cs_pi2: cs,
        filling_slopes,
        gv_pi2: gv,
        side_conditions,
        tower,
    })
}

/// Dispatches on the absolute Euler number.
pub fn volume_lower_bound(gm: &GraphManifold, config: &VolumeConfig) -> Result<VolumeCertificate> {
    ensure_valid(gm)?;
    let gm = gm.clone().canonicalized();
    if graph::absolute_euler_number(&gm)?.is_zero() {
        case2_bound(&gm, config)
    } else {
        case1_bound(&gm, config)
    }
}
