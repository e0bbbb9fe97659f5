//! Exact invariants of closed orientable Seifert manifolds over orientable
//! bases, and the decision procedures for horizontal foliations and for
//! products of commutators in the universal cover of `PSL(2, R)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::Slope;
use crate::{Error, Rational, Result};

/// One exceptional (or framing) fiber, read as the rational `beta / alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberInvariant {
    pub alpha: i64,
    pub beta: i64,
}

impl FiberInvariant {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.beta, self.alpha)
    }

    fn floor(&self) -> i64 {
        self.beta.div_euclid(self.alpha)
    }

    fn ceil(&self) -> i64 {
        -(-self.beta).div_euclid(self.alpha)
    }
}

/// Unnormalized Seifert invariants `(g, 0; beta_1/alpha_1, ..., beta_l/alpha_l)`.
///
/// A circle bundle of Euler number `e` is written with the single pair `(1, e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertInvariants {
    genus: i64,
    exceptional: Vec<FiberInvariant>,
}

impl SeifertInvariants {
    pub fn new(genus: i64, pairs: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        if genus < 0 {
            return Err(Error::InvalidSeifert(format!("negative genus {genus}")));
        }
        let mut exceptional = Vec::new();
        for (alpha, beta) in pairs {
            if alpha <= 0 {
                return Err(Error::InvalidSeifert(format!("alpha = {alpha} is not positive")));
            }
            if alpha.gcd(&beta) != 1 {
                return Err(Error::InvalidSeifert(format!(
                    "pair ({alpha}, {beta}) is not coprime"
                )));
            }
            exceptional.push(FiberInvariant { alpha, beta });
        }
        Ok(SeifertInvariants { genus, exceptional })
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn exceptional(&self) -> &[FiberInvariant] {
        &self.exceptional
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, 0;", self.genus)?;
        for (i, fiber) in self.exceptional.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}/{}", fiber.beta, fiber.alpha)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeometryType {
    Spherical,
    S2xR,
    Euclidean,
    Nil,
    H2xR,
    SL2tilde,
}

impl GeometryType {
    pub const ALL: [GeometryType; 6] = [
        GeometryType::Spherical,
        GeometryType::S2xR,
        GeometryType::Euclidean,
        GeometryType::Nil,
        GeometryType::H2xR,
        GeometryType::SL2tilde,
    ];
}

/// Translation class of an elliptic element: conjugate to the lift of the
/// rotation by `2 pi alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TranslationClass(pub Rational);

pub fn euler_number(inv: &SeifertInvariants) -> Rational {
    inv.exceptional
        .iter()
        .fold(Rational::zero(), |acc, fiber| acc + fiber.ratio())
}

pub fn orbifold_euler_char(inv: &SeifertInvariants) -> Rational {
    let one = Rational::from_integer(1);
    inv.exceptional
        .iter()
        .fold(Rational::from_integer(2 - 2 * inv.genus), |acc, fiber| {
            acc - (one - Rational::new(1, fiber.alpha))
        })
}

pub fn geometry_type(inv: &SeifertInvariants) -> GeometryType {
    let e = euler_number(inv);
    let chi = orbifold_euler_char(inv);
    match (e.is_zero(), chi.signum().to_integer()) {
        (false, -1) => GeometryType::SL2tilde,
        (true, -1) => GeometryType::H2xR,
        (false, 0) => GeometryType::Nil,
        (true, 0) => GeometryType::Euclidean,
        (false, _) => GeometryType::Spherical,
        (true, _) => GeometryType::S2xR,
    }
}

/// Milnor-Wood inequality `|e| <= |chi(F_g)|` for a circle bundle over a
/// closed surface of positive genus.
pub fn milnor_wood_check(e: i64, genus: i64) -> Result<bool> {
    if genus <= 0 {
        return Err(Error::GenusZeroUnsupported);
    }
    Ok(e.abs() <= 2 * genus - 2)
}

fn floor_ceil_sums(fibers: &[FiberInvariant]) -> (i64, i64) {
    fibers
        .iter()
        .fold((0, 0), |(lo, hi), f| (lo + f.floor(), hi + f.ceil()))
}

/// Eisenbud-Hirsch-Neumann criterion: a horizontal `(PSL2, S^1)`-foliation
/// exists iff `sum floor(beta/alpha) <= -chi(F)` and `sum ceil(beta/alpha) >= chi(F)`.
pub fn ehn_horizontal_foliation(inv: &SeifertInvariants) -> Result<bool> {
    if inv.genus <= 0 {
        return Err(Error::GenusZeroUnsupported);
    }
    let (floors, ceils) = floor_ceil_sums(&inv.exceptional);
    let chi = 2 - 2 * inv.genus;
    Ok(floors <= -chi && ceils >= chi)
}

/// Smallest genus `g >= 1` at which the foliation criterion holds for the
/// given fibers.
pub fn min_genus_for_ehn(exceptional: &[FiberInvariant]) -> i64 {
    let (floors, ceils) = floor_ceil_sums(exceptional);
    // floors <= 2g - 2  and  ceils >= 2 - 2g
    let from_floors = Integer::div_ceil(&(floors + 2), &2);
    let from_ceils = Integer::div_ceil(&(2 - ceils), &2);
    from_floors.max(from_ceils).max(1)
}

/// Whether a product of elements with the given translation classes is a
/// product of `genus` commutators: `|sum alpha_i| < 2g - 1`, strictly.
pub fn commutator_realizable(alphas: &[TranslationClass], genus: i64) -> Result<bool> {
    if alphas.is_empty() {
        return Err(Error::EmptyInput);
    }
    if genus <= 0 {
        return Err(Error::GenusZeroUnsupported);
    }
    let total = alphas
        .iter()
        .fold(Rational::zero(), |acc, class| acc + class.0);
    Ok(total.abs() < Rational::from_integer(2 * genus - 1))
}

/// Closed Seifert manifold obtained from a trivial circle bundle over a genus
/// `genus` surface by filling boundary tori along `slopes`, each written as
/// `(a, b)` in the section-fiber basis of its torus.
pub fn fill_framed_piece(genus: i64, slopes: &[Slope]) -> Result<SeifertInvariants> {
    let mut pairs = Vec::with_capacity(slopes.len());
    for slope in slopes {
        let (a, b) = (slope.a(), slope.b());
        if a == 0 {
            return Err(Error::FiberSlope((a, b)));
        }
        // slopes are unoriented; the canonical representative has a > 0
        pairs.push(if a < 0 { (-a, -b) } else { (a, b) });
    }
    SeifertInvariants::new(genus, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(genus: i64, pairs: &[(i64, i64)]) -> SeifertInvariants {
        SeifertInvariants::new(genus, pairs.iter().copied()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn euler_number_examples() {
        assert_eq!(euler_number(&inv(2, &[])), q(0, 1));
        // 1/2 + 1/3 + 1/5 = 15/30 + 10/30 + 6/30
        assert_eq!(euler_number(&inv(0, &[(2, 1), (3, 1), (5, 1)])), q(31, 30));
        assert_eq!(euler_number(&inv(1, &[(1, 7)])), q(7, 1));
        assert_eq!(euler_number(&inv(1, &[(1, -4)])), q(-4, 1));
    }

    #[test]
    fn orbifold_euler_char_examples() {
        assert_eq!(orbifold_euler_char(&inv(2, &[])), q(-2, 1));
        // 2 - (1/2 + 2/3 + 6/7) = 84/42 - (21 + 28 + 36)/42
        assert_eq!(orbifold_euler_char(&inv(0, &[(2, 1), (3, 1), (7, 1)])), q(-1, 42));
        assert_eq!(orbifold_euler_char(&inv(1, &[])), q(0, 1));
    }

    #[test]
    fn geometry_examples() {
        assert_eq!(geometry_type(&inv(0, &[(2, 1), (3, 1), (7, 1)])), GeometryType::SL2tilde);
        assert_eq!(geometry_type(&inv(1, &[])), GeometryType::Euclidean);
        assert_eq!(geometry_type(&inv(2, &[])), GeometryType::H2xR);
        assert_eq!(geometry_type(&inv(1, &[(1, 1)])), GeometryType::Nil);
        assert_eq!(geometry_type(&inv(0, &[(1, 1)])), GeometryType::Spherical);
        assert_eq!(geometry_type(&inv(0, &[])), GeometryType::S2xR);
    }

    #[test]
    fn milnor_wood_examples() {
        assert!(milnor_wood_check(2, 2).unwrap());
        assert!(!milnor_wood_check(3, 2).unwrap());
        assert!(milnor_wood_check(0, 1).unwrap());
        assert_eq!(milnor_wood_check(0, 0), Err(Error::GenusZeroUnsupported));
    }

    #[test]
    fn ehn_examples() {
        assert!(ehn_horizontal_foliation(&inv(1, &[(2, 1), (2, -1)])).unwrap());
        assert!(!ehn_horizontal_foliation(&inv(2, &[(1, 3)])).unwrap());
        assert!(ehn_horizontal_foliation(&inv(1, &[])).unwrap());
        assert_eq!(
            ehn_horizontal_foliation(&inv(0, &[(2, 1)])),
            Err(Error::GenusZeroUnsupported)
        );
    }

    #[test]
    fn ehn_uses_floor_and_ceiling_of_negative_ratios() {
        // floor(-1/2) = -1, ceil(-1/2) = 0; three of them need 2 - 2g <= 0 and -3 <= 2g - 2
        let fibers = inv(1, &[(2, -1), (2, -1), (2, -1)]);
        assert!(ehn_horizontal_foliation(&fibers).unwrap());
        // ceil(-5/2) = -2 twice: -4 >= 2 - 2g needs g >= 3
        assert!(!ehn_horizontal_foliation(&inv(2, &[(2, -5), (2, -5)])).unwrap());
        assert!(ehn_horizontal_foliation(&inv(3, &[(2, -5), (2, -5)])).unwrap());
    }

    #[test]
    fn min_genus_examples() {
        let minus_ones = inv(1, &[(1, -1), (1, -1), (1, -1)]);
        assert_eq!(min_genus_for_ehn(minus_ones.exceptional()), 3);
        assert_eq!(min_genus_for_ehn(&[]), 1);
        assert_eq!(min_genus_for_ehn(inv(1, &[(1, 3)]).exceptional()), 3);
    }

    #[test]
    fn commutator_examples() {
        let tc = |n, d| TranslationClass(q(n, d));
        assert!(!commutator_realizable(&[tc(1, 1)], 1).unwrap());
        assert!(commutator_realizable(&[tc(1, 2), tc(1, 4)], 1).unwrap());
        assert!(commutator_realizable(&[tc(5, 1), tc(-5, 1)], 1).unwrap());
        assert_eq!(commutator_realizable(&[], 1), Err(Error::EmptyInput));
    }

    #[test]
    fn fill_examples() {
        let s = |a, b| Slope::new(a, b).unwrap();
        let filled = fill_framed_piece(2, &[s(1, 0), s(1, 0)]).unwrap();
        assert_eq!(filled, inv(2, &[(1, 0), (1, 0)]));
        assert_eq!(euler_number(&filled), q(0, 1));

        let filled = fill_framed_piece(2, &[s(1, -1)]).unwrap();
        assert_eq!(filled, inv(2, &[(1, -1)]));
        assert_eq!(euler_number(&filled), q(-1, 1));

        let filled = fill_framed_piece(3, &[s(2, 1), s(3, -2)]).unwrap();
        assert_eq!(filled, inv(3, &[(2, 1), (3, -2)]));
        assert_eq!(euler_number(&filled), q(-1, 6));

        assert_eq!(fill_framed_piece(2, &[s(0, 1)]), Err(Error::FiberSlope((0, 1))));
    }

    #[test]
    fn rejects_non_coprime_pairs() {
        assert!(SeifertInvariants::new(1, [(2, 4)]).is_err());
        assert!(SeifertInvariants::new(1, [(3, 0)]).is_err());
        assert!(SeifertInvariants::new(1, [(0, 1)]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(inv(2, &[(2, 1), (3, -2)]).to_string(), "(2, 0; 1/2, -2/3)");
    }
}
