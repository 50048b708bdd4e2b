//! Compact groups: the torus `T^d`, finite groups given by a table, and the
//! rotation group SO(3).
//!
//! Every family exposes its group law, a bi-invariant metric, a Haar sampler
//! and an indexed family of test functions (characters). Points are kept in a
//! normal form so that equality is meaningful:
//!
//! * torus coordinates live in `[0, 1)`, reduced after every operation;
//! * finite-group elements are indices into the multiplication table;
//! * rotations are unit quaternions with the sign convention of
//!   [`Quaternion`].

mod finite;
pub mod fixtures;
mod quaternion;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use finite::{FiniteTable, FiniteTableDoc};
pub use quaternion::Quaternion;

/// Torus coordinates; dimensions up to 4 stay inline.
pub type Coords = SmallVec<[f64; 4]>;

/// Reduces a real number to its fractional part in `[0, 1)`.
#[inline]
pub fn frac(x: f64) -> f64 {
    let r = x - x.floor();
    // x slightly below an integer can round up to exactly 1.0
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Circle distance `min(|x - y|, 1 - |x - y|)` for points of `[0, 1)`.
#[inline]
pub fn circle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).abs();
    d.min(1.0 - d)
}

/// A point of one of the supported groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GroupPoint {
    Torus(Coords),
    Element(usize),
    Rotation(Quaternion),
}

impl GroupPoint {
    /// A point of the one-dimensional torus, reduced mod 1.
    pub fn circle(x: f64) -> Self {
        GroupPoint::Torus(smallvec::smallvec![frac(x)])
    }

    pub fn torus(coords: &[f64]) -> Self {
        GroupPoint::Torus(coords.iter().map(|&x| frac(x)).collect())
    }

    fn family_name(&self) -> &'static str {
        match self {
            GroupPoint::Torus(_) => "torus",
            GroupPoint::Element(_) => "finite",
            GroupPoint::Rotation(_) => "rotation3d",
        }
    }

    /// The single coordinate of a point of `T^1`.
    pub fn as_circle(&self) -> Option<f64> {
        match self {
            GroupPoint::Torus(c) if c.len() == 1 => Some(c[0]),
            _ => None,
        }
    }
}

impl fmt::Display for GroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupPoint::Torus(c) => {
                let parts: Vec<String> = c.iter().map(|x| format!("{x:.12e}")).collect();
                write!(f, "{}", parts.join(" "))
            }
            GroupPoint::Element(i) => write!(f, "{i}"),
            GroupPoint::Rotation(q) => {
                write!(f, "{:.12e} {:.12e} {:.12e} {:.12e}", q.w, q.x, q.y, q.z)
            }
        }
    }
}

/// Index of a test function (character) on a group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharacterIndex {
    /// `x -> exp(2 pi i k.x)` on `T^d`.
    Torus(SmallVec<[i64; 4]>),
    /// Indicator of one element of a finite group.
    Element(usize),
    /// The character of the `(2k+1)`-dimensional irreducible representation
    /// of SO(3), a function of the rotation angle only.
    Spin(u32),
}

impl CharacterIndex {
    pub fn circle(k: i64) -> Self {
        CharacterIndex::Torus(smallvec::smallvec![k])
    }
}

impl fmt::Display for CharacterIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterIndex::Torus(k) => {
                let parts: Vec<String> = k.iter().map(i64::to_string).collect();
                write!(f, "{}", parts.join(";"))
            }
            CharacterIndex::Element(i) => write!(f, "{i}"),
            CharacterIndex::Spin(k) => write!(f, "{k}"),
        }
    }
}

/// The group-law interface every family implements. Additional families can
/// be plugged into generic code through this trait; [`CompactGroup`] is the
/// closed set of families the toolkit ships.
pub trait GroupLaw {
    type Element: Clone + PartialEq;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;
    fn inverse(&self, g: &Self::Element) -> Self::Element;
    /// A bi-invariant metric.
    fn distance(&self, g: &Self::Element, h: &Self::Element) -> f64;
    fn haar_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Element;
}

/// `T^d` with coordinates in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Torus {
    pub dim: usize,
}

impl GroupLaw for Torus {
    type Element = Coords;

    fn identity(&self) -> Coords {
        smallvec::smallvec![0.0; self.dim]
    }

    fn multiply(&self, g: &Coords, h: &Coords) -> Coords {
        g.iter().zip(h).map(|(a, b)| frac(a + b)).collect()
    }

    fn inverse(&self, g: &Coords) -> Coords {
        g.iter().map(|a| frac(-a)).collect()
    }

    fn distance(&self, g: &Coords, h: &Coords) -> f64 {
        g.iter()
            .zip(h)
            .map(|(a, b)| circle_distance(*a, *b))
            .fold(0.0, f64::max)
    }

    fn haar_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Coords {
        (0..self.dim).map(|_| rng.random::<f64>()).collect()
    }
}

impl GroupLaw for FiniteTable {
    type Element = usize;

    fn identity(&self) -> usize {
        FiniteTable::identity(self)
    }

    fn multiply(&self, g: &usize, h: &usize) -> usize {
        self.mul(*g, *h)
    }

    fn inverse(&self, g: &usize) -> usize {
        self.inv(*g)
    }

    fn distance(&self, g: &usize, h: &usize) -> f64 {
        if g == h {
            0.0
        } else {
            1.0
        }
    }

    fn haar_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.random_range(0..self.order())
    }
}

/// SO(3) as unit quaternions modulo sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rotation3D;

impl GroupLaw for Rotation3D {
    type Element = Quaternion;

    fn identity(&self) -> Quaternion {
        Quaternion::IDENTITY
    }

    fn multiply(&self, g: &Quaternion, h: &Quaternion) -> Quaternion {
        g.mul(h)
    }

    fn inverse(&self, g: &Quaternion) -> Quaternion {
        g.conjugate()
    }

    fn distance(&self, g: &Quaternion, h: &Quaternion) -> f64 {
        g.mul(&h.conjugate()).angle()
    }

    fn haar_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Quaternion {
        loop {
            let c: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            if let Some(q) = Quaternion::new(c[0], c[1], c[2], c[3]) {
                return q;
            }
        }
    }
}

/// Which family a [`CompactGroup`] belongs to.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupFamily {
    Torus(Torus),
    Finite(Arc<FiniteTable>),
    Rotation3D,
}

/// A compact group together with a default histogram resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactGroup {
    family: GroupFamily,
    partition_hint: usize,
}

/// Default number of torus bins per dimension (and rotation-angle bins).
pub const DEFAULT_BINS: usize = 1000;

impl CompactGroup {
    pub fn torus(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("torus dimension must be >= 1".into()));
        }
        Ok(CompactGroup {
            family: GroupFamily::Torus(Torus { dim }),
            partition_hint: DEFAULT_BINS,
        })
    }

    pub fn circle() -> Self {
        CompactGroup::torus(1).expect("dimension 1 is valid")
    }

    pub fn finite(table: FiniteTable) -> Self {
        let n = table.order();
        CompactGroup {
            family: GroupFamily::Finite(Arc::new(table)),
            partition_hint: n,
        }
    }

    pub fn rotation3d() -> Self {
        CompactGroup {
            family: GroupFamily::Rotation3D,
            partition_hint: DEFAULT_BINS,
        }
    }

    pub fn with_partition_hint(mut self, bins: usize) -> Self {
        if !matches!(self.family, GroupFamily::Finite(_)) {
            self.partition_hint = bins.max(1);
        }
        self
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn partition_hint(&self) -> usize {
        self.partition_hint
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            GroupFamily::Torus(_) => "torus",
            GroupFamily::Finite(_) => "finite",
            GroupFamily::Rotation3D => "rotation3d",
        }
    }

    pub fn finite_table(&self) -> Option<&FiniteTable> {
        match &self.family {
            GroupFamily::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn torus_dim(&self) -> Option<usize> {
        match self.family {
            GroupFamily::Torus(t) => Some(t.dim),
            _ => None,
        }
    }

    fn mismatch(&self, g: &GroupPoint) -> Error {
        Error::FamilyMismatch {
            expected: self.family_name().into(),
            got: g.family_name().into(),
        }
    }

    /// Checks that `g` is a point of this group in normal form.
    pub fn check(&self, g: &GroupPoint) -> Result<()> {
        match (&self.family, g) {
            (GroupFamily::Torus(t), GroupPoint::Torus(c)) => {
                if c.len() != t.dim {
                    return Err(Error::FamilyMismatch {
                        expected: format!("torus of dimension {}", t.dim),
                        got: format!("torus point of dimension {}", c.len()),
                    });
                }
                if c.iter().all(|x| (0.0..1.0).contains(x)) {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("torus coordinates {c:?} not in [0,1)")))
                }
            }
            (GroupFamily::Finite(t), GroupPoint::Element(i)) => t.check(*i),
            (GroupFamily::Rotation3D, GroupPoint::Rotation(q)) => {
                if q.is_normal_form() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("{q:?} is not a normalized rotation")))
                }
            }
            _ => Err(self.mismatch(g)),
        }
    }

    pub fn identity(&self) -> GroupPoint {
        match &self.family {
            GroupFamily::Torus(t) => GroupPoint::Torus(t.identity()),
            GroupFamily::Finite(t) => GroupPoint::Element(t.identity()),
            GroupFamily::Rotation3D => GroupPoint::Rotation(Quaternion::IDENTITY),
        }
    }

    pub fn multiply(&self, g: &GroupPoint, h: &GroupPoint) -> Result<GroupPoint> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.multiply_unchecked(g, h))
    }

    /// Product of two points already known to belong to this group.
    pub(crate) fn multiply_unchecked(&self, g: &GroupPoint, h: &GroupPoint) -> GroupPoint {
        match (&self.family, g, h) {
            (GroupFamily::Torus(t), GroupPoint::Torus(a), GroupPoint::Torus(b)) => {
                GroupPoint::Torus(t.multiply(a, b))
            }
            (GroupFamily::Finite(t), GroupPoint::Element(a), GroupPoint::Element(b)) => {
                GroupPoint::Element(t.mul(*a, *b))
            }
            (GroupFamily::Rotation3D, GroupPoint::Rotation(a), GroupPoint::Rotation(b)) => {
                GroupPoint::Rotation(a.mul(b))
            }
            _ => unreachable!("points were checked against the group"),
        }
    }

    pub fn inverse(&self, g: &GroupPoint) -> Result<GroupPoint> {
        self.check(g)?;
        Ok(match (&self.family, g) {
            (GroupFamily::Torus(t), GroupPoint::Torus(a)) => GroupPoint::Torus(t.inverse(a)),
            (GroupFamily::Finite(t), GroupPoint::Element(a)) => GroupPoint::Element(t.inv(*a)),
            (GroupFamily::Rotation3D, GroupPoint::Rotation(q)) => {
                GroupPoint::Rotation(q.conjugate())
            }
            _ => unreachable!(),
        })
    }

    pub fn distance(&self, g: &GroupPoint, h: &GroupPoint) -> Result<f64> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (&self.family, g, h) {
            (GroupFamily::Torus(t), GroupPoint::Torus(a), GroupPoint::Torus(b)) => {
                t.distance(a, b)
            }
            (GroupFamily::Finite(t), GroupPoint::Element(a), GroupPoint::Element(b)) => {
                t.distance(a, b)
            }
            (GroupFamily::Rotation3D, GroupPoint::Rotation(a), GroupPoint::Rotation(b)) => {
                Rotation3D.distance(a, b)
            }
            _ => unreachable!(),
        })
    }

    pub fn haar_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupPoint {
        match &self.family {
            GroupFamily::Torus(t) => GroupPoint::Torus(t.haar_sample(rng)),
            GroupFamily::Finite(t) => GroupPoint::Element(t.haar_sample(rng)),
            GroupFamily::Rotation3D => GroupPoint::Rotation(Rotation3D.haar_sample(rng)),
        }
    }

    /// Validates a character index for this group.
    pub fn check_character(&self, k: &CharacterIndex) -> Result<()> {
        match (&self.family, k) {
            (GroupFamily::Torus(t), CharacterIndex::Torus(v)) if v.len() == t.dim => Ok(()),
            (GroupFamily::Finite(t), CharacterIndex::Element(i)) if *i < t.order() => Ok(()),
            (GroupFamily::Rotation3D, CharacterIndex::Spin(s)) if (1..=3).contains(s) => Ok(()),
            _ => Err(Error::InvalidCharacter(format!(
                "{k:?} is not a test function of the {} group",
                self.family_name()
            ))),
        }
    }

    pub fn character_eval(&self, k: &CharacterIndex, g: &GroupPoint) -> Result<Complex64> {
        self.check_character(k)?;
        self.check(g)?;
        Ok(self.character_unchecked(k, g))
    }

    pub(crate) fn character_unchecked(&self, k: &CharacterIndex, g: &GroupPoint) -> Complex64 {
        match (k, g) {
            (CharacterIndex::Torus(k), GroupPoint::Torus(x)) => {
                // reduce the phase mod 1 before scaling by 2 pi
                let phase: f64 = k.iter().zip(x).map(|(k, x)| frac(*k as f64 * x)).sum();
                Complex64::from_polar(1.0, 2.0 * PI * frac(phase))
            }
            (CharacterIndex::Element(e), GroupPoint::Element(i)) => {
                Complex64::new(if e == i { 1.0 } else { 0.0 }, 0.0)
            }
            (CharacterIndex::Spin(s), GroupPoint::Rotation(q)) => {
                Complex64::new(spin_character(*s, q.angle()), 0.0)
            }
            _ => unreachable!("index and point were checked"),
        }
    }

    /// Haar integral of a test function: 1 for the trivial torus character,
    /// 0 for the others, `1/n` for an element indicator, 0 for spin >= 1.
    pub fn character_haar_value(&self, k: &CharacterIndex) -> Result<Complex64> {
        self.check_character(k)?;
        Ok(match (&self.family, k) {
            (_, CharacterIndex::Torus(v)) => {
                Complex64::new(if v.iter().all(|&x| x == 0) { 1.0 } else { 0.0 }, 0.0)
            }
            (GroupFamily::Finite(t), CharacterIndex::Element(_)) => {
                Complex64::new(1.0 / t.order() as f64, 0.0)
            }
            _ => Complex64::new(0.0, 0.0),
        })
    }

    /// `sup |phi_k|` over the group.
    pub fn character_sup(&self, k: &CharacterIndex) -> f64 {
        match k {
            CharacterIndex::Spin(s) => (2 * s + 1) as f64,
            _ => 1.0,
        }
    }

    /// The non-trivial test functions used by uniformity statistics:
    /// torus frequencies with `1 <= max|k_i| <= k_max` (one of each `+-k`
    /// pair), every element indicator, or spins `1..=min(k_max, 3)`.
    pub fn test_characters(&self, k_max: usize) -> Vec<CharacterIndex> {
        match &self.family {
            GroupFamily::Torus(t) => torus_frequencies(t.dim, k_max as i64),
            GroupFamily::Finite(t) => (0..t.order()).map(CharacterIndex::Element).collect(),
            GroupFamily::Rotation3D => (1..=k_max.clamp(1, 3) as u32).map(CharacterIndex::Spin).collect(),
        }
    }
}

/// `chi_k(theta) = sin((2k+1) theta / 2) / sin(theta / 2)`, evaluated through
/// the equivalent sum `1 + 2 sum_{j<=k} cos(j theta)` which stays finite at 0.
pub fn spin_character(k: u32, theta: f64) -> f64 {
    1.0 + 2.0 * (1..=k).map(|j| (j as f64 * theta).cos()).sum::<f64>()
}

fn torus_frequencies(dim: usize, k_max: i64) -> Vec<CharacterIndex> {
    let mut out = Vec::new();
    let side = (2 * k_max + 1) as usize;
    let total = side.pow(dim as u32);
    for code in 0..total {
        let mut rem = code;
        let k: SmallVec<[i64; 4]> = (0..dim)
            .map(|_| {
                let digit = (rem % side) as i64 - k_max;
                rem /= side;
                digit
            })
            .collect();
        // keep k with first nonzero entry positive
        match k.iter().find(|&&x| x != 0) {
            Some(&first) if first > 0 => out.push(CharacterIndex::Torus(k)),
            _ => {}
        }
    }
    out.sort_by_key(|c| match c {
        CharacterIndex::Torus(k) => (k.iter().map(|x| x.abs()).max().unwrap_or(0), k.clone()),
        _ => unreachable!(),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s3() -> CompactGroup {
        CompactGroup::finite(fixtures::symmetric(3).unwrap())
    }

    fn z(n: usize) -> CompactGroup {
        CompactGroup::finite(fixtures::cyclic(n).unwrap())
    }

    #[test]
    fn torus_multiply_wraps() {
        let g = CompactGroup::circle();
        let p = g
            .multiply(&GroupPoint::circle(0.7), &GroupPoint::circle(0.6))
            .unwrap();
        assert!((p.as_circle().unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn transposition_is_involution() {
        let g = s3();
        let t = GroupPoint::Element(g.finite_table().unwrap().index_of("(12)").unwrap());
        assert_eq!(g.multiply(&t, &t).unwrap(), g.identity());
    }

    #[test]
    fn quaternion_inverse_law() {
        let g = CompactGroup::rotation3d();
        let q = GroupPoint::Rotation(Quaternion::new(0.3, -0.4, 0.5, 0.1).unwrap());
        let p = g.multiply(&q, &g.inverse(&q).unwrap()).unwrap();
        assert!(g.distance(&p, &g.identity()).unwrap() < 1e-12);
    }

    #[test]
    fn inverses() {
        let g = CompactGroup::circle();
        assert_eq!(g.inverse(&GroupPoint::circle(0.25)).unwrap(), GroupPoint::circle(0.75));
        assert_eq!(g.inverse(&GroupPoint::circle(0.0)).unwrap(), GroupPoint::circle(0.0));
        assert_eq!(z(6).inverse(&GroupPoint::Element(2)).unwrap(), GroupPoint::Element(4));
    }

    #[test]
    fn distances() {
        let g = CompactGroup::circle();
        let d = g.distance(&GroupPoint::circle(0.1), &GroupPoint::circle(0.9)).unwrap();
        assert!((d - 0.2).abs() < 1e-15);
        assert_eq!(s3().distance(&GroupPoint::Element(3), &GroupPoint::Element(3)).unwrap(), 0.0);
        let r = CompactGroup::rotation3d();
        let half = GroupPoint::Rotation(Quaternion::from_axis_angle([0.0, 0.0, 1.0], PI).unwrap());
        assert!((r.distance(&r.identity(), &half).unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn family_mismatch() {
        let g = CompactGroup::circle();
        let err = g.multiply(&GroupPoint::circle(0.1), &GroupPoint::Element(0)).unwrap_err();
        assert!(matches!(err, Error::FamilyMismatch { .. }));
        assert!(g.distance(&GroupPoint::Element(0), &GroupPoint::circle(0.1)).is_err());
    }

    #[test]
    fn characters() {
        let g = CompactGroup::circle();
        let v = g
            .character_eval(&CharacterIndex::circle(2), &GroupPoint::circle(0.25))
            .unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let one = g
            .character_eval(&CharacterIndex::circle(0), &GroupPoint::circle(0.37))
            .unwrap();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let z2 = z(2);
        let ind = z2
            .character_eval(&CharacterIndex::Element(1), &GroupPoint::Element(0))
            .unwrap();
        assert_eq!(ind, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn invalid_character_indices() {
        assert!(CompactGroup::rotation3d().check_character(&CharacterIndex::Spin(4)).is_err());
        assert!(z(3).check_character(&CharacterIndex::Element(3)).is_err());
        let t2 = CompactGroup::torus(2).unwrap();
        assert!(t2.check_character(&CharacterIndex::circle(1)).is_err());
    }

    #[test]
    fn spin_character_matches_ratio_form() {
        for k in 1..=3u32 {
            for i in 1..50 {
                let theta = PI * i as f64 / 50.0;
                let ratio = ((2 * k + 1) as f64 * theta / 2.0).sin() / (theta / 2.0).sin();
                assert!((spin_character(k, theta) - ratio).abs() < 1e-12);
            }
            assert_eq!(spin_character(k, 0.0), (2 * k + 1) as f64);
        }
        // chi_1 = 1 + 2 cos
        assert!((spin_character(1, 1.0) - (1.0 + 2.0 * 1f64.cos())).abs() < 1e-15);
    }

    #[test]
    fn character_max_at_identity() {
        let t = CompactGroup::torus(2).unwrap();
        for k in t.test_characters(2) {
            assert_eq!(t.character_eval(&k, &t.identity()).unwrap(), Complex64::new(1.0, 0.0));
        }
        let s = s3();
        let e = s.identity();
        let ind_e = CharacterIndex::Element(s.finite_table().unwrap().identity());
        assert_eq!(s.character_eval(&ind_e, &e).unwrap().re, 1.0);
        let r = CompactGroup::rotation3d();
        for k in r.test_characters(3) {
            let v = r.character_eval(&k, &r.identity()).unwrap().re;
            assert_eq!(v, r.character_sup(&k));
        }
    }

    #[test]
    fn torus_frequency_enumeration() {
        let ks = CompactGroup::circle().test_characters(3);
        assert_eq!(ks, vec![CharacterIndex::circle(1), CharacterIndex::circle(2), CharacterIndex::circle(3)]);
        // (2K+1)^2 - 1 nonzero vectors, half of them
        assert_eq!(CompactGroup::torus(2).unwrap().test_characters(2).len(), 12);
    }

    #[test]
    fn haar_sampler_is_deterministic() {
        let g = CompactGroup::rotation3d();
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            (0..5).map(|_| g.haar_sample(&mut rng)).collect()
        };
        let b: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            (0..5).map(|_| g.haar_sample(&mut rng)).collect()
        };
        assert_eq!(a, b);
        for p in &a {
            g.check(p).unwrap();
        }
    }

    #[test]
    fn frac_normal_form() {
        assert_eq!(frac(-1e-18), 0.0);
        assert_eq!(frac(2.75), 0.75);
        assert_eq!(frac(-0.25), 0.75);
    }
}
