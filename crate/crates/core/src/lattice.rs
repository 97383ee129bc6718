//! Points of the integer lattice ℤⁿ and rectangular boxes of them.
//!
//! Multi-indices label the Fourier basis `e_m = z^m` of L²(𝕋ⁿ). Coordinates
//! are arbitrary precision: the index arithmetic behind slant operators
//! multiplies by `k` (or `k²`) at every slant letter, so nested words grow
//! indices quickly.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use dashu::base::Abs;
use dashu::integer::IBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// The order `k ≥ 2` of a slant operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlantOrder(u32);

impl SlantOrder {
    pub fn new(k: i64) -> Result<Self> {
        if (2..=i64::from(u32::MAX)).contains(&k) {
            Ok(SlantOrder(k as u32))
        } else {
            Err(Error::InvalidOrder(k))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_ibig(self) -> IBig {
        IBig::from(self.0)
    }

    /// `k^p` as an arbitrary precision integer.
    pub fn pow(self, p: u32) -> IBig {
        self.as_ibig().pow(p as usize)
    }
}

impl fmt::Display for SlantOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

type Coords = SmallVec<[IBig; 4]>;

/// A point of ℤⁿ. Ordering is lexicographic in the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Coords);

impl MultiIndex {
    pub fn new(coords: Vec<IBig>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(MultiIndex(coords.into_iter().collect()))
    }

    /// Builds an index from machine integers.
    ///
    /// Panics on an empty slice; use [`MultiIndex::new`] for fallible input.
    pub fn from_i64s(coords: &[i64]) -> Self {
        assert!(
            !coords.is_empty(),
            "multi-index needs at least one coordinate"
        );
        MultiIndex(coords.iter().map(|&c| IBig::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "multi-index needs at least one coordinate");
        MultiIndex(std::iter::repeat_n(IBig::ZERO, n).collect())
    }

    /// The unit vector ε_j (1-based `j`).
    pub fn unit(j: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if j == 0 || j > n {
            return Err(Error::CoordinateOutOfRange { j, n });
        }
        let mut m = Self::zero(n);
        m.0[j - 1] = IBig::ONE;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[IBig] {
        &self.0
    }

    pub fn coord(&self, j: usize) -> &IBig {
        &self.0[j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == IBig::ZERO)
    }

    pub fn scale(&self, c: &IBig) -> Self {
        MultiIndex(self.0.iter().map(|x| x * c).collect())
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&IBig::from(c))
    }

    /// Componentwise divisibility: true iff `k` divides every coordinate.
    pub fn divisible_by(&self, k: &IBig) -> bool {
        self.0.iter().all(|c| (c % k) == IBig::ZERO)
    }

    /// `m / k` when `k` divides every coordinate.
    pub fn div_exact(&self, k: &IBig) -> Option<Self> {
        if self.divisible_by(k) {
            Some(MultiIndex(self.0.iter().map(|c| c / k).collect()))
        } else {
            None
        }
    }

    /// Componentwise quotient rounded toward zero, ignoring remainders.
    pub fn div_trunc(&self, k: &IBig) -> Self {
        MultiIndex(self.0.iter().map(|c| c / k).collect())
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> IBig {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(IBig::ZERO)
    }

    /// Sum of absolute coordinates.
    pub fn l1_norm(&self) -> IBig {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim(), other.dim())?;
        Ok(self + other)
    }
}

/// Componentwise divisibility `k | m`.
pub fn divides(k: SlantOrder, m: &MultiIndex) -> bool {
    m.divisible_by(&k.as_ibig())
}

/// The unit vector ε_j in ℤⁿ (1-based `j`).
pub fn unit(j: usize, n: usize) -> Result<MultiIndex> {
    MultiIndex::unit(j, n)
}

impl Add for &MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), rhs.dim(), "multi-index dimension mismatch");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiIndex {
    type Output = MultiIndex;

    fn sub(self, rhs: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), rhs.dim(), "multi-index dimension mismatch");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &MultiIndex {
    type Output = MultiIndex;

    fn neg(self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for MultiIndex {
    type Output = MultiIndex;

    fn neg(self) -> MultiIndex {
        -&self
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Accepts `(a,b,...)` with optional whitespace; both ASCII `-` and U+2212 are
/// read as minus signs.
impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Input(format!("multi-index must be parenthesized: {s:?}")))?;
        let coords = inner
            .split(',')
            .map(|part| {
                let part = part.trim().replace('\u{2212}', "-");
                part.parse::<IBig>()
                    .map_err(|_| Error::Input(format!("bad coordinate {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(coords)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An inclusive rectangular box `lower ≤ m ≤ upper` in ℤⁿ.
///
/// Enumeration is lexicographic: the last coordinate varies fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexBox {
    lower: MultiIndex,
    upper: MultiIndex,
    extents: Vec<usize>,
}

impl IndexBox {
    pub fn new(lower: MultiIndex, upper: MultiIndex) -> Result<Self> {
        Error::check_dim(lower.dim(), upper.dim())?;
        let mut extents = Vec::with_capacity(lower.dim());
        for (lo, hi) in lower.coords().iter().zip(upper.coords()) {
            if lo > hi {
                return Err(Error::InvalidBox(format!(
                    "lower {lower} exceeds upper {upper}"
                )));
            }
            let width = usize::try_from(&(hi - lo + IBig::ONE))
                .map_err(|_| Error::InvalidBox(format!("{lower}..{upper} is too wide")))?;
            extents.push(width);
        }
        Ok(IndexBox {
            lower,
            upper,
            extents,
        })
    }

    /// The cube `[-radius, radius]ⁿ`.
    pub fn cube(n: usize, radius: &IBig) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let r = MultiIndex(std::iter::repeat_n(radius.clone(), n).collect());
        IndexBox::new(-&r, r)
    }

    pub fn cube_i64(n: usize, radius: i64) -> Result<Self> {
        Self::cube(n, &IBig::from(radius))
    }

    /// The cube of half-width `radius` centered at `center`.
    pub fn around(center: &MultiIndex, radius: &IBig) -> Result<Self> {
        let r = MultiIndex(std::iter::repeat_n(radius.clone(), center.dim()).collect());
        IndexBox::new(center - &r, center + &r)
    }

    pub fn singleton(m: MultiIndex) -> Self {
        let extents = vec![1; m.dim()];
        IndexBox {
            lower: m.clone(),
            upper: m,
            extents,
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &MultiIndex {
        &self.lower
    }

    pub fn upper(&self) -> &MultiIndex {
        &self.upper
    }

    /// Side lengths `upper_j - lower_j + 1`.
    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    /// Number of lattice points, `Π (upper_j - lower_j + 1)`.
    pub fn len(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: &MultiIndex) -> bool {
        m.dim() == self.dim()
            && m.coords()
                .iter()
                .zip(self.lower.coords().iter().zip(self.upper.coords()))
                .all(|(c, (lo, hi))| lo <= c && c <= hi)
    }

    /// Position of `m` in enumeration order.
    pub fn position(&self, m: &MultiIndex) -> Option<usize> {
        if !self.contains(m) {
            return None;
        }
        let mut pos = 0usize;
        for ((c, lo), ext) in m
            .coords()
            .iter()
            .zip(self.lower.coords())
            .zip(&self.extents)
        {
            let offset = usize::try_from(&(c - lo)).ok()?;
            pos = pos * ext + offset;
        }
        Some(pos)
    }

    pub fn iter(&self) -> BoxIter<'_> {
        BoxIter {
            bx: self,
            next: Some(self.lower.clone()),
        }
    }

    /// All points in enumeration order.
    pub fn points(&self) -> Vec<MultiIndex> {
        self.iter().collect()
    }

    /// The smallest box containing both `self` and `other`.
    pub fn hull(&self, other: &IndexBox) -> Result<IndexBox> {
        Error::check_dim(self.dim(), other.dim())?;
        let lo = self
            .lower
            .coords()
            .iter()
            .zip(other.lower.coords())
            .map(|(a, b)| a.min(b).clone())
            .collect();
        let hi = self
            .upper
            .coords()
            .iter()
            .zip(other.upper.coords())
            .map(|(a, b)| a.max(b).clone())
            .collect();
        IndexBox::new(MultiIndex::new(lo)?, MultiIndex::new(hi)?)
    }
}

/// All lattice points of a box, lexicographically.
pub fn enumerate_box(b: &IndexBox) -> Vec<MultiIndex> {
    b.points()
}

pub struct BoxIter<'a> {
    bx: &'a IndexBox,
    next: Option<MultiIndex>,
}

impl Iterator for BoxIter<'_> {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut j = succ.dim();
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            if succ.0[j] < self.bx.upper.0[j] {
                succ.0[j] += IBig::ONE;
                self.next = Some(succ);
                break;
            }
            succ.0[j] = self.bx.lower.0[j].clone();
        }
        Some(current)
    }
}

impl<'a> IntoIterator for &'a IndexBox {
    type Item = MultiIndex;
    type IntoIter = BoxIter<'a>;

    fn into_iter(self) -> BoxIter<'a> {
        self.iter()
    }
}

impl fmt::Display for IndexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lower, self.upper)
    }
}

/// Parses `"(l_1,...,l_n)..(u_1,...,u_n)"`.
impl FromStr for IndexBox {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| {
            Error::InvalidBox(format!("expected \"(lower)..(upper)\", got {s:?}"))
        })?;
        let lower: MultiIndex = lo.parse().map_err(|e| Error::InvalidBox(format!("{e}")))?;
        let upper: MultiIndex = hi.parse().map_err(|e| Error::InvalidBox(format!("{e}")))?;
        IndexBox::new(lower, upper)
    }
}

impl Serialize for IndexBox {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IndexBox {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(c: &[i64]) -> MultiIndex {
        MultiIndex::from_i64s(c)
    }

    fn k(v: i64) -> SlantOrder {
        SlantOrder::new(v).unwrap()
    }

    #[test]
    fn divisibility_is_componentwise() {
        assert!(divides(k(2), &idx(&[4, -6])));
        assert!(!divides(k(2), &idx(&[4, 3])));
        assert!(divides(k(3), &idx(&[0, 0, 0])));
    }

    #[test]
    fn unit_vectors() {
        assert_eq!(unit(1, 3).unwrap(), idx(&[1, 0, 0]));
        assert_eq!(unit(3, 3).unwrap(), idx(&[0, 0, 1]));
        assert_eq!(unit(2, 2).unwrap(), idx(&[0, 1]));
        assert!(matches!(
            unit(0, 2),
            Err(Error::CoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            unit(3, 2),
            Err(Error::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(idx(&[1, 3]).scale_i64(-2), idx(&[-2, -6]));
        assert_eq!(&idx(&[1, 0]) + &idx(&[0, 1]), idx(&[1, 1]));
        assert_eq!(-idx(&[4, -6]), idx(&[-4, 6]));
        assert!(idx(&[1]).try_add(&idx(&[1, 2])).is_err());
    }

    #[test]
    fn order_rejects_small_values() {
        assert!(SlantOrder::new(1).is_err());
        assert!(SlantOrder::new(0).is_err());
        assert!(SlantOrder::new(-3).is_err());
        assert_eq!(k(3).pow(2), IBig::from(9));
    }

    #[test]
    fn box_enumeration_is_lexicographic() {
        let b = IndexBox::new(idx(&[0, 0]), idx(&[1, 1])).unwrap();
        assert_eq!(
            enumerate_box(&b),
            vec![idx(&[0, 0]), idx(&[0, 1]), idx(&[1, 0]), idx(&[1, 1])]
        );
        let b = IndexBox::new(idx(&[-1]), idx(&[1])).unwrap();
        assert_eq!(enumerate_box(&b), vec![idx(&[-1]), idx(&[0]), idx(&[1])]);
        let b = IndexBox::new(idx(&[2, 2]), idx(&[2, 2])).unwrap();
        assert_eq!(enumerate_box(&b), vec![idx(&[2, 2])]);
    }

    #[test]
    fn box_rejects_inverted_bounds() {
        assert!(IndexBox::new(idx(&[1, 0]), idx(&[0, 0])).is_err());
        assert!(IndexBox::new(idx(&[0]), idx(&[0, 0])).is_err());
    }

    #[test]
    fn positions_match_enumeration() {
        let b = IndexBox::new(idx(&[-1, 2, 0]), idx(&[1, 3, 2])).unwrap();
        for (i, m) in b.iter().enumerate() {
            assert_eq!(b.position(&m), Some(i));
        }
        assert_eq!(b.position(&idx(&[5, 2, 0])), None);
    }

    #[test]
    fn text_round_trip() {
        let m: MultiIndex = "(−2, 0,3)".parse().unwrap();
        assert_eq!(m, idx(&[-2, 0, 3]));
        assert_eq!(m.to_string(), "(-2,0,3)");
        let b: IndexBox = "(-2,-2)..(2,2)".parse().unwrap();
        assert_eq!(b.len(), 25);
        assert_eq!(b.to_string(), "(-2,-2)..(2,2)");
        assert!("(1,2".parse::<MultiIndex>().is_err());
        assert!("(1)..(0)".parse::<IndexBox>().is_err());
    }

    #[test]
    fn coordinates_do_not_overflow() {
        let big = idx(&[i64::MAX, i64::MIN]);
        let scaled = big.scale_i64(9);
        assert_eq!(scaled.div_exact(&IBig::from(9)), Some(big));
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn index(n: usize) -> impl Strategy<Value = MultiIndex> {
        proptest::collection::vec(-1000i64..1000, n).prop_map(|v| MultiIndex::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn scaling_by_k_is_divisible((m, k) in (1usize..4).prop_flat_map(|n| (index(n), 2i64..7))) {
            let kk = IBig::from(k);
            let scaled = m.scale(&kk);
            prop_assert!(divides(SlantOrder::new(k).unwrap(), &scaled));
            prop_assert_eq!(scaled.div_exact(&kk), Some(m));
        }

        #[test]
        fn box_cardinality(lo in proptest::collection::vec(-3i64..3, 1..4), w in proptest::collection::vec(0i64..3, 3)) {
            let hi: Vec<i64> = lo.iter().zip(&w).map(|(a, b)| a + b).collect();
            let b = IndexBox::new(MultiIndex::from_i64s(&lo), MultiIndex::from_i64s(&hi[..lo.len()])).unwrap();
            let expected: i64 = w[..lo.len()].iter().map(|x| x + 1).product();
            let pts = b.points();
            prop_assert_eq!(pts.len() as i64, expected);
            prop_assert!(pts.windows(2).all(|p| p[0] < p[1]));
        }
    }
}
