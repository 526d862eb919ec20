//! Fixed-width vertex sets.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Largest vertex id + 1 a [`VertexSet`] can hold.
pub const MAX_VERTICES: usize = 32;

/// A set of vertex ids below [`MAX_VERTICES`], stored as a bitmask.
///
/// Ordering compares the raw masks, which gives every collection of sets a
/// deterministic order independent of insertion history.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex set width exceeded");
        if n == MAX_VERTICES {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_VERTICES, "vertex id {v} out of range");
        VertexSet(1 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        *self = *self | VertexSet::singleton(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u32 << v);
    }

    pub fn with(self, v: usize) -> Self {
        self | VertexSet::singleton(v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u32 << v))
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// `0x`-prefixed lowercase hex of the mask.
    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let digits = s.strip_prefix("0x").unwrap_or(s);
        u32::from_str_radix(digits, 16).ok().map(VertexSet)
    }

    /// All subsets of `self` with fewer than `bound` members, ordered by size
    /// and then by mask.
    pub fn subsets_below(self, bound: usize) -> Vec<VertexSet> {
        let members: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, VertexSet::EMPTY)];
        while let Some((i, acc)) = stack.pop() {
            if i == members.len() {
                if acc.len() < bound {
                    out.push(acc);
                }
                continue;
            }
            stack.push((i + 1, acc));
            if acc.len() + 1 < bound {
                stack.push((i + 1, acc.with(members[i])));
            }
        }
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u32);

impl Iterator for Iter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> serde::Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        VertexSet::from_hex(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid vertex set hex `{s}`")))
    }
}
