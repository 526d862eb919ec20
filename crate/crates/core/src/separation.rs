//! Separations, their partial order, cross-diagrams and corner separations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automorphism::Permutation;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// An ordered pair `(A, B)` of vertex sets.
///
/// Values are only meaningful relative to the graph they were built for; use
/// [`Separation::new`] to check the separation axioms. Ordering is by
/// `(order, A, B)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Separation {
    a: VertexSet,
    b: VertexSet,
}

impl Separation {
    pub fn new(g: &Graph, a: VertexSet, b: VertexSet) -> Result<Self> {
        if a | b != g.vertices() {
            return Err(Error::NotASeparation {
                a,
                b,
                reason: "sides do not cover the vertex set",
            });
        }
        if !g.is_separation(a, b) {
            return Err(Error::NotASeparation {
                a,
                b,
                reason: "an edge joins A\\B to B\\A",
            });
        }
        Ok(Separation { a, b })
    }

    /// Builds the pair without checking the axioms.
    pub const fn new_unchecked(a: VertexSet, b: VertexSet) -> Self {
        Separation { a, b }
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }

    /// `A \ B`
    pub fn strict_a(&self) -> VertexSet {
        self.a - self.b
    }

    /// `B \ A`
    pub fn strict_b(&self) -> VertexSet {
        self.b - self.a
    }

    pub fn separator(&self) -> VertexSet {
        self.a & self.b
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    /// The vertex set the separation lives on, `A ∪ B`.
    pub fn ground(&self) -> VertexSet {
        self.a | self.b
    }

    pub fn inverse(&self) -> Separation {
        Separation { a: self.b, b: self.a }
    }

    pub fn is_proper(&self) -> bool {
        !self.a.is_subset(self.b) && !self.b.is_subset(self.a)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// Every separator vertex has a neighbour in `A \ B` and one in `B \ A`.
    pub fn is_tight(&self, g: &Graph) -> bool {
        let (sa, sb) = (self.strict_a(), self.strict_b());
        self.separator()
            .iter()
            .all(|v| g.neighbours(v).intersects(sa) && g.neighbours(v).intersects(sb))
    }

    /// `(A,B) <= (C,D)` iff `A ⊆ C` and `D ⊆ B`.
    pub fn leq(&self, other: &Separation) -> bool {
        self.a.is_subset(other.a) && other.b.is_subset(self.b)
    }

    pub fn lt(&self, other: &Separation) -> bool {
        self != other && self.leq(other)
    }

    /// Comparable with `other` or with its inverse.
    pub fn nested(&self, other: &Separation) -> bool {
        let by_order = self.nested_by_order(other);
        #[cfg(debug_assertions)]
        if !self.is_degenerate() && !other.is_degenerate() {
            debug_assert_eq!(
                by_order,
                self.nested_by_corners(other).expect("non-degenerate"),
                "corner test disagrees for {self} and {other}"
            );
        }
        by_order
    }

    pub fn nested_by_order(&self, other: &Separation) -> bool {
        let inv = other.inverse();
        self.leq(other) || other.leq(self) || self.leq(&inv) || inv.leq(self)
    }

    /// Nestedness via the cross-diagram: some corner has an empty interior
    /// and both of its links empty.
    pub fn nested_by_corners(&self, other: &Separation) -> Result<bool> {
        let d = self.corner_diagram(other)?;
        Ok(Corner::ALL.iter().any(|&c| d.corner_is_empty(c)))
    }

    pub fn crosses(&self, other: &Separation) -> bool {
        !self.nested(other)
    }

    /// Meets both `A \ B` and `B \ A`.
    pub fn separates(&self, x: VertexSet) -> bool {
        x.intersects(self.strict_a()) && x.intersects(self.strict_b())
    }

    /// `(A ∩ X, B ∩ X)` as a separation of `G[X]`.
    pub fn restrict(&self, x: VertexSet) -> Separation {
        Separation {
            a: self.a & x,
            b: self.b & x,
        }
    }

    pub fn corner_diagram(&self, other: &Separation) -> Result<CornerDiagram> {
        if self.is_degenerate() || other.is_degenerate() {
            return Err(Error::DegenerateSeparation);
        }
        Ok(CornerDiagram::new(self, other))
    }

    /// `(X ∩ Y, X̄ ∪ Ȳ)` for the given corner `(X, Y)`.
    pub fn corner_separation(&self, other: &Separation, corner: Corner) -> Separation {
        let (x, xbar, y, ybar) = corner.sides(self, other);
        Separation {
            a: x & y,
            b: xbar | ybar,
        }
    }

    pub fn apply(&self, perm: &Permutation) -> Separation {
        Separation {
            a: perm.apply_set(self.a),
            b: perm.apply_set(self.b),
        }
    }
}

impl Ord for Separation {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order(), self.a, self.b).cmp(&(other.order(), other.a, other.b))
    }
}

impl PartialOrd for Separation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl fmt::Debug for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A corner `(X, Y)` of the cross-diagram of `(A,B)` and `(C,D)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Corner {
    AC,
    AD,
    BC,
    BD,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::AC, Corner::AD, Corner::BC, Corner::BD];

    /// `(X, X̄, Y, Ȳ)`.
    fn sides(self, s: &Separation, t: &Separation) -> (VertexSet, VertexSet, VertexSet, VertexSet) {
        let (a, b, c, d) = (s.a, s.b, t.a, t.b);
        match self {
            Corner::AC => (a, b, c, d),
            Corner::AD => (a, b, d, c),
            Corner::BC => (b, a, c, d),
            Corner::BD => (b, a, d, c),
        }
    }

    pub fn opposite(self) -> Corner {
        match self {
            Corner::AC => Corner::BD,
            Corner::AD => Corner::BC,
            Corner::BC => Corner::AD,
            Corner::BD => Corner::AC,
        }
    }

    fn links(self) -> (Side, Side) {
        match self {
            Corner::AC => (Side::A, Side::C),
            Corner::AD => (Side::A, Side::D),
            Corner::BC => (Side::B, Side::C),
            Corner::BD => (Side::B, Side::D),
        }
    }
}

/// One of the four sides `A, B, C, D` of a cross-diagram.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    A,
    B,
    C,
    D,
}

/// The pieces of the cross-diagram of two separations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CornerDiagram {
    pub center: VertexSet,
    /// Indexed by [`Corner`] in the order of [`Corner::ALL`].
    pub interiors: [VertexSet; 4],
    /// Indexed by [`Side`] in the order `A, B, C, D`.
    pub links: [VertexSet; 4],
}

impl CornerDiagram {
    fn new(s: &Separation, t: &Separation) -> Self {
        let center = s.separator() & t.separator();
        let interiors = Corner::ALL.map(|corner| {
            let (x, xbar, y, ybar) = corner.sides(s, t);
            (x & y) - (xbar | ybar)
        });
        let links = [
            s.strict_a() & t.separator(),
            s.strict_b() & t.separator(),
            t.strict_a() & s.separator(),
            t.strict_b() & s.separator(),
        ];
        CornerDiagram {
            center,
            interiors,
            links,
        }
    }

    pub fn interior(&self, corner: Corner) -> VertexSet {
        self.interiors[corner as usize]
    }

    pub fn link(&self, side: Side) -> VertexSet {
        self.links[side as usize]
    }

    /// Interior and both adjacent links empty.
    pub fn corner_is_empty(&self, corner: Corner) -> bool {
        let (x, y) = corner.links();
        self.interior(corner).is_empty() && self.link(x).is_empty() && self.link(y).is_empty()
    }

    /// The vertex set associated with a corner: interior, links and center.
    pub fn corner_set(&self, corner: Corner) -> VertexSet {
        let (x, y) = corner.links();
        self.interior(corner) | self.link(x) | self.link(y) | self.center
    }
}

/// A finite, deterministically ordered set of separations.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, Serialize, Deserialize)]
pub struct SeparationSystem(BTreeSet<Separation>);

impl SeparationSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, s: Separation) -> bool {
        self.0.insert(s)
    }

    pub fn remove(&mut self, s: &Separation) -> bool {
        self.0.remove(s)
    }

    pub fn contains(&self, s: &Separation) -> bool {
        self.0.contains(s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Separation> + '_ {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &SeparationSystem) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Adds every missing inverse.
    pub fn symmetric_closure(&self) -> SeparationSystem {
        self.iter().flat_map(|s| [*s, s.inverse()]).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|s| self.contains(&s.inverse()))
    }

    /// First crossing pair in the deterministic order, if any.
    pub fn crossing_pair(&self) -> Option<(Separation, Separation)> {
        let v: Vec<&Separation> = self.iter().collect();
        for (i, s) in v.iter().enumerate() {
            for t in &v[i + 1..] {
                if s.crosses(t) {
                    return Some((**s, **t));
                }
            }
        }
        None
    }

    pub fn is_nested(&self) -> bool {
        self.crossing_pair().is_none()
    }

    /// Every member is nested with every member of `other`.
    pub fn nested_with(&self, other: &SeparationSystem) -> bool {
        self.iter().all(|s| other.iter().all(|t| s.nested(t)))
    }

    pub fn nested_with_separation(&self, s: &Separation) -> bool {
        self.iter().all(|t| t.nested(s))
    }

    pub fn proper(&self) -> SeparationSystem {
        self.iter().filter(|s| s.is_proper()).copied().collect()
    }

    pub fn max_order(&self) -> Option<usize> {
        self.iter().map(Separation::order).max()
    }

    pub fn apply(&self, perm: &Permutation) -> SeparationSystem {
        self.iter().map(|s| s.apply(perm)).collect()
    }

    pub fn to_vec(&self) -> Vec<Separation> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<Separation> for SeparationSystem {
    fn from_iter<I: IntoIterator<Item = Separation>>(iter: I) -> Self {
        SeparationSystem(iter.into_iter().collect())
    }
}

impl Extend<Separation> for SeparationSystem {
    fn extend<I: IntoIterator<Item = Separation>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for SeparationSystem {
    type Item = Separation;
    type IntoIter = std::collections::btree_set::IntoIter<Separation>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a SeparationSystem {
    type Item = &'a Separation;
    type IntoIter = std::collections::btree_set::Iter<'a, Separation>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
