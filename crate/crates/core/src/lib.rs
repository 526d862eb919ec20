//! Canonical tree-decompositions of small graphs that distinguish profiles
//! efficiently and display separable blocks as parts.
//!
//! The crate is organised bottom-up:
//!
//! * [`vertex_set`], [`graph`], [`separation`]: bitset vertex sets, graphs
//!   and the separation algebra (order, nestedness, corners).
//! * [`enumeration`], [`automorphism`]: exhaustive oracles for separations,
//!   distinguisher orders and automorphism groups.
//! * [`profile`]: blocks, profiles, robustness and havens.
//! * [`tree_decomp`]: tree-decompositions and the tree of a nested system.
//! * [`gluing`], [`focusing`], [`refine`]: the constructions that combine
//!   into [`pipeline::decompose`].
//!
//! Vertex sets are `u32` bitsets, so graphs have at most 32 vertex ids; the
//! exhaustive routines additionally refuse graphs above a configurable cap
//! (see [`graph::vertex_cap`]).

pub mod automorphism;
pub mod corpus;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod focusing;
pub mod gluing;
pub mod graph;
pub mod io;
pub mod pipeline;
pub mod profile;
pub mod refine;
pub mod separation;
pub mod tree_decomp;
pub mod vertex_set;

pub use automorphism::{automorphisms, AutomorphismGroup, Permutation};
pub use enumeration::{enumerate_separations, min_distinguisher_order, Distinction};
pub use error::{Error, Result};
pub use graph::Graph;
pub use pipeline::{decompose, verify, DecompositionReport, Mode};
pub use profile::{Block, Profile};
pub use separation::{Corner, CornerDiagram, Separation, SeparationSystem};
pub use tree_decomp::TreeDecomposition;
pub use vertex_set::VertexSet;
