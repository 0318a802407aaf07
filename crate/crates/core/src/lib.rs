//! One-dimensional random geometric graphs: sampling, ordered-graph and
//! maximal-clique representations, exact counting of the clique-interval
//! family, a 2n-bit structure code, finite-n neighbour-count distributions
//! and the per-node structural entropy bounds.
//!
//! The central representation is [`OrderedGraph`]: vertices are indexed by
//! ascending location and the graph is stored as the leftward-neighbour
//! counts `L_2, ..., L_n`.

pub mod cli;
pub mod codec;
pub mod entropy;
pub mod enumeration;
mod error;
pub mod graph;
pub mod rng;
pub mod selftest;
pub mod structure;

pub use codec::StructureCode;
pub use entropy::{BoundCurve, EntropyEstimate, Estimator, JointPmf, Pmf, Target};
pub use enumeration::{Method, RealizabilityWitness};
pub use error::{CodeError, CoverError, Error, Result};
pub use graph::{LabeledGraph, OrderedGraph, PointSample, RegimeSpec};
pub use structure::{CanonicalStructure, CliqueCover};
