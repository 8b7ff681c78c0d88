//! Induced homomorphism densities of graphs and step graphons, quantum
//! graph algebra, lexicographic products, primeness and stringency, and the
//! nowhere-differentiable boundary curve obtained from infinite
//! lexicographic products of two stringent graphs.

pub mod boundary;
pub mod canon;
pub mod constructions;
pub mod density;
pub mod error;
pub mod expr;
pub mod forcing;
pub mod graph;
pub mod quantum;
pub mod random;
pub mod scalar;
pub mod structure;

pub use canon::{are_isomorphic_labeled, canonical_form, CanonKey};
pub use density::{density, labeled_density, strong_hom_count, weighted_density, PinMap};
pub use error::{Error, Result};
pub use graph::{parse_graph, Graph, GraphFormat, Label, LabeledGraph, WeightedGraph};
pub use quantum::QuantumGraph;
pub use scalar::{Rational, Scalar};
