//! Exact symmetry-breaking indices of finite simple graphs.
//!
//! The crate enumerates automorphism groups of small graphs and builds on
//! them to compute the distinguishing number `D(G)`, the distinguishing
//! threshold `θ(G)`, the motion `m(G)`, and the exact counts `Φ_k(G)` and
//! `φ_k(G)` of non-equivalent distinguishing colorings. For Cartesian
//! products it provides a layer-wise ("holographic") distinguishing test and
//! closed-form thresholds that are checked against the automorphism group.
//!
//! Module map:
//!
//! * [`graph`]: graphs, named families, Cartesian products, layers,
//!   quotients, isomorphism.
//! * [`automorphism`]: permutations, `Aut(G)`, orbits, subgroup lattice.
//! * [`indices`]: `D`, `θ`, motion, coloring counts and closed forms.
//! * [`product`]: holographic colorings and product thresholds.

pub mod automorphism;
pub mod error;
pub mod graph;
pub mod indices;
pub mod product;

pub use automorphism::{automorphisms, AutGroup, Permutation, SubgroupLattice};
pub use error::{Error, Result};
pub use graph::{cartesian_product, FamilySpec, Graph, ProductGraph};
pub use indices::{Budget, Coloring, IndexReport};
