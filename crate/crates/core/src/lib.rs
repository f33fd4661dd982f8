//! Exact computation of the ellipsoidal superpotential `T_d^a` of the
//! complex projective plane.
//!
//! Three independent evaluators are provided and can be checked against one
//! another: the recursion over degree splittings, the closed sum over rooted
//! trees, and inversion of the ellipsoid L-infinity morphism.

pub mod combinat;
pub mod error;
pub mod lattice;
pub mod linf;
pub mod numerics;
pub mod superpotential;
pub mod trees;

pub use error::{Error, Result};
pub use lattice::{AspectComponent, AspectRatio, AspectVector, LatticePoint, TieRule, VecGamma};
pub use numerics::Rational;
pub use trees::{OrderedTree, Tree, VertexInfo};
