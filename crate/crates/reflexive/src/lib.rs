//! Exact-arithmetic toolkit for reflexive lattice polytopes.
//!
//! Everything here is computed over arbitrary-precision integers (and exact
//! rationals where cuts and lifts demand them); there is no floating point
//! anywhere in the crate. The main layers are:
//!
//! * [`lattice`] — integer linear algebra: Smith/Hermite normal forms,
//!   lattice quotients, primitive relations.
//! * [`polytope`] — convex hulls, polar duality, reflexivity, face lattices,
//!   lattice-point enumeration, normalized volumes, and a `GL(n,Z)` normal
//!   form.
//! * [`fan`] — complete fans from polytopes and per-cone singularity
//!   classification (simplicial / Gorenstein / terminal / canonical / smooth).
//! * [`triangulation`] — regular fine triangulations with exact lifting
//!   certificates, and crepant simplicial refinements of face fans.
//! * [`invariants`] — Hodge numbers, Picard numbers and Euler characteristics
//!   of the Calabi-Yau hypersurface families attached to reflexive polytopes.
//! * [`pairs`] — reflexive pairs over explicit reference lattices, finite
//!   morphisms, fundamental groups, weight systems of reflexive simplices.
//! * [`classify`] — exhaustive classification of reflexive polygons.
//! * [`io`] — the vertex-matrix file format and the invariant report schema.

pub mod classify;
pub mod fan;
pub mod invariants;
pub mod io;
pub mod lattice;
mod lp;
pub mod pairs;
pub mod polytope;
pub mod triangulation;

pub use lattice::{AbelianQuotient, Int, IntMat, IntVec, Rat};

