//! Digital dyadic nets and sequences over GF(2).
//!
//! A dyadic net places 2^m points in the unit square so that every dyadic
//! stratification into 2^m equal rectangles holds exactly one point per
//! stratum; a dyadic sequence keeps that promise for every aligned block of
//! every power-of-two size. This crate covers the digital (matrix-generated)
//! family end to end:
//!
//! * [`gf2`] — bit-parallel vectors, matrices, inversion and unitriangular
//!   LU factorization over GF(2);
//! * [`pairs`] — the digital construction, the hybrid-matrix predicates for
//!   net/sequence generator pairs, characteristic matrices, and exact
//!   geometric verifiers;
//! * [`constructions`] — named generator pairs (Sobol, Hammersley, LP,
//!   Gray, GFaure), uniform random sampling, and exhaustive enumeration of
//!   the design spaces with closed-form counts;
//! * [`reorder`] — reorder any digital dyadic net into a digital dyadic
//!   sequence, or recover generators from a raw point set;
//! * [`xi`] — self-similar xi-sequences: 5-XOR seeding, 16-step sample
//!   retrieval, lookup-table acceleration, Morton-order generation and
//!   inversion;
//! * [`metrics`] — exact star discrepancy and toroidal distance statistics;
//! * [`atlas`] — exhaustive quality scan over all xi-sequence seeds at a
//!   given resolution.

pub mod atlas;
pub mod constructions;
pub mod gf2;
pub mod metrics;
pub mod pairs;
pub mod reorder;
pub mod xi;

pub use gf2::{BitMatrix, BitVector, LuDecomposition};
pub use pairs::{GeneratorPair, Point, PointSet};
pub use xi::{XiLookupTable, XiSeed};
