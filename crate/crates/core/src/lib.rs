//! Exact computer algebra over prime fields, organized around the machinery
//! needed to build and verify surface ideals in projective four-space:
//!
//! - dense exact linear algebra and multivariate polynomials over `F_p`,
//! - the rank-5 exterior algebra with wedge and contraction,
//! - graded matrices over the exterior algebra with degreewise syzygies and
//!   exact-complex continuation,
//! - a Buchberger engine (ideal membership, quotients, saturation,
//!   elimination, Hilbert data, generic initial ideals),
//! - the staircase-diagram calculus for plane subschemes,
//! - normal-form classification of exterior columns,
//! - the complex-family sampler and its dimension bookkeeping,
//! - ideal recovery from a monad of twisted cotangent bundles, and
//! - the liaison construction pipeline with a verification battery.
//!
//! The crate is `no_std` (with `alloc`); all state is owned and all
//! operations are pure, so values are safe to share across threads.

#![no_std]

extern crate alloc;

pub mod columns;
pub mod diagrams;
pub mod ematrix;
pub mod exterior;
pub mod family;
pub mod fp;
pub mod groebner;
pub mod koszul;
pub mod linkage;
pub mod matrix;
pub mod poly;
pub mod recover;
pub mod rng;
pub mod checks;
pub mod tate;

pub use fp::PrimeField;
pub use matrix::Matrix;
