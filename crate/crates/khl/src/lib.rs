//! khl — an exact workbench for homology computations on Koszul-type complexes.
//!
//! Everything is computed exactly (big integers, big rationals, prime fields,
//! graded polynomial rings); there is no floating point anywhere. The crate is
//! organized as a stack of small layers:
//!
//! * [`arith`] — scalars, sparse matrices, Smith/Hermite normal forms over the
//!   integers, Gaussian elimination over fields, graded degree slicing.
//! * [`module`] — based free modules with labelled bases and the four power
//!   functors (symmetric, exterior, divided, tensor) on objects and maps.
//! * [`perm`] — small symmetric-group utilities (cycle types, signs, words).
//! * [`complex`] — bounded chain complexes, homology over Z / fields / graded
//!   rings, Euler classes, equivariant tensor powers and their characters.
//! * [`cross_effect`] — cross effects of the power functors together with the
//!   diagonal and plus maps between them.
//! * [`simplicial`] — the level-wise simplicial machinery: the complex-to-
//!   simplicial functor, normalization, and the normalized-functor pipeline.
//! * [`koszul`] — Koszul and dual Koszul complexes, hook-shaped image modules,
//!   two-term resolutions of cyclic quotients, and explicit witness cycles.
//! * [`lambda`] — a split-form lambda-ring engine over explicit line classes.
//! * [`harness`] — scenario configs, verification suites, and JSON reports.
//!
//! The `examples/` directory is the front door: each file is a runnable tour
//! of one capability (`cargo run --example koszul_homology`, etc.). The thin
//! `khl` binary drives the same verification suites from scenario files.

pub mod arith;
pub mod complex;
pub mod cross_effect;
pub mod harness;
pub mod koszul;
pub mod lambda;
pub mod module;
pub mod perm;
pub mod simplicial;
