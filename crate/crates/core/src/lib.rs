//! Exact computation of abelian and SU(3) quantum invariants and the
//! periodicity obstructions they yield for rational homology 3-spheres.
//!
//! * [`rings`]: `Z[A^{±1}]`, `Λ_k = Z[A^{±1}]/Φ_k(A)`, localizations and mod-p reductions.
//! * [`gauss`]: quantum integers, quadratic Gauss sums, `⟨ω_r⟩_{U±}` and `G_r`.
//! * [`links`]: braid closures, linking matrices, exact signatures, periodic lifts and the
//!   HOMFLY specialization `J`.
//! * [`moo`]: the Murakami–Ohtsuki–Okada invariant `Z_N`, brute force and fast paths.
//! * [`criteria`]: congruence tests for periodic manifolds and links.
//! * [`cli`]: the `qperiod` command-line front end.

pub mod arith;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod gauss;
pub mod links;
pub mod moo;
pub mod rings;

pub use error::{Error, Result};
