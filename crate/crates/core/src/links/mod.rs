//! Braid-closure links: components, linking matrices, exact signatures,
//! periodic lifts and the SU(3) polynomial `J`.

mod braid;
mod matrix;
mod periodic;
mod skein;

pub use braid::{BraidWord, FramedBraidLink};
pub use matrix::{signature_counts, LinkingMatrix, SigTriple};
pub use periodic::{periodic_lift, strong_periodicity_check, StrongPeriodicity};
pub use skein::{j_invariant, CrossingChooser, FirstBad, JEvaluator, SkeinConfig};
