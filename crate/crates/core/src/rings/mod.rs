//! Exact arithmetic in `Z[A^{±1}]`, the cyclotomic quotients `Λ_k`, their
//! localizations and their reductions modulo primes.

mod cyclotomic;
mod fraction;
mod laurent;
mod modp;
mod parse;

pub use cyclotomic::{cyclotomic_poly, reduce, totient, CycloElem};
pub use fraction::CycloFraction;
pub use laurent::LaurentPoly;
pub use modp::{ideal_generator, ideal_membership_cyclo, laurent_ideal_membership, ModCycloElem};
pub use parse::{parse_fraction, parse_ring_element};
