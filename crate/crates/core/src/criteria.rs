//! Periodicity obstructions: congruences that the quantum invariants of a
//! `p`-periodic manifold or link must satisfy.

use std::fmt;

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::gauss::{check_r, g_r, quantum_int_laurent};
use crate::links::{j_invariant, BraidWord, LinkingMatrix};
use crate::moo::{moo_fast, moo_invariant, MooValue};
use crate::rings::{
    cyclotomic_poly, ideal_membership_cyclo, laurent_ideal_membership, parse_fraction, CycloElem,
    CycloFraction, LaurentPoly, ModCycloElem,
};

/// The SU(3) invariant `I_5(L(2,1))`, a constant of `Λ_5`.
pub const L21_I5: &str = "1 - A - A^2 + A^3 - A^4 + A^5 - A^7";

/// Primes `p ≡ ±1 mod 5` used for the lens space `L(2,1)`.
pub const LENS_PRIMES: [u64; 4] = [11, 19, 29, 31];

/// Sign and exponents that realize a congruence: `ε · A^s · G^α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub epsilon: i8,
    pub s: u64,
    pub alpha: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub satisfied: bool,
    pub witness: Option<Witness>,
    /// `r` for the SU(3) tests, `N` for the MOO test.
    pub level: u64,
    pub p: u64,
}

impl ObstructionVerdict {
    fn found(level: u64, p: u64, witness: Option<Witness>) -> Self {
        Self {
            satisfied: witness.is_some(),
            witness,
            level,
            p,
        }
    }
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            Some(w) => write!(
                f,
                "CONSISTENT (epsilon = {}, s = {}, alpha = {})",
                w.epsilon, w.s, w.alpha
            ),
            None => write!(f, "OBSTRUCTED"),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p >= 1 << 32 {
        return Err(Error::Precondition(format!("p must be a prime below 2^32, got {p}")));
    }
    Ok(())
}

fn check_prime_or_one(p: u64) -> Result<()> {
    if p == 1 {
        Ok(())
    } else {
        check_prime(p)
    }
}

fn check_su3(r: u64, p: u64) -> Result<()> {
    check_r(r)?;
    check_prime(p)?;
    if gcd(p as i64, 3 * r as i64) != 1 {
        return Err(Error::Precondition(format!("p = {p} must be coprime to 3r = {}", 3 * r)));
    }
    Ok(())
}

fn reduce(x: &CycloFraction, p: u64) -> Result<ModCycloElem> {
    x.reduce_mod_p(p)
        .map_err(|e| Error::Precondition(e.to_string()))
}

/// The representatives of `A^s`, `0 ≤ s < 3r`, in `Λ_r`.
pub fn powers_of_a_char0(r: u64) -> Result<Vec<CycloElem>> {
    check_r(r)?;
    let k = 3 * r;
    Ok((0..k as i64).map(|s| CycloElem::monomial(k, s)).collect())
}

/// `(ε G_r)^α` for `ε = ±1` and every `α` up to the order of `G_r mod p`.
fn g_powers(r: u64, p: u64) -> Result<Vec<(i8, u64, ModCycloElem)>> {
    let g = reduce(&g_r(r)?.value, p)?;
    let one = ModCycloElem::one(3 * r, p);
    let mut powers = vec![one.clone()];
    let mut x = g.clone();
    while x != one {
        powers.push(x.clone());
        x = &x * &g;
        if powers.len() > 2 * (3 * r as usize) * (p as usize) {
            return Err(Error::Precondition("G_r has no finite order mod p".into()));
        }
    }
    let mut out = Vec::with_capacity(2 * powers.len());
    for eps in [1i8, -1] {
        for (alpha, x) in powers.iter().enumerate() {
            out.push((eps, alpha as u64, x.scale(i64::from(eps))));
        }
    }
    Ok(out)
}

/// `[3]^p - [3]`.
fn su3_ideal(p: u64) -> LaurentPoly {
    let three = quantum_int_laurent(3);
    &three.pow(p as u32) - &three
}

/// Whether `vM ≡ vMbar^p · (±G_r)^α` modulo `(p, [3]^p - [3])` for some `α`.
pub fn check_thm_1_1(
    v_m: &CycloFraction,
    v_mbar: &CycloFraction,
    r: u64,
    p: u64,
) -> Result<ObstructionVerdict> {
    check_su3(r, p)?;
    let k = 3 * r;
    for x in [v_m, v_mbar] {
        if x.order() != k {
            return Err(Error::OrderMismatch {
                left: x.order(),
                right: k,
            });
        }
    }
    let lhs = reduce(v_m, p)?;
    let base = reduce(v_mbar, p)?.pow(p);
    let ideal = su3_ideal(p);
    let witness = g_powers(r, p)?
        .into_iter()
        .find(|(_, _, g)| ideal_membership_cyclo(&(&lhs - &(&base * g)), &ideal))
        .map(|(epsilon, alpha, _)| Witness { epsilon, s: 0, alpha });
    Ok(ObstructionVerdict::found(r, p, witness))
}

/// Whether `v ≡ ε A^s G_r^α mod p`, the test for `M` being a `p`-fold
/// cyclic branched cover of `S³`.
pub fn check_cor_1_2(v: &CycloFraction, r: u64, p: u64) -> Result<ObstructionVerdict> {
    check_su3(r, p)?;
    if p % r != 1 && p % r != r - 1 {
        return Err(Error::Precondition(format!("p = {p} must be ±1 modulo r = {r}")));
    }
    let k = 3 * r;
    if v.order() != k {
        return Err(Error::OrderMismatch {
            left: v.order(),
            right: k,
        });
    }
    let target = reduce(v, p)?;
    let gs = g_powers(r, p)?;
    for s in 0..k {
        let a_s = ModCycloElem::monomial(k, p, s as i64);
        for (epsilon, alpha, g) in &gs {
            if &a_s * g == target {
                return Ok(ObstructionVerdict::found(
                    r,
                    p,
                    Some(Witness {
                        epsilon: *epsilon,
                        s,
                        alpha: *alpha,
                    }),
                ));
            }
        }
    }
    Ok(ObstructionVerdict::found(r, p, None))
}

/// Whether `J(L) ≡ J(L̄)^p` modulo `(p, [3]^p - [3])` in `Z[A^{±1}]`.
/// `p = 1` is accepted and is always satisfied.
pub fn check_thm_4_1(lift: &BraidWord, quotient: &BraidWord, p: u64) -> Result<bool> {
    check_prime_or_one(p)?;
    let j_lift = j_invariant(lift)?;
    let j_quot = j_invariant(quotient)?;
    if p == 1 {
        return Ok(true);
    }
    let diff = &j_lift - &j_quot.pow(p as u32);
    Ok(laurent_ideal_membership(&diff, &su3_ideal(p), p))
}

/// How to evaluate `Z_N` in [`check_thm_5_1`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MooMethod {
    #[default]
    Brute,
    Fast,
}

fn moo_value(b: &LinkingMatrix, n: u64, method: MooMethod) -> Result<MooValue> {
    match method {
        MooMethod::Brute => moo_invariant(b, n),
        MooMethod::Fast => moo_fast(b, n),
    }
}

/// Whether `Z_N(M) ≡ ε Z_N(M̄)^p mod p` for some `ε = ±1`, where `M` and
/// `M̄` are rational homology spheres given by linking matrices.
/// `p = 1` is accepted and is always satisfied.
pub fn check_thm_5_1(
    b: &LinkingMatrix,
    bbar: &LinkingMatrix,
    p: u64,
    n: u64,
    method: MooMethod,
) -> Result<ObstructionVerdict> {
    check_prime_or_one(p)?;
    if gcd(n as i64, p as i64) != 1 {
        return Err(Error::Precondition(format!("N = {n} and p = {p} must be coprime")));
    }
    for m in [b, bbar] {
        if !m.is_nondegenerate() {
            return Err(Error::Precondition(
                "linking matrices must be nondegenerate".into(),
            ));
        }
    }
    let z = moo_value(b, n, method)?.value;
    let zbar = moo_value(bbar, n, method)?.value;
    let witness = |epsilon| Some(Witness { epsilon, s: 0, alpha: 0 });
    if p == 1 {
        return Ok(ObstructionVerdict::found(n, p, witness(1)));
    }
    let lhs = reduce(&z, p)?;
    let rhs = reduce(&zbar, p)?.pow(p);
    let found = [1i8, -1]
        .into_iter()
        .find(|&eps| (&lhs - &rhs.scale(i64::from(eps))).is_zero());
    Ok(ObstructionVerdict::found(n, p, found.and_then(witness)))
}

/// Outcome of reproducing the lens space computation for `r = 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LensSpaceReport {
    pub phi15: String,
    pub powers: Vec<String>,
    /// Whether the constant is `±A^s` in characteristic 0.
    pub char0_member: bool,
    pub verdicts: Vec<ObstructionVerdict>,
}

impl LensSpaceReport {
    /// True when every prime obstructs and the characteristic 0 check agrees.
    pub fn all_obstructed(&self) -> bool {
        !self.char0_member && self.verdicts.iter().all(|v| !v.satisfied)
    }
}

pub fn repro_lens_space() -> Result<LensSpaceReport> {
    let r = 5;
    let v = parse_fraction(L21_I5, 3 * r)?;
    let powers = powers_of_a_char0(r)?;
    let char0_member = powers
        .iter()
        .any(|a| v.numer() == a || v.numer() == &-a);
    let verdicts = LENS_PRIMES
        .iter()
        .map(|&p| check_cor_1_2(&v, r, p))
        .collect::<Result<_>>()?;
    Ok(LensSpaceReport {
        phi15: cyclotomic_poly(15).to_string(),
        powers: powers.iter().map(ToString::to_string).collect(),
        char0_member,
        verdicts,
    })
}
