//! Quantum integers, quadratic Gauss sums and the normalization constants
//! `⟨ω_r⟩_{U±}` and `G_r` of the SU(3) invariant at roots of unity of order `3r`.

use num_bigint::BigInt;

use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::rings::{reduce, CycloElem, CycloFraction, LaurentPoly};

/// `[n] = Σ_{j<n} A^{3(n-1-2j)}` in `Z[A^{±1}]`.
pub fn quantum_int_laurent(n: u64) -> LaurentPoly {
    let n = n as i64;
    LaurentPoly::from_terms((0..n).map(|j| (3 * (n - 1 - 2 * j), 1)))
}

/// The quantum integer `[n] = (A^{3n} - A^{-3n})/(A^3 - A^{-3})` in `Λ_k`.
pub fn quantum_int(n: u64, k: u64) -> CycloElem {
    reduce(&quantum_int_laurent(n), k)
}

/// The sum `Σ_{j=0}^{length-1} A^{multiplier·j²}` read in `Λ_order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussSumSpec {
    pub multiplier: i64,
    pub length: u64,
    pub order: u64,
}

impl GaussSumSpec {
    pub fn new(multiplier: i64, length: u64, order: u64) -> Self {
        Self {
            multiplier,
            length,
            order,
        }
    }
}

pub fn gauss_sum(spec: GaussSumSpec) -> CycloElem {
    let k = spec.order as i64;
    let mut counts = vec![BigInt::from(0); spec.order as usize];
    let a = spec.multiplier.rem_euclid(k);
    for j in 0..spec.length as i64 {
        let jj = j % k;
        let e = (a * ((jj * jj) % k)).rem_euclid(k);
        counts[e as usize] += 1;
    }
    CycloElem::from_dense(spec.order, counts)
}

pub(crate) fn check_r(r: u64) -> Result<()> {
    if r < 5 || r % 2 == 0 {
        return Err(Error::Precondition(format!("r must be odd and at least 5, got {r}")));
    }
    Ok(())
}

/// The primes inverted in `Λ_r[1/3r]`.
pub fn localizing_primes(r: u64) -> Vec<u64> {
    prime_divisors(3 * r)
}

/// `(Σ_{k<r} A^{6k²}, Σ_{k<3r} A^{2k²})` in `Λ_{3r}`.
pub fn su3_gauss_sums(r: u64) -> (CycloElem, CycloElem) {
    let k = 3 * r;
    (
        gauss_sum(GaussSumSpec::new(6, r, k)),
        gauss_sum(GaussSumSpec::new(2, 3 * r, k)),
    )
}

/// `⟨ω_r⟩_{U+} = -A^{-18}/(A^3 - A^{-3}) · (Σ_{k<r} A^{6k²})(Σ_{k<3r} A^{2k²})`.
pub fn eta_plus(r: u64) -> Result<CycloFraction> {
    check_r(r)?;
    let k = 3 * r;
    let (s1, s2) = su3_gauss_sums(r);
    let denom = CycloFraction::from_elem(reduce(&LaurentPoly::from_terms([(3, 1), (-3, -1)]), k));
    let inv = denom.invert(&localizing_primes(r))?;
    let front = CycloFraction::from_elem(-CycloElem::monomial(k, -18));
    Ok(&(&front * &inv) * &CycloFraction::from_elem(&s1 * &s2))
}

/// `⟨ω_r⟩_{U-}`, the complex conjugate of [`eta_plus`].
pub fn eta_minus(r: u64) -> Result<CycloFraction> {
    Ok(eta_plus(r)?.conj())
}

/// `G_r` together with its comparison against `⟨ω_r⟩_{U+}/⟨ω_r⟩_{U-}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrValue {
    /// `A^{-36} (Σ A^{6k²})² (Σ A^{2k²})² / (3r²)`.
    pub value: CycloFraction,
    /// `⟨ω_r⟩_{U+}/⟨ω_r⟩_{U-}` computed from the closed form of `⟨ω_r⟩_{U+}`.
    pub ratio: CycloFraction,
    /// `value = sign · ratio`.
    pub sign: i8,
}

pub fn g_r(r: u64) -> Result<GrValue> {
    check_r(r)?;
    let k = 3 * r;
    let (s1, s2) = su3_gauss_sums(r);
    let num = &CycloElem::monomial(k, -36) * &(&s1 * &s1) * (&s2 * &s2);
    let value = CycloFraction::new(num, 3 * r * r)?;
    let ratio = eta_plus(r)?.checked_div(&eta_minus(r)?, &localizing_primes(r))?;
    let sign = if value == ratio {
        1
    } else if value == -&ratio {
        -1
    } else {
        return Err(Error::Precondition(format!(
            "G_{r} does not agree with the U+/U- ratio up to sign"
        )));
    };
    Ok(GrValue { value, ratio, sign })
}
