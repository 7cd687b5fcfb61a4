//! The Murakami–Ohtsuki–Okada invariant `Z_N` of a 3-manifold given by a
//! surgery linking matrix, for odd `N`.

mod fast;

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gauss::{gauss_sum, GaussSumSpec};
use crate::links::{signature_counts, LinkingMatrix};
use crate::rings::{CycloElem, CycloFraction};

pub use fast::{bracket_sum_fast, moo_fast};

/// `value · N^{-half_power/2}` with `half_power ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooValue {
    pub value: CycloFraction,
    pub half_power: u32,
}

impl MooValue {
    pub fn new(value: CycloFraction, half_power: u32) -> Self {
        let n = value.order();
        let whole = half_power / 2;
        let value = value
            .div_int(num_traits::pow(BigInt::from(n), whole as usize))
            .expect("N is nonzero");
        Self {
            value,
            half_power: half_power % 2,
        }
    }

    pub fn one(n: u64) -> Self {
        Self::new(CycloFraction::one(n), 0)
    }

    pub fn order(&self) -> u64 {
        self.value.order()
    }

    pub fn is_one(&self) -> bool {
        self.half_power == 0 && self.value.is_one()
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self::new(self.value.pow(exp), (self.half_power as u64 * exp) as u32)
    }

    pub fn conj(&self) -> Self {
        Self {
            value: self.value.conj(),
            half_power: self.half_power,
        }
    }

    pub fn galois_conjugate(&self, t: i64) -> Result<Self> {
        Ok(Self {
            value: self.value.galois_conjugate(t)?,
            half_power: self.half_power,
        })
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let n = self.order() as f64;
        self.value.to_complex(1) * n.powf(-0.5 * self.half_power as f64)
    }
}

impl Mul for &MooValue {
    type Output = MooValue;

    fn mul(self, rhs: &MooValue) -> MooValue {
        MooValue::new(&self.value * &rhs.value, self.half_power + rhs.half_power)
    }
}

impl fmt::Display for MooValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_power == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} * {}^{{-1/2}}", self.value, self.order())
        }
    }
}

pub(crate) fn check_n(n: u64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Precondition(format!("N must be odd and at least 3, got {n}")));
    }
    Ok(())
}

/// `G_N = Σ_{k ∈ Z/N} A^{k²}` in `Λ_N`.
pub fn gauss_n(n: u64) -> CycloElem {
    gauss_sum(GaussSumSpec::new(1, n, n))
}

fn reduced_form(b: &LinkingMatrix, n: u64) -> Vec<Vec<u64>> {
    let n = n as i64;
    b.entries()
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(n) as u64).collect())
        .collect()
}

/// Histogram of `lᵀBl mod N` over all `l` with first coordinate `first`.
fn histogram_slice(b: &[Vec<u64>], n: u64, first: u64, counts: &mut [u64]) {
    let m = b.len();
    let mut l = vec![0u64; m];
    l[0] = first;
    loop {
        let mut q = 0u64;
        for i in 0..m {
            if l[i] == 0 {
                continue;
            }
            let mut row = b[i][i] * l[i] % n;
            for j in i + 1..m {
                row += 2 * b[i][j] % n * l[j] % n;
            }
            q = (q + row % n * l[i]) % n;
        }
        counts[q as usize] += 1;
        // odometer over coordinates 1..m
        let mut i = 1;
        while i < m {
            l[i] += 1;
            if l[i] < n {
                break;
            }
            l[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
}

fn elem_from_counts(n: u64, counts: Vec<u64>) -> CycloElem {
    CycloElem::from_dense(n, counts.into_iter().map(BigInt::from).collect())
}

/// `Σ_{l ∈ (Z/N)^m} A^{lᵀBl}` in `Λ_N`, enumerated directly.
pub fn bracket_sum(b: &LinkingMatrix, n: u64) -> Result<CycloElem> {
    check_n(n)?;
    if b.dim() == 0 {
        return Ok(CycloElem::one(n));
    }
    let form = reduced_form(b, n);
    let mut counts = vec![0u64; n as usize];
    for first in 0..n {
        histogram_slice(&form, n, first, &mut counts);
    }
    Ok(elem_from_counts(n, counts))
}

/// [`bracket_sum`] with the first coordinate split across `jobs` threads.
pub fn bracket_sum_parallel(b: &LinkingMatrix, n: u64, jobs: usize) -> Result<CycloElem> {
    check_n(n)?;
    if b.dim() == 0 {
        return Ok(CycloElem::one(n));
    }
    let form = reduced_form(b, n);
    let work = || {
        (0..n)
            .into_par_iter()
            .map(|first| {
                let mut counts = vec![0u64; n as usize];
                histogram_slice(&form, n, first, &mut counts);
                counts
            })
            .reduce(
                || vec![0u64; n as usize],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    let counts = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?
        .install(work);
    Ok(elem_from_counts(n, counts))
}

/// Applies `N^{-b₁/2} G_N^{-σ₊} conj(G_N)^{-σ₋}` to a bracket value.
pub(crate) fn normalize(b: &LinkingMatrix, n: u64, bracket: CycloElem) -> MooValue {
    let sig = signature_counts(b);
    let g = gauss_n(n);
    // G_N conj(G_N) = N
    let g_inv = CycloFraction::new(g.conj(), n).expect("N is nonzero");
    let g_bar_inv = CycloFraction::new(g, n).expect("N is nonzero");
    let value = &(&CycloFraction::from_elem(bracket) * &g_inv.pow(sig.sigma_plus as u64))
        * &g_bar_inv.pow(sig.sigma_minus as u64);
    MooValue::new(value, sig.nullity as u32)
}

/// `Z_N` from its defining sum.
pub fn moo_invariant(b: &LinkingMatrix, n: u64) -> Result<MooValue> {
    Ok(normalize(b, n, bracket_sum(b, n)?))
}

/// [`moo_invariant`] with the sum spread over `jobs` threads.
pub fn moo_invariant_parallel(b: &LinkingMatrix, n: u64, jobs: usize) -> Result<MooValue> {
    Ok(normalize(b, n, bracket_sum_parallel(b, n, jobs)?))
}
