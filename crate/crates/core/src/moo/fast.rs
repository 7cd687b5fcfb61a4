//! The bracket sum through CRT splitting and diagonalization of `lᵀBl`
//! over each prime-power factor of `N`.

use num_bigint::BigInt;

use super::{bracket_sum, check_n, normalize, MooValue};
use crate::arith::{factorize, mod_inverse};
use crate::error::Result;
use crate::links::LinkingMatrix;
use crate::rings::CycloElem;

/// `Σ_{y ∈ Z/q} A^{c·a·y²}` in `Λ_n`.
fn one_variable(a: i64, c: i64, q: i64, n: i64) -> CycloElem {
    let mut counts = vec![BigInt::from(0); n as usize];
    let ca = (c % n * a.rem_euclid(n)) % n;
    for y in 0..q {
        let e = ca * (y * y % n) % n;
        counts[e as usize] += 1;
    }
    CycloElem::from_dense(n as u64, counts)
}

/// Factor of the bracket sum for the prime power `q = ℓ^e`, with the form
/// scaled by `c = (N/q)²`.
fn local_factor(b: &LinkingMatrix, ell: i64, mut q: i64, mut c: i64, n: i64) -> CycloElem {
    let mut form: Vec<Vec<i64>> = b
        .entries()
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(q)).collect())
        .collect();
    let mut out = CycloElem::one(n as u64);
    while !form.is_empty() {
        let m = form.len();
        let unit = |x: i64| x % ell != 0;
        let pivot = match (0..m).find(|&i| unit(form[i][i])) {
            Some(p) => p,
            None => {
                let Some((i, j)) = (0..m)
                    .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                    .find(|&(i, j)| unit(form[i][j]))
                else {
                    // every entry is divisible by ℓ: each class mod q/ℓ has ℓ^m lifts
                    out = out.scale(&BigInt::from(ell).pow(m as u32));
                    if q == ell {
                        return out;
                    }
                    q /= ell;
                    c = c * ell % n;
                    for row in form.iter_mut() {
                        for x in row.iter_mut() {
                            *x = *x / ell % q;
                        }
                    }
                    continue;
                };
                // x_i -> x_i + x_j: row i += row j, column i += column j
                for k in 0..m {
                    form[i][k] = (form[i][k] + form[j][k]) % q;
                }
                for k in 0..m {
                    form[k][i] = (form[k][i] + form[k][j]) % q;
                }
                i
            }
        };
        let a = form[pivot][pivot];
        let a_inv = mod_inverse(a, q).expect("pivot is a unit");
        out = &out * &one_variable(a, c, q, n);
        let rest: Vec<usize> = (0..m).filter(|&k| k != pivot).collect();
        form = rest
            .iter()
            .map(|&j| {
                rest.iter()
                    .map(|&k| {
                        let t = form[pivot][j] * a_inv % q * form[pivot][k] % q;
                        (form[j][k] - t).rem_euclid(q)
                    })
                    .collect()
            })
            .collect();
    }
    out
}

/// [`bracket_sum`](super::bracket_sum) computed as a product of one-variable
/// Gauss sums.
pub fn bracket_sum_fast(b: &LinkingMatrix, n: u64) -> Result<CycloElem> {
    check_n(n)?;
    let big_n = n as i64;
    let mut out = CycloElem::one(n);
    for (ell, e) in factorize(n) {
        let q = (ell as i64).pow(e);
        let cofactor = big_n / q;
        let c = cofactor * cofactor % big_n;
        out = &out * &local_factor(b, ell as i64, q, c, big_n);
    }
    Ok(out)
}

/// `Z_N` through [`bracket_sum_fast`]; equal to [`moo_invariant`](super::moo_invariant).
pub fn moo_fast(b: &LinkingMatrix, n: u64) -> Result<MooValue> {
    let bracket = if b.dim() == 0 {
        bracket_sum(b, n)?
    } else {
        bracket_sum_fast(b, n)?
    };
    Ok(normalize(b, n, bracket))
}
