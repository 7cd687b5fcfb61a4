//! Cyclotomic polynomials and the quotient rings `Z[A^{±1}]/Φ_k(A)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::laurent::{write_terms, LaurentPoly};
use crate::error::{Error, Result};

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Dense coefficients of `Φ_k`, constant term first. Monic of degree `φ(k)`.
pub(crate) fn phi_coeffs(k: u64) -> Arc<Vec<BigInt>> {
    assert!(k >= 1, "cyclotomic order must be positive");
    if let Some(c) = phi_cache().lock().unwrap().get(&k) {
        return c.clone();
    }
    // A^k - 1 divided exactly by Φ_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); k as usize + 1];
    num[0] = BigInt::from(-1);
    num[k as usize] = BigInt::one();
    for d in (1..k).filter(|d| k % d == 0) {
        let div = phi_coeffs(d);
        num = exact_div_monic(&num, &div);
    }
    let coeffs = Arc::new(num);
    phi_cache().lock().unwrap().insert(k, coeffs.clone());
    coeffs
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// The `k`-th cyclotomic polynomial `Φ_k(A)`.
pub fn cyclotomic_poly(k: u64) -> LaurentPoly {
    LaurentPoly::from_coeffs(&phi_coeffs(k))
}

/// Euler's totient, the degree of `Φ_k`.
pub fn totient(k: u64) -> usize {
    phi_coeffs(k).len() - 1
}

/// Remainder of a dense polynomial modulo `Φ_k`, padded to length `φ(k)`.
fn rem_phi(mut v: Vec<BigInt>, k: u64) -> Vec<BigInt> {
    let phi = phi_coeffs(k);
    let d = phi.len() - 1;
    if v.len() > d {
        for i in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pc) in phi.iter().enumerate().take(d) {
                v[i - d + j] -= &c * pc;
            }
        }
        v.truncate(d);
    }
    v.resize(d, BigInt::zero());
    v
}

/// An element of `Λ_k = Z[A^{±1}]/Φ_k(A)`, stored as the unique remainder of
/// degree below `φ(k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl CycloElem {
    pub fn zero(k: u64) -> Self {
        Self {
            order: k,
            coeffs: vec![BigInt::zero(); totient(k)],
        }
    }

    pub fn from_int(k: u64, c: impl Into<BigInt>) -> Self {
        Self::from_dense(k, vec![c.into()])
    }

    pub fn one(k: u64) -> Self {
        Self::from_int(k, 1)
    }

    /// `A^e` for any integer `e`.
    pub fn monomial(k: u64, e: i64) -> Self {
        let mut dense = vec![BigInt::zero(); k as usize];
        dense[e.rem_euclid(k as i64) as usize] = BigInt::one();
        Self::from_dense(k, dense)
    }

    /// Reduces dense coefficients `c_0 + c_1 A + ...` (any length) modulo `Φ_k`.
    pub fn from_dense(k: u64, coeffs: Vec<BigInt>) -> Self {
        // Fold with A^k = 1 first so the long division stays short.
        let folded = if coeffs.len() > k as usize {
            let mut f = vec![BigInt::zero(); k as usize];
            for (i, c) in coeffs.into_iter().enumerate() {
                f[i % k as usize] += c;
            }
            f
        } else {
            coeffs
        };
        Self {
            order: k,
            coeffs: rem_phi(folded, k),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients of `1, A, ..., A^{φ(k)-1}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(One::is_one) && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// gcd of all coefficients (zero for the zero element).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(&self.coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact division of every coefficient by `c`; caller guarantees `c` divides the content.
    pub(crate) fn div_exact(&self, c: &BigInt) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d = self.coeffs.len();
        if d == 0 {
            return Ok(self.clone());
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self {
            order: self.order,
            coeffs: rem_phi(prod, self.order),
        })
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::one(self.order);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The ring automorphism `A -> A^t`, defined when `gcd(t, k) = 1`.
    pub fn galois_conjugate(&self, t: i64) -> Result<Self> {
        let k = self.order as i64;
        if t.gcd(&k) != 1 {
            return Err(Error::NotCoprime { t, k: self.order });
        }
        let mut dense = vec![BigInt::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[(i as i64 * t).rem_euclid(k) as usize] += c;
        }
        Ok(Self::from_dense(self.order, dense))
    }

    /// Complex conjugation, `A -> A^-1`.
    pub fn conj(&self) -> Self {
        self.galois_conjugate(-1).expect("-1 is coprime to every order")
    }

    /// Evaluation at `A = exp(2πi·which_root/k)`.
    pub fn to_complex(&self, which_root: i64) -> num_complex::Complex64 {
        let theta = 2.0 * std::f64::consts::PI * which_root as f64 / self.order as f64;
        self.to_laurent().eval_complex(num_complex::Complex64::from_polar(1.0, theta))
    }
}

/// The canonical remainder of `poly` in `Λ_k`; negative exponents are folded
/// using `A^-1 = A^{k-1}`.
pub fn reduce(poly: &LaurentPoly, k: u64) -> CycloElem {
    let mut dense = vec![BigInt::zero(); k as usize];
    for (e, c) in poly.terms() {
        dense[e.rem_euclid(k as i64) as usize] += c;
    }
    CycloElem::from_dense(k, dense)
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)))
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem[k={}]({self})", self.order)
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

macro_rules! cyclo_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: &CycloElem) -> CycloElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: CycloElem) -> CycloElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: &CycloElem) -> CycloElem {
                (&self).$m(rhs)
            }
        }
    };
}
cyclo_binop!(Add, add, checked_add);
cyclo_binop!(Sub, sub, checked_sub);
cyclo_binop!(Mul, mul, checked_mul);
