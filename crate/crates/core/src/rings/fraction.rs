//! Localizations `Λ_k[1/n]`: cyclotomic elements over a positive integer denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{phi_coeffs, CycloElem};
use crate::error::{Error, Result};

/// `num / den` with `den > 0` and `gcd(den, content(num)) = 1`.
///
/// Which primes may appear in `den` is not a property of the type; callers
/// that need a specific localization pass their prime set to [`CycloFraction::invert`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloFraction {
    num: CycloElem,
    den: BigInt,
}

impl CycloFraction {
    pub fn new(num: CycloElem, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: CycloElem, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self {
                num,
                den: BigInt::one(),
            };
        }
        let g = num.content().gcd(&den);
        if !g.is_one() {
            num = num.div_exact(&g);
            den /= g;
        }
        Self { num, den }
    }

    pub fn from_elem(num: CycloElem) -> Self {
        Self {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_int(k: u64, c: impl Into<BigInt>) -> Self {
        Self::from_elem(CycloElem::from_int(k, c))
    }

    pub fn zero(k: u64) -> Self {
        Self::from_elem(CycloElem::zero(k))
    }

    pub fn one(k: u64) -> Self {
        Self::from_elem(CycloElem::one(k))
    }

    pub fn monomial(k: u64, e: i64) -> Self {
        Self::from_elem(CycloElem::monomial(k, e))
    }

    pub fn numer(&self) -> &CycloElem {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn order(&self) -> u64 {
        self.num.order()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let num = self
            .num
            .scale(&other.den)
            .checked_add(&other.num.scale(&self.den))?;
        Ok(Self::normalized(num, &self.den * &other.den))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let num = self.num.checked_mul(&other.num)?;
        Ok(Self::normalized(num, &self.den * &other.den))
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        Self::normalized(self.num.scale(&c.into()), self.den.clone())
    }

    pub fn div_int(&self, c: impl Into<BigInt>) -> Result<Self> {
        let c = c.into();
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.num.clone(), &self.den * c))
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self::normalized(self.num.pow(exp), num_traits::pow(self.den.clone(), exp as usize))
    }

    /// The automorphism `A -> A^t`; the denominator is fixed.
    pub fn galois_conjugate(&self, t: i64) -> Result<Self> {
        Ok(Self {
            num: self.num.galois_conjugate(t)?,
            den: self.den.clone(),
        })
    }

    pub fn conj(&self) -> Self {
        Self {
            num: self.num.conj(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse in `Λ_k[1/S]` with `S = allowed_primes`.
    ///
    /// The inverse is computed over `Q(ζ_k)` by the extended Euclidean
    /// algorithm against `Φ_k`; it lies in the localization exactly when its
    /// reduced denominator is `S`-smooth.
    pub fn invert(&self, allowed_primes: &[u64]) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = self.order();
        let inv = inverse_mod_phi(self.num.coeffs(), k).ok_or(Error::DivisionByZero)?;
        let common = inv
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = inv
            .iter()
            .map(|c| (c * BigRational::from_integer(common.clone())).to_integer())
            .collect();
        let num = CycloElem::from_dense(k, ints).scale(&self.den);
        let out = Self::normalized(num, common);
        let mut rest = out.den.clone();
        for &p in allowed_primes {
            if p < 2 {
                continue;
            }
            let p = BigInt::from(p);
            while (&rest % &p).is_zero() {
                rest /= &p;
            }
        }
        if !rest.is_one() {
            return Err(Error::NotAUnit {
                denominator: out.den.to_string(),
            });
        }
        Ok(out)
    }

    pub fn checked_div(&self, other: &Self, allowed_primes: &[u64]) -> Result<Self> {
        self.checked_mul(&other.invert(allowed_primes)?)
    }

    pub fn to_complex(&self, which_root: i64) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        self.num.to_complex(which_root) / self.den.to_f64().unwrap_or(f64::NAN)
    }
}

type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn sub_scaled_shifted(a: &mut QPoly, b: &[BigRational], c: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bc) in b.iter().enumerate() {
        a[i + shift] -= c * bc;
    }
    trim(a);
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] / lead;
        sub_scaled_shifted(&mut rem, b, &c, shift);
        quot[shift] = c;
    }
    (quot, rem)
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// `s` with `s·a ≡ 1 (mod Φ_k)` over the rationals, or `None` if `a ≡ 0`.
pub(crate) fn inverse_mod_phi(a: &[BigInt], k: u64) -> Option<QPoly> {
    let to_q = |v: &[BigInt]| -> QPoly {
        let mut q: QPoly = v.iter().cloned().map(BigRational::from_integer).collect();
        trim(&mut q);
        q
    };
    let mut r0 = to_q(&phi_coeffs(k));
    let mut r1 = to_q(a);
    if r1.is_empty() {
        return None;
    }
    let mut s0: QPoly = Vec::new();
    let mut s1: QPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub_q(&s0, &mul_q(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let g = r0[0].clone();
    let d = phi_coeffs(k).len() - 1;
    let mut s: QPoly = s0.into_iter().map(|c| c / &g).collect();
    s.resize(d.max(s.len()), BigRational::zero());
    Some(s)
}

impl fmt::Display for CycloFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for CycloFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloFraction[k={}]({self})", self.order())
    }
}

impl From<CycloElem> for CycloFraction {
    fn from(x: CycloElem) -> Self {
        Self::from_elem(x)
    }
}

impl Neg for &CycloFraction {
    type Output = CycloFraction;
    fn neg(self) -> CycloFraction {
        CycloFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloFraction {
    type Output = CycloFraction;
    fn neg(self) -> CycloFraction {
        -&self
    }
}

macro_rules! frac_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &CycloFraction {
            type Output = CycloFraction;
            fn $m(self, rhs: &CycloFraction) -> CycloFraction {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for CycloFraction {
            type Output = CycloFraction;
            fn $m(self, rhs: CycloFraction) -> CycloFraction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloFraction> for CycloFraction {
            type Output = CycloFraction;
            fn $m(self, rhs: &CycloFraction) -> CycloFraction {
                (&self).$m(rhs)
            }
        }
    };
}
frac_binop!(Add, add, checked_add);
frac_binop!(Sub, sub, checked_sub);
frac_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{reduce, LaurentPoly};
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn elem(k: u64, terms: &[(i64, i64)]) -> CycloElem {
        reduce(&LaurentPoly::from_terms(terms.iter().copied()), k)
    }

    #[test]
    fn normalization_and_identities() {
        let f = elem(15, &[(0, 1), (2, 3)]);
        let x = CycloFraction::new(f.clone(), 2).unwrap();
        assert_eq!(&x + &CycloFraction::zero(15), x);
        assert_eq!(x.scale(2), CycloFraction::from_elem(f.clone()));
        let a7 = CycloFraction::monomial(15, 7);
        let a8 = CycloFraction::monomial(15, 8);
        assert!((&a7 * &a8).is_one());
        // 6A/4 -> 3A/2
        let y = CycloFraction::new(elem(15, &[(1, 6)]), 4).unwrap();
        assert_eq!(y.denom(), &BigInt::from(2));
        assert_eq!(y.to_string(), "(3*A)/2");
        assert_eq!(CycloFraction::new(f, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn cross_multiplication_equality_agrees() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let f = elem(9, &[(rng.gen_range(0..9), rng.gen_range(-4..=4)), (rng.gen_range(0..9), rng.gen_range(-4..=4))]);
            let g = elem(9, &[(rng.gen_range(0..9), rng.gen_range(-4..=4))]);
            let (a, b) = (rng.gen_range(1..12i64), rng.gen_range(1..12i64));
            let x = CycloFraction::new(f.clone(), a).unwrap();
            let y = CycloFraction::new(g.clone(), b).unwrap();
            let cross = f.scale(&BigInt::from(b)) == g.scale(&BigInt::from(a));
            assert_eq!(x == y, cross);
            let g2 = x.numer().content().gcd(x.denom());
            assert!(g2.is_one() || x.is_zero());
        }
    }

    #[test]
    fn invert_units() {
        let a = CycloFraction::monomial(15, 1);
        assert_eq!(a.invert(&[]).unwrap(), CycloFraction::monomial(15, 14));
        let three = CycloFraction::from_int(15, 3);
        let third = three.invert(&[3, 5]).unwrap();
        assert_eq!(third, CycloFraction::new(CycloElem::one(15), 3).unwrap());
        assert!(matches!(three.invert(&[5]), Err(Error::NotAUnit { .. })));
        assert_eq!(CycloFraction::zero(15).invert(&[3, 5]), Err(Error::DivisionByZero));
    }

    /// Norm of `x` down to `Q`, computed as the product of its complex embeddings.
    fn float_norm(x: &CycloElem) -> f64 {
        let k = x.order() as i64;
        (1..k)
            .filter(|w| w.gcd(&k) == 1)
            .map(|w| x.to_complex(w))
            .fold(Complex64::new(1.0, 0.0), |acc, z| acc * z)
            .re
    }

    #[test]
    fn invert_a3_minus_a_minus3_in_lambda_5() {
        let x = CycloFraction::from_elem(elem(15, &[(3, 1), (-3, -1)]));
        let norm = float_norm(x.numer()).round() as i64;
        let mut smooth = norm.abs();
        for p in [3, 5] {
            while smooth % p == 0 {
                smooth /= p;
            }
        }
        assert_eq!(smooth, 1, "norm {norm} must be 15-smooth");
        let inv = x.invert(&[3, 5]).unwrap();
        assert!((&inv * &x).is_one());
        // A^6 - 1 has norm 5^2 in Q(ζ_15), so the inverse needs 5 but not 3.
        let y = CycloFraction::from_elem(elem(15, &[(6, 1), (0, -1)]));
        assert_eq!(float_norm(y.numer()).round() as i64, 25);
        assert!(y.invert(&[5]).is_ok());
        assert!(matches!(y.invert(&[3]), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn invert_round_trips_on_random_elements() {
        let mut rng = StdRng::seed_from_u64(11);
        for k in [9u64, 15, 21] {
            for _ in 0..30 {
                let terms: Vec<(i64, i64)> = (0..4).map(|_| (rng.gen_range(0..k as i64), rng.gen_range(-3..=3))).collect();
                let x = CycloFraction::new(elem(k, &terms), rng.gen_range(1..6)).unwrap();
                if x.is_zero() {
                    continue;
                }
                // Allow every prime up to a generous bound so any nonzero element inverts.
                let primes: Vec<u64> = (2..2000).filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0)).collect();
                match x.invert(&primes) {
                    Ok(inv) => assert!((&inv * &x).is_one()),
                    Err(Error::NotAUnit { .. }) => {}
                    Err(e) => panic!("unexpected {e}"),
                }
            }
        }
    }

    #[test]
    fn galois_and_complex() {
        let x = CycloFraction::new(elem(15, &[(1, 2), (4, -1)]), 3).unwrap();
        assert_eq!(x.conj().conj(), x);
        let z = x.to_complex(1);
        let zc = x.conj().to_complex(1);
        assert!((z.conj() - zc).norm() < 1e-12);
    }
}
