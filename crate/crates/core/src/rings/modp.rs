//! Reductions modulo a prime: `F_p[A]/Φ_k(A)` and ideal-membership tests.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::cyclotomic::{phi_coeffs, CycloElem};
use super::fraction::CycloFraction;
use super::laurent::LaurentPoly;
use crate::arith::mod_inverse;
use crate::error::{Error, Result};

fn mod_big(c: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((c % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

fn assert_modulus(p: u64) {
    assert!((2..1 << 32).contains(&p), "modulus {p} out of range");
}

/// Dense polynomial over `F_p`, lowest degree first, no trailing zeros.
pub(crate) mod fp {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    /// Remainder of `a` modulo `b` (`b` nonzero).
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        while r.len() > db {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            let shift = top - db;
            for (j, bc) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * bc % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// Monic gcd.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = std::mem::replace(&mut y, r);
        }
        if let Some(&lead) = x.last() {
            let li = inv(lead, p);
            for c in &mut x {
                *c = *c * li % p;
            }
        }
        x
    }

    pub fn divides(d: &[u64], f: &[u64], p: u64) -> bool {
        let mut d = d.to_vec();
        trim(&mut d);
        if d.is_empty() {
            return f.iter().all(|&c| c == 0);
        }
        rem(f, &d, p).is_empty()
    }

    /// Drops factors of the variable (leading zero coefficients).
    pub fn strip_var(v: &mut Vec<u64>) {
        let lead_zeros = v.iter().take_while(|&&c| c == 0).count();
        v.drain(..lead_zeros);
        trim(v);
    }
}

/// An element of `F_p[A]/Φ_k(A)`, stored as a remainder of degree below `φ(k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModCycloElem {
    order: u64,
    p: u64,
    coeffs: Vec<u64>,
}

impl ModCycloElem {
    fn phi_mod(k: u64, p: u64) -> Vec<u64> {
        phi_coeffs(k).iter().map(|c| mod_big(c, p)).collect()
    }

    fn from_dense(k: u64, p: u64, mut v: Vec<u64>) -> Self {
        assert_modulus(p);
        let phi = Self::phi_mod(k, p);
        let d = phi.len() - 1;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                let c = v[i];
                if c == 0 {
                    continue;
                }
                for (j, pc) in phi.iter().enumerate() {
                    v[i - d + j] = (v[i - d + j] + p - c * pc % p) % p;
                }
            }
            v.truncate(d);
        }
        v.resize(d, 0);
        Self { order: k, p, coeffs: v }
    }

    pub fn from_elem(x: &CycloElem, p: u64) -> Self {
        assert_modulus(p);
        let v = x.coeffs().iter().map(|c| mod_big(c, p)).collect();
        Self::from_dense(x.order(), p, v)
    }

    pub fn zero(k: u64, p: u64) -> Self {
        Self::from_dense(k, p, Vec::new())
    }

    pub fn one(k: u64, p: u64) -> Self {
        Self::from_dense(k, p, vec![1])
    }

    pub fn monomial(k: u64, p: u64, e: i64) -> Self {
        let mut v = vec![0; k as usize];
        v[e.rem_euclid(k as i64) as usize] = 1;
        Self::from_dense(k, p, v)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first() == Some(&1) && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn compatible(&self, other: &Self) {
        assert!(
            self.order == other.order && self.p == other.p,
            "mismatched rings: (k={}, p={}) vs (k={}, p={})",
            self.order,
            self.p,
            other.order,
            other.p
        );
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(self.p as i64) as u64;
        Self {
            order: self.order,
            p: self.p,
            coeffs: self.coeffs.iter().map(|x| x * c % self.p).collect(),
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::one(self.order, self.p);
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

    /// `Σ c_i A^{ip}`: the image of `x^p` predicted by the Frobenius map.
    pub fn frobenius(&self) -> Self {
        let k = self.order as usize;
        let mut v = vec![0; k];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = (i as u64 * self.p % self.order) as usize;
            v[j] = (v[j] + c) % self.p;
        }
        Self::from_dense(self.order, self.p, v)
    }
}

impl CycloFraction {
    /// Numerator times the inverse of the denominator, coefficients mod `p`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<ModCycloElem> {
        let d = mod_big(self.denom(), p);
        let inv = mod_inverse(d as i64, p as i64).ok_or_else(|| Error::DenominatorNotInvertible {
            denominator: self.denom().to_string(),
            p,
        })?;
        Ok(ModCycloElem::from_elem(self.numer(), p).scale(inv))
    }
}

/// Monic generator of the ideal `(g)` in `F_p[A]/Φ_k`, lifted to `F_p[A]`:
/// `gcd(Φ_k mod p, g mod p)` after clearing powers of `A` from `g`.
pub fn ideal_generator(g: &LaurentPoly, p: u64, k: u64) -> Vec<u64> {
    let (_, dense) = g.cleared();
    let mut gm: Vec<u64> = dense.iter().map(|c| mod_big(c, p)).collect();
    fp::strip_var(&mut gm);
    fp::gcd(&ModCycloElem::phi_mod(k, p), &gm, p)
}

/// Whether `f` lies in the ideal generated by `g` in `F_p[A]/Φ_k`, with
/// `k` and `p` taken from `f`.
pub fn ideal_membership_cyclo(f: &ModCycloElem, g: &LaurentPoly) -> bool {
    let d = ideal_generator(g, f.p, f.order);
    fp::divides(&d, &f.coeffs, f.p)
}

/// Whether `f ∈ (p, g)` in `Z[A^{±1}]`.
pub fn laurent_ideal_membership(f: &LaurentPoly, g: &LaurentPoly, p: u64) -> bool {
    assert_modulus(p);
    let reduce = |x: &LaurentPoly| -> Vec<u64> {
        let (_, dense) = x.cleared();
        let mut v: Vec<u64> = dense.iter().map(|c| mod_big(c, p)).collect();
        fp::strip_var(&mut v);
        v
    };
    let fm = reduce(f);
    let gm = reduce(g);
    if gm.is_empty() {
        return fm.is_empty();
    }
    fp::divides(&gm, &fm, p)
}

impl fmt::Display for ModCycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let big: Vec<(i64, BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i as i64, BigInt::from(*c)))
            .collect();
        super::laurent::write_terms(f, big.iter().map(|(e, c)| (*e, c)))?;
        write!(f, " (mod {})", self.p)
    }
}

impl fmt::Debug for ModCycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModCycloElem[k={}]({self})", self.order)
    }
}

impl Neg for &ModCycloElem {
    type Output = ModCycloElem;
    fn neg(self) -> ModCycloElem {
        self.scale(-1)
    }
}

impl Neg for ModCycloElem {
    type Output = ModCycloElem;
    fn neg(self) -> ModCycloElem {
        self.scale(-1)
    }
}

impl Add for &ModCycloElem {
    type Output = ModCycloElem;
    fn add(self, rhs: &ModCycloElem) -> ModCycloElem {
        self.compatible(rhs);
        ModCycloElem {
            order: self.order,
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + b) % self.p).collect(),
        }
    }
}

impl Sub for &ModCycloElem {
    type Output = ModCycloElem;
    fn sub(self, rhs: &ModCycloElem) -> ModCycloElem {
        self + &(-rhs)
    }
}

impl Mul for &ModCycloElem {
    type Output = ModCycloElem;
    fn mul(self, rhs: &ModCycloElem) -> ModCycloElem {
        self.compatible(rhs);
        let d = self.coeffs.len();
        let p = self.p;
        let mut prod = vec![0u64; (2 * d).saturating_sub(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        ModCycloElem::from_dense(self.order, p, prod)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ModCycloElem {
            type Output = ModCycloElem;
            fn $m(self, rhs: ModCycloElem) -> ModCycloElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ModCycloElem> for ModCycloElem {
            type Output = ModCycloElem;
            fn $m(self, rhs: &ModCycloElem) -> ModCycloElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::reduce;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn qint3() -> LaurentPoly {
        lp(&[(-6, 1), (0, 1), (6, 1)])
    }

    fn random_elem(rng: &mut StdRng, k: u64) -> CycloElem {
        reduce(
            &LaurentPoly::from_terms((0..6).map(|_| (rng.gen_range(-40i64..40), rng.gen_range(-50i64..50)))),
            k,
        )
    }

    #[test]
    fn reduce_mod_p_examples() {
        let third = CycloFraction::new(CycloElem::one(15), 3).unwrap();
        assert_eq!(third.reduce_mod_p(11).unwrap(), ModCycloElem::one(15, 11).scale(4));
        let f = reduce(&lp(&[(1, 2), (3, -5)]), 15);
        assert!(CycloFraction::from_elem(f.scale(&BigInt::from(11))).reduce_mod_p(11).unwrap().is_zero());
        assert!(matches!(
            third.reduce_mod_p(3),
            Err(Error::DenominatorNotInvertible { p: 3, .. })
        ));
        let lens = reduce(&lp(&[(0, 1), (1, -1), (2, -1), (3, 1), (4, -1), (5, 1), (7, -1)]), 15);
        let m = CycloFraction::from_elem(lens).reduce_mod_p(11).unwrap();
        assert_eq!(m.coeffs(), &[1, 10, 10, 1, 10, 1, 0, 10]);
    }

    #[test]
    fn reduce_mod_p_is_a_ring_homomorphism() {
        let mut rng = StdRng::seed_from_u64(5);
        for (k, p) in [(15u64, 11u64), (21, 13), (9, 7), (33, 2)] {
            for _ in 0..100 {
                let x = random_elem(&mut rng, k);
                let y = random_elem(&mut rng, k);
                let rx = ModCycloElem::from_elem(&x, p);
                let ry = ModCycloElem::from_elem(&y, p);
                assert_eq!(ModCycloElem::from_elem(&(&x * &y), p), &rx * &ry);
                assert_eq!(ModCycloElem::from_elem(&(&x + &y), p), &rx + &ry);
            }
        }
    }

    #[test]
    fn frobenius_matches_pth_power() {
        let mut rng = StdRng::seed_from_u64(9);
        for (k, p) in [(15u64, 11u64), (15, 7), (21, 5), (33, 13), (9, 2)] {
            for _ in 0..30 {
                let x = ModCycloElem::from_elem(&random_elem(&mut rng, k), p);
                assert_eq!(x.pow(p), x.frobenius());
            }
        }
    }

    #[test]
    fn membership_basic() {
        let g = &qint3().pow(11) - &qint3();
        let gr = ModCycloElem::from_elem(&reduce(&g, 15), 11);
        assert!(ideal_membership_cyclo(&gr, &g));
        assert!(ideal_membership_cyclo(&ModCycloElem::zero(15, 11), &g));
        // p ≡ ±1 mod r: g vanishes in the quotient, so the ideal is zero.
        assert!(!ideal_membership_cyclo(&ModCycloElem::one(15, 11), &g));
        assert_eq!(ideal_generator(&g, 11, 15), ModCycloElem::phi_mod(15, 11));
        // A unit generator gives the whole ring.
        assert!(ideal_membership_cyclo(&ModCycloElem::one(15, 11), &lp(&[(4, 1)])));
    }

    #[test]
    fn membership_is_an_ideal() {
        let mut rng = StdRng::seed_from_u64(21);
        let k = 21;
        let p = 2;
        let g = &qint3().pow(2) - &qint3();
        let gk = ModCycloElem::from_elem(&reduce(&g, k), p);
        for _ in 0..100 {
            let a = ModCycloElem::from_elem(&random_elem(&mut rng, k), p);
            let b = ModCycloElem::from_elem(&random_elem(&mut rng, k), p);
            let h = ModCycloElem::from_elem(&random_elem(&mut rng, k), p);
            let f1 = &a * &gk;
            let f2 = &b * &gk;
            assert!(ideal_membership_cyclo(&f1, &g));
            assert!(ideal_membership_cyclo(&(&f1 + &f2), &g));
            assert!(ideal_membership_cyclo(&(&h * &f1), &g));
        }
    }

    #[test]
    fn laurent_membership() {
        let g = &qint3().pow(3) - &qint3();
        let h = lp(&[(-4, 2), (9, -1)]);
        assert!(laurent_ideal_membership(&h.scale(&BigInt::from(7)), &g, 7));
        assert!(laurent_ideal_membership(&g.shift(-13), &g, 3));
        assert!(laurent_ideal_membership(&g, &g, 3));
        assert!(!laurent_ideal_membership(&LaurentPoly::one(), &g, 3));
        // g ≡ 0 mod p degenerates to a plain mod-p test
        let zero_mod5 = lp(&[(0, 5), (2, 10)]);
        assert!(laurent_ideal_membership(&lp(&[(1, 5)]), &zero_mod5, 5));
        assert!(!laurent_ideal_membership(&lp(&[(1, 1)]), &zero_mod5, 5));
    }
}
