//! Exact scalar fields: prime fields `F_p`, their quadratic extensions, and `Q`.
//!
//! Every field is a small value type carrying its parameters; elements are
//! plain data (`u64`, pairs of `u64`, or `BigRational`) and all arithmetic goes
//! through the field handle. Representatives are always canonical, so element
//! equality is value equality.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable description of a field, used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldKind {
    Prime { p: u64 },
    Extension { p: u64, degree: u32 },
    Rational,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime { p } => write!(f, "F_{p}"),
            FieldKind::Extension { p, degree } => write!(f, "F_{p}^{degree}"),
            FieldKind::Rational => write!(f, "Q"),
        }
    }
}

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + Eq + Ord + Hash + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    /// Fails when the denominator is not invertible in the field.
    fn from_rational(&self, v: &BigRational) -> Result<Self::Elem> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        self.div(&num, &den)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Whether `a` is a canonical representative of an element of this field.
    fn is_canonical(&self, a: &Self::Elem) -> bool;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    /// The `i`-th element in the canonical enumeration of a finite field;
    /// index 0 is zero and index 1 is one.
    fn element(&self, i: u64) -> Self::Elem;

    /// Inverse of [`Field::element`].
    fn index_of(&self, a: &Self::Elem) -> u64;

    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn render(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The unique `b` with `b^p = a` in a finite field of characteristic `p`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        match (self.order(), self.characteristic()) {
            (Some(q), p) if p > 0 => self.pow(a, q / p),
            _ => a.clone(),
        }
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// The prime field `F_p` for an odd prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Legendre symbol test for nonzero squares.
    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.pow(&a, (self.p - 1) / 2) == 1
    }

    /// Representative in `(-p/2, p/2]`, handy for display.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        r.to_u64().expect("reduced value fits in u64")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on signed integers
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i64) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_canonical(&self, a: &u64) -> bool {
        *a < self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn element(&self, i: u64) -> u64 {
        debug_assert!(i < self.p);
        i
    }
    fn index_of(&self, a: &u64) -> u64 {
        *a
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// `F_{p^2} = F_p(sqrt(r))` for the least quadratic non-residue `r`.
///
/// Elements are pairs `(a, b)` standing for `a + b*sqrt(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticExtension {
    base: PrimeField,
    nonresidue: u64,
}

impl QuadraticExtension {
    pub fn new(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let nonresidue = (2..p).find(|&r| !base.is_square(r)).expect("odd prime has a non-residue");
        Ok(QuadraticExtension { base, nonresidue })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// The embedding `F_p -> F_{p^2}`.
    pub fn embed(&self, a: u64) -> (u64, u64) {
        (a, 0)
    }
}

impl Field for QuadraticExtension {
    type Elem = (u64, u64);

    fn kind(&self) -> FieldKind {
        FieldKind::Extension { p: self.base.p, degree: 2 }
    }
    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn one(&self) -> (u64, u64) {
        (1, 0)
    }
    fn from_i64(&self, v: i64) -> (u64, u64) {
        (self.base.from_i64(v), 0)
    }
    fn from_bigint(&self, v: &BigInt) -> (u64, u64) {
        (self.base.from_bigint(v), 0)
    }
    fn add(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn mul(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        let f = &self.base;
        let bd = f.mul(&a.1, &b.1);
        let re = f.add(&f.mul(&a.0, &b.0), &f.mul(&bd, &self.nonresidue));
        let im = f.add(&f.mul(&a.0, &b.1), &f.mul(&a.1, &b.0));
        (re, im)
    }
    fn neg(&self, a: &(u64, u64)) -> (u64, u64) {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn inv(&self, a: &(u64, u64)) -> Result<(u64, u64)> {
        let f = &self.base;
        // (a + b s)^{-1} = (a - b s) / (a^2 - r b^2)
        let norm = f.sub(&f.mul(&a.0, &a.0), &f.mul(&self.nonresidue, &f.mul(&a.1, &a.1)));
        let ninv = f.inv(&norm)?;
        Ok((f.mul(&a.0, &ninv), f.mul(&f.neg(&a.1), &ninv)))
    }
    fn is_zero(&self, a: &(u64, u64)) -> bool {
        a.0 == 0 && a.1 == 0
    }
    fn is_canonical(&self, a: &(u64, u64)) -> bool {
        a.0 < self.base.p && a.1 < self.base.p
    }
    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.base.p * self.base.p)
    }
    fn element(&self, i: u64) -> (u64, u64) {
        (i % self.base.p, i / self.base.p)
    }
    fn index_of(&self, a: &(u64, u64)) -> u64 {
        a.0 + a.1 * self.base.p
    }
    fn random(&self, rng: &mut dyn RngCore) -> (u64, u64) {
        (rng.gen_range(0..self.base.p), rng.gen_range(0..self.base.p))
    }
    fn render(&self, a: &(u64, u64)) -> String {
        if a.1 == 0 {
            a.0.to_string()
        } else {
            format!("{}+{}*s", a.0, a.1)
        }
    }
}

/// The rational numbers, with `BigRational` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

/// Magnitude bound for [`Rationals::random`].
pub const RATIONAL_SAMPLE_BOUND: i64 = 12;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> Result<BigRational> {
        Ok(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_canonical(&self, a: &BigRational) -> bool {
        // BigRational keeps itself reduced with a positive denominator
        a.denom().is_positive()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element(&self, i: u64) -> BigRational {
        self.from_i64(i as i64)
    }
    fn index_of(&self, _a: &BigRational) -> u64 {
        panic!("Q has no finite enumeration")
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn prime_field_arithmetic_is_canonical() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&3, &3), 2);
        assert_eq!(f.inv(&3).unwrap(), 5);
        assert_eq!(f.inv(&0), Err(Error::DivisionByZero));
        assert_eq!(f.from_bigint(&BigInt::from(-15)), 6);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), 4);
        let seventh = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert_eq!(f.from_rational(&seventh), Err(Error::DivisionByZero));
    }

    #[test]
    fn large_prime_inverse() {
        let f = PrimeField::new(2_147_483_647).unwrap();
        for a in [1u64, 2, 12345, 2_147_483_646] {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn extension_field_inverses_and_frobenius() {
        let f = QuadraticExtension::new(7).unwrap();
        for i in 1..49 {
            let a = f.element(i);
            assert_eq!(f.index_of(&a), i);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            let r = f.pth_root(&a);
            assert_eq!(f.pow(&r, 7), a);
        }
        // every element of F_7 is a square in F_49
        let squares: std::collections::BTreeSet<_> = (0..49).map(|i| f.mul(&f.element(i), &f.element(i))).collect();
        for a in 0..7 {
            assert!(squares.contains(&f.embed(a)));
        }
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Rationals;
        let a = q.div(&q.from_i64(4), &q.from_i64(-6)).unwrap();
        assert_eq!(q.render(&a), "-2/3");
        assert!(q.is_canonical(&a));
        assert_eq!(q.inv(&q.zero()), Err(Error::DivisionByZero));
    }
}
