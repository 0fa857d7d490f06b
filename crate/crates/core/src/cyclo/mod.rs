//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! An element of Q(ζ_N) is stored on the power basis `1, ζ, …, ζ^{φ(N)-1}`,
//! i.e. as a rational polynomial in ζ reduced modulo the N-th cyclotomic
//! polynomial. Values of different orders are compared and combined by
//! lifting both to the field of the least common multiple.

mod serde_impl;
mod subfield;
pub(crate) mod upoly;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use subfield::{field_trace, SubfieldSpec};

pub type Rational = BigRational;

pub const DEFAULT_MAX_ORDER: u32 = 120;

static MAX_ORDER: AtomicU32 = AtomicU32::new(DEFAULT_MAX_ORDER);

/// Sets the largest cyclotomic order arithmetic may lift to.
pub fn set_max_order(n: u32) {
    MAX_ORDER.store(n.max(1), AtomicOrdering::Relaxed);
}

pub fn max_order() -> u32 {
    MAX_ORDER.load(AtomicOrdering::Relaxed)
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Units modulo `n`, ascending. For `n == 1` this is `[0]`, the unique residue.
pub fn units(n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|a| a.gcd(&n) == 1).collect()
}

pub fn lcm_order(a: u32, b: u32) -> Result<u32> {
    let l = (a as u64).lcm(&(b as u64));
    if l > max_order() as u64 {
        return Err(Error::OrderOverflow { order: l, max: max_order() });
    }
    Ok(l as u32)
}

type PolyCache = RwLock<HashMap<u32, Arc<Vec<BigInt>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
pub(crate) fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let p = Arc::new(upoly::cyclotomic_coeffs(n));
    poly_cache().write().unwrap().insert(n, p.clone());
    p
}

/// Reduces a polynomial in ζ_N (any length) modulo Φ_N.
fn reduce(order: u32, mut c: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_poly(order);
    let d = phi.len() - 1;
    while c.len() > d {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - d;
        for (j, pj) in phi.iter().enumerate().take(d) {
            if !pj.is_zero() {
                c[shift + j] -= &top * pj;
            }
        }
    }
    c.resize(d, Rational::zero());
    c
}

#[derive(Clone)]
pub struct CyclotomicNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u32) -> Self {
        let d = euler_phi(order) as usize;
        Self { order, coeffs: vec![Rational::zero(); d] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational_in(order, Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self { order: 1, coeffs: vec![q] }
    }

    pub fn from_rational_in(order: u32, q: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// ζ_n^k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self { order: n, coeffs: reduce(n, c) }
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds Σ c_e ζ_N^e from arbitrary exponents and reduces.
    pub fn from_powers(order: u32, terms: &[(u32, Rational)]) -> Self {
        let len = terms.iter().map(|(e, _)| (*e % order) as usize + 1).max().unwrap_or(0);
        let mut c = vec![Rational::zero(); len];
        for (e, q) in terms {
            c[(*e % order) as usize] += q;
        }
        Self { order, coeffs: reduce(order, c) }
    }

    /// Constructs from power-basis coefficients; they are reduced modulo Φ_N.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        Self { order, coeffs: reduce(order, coeffs) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Integer value if this number is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Re-expresses the value in Q(ζ_target); `order` must divide `target`.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target % self.order == 0, "cannot lift order {} to {}", self.order, target);
        let step = (target / self.order) as usize;
        let mut c = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, q) in self.coeffs.iter().enumerate() {
            c[i * step] = q.clone();
        }
        Self { order: target, coeffs: reduce(target, c) }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm_order(a.order, b.order).unwrap_or_else(|e| panic!("{e}"));
        (a.lift(l), b.lift(l))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        lcm_order(self.order, other.order)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        lcm_order(self.order, other.order)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        lcm_order(self.order, other.order)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        lcm_order(self.order, other.order)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational_in(self.order, self.coeffs[0].recip()));
        }
        let phi: Vec<Rational> = cyclotomic_poly(self.order)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let s = upoly::inverse_mod(&self.coeffs, &phi)
            .ok_or_else(|| Error::Inconsistent("cyclotomic polynomial not coprime to a nonzero element".into()))?;
        Ok(Self::from_coeffs(self.order, s))
    }

    /// Applies the automorphism ζ ↦ ζ^σ of Q(ζ_N).
    pub fn galois(&self, sigma: u32) -> Result<Self> {
        let n = self.order;
        if n == 1 {
            return Ok(self.clone());
        }
        if (sigma % n).gcd(&n) != 1 {
            return Err(Error::NotAUnit { sigma, order: n });
        }
        let terms: Vec<(u32, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| (((i as u64 * sigma as u64) % n as u64) as u32, q.clone()))
            .collect();
        Ok(Self::from_powers(n, &terms))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1).expect("N-1 is a unit")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order used for deterministic sorting: compare canonical
    /// coefficient vectors over the common order.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let (a, b) = Self::common(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for CyclotomicNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return CyclotomicNumber { order: self.order, coeffs };
        }
        let (a, b) = CyclotomicNumber::common(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
            return CyclotomicNumber { order: self.order, coeffs };
        }
        let (a, b) = CyclotomicNumber::common(self, rhs);
        &a - &b
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.order != rhs.order {
            let (a, b) = CyclotomicNumber::common(self, rhs);
            return &a * &b;
        }
        if self.coeffs.len() == 1 {
            return CyclotomicNumber { order: self.order, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        if self.is_rational() {
            let c = &self.coeffs[0];
            return CyclotomicNumber { order: self.order, coeffs: rhs.coeffs.iter().map(|x| x * c).collect() };
        }
        if rhs.is_rational() {
            let c = &rhs.coeffs[0];
            return CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        }
        let prod = upoly::mul(&self.coeffs, &rhs.coeffs);
        CyclotomicNumber { order: self.order, coeffs: reduce(self.order, prod) }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(rhs)
            }
        }
        impl<'a> $atr<&'a CyclotomicNumber> for CyclotomicNumber {
            fn $am(&mut self, rhs: &'a CyclotomicNumber) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $atr for CyclotomicNumber {
            fn $am(&mut self, rhs: CyclotomicNumber) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

owned_binop!(Add, add, AddAssign, add_assign);
owned_binop!(Sub, sub, SubAssign, sub_assign);
owned_binop!(Mul, mul, MulAssign, mul_assign);

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Renders in the polynomial grammar, e.g. `-1/2 + 3*zeta(5)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let zeta = match i {
                0 => String::new(),
                1 => format!("zeta({})", self.order),
                _ => format!("zeta({})^{}", self.order, i),
            };
            if i == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{zeta}")?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), zeta)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The top-level arithmetic entry point with explicit error reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyclo_arith(a: &CyclotomicNumber, b: &CyclotomicNumber, op: ArithOp) -> Result<CyclotomicNumber> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn galois_apply(a: &CyclotomicNumber, sigma: u32) -> Result<CyclotomicNumber> {
    a.galois(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(9), 6);
        let p5: Vec<i64> = cyclotomic_poly(5).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(p5, vec![1, 1, 1, 1, 1]);
        let p12: Vec<i64> = cyclotomic_poly(12).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(p12, vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta3_sum() {
        let w = CyclotomicNumber::zeta(3);
        let w2 = CyclotomicNumber::zeta_pow(3, 2);
        assert_eq!(&w + &w2, CyclotomicNumber::from_int(-1));
    }

    #[test]
    fn inverse_of_one_plus_zeta5() {
        let z = &CyclotomicNumber::one(5) + &CyclotomicNumber::zeta(5);
        let v = z.inv().unwrap();
        assert!((&v * &z).is_one());
        // (1+ζ)^{-1} = -ζ - ζ^3 in Q(ζ_5): (1+ζ)(-ζ-ζ^3) = -ζ-ζ²-ζ³-ζ⁴ = 1
        let expected = CyclotomicNumber::from_powers(5, &[(1, q(-1, 1)), (3, q(-1, 1))]);
        assert_eq!(v, expected);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = CyclotomicNumber::zeta(4);
        assert!(matches!(cyclo_arith(&a, &CyclotomicNumber::zero(4), ArithOp::Div), Err(Error::DivisionByZero)));
    }

    #[test]
    fn overflow_is_an_error() {
        let a = CyclotomicNumber::zeta(97);
        let b = CyclotomicNumber::zeta(89);
        assert!(matches!(cyclo_arith(&a, &b, ArithOp::Add), Err(Error::OrderOverflow { .. })));
    }

    #[test]
    fn galois_on_i() {
        let i = CyclotomicNumber::zeta(4);
        assert_eq!(i.galois(3).unwrap(), -&i);
        assert_eq!(i.conj(), CyclotomicNumber::zeta_pow(4, 3));
        assert!(matches!(i.galois(2), Err(Error::NotAUnit { .. })));
        let r = CyclotomicNumber::from_rational_in(12, q(3, 7));
        assert_eq!(r.galois(5).unwrap(), r);
    }

    #[test]
    fn mixed_orders_compare_by_lift() {
        let w = CyclotomicNumber::zeta(3);
        let z6 = CyclotomicNumber::zeta_pow(6, 2);
        assert_eq!(w, z6);
        let minus_one = CyclotomicNumber::zeta_pow(2, 1);
        assert_eq!(minus_one, CyclotomicNumber::from_int(-1));
        assert_eq!(CyclotomicNumber::zeta_pow(12, 3), CyclotomicNumber::zeta(4));
    }

    #[test]
    fn display_grammar() {
        let z = CyclotomicNumber::from_powers(5, &[(0, q(-1, 2)), (2, q(3, 1))]);
        assert_eq!(z.to_string(), "-1/2 + 3*zeta(5)^2");
        assert_eq!(CyclotomicNumber::zero(3).to_string(), "0");
    }
}
