//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! Every element is stored in the power basis `1, ζ, ..., ζ^(φ(M)-1)`,
//! fully reduced modulo the `M`-th cyclotomic polynomial, with integer
//! numerators over one positive common denominator in lowest terms. Equality
//! of representations is therefore equality of numbers.

mod modulus;
pub mod poly;
mod project;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith;

#[cfg(feature = "std")]
pub use modulus::{cached_cyclotomics, preload_cyclotomic};
pub use modulus::{cyclotomic_poly, phi, CyclotomicModulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("expected {expected} coefficients for conductor {conductor}, got {got}")]
    WrongLength {
        conductor: u32,
        expected: usize,
        got: usize,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("Galois exponent {exponent} is not a unit modulo {conductor}")]
    NotAUnit { conductor: u32, exponent: i64 },
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("malformed number: {0}")]
    Parse(String),
}

/// An element of `Q(ζ_M)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

/// The automorphism `ζ_M ↦ ζ_M^a` of `Q(ζ_M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisElement {
    conductor: u32,
    exponent: u32,
}

impl GaloisElement {
    pub fn new(conductor: u32, exponent: i64) -> Result<Self, CycloError> {
        if conductor == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let a = arith::rem_euclid(exponent, conductor as u64);
        if arith::gcd(a, conductor as u64) != 1 {
            return Err(CycloError::NotAUnit {
                conductor,
                exponent,
            });
        }
        Ok(GaloisElement {
            conductor,
            exponent: a as u32,
        })
    }

    /// Complex conjugation, `a = -1`.
    pub fn conjugation(conductor: u32) -> Self {
        Self::new(conductor, -1).expect("-1 is always a unit")
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn compose(&self, other: &GaloisElement) -> GaloisElement {
        assert_eq!(self.conductor, other.conductor);
        GaloisElement {
            conductor: self.conductor,
            exponent: ((self.exponent as u64 * other.exponent as u64) % self.conductor as u64)
                as u32,
        }
    }
}

/// The root of unity `ζ_order^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub order: u32,
    pub exponent: u32,
}

impl RootOfUnity {
    /// Same root with `order` reduced to the exact multiplicative order.
    pub fn reduced(&self) -> RootOfUnity {
        let g = arith::gcd(self.exponent as u64, self.order as u64) as u32;
        if self.exponent == 0 {
            return RootOfUnity {
                order: 1,
                exponent: 0,
            };
        }
        RootOfUnity {
            order: self.order / g,
            exponent: self.exponent / g,
        }
    }

    /// Exact multiplicative order.
    pub fn multiplicative_order(&self) -> u32 {
        self.reduced().order
    }

    /// Exponent of this root written over `conductor`, if it lives there.
    pub fn exponent_in(&self, conductor: u32) -> Option<u32> {
        let r = self.reduced();
        if conductor % r.order != 0 {
            return None;
        }
        Some(r.exponent * (conductor / r.order))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta_{}^{}", self.order, self.exponent)
    }
}

fn check_same(a: &CycNum, b: &CycNum) -> Result<(), CycloError> {
    if a.conductor != b.conductor {
        Err(CycloError::ConductorMismatch(a.conductor, b.conductor))
    } else {
        Ok(())
    }
}

impl CycNum {
    /// Builds from an arbitrary-length numerator vector `Σ num[j] ζ^j / den`,
    /// reducing and normalising.
    fn from_raw(conductor: u32, mut num: Vec<BigInt>, den: BigInt) -> Self {
        let m = modulus::modulus(conductor);
        m.reduce(&mut num);
        let mut out = CycNum {
            conductor,
            num,
            den,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        CycNum {
            conductor,
            num: vec![BigInt::zero(); phi(conductor)],
            den: BigInt::one(),
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_integer(conductor, 1)
    }

    pub fn from_integer(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut out = Self::zero(conductor);
        out.num[0] = q.numer().clone();
        out.den = q.denom().clone();
        out.normalize();
        out
    }

    /// Builds from exactly `φ(M)` power-basis coefficients.
    pub fn new(conductor: u32, coeffs: Vec<BigRational>) -> Result<Self, CycloError> {
        if conductor == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let expected = phi(conductor);
        if coeffs.len() != expected {
            return Err(CycloError::WrongLength {
                conductor,
                expected,
                got: coeffs.len(),
            });
        }
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut out = CycNum {
            conductor,
            num,
            den,
        };
        out.normalize();
        Ok(out)
    }

    /// `Σ coeffs[j] ζ_M^j` for a coefficient list of any length.
    pub fn from_ints(conductor: u32, coeffs: &[i64]) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let mut v = vec![BigInt::zero(); core::cmp::max(coeffs.len(), phi(conductor))];
        for (j, &c) in coeffs.iter().enumerate() {
            v[j] = BigInt::from(c);
        }
        Self::from_raw(conductor, v, BigInt::one())
    }

    /// `ζ_M^e`.
    pub fn root_of_unity(conductor: u32, e: i64) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let idx = arith::rem_euclid(e, conductor as u64) as usize;
        let mut v = vec![BigInt::zero(); core::cmp::max(conductor as usize, phi(conductor))];
        v[idx] = BigInt::one();
        Self::from_raw(conductor, v, BigInt::one())
    }

    /// `ζ_order^exponent` written in conductor `conductor`.
    pub fn from_root(conductor: u32, root: RootOfUnity) -> Option<Self> {
        root.exponent_in(conductor)
            .map(|e| Self::root_of_unity(conductor, e as i64))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Number of power-basis coordinates, `φ(M)`.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeff(&self, j: usize) -> BigRational {
        BigRational::new(self.num[j].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|j| self.coeff(j)).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeff(0))
    }

    /// Integer value when the number is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Integral power-basis coordinates; `Z[ζ_M]` is the full ring of
    /// integers, so this is exactly algebraic integrality.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum, CycloError> {
        check_same(self, other)?;
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        let mut out = CycNum {
            conductor: self.conductor,
            num,
            den: l,
        };
        out.normalize();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum, CycloError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum, CycloError> {
        check_same(self, other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CycNum::zero(self.conductor));
        }
        let n = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycNum::from_raw(
            self.conductor,
            prod,
            &self.den * &other.den,
        ))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, CycloError> {
        check_same(self, other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial over Q.
    pub fn inverse(&self) -> Result<CycNum, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.is_rational() {
            let q = self.coeff(0);
            return Ok(CycNum::from_rational(self.conductor, q.recip()));
        }
        let m = modulus::modulus(self.conductor);
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let f: Vec<BigRational> = m
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = poly::rational_inverse_mod(&a, &f).ok_or(CycloError::DivisionByZero)?;
        // (num/den)^-1 = den * (num)^-1
        let mut coeffs = vec![BigRational::zero(); self.num.len()];
        for (j, c) in inv.into_iter().enumerate() {
            coeffs[j] = c * &self.den;
        }
        CycNum::new(self.conductor, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn neg_ref(&self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        let mut out = CycNum {
            conductor: self.conductor,
            num,
            den: &self.den * q.denom(),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Multiplies by `ζ_M^e` without a general product.
    pub fn mul_root(&self, e: i64) -> CycNum {
        let m = self.conductor as u64;
        let shift = arith::rem_euclid(e, m) as usize;
        let mut v = vec![BigInt::zero(); core::cmp::max(m as usize, self.num.len())];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[(j + shift) % m as usize] += c;
            }
        }
        CycNum::from_raw(self.conductor, v, self.den.clone())
    }

    /// Applies `ζ ↦ ζ^a` and reduces.
    pub fn galois_apply(&self, g: &GaloisElement) -> Result<CycNum, CycloError> {
        check_conductor(self.conductor, g.conductor)?;
        Ok(self.apply_exponent(g.exponent as u64))
    }

    fn apply_exponent(&self, a: u64) -> CycNum {
        let m = self.conductor as u64;
        let mut v = vec![BigInt::zero(); core::cmp::max(m as usize, self.num.len())];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[((j as u64 * a) % m) as usize] += c;
            }
        }
        CycNum::from_raw(self.conductor, v, self.den.clone())
    }

    /// Applies `σ_a` for an integer exponent coprime to the conductor.
    pub fn galois(&self, a: i64) -> Result<CycNum, CycloError> {
        let g = GaloisElement::new(self.conductor, a)?;
        self.galois_apply(&g)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycNum {
        self.apply_exponent(self.conductor as u64 - 1)
    }

    /// Field norm down to Q, as the resultant of the cyclotomic polynomial
    /// with this element's numerator polynomial.
    pub fn norm_to_rationals(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let d = self.num.len();
        if d == 1 {
            return self.coeff(0);
        }
        let m = modulus::modulus(self.conductor);
        let res = poly::resultant(&m.coeffs, &self.num);
        BigRational::new(res, num_traits::pow(self.den.clone(), d))
    }

    /// The same number written over a multiple of the conductor.
    pub fn embed(&self, target: u32) -> Result<CycNum, CycloError> {
        if target == 0 || target % self.conductor != 0 {
            return Err(CycloError::NotDivisible {
                from: self.conductor,
                to: target,
            });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let ratio = (target / self.conductor) as usize;
        let mut v = vec![BigInt::zero(); core::cmp::max(target as usize, phi(target))];
        for (j, c) in self.num.iter().enumerate() {
            v[j * ratio] = c.clone();
        }
        Ok(CycNum::from_raw(target, v, self.den.clone()))
    }

    /// Rewrites over a divisor `target` of the conductor, when the number
    /// lies in that subfield.
    pub fn project(&self, target: u32) -> Result<Option<CycNum>, CycloError> {
        if target == 0 || self.conductor % target != 0 {
            return Err(CycloError::NotDivisible {
                from: target,
                to: self.conductor,
            });
        }
        Ok(project::project(self, target))
    }

    /// Smallest conductor whose field contains this number.
    pub fn minimal_conductor(&self) -> u32 {
        let mut best = self.conductor;
        for d in arith::divisors(self.conductor as u64) {
            let d = d as u32;
            if d < best && matches!(self.project(d), Ok(Some(_))) {
                best = d;
                break;
            }
        }
        best
    }

    /// Recognises roots of unity: `Some((K, j))` with `self = ζ_K^j`,
    /// `K = lcm(2, M)`, by comparison against every candidate.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if !self.is_algebraic_integer() || self.is_zero() {
            return None;
        }
        let m = self.conductor as u64;
        let k = arith::lcm(2, m);
        for j in 0..k {
            let candidate = if k == m {
                CycNum::root_of_unity(self.conductor, j as i64)
            } else {
                // m odd: ζ_2m^j = (-1)^j ζ_m^(j(m+1)/2)
                let base = CycNum::root_of_unity(self.conductor, (j * m.div_ceil(2)) as i64);
                if j % 2 == 1 {
                    -base
                } else {
                    base
                }
            };
            if candidate == *self {
                return Some(RootOfUnity {
                    order: k as u32,
                    exponent: j as u32,
                });
            }
        }
        None
    }

    /// Floating-point value under `ζ_M = exp(2πi/M)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.conductor as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = BigRational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or_else(|| c.to_f64().unwrap_or(0.0) / den);
            let ang = 2.0 * core::f64::consts::PI * j as f64 / m;
            re += x * libm::cos(ang);
            im += x * libm::sin(ang);
        }
        Complex64::new(re, im)
    }

    /// Canonical text form `M:[c0,c1,...]` with rationals as `p/q` or `n`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn check_conductor(a: u32, b: u32) -> Result<(), CycloError> {
    if a != b {
        Err(CycloError::ConductorMismatch(a, b))
    } else {
        Ok(())
    }
}

/// Canonical text form of a rational: `n` or `p/q`, `q > 1`, lowest terms.
pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the canonical rational form, rejecting anything not in lowest
/// terms (`4/2`, `3/1`, `1/-2`, `-0`, leading `+`).
pub fn parse_rational(s: &str) -> Result<BigRational, CycloError> {
    let bad = || CycloError::Parse(alloc::format!("non-canonical rational {s:?}"));
    let parse_int = |t: &str, allow_sign: bool| -> Result<BigInt, CycloError> {
        let digits = t.strip_prefix('-').filter(|_| allow_sign).unwrap_or(t);
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || (digits.len() > 1 && digits.starts_with('0'))
        {
            return Err(bad());
        }
        let v: BigInt = t.parse().map_err(|_| bad())?;
        if t.starts_with('-') && v.is_zero() {
            return Err(bad());
        }
        Ok(v)
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s, true)?)),
        Some((p, q)) => {
            let p = parse_int(p, true)?;
            let q = parse_int(q, false)?;
            if q <= BigInt::one() || p.is_zero() || !p.gcd(&q).is_one() {
                return Err(bad());
            }
            Ok(BigRational::new_raw(p, q))
        }
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.conductor)?;
        for j in 0..self.num.len() {
            if j > 0 {
                f.write_str(",")?;
            }
            f.write_str(&render_rational(&self.coeff(j)))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CycNum {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, rest) = s
            .split_once(':')
            .ok_or_else(|| CycloError::Parse(s.to_string()))?;
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|_| CycloError::Parse(s.to_string()))?;
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| CycloError::Parse(s.to_string()))?;
        let coeffs = body
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        CycNum::new(m, coeffs)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            /// Panics when the conductors differ; use the `checked_` form to
            /// handle that case.
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).expect("cyclotomic conductor mismatch")
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests;
