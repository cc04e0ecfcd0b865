//! Prime ideals of `Z[ζ_M]` in two-generator form `(p, g(ζ_M))`, where `g`
//! is a monic irreducible factor of the cyclotomic polynomial modulo `p`.
//!
//! Membership is decided by reducing an element's power-basis coordinates
//! modulo `p` and testing divisibility by `g` over `F_p`. Only radical
//! support is modelled; there are no valuations or ideal products.

pub mod fp;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::arith;
use crate::cyclo::{self, CycNum};
pub use fp::FpPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial vanishes modulo {0}")]
    ZeroModP(u64),
    #[error("element is not an algebraic integer")]
    NonIntegral,
    #[error("support of zero is undefined")]
    ZeroElement,
    #[error("integer must be positive")]
    ZeroInteger,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("prime factor {0} exceeds the supported 64-bit range")]
    PrimeTooLarge(String),
}

/// One irreducible factor of a polynomial modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePolyFactor {
    pub p: u64,
    pub poly: FpPoly,
    pub multiplicity: u32,
}

/// A maximal ideal `(p, g(ζ_M))` of `Z[ζ_M]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    conductor: u32,
    p: u64,
    generator: FpPoly,
}

impl PrimeIdeal {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Monic irreducible generator over `F_p`, ascending coefficients.
    pub fn generator(&self) -> &FpPoly {
        &self.generator
    }

    /// Residue degree: the residue field has `p^f` elements.
    pub fn residue_degree(&self) -> usize {
        self.generator.degree()
    }

    /// Generator as a polynomial in `x`, e.g. `x + 4`.
    pub fn generator_display(&self) -> String {
        let c = self.generator.coeffs();
        let mut terms = Vec::new();
        for (i, &a) in c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let t = match (i, a) {
                (0, _) => format!("{a}"),
                (1, 1) => String::from("x"),
                (1, _) => format!("{a}x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{a}x^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then(self.p.cmp(&other.p))
            .then_with(|| fp::canonical_cmp(&self.generator, &other.generator))
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as `(p; [g0,g1,...])`, coefficients in `[0, p)`, ascending.
impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; [", self.p)?;
        for (i, c) in self.generator.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("])")
    }
}

fn reduce_mod_p(p: u64, coeffs: &[BigInt]) -> FpPoly {
    let pb = BigInt::from(p);
    let c = coeffs
        .iter()
        .map(|x| x.mod_floor(&pb).to_u64().expect("residue below p"))
        .collect();
    FpPoly::new(p, c)
}

/// Factors an integer polynomial modulo a prime into monic irreducibles.
pub fn factor_mod_p(f: &[BigInt], p: u64) -> Result<Vec<PrimePolyFactor>, IdealError> {
    if !arith::is_prime_u64(p) {
        return Err(IdealError::NotPrime(p));
    }
    let fp = reduce_mod_p(p, f);
    if fp.is_zero() {
        return Err(IdealError::ZeroModP(p));
    }
    Ok(fp::factor(&fp)
        .into_iter()
        .map(|(poly, multiplicity)| PrimePolyFactor {
            p,
            poly,
            multiplicity,
        })
        .collect())
}

#[cfg(feature = "std")]
mod cache {
    use super::*;
    use std::collections::HashMap;
    use std::sync::{OnceLock, RwLock};

    type Table = RwLock<HashMap<(u64, u32), Arc<Vec<PrimePolyFactor>>>>;
    static FACTORS: OnceLock<Table> = OnceLock::new();

    pub fn table() -> &'static Table {
        FACTORS.get_or_init(|| RwLock::new(HashMap::new()))
    }
}

fn compute_decomposition(p: u64, m: u32) -> Vec<PrimePolyFactor> {
    factor_mod_p(&cyclo::cyclotomic_poly(m), p).expect("cyclotomic polynomials are monic")
}

/// Factorization of the `M`-th cyclotomic polynomial modulo `p`.
pub fn cyclotomic_decomposition(p: u64, m: u32) -> Result<Arc<Vec<PrimePolyFactor>>, IdealError> {
    if !arith::is_prime_u64(p) {
        return Err(IdealError::NotPrime(p));
    }
    #[cfg(feature = "std")]
    {
        if let Some(hit) = cache::table().read().unwrap().get(&(p, m)) {
            return Ok(hit.clone());
        }
        let built = Arc::new(compute_decomposition(p, m));
        Ok(cache::table()
            .write()
            .unwrap()
            .entry((p, m))
            .or_insert(built)
            .clone())
    }
    #[cfg(not(feature = "std"))]
    {
        Ok(Arc::new(compute_decomposition(p, m)))
    }
}

/// Seeds the factorization cache. The factors must be monic irreducibles
/// whose product with multiplicities is the cyclotomic polynomial mod `p`;
/// returns whether the entry was accepted.
#[cfg(feature = "std")]
pub fn preload_decomposition(p: u64, m: u32, factors: Vec<(Vec<u64>, u32)>) -> bool {
    if m == 0 || !arith::is_prime_u64(p) {
        return false;
    }
    let target = reduce_mod_p(p, &cyclo::cyclotomic_poly(m));
    let mut prod = FpPoly::one(p);
    let mut parsed = Vec::new();
    for (c, e) in factors {
        let g = FpPoly::new(p, c);
        if e == 0 || g.monic() != g || !g.is_irreducible() {
            return false;
        }
        for _ in 0..e {
            prod = prod.mul(&g);
        }
        parsed.push(PrimePolyFactor {
            p,
            poly: g,
            multiplicity: e,
        });
    }
    if prod != target {
        return false;
    }
    parsed.sort_by(|a, b| fp::canonical_cmp(&a.poly, &b.poly));
    cache::table()
        .write()
        .unwrap()
        .entry((p, m))
        .or_insert(Arc::new(parsed));
    true
}

/// Every cached decomposition as `(p, M, [(coeffs, multiplicity)])`.
#[cfg(feature = "std")]
pub fn cached_decompositions() -> Vec<(u64, u32, Vec<(Vec<u64>, u32)>)> {
    let mut out: Vec<_> = cache::table()
        .read()
        .unwrap()
        .iter()
        .map(|(&(p, m), fs)| {
            let list = fs
                .iter()
                .map(|f| (f.poly.coeffs().to_vec(), f.multiplicity))
                .collect();
            (p, m, list)
        })
        .collect();
    out.sort_by_key(|(p, m, _)| (*p, *m));
    out
}

/// The prime ideals of `Z[ζ_M]` above `p`, one per irreducible factor.
pub fn primes_above(p: u64, m: u32) -> Result<Vec<PrimeIdeal>, IdealError> {
    Ok(cyclotomic_decomposition(p, m)?
        .iter()
        .map(|f| PrimeIdeal {
            conductor: m,
            p,
            generator: f.poly.clone(),
        })
        .collect())
}

/// Whether `a` lies in the ideal.
pub fn contains(ideal: &PrimeIdeal, a: &CycNum) -> Result<bool, IdealError> {
    if a.conductor() != ideal.conductor {
        return Err(IdealError::ConductorMismatch(
            ideal.conductor,
            a.conductor(),
        ));
    }
    if !a.is_algebraic_integer() {
        return Err(IdealError::NonIntegral);
    }
    let r = reduce_mod_p(ideal.p, a.numerators());
    Ok(r.rem(&ideal.generator).is_zero())
}

fn prime_to_u64(p: &BigUint) -> Result<u64, IdealError> {
    p.to_u64()
        .ok_or_else(|| IdealError::PrimeTooLarge(format!("{p}")))
}

/// All prime ideals containing the nonzero algebraic integer `a`.
///
/// Only primes dividing the norm can occur, so the norm is factored first
/// and membership tested for each ideal above each of its prime divisors.
pub fn support(a: &CycNum) -> Result<BTreeSet<PrimeIdeal>, IdealError> {
    if a.is_zero() {
        return Err(IdealError::ZeroElement);
    }
    if !a.is_algebraic_integer() {
        return Err(IdealError::NonIntegral);
    }
    let norm = a.norm_to_rationals().to_integer();
    let abs = norm.magnitude().clone();
    let mut out = BTreeSet::new();
    for (p, _) in arith::factor_biguint(&abs) {
        let p = prime_to_u64(&p)?;
        for ideal in primes_above(p, a.conductor())? {
            if contains(&ideal, a)? {
                out.insert(ideal);
            }
        }
    }
    Ok(out)
}

/// All prime ideals of `Z[ζ_M]` above the rational prime divisors of `n`.
pub fn support_of_integer(n: u64, m: u32) -> Result<BTreeSet<PrimeIdeal>, IdealError> {
    if n == 0 {
        return Err(IdealError::ZeroInteger);
    }
    let mut out = BTreeSet::new();
    for p in arith::prime_divisors(n) {
        out.extend(primes_above(p, m)?);
    }
    Ok(out)
}

/// `a ≡ b (mod q)` in `Z[ζ_M]`: every coordinate of `a - b` divisible by `q`.
pub fn congruent_mod_q(a: &CycNum, b: &CycNum, q: u64) -> Result<bool, IdealError> {
    if a.conductor() != b.conductor() {
        return Err(IdealError::ConductorMismatch(a.conductor(), b.conductor()));
    }
    if !a.is_algebraic_integer() || !b.is_algebraic_integer() {
        return Err(IdealError::NonIntegral);
    }
    if q == 0 {
        return Err(IdealError::ZeroModulus);
    }
    let diff = a - b;
    let qb = BigInt::from(q);
    Ok(diff.numerators().iter().all(|c| (c % &qb).is_zero()))
}

/// Absolute value of the norm as a natural number (for integral input).
pub fn norm_magnitude(a: &CycNum) -> BigUint {
    let n = a.norm_to_rationals().to_integer();
    match n.sign() {
        Sign::NoSign => BigUint::zero(),
        _ => n.magnitude().clone(),
    }
}
