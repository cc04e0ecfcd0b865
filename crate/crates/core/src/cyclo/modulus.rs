//! Per-conductor reduction data, computed once and shared.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
#[cfg(feature = "std")]
use num_traits::One;
use num_traits::Zero;

use super::poly;
use crate::arith;

/// The cyclotomic polynomial of one conductor, prepared for reduction.
#[derive(Debug)]
pub struct CyclotomicModulus {
    pub conductor: u32,
    pub degree: usize,
    /// Ascending coefficients of the monic polynomial, `degree + 1` entries.
    pub coeffs: Vec<BigInt>,
    /// Nonzero coefficients below the leading term.
    pub(crate) tail: Vec<(usize, BigInt)>,
}

impl CyclotomicModulus {
    fn build(conductor: u32, coeffs: Vec<BigInt>) -> Self {
        let degree = coeffs.len() - 1;
        let tail = coeffs[..degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        CyclotomicModulus {
            conductor,
            degree,
            coeffs,
            tail,
        }
    }

    pub(crate) fn reduce(&self, v: &mut Vec<BigInt>) {
        poly::reduce_monic(v, self.degree, &self.tail);
    }
}

#[cfg(feature = "std")]
mod cache {
    use super::*;
    use std::collections::HashMap;
    use std::sync::{OnceLock, RwLock};

    static MODULI: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicModulus>>>> = OnceLock::new();

    fn table() -> &'static RwLock<HashMap<u32, Arc<CyclotomicModulus>>> {
        MODULI.get_or_init(|| RwLock::new(HashMap::new()))
    }

    pub fn get(m: u32) -> Arc<CyclotomicModulus> {
        if let Some(hit) = table().read().unwrap().get(&m) {
            return hit.clone();
        }
        let built = Arc::new(CyclotomicModulus::build(
            m,
            poly::compute_cyclotomic(m as u64),
        ));
        // Concurrent builders compute identical values; first insert wins.
        table().write().unwrap().entry(m).or_insert(built).clone()
    }

    pub fn insert(m: u32, coeffs: Vec<BigInt>) {
        let built = Arc::new(CyclotomicModulus::build(m, coeffs));
        table().write().unwrap().entry(m).or_insert(built);
    }

    pub fn snapshot() -> Vec<(u32, Vec<BigInt>)> {
        let mut out: Vec<_> = table()
            .read()
            .unwrap()
            .iter()
            .map(|(m, v)| (*m, v.coeffs.clone()))
            .collect();
        out.sort_by_key(|(m, _)| *m);
        out
    }
}

/// The reduction modulus for conductor `m`.
pub fn modulus(m: u32) -> Arc<CyclotomicModulus> {
    assert!(m >= 1, "conductor must be positive");
    #[cfg(feature = "std")]
    {
        cache::get(m)
    }
    #[cfg(not(feature = "std"))]
    {
        Arc::new(CyclotomicModulus::build(
            m,
            poly::compute_cyclotomic(m as u64),
        ))
    }
}

/// Seeds the cache with a previously computed cyclotomic polynomial.
///
/// The polynomial is accepted only if it is monic of degree `phi(m)`,
/// divides `x^m - 1`, and shares no root with `x^(m/p) - 1` for any prime
/// `p | m`; returns whether it was accepted.
#[cfg(feature = "std")]
pub fn preload_cyclotomic(m: u32, coeffs: Vec<BigInt>) -> bool {
    if m == 0 || coeffs.len() as u64 != arith::euler_phi(m as u64) + 1 {
        return false;
    }
    if !coeffs.last().is_some_and(|c| c.is_one()) {
        return false;
    }
    // x^m - 1 reduced modulo the candidate must vanish.
    let probe = CyclotomicModulus::build(m, coeffs.clone());
    let mut v = alloc::vec![BigInt::zero(); m as usize + 1];
    v[0] = -BigInt::one();
    v[m as usize] = BigInt::one();
    probe.reduce(&mut v);
    if v.iter().any(|c| !c.is_zero()) {
        return false;
    }
    // A divisor of x^m - 1 coprime to every x^(m/p) - 1 contains no Phi_d
    // with d a proper divisor of m.
    for p in arith::prime_divisors(m as u64) {
        let k = (m as u64 / p) as usize;
        let mut w = alloc::vec![BigInt::zero(); k + 1];
        w[0] = -BigInt::one();
        w[k] = BigInt::one();
        if poly::resultant(&coeffs, &w).is_zero() {
            return false;
        }
    }
    cache::insert(m, coeffs);
    true
}

/// All cyclotomic polynomials computed so far, by conductor.
#[cfg(feature = "std")]
pub fn cached_cyclotomics() -> Vec<(u32, Vec<BigInt>)> {
    cache::snapshot()
}

pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    modulus(m).coeffs.clone()
}

pub fn phi(m: u32) -> usize {
    arith::euler_phi(m as u64) as usize
}
