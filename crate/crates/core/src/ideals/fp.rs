//! Polynomials over the prime field `F_p` and their factorization:
//! squarefree decomposition, distinct-degree splitting, then
//! Cantor–Zassenhaus equal-degree splitting with a fixed seed.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{inv_mod, mul_mod_u64};

/// A polynomial over `F_p`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = FpPoly {
            p,
            c: coeffs.into_iter().map(|x| x % p).collect(),
        };
        out.trim();
        out
    }

    /// Reduces signed integer coefficients modulo `p`.
    pub fn from_signed(p: u64, coeffs: impl IntoIterator<Item = i128>) -> Self {
        let c = coeffs
            .into_iter()
            .map(|x| x.rem_euclid(p as i128) as u64)
            .collect();
        FpPoly::new(p, c)
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn inv(&self, a: u64) -> u64 {
        inv_mod(a, self.p).expect("nonzero element of a prime field")
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.inv(self.lc());
        FpPoly {
            p: self.p,
            c: self.c.iter().map(|&x| mul_mod_u64(x, li, self.p)).collect(),
        }
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = *self.c.get(i).unwrap_or(&0) as u128;
                let b = *o.c.get(i).unwrap_or(&0) as u128;
                ((a + b) % self.p as u128) as u64
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = *self.c.get(i).unwrap_or(&0) as u128;
                let b = *o.c.get(i).unwrap_or(&0) as u128;
                ((a + self.p as u128 - b) % self.p as u128) as u64
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|x| x as u64).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let dl = d.c.len();
        let li = self.inv(d.lc());
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = mul_mod_u64(r[k + dl - 1], li, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &dc) in d.c.iter().enumerate() {
                let sub = mul_mod_u64(coef, dc, p);
                r[k + j] = (r[k + j] + p - sub) % p;
            }
        }
        r.truncate(dl - 1);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| mul_mod_u64(x, i as u64 % self.p, self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// For a polynomial in `x^p`, the polynomial `g` with `g(x)^p = self`.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.c.iter().step_by(p).cloned().collect())
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = self.degree();
        if self.is_zero() || n == 0 {
            return false;
        }
        let f = self.monic();
        let x = FpPoly::x(self.p);
        let pb = BigUint::from(self.p);
        let frob = |k: usize| x.pow_mod(&pb.pow(k as u32), &f);
        if frob(n).sub(&x).rem(&f).is_zero() {
            for (q, _) in crate::arith::factor_u64(n as u64) {
                let h = frob(n / q as usize).sub(&x);
                if !h.gcd(&f).is_one() {
                    return false;
                }
            }
            true
        } else {
            false
        }
    }
}

/// Canonical factor order: by degree, then coefficients ascending.
pub fn canonical_cmp(a: &FpPoly, b: &FpPoly) -> Ordering {
    a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c))
}

fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    let p = f.p;
    let d = f.derivative();
    if d.is_zero() {
        if f.degree() == 0 {
            return out;
        }
        for (g, e) in squarefree(&f.pth_root()) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0.monic();
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0.monic();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.divrem(&w).0.monic();
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in squarefree(&c.pth_root()) {
            out.push((g, e * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let p = f.p;
    let x = FpPoly::x(p);
    let pb = BigUint::from(p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree() >= 2 * i {
        h = h.pow_mod(&pb, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            out.push((g.clone(), i));
            rest = rest.divrem(&g).0.monic();
            h = h.rem(&rest);
        }
        i += 1;
    }
    if rest.degree() > 0 {
        let d = rest.degree();
        out.push((rest, d));
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, below: usize) -> FpPoly {
    let c = (0..below).map(|_| rng.next_u64() % p).collect();
    FpPoly::new(p, c)
}

fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    let n = f.degree();
    loop {
        let a = random_poly(rng, p, n);
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to F_2: a + a^2 + ... + a^(2^(d-1))
            let two = BigUint::from(2u32);
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.pow_mod(&two, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            a.pow_mod(&e, f).sub(&FpPoly::one(p))
        };
        let g = b.gcd(f);
        if g.degree() > 0 && g.degree() < n {
            let h = f.divrem(&g).0.monic();
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities, in canonical order.
pub fn factor(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    assert!(!f.is_zero(), "cannot factor zero");
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f_646b_6974 ^ f.p);
    let mut out = Vec::new();
    for (sq, e) in squarefree(&f.monic()) {
        for (block, d) in distinct_degree(&sq) {
            let mut parts = Vec::new();
            equal_degree(&block, d, &mut rng, &mut parts);
            out.extend(parts.into_iter().map(|g| (g, e)));
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    fn product(p: u64, fs: &[(FpPoly, u32)]) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, e)| {
            (0..*e).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn known_factorizations() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(factor(&poly(2, &[1, 0, 1])), vec![(poly(2, &[1, 1]), 2)]);
        // Φ_5 is inert at 2
        assert_eq!(
            factor(&poly(2, &[1, 1, 1, 1, 1])),
            vec![(poly(2, &[1, 1, 1, 1, 1]), 1)]
        );
        // Φ_5 ≡ (x - 1)^4 mod 5
        assert_eq!(
            factor(&poly(5, &[1, 1, 1, 1, 1])),
            vec![(poly(5, &[4, 1]), 4)]
        );
        // Φ_8 = x^4 + 1 splits into linear factors mod 17
        let f = factor(&poly(17, &[1, 0, 0, 0, 1]));
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|(g, e)| g.degree() == 1 && *e == 1));
    }

    #[test]
    fn mixed_multiplicities_reconstruct() {
        let p = 3;
        // (x+1)^3 (x^2+1)^2 (x+2): derivative-zero parts exercise the p-th root branch
        let a = poly(p, &[1, 1]);
        let b = poly(p, &[1, 0, 1]);
        let c = poly(p, &[2, 1]);
        let f = a.mul(&a).mul(&a).mul(&b).mul(&b).mul(&c);
        let fs = factor(&f);
        assert_eq!(product(p, &fs), f.monic());
        assert_eq!(fs, vec![(a, 3), (c, 1), (b, 2)]);
    }

    #[test]
    fn factors_are_irreducible_and_reconstruct() {
        for p in [2u64, 3, 5, 7, 11, 13, 29, 31] {
            for m in [3u32, 7, 8, 9, 12, 15, 16, 20, 21, 24, 60] {
                let phi = crate::cyclo::cyclotomic_poly(m);
                let f = FpPoly::from_signed(p, phi.iter().map(|c| i128::try_from(c).unwrap()));
                let fs = factor(&f);
                assert_eq!(product(p, &fs), f, "p={p} m={m}");
                assert!(fs.iter().all(|(g, _)| g.is_irreducible()), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn rabin_test() {
        assert!(poly(2, &[1, 1, 1]).is_irreducible());
        assert!(!poly(2, &[1, 0, 1]).is_irreducible());
        assert!(poly(7, &[1, 0, 1]).is_irreducible()); // -1 is a non-residue mod 7
        assert!(!poly(7, &[5, 0, 1]).is_irreducible()); // -5 = 2 = 3^2
    }
}
