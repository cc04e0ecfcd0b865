//! Restriction from `Q(ζ_M)` to a subfield `Q(ζ_n)`, `n | M`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{phi, CycNum};
use crate::arith;

/// Coordinates of the subfield basis: a set of `φ(n)` power-basis rows of
/// `Q(ζ_M)` on which the embedded basis `ζ_n^k` is invertible, and that
/// inverse.
struct Restriction {
    rows: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
}

fn build(m: u32, n: u32) -> Restriction {
    let dn = phi(n);
    let basis: Vec<Vec<BigRational>> = (0..dn)
        .map(|k| {
            CycNum::root_of_unity(n, k as i64)
                .embed(m)
                .expect("n divides m")
                .numerators()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    // Row-reduce the φ(n) x φ(M) matrix whose rows are the embedded basis to
    // find independent coordinates.
    let mut work = basis.clone();
    let mut rows = Vec::with_capacity(dn);
    let mut r = 0;
    for col in 0..phi(m) {
        if r == dn {
            break;
        }
        let Some(p) = (r..dn).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        let pv = work[r][col].clone();
        for i in r + 1..dn {
            let f = &work[i][col] / &pv;
            if f.is_zero() {
                continue;
            }
            for c in col..work[i].len() {
                let v = &f * &work[r][c];
                work[i][c] -= v;
            }
        }
        rows.push(col);
        r += 1;
    }
    debug_assert_eq!(rows.len(), dn);
    // Square system A x = y with A[i][k] = basis[k][rows[i]]; invert it.
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&row| (0..dn).map(|k| basis[k][row].clone()).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..dn)
        .map(|i| {
            let mut e = vec![BigRational::zero(); dn];
            e[i] = BigRational::one();
            e
        })
        .collect();
    for col in 0..dn {
        let p = (col..dn)
            .find(|&i| !a[i][col].is_zero())
            .expect("restriction matrix is invertible");
        a.swap(col, p);
        inv.swap(col, p);
        let pv = a[col][col].clone();
        for c in 0..dn {
            a[col][c] = &a[col][c] / &pv;
            inv[col][c] = &inv[col][c] / &pv;
        }
        for i in 0..dn {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for c in 0..dn {
                let va = &f * &a[col][c];
                a[i][c] -= va;
                let vi = &f * &inv[col][c];
                inv[i][c] -= vi;
            }
        }
    }
    Restriction { rows, inverse: inv }
}

#[cfg(feature = "std")]
fn restriction(m: u32, n: u32) -> Arc<Restriction> {
    use std::collections::HashMap;
    use std::sync::{OnceLock, RwLock};
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32), Arc<Restriction>>>> = OnceLock::new();
    let table = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(hit) = table.read().unwrap().get(&(m, n)) {
        return hit.clone();
    }
    let built = Arc::new(build(m, n));
    table
        .write()
        .unwrap()
        .entry((m, n))
        .or_insert(built)
        .clone()
}

#[cfg(not(feature = "std"))]
fn restriction(m: u32, n: u32) -> Arc<Restriction> {
    Arc::new(build(m, n))
}

pub(super) fn project(a: &CycNum, n: u32) -> Option<CycNum> {
    let m = a.conductor();
    if n == m {
        return Some(a.clone());
    }
    let ratio = (m / n) as usize;
    let same_radical = arith::prime_divisors(m as u64) == arith::prime_divisors(n as u64);
    if same_radical {
        // Here φ(M) = (M/n) φ(n): the embedded basis vectors are single
        // power-basis monomials.
        let nums = a.numerators();
        if nums
            .iter()
            .enumerate()
            .any(|(j, c)| j % ratio != 0 && !c.is_zero())
        {
            return None;
        }
        let sub: Vec<BigInt> = nums.iter().step_by(ratio).cloned().collect();
        return Some(CycNum::from_raw(n, sub, a.denominator().clone()));
    }
    let r = restriction(m, n);
    let y: Vec<BigRational> = r.rows.iter().map(|&row| a.coeff(row)).collect();
    let x: Vec<BigRational> = r
        .inverse
        .iter()
        .map(|row| {
            row.iter()
                .zip(&y)
                .fold(BigRational::zero(), |acc, (c, v)| acc + c * v)
        })
        .collect();
    let candidate = CycNum::new(n, x).ok()?;
    (candidate.embed(m).ok()? == *a).then_some(candidate)
}
