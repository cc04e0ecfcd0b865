//! Dense univariate polynomials over Z and Q, ascending coefficient order.
//!
//! Only what the cyclotomic layer needs: the cyclotomic polynomials
//! themselves, reduction modulo a monic modulus, the subresultant resultant,
//! and the extended Euclidean algorithm over Q.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn degree<T>(p: &[T]) -> usize {
    p.len().saturating_sub(1)
}

/// Divides by `x^d - 1` in place; the division must be exact.
fn div_by_xd_minus_one(p: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut rem = p.to_vec();
    let n = rem.len() - 1;
    let mut q = vec![BigInt::zero(); n - d + 1];
    for k in (d..=n).rev() {
        let c = core::mem::take(&mut rem[k]);
        if !c.is_zero() {
            rem[k - d] += &c;
            q[k - d] = c;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    q
}

fn mul_by_xd_minus_one(p: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + d];
    for (i, c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// Computes the `m`-th cyclotomic polynomial as a product over divisors with
/// Möbius exponents, dividing exactly by the negative-exponent factors.
pub(crate) fn compute_cyclotomic(m: u64) -> Vec<BigInt> {
    let divs = arith::divisors(m);
    let mut acc = vec![BigInt::one()];
    for &d in &divs {
        if arith::mobius(m / d) == 1 {
            acc = mul_by_xd_minus_one(&acc, d as usize);
        }
    }
    for &d in &divs {
        if arith::mobius(m / d) == -1 {
            acc = div_by_xd_minus_one(&acc, d as usize);
        }
    }
    trim(&mut acc);
    acc
}

/// Reduces an integer coefficient vector modulo a monic polynomial, in place.
/// `terms` lists the nonzero coefficients of the modulus below its leading
/// term as `(index, value)`.
pub(crate) fn reduce_monic(v: &mut Vec<BigInt>, deg: usize, terms: &[(usize, BigInt)]) {
    if v.len() > deg {
        for k in (deg..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = core::mem::take(&mut v[k]);
            let shift = k - deg;
            for (i, t) in terms {
                v[shift + i] -= &c * t;
            }
        }
    }
    v.resize(deg, BigInt::zero());
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn scale_div(p: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    p.iter().map(|x| x / c).collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b);
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut e = degree(a) as i64 - db as i64 + 1;
    while !r.is_empty() && degree(&r) >= db {
        let lr = r.last().unwrap().clone();
        let shift = degree(&r) - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow(lb.clone(), e as usize);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant of two integer polynomials by the subresultant remainder
/// sequence (all divisions exact).
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut sign = BigInt::one();
    if degree(&a) < degree(&b) {
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut b);
    }
    if degree(&b) == 0 {
        return sign * num_traits::pow(b[0].clone(), degree(&a));
    }
    let ca = content(&a);
    let cb = content(&b);
    a = scale_div(&a, &ca);
    b = scale_div(&b, &cb);
    let t = num_traits::pow(ca, degree(&b)) * num_traits::pow(cb, degree(&a));
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = degree(&a) - degree(&b);
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = scale_div(&r, &divisor);
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1),
        };
        if degree(&b) == 0 {
            let da = degree(&a);
            let last = num_traits::pow(b[0].clone(), da);
            let h = if da == 1 {
                last
            } else {
                last / num_traits::pow(h, da - 1)
            };
            return sign * t * h;
        }
    }
}

fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = degree(b);
    let lb = b.last().unwrap().clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while !r.is_empty() && degree(&r) >= db {
        let c = r.last().unwrap() / &lb;
        let shift = degree(&r) - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    (q, r)
}

fn rat_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(if q.is_empty() || b.is_empty() {
        0
    } else {
        q.len() + b.len() - 1
    });
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, qc) in q.iter().enumerate() {
        if qc.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            out[i + j] -= qc * bc;
        }
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `modulus` over Q, or `None` if they share a factor.
pub(crate) fn rational_inverse_mod(
    a: &[BigRational],
    modulus: &[BigRational],
) -> Option<Vec<BigRational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = rat_divrem(&r0, &r1);
        let t = rat_sub_mul(&t0, &q, &t1);
        r0 = core::mem::replace(&mut r1, r);
        t0 = core::mem::replace(&mut t1, t);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = &r0[0];
    Some(t0.iter().map(|x| x / c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Sylvester-matrix determinant over Q: an independent resultant oracle.
    fn sylvester_resultant(a: &[i64], b: &[i64]) -> BigRational {
        let m = a.len() - 1;
        let n = b.len() - 1;
        let size = m + n;
        let mut mat = vec![vec![BigRational::zero(); size]; size];
        for row in 0..n {
            for (i, &c) in a.iter().rev().enumerate() {
                mat[row][row + i] = BigRational::from_integer(c.into());
            }
        }
        for row in 0..m {
            for (i, &c) in b.iter().rev().enumerate() {
                mat[n + row][row + i] = BigRational::from_integer(c.into());
            }
        }
        let mut det = BigRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let p = mat[col][col].clone();
            det *= &p;
            for r in col + 1..size {
                let f = &mat[r][col] / &p;
                if f.is_zero() {
                    continue;
                }
                for c in col..size {
                    let v = &f * &mat[col][c];
                    mat[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(compute_cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(compute_cyclotomic(2), ints(&[1, 1]));
        assert_eq!(compute_cyclotomic(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(compute_cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(compute_cyclotomic(16), ints(&[1, 0, 0, 0, 0, 0, 0, 0, 1]));
        // first coefficient outside {-1,0,1}
        let p105 = compute_cyclotomic(105);
        assert_eq!(p105.len(), 49);
        assert!(p105.iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn cyclotomic_product_is_xm_minus_one() {
        for m in 1..=40u64 {
            let mut acc = vec![BigInt::one()];
            for d in arith::divisors(m) {
                let f = compute_cyclotomic(d);
                let mut out = vec![BigInt::zero(); acc.len() + f.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                acc = out;
            }
            let mut expected = vec![BigInt::zero(); m as usize + 1];
            expected[0] = BigInt::from(-1);
            expected[m as usize] = BigInt::one();
            assert_eq!(acc, expected, "m = {m}");
        }
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases: &[(&[i64], &[i64])] = &[
            (&[1, 1, 1, 1, 1], &[1, -1]),
            (&[1, 1, 1, 1, 1], &[0, 0, -1, -1]),
            (&[1, 0, 0, 0, 0, 0, 0, 0, 1], &[3, 0, 2, -1, 0, 5]),
            (&[2, -3, 0, 7], &[-4, 1, 6]),
            (&[1, 0, -1, 0, 1], &[2, 1]),
            (&[5, 1], &[7, 0, 3]),
        ];
        for (a, b) in cases {
            let expected = sylvester_resultant(a, b);
            let got = resultant(&ints(a), &ints(b));
            assert_eq!(BigRational::from_integer(got), expected, "{a:?} {b:?}");
        }
    }

    #[test]
    fn norm_of_one_minus_zeta5() {
        // Norm(1 - zeta_p) = Phi_p(1) = p
        assert_eq!(
            resultant(&ints(&[1, 1, 1, 1, 1]), &ints(&[1, -1])),
            BigInt::from(5)
        );
    }
}
