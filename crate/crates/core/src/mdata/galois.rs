//! Galois permutations of labels and normalized modular pairs.

use alloc::vec::Vec;

use super::fusion::FusionRules;
use super::{anomaly, gauss_sums, global_dimension, MdataError, ModularDatum};
use crate::arith;
use crate::cyclo::{CycNum, GaloisElement, RootOfUnity};
use crate::matrix::Matrix;

/// `σ̂_a` for `a ∈ (Z/M)^*`: the label permutation with
/// `σ_a(φ_b) = φ_{σ̂_a(b)}`, where `φ_b(i) = S_ib / S_0b`.
pub fn galois_permutation(md: &ModularDatum, a: i64) -> Result<Vec<usize>, MdataError> {
    let g = GaloisElement::new(md.conductor(), a)?;
    let r = md.rank();
    let columns = character_columns(md)?;
    let mut perm = Vec::with_capacity(r);
    for (b, col) in columns.iter().enumerate() {
        let image = col
            .iter()
            .map(|c| c.galois_apply(&g))
            .collect::<Result<Vec<_>, _>>()?;
        let hits: Vec<usize> = (0..r).filter(|&c| columns[c] == image).collect();
        if hits.len() != 1 {
            return Err(MdataError::NoColumnMatch {
                a: g.exponent(),
                column: b,
                matches: hits.len(),
            });
        }
        perm.push(hits[0]);
    }
    let mut seen = perm.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != r {
        return Err(MdataError::NoColumnMatch {
            a: g.exponent(),
            column: 0,
            matches: 0,
        });
    }
    Ok(perm)
}

/// `columns[b][i] = φ_b(i) = S_ib / S_0b`.
fn character_columns(md: &ModularDatum) -> Result<Vec<Vec<CycNum>>, MdataError> {
    let r = md.rank();
    (0..r)
        .map(|b| {
            let inv = md
                .dim(b)
                .inverse()
                .map_err(|_| MdataError::ZeroDimension(b))?;
            Ok((0..r).map(|i| md.s_entry(i, b) * &inv).collect())
        })
        .collect()
}

/// A normalized modular pair `(s, t) = (S/D, T/y)` over `Q(ζ_{M'})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPair {
    pub conductor: u32,
    /// The positive square root of `D²`.
    pub d: CycNum,
    /// Sign with `D = γ p⁺ / ζ³`, `ζ` the chosen sixth root of the anomaly.
    pub gamma: i8,
    pub s: Matrix,
    /// `t_i = ζ_{M'}^{t[i]}`.
    pub t: Vec<u32>,
    pub y: RootOfUnity,
    /// `x = ζ_12^x_index` is the first twelfth root in `0..12` that works.
    pub x_index: u32,
    /// `ord(t)`.
    pub order: u32,
}

impl NormalizedPair {
    pub fn t_entry(&self, i: usize) -> CycNum {
        CycNum::root_of_unity(self.conductor, self.t[i] as i64)
    }
}

pub fn normalized_pair(md: &ModularDatum) -> Result<NormalizedPair, MdataError> {
    let m = md.conductor();
    let n_t = md.t_order();
    let anom = anomaly(md)?;
    // ζ = ζ_{6K}^j is a sixth root of the anomaly ζ_K^j
    let six_k = 6 * anom.order;
    let big = arith::lcm(arith::lcm(12 * n_t as u64, m as u64), six_k as u64) as u32;
    let zeta_exp = (anom.exponent as u64 * (big / six_k) as u64 % big as u64) as i64;

    let (p_plus, _) = gauss_sums(md);
    let d2 = global_dimension(md);
    let inv_d2 = d2.inverse().map_err(|_| MdataError::ZeroGlobalDimension)?;
    let d0 = p_plus.embed(big)?.mul_root(-3 * zeta_exp);
    // D² ≥ 1 for real dimensions, so the sign is far from ambiguous
    let approx = d0.to_complex().re;
    if approx.abs() < 0.5 {
        return Err(MdataError::BadSquareRoot(d0.render()));
    }
    let gamma: i8 = if approx > 0.0 { 1 } else { -1 };
    let d = d0.scale_int(gamma as i64);
    if !d.is_real() || &d * &d != d2.embed(big)? {
        return Err(MdataError::BadSquareRoot(d.render()));
    }
    let inv_d = &d * &inv_d2.embed(big)?;
    let s = md.s().embed(big)?.scale(&inv_d);
    let s2 = s.mul(&s);

    let scale = big / m;
    for k in 0..12u32 {
        let shift = (k as i64) * (big / 12) as i64 - zeta_exp;
        let t: Vec<u32> = md
            .theta_exponents()
            .iter()
            .map(|&e| arith::rem_euclid(shift + (e * scale) as i64, big as u64) as u32)
            .collect();
        let st = s.mul_diagonal_roots(&t);
        if st.mul(&st).mul(&st) == s2 {
            let y_exp = arith::rem_euclid(zeta_exp - (k as i64) * (big / 12) as i64, big as u64);
            let y = RootOfUnity {
                order: big,
                exponent: y_exp as u32,
            }
            .reduced();
            let order = t.iter().fold(1u64, |acc, &e| {
                arith::lcm(acc, big as u64 / arith::gcd(e as u64, big as u64))
            }) as u32;
            return Ok(NormalizedPair {
                conductor: big,
                d,
                gamma,
                s,
                t,
                y,
                x_index: k,
                order,
            });
        }
    }
    Err(MdataError::NoValidTwelfthRoot)
}

/// Verdicts for the defining relations of a normalized pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairRelations {
    pub s4_identity: bool,
    pub st3_equals_s2: bool,
    /// `s² = C`, the charge-conjugation matrix `C_ij = δ_{i,j*}`.
    pub s2_charge_conjugation: bool,
    /// `N_T | n | 12 N_T`.
    pub order_divides: bool,
}

impl PairRelations {
    pub fn all(&self) -> bool {
        self.s4_identity && self.st3_equals_s2 && self.s2_charge_conjugation && self.order_divides
    }
}

pub fn pair_relations(md: &ModularDatum, fr: &FusionRules, pair: &NormalizedPair) -> PairRelations {
    let s2 = pair.s.mul(&pair.s);
    let st = pair.s.mul_diagonal_roots(&pair.t);
    let n_t = md.t_order();
    let charge = s2.as_permutation().is_some_and(|p| {
        fr.rank() == p.len() && p.iter().enumerate().all(|(i, &j)| fr.dual(i) == j)
    });
    PairRelations {
        s4_identity: s2.mul(&s2).is_identity(),
        st3_equals_s2: st.mul(&st).mul(&st) == s2,
        s2_charge_conjugation: charge,
        order_divides: pair.order % n_t == 0 && (12 * n_t) % pair.order == 0,
    }
}

/// `σ̂_a` and the signs `ε_a` with `σ_a(s_ij) = ε_a(i) s_{σ̂_a(i), j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisAction {
    /// `a ∈ (Z/M)^*`.
    pub exponent: u32,
    /// The lift of `a` to `(Z/M')^*` used for the signs.
    pub lift: u32,
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisData {
    pub conductor: u32,
    pub actions: Vec<GaloisAction>,
}

impl GaloisData {
    /// The action of `a`, reduced mod `M`.
    pub fn action(&self, a: i64) -> Option<&GaloisAction> {
        let c = self.conductor as u64;
        let a = arith::rem_euclid(a, c);
        self.actions.iter().find(|x| x.exponent as u64 % c == a)
    }

    pub fn perm(&self, a: i64) -> Option<&[usize]> {
        self.action(a).map(|x| x.perm.as_slice())
    }
}

/// Smallest `a' ≡ a (mod m)` that is a unit modulo `big`.
pub(crate) fn lift_unit(a: u64, m: u64, big: u64) -> u64 {
    let mut x = a % m;
    if x == 0 {
        x = m;
    }
    while arith::gcd(x, big) != 1 {
        x += m;
    }
    x
}

pub fn galois_data(md: &ModularDatum) -> Result<GaloisData, MdataError> {
    let pair = normalized_pair(md)?;
    galois_data_with(md, &pair)
}

pub fn galois_data_with(
    md: &ModularDatum,
    pair: &NormalizedPair,
) -> Result<GaloisData, MdataError> {
    let m = md.conductor() as u64;
    let big = pair.conductor as u64;
    let r = md.rank();
    let mut actions = Vec::new();
    for a in arith::units_mod(m) {
        let perm = galois_permutation(md, a as i64)?;
        let lift = lift_unit(a, m, big);
        let g = GaloisElement::new(pair.conductor, lift as i64)?;
        let sigma_s = pair.s.galois(&g)?;
        let mut signs = Vec::with_capacity(r);
        for (i, &pi) in perm.iter().enumerate() {
            let row: Vec<CycNum> = sigma_s.row(i).to_vec();
            let target = pair.s.row(pi);
            let sign = if row.as_slice() == target {
                1
            } else if row.iter().zip(target).all(|(x, y)| *x == -y) {
                -1
            } else {
                return Err(MdataError::GaloisSign {
                    a: a as u32,
                    label: i,
                });
            };
            signs.push(sign);
        }
        actions.push(GaloisAction {
            exponent: a as u32,
            lift: lift as u32,
            perm,
            signs,
        });
    }
    Ok(GaloisData {
        conductor: m as u32,
        actions,
    })
}

/// First `(a, i)` with `σ_a²(t_i) ≠ t_{σ̂_a(i)}`, over all `a ∈ (Z/M')^*`.
pub fn galois_symmetry_violation(
    md: &ModularDatum,
    pair: &NormalizedPair,
    data: &GaloisData,
) -> Result<Option<(u32, usize)>, MdataError> {
    let big = pair.conductor as u64;
    let m = md.conductor() as i64;
    for a in arith::units_mod(big) {
        let perm = data.perm(a as i64 % m).ok_or(MdataError::NoColumnMatch {
            a: a as u32,
            column: 0,
            matches: 0,
        })?;
        let a2 = arith::mul_mod_u64(a, a, big);
        for (i, &pi) in perm.iter().enumerate() {
            if arith::mul_mod_u64(pair.t[i] as u64, a2, big) != pair.t[pi] as u64 {
                return Ok(Some((a as u32, i)));
            }
        }
    }
    Ok(None)
}
