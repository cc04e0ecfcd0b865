//! Fusion rules: Verlinde evaluation, balancing and twist identities,
//! Frobenius-Schur indicators, FP-dimensions and invertible objects.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use super::{gauss_sums, global_dimension, MdataError, ModularDatum};
use crate::cyclo::CycNum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("tensor has {got} entries, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("label {0} has no unique dual")]
    NoDual(usize),
    #[error("fusion symmetry fails at ({i}, {j}, {k})")]
    Symmetry { i: usize, j: usize, k: usize },
    #[error("associativity fails at ({i}, {j}, {k}, {l})")]
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    #[error("dual map is not an involution fixing 0")]
    BadDual,
}

/// Structure constants `N_ij^k` of a based ring with unit label 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionRules {
    rank: usize,
    n: Vec<u32>,
    dual: Vec<usize>,
}

impl FusionRules {
    /// `tensor[(i * r + j) * r + k] = N_ij^k`. The dual of `i` is the unique
    /// `j` with `N_ij^0 = 1`.
    pub fn new(rank: usize, tensor: Vec<u32>) -> Result<Self, FusionError> {
        if tensor.len() != rank * rank * rank {
            return Err(FusionError::WrongSize {
                expected: rank * rank * rank,
                got: tensor.len(),
            });
        }
        let at = |i: usize, j: usize, k: usize| tensor[(i * rank + j) * rank + k];
        let mut dual = Vec::with_capacity(rank);
        for i in 0..rank {
            let partners: Vec<usize> = (0..rank).filter(|&j| at(i, j, 0) != 0).collect();
            if partners.len() != 1 || at(i, partners[0], 0) != 1 {
                return Err(FusionError::NoDual(i));
            }
            dual.push(partners[0]);
        }
        Ok(FusionRules {
            rank,
            n: tensor,
            dual,
        })
    }

    pub fn from_fn(
        rank: usize,
        mut f: impl FnMut(usize, usize, usize) -> u32,
    ) -> Result<Self, FusionError> {
        let mut t = Vec::with_capacity(rank * rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    t.push(f(i, j, k));
                }
            }
        }
        Self::new(rank, t)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn is_self_dual(&self, i: usize) -> bool {
        self.dual[i] == i
    }

    pub fn tensor(&self) -> &[u32] {
        &self.n
    }

    /// `(L_i)_{jk} = N_ij^k`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<u32>> {
        (0..self.rank)
            .map(|j| (0..self.rank).map(|k| self.get(i, j, k)).collect())
            .collect()
    }

    /// `‖N_i‖_max`, the largest entry of the fusion matrix of `i`.
    pub fn max_entry(&self, i: usize) -> u32 {
        (0..self.rank)
            .flat_map(|j| (0..self.rank).map(move |k| (j, k)))
            .map(|(j, k)| self.get(i, j, k))
            .max()
            .unwrap_or(0)
    }

    /// The product `i ⊗ j` as text, e.g. `1 x 1 = 0 + 1`.
    pub fn describe_product(&self, i: usize, j: usize) -> String {
        let terms: Vec<String> = (0..self.rank)
            .filter(|&k| self.get(i, j, k) != 0)
            .map(|k| match self.get(i, j, k) {
                1 => format!("{k}"),
                c => format!("{c}*{k}"),
            })
            .collect();
        format!("{i} x {j} = {}", terms.join(" + "))
    }

    /// Checks the dual involution, the fusion symmetries and associativity.
    pub fn check_invariants(&self) -> Result<(), FusionError> {
        let r = self.rank;
        let d = &self.dual;
        if d[0] != 0 || (0..r).any(|i| d[d[i]] != i) {
            return Err(FusionError::BadDual);
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = self.get(i, j, k);
                    if v != self.get(j, i, k)
                        || v != self.get(i, d[k], d[j])
                        || v != self.get(d[i], d[j], d[k])
                    {
                        return Err(FusionError::Symmetry { i, j, k });
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u64 = (0..r)
                            .map(|m| self.get(i, j, m) as u64 * self.get(m, k, l) as u64)
                            .sum();
                        let rhs: u64 = (0..r)
                            .map(|m| self.get(j, k, m) as u64 * self.get(i, m, l) as u64)
                            .sum();
                        if lhs != rhs {
                            return Err(FusionError::Associativity { i, j, k, l });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn inverses_of_dims(md: &ModularDatum) -> Result<Vec<CycNum>, MdataError> {
    md.s()
        .row(0)
        .iter()
        .enumerate()
        .map(|(a, d)| d.inverse().map_err(|_| MdataError::ZeroDimension(a)))
        .collect()
}

fn inverse_global_dimension(md: &ModularDatum) -> Result<CycNum, MdataError> {
    global_dimension(md)
        .inverse()
        .map_err(|_| MdataError::ZeroGlobalDimension)
}

/// Exact Verlinde values `(1/D²) Σ_a S_ia S_ja conj(S_ka) / S_0a`, indexed
/// `(i * r + j) * r + k`.
pub fn verlinde_values(md: &ModularDatum) -> Result<Vec<CycNum>, MdataError> {
    let r = md.rank();
    let s = md.s();
    let inv_d2 = inverse_global_dimension(md)?;
    let inv_d = inverses_of_dims(md)?;
    // w[k][a] = conj(S_ka) / (S_0a D²)
    let w: Vec<Vec<CycNum>> = (0..r)
        .map(|k| {
            (0..r)
                .map(|a| &(&s.get(k, a).conj() * &inv_d[a]) * &inv_d2)
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(r * r * r);
    for i in 0..r {
        for j in 0..r {
            let sij: Vec<CycNum> = (0..r).map(|a| s.get(i, a) * s.get(j, a)).collect();
            for wk in &w {
                let v = sij
                    .iter()
                    .zip(wk)
                    .fold(CycNum::zero(md.conductor()), |acc, (x, y)| &acc + &(x * y));
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Fusion rules via the Verlinde formula; every value must be a
/// non-negative integer and every label must have a unique dual.
pub fn verlinde_fusion(md: &ModularDatum) -> Result<FusionRules, MdataError> {
    let r = md.rank();
    let values = verlinde_values(md)?;
    let mut tensor = Vec::with_capacity(values.len());
    for (idx, v) in values.iter().enumerate() {
        let n = v
            .to_integer()
            .filter(|n| !n.is_negative())
            .and_then(|n| n.to_u32());
        match n {
            Some(n) => tensor.push(n),
            None => {
                return Err(MdataError::NonIntegralFusion {
                    i: idx / (r * r),
                    j: (idx / r) % r,
                    k: idx % r,
                    value: v.render(),
                })
            }
        }
    }
    FusionRules::new(r, tensor).map_err(|e| match e {
        FusionError::NoDual(i) => MdataError::NoDual(i),
        _ => unreachable!("tensor size is r^3"),
    })
}

fn check_rank(md: &ModularDatum, fr: &FusionRules) -> Result<(), MdataError> {
    if md.rank() != fr.rank() {
        return Err(MdataError::RankMismatch {
            fusion: fr.rank(),
            datum: md.rank(),
        });
    }
    Ok(())
}

/// A failed entrywise identity `lhs = rhs` at `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub i: usize,
    pub j: usize,
    pub lhs: CycNum,
    pub rhs: CycNum,
}

/// Pairs `(i, j)` violating `θ_iθ_j S_ij = Σ_k N_{i*j}^k d_k θ_k`.
pub fn balancing_residual(
    md: &ModularDatum,
    fr: &FusionRules,
) -> Result<Vec<Residual>, MdataError> {
    check_rank(md, fr)?;
    let r = md.rank();
    let th = md.theta_exponents();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let lhs = md.s_entry(i, j).mul_root(th[i] as i64 + th[j] as i64);
            let mut rhs = CycNum::zero(md.conductor());
            for k in 0..r {
                let n = fr.get(fr.dual(i), j, k);
                if n != 0 {
                    rhs = &rhs + &md.dim(k).mul_root(th[k] as i64).scale_int(n as i64);
                }
            }
            if lhs != rhs {
                out.push(Residual { i, j, lhs, rhs });
            }
        }
    }
    Ok(out)
}

/// Pairs `(j, k)` violating `p⁺ S_jk = θ_jθ_k Σ_i θ_i S_ij S_ik`.
pub fn twist_equation_residual(md: &ModularDatum) -> Vec<Residual> {
    let r = md.rank();
    let th = md.theta_exponents();
    let (p_plus, _) = gauss_sums(md);
    let mut out = Vec::new();
    for j in 0..r {
        for k in 0..r {
            let lhs = &p_plus * md.s_entry(j, k);
            let sum = (0..r).fold(CycNum::zero(md.conductor()), |acc, i| {
                &acc + &(md.s_entry(i, j) * md.s_entry(i, k)).mul_root(th[i] as i64)
            });
            let rhs = sum.mul_root(th[j] as i64 + th[k] as i64);
            if lhs != rhs {
                out.push(Residual {
                    i: j,
                    j: k,
                    lhs,
                    rhs,
                });
            }
        }
    }
    out
}

/// `ν_n(k)` for every label `k`.
pub fn fs_indicators(
    md: &ModularDatum,
    fr: &FusionRules,
    n: u64,
) -> Result<Vec<CycNum>, MdataError> {
    check_rank(md, fr)?;
    let r = md.rank();
    let m = md.conductor() as u64;
    let inv_d2 = inverse_global_dimension(md)?;
    let th = md.theta_exponents();
    let nm = n % m;
    // term[i][j] = d_i d_j (θ_i/θ_j)^n
    let mut term = vec![vec![CycNum::zero(md.conductor()); r]; r];
    for (i, row) in term.iter_mut().enumerate() {
        for (j, t) in row.iter_mut().enumerate() {
            let e = (nm * ((th[i] as u64 + m - th[j] as u64) % m)) % m;
            *t = (md.dim(i) * md.dim(j)).mul_root(e as i64);
        }
    }
    Ok((0..r)
        .map(|k| {
            let mut acc = CycNum::zero(md.conductor());
            for i in 0..r {
                for j in 0..r {
                    let c = fr.get(i, j, k);
                    if c != 0 {
                        acc = &acc + &term[i][j].scale_int(c as i64);
                    }
                }
            }
            &acc * &inv_d2
        })
        .collect())
}

/// `ν_n(k) = (1/D²) Σ_{i,j} N_ij^k d_i d_j (θ_i/θ_j)^n`.
pub fn fs_indicator(
    md: &ModularDatum,
    fr: &FusionRules,
    n: u64,
    k: usize,
) -> Result<CycNum, MdataError> {
    Ok(fs_indicators(md, fr, n)?.swap_remove(k))
}

/// Frobenius-Perron dimensions, normalized so the unit has dimension 1.
///
/// Every entry of `Σ_i L_i` is positive, so its Perron vector is the
/// unique positive common eigenvector of the fusion matrices.
pub fn perron_dimensions(fr: &FusionRules) -> Vec<f64> {
    let r = fr.rank();
    let mut a = vec![vec![0.0f64; r]; r];
    for i in 0..r {
        for (j, row) in a.iter_mut().enumerate() {
            for (k, x) in row.iter_mut().enumerate() {
                *x += fr.get(i, j, k) as f64;
            }
        }
    }
    let mut v = vec![1.0f64; r];
    for _ in 0..100_000 {
        let mut w: Vec<f64> = a
            .iter()
            .zip(&v)
            .map(|(row, vi)| vi + row.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>())
            .collect();
        let w0 = w[0];
        for x in w.iter_mut() {
            *x /= w0;
        }
        let delta = w
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        v = w;
        if delta < 1e-15 {
            break;
        }
    }
    v
}

/// FP-dimensions and the character realising them.
#[derive(Debug, Clone, PartialEq)]
pub struct FpDims {
    pub dims: Vec<f64>,
    /// Label `a` whose character `S_ia / S_0a` is totally positive.
    pub label: usize,
    /// `FPdim(C) = D² / d_a²`, exactly.
    pub global: CycNum,
    pub pseudo_unitary: bool,
}

pub fn fp_dimensions(md: &ModularDatum, fr: &FusionRules) -> Result<FpDims, MdataError> {
    check_rank(md, fr)?;
    let r = md.rank();
    let dims = perron_dimensions(fr);
    let inv_d = inverses_of_dims(md)?;
    let mut best: Option<(usize, f64)> = None;
    for a in 0..r {
        let chars: Vec<CycNum> = (0..r).map(|i| md.s_entry(i, a) * &inv_d[a]).collect();
        if !chars.iter().all(|c| c.is_real()) {
            continue;
        }
        let vals: Vec<f64> = chars.iter().map(|c| c.to_complex().re).collect();
        if vals.iter().any(|&x| x <= 0.0) {
            continue;
        }
        let err = vals
            .iter()
            .zip(&dims)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        if best.is_none_or(|(_, e)| err < e) {
            best = Some((a, err));
        }
    }
    let (label, _) = best.ok_or(MdataError::NoPositiveCharacter)?;
    let d2 = global_dimension(md);
    let da = md.dim(label);
    let global = d2.checked_div(&(da * da))?;
    Ok(FpDims {
        dims,
        label,
        pseudo_unitary: global == d2,
        global,
    })
}

/// The group of invertible objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invertibles {
    pub labels: Vec<usize>,
    /// `|G(C)|`.
    pub order: usize,
    /// `|Ω₂G(C)|`: invertibles of order at most 2.
    pub two_torsion: usize,
}

/// Labels `i` with `i ⊗ i* = 0` exactly.
pub fn invertibles(fr: &FusionRules) -> Invertibles {
    let r = fr.rank();
    let labels: Vec<usize> = (0..r)
        .filter(|&i| (0..r).map(|k| fr.get(i, fr.dual(i), k)).sum::<u32>() == 1)
        .collect();
    let two_torsion = labels.iter().filter(|&&i| fr.is_self_dual(i)).count();
    Invertibles {
        order: labels.len(),
        two_torsion,
        labels,
    }
}
