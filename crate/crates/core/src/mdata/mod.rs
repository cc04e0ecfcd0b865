//! Modular data `(S, T)` and the quantities derived from it.
//!
//! `S` is the unnormalized S-matrix with `S_00 = 1`; `T` is stored as the
//! exponents `e_i` of `θ_i = ζ_M^{e_i}`, so `T` has finite order by
//! construction.

mod fusion;
mod galois;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::arith;
use crate::cyclo::{CycNum, CycloError, GaloisElement, RootOfUnity};
use crate::matrix::Matrix;

pub use fusion::{
    balancing_residual, fp_dimensions, fs_indicator, fs_indicators, invertibles, perron_dimensions,
    twist_equation_residual, verlinde_fusion, verlinde_values, FpDims, FusionError, FusionRules,
    Invertibles, Residual,
};
pub use galois::{
    galois_data, galois_data_with, galois_permutation, galois_symmetry_violation, normalized_pair,
    pair_relations, GaloisAction, GaloisData, NormalizedPair, PairRelations,
};

/// Structural problems with a datum's raw entries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("rank must be positive")]
    EmptyMatrix,
    #[error("S row {row} has {got} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("S[{i}][{j}] has conductor {found}, which does not divide {conductor}")]
    EntryConductor {
        i: usize,
        j: usize,
        found: u32,
        conductor: u32,
    },
    #[error("S[{i}][{j}] is not an algebraic integer")]
    NonIntegralEntry { i: usize, j: usize },
    #[error("S[0][0] must be 1")]
    UnitEntry,
    #[error("expected {expected} theta exponents, got {got}")]
    ThetaLength { expected: usize, got: usize },
    #[error("theta_0 must be 1 but has exponent {0}")]
    ThetaZero(i64),
}

/// Failures of derived computations, mostly signalling inadmissible input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MdataError {
    #[error("global dimension D^2 vanishes")]
    ZeroGlobalDimension,
    #[error("dimension S[0][{0}] vanishes")]
    ZeroDimension(usize),
    #[error("anomaly p+/p- = {0} is not a root of unity")]
    AnomalyNotRootOfUnity(String),
    #[error("Verlinde value N[{i}][{j}]^{k} = {value} is not a non-negative integer")]
    NonIntegralFusion {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },
    #[error("label {0} has no unique dual")]
    NoDual(usize),
    #[error("Galois image of character column {column} under a = {a} matches {matches} columns")]
    NoColumnMatch {
        a: u32,
        column: usize,
        matches: usize,
    },
    #[error("Galois action a = {a} has no consistent sign at label {label}")]
    GaloisSign { a: u32, label: usize },
    #[error("no twelfth root of unity x gives (st)^3 = s^2")]
    NoValidTwelfthRoot,
    #[error("D = {0} is not a positive real square root of D^2")]
    BadSquareRoot(String),
    #[error("no totally positive character column")]
    NoPositiveCharacter,
    #[error("fusion rules of rank {fusion} do not match datum rank {datum}")]
    RankMismatch { fusion: usize, datum: usize },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// A candidate modular datum over `Q(ζ_M)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModularDatum {
    name: String,
    s: Matrix,
    theta: Vec<u32>,
}

impl ModularDatum {
    /// Entries living in a subfield `Q(ζ_n)`, `n | M`, are embedded.
    /// Exponents are reduced modulo `M`.
    pub fn new(
        name: impl Into<String>,
        conductor: u32,
        s: Vec<Vec<CycNum>>,
        theta_exponents: &[i64],
    ) -> Result<Self, DatumError> {
        if conductor == 0 {
            return Err(DatumError::ZeroConductor);
        }
        let r = s.len();
        if r == 0 {
            return Err(DatumError::EmptyMatrix);
        }
        let mut rows = Vec::with_capacity(r);
        for (i, row) in s.into_iter().enumerate() {
            if row.len() != r {
                return Err(DatumError::NotSquare {
                    row: i,
                    expected: r,
                    got: row.len(),
                });
            }
            let mut out = Vec::with_capacity(r);
            for (j, e) in row.into_iter().enumerate() {
                let e = e.embed(conductor).map_err(|_| DatumError::EntryConductor {
                    i,
                    j,
                    found: e.conductor(),
                    conductor,
                })?;
                if !e.is_algebraic_integer() {
                    return Err(DatumError::NonIntegralEntry { i, j });
                }
                out.push(e);
            }
            rows.push(out);
        }
        if !rows[0][0].is_one() {
            return Err(DatumError::UnitEntry);
        }
        if theta_exponents.len() != r {
            return Err(DatumError::ThetaLength {
                expected: r,
                got: theta_exponents.len(),
            });
        }
        let theta: Vec<u32> = theta_exponents
            .iter()
            .map(|&e| arith::rem_euclid(e, conductor as u64) as u32)
            .collect();
        if theta[0] != 0 {
            return Err(DatumError::ThetaZero(theta_exponents[0]));
        }
        Ok(ModularDatum {
            name: name.into(),
            s: Matrix::from_rows(conductor, rows),
            theta,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn conductor(&self) -> u32 {
        self.s.conductor()
    }

    pub fn rank(&self) -> usize {
        self.s.size()
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn s_entry(&self, i: usize, j: usize) -> &CycNum {
        self.s.get(i, j)
    }

    /// Quantum dimension `d_j = S_0j`.
    pub fn dim(&self, j: usize) -> &CycNum {
        self.s.get(0, j)
    }

    pub fn dims(&self) -> Vec<CycNum> {
        self.s.row(0).to_vec()
    }

    /// Exponents in `[0, M)`.
    pub fn theta_exponents(&self) -> &[u32] {
        &self.theta
    }

    pub fn theta(&self, i: usize) -> CycNum {
        CycNum::root_of_unity(self.conductor(), self.theta[i] as i64)
    }

    /// `ord(T)`: the lcm of the orders of the twists.
    pub fn t_order(&self) -> u32 {
        let m = self.conductor() as u64;
        self.theta
            .iter()
            .fold(1u64, |acc, &e| arith::lcm(acc, m / arith::gcd(e as u64, m))) as u32
    }

    /// The same datum over `Q(ζ_target)`.
    pub fn embed(&self, target: u32) -> Result<Self, CycloError> {
        let m = self.conductor();
        if target == 0 || target % m != 0 {
            return Err(CycloError::NotDivisible {
                from: m,
                to: target,
            });
        }
        Ok(ModularDatum {
            name: self.name.clone(),
            s: self.s.embed(target)?,
            theta: self.theta.iter().map(|&e| e * (target / m)).collect(),
        })
    }

    /// Applies `σ_a` to every entry of `S` and `T`.
    pub fn galois_twist(&self, a: i64) -> Result<Self, CycloError> {
        let g = GaloisElement::new(self.conductor(), a)?;
        let m = self.conductor() as u64;
        let ae = g.exponent() as u64;
        let mut out = ModularDatum {
            name: self.name.clone(),
            s: self.s.galois(&g)?,
            theta: self
                .theta
                .iter()
                .map(|&e| (e as u64 * ae % m) as u32)
                .collect(),
        };
        out.name = alloc::format!("{}~g{}", self.name, g.exponent());
        Ok(out)
    }

    /// Replaces one `S` entry; used to build mutants.
    pub fn with_s_entry(&self, i: usize, j: usize, value: CycNum) -> Result<Self, DatumError> {
        let mut rows = self.s.rows();
        rows[i][j] = value;
        let theta: Vec<i64> = self.theta.iter().map(|&e| e as i64).collect();
        Self::new(self.name.clone(), self.conductor(), rows, &theta)
    }

    pub fn with_theta_exponent(&self, i: usize, e: i64) -> Result<Self, DatumError> {
        let mut theta: Vec<i64> = self.theta.iter().map(|&e| e as i64).collect();
        theta[i] = e;
        Self::new(self.name.clone(), self.conductor(), self.s.rows(), &theta)
    }

    pub fn with_rows_swapped(&self, a: usize, b: usize) -> Result<Self, DatumError> {
        let mut rows = self.s.rows();
        rows.swap(a, b);
        let theta: Vec<i64> = self.theta.iter().map(|&e| e as i64).collect();
        Self::new(self.name.clone(), self.conductor(), rows, &theta)
    }
}

/// Exact scalars attached to a datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedScalars {
    pub dims: Vec<CycNum>,
    pub global_dim: CycNum,
    pub p_plus: CycNum,
    pub p_minus: CycNum,
    pub anomaly: RootOfUnity,
    pub t_order: u32,
}

/// `D² = Σ d_i²`.
pub fn global_dimension(md: &ModularDatum) -> CycNum {
    md.s.row(0)
        .iter()
        .fold(CycNum::zero(md.conductor()), |acc, d| &acc + &(d * d))
}

/// Gauss sums `p^± = Σ d_i² θ_i^{±1}`.
pub fn gauss_sums(md: &ModularDatum) -> (CycNum, CycNum) {
    let m = md.conductor();
    let mut plus = CycNum::zero(m);
    let mut minus = CycNum::zero(m);
    for (i, d) in md.s.row(0).iter().enumerate() {
        let d2 = d * d;
        let e = md.theta[i] as i64;
        plus = &plus + &d2.mul_root(e);
        minus = &minus + &d2.mul_root(-e);
    }
    (plus, minus)
}

/// `p^+ / p^-`, if that quotient is defined and a root of unity.
pub fn anomaly(md: &ModularDatum) -> Result<RootOfUnity, MdataError> {
    let (plus, minus) = gauss_sums(md);
    if minus.is_zero() {
        return Err(MdataError::AnomalyNotRootOfUnity("undefined".to_string()));
    }
    let q = plus.checked_div(&minus)?;
    q.as_root_of_unity()
        .map(|r| r.reduced())
        .ok_or_else(|| MdataError::AnomalyNotRootOfUnity(q.render()))
}

pub fn derived_scalars(md: &ModularDatum) -> Result<DerivedScalars, MdataError> {
    let (p_plus, p_minus) = gauss_sums(md);
    Ok(DerivedScalars {
        dims: md.dims(),
        global_dim: global_dimension(md),
        anomaly: anomaly(md)?,
        p_plus,
        p_minus,
        t_order: md.t_order(),
    })
}

#[cfg(test)]
mod tests;
