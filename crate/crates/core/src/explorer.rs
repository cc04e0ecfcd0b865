//! Rank bounds and the rational dimension-equation search.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Pow;
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error("rank must be at least {0}")]
    RankTooSmall(usize),
    #[error("prime set is empty")]
    NoPrimes,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent bound must be positive")]
    ZeroExponent,
    #[error("smooth numbers exceed 128 bits")]
    Overflow,
    #[error("sum has more than {0} terms")]
    TooManyTerms(u64),
}

/// `⌊2^{2r/3+8} 3^{2r/3}⌋ = ⌊∛(2^24 · 36^r)⌋`.
pub fn ord_t_bound(rank: usize) -> BigUint {
    let radicand = BigUint::from(2u8).pow(24u32) * BigUint::from(36u8).pow(rank as u32);
    radicand.cbrt()
}

/// Magnitude of a quantity too large to write out.
#[derive(Debug, Clone, PartialEq)]
pub struct Magnitude {
    pub log2: f64,
    /// `log2 · log10(2)`, the approximate decimal digit count.
    pub decimal_digits: f64,
    /// The exact value, when it has at most [`EXACT_DIGIT_LIMIT`] digits.
    pub exact: Option<BigUint>,
}

pub const EXACT_DIGIT_LIMIT: f64 = 1e6;

const LOG10_2: f64 = core::f64::consts::LOG10_2;

/// Rounds `x` up, treating values within relative `1e-12` of an integer as
/// that integer.
fn ceil_tolerant(x: f64) -> f64 {
    let r = libm::round(x);
    if libm::fabs(x - r) <= 1e-12 * libm::fmax(1.0, libm::fabs(x)) {
        r
    } else {
        libm::ceil(x)
    }
}

/// Exponent `⌈r³(φ(m)^{log₂ m} + φ(m)/2 + 1) − r/2⌉` of one summand.
fn evertse_exponent(rank: usize, m: u64, phi: u64) -> f64 {
    let r = rank as f64;
    let phi = phi as f64;
    let inner = libm::pow(phi, libm::log2(m as f64)) + phi / 2.0 + 1.0;
    ceil_tolerant(r * r * r * inner - r / 2.0)
}

fn base_log2(rank: usize) -> f64 {
    35.0 + 2.0 * libm::log2(rank as f64)
}

fn exact_power(rank: usize, e: f64) -> BigUint {
    let base = BigUint::from(2u8).pow(35u32) * BigUint::from(rank * rank);
    base.pow(e as u64)
}

/// The summand `(2^35 r²)^{⌈r³(φ(m)^{log₂ m} + φ(m)/2 + 1) − r/2⌉}`.
pub fn evertse_term(rank: usize, m: u64) -> Magnitude {
    let e = evertse_exponent(rank, m, arith::euler_phi(m));
    let log2 = e * base_log2(rank);
    let decimal_digits = log2 * LOG10_2;
    let exact = (decimal_digits <= EXACT_DIGIT_LIMIT).then(|| exact_power(rank, e));
    Magnitude {
        log2,
        decimal_digits,
        exact,
    }
}

/// Largest number of summands [`evertse_bound`] will evaluate.
pub const MAX_EVERTSE_TERMS: u64 = 1 << 24;

/// `phi[m]` for `m < n`.
fn totient_sieve(n: usize) -> Vec<u32> {
    let mut phi: Vec<u32> = (0..n as u32).collect();
    for p in 2..n {
        if phi[p] == p as u32 {
            for k in (p..n).step_by(p) {
                phi[k] -= phi[k] / p as u32;
            }
        }
    }
    phi
}

/// `Σ_{m=1}^{ord_t_bound(r)}` of [`evertse_term`], combined in log space.
pub fn evertse_bound(rank: usize) -> Result<Magnitude, ExplorerError> {
    if rank == 0 {
        return Err(ExplorerError::RankTooSmall(1));
    }
    let upper = u64::try_from(ord_t_bound(rank))
        .ok()
        .filter(|&u| u <= MAX_EVERTSE_TERMS)
        .ok_or(ExplorerError::TooManyTerms(MAX_EVERTSE_TERMS))?;
    let phi = totient_sieve(upper as usize + 1);
    let exponent = |m: u64| evertse_exponent(rank, m, phi[m as usize] as u64);
    let b = base_log2(rank);
    // streaming log-sum-exp: total = 2^max * scaled
    let mut max = f64::NEG_INFINITY;
    let mut scaled = 0.0;
    for m in 1..=upper {
        let l = exponent(m) * b;
        if l > max {
            scaled = scaled * libm::exp2(max - l) + 1.0;
            max = l;
        } else {
            scaled += libm::exp2(l - max);
        }
    }
    let log2 = max + libm::log2(scaled);
    let decimal_digits = log2 * LOG10_2;
    let exact = (decimal_digits <= EXACT_DIGIT_LIMIT)
        .then(|| (1..=upper).map(|m| exact_power(rank, exponent(m))).sum());
    Ok(Magnitude {
        log2,
        decimal_digits,
        exact,
    })
}

/// `⌊√b⌋`: the largest admissible fusion coefficient when `FPdim(C) ≤ b`.
pub fn fusion_entry_bound(fpdim_bound: f64, _rank: usize) -> u64 {
    let mut n = libm::floor(libm::sqrt(fpdim_bound)) as u64;
    while ((n + 1) * (n + 1)) as f64 <= fpdim_bound {
        n += 1;
    }
    while n > 0 && (n * n) as f64 > fpdim_bound {
        n -= 1;
    }
    n
}

/// `D² = 1 + Σ d_i²` with every term smooth over `primes`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimensionSolution {
    pub d2: u128,
    /// Nondecreasing `d_1², ..., d_{r-1}²`.
    pub dims_squared: Vec<u128>,
    /// The primes allowed in the search.
    pub primes: Vec<u64>,
}

impl DimensionSolution {
    /// Re-checks the equation, smoothness and properness exactly.
    pub fn verify(&self, max_exp: u32) -> bool {
        let primes = &self.primes;
        let sum = self
            .dims_squared
            .iter()
            .try_fold(1u128, |acc, &x| acc.checked_add(x));
        let mut terms: Vec<i128> = vec![self.d2 as i128, -1];
        terms.extend(self.dims_squared.iter().map(|&x| -(x as i128)));
        sum == Some(self.d2)
            && self.dims_squared.windows(2).all(|w| w[0] <= w[1])
            && is_smooth(self.d2, primes, max_exp)
            && self
                .dims_squared
                .iter()
                .all(|&x| is_smooth(x, primes, max_exp))
            && is_proper(&terms)
    }
}

/// Whether `n` factors over `primes` with every exponent at most `max_exp`.
pub fn is_smooth(mut n: u128, primes: &[u64], max_exp: u32) -> bool {
    if n == 0 {
        return false;
    }
    for &p in primes {
        let p = p as u128;
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
            if e > max_exp {
                return false;
            }
        }
    }
    n == 1
}

/// No nonempty proper sub-sum of `terms` vanishes.
pub fn is_proper(terms: &[i128]) -> bool {
    let positive = terms.iter().filter(|&&t| t > 0).count();
    let negative = terms.iter().filter(|&&t| t < 0).count();
    if terms.contains(&0) {
        return false;
    }
    // one term against the rest: a proper sub-sum has only one sign or
    // omits some of the opposing terms, so it cannot cancel
    if positive <= 1 || negative <= 1 {
        return true;
    }
    let n = terms.len();
    assert!(n <= 24, "subset check limited to 24 terms");
    let full = (1u32 << n) - 1;
    (1..full).all(|mask| {
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| terms[i])
            .sum::<i128>()
            != 0
    })
}

/// The finite search space for one enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpace {
    pub rank: usize,
    pub primes: Vec<u64>,
    pub max_exp: u32,
    /// All smooth numbers with exponents at most `max_exp`, ascending.
    pub values: Vec<u128>,
}

impl SearchSpace {
    pub fn new(rank: usize, primes: &[u64], max_exp: u32) -> Result<Self, ExplorerError> {
        if rank < 2 {
            return Err(ExplorerError::RankTooSmall(2));
        }
        if primes.is_empty() {
            return Err(ExplorerError::NoPrimes);
        }
        if max_exp == 0 {
            return Err(ExplorerError::ZeroExponent);
        }
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        if let Some(&p) = ps.iter().find(|&&p| !arith::is_prime_u64(p)) {
            return Err(ExplorerError::NotPrime(p));
        }
        let mut values = vec![1u128];
        for &p in &ps {
            let mut next = Vec::with_capacity(values.len() * (max_exp as usize + 1));
            for &v in &values {
                let mut x = v;
                next.push(x);
                for _ in 0..max_exp {
                    x = x.checked_mul(p as u128).ok_or(ExplorerError::Overflow)?;
                    next.push(x);
                }
            }
            values = next;
        }
        values.sort_unstable();
        // sums of up to `rank` values must fit
        let top = *values.last().expect("nonempty");
        top.checked_mul(rank as u128)
            .ok_or(ExplorerError::Overflow)?;
        Ok(SearchSpace {
            rank,
            primes: ps,
            max_exp,
            values,
        })
    }

    /// Number of independent partitions: one per choice of `d_1²`.
    pub fn partitions(&self) -> usize {
        self.values.len()
    }

    fn largest(&self) -> u128 {
        *self.values.last().expect("nonempty")
    }
}

/// Result of searching one partition, in canonical candidate order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionOutcome {
    pub first: usize,
    /// Candidates examined, at most the budget passed in.
    pub examined: u64,
    /// `(ordinal of the candidate within the partition, solution)`.
    pub hits: Vec<(u64, DimensionSolution)>,
    /// Whether the partition was cut off by its budget.
    pub truncated: bool,
}

struct Walker<'a> {
    space: &'a SearchSpace,
    budget: u64,
    examined: u64,
    truncated: bool,
    stack: Vec<usize>,
    hits: Vec<(u64, DimensionSolution)>,
}

impl Walker<'_> {
    /// Extends the tuple with indices `≥ from`; `sum` is `1 + Σ` so far.
    fn walk(&mut self, from: usize, sum: u128, remaining: usize) {
        let values = &self.space.values;
        let limit = self.space.largest();
        if remaining == 0 {
            if self.examined == self.budget {
                self.truncated = true;
                return;
            }
            self.examined += 1;
            if is_smooth(sum, &self.space.primes, self.space.max_exp) {
                let dims_squared: Vec<u128> = self.stack.iter().map(|&i| values[i]).collect();
                let mut terms: Vec<i128> = vec![sum as i128, -1];
                terms.extend(dims_squared.iter().map(|&x| -(x as i128)));
                if is_proper(&terms) {
                    self.hits.push((
                        self.examined - 1,
                        DimensionSolution {
                            d2: sum,
                            dims_squared,
                            primes: self.space.primes.clone(),
                        },
                    ));
                }
            }
            return;
        }
        for i in from..values.len() {
            // nondecreasing tail: the sum grows by at least remaining * v
            if sum + remaining as u128 * values[i] > limit {
                break;
            }
            self.stack.push(i);
            self.walk(i, sum + values[i], remaining - 1);
            self.stack.pop();
            if self.truncated {
                return;
            }
        }
    }
}

/// Searches tuples whose smallest entry is `values[first]`, examining at
/// most `budget` candidates.
pub fn search_partition(space: &SearchSpace, first: usize, budget: u64) -> PartitionOutcome {
    let mut w = Walker {
        space,
        budget,
        examined: 0,
        truncated: false,
        stack: vec![first],
        hits: Vec::new(),
    };
    let v = space.values[first];
    let remaining = space.rank - 2;
    if (remaining as u128 + 1) * v < space.largest() {
        w.walk(first, 1 + v, remaining);
    }
    PartitionOutcome {
        first,
        examined: w.examined,
        hits: w.hits,
        truncated: w.truncated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub solutions: Vec<DimensionSolution>,
    pub examined: u64,
    /// The candidate cap was reached before the search finished.
    pub partial: bool,
}

/// Combines partition outcomes as if they had run one after another in
/// order of `first`, sharing a single candidate budget.
pub fn merge_partitions(mut outcomes: Vec<PartitionOutcome>, cap: u64) -> EnumerationResult {
    outcomes.sort_by_key(|o| o.first);
    let mut left = cap;
    let mut solutions = Vec::new();
    let mut examined = 0;
    let mut partial = false;
    for o in outcomes {
        if o.examined > left || (o.truncated && o.examined == left) {
            solutions.extend(
                o.hits
                    .into_iter()
                    .filter(|(k, _)| *k < left)
                    .map(|(_, s)| s),
            );
            examined += left;
            partial = true;
            break;
        }
        left -= o.examined;
        examined += o.examined;
        solutions.extend(o.hits.into_iter().map(|(_, s)| s));
        if o.truncated {
            partial = true;
            break;
        }
    }
    solutions.sort();
    solutions.dedup();
    EnumerationResult {
        solutions,
        examined,
        partial,
    }
}

/// Every solution of `D² = 1 + d_1² + ... + d_{r-1}²` in smooth integers
/// with exponents at most `max_exp`, sorted by `(D², dims)`.
pub fn enumerate_integral_solutions(
    rank: usize,
    primes: &[u64],
    max_exp: u32,
    cap: u64,
) -> Result<EnumerationResult, ExplorerError> {
    let space = SearchSpace::new(rank, primes, max_exp)?;
    let mut outcomes = Vec::new();
    let mut left = cap;
    for first in 0..space.partitions() {
        let o = search_partition(&space, first, left);
        left -= o.examined;
        let stop = o.truncated;
        outcomes.push(o);
        if stop {
            break;
        }
    }
    Ok(merge_partitions(outcomes, cap))
}

/// Bounds attached to a rank.
#[derive(Debug, Clone, PartialEq)]
pub struct RankBounds {
    pub rank: usize,
    pub ord_t_bound: BigUint,
    pub evertse: Magnitude,
}

pub fn rank_bounds(rank: usize) -> Result<RankBounds, ExplorerError> {
    Ok(RankBounds {
        rank,
        ord_t_bound: ord_t_bound(rank),
        evertse: evertse_bound(rank)?,
    })
}
