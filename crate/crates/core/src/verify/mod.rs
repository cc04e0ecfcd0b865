//! Admissibility of modular data, the Cauchy support test and the
//! congruences relating indicators, dimensions and Galois actions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::time::Duration;

use thiserror::Error;

use crate::arith;
use crate::cyclo::{CycNum, CycloError, GaloisElement};
use crate::ideals::{self, IdealError, PrimeIdeal};
use crate::matrix::Matrix;
use crate::mdata::{
    self, anomaly, balancing_residual, fs_indicators, galois_permutation, gauss_sums,
    global_dimension, verlinde_values, FusionRules, MdataError, ModularDatum,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("q = {q} divides ord(T) = {t_order}")]
    DividesTOrder { q: u64, t_order: u32 },
    #[error("{what} does not lie in Q(zeta_{conductor})")]
    NotInSubfield { what: String, conductor: u32 },
    #[error(transparent)]
    Mdata(#[from] MdataError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// A concrete counterexample: the offending labels and exact values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub message: String,
    /// `(name, rendered exact value)` pairs.
    pub values: Vec<(String, String)>,
}

impl Witness {
    fn new(indices: &[usize], message: impl Into<String>) -> Self {
        Witness {
            indices: indices.to_vec(),
            message: message.into(),
            values: Vec::new(),
        }
    }

    fn value(mut self, name: &str, v: &CycNum) -> Self {
        self.values.push((name.to_string(), v.render()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
    pub elapsed: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub name: String,
    pub conditions: Vec<ConditionResult>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failed_ids(&self) -> Vec<u8> {
        self.conditions
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.id)
            .collect()
    }
}

pub const CONDITION_TITLES: [&str; 7] = [
    "real dimensions, symmetric projectively unitary S, finite-order T",
    "(ST)^3 = p+ S^2, p+ p- = D^2, anomaly a root of unity",
    "Verlinde coefficients are non-negative integers",
    "balancing equation",
    "second indicator and integrality of all indicators",
    "Galois group of F_S embeds in S_r with elementary 2-group kernel",
    "D^2 and ord(T) have the same prime ideal support",
];

type Outcome = Result<(), Witness>;

/// Lazily shared intermediate results for one datum.
struct Checker<'a> {
    md: &'a ModularDatum,
    d2: OnceCell<CycNum>,
    fusion: OnceCell<Result<FusionRules, MdataError>>,
}

impl<'a> Checker<'a> {
    fn new(md: &'a ModularDatum) -> Self {
        Checker {
            md,
            d2: OnceCell::new(),
            fusion: OnceCell::new(),
        }
    }

    fn d2(&self) -> &CycNum {
        self.d2.get_or_init(|| global_dimension(self.md))
    }

    fn fusion(&self) -> Result<&FusionRules, Witness> {
        self.fusion
            .get_or_init(|| mdata::verlinde_fusion(self.md))
            .as_ref()
            .map_err(|e| Witness::new(&[], format!("fusion rules unavailable: {e}")))
    }

    fn condition1(&self) -> Outcome {
        let md = self.md;
        for j in 0..md.rank() {
            if !md.dim(j).is_real() {
                return Err(Witness::new(&[j], "d_j is not real").value("d_j", md.dim(j)));
            }
        }
        let s = md.s();
        for i in 0..md.rank() {
            for j in 0..i {
                if s.get(i, j) != s.get(j, i) {
                    return Err(Witness::new(&[i, j], "S is not symmetric")
                        .value("S_ij", s.get(i, j))
                        .value("S_ji", s.get(j, i)));
                }
            }
        }
        let prod = s.mul(&s.conj_transpose());
        let target = Matrix::identity(md.conductor(), md.rank()).scale(self.d2());
        if let Some((i, j)) = prod.first_difference(&target) {
            return Err(Witness::new(&[i, j], "S conj(S)^t differs from D^2 Id")
                .value("entry", prod.get(i, j))
                .value("expected", target.get(i, j)));
        }
        Ok(())
    }

    fn condition2(&self) -> Outcome {
        let md = self.md;
        let (p_plus, p_minus) = gauss_sums(md);
        let st = md.s().mul_diagonal_roots(md.theta_exponents());
        let lhs = st.mul(&st).mul(&st);
        let s2 = md.s().mul(md.s());
        let rhs = s2.scale(&p_plus);
        if let Some((i, j)) = lhs.first_difference(&rhs) {
            return Err(Witness::new(&[i, j], "(ST)^3 differs from p+ S^2")
                .value("(ST)^3", lhs.get(i, j))
                .value("p+ S^2", rhs.get(i, j)));
        }
        let prod = &p_plus * &p_minus;
        if &prod != self.d2() {
            return Err(Witness::new(&[], "p+ p- differs from D^2")
                .value("p+ p-", &prod)
                .value("D^2", self.d2()));
        }
        anomaly(md).map_err(|e| Witness::new(&[], e.to_string()))?;
        Ok(())
    }

    fn condition3(&self) -> Outcome {
        let r = self.md.rank();
        let values = verlinde_values(self.md).map_err(|e| Witness::new(&[], e.to_string()))?;
        for (idx, v) in values.iter().enumerate() {
            let ok = v.to_integer().is_some_and(|n| n >= 0.into());
            if !ok {
                let (i, j, k) = (idx / (r * r), (idx / r) % r, idx % r);
                return Err(
                    Witness::new(&[i, j, k], "N_ij^k is not a non-negative integer")
                        .value("N_ij^k", v),
                );
            }
        }
        Ok(())
    }

    fn condition4(&self) -> Outcome {
        let fr = self.fusion()?;
        let bad = balancing_residual(self.md, fr).map_err(|e| Witness::new(&[], e.to_string()))?;
        match bad.first() {
            None => Ok(()),
            Some(b) => Err(Witness::new(&[b.i, b.j], "balancing equation fails")
                .value("theta_i theta_j S_ij", &b.lhs)
                .value("sum_k N_{i*j}^k d_k theta_k", &b.rhs)),
        }
    }

    fn condition5(&self) -> Outcome {
        let md = self.md;
        let fr = self.fusion()?;
        let n_t = md.t_order();
        let err = |e: MdataError| Witness::new(&[], e.to_string());
        let nu2 = fs_indicators(md, fr, 2).map_err(err)?;
        for (k, v) in nu2.iter().enumerate() {
            let ok = if fr.is_self_dual(k) {
                v.is_one() || (-v).is_one()
            } else {
                v.is_zero()
            };
            if !ok {
                return Err(
                    Witness::new(&[k], "nu_2(k) has the wrong value for the duality of k")
                        .value("nu_2(k)", v),
                );
            }
        }
        for n in 1..=n_t as u64 {
            let nu = fs_indicators(md, fr, n).map_err(err)?;
            for (k, v) in nu.iter().enumerate() {
                let integral = v
                    .project(n_t)
                    .ok()
                    .flatten()
                    .is_some_and(|p| p.is_algebraic_integer());
                if !integral {
                    return Err(
                        Witness::new(&[n as usize, k], "nu_n(k) is not in Z[zeta_N]")
                            .value("nu_n(k)", v),
                    );
                }
            }
        }
        Ok(())
    }

    fn condition6(&self) -> Outcome {
        let md = self.md;
        let n_t = md.t_order();
        let small = restrict_datum(md, n_t)?;
        let units = arith::units_mod(n_t as u64);
        let fixes = |a: u64| -> bool {
            let g = GaloisElement::new(n_t, a as i64).expect("unit");
            small
                .s()
                .galois(&g)
                .map(|x| x == *small.s())
                .unwrap_or(false)
        };
        let h: Vec<u64> = units.iter().copied().filter(|&a| fixes(a)).collect();
        let perms = units
            .iter()
            .map(|&a| galois_permutation(&small, a as i64))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Witness::new(&[], e.to_string()))?;
        let modulus = (n_t as u64).max(1);
        let index_of = |x: u64| {
            units
                .iter()
                .position(|&u| u % modulus == x % modulus)
                .expect("products of units are units")
        };
        for (x, &a) in units.iter().enumerate() {
            for (y, &b) in units.iter().enumerate() {
                let z = index_of(arith::mul_mod_u64(a, b, modulus));
                let composed: Vec<usize> = perms[y].iter().map(|&i| perms[x][i]).collect();
                if perms[z] != composed {
                    return Err(Witness::new(
                        &[a as usize, b as usize],
                        "a -> sigma_hat_a is not a homomorphism",
                    ));
                }
            }
        }
        let identity: Vec<usize> = (0..md.rank()).collect();
        for (x, &a) in units.iter().enumerate() {
            if (perms[x] == identity) != h.contains(&a) {
                return Err(Witness::new(
                    &[a as usize],
                    "kernel of sigma_hat differs from the subgroup fixing S",
                ));
            }
        }
        for &a in &h {
            if arith::mul_mod_u64(a, a, modulus) != 1 % modulus {
                return Err(Witness::new(
                    &[a as usize],
                    "Gal(F_T/F_S) is not an elementary 2-group",
                ));
            }
        }
        Ok(())
    }

    fn condition7(&self) -> Outcome {
        match cauchy_check(self.md) {
            Ok(c) if c.passed => Ok(()),
            Ok(c) => {
                let show = |s: &BTreeSet<PrimeIdeal>| {
                    s.iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let mut w = Witness::new(&[], "supports of D^2 and ord(T) differ");
                w.values.push(("supp(D^2)".into(), show(&c.d2_support)));
                w.values.push(("supp(N)".into(), show(&c.t_order_support)));
                Err(w)
            }
            Err(e) => Err(Witness::new(&[], e.to_string())),
        }
    }

    fn run(&self, id: u8) -> Outcome {
        match id {
            1 => self.condition1(),
            2 => self.condition2(),
            3 => self.condition3(),
            4 => self.condition4(),
            5 => self.condition5(),
            6 => self.condition6(),
            7 => self.condition7(),
            _ => unreachable!("conditions are numbered 1 to 7"),
        }
    }
}

/// The datum over `Q(ζ_n)`, if all of `S` lies there and every twist has
/// order dividing `n`.
fn restrict_datum(md: &ModularDatum, n: u32) -> Result<ModularDatum, Witness> {
    let r = md.rank();
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            match md.s_entry(i, j).project(n) {
                Ok(Some(x)) => row.push(x),
                _ => {
                    return Err(
                        Witness::new(&[i, j], format!("S_ij does not lie in Q(zeta_{n})"))
                            .value("S_ij", md.s_entry(i, j)),
                    )
                }
            }
        }
        rows.push(row);
    }
    let m = md.conductor() as u64;
    let theta: Vec<i64> = md
        .theta_exponents()
        .iter()
        .map(|&e| (e as u64 * n as u64 / m) as i64)
        .collect();
    ModularDatum::new(md.name(), n, rows, &theta).map_err(|e| Witness::new(&[], e.to_string()))
}

#[cfg(feature = "std")]
fn timed<T>(f: impl FnOnce() -> T) -> (T, Option<Duration>) {
    let start = std::time::Instant::now();
    let out = f();
    (out, Some(start.elapsed()))
}

#[cfg(not(feature = "std"))]
fn timed<T>(f: impl FnOnce() -> T) -> (T, Option<Duration>) {
    (f(), None)
}

/// Evaluates all seven admissibility conditions; nothing short-circuits.
pub fn check_admissible(md: &ModularDatum) -> AdmissibilityReport {
    let checker = Checker::new(md);
    let conditions = (1..=7u8)
        .map(|id| {
            let (outcome, elapsed) = timed(|| checker.run(id));
            let mut notes = Vec::new();
            if id == 5 {
                notes.push(String::from(
                    "integrality checked for n = 1..N, which suffices since nu_n depends on n mod N",
                ));
            }
            if id == 6 {
                notes.push(String::from(
                    "evaluated with F_T = Q(zeta_N), N = ord(T); the elementary 2-group lemma is stated for F_t, t normalized",
                ));
            }
            let (passed, witness) = match outcome {
                Ok(()) => (true, None),
                Err(w) => (false, Some(w)),
            };
            ConditionResult {
                id,
                title: CONDITION_TITLES[id as usize - 1],
                passed,
                witness,
                notes,
                elapsed,
            }
        })
        .collect();
    AdmissibilityReport {
        name: md.name().to_string(),
        conditions,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyResult {
    /// `N = ord(T)`; both supports live in `Z[ζ_N]`.
    pub conductor: u32,
    pub d2: CycNum,
    pub d2_support: BTreeSet<PrimeIdeal>,
    pub t_order_support: BTreeSet<PrimeIdeal>,
    pub passed: bool,
}

/// Compares the prime supports of `D²` and of `N = ord(T)` in `Z[ζ_N]`.
pub fn cauchy_check(md: &ModularDatum) -> Result<CauchyResult, VerifyError> {
    let n_t = md.t_order();
    let d2 = global_dimension(md);
    let d2n = d2.project(n_t)?.ok_or_else(|| VerifyError::NotInSubfield {
        what: String::from("D^2"),
        conductor: n_t,
    })?;
    let d2_support = ideals::support(&d2n)?;
    let t_order_support = ideals::support_of_integer(n_t as u64, n_t)?;
    Ok(CauchyResult {
        conductor: n_t,
        passed: d2_support == t_order_support,
        d2: d2n,
        d2_support,
        t_order_support,
    })
}

fn require_coprime_prime(md: &ModularDatum, q: u64) -> Result<u32, VerifyError> {
    if !arith::is_prime_u64(q) {
        return Err(VerifyError::NotPrime(q));
    }
    let n_t = md.t_order();
    if n_t as u64 % q == 0 {
        return Err(VerifyError::DividesTOrder { q, t_order: n_t });
    }
    Ok(n_t)
}

fn in_subfield(x: &CycNum, n: u32, what: &str) -> Result<CycNum, VerifyError> {
    x.project(n)?.ok_or_else(|| VerifyError::NotInSubfield {
        what: what.to_string(),
        conductor: n,
    })
}

/// `ν_q(R) = Σ_k d_k ν_q(k)`, the indicator of the regular element.
pub fn regular_indicator(
    md: &ModularDatum,
    fr: &FusionRules,
    q: u64,
) -> Result<CycNum, VerifyError> {
    let nu = fs_indicators(md, fr, q)?;
    Ok(md
        .dims()
        .iter()
        .zip(&nu)
        .fold(CycNum::zero(md.conductor()), |acc, (d, v)| &acc + &(d * v)))
}

/// An exact identity checked at one prime or Galois exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceVerdict {
    pub passed: bool,
    pub lhs: CycNum,
    pub rhs: CycNum,
}

/// `σ_q(ν_q(R)) ≡ D^{2(q-1)} (mod q)` in `Z[ζ_N]`.
pub fn congruence_p1(
    md: &ModularDatum,
    fr: &FusionRules,
    q: u64,
) -> Result<CongruenceVerdict, VerifyError> {
    let n_t = require_coprime_prime(md, q)?;
    let nu = in_subfield(&regular_indicator(md, fr, q)?, n_t, "nu_q(R)")?;
    let d2 = in_subfield(&global_dimension(md), n_t, "D^2")?;
    let lhs = nu.galois(q as i64)?;
    let rhs = d2.pow(q - 1);
    let passed = lhs.is_algebraic_integer()
        && rhs.is_algebraic_integer()
        && ideals::congruent_mod_q(&lhs, &rhs, q)?;
    Ok(CongruenceVerdict { passed, lhs, rhs })
}

/// Smallest `a ≡ q (mod n)` that is a unit modulo `m`.
fn galois_lift(q: u64, n: u32, m: u32) -> u64 {
    let n = (n as u64).max(1);
    let mut a = q % n;
    if a == 0 {
        a = n;
    }
    while arith::gcd(a, m as u64) != 1 {
        a += n;
    }
    a
}

/// `ν_q(R) = d²` at the label `σ̂_q⁻¹(0)`.
pub fn congruence_p2(
    md: &ModularDatum,
    fr: &FusionRules,
    q: u64,
) -> Result<CongruenceVerdict, VerifyError> {
    let n_t = require_coprime_prime(md, q)?;
    let a = galois_lift(q, n_t, md.conductor());
    let perm = galois_permutation(md, a as i64)?;
    let label = perm.iter().position(|&x| x == 0).expect("permutation");
    let lhs = regular_indicator(md, fr, q)?;
    let d = md.dim(label);
    let rhs = d * d;
    Ok(CongruenceVerdict {
        passed: lhs == rhs,
        lhs,
        rhs,
    })
}

/// `d_{σ̂_a(0)}` is a unit: its norm is `±1`.
pub fn unit_check_p3(md: &ModularDatum, a: i64) -> Result<CongruenceVerdict, VerifyError> {
    let perm = galois_permutation(md, a)?;
    let d = md.dim(perm[0]).clone();
    let norm = CycNum::from_rational(md.conductor(), d.norm_to_rationals());
    let one = CycNum::one(md.conductor());
    Ok(CongruenceVerdict {
        passed: norm == one || norm == -&one,
        lhs: d,
        rhs: norm,
    })
}

/// One row of the congruence suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCongruences {
    pub q: u64,
    /// `ν_q(k) ∈ Z` for every label.
    pub indicators_integral: bool,
    pub p1: CongruenceVerdict,
    pub p2: CongruenceVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSuite {
    pub primes: Vec<PrimeCongruences>,
    /// `(a, verdict)` for every `a ∈ (Z/M)^*`.
    pub units: Vec<(u64, CongruenceVerdict)>,
}

impl CongruenceSuite {
    pub fn passed(&self) -> bool {
        self.primes
            .iter()
            .all(|p| p.indicators_integral && p.p1.passed && p.p2.passed)
            && self.units.iter().all(|(_, v)| v.passed)
    }
}

/// Runs the congruences for every prime `q ≤ qmax` coprime to `ord(T)`.
pub fn congruence_suite(md: &ModularDatum, qmax: u64) -> Result<CongruenceSuite, VerifyError> {
    let fr = mdata::verlinde_fusion(md)?;
    let n_t = md.t_order() as u64;
    let mut primes = Vec::new();
    for q in arith::primes_up_to(qmax) {
        if n_t % q == 0 {
            continue;
        }
        let nu = fs_indicators(md, &fr, q)?;
        primes.push(PrimeCongruences {
            q,
            indicators_integral: nu.iter().all(|v| v.to_integer().is_some()),
            p1: congruence_p1(md, &fr, q)?,
            p2: congruence_p2(md, &fr, q)?,
        });
    }
    let units = arith::units_mod(md.conductor() as u64)
        .into_iter()
        .map(|a| Ok((a, unit_check_p3(md, a as i64)?)))
        .collect::<Result<Vec<_>, VerifyError>>()?;
    Ok(CongruenceSuite { primes, units })
}

/// Applies `σ_a` to `S` and `T`; the result is named `"{name}~g{a}"`.
pub fn galois_twist(md: &ModularDatum, a: i64) -> Result<ModularDatum, VerifyError> {
    Ok(md.galois_twist(a)?)
}

/// Every Galois conjugate of a datum, one per `a ∈ (Z/M)^*`.
pub fn galois_orbit(md: &ModularDatum) -> Vec<ModularDatum> {
    arith::units_mod(md.conductor() as u64)
        .into_iter()
        .map(|a| md.galois_twist(a as i64).expect("units twist"))
        .collect()
}
