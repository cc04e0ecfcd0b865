//! Built-in reference data with hand-entered fusion rules.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclo::CycNum;
use crate::mdata::{FusionRules, ModularDatum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub datum: ModularDatum,
    pub fusion: FusionRules,
    pub global_dim: CycNum,
    pub t_order: u32,
    /// `|G(C)|`.
    pub invertibles: usize,
    pub note: &'static str,
}

fn ints(m: u32, rows: &[&[i64]]) -> Vec<Vec<CycNum>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| CycNum::from_integer(m, x)).collect())
        .collect()
}

/// Fusion rules of an abelian group given by its multiplication and inverse.
fn group_fusion(order: usize, mul: impl Fn(usize, usize) -> usize) -> FusionRules {
    FusionRules::from_fn(order, |i, j, k| (mul(i, j) == k) as u32).expect("group law has inverses")
}

/// Fusion rules from a list of nonzero `(i, j, k, N_ij^k)`, symmetrized in `i, j`.
fn listed_fusion(rank: usize, entries: &[(usize, usize, usize, u32)]) -> FusionRules {
    let mut t = vec![0u32; rank * rank * rank];
    for &(i, j, k, n) in entries {
        t[(i * rank + j) * rank + k] = n;
        t[(j * rank + i) * rank + k] = n;
    }
    FusionRules::new(rank, t).expect("hand-entered rules have duals")
}

fn unit_fusion(rank: usize) -> Vec<(usize, usize, usize, u32)> {
    (0..rank).map(|i| (0, i, i, 1)).collect()
}

pub fn trivial() -> CatalogEntry {
    CatalogEntry {
        datum: ModularDatum::new("trivial", 1, ints(1, &[&[1]]), &[0]).unwrap(),
        fusion: group_fusion(1, |_, _| 0),
        global_dim: CycNum::one(1),
        t_order: 1,
        invertibles: 1,
        note: "Vec, the unit modular category",
    }
}

pub fn semion() -> CatalogEntry {
    CatalogEntry {
        datum: ModularDatum::new("semion", 4, ints(4, &[&[1, 1], &[1, -1]]), &[0, 1]).unwrap(),
        fusion: group_fusion(2, |i, j| (i + j) % 2),
        global_dim: CycNum::from_integer(4, 2),
        t_order: 4,
        invertibles: 2,
        note: "SU(2)_1: Z/2 fusion, twist i",
    }
}

/// `φ = (1 + √5)/2 = -ζ_5² - ζ_5³`.
pub fn golden_ratio() -> CycNum {
    CycNum::from_ints(5, &[0, 0, -1, -1])
}

pub fn fibonacci() -> CatalogEntry {
    let phi = golden_ratio();
    let s = vec![
        vec![CycNum::one(5), phi.clone()],
        vec![phi.clone(), CycNum::from_integer(5, -1)],
    ];
    let mut fusion = unit_fusion(2);
    fusion.extend([(1, 1, 0, 1), (1, 1, 1, 1)]);
    CatalogEntry {
        datum: ModularDatum::new("fibonacci", 5, s, &[0, 2]).unwrap(),
        fusion: listed_fusion(2, &fusion),
        global_dim: &CycNum::from_integer(5, 2) + &phi,
        t_order: 5,
        invertibles: 1,
        note: "(G2)_1: tau x tau = 1 + tau, twist zeta_5^2",
    }
}

/// `√2 = ζ_8 + ζ_8⁻¹ = ζ_16² - ζ_16⁶`.
pub fn sqrt2_16() -> CycNum {
    CycNum::from_ints(16, &[0, 0, 1, 0, 0, 0, -1])
}

pub fn ising() -> CatalogEntry {
    let r2 = sqrt2_16();
    let one = CycNum::one(16);
    let s = vec![
        vec![one.clone(), r2.clone(), one.clone()],
        vec![r2.clone(), CycNum::zero(16), -&r2],
        vec![one.clone(), -&r2, one.clone()],
    ];
    let mut fusion = unit_fusion(3);
    fusion.extend([(1, 1, 0, 1), (1, 1, 2, 1), (1, 2, 1, 1), (2, 2, 0, 1)]);
    CatalogEntry {
        datum: ModularDatum::new("ising", 16, s, &[0, 1, 8]).unwrap(),
        fusion: listed_fusion(3, &fusion),
        global_dim: CycNum::from_integer(16, 4),
        t_order: 16,
        invertibles: 2,
        note: "labels 1, sigma, psi: sigma x sigma = 1 + psi",
    }
}

const KLEIN_S: &[&[i64]] = &[
    &[1, 1, 1, 1],
    &[1, 1, -1, -1],
    &[1, -1, 1, -1],
    &[1, -1, -1, 1],
];

pub fn toric_code() -> CatalogEntry {
    CatalogEntry {
        datum: ModularDatum::new("toric-code", 2, ints(2, KLEIN_S), &[0, 0, 0, 1]).unwrap(),
        fusion: group_fusion(4, |i, j| i ^ j),
        global_dim: CycNum::from_integer(2, 4),
        t_order: 2,
        invertibles: 4,
        note: "D(Z/2): labels 1, e, m, f with (Z/2)^2 fusion",
    }
}

pub fn three_fermion() -> CatalogEntry {
    CatalogEntry {
        datum: ModularDatum::new("three-fermion", 2, ints(2, KLEIN_S), &[0, 1, 1, 1]).unwrap(),
        fusion: group_fusion(4, |i, j| i ^ j),
        global_dim: CycNum::from_integer(2, 4),
        t_order: 2,
        invertibles: 4,
        note: "SO(8)_1: three fermions with (Z/2)^2 fusion",
    }
}

pub fn pointed_z3() -> CatalogEntry {
    let s: Vec<Vec<CycNum>> = (0..3)
        .map(|j| (0..3).map(|k| CycNum::root_of_unity(3, j * k)).collect())
        .collect();
    CatalogEntry {
        datum: ModularDatum::new("z3", 3, s, &[0, 1, 4]).unwrap(),
        fusion: group_fusion(3, |i, j| (i + j) % 3),
        global_dim: CycNum::from_integer(3, 3),
        t_order: 3,
        invertibles: 3,
        note: "pointed Z/3 with quadratic form j^2: S_jk = zeta_3^jk",
    }
}

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    vec![
        trivial(),
        semion(),
        fibonacci(),
        ising(),
        toric_code(),
        pointed_z3(),
        three_fermion(),
    ]
}

pub fn builtin(name: &str) -> Option<CatalogEntry> {
    builtin_catalog()
        .into_iter()
        .find(|e| e.datum.name() == name)
}

pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "trivial",
        "semion",
        "fibonacci",
        "ising",
        "toric-code",
        "z3",
        "three-fermion",
    ]
}

/// A single-entry corruption of a catalog datum.
#[derive(Debug, Clone)]
pub struct Mutant {
    pub name: String,
    pub description: &'static str,
    pub datum: ModularDatum,
}

/// Curated mutants, each expected to fail at least one admissibility condition.
pub fn mutants() -> Vec<Mutant> {
    let fib = fibonacci().datum;
    let ising = ising().datum;
    let semion = semion().datum;
    let toric = toric_code().datum;
    let z3 = pointed_z3().datum;
    let mk = |name: &str, description, datum: ModularDatum| Mutant {
        name: String::from(name),
        description,
        datum: datum.with_name(name),
    };
    vec![
        mk(
            "fibonacci-s11-negated",
            "sign flip of S_11",
            fib.with_s_entry(1, 1, CycNum::one(5)).unwrap(),
        ),
        mk(
            "fibonacci-wrong-twist",
            "theta_1 replaced by zeta_5",
            fib.with_theta_exponent(1, 1).unwrap(),
        ),
        mk(
            "ising-rows-swapped",
            "rows 1 and 2 of S exchanged",
            ising.with_rows_swapped(1, 2).unwrap(),
        ),
        mk(
            "semion-trivial-twist",
            "theta_1 replaced by 1",
            semion.with_theta_exponent(1, 0).unwrap(),
        ),
        mk(
            "toric-code-s33-negated",
            "sign flip of S_33",
            toric
                .with_s_entry(3, 3, CycNum::from_integer(2, -1))
                .unwrap(),
        ),
        mk(
            "z3-wrong-twist",
            "theta_2 replaced by zeta_3^2",
            z3.with_theta_exponent(2, 2).unwrap(),
        ),
        mk(
            "ising-sigma-twist",
            "theta_sigma replaced by zeta_16^2",
            ising.with_theta_exponent(1, 2).unwrap(),
        ),
    ]
}
