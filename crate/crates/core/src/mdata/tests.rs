use super::*;
use crate::catalog::{self, builtin_catalog, golden_ratio};
use alloc::vec;
use num_complex::Complex64;
use proptest::prelude::*;

fn fib() -> ModularDatum {
    catalog::fibonacci().datum
}

#[test]
fn datum_validation() {
    let one = |m| CycNum::one(m);
    assert_eq!(
        ModularDatum::new("x", 4, vec![vec![one(4), one(4)]], &[0, 0]),
        Err(DatumError::NotSquare {
            row: 0,
            expected: 1,
            got: 2
        })
    );
    assert_eq!(
        ModularDatum::new("x", 4, vec![vec![one(4)]], &[1]),
        Err(DatumError::ThetaZero(1))
    );
    assert_eq!(
        ModularDatum::new("x", 4, vec![vec![CycNum::from_integer(4, 2)]], &[0]),
        Err(DatumError::UnitEntry)
    );
    assert!(matches!(
        ModularDatum::new("x", 4, vec![vec![one(5)]], &[0]),
        Err(DatumError::EntryConductor { .. })
    ));
    // subfield entries are embedded
    let md = ModularDatum::new("x", 4, vec![vec![one(1)]], &[4]).unwrap();
    assert_eq!(md.s_entry(0, 0), &one(4));
    assert_eq!(md.t_order(), 1);
}

#[test]
fn derived_scalar_examples() {
    let t = derived_scalars(&catalog::trivial().datum).unwrap();
    assert!(t.global_dim.is_one() && t.p_plus.is_one() && t.p_minus.is_one());
    assert_eq!(t.anomaly.multiplicative_order(), 1);
    assert_eq!(t.t_order, 1);

    let f = derived_scalars(&fib()).unwrap();
    assert_eq!(f.global_dim, &CycNum::from_integer(5, 2) + &golden_ratio());
    assert_eq!(f.t_order, 5);

    let tc = derived_scalars(&catalog::toric_code().datum).unwrap();
    assert_eq!(tc.global_dim, CycNum::from_integer(2, 4));
    assert_eq!(tc.p_plus, CycNum::from_integer(2, 2));
    assert_eq!(tc.p_minus, CycNum::from_integer(2, 2));
    assert_eq!(tc.anomaly.multiplicative_order(), 1);
    assert_eq!(tc.t_order, 2);
}

#[test]
fn fibonacci_at_conductor_20_matches() {
    let f5 = fib();
    let f20 = f5.embed(20).unwrap();
    assert_eq!(f20.t_order(), 5);
    assert_eq!(
        verlinde_fusion(&f20).unwrap(),
        verlinde_fusion(&f5).unwrap()
    );
    assert_eq!(
        global_dimension(&f20),
        global_dimension(&f5).embed(20).unwrap()
    );
    let p5 = normalized_pair(&f5).unwrap();
    let p20 = normalized_pair(&f20).unwrap();
    assert_eq!(p5.conductor, p20.conductor);
    assert_eq!(p5.s, p20.s);
}

/// Verlinde formula in floating point, an independent check of exact values.
fn verlinde_numeric(md: &ModularDatum) -> Vec<Complex64> {
    let r = md.rank();
    let s: Vec<Vec<Complex64>> = (0..r)
        .map(|i| (0..r).map(|j| md.s_entry(i, j).to_complex()).collect())
        .collect();
    let d2: Complex64 = (0..r).map(|j| s[0][j] * s[0][j]).sum();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let v: Complex64 = (0..r)
                    .map(|a| s[i][a] * s[j][a] * s[k][a].conj() / s[0][a])
                    .sum();
                out.push(v / d2);
            }
        }
    }
    out
}

#[test]
fn verlinde_reproduces_hand_entered_rules() {
    for e in builtin_catalog() {
        let fr = verlinde_fusion(&e.datum).unwrap();
        assert_eq!(fr, e.fusion, "{}", e.datum.name());
        fr.check_invariants().unwrap();
        for (exact, approx) in fr.tensor().iter().zip(verlinde_numeric(&e.datum)) {
            assert!((approx - Complex64::new(*exact as f64, 0.0)).norm() < 1e-9);
        }
    }
}

#[test]
fn verlinde_examples() {
    let f = verlinde_fusion(&fib()).unwrap();
    assert_eq!((f.get(1, 1, 0), f.get(1, 1, 1)), (1, 1));
    assert_eq!(f.duals(), &[0, 1]);
    let t = verlinde_fusion(&catalog::trivial().datum).unwrap();
    assert_eq!(t.get(0, 0, 0), 1);
    let i = verlinde_fusion(&catalog::ising().datum).unwrap();
    assert_eq!((i.get(1, 1, 0), i.get(1, 1, 1), i.get(1, 1, 2)), (1, 0, 1));
    let z3 = verlinde_fusion(&catalog::pointed_z3().datum).unwrap();
    assert_eq!(z3.duals(), &[0, 2, 1]);
}

#[test]
fn verlinde_rejects_negated_entry() {
    let bad = fib().with_s_entry(1, 1, CycNum::one(5)).unwrap();
    assert!(matches!(
        verlinde_fusion(&bad),
        Err(MdataError::NonIntegralFusion { .. })
    ));
}

#[test]
fn balancing_and_twist_equations() {
    for e in builtin_catalog() {
        assert!(
            balancing_residual(&e.datum, &e.fusion).unwrap().is_empty(),
            "{}",
            e.datum.name()
        );
        assert!(
            twist_equation_residual(&e.datum).is_empty(),
            "{}",
            e.datum.name()
        );
    }
    let wrong = fib().with_theta_exponent(1, 1).unwrap();
    let fr = catalog::fibonacci().fusion;
    assert!(!balancing_residual(&wrong, &fr).unwrap().is_empty());
    assert!(!twist_equation_residual(&wrong).is_empty());
}

#[test]
fn orthogonality_and_conjugation() {
    for e in builtin_catalog() {
        let md = &e.datum;
        let d2 = global_dimension(md);
        let s = md.s();
        assert!(s.is_symmetric());
        let prod = s.mul(&s.conj_transpose());
        assert_eq!(
            prod,
            crate::matrix::Matrix::identity(md.conductor(), md.rank()).scale(&d2)
        );
        for i in 0..md.rank() {
            for j in 0..md.rank() {
                assert_eq!(s.get(i, e.fusion.dual(j)), &s.get(i, j).conj());
            }
        }
        let sc = derived_scalars(md).unwrap();
        assert_eq!(&sc.p_plus * &sc.p_minus, sc.global_dim);
        assert_eq!(sc.global_dim, e.global_dim);
        assert_eq!(sc.t_order, e.t_order);
    }
}

#[test]
fn fs_indicator_examples() {
    for e in builtin_catalog() {
        let md = &e.datum;
        let n_t = md.t_order() as u64;
        let nu_n = fs_indicators(md, &e.fusion, n_t).unwrap();
        assert_eq!(nu_n, md.dims(), "{}", md.name());
        let nu_1 = fs_indicators(md, &e.fusion, 1).unwrap();
        for (k, v) in nu_1.iter().enumerate() {
            assert_eq!(v.is_one(), k == 0);
            assert!(k == 0 || v.is_zero());
        }
        for n in 1..=2 * n_t {
            assert_eq!(
                fs_indicators(md, &e.fusion, n).unwrap(),
                fs_indicators(md, &e.fusion, n + n_t).unwrap()
            );
        }
    }
    assert!(fs_indicator(&fib(), &catalog::fibonacci().fusion, 2, 1)
        .unwrap()
        .is_one());
    let z3 = catalog::pointed_z3();
    let nu2 = fs_indicators(&z3.datum, &z3.fusion, 2).unwrap();
    assert!(nu2[1].is_zero() && nu2[2].is_zero());
}

#[test]
fn fs_indicators_at_primes_are_integers() {
    for e in builtin_catalog() {
        let md = &e.datum;
        let n_t = md.t_order() as u64;
        let (dims, d2) = (md.dims(), global_dimension(md));
        for q in arith::primes_up_to(13) {
            if n_t % q == 0 {
                continue;
            }
            let nu = fs_indicators(md, &e.fusion, q).unwrap();
            assert!(
                nu.iter().all(|v| v.to_integer().is_some()),
                "{} q={q}",
                md.name()
            );
            // Σ_k d_k ν_q(k) = (1/D²)(Σ d_i² θ_i^q)(Σ d_j² θ_j^-q)
            let lhs = dims
                .iter()
                .zip(&nu)
                .fold(CycNum::zero(md.conductor()), |a, (d, v)| &a + &(d * v));
            let th = md.theta_exponents();
            let gs = |sign: i64| {
                (0..md.rank()).fold(CycNum::zero(md.conductor()), |a, i| {
                    &a + &(&dims[i] * &dims[i]).mul_root(sign * q as i64 * th[i] as i64)
                })
            };
            let rhs = (&gs(1) * &gs(-1)).checked_div(&d2).unwrap();
            assert_eq!(lhs, rhs, "{} q={q}", md.name());
        }
    }
}

#[test]
fn galois_examples() {
    let md = fib();
    assert_eq!(galois_permutation(&md, 1).unwrap(), vec![0, 1]);
    assert_eq!(galois_permutation(&md, 2).unwrap(), vec![1, 0]);
    assert_eq!(galois_permutation(&md, 4).unwrap(), vec![0, 1]);
    let data = galois_data(&md).unwrap();
    assert_eq!(data.action(1).unwrap().signs, vec![1, 1]);
    for a in &data.actions {
        assert!(a.signs.iter().all(|s| *s == 1 || *s == -1));
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

#[test]
fn galois_permutations_form_a_homomorphism() {
    for e in builtin_catalog() {
        let md = &e.datum;
        let m = md.conductor() as u64;
        let units = arith::units_mod(m);
        let perms: Vec<Vec<usize>> = units
            .iter()
            .map(|&a| galois_permutation(md, a as i64).unwrap())
            .collect();
        for (x, &a) in units.iter().enumerate() {
            for (y, &b) in units.iter().enumerate() {
                let ab = arith::mul_mod_u64(a, b, m.max(1));
                let z = units
                    .iter()
                    .position(|&u| u == ab % m.max(1) || (m == 1))
                    .unwrap();
                assert_eq!(perms[z], compose(&perms[x], &perms[y]), "{}", md.name());
            }
        }
        // the image has order [(Z/M)^* : H], H fixing S entrywise
        let h = units
            .iter()
            .filter(|&&a| {
                md.s()
                    .galois(&crate::cyclo::GaloisElement::new(md.conductor(), a as i64).unwrap())
                    .unwrap()
                    == *md.s()
            })
            .count();
        let mut image = perms.clone();
        image.sort();
        image.dedup();
        assert_eq!(image.len() * h, units.len(), "{}", md.name());
    }
}

#[test]
fn normalized_pair_relations() {
    for e in builtin_catalog() {
        let md = &e.datum;
        let pair = normalized_pair(md).unwrap();
        let rel = pair_relations(md, &e.fusion, &pair);
        assert!(rel.all(), "{}: {:?}", md.name(), rel);
        let data = galois_data_with(md, &pair).unwrap();
        assert_eq!(
            galois_symmetry_violation(md, &pair, &data).unwrap(),
            None,
            "{}",
            md.name()
        );
        assert!(pair.d.to_complex().re > 0.0);
    }
    let t = normalized_pair(&catalog::trivial().datum).unwrap();
    assert!(t.s.is_identity());
    assert_eq!(t.order, 1);
    assert!(t.t.iter().all(|&e| e == 0));
    let tc = normalized_pair(&catalog::toric_code().datum).unwrap();
    assert_eq!(tc.d, CycNum::from_integer(tc.conductor, 2));
    assert!(tc.order % 2 == 0 && 24 % tc.order == 0);
    let f = normalized_pair(&fib()).unwrap();
    let d = f.d.to_complex().re;
    assert!((d - libm::sqrt(2.0 + (1.0 + libm::sqrt(5.0)) / 2.0)).abs() < 1e-12);
}

#[test]
fn fp_dimension_examples() {
    let t = catalog::trivial();
    let fp = fp_dimensions(&t.datum, &t.fusion).unwrap();
    assert!(fp.pseudo_unitary && fp.global.is_one());
    let f = catalog::fibonacci();
    let fp = fp_dimensions(&f.datum, &f.fusion).unwrap();
    assert!((fp.dims[1] - 1.618_033_988_749_895).abs() < 1e-9);
    assert_eq!(fp.label, 0);
    assert!(fp.pseudo_unitary);
    let i = catalog::ising();
    let fp = fp_dimensions(&i.datum, &i.fusion).unwrap();
    assert!((fp.dims[1] - core::f64::consts::SQRT_2).abs() < 1e-9);
    assert_eq!(fp.global, CycNum::from_integer(16, 4));
    // a Galois conjugate of Fibonacci is not pseudo-unitary
    let yl = f.datum.galois_twist(2).unwrap();
    let fp = fp_dimensions(&yl, &f.fusion).unwrap();
    assert_eq!(fp.label, 1);
    assert!(!fp.pseudo_unitary);
}

#[test]
fn invertible_examples() {
    for e in builtin_catalog() {
        assert_eq!(
            invertibles(&e.fusion).order,
            e.invertibles,
            "{}",
            e.datum.name()
        );
    }
    assert_eq!(invertibles(&catalog::fibonacci().fusion).two_torsion, 1);
    assert_eq!(invertibles(&catalog::toric_code().fusion).two_torsion, 4);
    assert_eq!(invertibles(&catalog::semion().fusion).two_torsion, 2);
    assert_eq!(invertibles(&catalog::pointed_z3().fusion).two_torsion, 1);
}

#[test]
fn galois_twist_composes() {
    let md = catalog::ising().datum;
    assert_eq!(md.galois_twist(1).unwrap().s(), md.s());
    let back = md.galois_twist(3).unwrap().galois_twist(11).unwrap();
    assert_eq!(back.s(), md.s());
    assert_eq!(back.theta_exponents(), md.theta_exponents());
}

fn entry_and_unit() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..7, 0usize..64, 0usize..64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twisting_preserves_fusion_up_to_relabel((e, x, y) in entry_and_unit()) {
        let entry = &builtin_catalog()[e];
        let md = &entry.datum;
        let units = arith::units_mod(md.conductor() as u64);
        let a = units[x % units.len()] as i64;
        let b = units[y % units.len()] as i64;
        let tw = md.galois_twist(a).unwrap();
        // S is symmetric and orthogonal after twisting
        prop_assert!(tw.s().is_symmetric());
        // twisting is an action
        let ab = tw.galois_twist(b).unwrap();
        let direct = md.galois_twist(a * b).unwrap();
        prop_assert_eq!(ab.s(), direct.s());
        prop_assert_eq!(ab.theta_exponents(), direct.theta_exponents());
        // Verlinde rules of the twist are those of the original: σ(N) = N
        prop_assert_eq!(verlinde_fusion(&tw).unwrap(), entry.fusion.clone());
    }
}
