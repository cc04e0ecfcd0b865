use super::*;
use proptest::prelude::*;

fn golden() -> CycNum {
    // φ = -ζ_5^2 - ζ_5^3
    CycNum::from_ints(5, &[0, 0, -1, -1])
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn cyclotomic_poly_examples() {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
    assert_eq!(cyclotomic_poly(5), ints(&[1, 1, 1, 1, 1]));
    assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
}

#[test]
fn ring_examples() {
    let z = CycNum::root_of_unity(5, 1);
    assert_eq!(&z + &z, CycNum::from_ints(5, &[0, 2]));
    let f = golden();
    assert_eq!(&f * &f, &CycNum::one(5) + &f);
    assert_eq!(&f * &CycNum::one(5), f);
    assert!(z.checked_add(&CycNum::one(4)).is_err());
}

#[test]
fn inverse_examples() {
    assert_eq!(CycNum::one(5).inverse().unwrap(), CycNum::one(5));
    let f = golden();
    assert_eq!(f.inverse().unwrap(), &f - &CycNum::one(5));
    let z = CycNum::root_of_unity(5, 1);
    assert_eq!(
        z.inverse().unwrap(),
        CycNum::from_ints(5, &[-1, -1, -1, -1])
    );
    assert_eq!(CycNum::zero(5).inverse(), Err(CycloError::DivisionByZero));
    let half = CycNum::from_rational(7, q(1, 2));
    assert_eq!(half.inverse().unwrap(), CycNum::from_integer(7, 2));
}

#[test]
fn galois_examples() {
    let f = golden();
    assert_eq!(f.galois(1).unwrap(), f);
    assert_eq!(f.galois(2).unwrap(), &CycNum::one(5) - &f);
    let z = CycNum::root_of_unity(12, 5);
    assert_eq!(z.galois(-1).unwrap(), CycNum::root_of_unity(12, 7));
    assert_eq!(z.conj(), CycNum::root_of_unity(12, -5));
    assert!(matches!(f.galois(5), Err(CycloError::NotAUnit { .. })));
}

#[test]
fn norm_examples() {
    assert_eq!(CycNum::zero(5).norm_to_rationals(), BigRational::zero());
    let one_minus_zeta = CycNum::from_ints(5, &[1, -1]);
    assert_eq!(one_minus_zeta.norm_to_rationals(), q(5, 1));
    assert_eq!(golden().norm_to_rationals(), q(1, 1));
    assert_eq!(
        CycNum::from_rational(5, q(3, 2)).norm_to_rationals(),
        q(81, 16)
    );
}

#[test]
fn embed_examples() {
    let z = CycNum::root_of_unity(5, 1);
    assert_eq!(z.embed(60).unwrap(), CycNum::root_of_unity(60, 12));
    assert_eq!(
        CycNum::from_integer(1, 3).embed(48).unwrap(),
        CycNum::from_integer(48, 3)
    );
    let f20 = golden().embed(20).unwrap();
    // [Q(ζ20):Q(ζ5)] = 2
    assert_eq!(f20.norm_to_rationals(), golden().norm_to_rationals().pow(2));
    let two_plus = &CycNum::from_integer(5, 2) + &golden();
    assert_eq!(
        two_plus.embed(20).unwrap().norm_to_rationals(),
        two_plus.norm_to_rationals().pow(2)
    );
    assert!(z.embed(12).is_err());
}

#[test]
fn project_round_trips() {
    let f = golden();
    for target in [10u32, 15, 20, 30, 60] {
        let up = f.embed(target).unwrap();
        assert_eq!(up.project(5).unwrap(), Some(f.clone()), "via {target}");
    }
    let z = CycNum::root_of_unity(15, 1);
    assert_eq!(z.project(5).unwrap(), None);
    assert_eq!(z.project(3).unwrap(), None);
    // √2 = ζ8 + ζ8^-1 lives in Q(ζ8) but not Q(ζ4)
    let sqrt2 = CycNum::from_ints(16, &[0, 0, 1, 0, 0, 0, -1]);
    assert_eq!(&sqrt2 * &sqrt2, CycNum::from_integer(16, 2));
    assert_eq!(sqrt2.minimal_conductor(), 8);
    assert_eq!(sqrt2.project(4).unwrap(), None);
    assert_eq!(CycNum::from_integer(12, -1).minimal_conductor(), 1);
    let i = CycNum::root_of_unity(12, 3);
    assert_eq!(i.minimal_conductor(), 4);
}

#[test]
fn root_of_unity_examples() {
    assert_eq!(
        CycNum::one(5).as_root_of_unity(),
        Some(RootOfUnity {
            order: 10,
            exponent: 0
        })
    );
    assert_eq!(
        CycNum::from_integer(5, -1).as_root_of_unity(),
        Some(RootOfUnity {
            order: 10,
            exponent: 5
        })
    );
    assert_eq!(golden().as_root_of_unity(), None);
    let z = CycNum::root_of_unity(12, 7);
    assert_eq!(
        z.as_root_of_unity(),
        Some(RootOfUnity {
            order: 12,
            exponent: 7
        })
    );
    assert_eq!(
        CycNum::root_of_unity(5, 3).scale_int(-1).as_root_of_unity(),
        Some(RootOfUnity {
            order: 10,
            exponent: 1
        })
    );
}

#[test]
fn predicate_examples() {
    let f = golden();
    assert!(f.is_real());
    assert!(!f.is_rational());
    assert!(f.is_algebraic_integer());
    assert!(!CycNum::root_of_unity(5, 1).is_real());
    let r = CycNum::from_rational(5, q(7, 2));
    assert!(r.is_rational());
    assert!(!r.is_algebraic_integer());
}

#[test]
fn numeric_value_of_golden_ratio() {
    let v = golden().to_complex();
    assert!((v.re - (1.0 + libm::sqrt(5.0)) / 2.0).abs() < 1e-12);
    assert!(v.im.abs() < 1e-12);
}

#[test]
fn text_form() {
    let x = CycNum::new(5, vec![q(1, 2), q(-3, 1), q(0, 1), q(5, 7)]).unwrap();
    assert_eq!(x.render(), "5:[1/2,-3,0,5/7]");
    assert_eq!("5:[1/2,-3,0,5/7]".parse::<CycNum>().unwrap(), x);
    assert!("5:[2/4,0,0,0]".parse::<CycNum>().is_err());
    assert!("5:[3/1,0,0,0]".parse::<CycNum>().is_err());
    assert!("5:[1,0,0]".parse::<CycNum>().is_err());
    assert!("5:[-0,0,0,0]".parse::<CycNum>().is_err());
}

/// Product of all Galois conjugates: the norm by its definition.
fn norm_by_conjugates(a: &CycNum) -> BigRational {
    let m = a.conductor() as u64;
    let mut acc = CycNum::one(a.conductor());
    for g in arith::units_mod(m) {
        acc = &acc * &a.galois(g as i64).unwrap();
    }
    acc.to_rational().expect("norm is rational")
}

const CONDUCTORS: &[u32] = &[1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20];

fn cyc_in(m: u32) -> impl Strategy<Value = CycNum> {
    let d = phi(m);
    (
        prop::collection::vec(-6i64..=6, d),
        prop::collection::vec(1i64..=4, d),
    )
        .prop_map(move |(n, den)| {
            CycNum::new(m, n.iter().zip(&den).map(|(&a, &b)| q(a, b)).collect()).unwrap()
        })
}

fn int_cyc_in(m: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-5i64..=5, phi(m)).prop_map(move |v| CycNum::from_ints(m, &v))
}

fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(CONDUCTORS).prop_flat_map(|m| (cyc_in(m), cyc_in(m), cyc_in(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_ring_homomorphism((a, b, _c) in triple(), seed in 0usize..64) {
        let units = arith::units_mod(a.conductor() as u64);
        let g = units[seed % units.len()] as i64;
        prop_assert_eq!((&a * &b).galois(g).unwrap(), &a.galois(g).unwrap() * &b.galois(g).unwrap());
        prop_assert_eq!((&a + &b).galois(g).unwrap(), &a.galois(g).unwrap() + &b.galois(g).unwrap());
        prop_assert_eq!(a.galois(g).unwrap().norm_to_rationals(), a.norm_to_rationals());
    }

    #[test]
    fn norm_is_multiplicative_and_matches_conjugate_product((a, b, _c) in triple()) {
        prop_assert_eq!((&a * &b).norm_to_rationals(), a.norm_to_rationals() * b.norm_to_rationals());
        prop_assert_eq!(a.norm_to_rationals(), norm_by_conjugates(&a));
    }

    #[test]
    fn integral_norms_are_integers(a in prop::sample::select(CONDUCTORS).prop_flat_map(int_cyc_in)) {
        prop_assert!(a.norm_to_rationals().is_integer());
    }

    #[test]
    fn embed_preserves_arithmetic((a, b, _c) in triple(), k in 1u32..=4) {
        let target = a.conductor() * k;
        let ea = a.embed(target).unwrap();
        let eb = b.embed(target).unwrap();
        prop_assert_eq!(&ea * &eb, (&a * &b).embed(target).unwrap());
        prop_assert_eq!(ea.project(a.conductor()).unwrap(), Some(a.clone()));
        let ratio = (phi(target) / phi(a.conductor())) as i32;
        prop_assert_eq!(ea.norm_to_rationals(), a.norm_to_rationals().pow(ratio));
    }

    #[test]
    fn render_parse_round_trip(a in prop::sample::select(CONDUCTORS).prop_flat_map(cyc_in)) {
        prop_assert_eq!(a.render().parse::<CycNum>().unwrap(), a);
    }
}
