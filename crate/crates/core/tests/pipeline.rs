use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sp6flags::census::{predicted_orbit_counts, FiberKey};
use sp6flags::invariants::{f1, f2};
use sp6flags::orbits::{canonicalize_v, q_of, split_form};
use sp6flags::scalars::{Field, Fp, Modulus, Rational};
use sp6flags::wedge::{
    act_decomposed, act_wedge3, contract_psi, join_components, kernel_basis, random_sp6, random_trivector, z_identify,
    z_to_trivector,
};

fn fp(p: u64) -> Modulus {
    Modulus::new(p).unwrap()
}

#[test]
fn kernel_has_dimension_fourteen() {
    assert_eq!(kernel_basis::<Rational>(&()).len(), 14);
    for p in [3, 5, 7, 101] {
        let basis = kernel_basis::<Fp>(&fp(p));
        assert_eq!(basis.len(), 14, "p = {p}");
        assert!(basis.iter().all(|t| contract_psi(t).iter().all(|c| c.eq_zero())));
    }
}

#[test]
fn group_orders_match_tables() {
    let t = predicted_orbit_counts(3).unwrap();
    assert_eq!((t.sp6, t.sl3, t.su3, t.sl2), (9_170_703_360, 5_616, 6_048, 24));
    assert_eq!(t.x_fibers[&FiberKey { i: 1, j: None }], 1_516_320);
    assert_eq!(t.x_fibers[&FiberKey { i: 2, j: None }], 1_632_960);
    for p in [5u64, 7, 11] {
        let q = p as u128;
        let t = predicted_orbit_counts(p).unwrap();
        assert_eq!(t.sp6, q.pow(9) * (q * q - 1) * (q.pow(4) - 1) * (q.pow(6) - 1));
        assert_eq!(t.su3, q.pow(3) * (q * q - 1) * (q.pow(3) + 1));
        assert_eq!(t.v_orbit_count, (p - 1) * (p - 1));
        for (k, n) in &t.x_fibers {
            let split = (1..p).any(|x| (x * x + k.i as u64).is_multiple_of(p));
            assert_eq!(*n as u128, t.sp6 / if split { t.sl3 } else { t.su3 }, "p = {p}, {k}");
        }
        assert!(t.v_fibers.values().all(|&n| n as u128 == t.sp6 / (q * (q * q - 1))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn z_coordinates_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_trivector::<Rational, _>(&(), &mut rng, 9);
        prop_assert_eq!(z_to_trivector(&z_identify(&t)), t);
    }

    #[test]
    fn invariants_are_sp6_invariant(seed in any::<u64>(), p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = fp(p);
        let basis = kernel_basis::<Fp>(&m);
        let x = basis.iter().fold(sp6flags::wedge::TriVector::zero(&m), |acc, b| {
            acc.add(&b.scale(&Fp::new(m, rand::Rng::gen_range(&mut rng, 0..p as i64))))
        });
        let g = random_sp6::<Fp, _>(&m, &mut rng, 6);
        let t = random_trivector::<Fp, _>(&m, &mut rng, p as i64);
        prop_assert_eq!(f1(&act_wedge3(&g, &x)).unwrap(), f1(&x).unwrap());
        prop_assert_eq!(f2(&act_decomposed(&g, &t)), f2(&t));
    }

    #[test]
    fn canonical_v_over_prime_fields(
        p in prop::sample::select(vec![5u64, 7, 11, 13]),
        y0 in 1i64..13,
        v in prop::collection::vec(0i64..13, 6),
    ) {
        let m = fp(p);
        let y0 = Fp::new(m, y0);
        let v: Vec<Fp> = v.iter().map(|&a| Fp::new(m, a)).collect();
        prop_assume!(!y0.eq_zero() && !q_of(&v).eq_zero());
        let c = canonicalize_v(&y0, &v).unwrap();
        let (zero, one) = (Fp::new(m, 0), Fp::new(m, 1));
        let want = vec![q_of(&v), zero, zero, one, zero, zero];
        prop_assert_eq!(&c.v, &want);
        prop_assert_eq!(
            act_decomposed(&c.g.g, &join_components(&split_form(&y0), &v)),
            join_components(&split_form(&y0), &want)
        );
    }
}

#[test]
fn split_forms_have_expected_invariants() {
    for y0 in [1i64, 2, -3, 7] {
        let y = Rational::from_int(&(), y0);
        let x = split_form(&y);
        assert!(!f1(&x).unwrap().eq_zero());
        let q = Rational::from_int(&(), 5);
        let one = Rational::from_int(&(), 1);
        let zero = Rational::from_int(&(), 0);
        let a =
            f2(&join_components(&x, &[q.clone(), zero.clone(), zero.clone(), one.clone(), zero.clone(), zero.clone()]));
        let b = f2(&join_components(&x, &[one.clone(), zero.clone(), zero.clone(), q, zero.clone(), zero]));
        assert_eq!(a, b);
    }
}
