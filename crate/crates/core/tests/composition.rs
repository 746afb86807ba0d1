use num_rational::BigRational;
use proptest::prelude::*;
use sp6flags::composition::{cd_mul, CDElement, CDTower, CompositionError, ZornElement};
use sp6flags::qforms::{qform_equivalent, QForm};
use sp6flags::scalars::{Field, Fp, Modulus, Rational};

fn lambda() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![-1i64, 1, -2, 3, -5, 7])
}

fn coords(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, n)
}

fn mul<F: Field>(a: &CDElement<F>, b: &CDElement<F>) -> CDElement<F> {
    cd_mul(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn octonion_tower_laws(
        l in prop::collection::vec(lambda(), 3),
        x in coords(8), y in coords(8), z in coords(8),
    ) {
        let t = CDTower::<Rational>::new(&(), l.iter().map(|&v| BigRational::from_integer(v.into())).collect()).unwrap();
        let (x, y, z) = (t.from_ints(&x).unwrap(), t.from_ints(&y).unwrap(), t.from_ints(&z).unwrap());
        prop_assert_eq!(mul(&x, &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(mul(&mul(&x, &x), &y), mul(&x, &mul(&x, &y)));
        prop_assert_eq!(mul(&mul(&y, &x), &x), mul(&y, &mul(&x, &x)));
        prop_assert_eq!(mul(&mul(&mul(&x, &y), &x), &z), mul(&x, &mul(&y, &mul(&x, &z))));
        prop_assert_eq!(mul(&x, &y).conj(), mul(&y.conj(), &x.conj()));
        prop_assert_eq!(mul(&x, &x.conj()), t.one().scale(&x.norm()));
        prop_assert_eq!(x.conj().conj(), x.clone());
    }

    #[test]
    fn zorn_vectors_compose(
        p in prop::sample::select(vec![3u64, 5, 7, 11]),
        u in coords(8), v in coords(8), w in coords(8),
    ) {
        let m = Modulus::new(p).unwrap();
        let z = |c: &[i64]| ZornElement::<Fp>::from_coords(&c.iter().map(|&x| Fp::new(m, x)).collect::<Vec<_>>());
        let (u, v, w) = (z(&u), z(&v), z(&w));
        prop_assert_eq!(u.mul(&v).norm(), u.norm() * v.norm());
        prop_assert_eq!(u.mul(&u).mul(&v), u.mul(&u.mul(&v)));
        prop_assert_eq!(u.mul(&v).mul(&u).mul(&w), u.mul(&v.mul(&u.mul(&w))));
        prop_assert_eq!(u.mul(&v).conj(), v.conj().mul(&u.conj()));
    }
}

#[test]
fn split_octonion_norms_are_hyperbolic() {
    let hyp = QForm::<Rational>::hyperbolic(&(), 4);
    for l in [[1i64, -1, -1], [-1, -1, 1], [-1, 1, 5]] {
        let t =
            CDTower::<Rational>::new(&(), l.iter().map(|&v| BigRational::from_integer(v.into())).collect()).unwrap();
        assert!(qform_equivalent(&t.norm_form(), &hyp).unwrap(), "{l:?}");
    }
    let t = CDTower::<Rational>::new(&(), vec![BigRational::from_integer((-1).into()); 3]).unwrap();
    assert!(!qform_equivalent(&t.norm_form(), &hyp).unwrap());
    let one = ZornElement::<Rational>::one(&());
    assert_eq!(one.norm(), BigRational::from_integer(1.into()));
    let idem = ZornElement::<Rational>::from_ints(&(), 1, [0; 3], [0; 3], 0);
    assert_eq!(idem.mul(&idem), idem);
    assert_eq!(idem.norm(), BigRational::from_integer(0.into()));
}

#[test]
fn towers_stop_at_octonions() {
    let l = |n: usize| vec![BigRational::from_integer((-1).into()); n];
    assert!(matches!(CDTower::<Rational>::new(&(), l(4)), Err(CompositionError::TooLong(4))));
    assert!(CDTower::<Rational>::new(&(), vec![BigRational::from_integer(0.into())]).is_err());
    let t = CDTower::<Rational>::new(&(), l(3)).unwrap();
    assert!(t.from_ints(&[1; 4]).is_err());
    assert_eq!(t.truncate(2).dim(), 4);
}
