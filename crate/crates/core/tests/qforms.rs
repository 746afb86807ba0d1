use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use sp6flags::matrix::Matrix;
use sp6flags::qforms::{
    diagonalize_gram, hilbert_symbol_int, is_hyperbolic_pfister, is_isotropic, pfister, qform_equivalent, Place, QForm,
};
use sp6flags::scalars::{factor_u64, Rational};

fn nonzero() -> impl Strategy<Value = i64> {
    (-60i64..=60).prop_filter("nonzero", |x| *x != 0)
}

fn places(ns: &[i64]) -> Vec<Place> {
    let mut ps = vec![2u64];
    for &n in ns.iter().filter(|n| **n != 0) {
        for (p, _) in factor_u64(n.unsigned_abs()) {
            if !ps.contains(&p) {
                ps.push(p);
            }
        }
    }
    let mut out: Vec<Place> = ps.into_iter().map(|p| Place::prime(p).unwrap()).collect();
    out.push(Place::Infinity);
    out
}

fn hs(a: i64, b: i64, v: Place) -> i8 {
    hilbert_symbol_int(&BigInt::from(a), &BigInt::from(b), v).unwrap()
}

fn squarefree(n: i64) -> bool {
    factor_u64(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

fn ternary_has_small_zero(a: i64, b: i64, c: i64) -> bool {
    let bx = ((b * c).abs() as f64).sqrt() as i64;
    let by = ((a * c).abs() as f64).sqrt() as i64;
    let bz = ((a * b).abs() as f64).sqrt() as i64;
    for x in 0..=bx {
        for y in -by..=by {
            for z in -bz..=bz {
                if (x, y, z) != (0, 0, 0) && a * x * x + b * y * y + c * z * z == 0 {
                    return true;
                }
            }
        }
    }
    false
}

proptest! {
    #[test]
    fn hilbert_symbol_laws(a in nonzero(), b in nonzero(), c in nonzero()) {
        let vs = places(&[a, b, c, 1 - a]);
        let mut product = 1i8;
        for &v in &vs {
            prop_assert_eq!(hs(a, b, v), hs(b, a, v));
            prop_assert_eq!(hs(a, b * c, v), hs(a, b, v) * hs(a, c, v));
            prop_assert_eq!(hs(a, -a, v), 1);
            prop_assert_eq!(hs(a, b * 49, v), hs(a, b, v));
            if a != 1 {
                prop_assert_eq!(hs(a, 1 - a, v), 1);
            }
            product *= hs(a, b, v);
        }
        prop_assert_eq!(product, 1);
    }

    #[test]
    fn ternary_isotropy_matches_search(
        a in prop::sample::select(vec![1i64, 2, 3, 5, 7, 11, 13, 6, 10, 15]),
        b in prop::sample::select(vec![1i64, -1, 2, -2, 3, -3, 5, -5, 7, -7, -11, -13, -6]),
        c in prop::sample::select(vec![-1i64, -2, -3, -5, -7, -11, -13, -17, 1, 3]),
    ) {
        prop_assume!(a.gcd(&b) == 1 && a.gcd(&c) == 1 && b.gcd(&c) == 1);
        prop_assume!(squarefree(a) && squarefree(b) && squarefree(c));
        let q = QForm::<Rational>::from_ints(&(), &[a, b, c]).unwrap();
        prop_assert_eq!(is_isotropic(&q).unwrap(), ternary_has_small_zero(a, b, c), "<{}, {}, {}>", a, b, c);
    }

    #[test]
    fn diagonalization_is_a_congruence(
        d in prop::collection::vec(nonzero(), 4),
        p in prop::collection::vec(-3i64..=3, 16),
    ) {
        let ctx = ();
        let pm = Matrix::<Rational>::from_fn(&ctx, 4, 4, |i, j| BigRational::from_integer(p[4 * i + j].into()));
        prop_assume!(!pm.det().eq(&BigRational::from_integer(0.into())));
        let base = QForm::<Rational>::from_ints(&ctx, &d).unwrap();
        let g = pm.transpose().mul(&base.gram()).mul(&pm);
        let dz = diagonalize_gram(&g).unwrap();
        let c = &dz.certificate;
        prop_assert_eq!(c.transpose().mul(&g).mul(c), dz.form.gram());
        prop_assert!(qform_equivalent(&dz.form, &base).unwrap());
    }

    #[test]
    fn two_fold_pfister_hyperbolic_iff_isotropic(a in nonzero(), b in nonzero()) {
        let q = pfister::<Rational>(&(), &[BigRational::from_integer(a.into()), BigRational::from_integer(b.into())]).unwrap();
        let hyp = is_hyperbolic_pfister(&q).unwrap();
        prop_assert_eq!(hyp, is_isotropic(&q).unwrap());
        let split = places(&[a, b]).into_iter().all(|v| hs(a, b, v) == 1);
        prop_assert_eq!(hyp, split);
        prop_assert_eq!(hyp, qform_equivalent(&q, &QForm::hyperbolic(&(), 2)).unwrap());
    }
}

#[test]
fn known_hilbert_symbols() {
    let two = Place::prime(2).unwrap();
    assert_eq!(hs(-1, -1, two), -1);
    assert_eq!(hs(-1, -1, Place::Infinity), -1);
    assert_eq!(hs(2, 3, Place::prime(3).unwrap()), -1);
    assert_eq!(hs(5, 5, Place::prime(5).unwrap()), 1);
    assert_eq!(hs(3, 3, Place::prime(3).unwrap()), -1);
    assert_eq!(hs(2, 5, two), -1);
    assert_eq!(hs(3, 7, two), -1);
    assert!(Place::prime(9).is_err());
}

#[test]
fn octonion_norm_forms() {
    let ones = QForm::<Rational>::from_ints(&(), &[1; 8]).unwrap();
    assert!(!is_isotropic(&ones).unwrap());
    let q = pfister::<Rational>(&(), &[(-1).into(), (-1).into(), 1.into()].map(BigRational::from_integer)).unwrap();
    assert!(is_hyperbolic_pfister(&q).unwrap());
}
