use num_traits::Zero;
use proptest::prelude::*;
use realslice::linalg::{self, Vector};
use realslice::orient::*;
use realslice::poly::{rat, GaussianRational, Rational};

fn vec_of(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| v.into_iter().map(rat).collect())
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(vec_of(n), n).prop_filter("singular", |m| !linalg::det(m).is_zero())
}

fn basis(cols: Vec<Vector>) -> BasisMatrix {
    let n = cols[0].len();
    BasisMatrix::new(n, cols).unwrap()
}

fn gauss(n: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| GaussianRational::new(rat(a), rat(b))).collect())
}

fn sign(r: &Rational) -> i8 {
    if *r > rat(0) {
        1
    } else if *r < rat(0) {
        -1
    } else {
        0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orientation_sign_is_multiplicative(
        (a, b, c) in (1usize..=4).prop_flat_map(|n| (square(n), square(n), square(n)))
    ) {
        let (a, b, c) = (basis(a), basis(b), basis(c));
        let ab = orientation_sign(&b, &a).unwrap().value;
        let bc = orientation_sign(&c, &b).unwrap().value;
        let ac = orientation_sign(&c, &a).unwrap().value;
        prop_assert_eq!(ac, ab * bc);
    }

    #[test]
    fn complex_bases_share_orientation(
        (e, f) in (1usize..=3).prop_flat_map(|k| (
            prop::collection::vec(gauss(k), k),
            prop::collection::vec(gauss(k), k),
        ))
    ) {
        let (Ok(be), Ok(bf)) = (complex_orientation_basis(&e), complex_orientation_basis(&f)) else {
            return Ok(());
        };
        prop_assert_eq!(orientation_sign(&bf, &be).unwrap().value, 1);
    }

    #[test]
    fn intersection_sign_matches_determinants(
        (ty, tz, nz) in (1usize..=2, 1usize..=2).prop_flat_map(|(k, l)| (
            prop::collection::vec(vec_of(k + l), k),
            prop::collection::vec(vec_of(k + l), l),
            prop::collection::vec(vec_of(k + l), k),
        ))
    ) {
        let n = ty.len() + tz.len();
        let Ok(tzb) = BasisMatrix::new(n, tz.clone()) else { return Ok(()); };
        let Ok(tyb) = BasisMatrix::new(n, ty.clone()) else { return Ok(()); };
        let Ok(z) = QuotientBasis::new(tzb, nz.clone()) else { return Ok(()); };
        let y_tz: Vec<Vector> = ty.iter().chain(tz.iter()).cloned().collect();
        let nz_tz: Vec<Vector> = nz.iter().chain(tz.iter()).cloned().collect();
        let expect = sign(&linalg::det(&y_tz)) * sign(&linalg::det(&nz_tz));
        match intersection_sign(&tyb, &z) {
            Ok(s) => prop_assert_eq!(s.value, expect),
            Err(OrientError::NotTransverse) => prop_assert_eq!(expect, 0),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn full_codimension_cup_is_product_of_signs(
        (ty, tz, ny, nz) in (1usize..=2, 1usize..=2).prop_flat_map(|(k, l)| (
            prop::collection::vec(vec_of(k + l), k),
            prop::collection::vec(vec_of(k + l), l),
            prop::collection::vec(vec_of(k + l), l),
            prop::collection::vec(vec_of(k + l), k),
        ))
    ) {
        let n = ty.len() + tz.len();
        let (Ok(tyb), Ok(tzb)) = (BasisMatrix::new(n, ty.clone()), BasisMatrix::new(n, tz.clone())) else {
            return Ok(());
        };
        let (Ok(y), Ok(z)) = (QuotientBasis::new(tyb, ny.clone()), QuotientBasis::new(tzb, nz.clone())) else {
            return Ok(());
        };
        let cat = |a: &[Vector], b: &[Vector]| -> Vec<Vector> { a.iter().chain(b).cloned().collect() };
        let s = sign(&linalg::det(&cat(&ty, &tz)));
        match cup_coorientation(&y, &z) {
            Ok(c) => {
                let expect = s * sign(&linalg::det(&cat(&nz, &tz))) * sign(&linalg::det(&cat(&ty, &ny)));
                prop_assert_eq!(sign(&linalg::det(c.reps())), expect);
            }
            Err(OrientError::NotTransverse) => prop_assert_eq!(s, 0),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn hyperplane_cup_in_four_space(
        frame in square(4),
        mix_y in square(3),
        mix_z in square(3),
        ny in vec_of(4),
        nz in vec_of(4),
    ) {
        // frame = (a, c, w₁, w₂); T_Y = span(w, a), T_Z = span(w, c).
        let (a, c, w) = (frame[0].clone(), frame[1].clone(), vec![frame[2].clone(), frame[3].clone()]);
        let ty_gen = vec![w[0].clone(), w[1].clone(), a.clone()];
        let tz_gen = vec![w[0].clone(), w[1].clone(), c.clone()];
        let ty: Vec<Vector> = mix_y.iter().map(|m| linalg::combine(&ty_gen, m)).collect();
        let tz: Vec<Vector> = mix_z.iter().map(|m| linalg::combine(&tz_gen, m)).collect();
        let (Ok(y), Ok(z)) = (
            QuotientBasis::new(basis(ty), vec![ny.clone()]),
            QuotientBasis::new(basis(tz), vec![nz.clone()]),
        ) else {
            return Ok(());
        };
        let cup = cup_coorientation(&y, &z).unwrap();
        let with_w = |x: Vector, yv: Vector| vec![x, yv, w[0].clone(), w[1].clone()];
        let got = sign(&linalg::det(&with_w(cup.reps()[0].clone(), cup.reps()[1].clone())));
        let expect = sign(&linalg::det(&with_w(nz.clone(), c.clone())))
            * sign(&linalg::det(&with_w(a.clone(), ny.clone())))
            * sign(&linalg::det(&with_w(a.clone(), c.clone())));
        prop_assert_eq!(got, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn semilinear_pullback_is_parity_of_dimension(
        (m, semi) in (1usize..=5).prop_flat_map(|k| (prop::collection::vec(gauss(k), k), any::<bool>()))
    ) {
        let k = m.len();
        let kind = if semi { MapKind::Semilinear } else { MapKind::Linear };
        let f = ComplexMatrix::new(m, kind).unwrap();
        match semilinear_pullback_sign(&f) {
            Ok(s) => {
                let expect = if semi && k % 2 == 1 { -1 } else { 1 };
                prop_assert_eq!(s.value, expect);
            }
            Err(OrientError::Singular) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
