use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realslice::linking::{
    h_circle_v, halfplane_root_count, lk_boundary_with, lk_chart, verify_theorem5, LinkError, OrientedLine,
};
use realslice::poly::{rat, BinaryForm, GaussianRational, HomPoly, Rational};
use realslice::slice::{certify_slice, conjugate_flip, CoorientedBase};

fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let lc = c[d];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lc).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    z
}

fn to_c(g: &GaussianRational) -> Complex64 {
    Complex64::new(g.re.to_f64().unwrap(), g.im.to_f64().unwrap())
}

fn from_roots(lead: (i64, i64), roots: &[(i64, i64)]) -> BinaryForm {
    let mut c = vec![GaussianRational::new(rat(lead.0), rat(lead.1))];
    for &(re, im) in roots {
        let r = GaussianRational::new(rat(re), rat(im));
        let mut next = vec![GaussianRational::zero(); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] += &(-(a * &r));
        }
        c = next;
    }
    BinaryForm::new(c.len() as u32 - 1, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn halfplane_count_matches_durand_kerner(
        coeffs in prop::collection::vec((-6i64..=6, -6i64..=6), 2..=7)
    ) {
        let c: Vec<GaussianRational> = coeffs.iter().map(|&(a, b)| GaussianRational::new(rat(a), rat(b))).collect();
        prop_assume!(!c.last().unwrap().is_zero());
        let form = BinaryForm::new(c.len() as u32 - 1, c.clone());
        let roots = durand_kerner(&c.iter().map(to_c).collect::<Vec<_>>());
        // Skip instances whose roots sit too close to the real axis to classify in f64.
        prop_assume!(roots.iter().all(|z| z.im.abs() > 1e-6));
        let upper = roots.iter().filter(|z| z.im > 0.0).count() as u32;
        let got = halfplane_root_count(&form).unwrap();
        prop_assert_eq!(got.upper, upper);
        prop_assert_eq!(got.upper + got.lower, got.degree);
    }

    #[test]
    fn halfplane_count_from_known_roots(
        lead in (-3i64..=3, -3i64..=3),
        roots in prop::collection::vec((-4i64..=4, -4i64..=4), 1..=6)
    ) {
        prop_assume!(lead != (0, 0));
        let form = from_roots(lead, &roots);
        let got = halfplane_root_count(&form);
        if roots.iter().any(|r| r.1 == 0) {
            prop_assert_eq!(got, Err(LinkError::RealRoot));
        } else {
            let got = got.unwrap();
            prop_assert_eq!(got.upper as usize, roots.iter().filter(|r| r.1 > 0).count());
            prop_assert_eq!(got.lower as usize, roots.iter().filter(|r| r.1 < 0).count());
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, d: u32) -> HomPoly {
    let mut terms = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            terms.push(([a, b, d - a - b], GaussianRational::from_int(rng.gen_range(-5..=5))));
        }
    }
    HomPoly::from_terms(d, terms).unwrap()
}

/// A generic pencil and a line disjoint from its real base.
fn random_instance(seed: u64) -> (CoorientedBase, OrientedLine) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=3);
    let base = loop {
        let (r, s) = (random_form(&mut rng, d), random_form(&mut rng, d));
        if let Ok(b) = certify_slice(&r, &s) {
            break b;
        }
    };
    loop {
        let mut p = || std::array::from_fn(|_| rng.gen_range(-4..=4));
        let Ok(line) = OrientedLine::from_ints(p(), p()) else { continue };
        if lk_chart(&line, &base).is_ok() && h_circle_v(&line, &base).is_ok() {
            return (base, line);
        }
    }
}

#[test]
fn identity_holds_on_random_instances() {
    let mut nonzero_lk = 0;
    for seed in 0..200u64 {
        let (base, line) = random_instance(seed);
        let rep = verify_theorem5(&line, &base).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(rep.residual.is_zero(), "seed {seed}: residual {}", rep.residual);
        assert_eq!(rep.lk_chart, rep.lk_boundary, "seed {seed}");
        if !rep.lk_chart.is_zero() {
            nonzero_lk += 1;
        }
    }
    assert!(nonzero_lk > 20, "only {nonzero_lk} instances with lk ≠ 0");
}

#[test]
fn linking_number_is_half_integral_with_parity_of_base() {
    for seed in 200..260u64 {
        let (base, line) = random_instance(seed);
        let twice = lk_chart(&line, &base).unwrap() * rat(2);
        assert!(twice.is_integer());
        let n = base.points.len() as i64;
        assert_eq!((twice.to_integer() - n) % 2, 0.into(), "seed {seed}");
        let half_d = Rational::new((base.degree() as i64).into(), 2.into());
        assert!(twice.abs() <= half_d * rat(2));
    }
}

#[test]
fn conjugation_and_reversal_are_antisymmetric() {
    for seed in 300..340u64 {
        let (base, line) = random_instance(seed);
        let d = base.degree();
        let lk = lk_chart(&line, &base).unwrap();
        let hv = h_circle_v(&line, &base).unwrap();
        let conj = conjugate_flip(&base);
        assert_eq!(lk_chart(&line, &conj).unwrap(), -lk.clone(), "seed {seed}");
        assert_eq!(h_circle_v(&line, &conj).unwrap(), d - hv, "seed {seed}");
        let rev = line.reversed();
        assert_eq!(lk_chart(&rev, &base).unwrap(), -lk.clone(), "seed {seed}");
        assert_eq!(lk_boundary_with(&rev, &base, seed).unwrap(), -lk, "seed {seed}");
        assert_eq!(h_circle_v(&rev, &base).unwrap(), d - hv, "seed {seed}");
    }
}

#[test]
fn boundary_value_is_seed_independent() {
    for seed in 400..420u64 {
        let (base, line) = random_instance(seed);
        let lk = lk_chart(&line, &base).unwrap();
        for aux in [1, 7, 12345] {
            assert_eq!(lk_boundary_with(&line, &base, aux).unwrap(), lk, "seed {seed} aux {aux}");
        }
    }
}
