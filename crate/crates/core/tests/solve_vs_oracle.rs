use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realslice::poly::{ratio, GaussianRational, HomPoly};
use realslice::solve::oracle::{brute_force_base_oracle, projective_distance};
use realslice::solve::{real_base_points, real_base_points_with, CertifiedBasePoint, SolveError, SolverOptions};

fn random_form(rng: &mut ChaCha8Rng, d: u32) -> HomPoly {
    let mut terms = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            let c: i64 = rng.gen_range(-5..=5);
            terms.push(([a, b, d - a - b], GaussianRational::from_int(c)));
        }
    }
    HomPoly::from_terms(d, terms).unwrap()
}

fn random_pencil(seed: u64) -> (HomPoly, HomPoly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=4);
    loop {
        let (r, s) = (random_form(&mut rng, d), random_form(&mut rng, d));
        if !r.is_zero() && !s.is_zero() {
            return (r, s);
        }
    }
}

fn unit(p: &CertifiedBasePoint) -> [f64; 3] {
    p.approx()
}

fn same_points(a: &[CertifiedBasePoint], b: &[CertifiedBasePoint], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().filter(|q| projective_distance(unit(p), unit(q)) < tol).count() == 1)
}

#[test]
fn certified_points_match_the_oracle() {
    let mut checked = 0;
    for seed in 0..100u64 {
        let (r, s) = random_pencil(seed);
        let pts = match real_base_points(&r, &s) {
            Ok(p) => p,
            Err(SolveError::CommonFactor { .. }) => continue,
            Err(e) => panic!("seed {seed}: {e}"),
        };
        let d = r.degree() as usize;
        assert!(pts.len() <= d * d, "seed {seed}: Bézout bound");
        if pts.iter().any(|p| p.multiplicity() > 1) {
            continue;
        }
        let fine: Vec<CertifiedBasePoint> = pts.iter().map(|p| p.refine(&ratio(1, 1 << 30))).collect();
        let oracle = brute_force_base_oracle(&r, &s, 16);
        assert_eq!(oracle.unresolved, 0, "seed {seed}: oracle left cells unresolved");
        assert_eq!(oracle.clusters.len(), fine.len(), "seed {seed}: {r} ; {s}");
        for c in &oracle.clusters {
            let hits = fine.iter().filter(|p| projective_distance(c.point, unit(p)) < 1e-6).count();
            assert_eq!(hits, 1, "seed {seed}: oracle point {:?}", c.point);
        }
        checked += 1;
    }
    assert!(checked >= 90, "only {checked} generic instances");
}

#[test]
fn base_is_a_pencil_invariant() {
    for seed in 200..230u64 {
        let (r, s) = random_pencil(seed);
        let Ok(base) = real_base_points(&r, &s) else { continue };
        let q = ratio(seed as i64 % 7 - 3, 2);
        let s2 = s.add(&r.scale_real(&q)).unwrap();
        for (a, b) in [(&s, &r), (&r, &s2)] {
            let other = real_base_points(a, b).unwrap();
            assert!(same_points(&base, &other, 1e-6), "seed {seed}");
        }
    }
}

#[test]
fn coordinates_do_not_depend_on_the_elimination() {
    let w = ratio(1, 100_000_000);
    for seed in 300..320u64 {
        let (r, s) = random_pencil(seed);
        let a = SolverOptions { transform_seed: 1, ..Default::default() };
        let b = SolverOptions { transform_seed: 99, ..Default::default() };
        let (Ok(pa), Ok(pb)) = (real_base_points_with(&r, &s, &a), real_base_points_with(&r, &s, &b)) else {
            continue;
        };
        assert_eq!(pa.len(), pb.len());
        for p in &pa {
            let p = p.refine(&w);
            let q = pb
                .iter()
                .map(|q| q.refine(&w))
                .find(|q| q.chart() == p.chart() && q.bbox()[0].intersects(&p.bbox()[0]) && q.bbox()[1].intersects(&p.bbox()[1]))
                .expect("matching point");
            assert!(q.width() <= w && p.width() <= w);
        }
    }
}
