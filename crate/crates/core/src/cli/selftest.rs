//! The acceptance suite. Each criterion returns PASS or FAIL with a short
//! detail line; nothing here panics on a failed check.

use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::batch_seeds;
use super::random::{gen_random, random_form};
use crate::interval::to_f64;
use crate::linalg::{self, Vector};
use crate::linking::{h_circle_v, lk_boundary_with, lk_chart, verify_theorem5, LinkingReport, OrientedLine};
use crate::orient::{
    complex_orientation_basis, cup_coorientation, orientation_sign, quotient_sign, semilinear_pullback_sign,
    ses_orientation, BasisMatrix, ComplexMatrix, MapKind, QuotientBasis,
};
use crate::poly::{complexify, rat, realify, sum_of_squares, GaussianRational, HomPoly, Rational};
use crate::slice::{certify_slice, chart_sign, conjugate_flip, CoorientedBase};
use crate::solve::oracle::brute_force_base_oracle;
use crate::solve::{real_base_points, real_base_points_with, CertifiedBasePoint, SolverOptions};

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {} ({:.2}s)", self.id, self.name, self.detail, self.seconds)
    }
}

type Check = Result<String, String>;

struct Instance {
    base: CoorientedBase,
    line: OrientedLine,
    report: Result<LinkingReport, String>,
}

fn instances(seed: u64, count: usize, degrees: (u32, u32)) -> Vec<Result<Instance, String>> {
    batch_seeds(seed, count)
        .par_iter()
        .map(|&s| {
            let (base, line) = gen_random(s, degrees).map_err(|e| e.to_string())?;
            let report = verify_theorem5(&line, &base).map_err(|e| format!("seed {s}: {e}"));
            Ok(Instance { base, line, report })
        })
        .collect()
}

fn half(d: u32) -> Rational {
    Rational::new((d as i64).into(), 2.into())
}

fn c1_identity(main: &[Result<Instance, String>]) -> Check {
    let mut degs = [0usize; 5];
    for (i, inst) in main.iter().enumerate() {
        let inst = inst.as_ref().map_err(|e| format!("instance {i}: {e}"))?;
        let rep = inst.report.as_ref().map_err(|e| format!("instance {i}: {e}"))?;
        if !rep.residual.is_zero() {
            return Err(format!("instance {i}: residual {}", rep.residual));
        }
        degs[rep.degree as usize] += 1;
    }
    Ok(format!("{} instances, residual 0 on all; degrees 1-4: {:?}", main.len(), &degs[1..]))
}

fn c2_bound(main: &[Result<Instance, String>]) -> Check {
    let mut tight = 0;
    for (i, inst) in main.iter().enumerate() {
        let rep = inst.as_ref().map_err(|e| e.clone())?.report.as_ref().map_err(|e| e.clone())?;
        let hd = half(rep.degree);
        if rep.lk_chart.abs() > hd {
            return Err(format!("instance {i}: |lk| = {} > {hd}", rep.lk_chart.abs()));
        }
        if rep.lk_chart.abs() == hd {
            tight += 1;
        }
    }
    Ok(format!("|lk| ≤ D/2 on {} instances ({tight} attain the bound)", main.len()))
}

fn c3_single_point(single: &[Result<Instance, String>]) -> Check {
    let b = certify_slice(&HomPoly::x(), &HomPoly::y()).map_err(|e| e.to_string())?;
    let l = OrientedLine::from_ints([1, 0, 0], [0, 1, 0]).map_err(|e| e.to_string())?;
    let calib = lk_chart(&l, &b).map_err(|e| e.to_string())?;
    if calib != Rational::new(1.into(), 2.into()) {
        return Err(format!("calibration instance gives {calib}"));
    }
    for (i, inst) in single.iter().enumerate() {
        let inst = inst.as_ref().map_err(|e| e.clone())?;
        if inst.base.points.len() != 1 {
            return Err(format!("instance {i}: {} base points", inst.base.points.len()));
        }
        let rep = inst.report.as_ref().map_err(|e| e.clone())?;
        if rep.lk_chart.abs() != half(1) {
            return Err(format!("instance {i}: lk = {}", rep.lk_chart));
        }
    }
    Ok(format!("calibration lk = +1/2; |lk| = 1/2 on {} single-point instances", single.len()))
}

fn c4_equivalence(all: &[&Result<Instance, String>]) -> Check {
    let bad: Vec<String> = all
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let inst = match inst {
                Ok(x) => x,
                Err(e) => return Some(e.clone()),
            };
            let rep = match &inst.report {
                Ok(r) => r,
                Err(e) => return Some(e.clone()),
            };
            if rep.lk_chart != rep.lk_boundary {
                return Some(format!("instance {i}: {} vs {}", rep.lk_chart, rep.lk_boundary));
            }
            for aux in 1..=10u64 {
                match lk_boundary_with(&inst.line, &inst.base, aux.wrapping_mul(0x9e37_79b9)) {
                    Ok(v) if v == rep.lk_chart => {}
                    Ok(v) => return Some(format!("instance {i}, aux {aux}: {v} vs {}", rep.lk_chart)),
                    Err(e) => return Some(format!("instance {i}, aux {aux}: {e}")),
                }
            }
            None
        })
        .collect();
    match bad.first() {
        None => Ok(format!("lk_chart = lk_boundary on {} instances, 10 auxiliary draws each", all.len())),
        Some(e) => Err(format!("{} mismatches, first: {e}", bad.len())),
    }
}

fn random_gaussian(rng: &mut impl Rng) -> GaussianRational {
    let mut r = || Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into());
    GaussianRational::new(r(), r())
}

fn c5_semilinear() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 500 {
        let k = rng.gen_range(1..=5);
        let rows: Vec<Vec<GaussianRational>> =
            (0..k).map(|_| (0..k).map(|_| random_gaussian(&mut rng)).collect()).collect();
        let (Ok(semi), Ok(lin)) = (
            ComplexMatrix::new(rows.clone(), MapKind::Semilinear),
            ComplexMatrix::new(rows, MapKind::Linear),
        ) else {
            continue;
        };
        let Ok(s) = semilinear_pullback_sign(&semi) else { continue };
        let l = semilinear_pullback_sign(&lin).map_err(|e| e.to_string())?;
        let expect = if k % 2 == 0 { 1 } else { -1 };
        if s.value != expect || l.value != 1 {
            return Err(format!("k = {k}: semilinear {}, linear {}", s.value, l.value));
        }
        done += 1;
    }
    Ok("(−1)^k for 500 semilinear maps, +1 for the linear ones".into())
}

fn c6_conjugation(main: &[Result<Instance, String>]) -> Check {
    let mut checked = 0;
    for (i, inst) in main.iter().take(50).enumerate() {
        let inst = inst.as_ref().map_err(|e| e.clone())?;
        let (b, l) = (&inst.base, &inst.line);
        let c = conjugate_flip(b);
        for (f, g) in b.points.iter().zip(&c.points) {
            for o in [1, -1] {
                if chart_sign(g, o) != -chart_sign(f, o) {
                    return Err(format!("instance {i}: chart sign not negated"));
                }
            }
        }
        let direct = certify_slice(b.pencil.r(), &b.pencil.s().neg()).map_err(|e| format!("instance {i}: {e}"))?;
        if direct.points.iter().zip(&c.points).any(|(f, g)| f.det_sign != g.det_sign) {
            return Err(format!("instance {i}: flipped signs differ from a direct certification of (R, −S)"));
        }
        let rep = verify_theorem5(l, b).map_err(|e| e.to_string())?;
        let conj = verify_theorem5(l, &c).map_err(|e| e.to_string())?;
        let d = b.degree();
        if conj.lk_chart != -rep.lk_chart.clone() || conj.h_dot_v != d - rep.h_dot_v || !conj.residual.is_zero() {
            return Err(format!(
                "instance {i}: lk {} → {}, H∘V {} → {}, residual {}",
                rep.lk_chart, conj.lk_chart, rep.h_dot_v, conj.h_dot_v, conj.residual
            ));
        }
        if h_circle_v(l, &direct).map_err(|e| e.to_string())? != conj.h_dot_v {
            return Err(format!("instance {i}: H∘V of (R, −S) disagrees"));
        }
        checked += 1;
    }
    Ok(format!("{checked} slices: signs and lk negated, H∘V ↦ D − H∘V, residual 0"))
}

fn generic_pencil(rng: &mut ChaCha8Rng, max_degree: u32) -> (HomPoly, HomPoly, Vec<CertifiedBasePoint>, usize) {
    let d = rng.gen_range(1..=max_degree);
    let mut rejected = 0;
    loop {
        let (r, s) = (random_form(rng, d), random_form(rng, d));
        match real_base_points(&r, &s) {
            Ok(p) if p.iter().all(|q| q.multiplicity() == 1) => return (r, s, p, rejected),
            _ => rejected += 1,
        }
    }
}

/// Whether the oracle point lies in the box of `p`, up to `slack`.
fn oracle_in_box(point: [f64; 3], p: &CertifiedBasePoint, slack: f64) -> bool {
    let [a, b] = p.chart().coords();
    let c = p.chart().index();
    if point[c].abs() < 1e-12 {
        return false;
    }
    let coords = [point[a] / point[c], point[b] / point[c]];
    p.bbox().iter().zip(coords).all(|(iv, x)| to_f64(iv.lo()) - slack <= x && x <= to_f64(iv.hi()) + slack)
}

fn c7_solver() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pencils: Vec<_> = (0..100).map(|_| generic_pencil(&mut rng, 4)).collect();
    let rejected: usize = pencils.iter().map(|p| p.3).sum();
    let bad: Vec<String> = pencils
        .par_iter()
        .enumerate()
        .filter_map(|(i, (r, s, pts, _))| {
            let d = r.degree() as usize;
            if pts.len() > d * d {
                return Some(format!("pencil {i}: {} points exceed D² = {}", pts.len(), d * d));
            }
            let fine: Vec<CertifiedBasePoint> = pts.iter().map(|p| p.refine(&Rational::new(1.into(), (1i64 << 30).into()))).collect();
            let oracle = brute_force_base_oracle(r, s, 16);
            if oracle.unresolved != 0 {
                return Some(format!("pencil {i}: oracle left {} cells unresolved", oracle.unresolved));
            }
            if oracle.clusters.len() != fine.len() {
                return Some(format!("pencil {i}: oracle {} vs solver {}", oracle.clusters.len(), fine.len()));
            }
            for c in &oracle.clusters {
                let hits = fine.iter().filter(|p| oracle_in_box(c.point, p, c.radius.max(1e-9))).count();
                if hits != 1 {
                    return Some(format!("pencil {i}: oracle point in {hits} boxes"));
                }
            }
            None
        })
        .collect();
    match bad.first() {
        None => Ok(format!("100 pencils match the oracle one-to-one ({rejected} non-generic draws resampled)")),
        Some(e) => Err(e.clone()),
    }
}

fn same_point_sets(a: &[CertifiedBasePoint], b: &[CertifiedBasePoint], w: &Rational) -> bool {
    let a: Vec<_> = a.iter().map(|p| p.refine(w)).collect();
    let b: Vec<_> = b.iter().map(|p| p.refine(w)).collect();
    let meets = |p: &CertifiedBasePoint, q: &CertifiedBasePoint| {
        p.chart() == q.chart() && p.bbox().iter().zip(q.bbox()).all(|(x, y)| x.intersects(y))
    };
    a.len() == b.len()
        && a.iter().all(|p| b.iter().filter(|q| meets(p, q)).count() == 1)
        && b.iter().all(|q| a.iter().filter(|p| meets(p, q)).count() == 1)
}

fn random_complex_form(rng: &mut impl Rng, d: u32) -> HomPoly {
    let mut terms = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            let c = GaussianRational::new(rat(rng.gen_range(-4..=4)), rat(rng.gen_range(-4..=4)));
            terms.push(([a, b, d - a - b], c));
        }
    }
    HomPoly::from_terms(d, terms).expect("terms of degree d")
}

fn c8_realification() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let w = Rational::new(1.into(), 100_000_000.into());
    let mut total_points = 0;
    let mut sos_solved = 0;
    let mut done = 0;
    while done < 50 {
        let d = rng.gen_range(1..=3);
        let p = random_complex_form(&mut rng, d);
        let (r, s) = realify(&p);
        let Ok(base) = real_base_points(&r, &s) else { continue };
        if base.iter().any(|q| q.multiplicity() > 1) {
            continue;
        }
        // The real zeros of P are those of λP for any λ ≠ 0.
        let lambda = loop {
            let l = random_gaussian(&mut rng);
            if !l.is_zero() {
                break l;
            }
        };
        let (lr, ls) = realify(&p.scale(&lambda));
        let opts = SolverOptions { transform_seed: 0xc8 + done as u64, ..Default::default() };
        let zeros = real_base_points_with(&lr, &ls, &opts).map_err(|e| format!("P = {p}: {e}"))?;
        if !same_point_sets(&base, &zeros, &w) {
            return Err(format!("P = {p}: real zeros differ from the base of (ℜP, ℑP)"));
        }
        if complexify(&r, &s).map_err(|e| e.to_string())? != p {
            return Err(format!("P = {p}: complexify ∘ realify is not the identity"));
        }
        let f = sum_of_squares(&r, &s).map_err(|e| e.to_string())?;
        if base.iter().any(|q| q.sign_of_form(&f) != 0) {
            return Err(format!("P = {p}: R² + S² does not vanish on the base"));
        }
        if d <= 2 {
            // Real zeros of R² + S² through the pair (R² + S², RS).
            let zs = real_base_points(&f, &r.mul(&s)).map_err(|e| format!("P = {p}: {e}"))?;
            if !same_point_sets(&base, &zs, &w) {
                return Err(format!("P = {p}: zeros of R² + S² differ from the base"));
            }
            sos_solved += 1;
        }
        total_points += base.len();
        done += 1;
    }
    Ok(format!(
        "50 complex forms, {total_points} real zeros matched at width 1e-8; R² + S² checked on all, solved on {sos_solved}"
    ))
}

fn random_vectors(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Vector> {
    (0..k).map(|_| (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect()).collect()
}

fn c9_orientation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let err = |e: crate::orient::OrientError| e.to_string();
    // Multiplicativity along chains.
    let mut chains = 0;
    while chains < 200 {
        let n = rng.gen_range(1..=4);
        let [a, b, c] = [0, 1, 2].map(|_| random_vectors(&mut rng, n, n));
        if [&a, &b, &c].iter().any(|m| linalg::det(m).is_zero()) {
            continue;
        }
        let [a, b, c] = [a, b, c].map(|m| BasisMatrix::new(n, m).expect("invertible"));
        let ab = orientation_sign(&b, &a).map_err(err)?.value;
        let bc = orientation_sign(&c, &b).map_err(err)?.value;
        let ac = orientation_sign(&c, &a).map_err(err)?.value;
        if ac != ab * bc {
            return Err("orientation_sign is not multiplicative".into());
        }
        chains += 1;
    }
    // Complex bases of the same space share an orientation.
    let mut pairs = 0;
    while pairs < 200 {
        let n = rng.gen_range(1..=3);
        let basis = |rng: &mut ChaCha8Rng| -> Vec<Vec<GaussianRational>> {
            (0..n).map(|_| (0..n).map(|_| random_gaussian(rng)).collect()).collect()
        };
        let (Ok(x), Ok(y)) = (complex_orientation_basis(&basis(&mut rng)), complex_orientation_basis(&basis(&mut rng))) else {
            continue;
        };
        if orientation_sign(&x, &y).map_err(err)?.value != 1 {
            return Err("two complex bases induce opposite orientations".into());
        }
        pairs += 1;
    }
    // Ordering of a short exact sequence: lifts of the quotient come first.
    let e = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vector>();
    let b2 = BasisMatrix::standard(2);
    let cases: [(Vec<Vector>, Vec<Vector>, BasisMatrix, i8); 3] = [
        (vec![e(&[0, 1])], vec![e(&[1, 0])], b2.clone(), 1),
        (vec![e(&[0, -1])], vec![e(&[1, 0])], b2, -1),
        (vec![e(&[0, 0, 1])], vec![e(&[1, 0, 0]), e(&[0, 1, 0])], BasisMatrix::standard(3), 1),
    ];
    for (a, c, reference, expect) in cases {
        let n = reference.ambient_dim();
        let got = ses_orientation(&BasisMatrix::new(n, a).map_err(err)?, &BasisMatrix::new(n, c).map_err(err)?)
            .map_err(err)?;
        if orientation_sign(&got, &reference).map_err(err)?.value != expect {
            return Err("short exact sequence ordering example fails".into());
        }
    }
    // Swapping the factors of a cup product costs (−1)^{kl}.
    let mut swaps = 0;
    while swaps < 200 {
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..n);
        let l = rng.gen_range(1..=n - k);
        let (Ok(ty), Ok(tz)) = (
            BasisMatrix::new(n, random_vectors(&mut rng, n, n - k)),
            BasisMatrix::new(n, random_vectors(&mut rng, n, n - l)),
        ) else {
            continue;
        };
        let y = QuotientBasis::new(ty, random_vectors(&mut rng, n, k));
        let z = QuotientBasis::new(tz, random_vectors(&mut rng, n, l));
        let (Ok(y), Ok(z)) = (y, z) else { continue };
        let (Ok(yz), Ok(zy)) = (cup_coorientation(&y, &z), cup_coorientation(&z, &y)) else { continue };
        let expect = if (k * l) % 2 == 0 { 1 } else { -1 };
        if quotient_sign(&yz, &zy).map_err(err)?.value != expect {
            return Err(format!("swap factor wrong for k = {k}, l = {l}"));
        }
        swaps += 1;
    }
    Ok("multiplicativity, complex bases, ordering examples and swap factor (−1)^{kl} hold".into())
}

fn timed(id: u32, name: &'static str, f: impl FnOnce() -> Check) -> CriterionOutcome {
    let t = Instant::now();
    let r = f();
    let seconds = t.elapsed().as_secs_f64();
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionOutcome { id, name, passed, detail, seconds }
}

/// Runs every criterion in order, reporting each as it finishes.
pub fn run_all_with(mut report: impl FnMut(&CriterionOutcome)) -> Vec<CriterionOutcome> {
    let mut out = Vec::new();
    let mut push = |o: CriterionOutcome| {
        report(&o);
        out.push(o);
    };
    let t = Instant::now();
    let main = instances(1, 200, (1, 4));
    let gen_secs = t.elapsed().as_secs_f64();
    let mut c1 = timed(1, "identity ½D = H∘V + lk on 200 instances", || c1_identity(&main));
    c1.seconds += gen_secs;
    if c1.seconds > 120.0 {
        c1.passed = false;
        c1.detail = format!("{} but took over 2 minutes", c1.detail);
    }
    push(c1);
    push(timed(2, "bound |lk| ≤ D/2", || c2_bound(&main)));
    let t = Instant::now();
    let single = instances(3, 50, (1, 1));
    let gen_secs = t.elapsed().as_secs_f64();
    let mut c3 = timed(3, "single-point base has |lk| = 1/2", || c3_single_point(&single));
    c3.seconds += gen_secs;
    push(c3);
    let all: Vec<&Result<Instance, String>> = main.iter().chain(&single).collect();
    push(timed(4, "lk_chart = lk_boundary", || c4_equivalence(&all)));
    push(timed(5, "semilinear pullback sign", c5_semilinear));
    push(timed(6, "conjugation flip", || c6_conjugation(&main)));
    push(timed(7, "solver completeness against the oracle", c7_solver));
    push(timed(8, "realification", c8_realification));
    let mut c9 = timed(9, "orientation algebra", c9_orientation);
    if c9.seconds > 10.0 {
        c9.passed = false;
        c9.detail = format!("{} but took over 10 seconds", c9.detail);
    }
    push(c9);
    out
}

pub fn run_all() -> Vec<CriterionOutcome> {
    run_all_with(|_| {})
}
