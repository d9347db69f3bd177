use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CliError;
use crate::linking::{h_circle_v, lk_chart, OrientedLine};
use crate::poly::{GaussianRational, HomPoly};
use crate::slice::{certify_slice, CoorientedBase};

const COEFF_BOUND: i64 = 5;
const POINT_BOUND: i64 = 4;
const PENCIL_ATTEMPTS: usize = 500;
const LINE_ATTEMPTS: usize = 500;

pub fn random_form(rng: &mut impl Rng, d: u32) -> HomPoly {
    let mut terms = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            terms.push(([a, b, d - a - b], GaussianRational::from_int(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))));
        }
    }
    HomPoly::from_terms(d, terms).expect("terms of degree d")
}

/// A certified generic pencil with degree in `degrees` and an oriented line
/// disjoint from its real base, both determined by `seed`.
pub fn gen_random(seed: u64, degrees: (u32, u32)) -> Result<(CoorientedBase, OrientedLine), CliError> {
    let (lo, hi) = degrees;
    if lo == 0 || lo > hi || hi > 6 {
        return Err(CliError::input(format!("invalid degree range {lo}-{hi}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(lo..=hi);
    let base = (0..PENCIL_ATTEMPTS)
        .find_map(|_| certify_slice(&random_form(&mut rng, d), &random_form(&mut rng, d)).ok())
        .ok_or(CliError::ExhaustedRetries { seed })?;
    let line = (0..LINE_ATTEMPTS)
        .find_map(|_| {
            let mut p = || std::array::from_fn(|_| rng.gen_range(-POINT_BOUND..=POINT_BOUND));
            let line = OrientedLine::from_ints(p(), p()).ok()?;
            // Exact disjointness, then no real root of the restricted form.
            lk_chart(&line, &base).ok()?;
            h_circle_v(&line, &base).ok()?;
            Some(line)
        })
        .ok_or(CliError::ExhaustedRetries { seed })?;
    Ok((base, line))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let (a, la) = gen_random(1, (2, 2)).unwrap();
        let (b, lb) = gen_random(1, (2, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(la, lb);
        assert_eq!(a.degree(), 2);
        let (c, _) = gen_random(2, (1, 3)).unwrap();
        assert!((1..=3).contains(&c.degree()));
        assert!(gen_random(0, (3, 2)).is_err());
    }
}
