//! Floating-point subdivision oracle for real base points. Independent of
//! the exact solver and meant for cross-checking it in tests.
//!
//! Each chart square `[-1, 1]²` is covered by a grid; cells where an interval
//! bound excludes a zero of `R` or `S` are dropped, and the rest are either
//! certified to contain a unique solution by the Krawczyk test or split.

use crate::interval::to_f64;
use crate::poly::HomPoly;

use super::ChartId;

const MAX_DEPTH: u32 = 22;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleCluster {
    /// Chart in which the solution was certified.
    pub chart: ChartId,
    /// Homogeneous coordinates, scaled to unit length.
    pub point: [f64; 3],
    /// Half-width of the certifying box in chart coordinates.
    pub radius: f64,
}

#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub clusters: Vec<OracleCluster>,
    /// Cells at the depth limit that were neither excluded nor certified.
    pub unresolved: usize,
}

#[derive(Clone, Copy, Debug)]
struct Iv {
    lo: f64,
    hi: f64,
}

impl Iv {
    fn new(lo: f64, hi: f64) -> Self {
        Iv { lo, hi }
    }
    fn pt(v: f64) -> Self {
        Iv { lo: v, hi: v }
    }
    fn add(self, o: Iv) -> Iv {
        Iv::new(self.lo + o.lo, self.hi + o.hi)
    }
    fn sub(self, o: Iv) -> Iv {
        Iv::new(self.lo - o.hi, self.hi - o.lo)
    }
    fn mul(self, o: Iv) -> Iv {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Iv::new(c.iter().cloned().fold(f64::INFINITY, f64::min), c.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
    }
    fn scale(self, s: f64) -> Iv {
        self.mul(Iv::pt(s))
    }
    fn pow(self, k: u32) -> Iv {
        if k == 0 {
            return Iv::pt(1.0);
        }
        let (a, b) = (self.lo.powi(k as i32), self.hi.powi(k as i32));
        if k % 2 == 1 || self.lo >= 0.0 {
            Iv::new(a, b)
        } else if self.hi <= 0.0 {
            Iv::new(b, a)
        } else {
            Iv::new(0.0, a.max(b))
        }
    }
    fn widen(self) -> Iv {
        let e = 1e-12 * (1.0 + self.lo.abs().max(self.hi.abs()));
        Iv::new(self.lo - e, self.hi + e)
    }
    fn contains_zero(self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }
    fn mid(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
    fn strictly_inside(self, o: Iv) -> bool {
        o.lo < self.lo && self.hi < o.hi
    }
    fn disjoint(self, o: Iv) -> bool {
        self.hi < o.lo || o.hi < self.lo
    }
}

/// A real form with floating-point coefficients.
pub(crate) struct FForm {
    terms: Vec<([u32; 3], f64)>,
}

impl FForm {
    pub(crate) fn new(p: &HomPoly) -> Self {
        FForm { terms: p.terms().map(|(m, c)| (m.0, to_f64(&c.re))).collect() }
    }

    pub(crate) fn eval(&self, w: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * w[0].powi(e[0] as i32) * w[1].powi(e[1] as i32) * w[2].powi(e[2] as i32))
            .sum()
    }

    fn eval_iv(&self, w: [Iv; 3]) -> Iv {
        self.terms
            .iter()
            .fold(Iv::pt(0.0), |acc, (e, c)| {
                acc.add(w[0].pow(e[0]).mul(w[1].pow(e[1])).mul(w[2].pow(e[2])).scale(*c))
            })
            .widen()
    }
}

struct ChartSystem {
    chart: ChartId,
    f: [FForm; 2],
    /// `jac[i][j] = ∂f_i / ∂(chart coordinate j)`.
    jac: [[FForm; 2]; 2],
}

impl ChartSystem {
    fn new(r: &HomPoly, s: &HomPoly, chart: ChartId) -> Option<Self> {
        let [a, b] = chart.coords();
        let d = |p: &HomPoly, v| p.partial(v).ok().map(|q| FForm::new(&q));
        Some(ChartSystem {
            chart,
            f: [FForm::new(r), FForm::new(s)],
            jac: [[d(r, a)?, d(r, b)?], [d(s, a)?, d(s, b)?]],
        })
    }

    fn hom<T: Copy>(&self, u: T, v: T, one: T) -> [T; 3] {
        let mut w = [one; 3];
        let [a, b] = self.chart.coords();
        w[a] = u;
        w[b] = v;
        w
    }

    fn value(&self, u: f64, v: f64) -> [f64; 2] {
        let w = self.hom(u, v, 1.0);
        [self.f[0].eval(w), self.f[1].eval(w)]
    }

    fn jacobian(&self, u: f64, v: f64) -> [[f64; 2]; 2] {
        let w = self.hom(u, v, 1.0);
        std::array::from_fn(|i| std::array::from_fn(|j| self.jac[i][j].eval(w)))
    }

    fn excludes(&self, x: [Iv; 2]) -> bool {
        let w = self.hom(x[0], x[1], Iv::pt(1.0));
        !self.f[0].eval_iv(w).contains_zero() || !self.f[1].eval_iv(w).contains_zero()
    }

    fn krawczyk(&self, x: [Iv; 2]) -> Krawczyk {
        let m = [x[0].mid(), x[1].mid()];
        let j = self.jacobian(m[0], m[1]);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            return Krawczyk::Unknown;
        }
        let y = [[j[1][1] / det, -j[0][1] / det], [-j[1][0] / det, j[0][0] / det]];
        let fm = self.value(m[0], m[1]);
        let w = self.hom(x[0], x[1], Iv::pt(1.0));
        let jx: [[Iv; 2]; 2] = std::array::from_fn(|i| std::array::from_fn(|k| self.jac[i][k].eval_iv(w)));
        let dx = [x[0].sub(Iv::pt(m[0])), x[1].sub(Iv::pt(m[1]))];
        let mut k = [Iv::pt(0.0); 2];
        for i in 0..2 {
            let newton = m[i] - (y[i][0] * fm[0] + y[i][1] * fm[1]);
            let mut acc = Iv::pt(newton);
            for c in 0..2 {
                // (I − Y·J(X))[i][c]
                let mut e = Iv::pt(if i == c { 1.0 } else { 0.0 });
                for l in 0..2 {
                    e = e.sub(jx[l][c].scale(y[i][l]));
                }
                acc = acc.add(e.mul(dx[c]));
            }
            k[i] = acc.widen();
        }
        if k[0].disjoint(x[0]) || k[1].disjoint(x[1]) {
            Krawczyk::Empty
        } else if k[0].strictly_inside(x[0]) && k[1].strictly_inside(x[1]) {
            Krawczyk::Unique
        } else {
            Krawczyk::Unknown
        }
    }

    fn polish(&self, mut u: f64, mut v: f64) -> (f64, f64) {
        for _ in 0..20 {
            let f = self.value(u, v);
            let j = self.jacobian(u, v);
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 {
                break;
            }
            let du = (j[1][1] * f[0] - j[0][1] * f[1]) / det;
            let dv = (-j[1][0] * f[0] + j[0][0] * f[1]) / det;
            u -= du;
            v -= dv;
            if du.abs().max(dv.abs()) < 1e-15 {
                break;
            }
        }
        (u, v)
    }
}

enum Krawczyk {
    Unique,
    Empty,
    Unknown,
}

/// Unit representative of a homogeneous vector, sign fixed by the first
/// nonzero entry.
pub fn unit_projective(w: [f64; 3]) -> [f64; 3] {
    let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    let s = if w.iter().find(|x| x.abs() > 1e-12 * n).is_some_and(|&x| x < 0.0) { -1.0 } else { 1.0 };
    std::array::from_fn(|i| s * w[i] / n)
}

/// Sine of the angle between two points of ℝP² seen as lines in ℝ³.
pub fn projective_distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    let (a, b) = (unit_projective(a), unit_projective(b));
    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt()
}

/// Sweeps the three chart squares with an initial `resolution × resolution`
/// grid.
pub fn brute_force_base_oracle(r: &HomPoly, s: &HomPoly, resolution: usize) -> OracleReport {
    let mut report = OracleReport::default();
    let res = resolution.max(1);
    for chart in ChartId::ORDER {
        let Some(sys) = ChartSystem::new(r, s, chart) else {
            continue;
        };
        let h = 2.0 / res as f64;
        let mut stack: Vec<([Iv; 2], u32)> = Vec::new();
        for i in 0..res {
            for j in 0..res {
                let u = -1.0 + h * i as f64;
                let v = -1.0 + h * j as f64;
                stack.push(([Iv::new(u, u + h), Iv::new(v, v + h)], 0));
            }
        }
        while let Some((cell, depth)) = stack.pop() {
            if sys.excludes(cell) {
                continue;
            }
            let grown = cell.map(|c| {
                let r = 0.75 * (c.hi - c.lo);
                Iv::new(c.mid() - r, c.mid() + r)
            });
            match sys.krawczyk(grown) {
                Krawczyk::Empty => {}
                Krawczyk::Unique => {
                    let (u, v) = sys.polish(grown[0].mid(), grown[1].mid());
                    let point = unit_projective(sys.hom(u, v, 1.0));
                    let radius = 0.5 * (grown[0].hi - grown[0].lo);
                    if report.clusters.iter().all(|c| projective_distance(c.point, point) > 1e-7) {
                        report.clusters.push(OracleCluster { chart, point, radius });
                    }
                }
                Krawczyk::Unknown if depth < MAX_DEPTH => {
                    let [a, b] = cell;
                    let (am, bm) = (a.mid(), b.mid());
                    for x in [Iv::new(a.lo, am), Iv::new(am, a.hi)] {
                        for y in [Iv::new(b.lo, bm), Iv::new(bm, b.hi)] {
                            stack.push(([x, y], depth + 1));
                        }
                    }
                }
                Krawczyk::Unknown => report.unresolved += 1,
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn run(r: &str, s: &str) -> OracleReport {
        brute_force_base_oracle(&parse_poly(r).unwrap(), &parse_poly(s).unwrap(), 64)
    }

    #[test]
    fn circle_and_axes() {
        let rep = run("x^2+y^2-z^2", "xy");
        assert_eq!(rep.clusters.len(), 4);
        assert_eq!(rep.unresolved, 0);
    }

    #[test]
    fn lines() {
        let rep = run("x", "y");
        assert_eq!(rep.clusters.len(), 1);
        assert!(projective_distance(rep.clusters[0].point, [0.0, 0.0, 1.0]) < 1e-9);
    }

    #[test]
    fn empty_base() {
        let rep = run("x^2+y^2-z^2", "x^2+y^2-2z^2");
        assert!(rep.clusters.is_empty());
        assert_eq!(rep.unresolved, 0);
    }
}
