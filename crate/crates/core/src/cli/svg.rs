//! Static plots in the chart `z = 1`: zero sets of `R` and `S` by marching
//! squares, base points with a rotation arrow for `ε`, and the oriented line.

use std::fmt::Write;

use super::job::Window;
use super::CliError;
use crate::interval::to_f64;
use crate::linking::{chart_epsilons, OrientedLine};
use crate::poly::{HomPoly, Rational};
use crate::slice::CoorientedBase;
use crate::solve::oracle::FForm;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;
const LEGEND: f64 = 70.0;
const GRID: usize = 160;

struct View {
    w: Window,
}

impl View {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let w = &self.w;
        (
            MARGIN + (x - w.xmin) / (w.xmax - w.xmin) * SIZE,
            MARGIN + (w.ymax - y) / (w.ymax - w.ymin) * SIZE,
        )
    }

    fn inside(&self, x: f64, y: f64) -> bool {
        let w = &self.w;
        (w.xmin..=w.xmax).contains(&x) && (w.ymin..=w.ymax).contains(&y)
    }
}

/// Marching-squares path of `{f = 0}` over the window.
fn contour(f: &HomPoly, view: &View) -> String {
    let f = FForm::new(f);
    let w = view.w;
    let (dx, dy) = ((w.xmax - w.xmin) / GRID as f64, (w.ymax - w.ymin) / GRID as f64);
    let at = |i: usize, j: usize| (w.xmin + i as f64 * dx, w.ymin + j as f64 * dy);
    let vals: Vec<Vec<f64>> = (0..=GRID)
        .map(|i| (0..=GRID).map(|j| {
            let (x, y) = at(i, j);
            f.eval([x, y, 1.0])
        }).collect())
        .collect();
    let mut d = String::new();
    for i in 0..GRID {
        for j in 0..GRID {
            // Corners counterclockwise from the lower left.
            let c = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let v: Vec<f64> = c.iter().map(|&(a, b)| vals[a][b]).collect();
            let cut = |k: usize| {
                let (a, b) = (k, (k + 1) % 4);
                let t = v[a] / (v[a] - v[b]);
                let (xa, ya) = at(c[a].0, c[a].1);
                let (xb, yb) = at(c[b].0, c[b].1);
                view.px(xa + t * (xb - xa), ya + t * (yb - ya))
            };
            let crossing: Vec<usize> = (0..4).filter(|&k| (v[k] > 0.0) != (v[(k + 1) % 4] > 0.0)).collect();
            let pairs: Vec<(usize, usize)> = match crossing[..] {
                [a, b] => vec![(a, b)],
                [a, b, c2, d2] => {
                    let centre = v.iter().sum::<f64>() / 4.0;
                    if (centre > 0.0) == (v[0] > 0.0) { vec![(a, d2), (b, c2)] } else { vec![(a, b), (c2, d2)] }
                }
                _ => vec![],
            };
            for (a, b) in pairs {
                let (p, q) = (cut(a), cut(b));
                let _ = write!(d, "M{:.2} {:.2}L{:.2} {:.2}", p.0, p.1, q.0, q.1);
            }
        }
    }
    d
}

/// Visible pieces of the line, in order of increasing `t`.
fn line_pieces(line: &OrientedLine, view: &View) -> Vec<Vec<(f64, f64)>> {
    let u = line.u().clone().map(|c| to_f64(&c));
    let v = line.v().clone().map(|c| to_f64(&c));
    let mut pieces = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    let n = 4000;
    // t = cot θ increases as θ runs from π down to 0.
    for k in 1..n {
        let th = std::f64::consts::PI * (n - k) as f64 / n as f64;
        let (c, s) = (th.cos(), th.sin());
        let p: [f64; 3] = std::array::from_fn(|i| c * u[i] + s * v[i]);
        let ok = p[2].abs() > 1e-9 && view.inside(p[0] / p[2], p[1] / p[2]);
        if ok {
            cur.push(view.px(p[0] / p[2], p[1] / p[2]));
        } else if !cur.is_empty() {
            pieces.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        pieces.push(cur);
    }
    pieces.retain(|p| p.len() > 1);
    pieces
}

fn fmt_rat(r: &Rational) -> String {
    r.to_string().replace('-', "−")
}

pub fn emit_svg(base: &CoorientedBase, line: &OrientedLine, window: &Window) -> Result<String, CliError> {
    let w = *window;
    let finite = [w.xmin, w.xmax, w.ymin, w.ymax].iter().all(|c| c.is_finite());
    if !finite || w.xmin >= w.xmax || w.ymin >= w.ymax {
        return Err(CliError::EmptyWindow);
    }
    let view = View { w };
    let (width, height) = (SIZE + 2.0 * MARGIN, SIZE + 2.0 * MARGIN + LEGEND);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    s.push_str(concat!(
        r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto">"#,
        r#"<path d="M0 0L8 4L0 8z" fill="black"/></marker></defs>"#,
        "\n"
    ));
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="white" stroke="#999"/>"##
    );
    let _ = writeln!(s, r##"<path d="{}" stroke="#1f77b4" fill="none" stroke-width="1.5"/>"##, contour(base.pencil.r(), &view));
    let _ = writeln!(s, r##"<path d="{}" stroke="#d62728" fill="none" stroke-width="1.5"/>"##, contour(base.pencil.s(), &view));

    for piece in line_pieces(line, &view) {
        let pts: Vec<String> = piece.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(s, r#"<polyline points="{}" stroke="black" fill="none" stroke-width="1"/>"#, pts.join(" "));
        let m = piece.len() / 2;
        let (a, b) = (piece[m - 1], piece[m]);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" marker-end="url(#head)"/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    let eps = chart_epsilons(line, base).ok();
    let mut shown = 0;
    for (k, f) in base.points.iter().enumerate() {
        let p = f.point.approx();
        if p[2].abs() < 1e-12 {
            continue;
        }
        let (x, y) = (p[0] / p[2], p[1] / p[2]);
        if !view.inside(x, y) {
            continue;
        }
        shown += 1;
        let (cx, cy) = view.px(x, y);
        let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="black"/>"#);
        if let Some(e) = eps.as_ref().map(|e| e[k]) {
            // Counterclockwise on screen for ε = +1.
            let r = 11.0;
            let (a0, a1) = (0.3f64, 5.5f64);
            let (sx, sy) = (cx + r * a0.cos(), cy - r * a0.sin() * e as f64);
            let (ex, ey) = (cx + r * a1.cos(), cy - r * a1.sin() * e as f64);
            let sweep = if e > 0 { 0 } else { 1 };
            let _ = writeln!(
                s,
                r#"<path d="M{sx:.2} {sy:.2}A{r} {r} 0 1 {sweep} {ex:.2} {ey:.2}" stroke="black" fill="none" marker-end="url(#head)"/>"#
            );
        }
    }

    let ly = SIZE + 2.0 * MARGIN + 18.0;
    let mut legend = vec![format!("line {line}"), format!("{} base point(s)", base.points.len())];
    if let Some(e) = &eps {
        let lk = Rational::new(e.iter().map(|&x| x as i64).sum::<i64>().into(), 2.into());
        legend.push(format!("lk = {}", fmt_rat(&lk)));
    }
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{ly}" font-family="sans-serif" font-size="13">{}</text>"#, legend.join("   "));
    let _ = writeln!(
        s,
        r##"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="11" fill="#555">blue: R = 0   red: S = 0   counterclockwise arrow: ε = +1</text>"##,
        ly + 18.0
    );
    if shown == 0 {
        let _ = writeln!(
            s,
            r##"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="11" fill="#b00">warning: no base points inside the window</text>"##,
            ly + 36.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::slice::certify_slice;

    fn base(r: &str, s: &str) -> CoorientedBase {
        certify_slice(&parse_poly(r).unwrap(), &parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn single_point_at_origin() {
        let b = base("x", "y");
        let l = OrientedLine::from_ints([1, 0, 0], [0, 1, 0]).unwrap();
        let svg = emit_svg(&b, &l, &Window::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("lk = 1/2"));
        assert!(!svg.contains("warning"));
        assert_eq!(svg, emit_svg(&b, &l, &Window::default()).unwrap());
    }

    #[test]
    fn window_without_points() {
        let b = base("x^2+y^2-z^2", "xy");
        let l = OrientedLine::from_ints([1, 0, 0], [0, 1, 0]).unwrap();
        let w = Window { xmin: 5.0, xmax: 6.0, ymin: 5.0, ymax: 6.0 };
        let svg = emit_svg(&b, &l, &w).unwrap();
        assert!(svg.contains("warning"));
        assert_eq!(svg.matches("<circle").count(), 0);
        let bad = Window { xmin: 1.0, xmax: 1.0, ymin: 0.0, ymax: 1.0 };
        assert!(matches!(emit_svg(&b, &l, &bad), Err(CliError::EmptyWindow)));
    }

    #[test]
    fn affine_line_is_drawn() {
        let b = base("x^2+y^2-z^2", "xy");
        let l = OrientedLine::from_ints([1, 1, 0], [0, 0, 1]).unwrap();
        let svg = emit_svg(&b, &l, &Window::default()).unwrap();
        assert!(svg.contains("<polyline"));
        assert_eq!(svg.matches("<circle").count(), 4);
    }
}
