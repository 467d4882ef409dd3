//! SVG output for arrangements and plane curves.
//!
//! Lines are clipped in floating point, which only affects where strokes are
//! drawn. The curve is never solved for: its sign is evaluated exactly on a
//! rational grid and every grid cell whose corners disagree in sign (or hit
//! zero) is filled.

use std::cmp::Ordering;
use std::fmt::Write as _;

use idealis::arrangement::{Arrangement, LinearForm, Matrix3, ProjectivePoint};
use idealis::{Error, Field, FieldElement, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, Result};

/// Side length of one grid cell in pixels.
pub const CELL_PX: u32 = 2;

/// Drawing area in affine coordinates, with exact rational corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub xmin: BigRational,
    pub xmax: BigRational,
    pub ymin: BigRational,
    pub ymax: BigRational,
}

impl Window {
    /// Parses "xmin,xmax,ymin,ymax" with rational entries such as -3/2.
    pub fn parse(s: &str) -> Result<Window> {
        let parts: Vec<BigRational> = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<BigRational>()
                    .or_else(|_| t.parse::<BigInt>().map(BigRational::from_integer))
                    .map_err(|_| CliError::Usage(format!("bad window coordinate `{t}`")))
            })
            .collect::<Result<_>>()?;
        let [xmin, xmax, ymin, ymax]: [BigRational; 4] =
            parts.try_into().map_err(|_| CliError::Usage("--window needs xmin,xmax,ymin,ymax".into()))?;
        if xmin >= xmax || ymin >= ymax {
            return Err(CliError::Usage("--window must have xmin < xmax and ymin < ymax".into()));
        }
        Ok(Window { xmin, xmax, ymin, ymax })
    }

    fn describe(&self) -> String {
        format!("{},{},{},{}", self.xmin, self.xmax, self.ymin, self.ymax)
    }

    fn f64s(&self) -> [f64; 4] {
        [&self.xmin, &self.xmax, &self.ymin, &self.ymax].map(|q| q.to_f64().expect("finite window"))
    }

    /// Smallest square window with quarter-integer corners containing the
    /// points with a margin of a tenth of the extent.
    fn around(points: &[(f64, f64)]) -> Window {
        let quarter = |v: f64, up: bool| {
            let q = if up { (v * 4.0).ceil() } else { (v * 4.0).floor() };
            BigRational::new(BigInt::from(q as i64), BigInt::from(4))
        };
        if points.is_empty() {
            let one = BigRational::from_integer(BigInt::from(1));
            return Window {
                xmin: -one.clone(),
                xmax: one.clone(),
                ymin: -one.clone(),
                ymax: one,
            };
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let side = (x1 - x0).max(y1 - y0).max(1.0) * 1.2;
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        Window {
            xmin: quarter(cx - side / 2.0, false),
            xmax: quarter(cx + side / 2.0, true),
            ymin: quarter(cy - side / 2.0, false),
            ymax: quarter(cy + side / 2.0, true),
        }
    }
}

/// Which line plays the role of the line at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chart {
    /// The standard chart z = 1.
    Standard,
    /// The chart ℓ = 1 for a line ℓ = a x + b y + c z through no intersection point.
    Generic([i64; 3]),
}

impl Chart {
    fn describe(&self) -> String {
        match self {
            Chart::Standard => "z=1".into(),
            Chart::Generic([a, b, c]) => format!("{a}x+{b}y+{c}z=1").replace("+-", "-"),
        }
    }

    /// Point map (x, y, z) ↦ (x, y, ℓ).
    fn matrix(&self, field: Field) -> Matrix3 {
        let [a, b, c] = match self {
            Chart::Standard => [0, 0, 1],
            Chart::Generic(l) => *l,
        };
        Matrix3::from_i64(field, [[1, 0, 0], [0, 1, 0], [a, b, c]])
    }
}

/// The standard chart when it shows at least half of the intersection
/// points, otherwise the first small line through none of them.
pub fn choose_chart(arr: &Arrangement) -> Result<Chart> {
    let ps = arr.intersection_points()?;
    let at_infinity = ps.iter().filter(|(p, _)| p.coords()[2].is_zero()).count();
    if 2 * at_infinity <= ps.len() {
        return Ok(Chart::Standard);
    }
    let small = [0i64, 1, -1, 2, -2, 3, -3];
    for c in 1..=5 {
        for &a in &small {
            for &b in &small {
                let l = LinearForm::from_i64(arr.field(), [a, b, c])?;
                if !ps.iter().any(|(p, _)| l.contains(p)) {
                    return Ok(Chart::Generic([a, b, c]));
                }
            }
        }
    }
    Ok(Chart::Standard)
}

pub struct RenderRequest<'a> {
    pub title: &'a str,
    pub arrangement: &'a Arrangement,
    pub curve: Option<&'a Polynomial>,
    pub window: Option<Window>,
    pub chart: Chart,
    /// Grid cells along the x axis.
    pub resolution: u32,
}

pub struct Rendered {
    pub svg: String,
    pub strokes: usize,
    pub vertices: usize,
    pub contour_cells: usize,
}

fn to_f64(c: &FieldElement) -> f64 {
    c.to_f64().expect("real field")
}

/// Affine image (x/z, y/z) of a point off the line at infinity.
fn affine(p: &ProjectivePoint) -> Option<(f64, f64)> {
    let [x, y, z] = p.coords();
    let z_inv = z.inv().ok()?;
    Some((to_f64(&(x * &z_inv)), to_f64(&(y * &z_inv))))
}

/// Segment of a x + b y + c = 0 inside the window.
fn clip(line: [f64; 3], [x0, x1, y0, y1]: [f64; 4]) -> Option<[(f64, f64); 2]> {
    let [a, b, c] = line;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-12 * (x1 - x0).abs().max(y1 - y0).max(1.0);
    if b.abs() > 0.0 {
        for x in [x0, x1] {
            let y = -(a * x + c) / b;
            if y >= y0 - eps && y <= y1 + eps {
                hits.push((x, y.clamp(y0, y1)));
            }
        }
    }
    if a.abs() > 0.0 {
        for y in [y0, y1] {
            let x = -(b * y + c) / a;
            if x >= x0 - eps && x <= x1 + eps {
                hits.push((x.clamp(x0, x1), y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).unwrap_or(Ordering::Equal));
    hits.dedup_by(|p, q| (p.0 - q.0).abs() <= eps && (p.1 - q.1).abs() <= eps);
    match hits.as_slice() {
        [first, .., last] => Some([*first, *last]),
        _ => None,
    }
}

/// Sign of f(x, y, 1) at every grid node, row 0 at the top.
fn sign_grid(f: &Polynomial, xs: &[FieldElement], ys: &[FieldElement]) -> Vec<Vec<i8>> {
    let field = f.field();
    let deg_x = f.degree_in(0) as usize;
    let deg_y = f.degree_in(1) as usize;
    ys.par_iter()
        .map(|y| {
            // f(x, y, 1) as a polynomial in x
            let mut powers = vec![field.one()];
            for k in 0..deg_y {
                powers.push(&powers[k] * y);
            }
            let mut coeffs = vec![field.zero(); deg_x + 1];
            for (m, c) in f.terms() {
                let (a, b) = (m.exp(0) as usize, m.exp(1) as usize);
                coeffs[a] = &coeffs[a] + &(c * &powers[b]);
            }
            xs.iter()
                .map(|x| {
                    let v = coeffs.iter().rev().fold(field.zero(), |acc, c| &(&acc * x) + c);
                    match v.signum().expect("real field") {
                        Ordering::Less => -1,
                        Ordering::Equal => 0,
                        Ordering::Greater => 1,
                    }
                })
                .collect()
        })
        .collect()
}

/// Cells with a sign change along an edge or a zero at a corner, as
/// horizontal runs (row, first column, length).
fn contour_runs(signs: &[Vec<i8>]) -> Vec<(usize, usize, usize)> {
    let mut runs = Vec::new();
    for j in 0..signs.len().saturating_sub(1) {
        let (top, bottom) = (&signs[j], &signs[j + 1]);
        let mut start: Option<usize> = None;
        for i in 0..top.len() - 1 {
            let corners = [top[i], top[i + 1], bottom[i], bottom[i + 1]];
            let hit = corners.contains(&0) || corners.iter().any(|&s| s != corners[0]);
            match (hit, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    runs.push((j, s, i - s));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            runs.push((j, s, top.len() - 1 - s));
        }
    }
    runs
}

fn grid(field: Field, lo: &BigRational, hi: &BigRational, cells: u32) -> Result<Vec<FieldElement>> {
    let step = (hi - lo) / BigRational::from_integer(BigInt::from(cells));
    (0..=cells)
        .map(|i| field.from_rational(&(lo + &step * BigRational::from_integer(BigInt::from(i)))))
        .collect::<std::result::Result<_, Error>>()
        .map_err(CliError::Core)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Draws the request. Lines and the curve are moved into the chart first.
pub fn render(req: &RenderRequest) -> Result<Rendered> {
    let field = req.arrangement.field();
    if !field.is_real() {
        return Err(CliError::NonReal(field));
    }
    let chart_matrix = req.chart.matrix(field);
    let arr = req.arrangement.transform(&chart_matrix)?;
    let curve = match req.curve {
        Some(f) => Some(f.substitute_linear(&chart_matrix.inverse()?.to_rows())),
        None => None,
    };

    let infinity = LinearForm::from_i64(field, [0, 0, 1])?;
    let ps = arr.intersection_points()?;
    let affine_points: Vec<((f64, f64), usize)> = ps.iter().filter_map(|(p, m)| affine(p).map(|xy| (xy, m))).collect();
    let window = match &req.window {
        Some(w) => w.clone(),
        None => Window::around(&affine_points.iter().map(|(xy, _)| *xy).collect::<Vec<_>>()),
    };
    let bounds = window.f64s();
    let [x0, x1, y0, y1] = bounds;

    let cols = req.resolution.max(1);
    let ratio = (y1 - y0) / (x1 - x0);
    let rows = ((cols as f64 * ratio).round() as u32).max(1);
    let (width, height) = (cols * CELL_PX, rows * CELL_PX);
    let px = |(x, y): (f64, f64)| ((x - x0) / (x1 - x0) * width as f64, (y1 - y) / (y1 - y0) * height as f64);

    let mut omitted = Vec::new();
    let mut outside = 0;
    let mut strokes = String::new();
    let mut stroke_count = 0;
    for (k, (line, original)) in arr.lines().iter().zip(req.arrangement.lines()).enumerate() {
        if *line == infinity {
            omitted.push(original.to_string());
            continue;
        }
        let [a, b, c] = line.coeffs().clone().map(|v| to_f64(&v));
        match clip([a, b, c], bounds) {
            Some([p, q]) => {
                let ((ax, ay), (bx, by)) = (px(p), px(q));
                stroke_count += 1;
                writeln!(
                    strokes,
                    r#"  <line class="line" data-index="{k}" x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"#
                )
                .expect("string write");
            }
            None => outside += 1,
        }
    }

    let mut dots = String::new();
    let mut vertex_count = 0;
    for &((x, y), m) in &affine_points {
        if x < x0 || x > x1 || y < y0 || y > y1 {
            continue;
        }
        let (cx, cy) = px((x, y));
        vertex_count += 1;
        writeln!(
            dots,
            r#"  <circle class="point" data-multiplicity="{m}" cx="{cx:.3}" cy="{cy:.3}" r="{:.1}"/>"#,
            1.5 + m as f64
        )
        .expect("string write");
    }

    let mut contour = String::new();
    let mut contour_cells = 0;
    if let Some(f) = &curve {
        let xs = grid(field, &window.xmin, &window.xmax, cols)?;
        // row 0 is the top edge of the picture
        let mut ys = grid(field, &window.ymin, &window.ymax, rows)?;
        ys.reverse();
        let runs = contour_runs(&sign_grid(f, &xs, &ys));
        contour_cells = runs.iter().map(|r| r.2).sum();
        let mut d = String::new();
        for (j, i, len) in runs {
            write!(d, "M{} {}h{}v{}h-{}z", i as u32 * CELL_PX, j as u32 * CELL_PX, len as u32 * CELL_PX, CELL_PX, len as u32 * CELL_PX)
                .expect("string write");
        }
        writeln!(contour, r#"  <path class="curve" d="{d}"/>"#).expect("string write");
    }

    let metadata = json!({
        "title": req.title,
        "field": field.to_string(),
        "chart": req.chart.describe(),
        "window": window.describe(),
        "grid": [cols, rows],
        "lines": req.arrangement.len(),
        "line_strokes": stroke_count,
        "omitted_lines": omitted,
        "lines_outside_window": outside,
        "vertices_drawn": vertex_count,
        "points_at_infinity": ps.len() - affine_points.len(),
        "curve_degree": req.curve.and_then(Polynomial::degree),
        "contour_cells": contour_cells,
    });
    let note = match omitted.as_slice() {
        [] => String::new(),
        lines => format!(" The line {} = 0 is the line at infinity and is not shown.", lines.join(", ")),
    };
    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).expect("string write");
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .expect("string write");
    writeln!(svg, "<title>{}</title>", escape(req.title)).expect("string write");
    writeln!(
        svg,
        "<desc>{} lines drawn dashed in the chart {}.{note}</desc>",
        stroke_count,
        req.chart.describe()
    )
    .expect("string write");
    writeln!(svg, "<metadata>{}</metadata>", escape(&metadata.to_string())).expect("string write");
    writeln!(svg, r#"<rect width="{width}" height="{height}" fill="white"/>"#).expect("string write");
    writeln!(svg, r##"<g id="lines" stroke="#555" stroke-width="1" stroke-dasharray="6 4" fill="none">"##).expect("string write");
    svg.push_str(&strokes);
    svg.push_str("</g>\n");
    if curve.is_some() {
        writeln!(svg, r##"<g id="curve" fill="#b2182b" stroke="none">"##).expect("string write");
        svg.push_str(&contour);
        svg.push_str("</g>\n");
    }
    writeln!(svg, r##"<g id="points" fill="#111">"##).expect("string write");
    svg.push_str(&dots);
    svg.push_str("</g>\n</svg>\n");
    Ok(Rendered {
        svg,
        strokes: stroke_count,
        vertices: vertex_count,
        contour_cells,
    })
}

/// Metadata of a rendered picture, for JSON reports.
pub fn summary(r: &Rendered, out: Option<&str>) -> Value {
    json!({
        "out": out,
        "line_strokes": r.strokes,
        "vertices": r.vertices,
        "contour_cells": r.contour_cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn windows_parse_exactly() {
        let w = Window::parse("-3/2, 2, -1,1/3").unwrap();
        assert_eq!(w.xmin, q(-3, 2));
        assert_eq!(w.ymax, q(1, 3));
        assert!(Window::parse("1,0,0,1").is_err());
        assert!(Window::parse("0,1,0").is_err());
        assert!(Window::parse("0,1,a,1").is_err());
    }

    #[test]
    fn clipping() {
        let b = [-1.0, 1.0, -1.0, 1.0];
        let [p, q] = clip([1.0, -1.0, 0.0], b).unwrap();
        assert_eq!((p, q), ((-1.0, -1.0), (1.0, 1.0)));
        let [p, q] = clip([0.0, 1.0, 0.0], b).unwrap();
        assert_eq!((p, q), ((-1.0, 0.0), (1.0, 0.0)));
        assert!(clip([1.0, 0.0, -5.0], b).is_none());
    }

    #[test]
    fn contour_marks_exactly_the_crossing_cells() {
        // y = x on [-1,1]^2 with a 4x4 grid: the diagonal cells
        let field = Field::Rational;
        let ring = idealis::Ring::xyz(field);
        let f = Polynomial::parse(&ring, "x - y").unwrap();
        let xs = grid(field, &q(-1, 1), &q(1, 1), 4).unwrap();
        let mut ys = grid(field, &q(-1, 1), &q(1, 1), 4).unwrap();
        ys.reverse();
        let signs = sign_grid(&f, &xs, &ys);
        assert_eq!(signs[0], vec![-1, -1, -1, -1, 0]);
        let runs = contour_runs(&signs);
        // row j lies at y = 1 - j/2, so the zeros sit at columns 4-j; a cell
        // is hit when one of its corners is such a zero
        assert_eq!(runs, vec![(0, 2, 2), (1, 1, 3), (2, 0, 3), (3, 0, 2)]);
    }

    #[test]
    fn the_triangle_gets_a_generic_chart() {
        let arr = idealis::arrangement::build_named("triangle", Default::default(), Field::Rational).unwrap();
        assert_eq!(choose_chart(&arr).unwrap(), Chart::Generic([1, 1, 1]));
        let r = render(&RenderRequest {
            title: "triangle",
            arrangement: &arr,
            curve: None,
            window: None,
            chart: Chart::Generic([1, 1, 1]),
            resolution: 40,
        })
        .unwrap();
        assert_eq!((r.strokes, r.vertices), (3, 3));
    }

    #[test]
    fn prime_fields_are_refused() {
        let arr = idealis::arrangement::build_named("triangle", Default::default(), Field::Prime(7)).unwrap();
        let req = RenderRequest {
            title: "t",
            arrangement: &arr,
            curve: None,
            window: None,
            chart: Chart::Standard,
            resolution: 10,
        };
        assert!(matches!(render(&req), Err(CliError::NonReal(_))));
    }
}
