//! Line arrangements in the projective plane: intersection points with
//! multiplicities, t-vectors, characteristic polynomials and group orbits.

mod fixtures;
mod group;
#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{sqrt_in_prime_field, Field, FieldElement};
use crate::poly::{Polynomial, Ring};
use crate::text::{format_scalar, parse_scalar};

pub use fixtures::{
    build_named, half_sqrt3, hexagonal_generators, hexagonal_group, orbit_table, special_point, table1, table2, Model,
    A31_T_VECTOR, B21_T_VECTOR, B21_TABLE1_LINES, NAMES,
};
pub use group::{Matrix3, MatrixGroup, Orbit};

/// Image of √d mod p for specializing elements of `field`.
pub(crate) fn sqrt_image(field: Field, p: u64) -> Result<Option<u64>> {
    match field {
        Field::Quadratic(d) => Ok(Some(sqrt_in_prime_field(p, d)?.ok_or_else(|| Error::BadPrime {
            p,
            reason: format!("{d} is not a square mod {p}"),
        })?)),
        _ => Ok(None),
    }
}

/// Divides by the first nonzero entry; `None` for the zero vector.
fn canonical(v: [FieldElement; 3]) -> Option<[FieldElement; 3]> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    if lead.is_one() {
        return Some(v);
    }
    let inv = lead.inv().expect("nonzero");
    Some(v.map(|c| &c * &inv))
}

fn same_field(v: &[FieldElement; 3]) -> Result<Field> {
    let field = v[0].field();
    match v.iter().find(|c| c.field() != field) {
        Some(bad) => Err(Error::FieldMismatch(field.to_string(), bad.field().to_string())),
        None => Ok(field),
    }
}

fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn specialize3(v: &[FieldElement; 3], p: u64) -> Result<[FieldElement; 3]> {
    let sqrt_d = sqrt_image(v[0].field(), p)?;
    let out = [v[0].specialize(p, sqrt_d)?, v[1].specialize(p, sqrt_d)?, v[2].specialize(p, sqrt_d)?];
    Ok(out)
}

fn parse_triple(field: Field, v: &Value) -> Result<[FieldElement; 3]> {
    let bad = |m: &str| Error::Parse {
        offset: 0,
        message: m.to_string(),
    };
    let items = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("expected a triple"))?;
    let mut out = Vec::with_capacity(3);
    for item in items {
        let c = match item {
            Value::String(s) => parse_scalar(field, s)?,
            Value::Number(n) => field.from_i64(n.as_i64().ok_or_else(|| bad("coefficient is not an integer"))?),
            _ => return Err(bad("coefficient must be a string or an integer")),
        };
        out.push(c);
    }
    Ok(out.try_into().expect("three entries"))
}

/// A line ax + by + cz = 0, scaled so the first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: [FieldElement; 3],
}

impl LinearForm {
    pub fn new(coeffs: [FieldElement; 3]) -> Result<LinearForm> {
        same_field(&coeffs)?;
        let coeffs = canonical(coeffs).ok_or_else(|| Error::Invalid("zero linear form".into()))?;
        Ok(LinearForm { coeffs })
    }

    pub fn from_i64(field: Field, coeffs: [i64; 3]) -> Result<LinearForm> {
        LinearForm::new(coeffs.map(|c| field.from_i64(c)))
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn evaluate(&self, p: &ProjectivePoint) -> FieldElement {
        dot(&self.coeffs, &p.coords)
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.evaluate(p).is_zero()
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, other: &LinearForm) -> Option<ProjectivePoint> {
        canonical(cross(&self.coeffs, &other.coeffs)).map(|coords| ProjectivePoint { coords })
    }

    /// The line through the images M·P of the points P on this line.
    pub fn transform(&self, m: &Matrix3) -> Result<LinearForm> {
        let inv = m.inverse()?;
        LinearForm::new(inv.apply_row(&self.coeffs))
    }

    pub fn to_polynomial(&self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::linear(ring, &self.coeffs)
    }

    pub fn specialize(&self, p: u64) -> Result<LinearForm> {
        LinearForm::new(specialize3(&self.coeffs, p)?)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Ring::xyz(self.field());
        write!(f, "{}", self.to_polynomial(&ring))
    }
}

/// A point (X:Y:Z), scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [FieldElement; 3],
}

impl ProjectivePoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<ProjectivePoint> {
        same_field(&coords)?;
        let coords = canonical(coords).ok_or_else(|| Error::Invalid("(0:0:0) is not a point".into()))?;
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(field: Field, coords: [i64; 3]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(coords.map(|c| field.from_i64(c)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// M·P.
    pub fn transform(&self, m: &Matrix3) -> ProjectivePoint {
        ProjectivePoint::new(m.apply(&self.coords)).expect("invertible matrix")
    }

    pub fn specialize(&self, p: u64) -> Result<ProjectivePoint> {
        ProjectivePoint::new(specialize3(&self.coords, p)?)
    }

    /// Parses "(a:b:c)" or "a,b,c".
    pub fn parse(field: Field, s: &str) -> Result<ProjectivePoint> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let sep = if inner.contains(':') { ':' } else { ',' };
        let parts: Vec<&str> = inner.split(sep).collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                offset: 0,
                message: format!("expected three coordinates in `{s}`"),
            });
        }
        let c = [parse_scalar(field, parts[0])?, parse_scalar(field, parts[1])?, parse_scalar(field, parts[2])?];
        ProjectivePoint::new(c)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "({}:{}:{})", format_scalar(a), format_scalar(b), format_scalar(c))
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Counts t_i of points on exactly i lines.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TVector(pub BTreeMap<usize, usize>);

impl TVector {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> TVector {
        TVector(pairs.iter().copied().filter(|&(_, t)| t > 0).collect())
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn points(&self) -> usize {
        self.0.values().sum()
    }

    /// Σ C(i, 2)·t_i, the number of line pairs accounted for.
    pub fn pairs(&self) -> usize {
        self.0.iter().map(|(&i, &t)| i * (i - 1) / 2 * t).sum()
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(i, t)| format!("t{i}={t}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Points with their line multiplicities, sorted by point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<(ProjectivePoint, usize)>,
    index: HashMap<ProjectivePoint, usize>,
}

impl PointSet {
    pub fn new(mut points: Vec<(ProjectivePoint, usize)>) -> PointSet {
        points.sort();
        points.dedup_by(|a, b| a.0 == b.0);
        let index = points.iter().enumerate().map(|(i, (p, _))| (p.clone(), i)).collect();
        PointSet { points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProjectivePoint, usize)> {
        self.points.iter().map(|(p, m)| (p, *m))
    }

    pub fn points(&self) -> Vec<ProjectivePoint> {
        self.points.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn multiplicity(&self, p: &ProjectivePoint) -> Option<usize> {
        self.index.get(p).map(|&i| self.points[i].1)
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.index.contains_key(p)
    }

    pub(crate) fn get(&self, p: &ProjectivePoint) -> Option<&ProjectivePoint> {
        self.index.get(p).map(|&i| &self.points[i].0)
    }

    /// Points lying on exactly `m` lines.
    pub fn with_multiplicity(&self, m: usize) -> Vec<ProjectivePoint> {
        self.iter().filter(|&(_, k)| k == m).map(|(p, _)| p.clone()).collect()
    }

    pub fn t_vector(&self) -> TVector {
        let mut t = BTreeMap::new();
        for (_, m) in self.iter() {
            *t.entry(m).or_insert(0) += 1;
        }
        TVector(t)
    }

    /// Points of `self` missing from `other`.
    pub fn difference(&self, other: &PointSet) -> Vec<ProjectivePoint> {
        self.iter().filter(|(p, _)| !other.contains(p)).map(|(p, _)| p.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.iter().map(|(p, m)| json!({"point": p.to_string(), "multiplicity": m})).collect())
    }
}

/// The central characteristic polynomial t³ − n t² + b t − c of a rank-3
/// arrangement, where b = Σ (m_P − 1) and c = 1 − n + b.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    pub lines: i64,
    pub linear: i64,
    pub constant: i64,
}

impl CharPoly {
    /// Coefficients of t³, t², t, 1.
    pub fn cubic(&self) -> [i64; 4] {
        [1, -self.lines, self.linear, -self.constant]
    }

    /// χ(t)/(t − 1) = t² + (1 − n) t + c, coefficients of t², t, 1.
    pub fn quotient(&self) -> [i64; 3] {
        [1, 1 - self.lines, self.constant]
    }

    /// Whether the quotient factors into integer linear factors.
    pub fn splits_over_z(&self) -> bool {
        let [_, b, c] = self.quotient();
        let disc = b * b - 4 * c;
        if disc < 0 {
            return false;
        }
        let r = (disc as f64).sqrt().round() as i64;
        let root = (r - 1..=r + 1).find(|&s| s >= 0 && s * s == disc);
        root.is_some_and(|s| (s - b) % 2 == 0)
    }

    /// Terao: a free arrangement has a split characteristic polynomial.
    pub fn freeness(&self) -> &'static str {
        if self.splits_over_z() {
            "undecided (quotient splits)"
        } else {
            "not free"
        }
    }

    pub fn cubic_string(&self) -> String {
        descending(&self.cubic())
    }

    pub fn quotient_string(&self) -> String {
        descending(&self.quotient())
    }

    /// The quotient's coefficients read in ascending powers.
    pub fn ascending_string(&self) -> String {
        let q = self.quotient();
        ascending(&[q[2], q[1], q[0]])
    }
}

fn monomial_string(c: i64, power: usize, first: bool) -> String {
    let sign = if c < 0 {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let a = c.abs();
    let coeff = if a == 1 && power > 0 { String::new() } else { a.to_string() };
    let var = match power {
        0 => String::new(),
        1 => "t".into(),
        k => format!("t^{k}"),
    };
    format!("{sign}{coeff}{var}")
}

fn descending(coeffs: &[i64]) -> String {
    let n = coeffs.len() - 1;
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            out += &monomial_string(c, n - i, out.is_empty());
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn ascending(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            out += &monomial_string(c, i, out.is_empty());
        }
    }
    out
}

/// Distinct lines over one field, with lazily computed intersection points.
#[derive(Debug)]
pub struct Arrangement {
    field: Field,
    lines: Vec<LinearForm>,
    points: OnceLock<PointSet>,
}

impl Clone for Arrangement {
    fn clone(&self) -> Self {
        Arrangement {
            field: self.field,
            lines: self.lines.clone(),
            points: self.points.clone(),
        }
    }
}

impl Arrangement {
    pub fn new(lines: Vec<LinearForm>) -> Result<Arrangement> {
        let Some(first) = lines.first() else {
            return Err(Error::Invalid("an arrangement needs at least one line".into()));
        };
        let field = first.field();
        if let Some(bad) = lines.iter().find(|l| l.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        let mut sorted = lines.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLines);
        }
        Ok(Arrangement {
            field,
            lines,
            points: OnceLock::new(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lines(&self) -> &[LinearForm] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// All points on at least two lines, with the number of lines through
    /// each. Checks Σ C(m_P, 2) = C(n, 2).
    pub fn intersection_points(&self) -> Result<&PointSet> {
        if self.lines.len() < 2 {
            return Err(Error::Invalid("intersection points need at least two lines".into()));
        }
        Ok(self.points.get_or_init(|| {
            let n = self.lines.len();
            let mut pts: Vec<ProjectivePoint> = (0..n)
                .into_par_iter()
                .flat_map_iter(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| self.lines[i].meet(&self.lines[j]).expect("distinct lines meet in a point"))
                .collect();
            pts.par_sort();
            pts.dedup();
            let with_mult: Vec<(ProjectivePoint, usize)> = pts
                .into_par_iter()
                .map(|p| {
                    let m = self.lines.iter().filter(|l| l.contains(&p)).count();
                    (p, m)
                })
                .collect();
            let ps = PointSet::new(with_mult);
            assert_eq!(ps.t_vector().pairs(), n * (n - 1) / 2, "pair-count identity failed");
            ps
        }))
    }

    pub fn t_vector(&self) -> Result<TVector> {
        Ok(self.intersection_points()?.t_vector())
    }

    /// Product of the canonical linear forms in x, y, z.
    pub fn product_of_forms(&self) -> Polynomial {
        let ring = Ring::xyz(self.field);
        self.lines
            .iter()
            .fold(Polynomial::one(&ring), |acc, l| &acc * &l.to_polynomial(&ring))
    }

    pub fn char_poly(&self) -> Result<CharPoly> {
        if self.lines.len() < 3 {
            return Err(Error::NonEssential);
        }
        let ps = self.intersection_points()?;
        if ps.len() < 2 {
            return Err(Error::NonEssential);
        }
        let n = self.lines.len() as i64;
        let linear: i64 = ps.iter().map(|(_, m)| m as i64 - 1).sum();
        Ok(CharPoly {
            lines: n,
            linear,
            constant: 1 - n + linear,
        })
    }

    /// Images of all lines under M (as a point map).
    pub fn transform(&self, m: &Matrix3) -> Result<Arrangement> {
        Arrangement::new(self.lines.iter().map(|l| l.transform(m)).collect::<Result<_>>()?)
    }

    /// Sub-arrangement on the given line indices.
    pub fn select(&self, indices: &[usize]) -> Result<Arrangement> {
        let lines = indices
            .iter()
            .map(|&i| self.lines.get(i).cloned().ok_or_else(|| Error::Invalid(format!("no line {i}"))))
            .collect::<Result<_>>()?;
        Arrangement::new(lines)
    }

    pub fn specialize(&self, p: u64) -> Result<Arrangement> {
        Arrangement::new(self.lines.iter().map(|l| l.specialize(p)).collect::<Result<_>>()?)
    }

    /// `{ "field": ..., "lines": [[a, b, c], ...] }`.
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_string(),
            "lines": self.lines.iter().map(|l| l.coeffs().iter().map(format_scalar).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Arrangement> {
        let bad = |m: &str| Error::Parse {
            offset: 0,
            message: m.to_string(),
        };
        let field: Field = v.get("field").and_then(Value::as_str).ok_or_else(|| bad("missing \"field\""))?.parse()?;
        let lines = v.get("lines").and_then(Value::as_array).ok_or_else(|| bad("missing \"lines\""))?;
        let lines = lines
            .iter()
            .map(|l| LinearForm::new(parse_triple(field, l)?))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(lines)
    }
}

/// Outcome of checking a computed arrangement against a listed point table.
#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub computed_points: usize,
    pub table_points: usize,
    pub matched: usize,
    /// Intersection points absent from the table.
    pub unlisted: Vec<ProjectivePoint>,
    /// Table entries that are not intersection points.
    pub spurious: Vec<ProjectivePoint>,
    /// (point, table class, computed multiplicity).
    pub class_mismatches: Vec<(ProjectivePoint, usize, usize)>,
    pub t_vector: TVector,
    pub expected_t_vector: TVector,
}

impl RealizationReport {
    pub fn is_consistent(&self) -> bool {
        self.unlisted.is_empty()
            && self.spurious.is_empty()
            && self.class_mismatches.is_empty()
            && self.t_vector == self.expected_t_vector
            && self.matched == self.table_points
    }
}

/// Compares the intersection points of `arr` with a table of points grouped
/// by multiplicity class, and its t-vector with `expected`.
pub fn verify_realization(
    arr: &Arrangement,
    table: &[(usize, Vec<ProjectivePoint>)],
    expected: &TVector,
) -> Result<RealizationReport> {
    let ps = arr.intersection_points()?;
    let mut listed: HashMap<&ProjectivePoint, usize> = HashMap::new();
    let mut spurious = Vec::new();
    let mut class_mismatches = Vec::new();
    let mut matched = 0;
    for (class, points) in table {
        for p in points {
            listed.insert(p, *class);
            match ps.multiplicity(p) {
                None => spurious.push(p.clone()),
                Some(m) => {
                    matched += 1;
                    if m != *class {
                        class_mismatches.push((p.clone(), *class, m));
                    }
                }
            }
        }
    }
    let unlisted = ps.iter().filter(|(p, _)| !listed.contains_key(p)).map(|(p, _)| p.clone()).collect();
    Ok(RealizationReport {
        computed_points: ps.len(),
        table_points: table.iter().map(|(_, v)| v.len()).sum(),
        matched,
        unlisted,
        spurious,
        class_mismatches,
        t_vector: ps.t_vector(),
        expected_t_vector: expected.clone(),
    })
}
