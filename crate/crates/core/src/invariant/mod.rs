//! Invariants of finite matrix groups acting on the plane: Molien counts, the
//! generator triple f₁ = z, f₂ = x² + y², f₃ of the hexagonal group,
//! interpolation of invariant curves through prescribed orbits, and the
//! singularity analysis of the resulting curves.

mod fixtures;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arrangement::{build_named, hexagonal_group, special_point, MatrixGroup, Model, PointSet, ProjectivePoint};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::groebner::{jacobian_ideal, monomials_of_degree, radical_membership, GroebnerConfig};
use crate::linalg::Matrix;
use crate::poly::{Polynomial, Ring};
use crate::text::format_scalar;

pub use fixtures::{coefficients_along, delta_corrected, DELTA_F1_6_F2_2_CORRECTED, DELTA_PRINTED, GAMMA_PRINTED};

/// Largest prime the brute-force singular-point scan accepts by default.
pub const SCAN_BOUND: u64 = 4096;

/// Weights of f₁, f₂, f₃.
pub const HEXAGONAL_WEIGHTS: [u32; 3] = [1, 2, 6];

fn check_characteristic(g: &MatrixGroup) -> Result<()> {
    let p = g.field().characteristic();
    if p != 0 && g.order() as u64 % p == 0 {
        return Err(Error::BadCharacteristic(p));
    }
    Ok(())
}

/// A dimension computed inside the field, read back as an integer. Over F_p
/// this is the residue, exact as long as the true count is below p.
fn as_count(e: &FieldElement) -> Result<usize> {
    if let Some(r) = e.as_residue() {
        return Ok(r as usize);
    }
    let q = e
        .as_rational()
        .ok_or_else(|| Error::Invalid(format!("dimension count {e} is irrational")))?;
    if !q.is_integer() {
        return Err(Error::Invalid(format!("dimension count {e} is not an integer")));
    }
    usize::try_from(q.to_integer()).map_err(|_| Error::Invalid(format!("dimension count {e} is negative")))
}

/// Coefficient of t^d in the Molien series (1/|G|) Σ 1/det(I − t·g).
pub fn molien_dimension(g: &MatrixGroup, d: u32) -> Result<usize> {
    check_characteristic(g)?;
    let field = g.field();
    let d = d as usize;
    let mut total = field.zero();
    for m in g.elements() {
        let r = m.rows();
        let e1 = &(&r[0][0] + &r[1][1]) + &r[2][2];
        let minor = |i: usize, j: usize| &(&r[i][i] * &r[j][j]) - &(&r[i][j] * &r[j][i]);
        let e2 = &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2);
        let e3 = m.det();
        // det(I − tM) = 1 − e1 t + e2 t² − e3 t³, inverted term by term
        let mut s: Vec<FieldElement> = Vec::with_capacity(d + 1);
        s.push(field.one());
        for n in 1..=d {
            let mut c = &e1 * &s[n - 1];
            if n >= 2 {
                c = &c - &(&e2 * &s[n - 2]);
            }
            if n >= 3 {
                c = &c + &(&e3 * &s[n - 3]);
            }
            s.push(c);
        }
        total = &total + &s[d];
    }
    let avg = &total * &field.from_i64(g.order() as i64).inv()?;
    as_count(&avg)
}

/// Rank of the Reynolds projector on the degree-d monomials.
pub fn reynolds_fixed_dim(g: &MatrixGroup, d: u32) -> Result<usize> {
    check_characteristic(g)?;
    let ring = Ring::xyz(g.field());
    let cols = monomials_of_degree(3, d);
    let index: std::collections::HashMap<_, _> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let actions: Vec<Vec<Vec<FieldElement>>> = g.elements().iter().map(|m| m.to_rows()).collect();
    let rows: Vec<Vec<FieldElement>> = cols
        .par_iter()
        .map(|m| {
            let mono = Polynomial::monomial(&ring, *m, ring.field().one());
            let image = actions
                .iter()
                .fold(Polynomial::zero(&ring), |acc, a| &acc + &mono.substitute_linear(a));
            let mut row = vec![ring.field().zero(); cols.len()];
            for (t, c) in image.terms() {
                row[index[t]] = c.clone();
            }
            row
        })
        .collect();
    Ok(Matrix::new(ring.field(), cols.len(), rows)?.rank())
}

/// Exponent vectors e with Σ wᵢeᵢ = d, ordered lexicographically by the
/// reversed vector, descending. The first weight is 1 in every use here, but
/// any positive weights work.
pub fn invariant_monomials(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == 0 {
            if left % weights[0] == 0 {
                let mut e = vec![left / weights[0]];
                e.extend(cur.iter().rev());
                out.push(e);
            }
            return;
        }
        for e in (0..=left / weights[i]).rev() {
            cur.push(e);
            rec(weights, i - 1, left - e * weights[i], cur, out);
            cur.pop();
        }
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let mut out = Vec::new();
    if !weights.is_empty() {
        rec(weights, weights.len() - 1, d, &mut Vec::new(), &mut out);
    }
    out
}

/// f ∘ M = f for every element M of `g`.
pub fn is_invariant(f: &Polynomial, g: &MatrixGroup) -> Result<bool> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(f.field().to_string(), g.field().to_string()));
    }
    if f.ring().nvars() != 3 {
        return Err(Error::Invalid("the group acts on three variables".into()));
    }
    Ok(g.elements().par_iter().all(|m| &f.substitute_linear(&m.to_rows()) == f))
}

/// f₁ = z, f₂ = x² + y², f₃ = 11x⁶ + 15x⁴y² + 45x²y⁴ + 9y⁶.
pub fn hexagonal_invariants(field: Field) -> [Polynomial; 3] {
    let ring = Ring::xyz(field);
    ["z", "x^2 + y^2", "11*x^6 + 15*x^4*y^2 + 45*x^2*y^4 + 9*y^6"]
        .map(|s| Polynomial::parse(&ring, s).expect("fixed generator parses"))
}

/// The products of generator powers of one weighted degree.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub generators: Vec<Polynomial>,
    pub weights: Vec<u32>,
    pub degree: u32,
    pub exponents: Vec<Vec<u32>>,
    pub elements: Vec<Polynomial>,
}

impl InvariantBasis {
    /// Each generator must be homogeneous of its weight.
    pub fn new(generators: Vec<Polynomial>, weights: Vec<u32>, degree: u32) -> Result<InvariantBasis> {
        let Some(first) = generators.first() else {
            return Err(Error::Invalid("a basis needs at least one generator".into()));
        };
        if generators.len() != weights.len() {
            return Err(Error::Invalid("one weight per generator".into()));
        }
        let ring = first.ring().clone();
        for (g, &w) in generators.iter().zip(&weights) {
            if !g.ring().compatible(&ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() || g.degree() != Some(w) {
                return Err(Error::Invalid(format!("generator {g} is not homogeneous of degree {w}")));
            }
        }
        let exponents = invariant_monomials(&weights, degree);
        let elements = exponents
            .par_iter()
            .map(|e| {
                generators
                    .iter()
                    .zip(e)
                    .fold(Polynomial::one(&ring), |acc, (g, &k)| if k == 0 { acc } else { &acc * &g.pow(k) })
            })
            .collect();
        Ok(InvariantBasis {
            generators,
            weights,
            degree,
            exponents,
            elements,
        })
    }

    /// The degree-d products of f₁, f₂, f₃.
    pub fn hexagonal(field: Field, degree: u32) -> Result<InvariantBasis> {
        InvariantBasis::new(hexagonal_invariants(field).to_vec(), HEXAGONAL_WEIGHTS.to_vec(), degree)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.generators[0].ring()
    }

    /// Σ cᵢ·elementᵢ.
    pub fn expand(&self, coefficients: &[FieldElement]) -> Polynomial {
        assert_eq!(coefficients.len(), self.len());
        self.elements
            .iter()
            .zip(coefficients)
            .filter(|(_, c)| !c.is_zero())
            .fold(Polynomial::zero(self.ring()), |acc, (e, c)| &acc + &e.scale(c))
    }

    /// Label of one basis element, e.g. `f1^6*f3`.
    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.exponents[i]
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| if k == 1 { format!("f{}", j + 1) } else { format!("f{}^{k}", j + 1) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A point where a curve was required to vanish, and to which order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Imposed {
    pub point: ProjectivePoint,
    pub order: u32,
}

/// One kernel vector of an interpolation problem.
#[derive(Clone, Debug)]
pub struct InvariantCurve {
    pub degree: u32,
    pub exponents: Vec<Vec<u32>>,
    pub coefficients: Vec<FieldElement>,
    pub polynomial: Polynomial,
    pub imposed: Vec<Imposed>,
}

impl InvariantCurve {
    pub fn coefficient_of(&self, exponents: &[u32]) -> Option<&FieldElement> {
        let i = self.exponents.iter().position(|e| e.as_slice() == exponents)?;
        Some(&self.coefficients[i])
    }

    /// Equal up to a nonzero scalar, by cross-multiplication.
    pub fn projectively_equal(&self, other: &[FieldElement]) -> bool {
        if other.len() != self.coefficients.len() {
            return false;
        }
        let Some(k) = self.coefficients.iter().position(|c| !c.is_zero()) else {
            return other.iter().all(|c| c.is_zero());
        };
        if other[k].is_zero() {
            return false;
        }
        self.coefficients
            .iter()
            .zip(other)
            .all(|(a, b)| &(a * &other[k]) == &(b * &self.coefficients[k]))
    }

    /// Coefficients scaled so the entry for `exponents` equals `value`.
    pub fn rescaled(&self, exponents: &[u32], value: &FieldElement) -> Option<Vec<FieldElement>> {
        let c = self.coefficient_of(exponents)?;
        let factor = value.checked_div(c).ok()?;
        Some(self.coefficients.iter().map(|a| a * &factor).collect())
    }
}

/// Index of the coordinate whose partial derivative is left to the Euler
/// relation: z when it is nonzero, otherwise the last nonzero coordinate.
fn euler_index(p: &ProjectivePoint) -> usize {
    (0..3).rev().find(|&i| !p.coords()[i].is_zero()).expect("projective points are nonzero")
}

fn condition_rows(basis: &InvariantBasis, simple: &[ProjectivePoint], double: &[ProjectivePoint]) -> Result<Vec<Vec<FieldElement>>> {
    let mut jobs: Vec<(&ProjectivePoint, Option<usize>)> = simple.iter().map(|p| (p, None)).collect();
    for p in double {
        let k = euler_index(p);
        jobs.push((p, None));
        for i in (0..3).filter(|&i| i != k) {
            jobs.push((p, Some(i)));
        }
    }
    jobs.par_iter()
        .map(|(p, var)| {
            basis
                .elements
                .iter()
                .map(|e| match var {
                    None => e.evaluate(p.coords()),
                    Some(i) => e.derivative(*i).evaluate(p.coords()),
                })
                .collect()
        })
        .collect()
}

/// Kernel of the conditions "vanish at each simple point" and "vanish to
/// order two at each double point", as curves normalized so their first
/// nonzero coefficient is 1. Points of a group orbit only need one
/// representative when the basis is invariant.
pub fn interpolate_curve(
    basis: &InvariantBasis,
    simple: &[ProjectivePoint],
    double: &[ProjectivePoint],
) -> Result<Vec<InvariantCurve>> {
    let field = basis.ring().field();
    if let Some(bad) = simple.iter().chain(double).find(|p| p.field() != field) {
        return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
    }
    let rows = condition_rows(basis, simple, double)?;
    let kernel = Matrix::new(field, basis.len(), rows)?.kernel();
    if kernel.is_empty() {
        return Err(Error::EmptyKernel);
    }
    let imposed: Vec<Imposed> = simple
        .iter()
        .map(|p| Imposed { point: p.clone(), order: 1 })
        .chain(double.iter().map(|p| Imposed { point: p.clone(), order: 2 }))
        .collect();
    Ok(kernel
        .into_iter()
        .map(|coefficients| InvariantCurve {
            degree: basis.degree,
            exponents: basis.exponents.clone(),
            polynomial: basis.expand(&coefficients),
            coefficients,
            imposed: imposed.clone(),
        })
        .collect())
}

/// The two invariant curves behind the witness elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedCurve {
    /// Degree 12, singular along the orbit of (9 : 2u : 4u).
    Gamma,
    /// Degree 10.
    Delta,
}

impl NamedCurve {
    pub fn degree(&self) -> u32 {
        match self {
            NamedCurve::Gamma => 12,
            NamedCurve::Delta => 10,
        }
    }

    /// The printed coefficient table.
    pub fn printed(&self) -> &'static [([u32; 3], i64, i64)] {
        match self {
            NamedCurve::Gamma => &GAMMA_PRINTED,
            NamedCurve::Delta => &DELTA_PRINTED,
        }
    }
}

impl fmt::Display for NamedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NamedCurve::Gamma => "gamma",
            NamedCurve::Delta => "delta",
        })
    }
}

impl FromStr for NamedCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedCurve> {
        match s.to_ascii_lowercase().as_str() {
            "gamma" => Ok(NamedCurve::Gamma),
            "delta" => Ok(NamedCurve::Delta),
            _ => Err(Error::Invalid(format!("unknown curve `{s}` (expected gamma or delta)"))),
        }
    }
}

/// Orbit representatives for the hexagonal interpolation problems.
#[derive(Clone, Debug)]
pub struct HexagonalConditions {
    pub group: MatrixGroup,
    /// One point from each orbit of B21 double points.
    pub simple: Vec<ProjectivePoint>,
    /// The 72 B21 double points.
    pub double_points: Vec<ProjectivePoint>,
    /// (9 : 2u : 4u).
    pub special: ProjectivePoint,
}

/// Builds the conditions in the √3 model over `field`.
pub fn hexagonal_conditions(field: Field) -> Result<HexagonalConditions> {
    let group = hexagonal_group(field)?;
    let b21 = build_named("B21", Model::Sqrt3, field)?;
    let double_points = b21.intersection_points()?.with_multiplicity(2);
    let doubles = PointSet::new(double_points.iter().map(|p| (p.clone(), 2)).collect());
    let simple = group.orbits(&doubles)?.into_iter().map(|o| o.representative).collect();
    Ok(HexagonalConditions {
        group,
        simple,
        double_points,
        special: special_point(field)?,
    })
}

/// Vanishing orders of a curve along the orbit of one imposed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCheck {
    pub representative: ProjectivePoint,
    pub imposed_order: u32,
    pub orbit_size: usize,
    /// Smallest vanishing order over the orbit, capped one above the imposed order.
    pub min_order: u32,
}

impl OrbitCheck {
    pub fn holds(&self) -> bool {
        self.min_order >= self.imposed_order
    }
}

/// Checks every point of every imposed orbit, not just the representatives.
pub fn verify_curve(curve: &InvariantCurve, group: &MatrixGroup) -> Result<Vec<OrbitCheck>> {
    curve
        .imposed
        .par_iter()
        .map(|imp| {
            let orbit = group.orbit(&imp.point);
            let mut min_order = imp.order + 1;
            for p in &orbit {
                min_order = min_order.min(curve.polynomial.vanishing_order(p.coords(), imp.order + 1)?);
            }
            Ok(OrbitCheck {
                representative: imp.point.clone(),
                imposed_order: imp.order,
                orbit_size: orbit.len(),
                min_order,
            })
        })
        .collect()
}

/// How the interpolated coefficients compare with a printed table.
#[derive(Clone, Debug)]
pub struct PrintedComparison {
    pub projective_match: bool,
    /// (basis label, computed after rescaling, printed) where they differ.
    pub mismatches: Vec<(String, FieldElement, FieldElement)>,
}

/// Compares `curve` with `table` after rescaling to the table's f₁^d entry.
pub fn compare_with_table(
    basis: &InvariantBasis,
    curve: &InvariantCurve,
    table: &[([u32; 3], i64, i64)],
) -> Result<PrintedComparison> {
    let field = basis.ring().field();
    let printed = coefficients_along(table, &basis.exponents, field)?;
    let lead = [basis.degree, 0, 0];
    let lead_value = coefficients_along(table, &[lead.to_vec()], field)?.remove(0);
    let scaled = curve
        .rescaled(&lead, &lead_value)
        .ok_or_else(|| Error::Invalid("curve has no f1^d term to rescale by".into()))?;
    let mismatches = scaled
        .iter()
        .zip(&printed)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| (basis.label(i), a.clone(), b.clone()))
        .collect();
    Ok(PrintedComparison {
        projective_match: curve.projectively_equal(&printed),
        mismatches,
    })
}

/// Everything computed for one named curve.
#[derive(Clone, Debug)]
pub struct CurveReport {
    pub name: NamedCurve,
    pub basis: InvariantBasis,
    pub kernel_dim: usize,
    pub curve: InvariantCurve,
    pub verification: Vec<OrbitCheck>,
    pub printed: PrintedComparison,
}

impl CurveReport {
    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.name.to_string(),
            "field": self.basis.ring().field().to_string(),
            "degree": self.curve.degree,
            "basis_exponents": self.basis.exponents,
            "basis_labels": (0..self.basis.len()).map(|i| self.basis.label(i)).collect::<Vec<_>>(),
            "coefficients": self.curve.coefficients.iter().map(format_scalar).collect::<Vec<_>>(),
            "expanded": self.curve.polynomial.to_string(),
            "imposed_orbits": self.verification.iter().map(|c| json!({
                "representative": c.representative.to_string(),
                "order": c.imposed_order,
            })).collect::<Vec<_>>(),
            "kernel_dim": self.kernel_dim,
            "verification": self.verification.iter().map(|c| json!({
                "representative": c.representative.to_string(),
                "orbit_size": c.orbit_size,
                "imposed_order": c.imposed_order,
                "min_vanishing_order": c.min_order,
                "holds": c.holds(),
            })).collect::<Vec<_>>(),
            "printed_comparison": {
                "projective_match": self.printed.projective_match,
                "mismatches": self.printed.mismatches.iter().map(|(l, a, b)| json!({
                    "monomial": l,
                    "computed": format_scalar(a),
                    "printed": format_scalar(b),
                })).collect::<Vec<_>>(),
            },
        })
    }
}

/// Interpolates Γ or Δ in the √3 model over `field` and checks the result.
pub fn interpolate_named(name: NamedCurve, field: Field) -> Result<CurveReport> {
    let conds = hexagonal_conditions(field)?;
    let basis = InvariantBasis::hexagonal(field, name.degree())?;
    let double = match name {
        NamedCurve::Gamma => vec![conds.special.clone()],
        NamedCurve::Delta => vec![],
    };
    let kernel = interpolate_curve(&basis, &conds.simple, &double)?;
    let kernel_dim = kernel.len();
    let curve = kernel.into_iter().next().expect("nonempty kernel");
    let verification = verify_curve(&curve, &conds.group)?;
    let printed = compare_with_table(&basis, &curve, name.printed())?;
    Ok(CurveReport {
        name,
        basis,
        kernel_dim,
        curve,
        verification,
        printed,
    })
}

/// Points of P²(F_p) where f and its three partials vanish, for f over F_p
/// with p ≤ `bound`. Sorted canonically.
pub fn singular_points_scan_bounded(f: &Polynomial, bound: u64) -> Result<Vec<ProjectivePoint>> {
    let Field::Prime(p) = f.field() else {
        return Err(Error::Invalid(format!("the scan needs a prime field, not {}", f.field())));
    };
    if p > bound {
        return Err(Error::PrimeTooLarge { p, bound });
    }
    if f.ring().nvars() != 3 || !f.is_homogeneous() {
        return Err(Error::Invalid("the scan needs a homogeneous polynomial in three variables".into()));
    }
    let field = f.field();
    let polys = [f.clone(), f.derivative(0), f.derivative(1), f.derivative(2)];
    let residues: Vec<Vec<([u32; 3], u64)>> = polys
        .iter()
        .map(|q| {
            q.terms()
                .iter()
                .map(|(m, c)| ([m.exp(0), m.exp(1), m.exp(2)], c.as_residue().expect("prime field")))
                .collect()
        })
        .collect();
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let pow = |mut b: u64, mut e: u32| {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    // Polynomial in the last coordinate once the first two are fixed.
    let collapse = |terms: &[([u32; 3], u64)], x: u64, y: u64| {
        let top = terms.iter().map(|(e, _)| e[2]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![0u64; top + 1];
        for (e, c) in terms {
            let v = mul(mul(*c, pow(x, e[0])), pow(y, e[1]));
            coeffs[e[2] as usize] = (coeffs[e[2] as usize] + v) % p;
        }
        coeffs
    };
    let horner = |coeffs: &[u64], z: u64| coeffs.iter().rev().fold(0u64, |acc, c| (mul(acc, z) + c) % p);
    let scan_line = |x: u64, y: u64, zs: &mut dyn Iterator<Item = u64>| -> Vec<[u64; 3]> {
        let collapsed: Vec<Vec<u64>> = residues.iter().map(|t| collapse(t, x, y)).collect();
        zs.filter(|&z| collapsed.iter().all(|c| horner(c, z) == 0)).map(|z| [x, y, z]).collect()
    };
    let mut found: Vec<[u64; 3]> = (0..p).into_par_iter().flat_map_iter(|a| scan_line(1, a, &mut (0..p))).collect();
    found.extend(scan_line(0, 1, &mut (0..p)));
    found.extend(scan_line(0, 0, &mut std::iter::once(1)));
    let mut points = found
        .into_iter()
        .map(|c| ProjectivePoint::new(c.map(|v| field.from_i64(v as i64))))
        .collect::<Result<Vec<_>>>()?;
    points.sort();
    Ok(points)
}

/// [`singular_points_scan_bounded`] with the default [`SCAN_BOUND`].
pub fn singular_points_scan(f: &Polynomial) -> Result<Vec<ProjectivePoint>> {
    singular_points_scan_bounded(f, SCAN_BOUND)
}

/// Rank of the Hessian of a homogeneous f at a singular point. Rank 2 means
/// an ordinary node.
pub fn hessian_rank(f: &Polynomial, point: &ProjectivePoint) -> Result<usize> {
    let field = f.field();
    let rows = (0..3)
        .map(|i| {
            let fi = f.derivative(i);
            (0..3).map(|j| fi.derivative(j).evaluate(point.coords())).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::new(field, 3, rows)?.rank())
}

/// g = C(d−1, 2) − Σ C(mᵢ, 2) for a plane curve of degree d whose singular
/// points are all ordinary, given as (multiplicity, ordinary).
pub fn genus_nodal(d: u32, singular: &[(u32, bool)]) -> Result<i64> {
    if singular.iter().any(|&(_, ordinary)| !ordinary) {
        return Err(Error::NonOrdinaryUnsupported);
    }
    let c2 = |n: i64| n * (n - 1) / 2;
    Ok(c2(d as i64 - 1) - singular.iter().map(|&(m, _)| c2(m as i64)).sum::<i64>())
}

/// V(∂f/∂x, ∂f/∂y, ∂f/∂z) is empty in the projective plane: every variable
/// lies in the radical of the Jacobian ideal.
pub fn emptiness_of_singular_locus(f: &Polynomial, config: &GroebnerConfig) -> Result<bool> {
    if !f.is_homogeneous() {
        return Err(Error::Invalid("the singular locus test needs a homogeneous polynomial".into()));
    }
    let jac = jacobian_ideal(f);
    for i in 0..f.ring().nvars() {
        if !radical_membership(&Polynomial::var(f.ring(), i), &jac, config)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Singular points found by the scan and whether each is a node.
#[derive(Clone, Debug)]
pub struct SingularReport {
    pub prime: u64,
    pub degree: u32,
    /// (point, Hessian rank) for every F_p-point of the singular locus.
    pub points: Vec<(ProjectivePoint, usize)>,
    /// Present when every singular point found is an ordinary node.
    pub genus: Option<i64>,
}

impl SingularReport {
    pub fn nodes(&self) -> usize {
        self.points.iter().filter(|(_, r)| *r == 2).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prime": self.prime,
            "degree": self.degree,
            "singular_points": self.points.iter().map(|(p, r)| json!({
                "point": p.to_string(),
                "hessian_rank": r,
                "node": *r == 2,
            })).collect::<Vec<_>>(),
            "nodes": self.nodes(),
            "genus": self.genus,
        })
    }
}

impl fmt::Display for SingularReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}, {} nodes", self.degree, self.nodes())?;
        let others = self.points.len() - self.nodes();
        if others > 0 {
            write!(f, ", {others} other singular points")?;
        }
        match self.genus {
            Some(g) => write!(f, ", g={g}"),
            None => write!(f, ", genus not determined"),
        }
    }
}

/// Scans f mod p, classifies each singular point by its Hessian rank and,
/// when all are nodes, applies the genus formula.
pub fn singular_report(f: &Polynomial, p: u64) -> Result<SingularReport> {
    let fp = f.specialize(p)?;
    let degree = fp.degree().ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    let points = singular_points_scan(&fp)?
        .into_iter()
        .map(|q| {
            let r = hessian_rank(&fp, &q)?;
            Ok((q, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let nodes: Vec<(u32, bool)> = points.iter().map(|(_, r)| (2, *r == 2)).collect();
    Ok(SingularReport {
        prime: p,
        degree,
        genus: genus_nodal(degree, &nodes).ok(),
        points,
    })
}
