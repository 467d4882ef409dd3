//! Fat-point ideals, symbolic and ordinary powers of point ideals, and the
//! containment checks I^(m) ⊆ I^r together with explicit witness elements.


use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::Ordering;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arrangement::{build_named, Arrangement, Model, PointSet, ProjectivePoint};
use crate::error::{Error, Resource, Result};
use crate::field::Field;
use crate::groebner::{graded_piece, ideal_intersection, ideal_power, monomials_of_degree, GbStats, GroebnerConfig, Ideal};
use crate::invariant::{interpolate_named, NamedCurve};
use crate::linalg::{kernel_of, rref_in_place};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::scalars::{with_scalars, Scalars};

/// Points with assigned multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPointScheme {
    field: Field,
    points: Vec<(ProjectivePoint, u32)>,
}

impl FatPointScheme {
    /// Points must be distinct and share one field; multiplicities are ≥ 1.
    pub fn new(field: Field, mut points: Vec<(ProjectivePoint, u32)>) -> Result<FatPointScheme> {
        if let Some((bad, _)) = points.iter().find(|(p, _)| p.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        if points.iter().any(|&(_, m)| m == 0) {
            return Err(Error::Invalid("multiplicities must be positive".into()));
        }
        points.sort();
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid("a fat point scheme needs distinct points".into()));
        }
        Ok(FatPointScheme { field, points })
    }

    /// Every point with the same multiplicity m.
    pub fn uniform(field: Field, points: &[ProjectivePoint], m: u32) -> Result<FatPointScheme> {
        FatPointScheme::new(field, points.iter().map(|p| (p.clone(), m)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn points(&self) -> &[(ProjectivePoint, u32)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Σ C(mᵢ + 1, 2), the number of linear conditions the scheme imposes.
    pub fn condition_count(&self) -> usize {
        self.points.iter().map(|&(_, m)| (m as usize * (m as usize + 1)) / 2).sum()
    }
}

/// How to compute a fat-point ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Iterated intersections of powers of point ideals.
    Intersection,
    /// Degree-by-degree linear algebra on vanishing conditions.
    Interpolation,
}

impl Strategy {
    /// Interpolation from ten points up, intersection below.
    pub fn default_for(points: usize) -> Strategy {
        if points >= 10 {
            Strategy::Interpolation
        } else {
            Strategy::Intersection
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Intersection => "intersection",
            Strategy::Interpolation => "interpolation",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "intersection" => Ok(Strategy::Intersection),
            "interpolation" => Ok(Strategy::Interpolation),
            _ => Err(Error::Invalid(format!("unknown strategy `{s}`"))),
        }
    }
}

/// What the interpolation strategy saw in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecord {
    pub degree: u32,
    pub dim: usize,
    /// C(d + 2, 2) minus the condition count; negative below the plateau.
    pub expected: i64,
    pub new_generators: usize,
}

/// A fat-point ideal and how it was obtained.
#[derive(Clone, Debug)]
pub struct FatIdeal {
    pub ideal: Ideal,
    pub strategy: Strategy,
    /// Per-degree log of the interpolation strategy, empty otherwise.
    pub degrees: Vec<DegreeRecord>,
}

impl FatIdeal {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.ideal.gens().iter().filter_map(Polynomial::degree).collect()
    }
}

/// The two linear forms Pₖ·xⱼ − Pⱼ·xₖ, j ≠ k, where k indexes the first
/// nonzero coordinate of P.
pub fn point_ideal(p: &ProjectivePoint) -> Ideal {
    let ring = Ring::xyz(p.field());
    let c = p.coords();
    let k = (0..3).find(|&i| !c[i].is_zero()).expect("projective points are nonzero");
    let gens = (0..3)
        .filter(|&j| j != k)
        .map(|j| {
            let mut row = vec![ring.field().zero(); 3];
            row[j] = c[k].clone();
            row[k] = -c[j].clone();
            Polynomial::linear(&ring, &row)
        })
        .collect();
    Ideal::new(&ring, gens).expect("one ring")
}

fn check_cancel(config: &GroebnerConfig, started: Instant) -> Result<()> {
    let cancelled = config.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed));
    let late = config.time_budget.is_some_and(|b| started.elapsed() > b);
    if cancelled || late {
        return Err(Error::ResourceLimit {
            resource: if cancelled { Resource::Cancelled } else { Resource::WallTime },
            pairs: 0,
            basis: 0,
        });
    }
    Ok(())
}

/// Rows of the vanishing conditions in degree d. At each point only partials
/// in the two coordinates other than the first nonzero one are taken; by
/// the Euler relation they cut out the same space as all partials of order < m.
fn condition_rows<S: Scalars>(s: &S, scheme: &FatPointScheme, cols: &[Monomial]) -> Vec<Vec<S::E>> {
    let d = cols.first().map_or(0, |m| m.degree()) as usize;
    let mut binom: Vec<Vec<S::E>> = vec![vec![s.one()]];
    for n in 1..=d {
        let prev = &binom[n - 1];
        let row = (0..=n)
            .map(|k| if k == 0 || k == n { s.one() } else { s.add(&prev[k - 1], &prev[k]) })
            .collect();
        binom.push(row);
    }
    scheme
        .points
        .par_iter()
        .flat_map_iter(|(p, m)| {
            let c = p.coords();
            let k = (0..3).find(|&i| !c[i].is_zero()).expect("nonzero point");
            let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
            let pw: Vec<Vec<S::E>> = (0..3)
                .map(|i| {
                    let base = s.lift(&c[i]);
                    let mut v = vec![s.one()];
                    for e in 1..=d {
                        let next = s.mul(&v[e - 1], &base);
                        v.push(next);
                    }
                    v
                })
                .collect();
            let mut rows = Vec::new();
            for i in 0..*m {
                for j in 0..(*m - i) {
                    let mut alpha = [0u32; 3];
                    alpha[others[0]] = i;
                    alpha[others[1]] = j;
                    let row = cols
                        .iter()
                        .map(|mono| {
                            if (0..3).any(|t| alpha[t] > mono.exp(t)) {
                                return s.zero();
                            }
                            let mut v = s.one();
                            for t in 0..3 {
                                let (e, a) = (mono.exp(t) as usize, alpha[t] as usize);
                                if a > 0 {
                                    v = s.mul(&v, &binom[e][a]);
                                }
                                v = s.mul(&v, &pw[t][e - a]);
                            }
                            v
                        })
                        .collect::<Vec<_>>();
                    rows.push(row);
                }
            }
            rows
        })
        .collect()
}

fn vector_to_poly<S: Scalars>(s: &S, ring: &Arc<Ring>, cols: &[Monomial], v: &[S::E]) -> Polynomial {
    let terms = v
        .iter()
        .zip(cols)
        .filter(|(c, _)| !s.is_zero(c))
        .map(|(c, m)| (*m, s.lower(c)))
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Basis of the degree-d forms vanishing on the scheme (kernel vectors in
/// echelon form over the degree-d monomials, descending degrevlex).
pub fn fat_points_graded_piece(scheme: &FatPointScheme, d: u32) -> Vec<Polynomial> {
    let ring = Ring::xyz(scheme.field);
    let cols = monomials_of_degree(3, d);
    with_scalars!(scheme.field, |s| {
        let rows = condition_rows(&s, scheme, &cols);
        kernel_of(&s, rows, cols.len())
            .iter()
            .map(|v| vector_to_poly(&s, &ring, &cols, v))
            .collect::<Vec<_>>()
    })
}

fn interpolate_generators<S: Scalars>(
    s: &S,
    scheme: &FatPointScheme,
    config: &GroebnerConfig,
) -> Result<(Vec<Polynomial>, Vec<DegreeRecord>)> {
    let started = Instant::now();
    let ring = Ring::xyz(scheme.field);
    let conditions = scheme.condition_count() as i64;
    let mut gens = Vec::new();
    let mut records = Vec::new();
    let mut prev: Option<(Vec<Monomial>, Vec<Vec<S::E>>)> = None;
    let mut stable = 0;
    for d in 0u32.. {
        check_cancel(config, started)?;
        let cols = monomials_of_degree(3, d);
        let index: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let kernel = if scheme.is_empty() && d == 0 {
            vec![vec![s.one()]]
        } else {
            kernel_of(s, condition_rows(s, scheme, &cols), cols.len())
        };
        // I_{d−1}·(x, y, z) inside I_d
        let mut span: Vec<Vec<S::E>> = Vec::new();
        if let Some((prev_cols, prev_kernel)) = &prev {
            for v in prev_kernel {
                for var in 0..3 {
                    let mut row = vec![s.zero(); cols.len()];
                    for (c, m) in v.iter().zip(prev_cols) {
                        if !s.is_zero(c) {
                            row[index[&m.mul(&Monomial::var(var))]] = c.clone();
                        }
                    }
                    span.push(row);
                }
            }
        }
        let pivots = rref_in_place(s, &mut span, cols.len());
        let mut extra: Vec<Vec<S::E>> = kernel
            .iter()
            .map(|v| {
                let mut v = v.clone();
                for (row, &pc) in span.iter().zip(&pivots) {
                    if !s.is_zero(&v[pc]) {
                        let f = v[pc].clone();
                        for j in pc..cols.len() {
                            if !s.is_zero(&row[j]) {
                                v[j] = s.sub_mul(&v[j], &f, &row[j]);
                            }
                        }
                    }
                }
                v
            })
            .filter(|v| v.iter().any(|c| !s.is_zero(c)))
            .collect();
        rref_in_place(s, &mut extra, cols.len());
        gens.extend(extra.iter().map(|v| vector_to_poly(s, &ring, &cols, v)));
        let expected = (cols.len() as i64) - conditions;
        records.push(DegreeRecord {
            degree: d,
            dim: kernel.len(),
            expected,
            new_generators: extra.len(),
        });
        log::debug!("interpolation degree {d}: dim {} (expected {expected}), {} new generators", kernel.len(), extra.len());
        if kernel.len() as i64 == expected && extra.is_empty() {
            stable += 1;
            if stable == 2 {
                break;
            }
        } else {
            stable = 0;
        }
        prev = Some((cols, kernel));
    }
    Ok((gens, records))
}

/// The ideal of forms vanishing to order ≥ mᵢ at every Pᵢ.
pub fn fat_points_ideal(scheme: &FatPointScheme, strategy: Strategy, config: &GroebnerConfig) -> Result<FatIdeal> {
    let ring = Ring::xyz(scheme.field);
    match strategy {
        Strategy::Intersection => {
            let mut acc: Option<Ideal> = None;
            for (p, m) in &scheme.points {
                let q = ideal_power(&point_ideal(p), *m)?;
                acc = Some(match acc {
                    None => q.groebner_basis(MonomialOrder::DegRevLex, config)?,
                    Some(a) => ideal_intersection(&a, &q, config)?,
                });
            }
            let ideal = match acc {
                Some(i) => i,
                None => Ideal::new(&ring, vec![Polynomial::one(&ring)])?,
            };
            Ok(FatIdeal {
                ideal,
                strategy,
                degrees: Vec::new(),
            })
        }
        Strategy::Interpolation => {
            let (gens, degrees) = with_scalars!(scheme.field, |s| interpolate_generators(&s, scheme, config))?;
            Ok(FatIdeal {
                ideal: Ideal::new(&ring, gens)?,
                strategy,
                degrees,
            })
        }
    }
}

/// I^(m) of a reduced point set: every point with multiplicity m.
pub fn symbolic_power(points: &[ProjectivePoint], m: u32, strategy: Strategy, config: &GroebnerConfig) -> Result<FatIdeal> {
    let field = points.first().map_or(Field::Rational, |p| p.field());
    fat_points_ideal(&FatPointScheme::uniform(field, points, m)?, strategy, config)
}

/// f ∈ I for homogeneous f and I, decided in the single degree deg f by
/// linear algebra, without a Gröbner basis.
pub fn graded_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    let Some(d) = f.degree() else { return Ok(true) };
    if !f.is_homogeneous() {
        return Err(Error::Invalid("graded membership needs a homogeneous polynomial".into()));
    }
    let piece = graded_piece(ideal, d)?;
    let mut rest = f.with_ring(piece.basis.first().map_or(f.ring(), |b| b.ring()));
    // the basis is in echelon form with distinct leading monomials
    for b in &piece.basis {
        let lm = b.leading_monomial().expect("nonzero basis element");
        let c = rest.coefficient(&lm);
        if !c.is_zero() {
            rest = &rest - &b.scale(&c);
        }
    }
    Ok(rest.is_zero())
}

/// How much a verdict proves.
pub fn epistemic_label(field: Field, holds: bool) -> &'static str {
    match (field, holds) {
        (Field::Prime(_), false) => "proof mod p",
        (Field::Prime(_), true) => "evidence (good-prime heuristic)",
        (_, _) => "proof (exact arithmetic)",
    }
}

/// Stable 64-bit FNV-1a digest of a polynomial's text form.
pub fn digest(f: &Polynomial) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in f.to_string().bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// Why a containment verdict came out the way it did.
#[derive(Clone, Debug)]
pub enum Certificate {
    AllReduced,
    NonzeroNormalForm {
        generator_index: usize,
        generator: Polynomial,
        normal_form: Polynomial,
    },
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::AllReduced => json!({ "kind": "all generators reduced to zero" }),
            Certificate::NonzeroNormalForm {
                generator_index,
                generator,
                normal_form,
            } => json!({
                "kind": "nonzero normal form",
                "generator_index": generator_index,
                "generator_degree": generator.degree(),
                "normal_form_terms": normal_form.len(),
                "normal_form_leading_monomial": normal_form.leading_term().map(|(m, c)| {
                    Polynomial::monomial(normal_form.ring(), *m, c.clone()).to_string()
                }),
                "normal_form_digest": digest(normal_form),
            }),
        }
    }
}

/// Outcome of testing I^(m) ⊆ I^r.
#[derive(Clone, Debug)]
pub struct ContainmentVerdict {
    pub m: u32,
    pub r: u32,
    pub field: Field,
    pub holds: bool,
    pub certificate: Certificate,
    pub points: usize,
    pub strategy: Strategy,
    /// Generators of I, of I^r, of the basis of I^r and of I^(m).
    pub generator_counts: [usize; 4],
    pub symbolic_degrees: Vec<u32>,
    pub basis_stats: GbStats,
    pub interpolation_log: Vec<DegreeRecord>,
    pub wall_time_ms: u128,
}

impl ContainmentVerdict {
    pub fn label(&self) -> &'static str {
        epistemic_label(self.field, self.holds)
    }

    pub fn to_json(&self, instance: &str) -> Value {
        let [i, ir, basis, im] = self.generator_counts;
        json!({
            "instance": instance,
            "field": self.field.to_string(),
            "prime": match self.field { Field::Prime(p) => Some(p), _ => None },
            "m": self.m,
            "r": self.r,
            "points": self.points,
            "holds": self.holds,
            "label": self.label(),
            "certificate": self.certificate.to_json(),
            "generator_counts": {
                "ideal": i,
                "ordinary_power": ir,
                "ordinary_power_basis": basis,
                "symbolic_power": im,
            },
            "degrees": { "symbolic_power": self.symbolic_degrees },
            "strategy": self.strategy.to_string(),
            "interpolation_log": degree_log_json(&self.interpolation_log),
            "wall_time": self.wall_time_ms,
            "resource_stats": self.basis_stats,
        })
    }
}

fn degree_log_json(log: &[DegreeRecord]) -> Value {
    log.iter()
        .map(|r| json!({ "degree": r.degree, "dim": r.dim, "expected": r.expected, "new_generators": r.new_generators }))
        .collect()
}

/// Options shared by the containment entry points.
#[derive(Clone, Debug, Default)]
pub struct ContainmentOptions {
    /// Defaults to [`Strategy::default_for`] the number of points.
    pub strategy: Option<Strategy>,
    pub config: GroebnerConfig,
}

fn ordinary_power_basis(points: &[ProjectivePoint], r: u32, strategy: Strategy, config: &GroebnerConfig) -> Result<(Ideal, Ideal, Ideal)> {
    let i = symbolic_power(points, 1, strategy, config)?.ideal;
    let ir = ideal_power(&i, r)?;
    log::info!("I has {} generators, I^{r} has {}; computing its basis", i.gens().len(), ir.gens().len());
    let basis = ir.groebner_basis(MonomialOrder::DegRevLex, config)?;
    Ok((i, ir, basis))
}

/// I^(m) ⊆ I^r for the ideal I of `points`: every generator of I^(m) must
/// reduce to zero modulo a Gröbner basis of I^r.
pub fn check_containment(points: &[ProjectivePoint], m: u32, r: u32, options: &ContainmentOptions) -> Result<ContainmentVerdict> {
    let started = Instant::now();
    let field = points.first().map_or(Field::Rational, |p| p.field());
    let strategy = options.strategy.unwrap_or(Strategy::default_for(points.len()));
    let config = &options.config;
    let (i, ir, basis) = ordinary_power_basis(points, r, strategy, config)?;
    let gb = basis.basis().expect("basis");
    log::info!("basis of I^{r}: {} elements", gb.elements().len());
    let symbolic = symbolic_power(points, m, strategy, config)?;
    let gens = symbolic.ideal.gens();
    log::info!("I^({m}) has {} generators", gens.len());
    let nfs = gb.normal_forms(gens)?;
    let certificate = match nfs.into_iter().enumerate().find(|(_, nf)| !nf.is_zero()) {
        Some((k, nf)) => Certificate::NonzeroNormalForm {
            generator_index: k,
            generator: gens[k].clone(),
            normal_form: nf,
        },
        None => Certificate::AllReduced,
    };
    Ok(ContainmentVerdict {
        m,
        r,
        field,
        holds: matches!(certificate, Certificate::AllReduced),
        certificate,
        points: points.len(),
        strategy,
        generator_counts: [i.gens().len(), ir.gens().len(), gb.elements().len(), gens.len()],
        symbolic_degrees: symbolic.generator_degrees(),
        basis_stats: gb.stats().clone(),
        interpolation_log: symbolic.degrees,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

/// Pointwise half of a witness check.
#[derive(Clone, Debug)]
pub struct SymbolicCheck {
    pub holds: bool,
    /// Points where f vanishes to order below m.
    pub failures: Vec<ProjectivePoint>,
}

/// Normal-form half of a witness check.
#[derive(Clone, Debug)]
pub struct OrdinaryCheck {
    pub member: bool,
    pub normal_form: Polynomial,
    pub basis_stats: GbStats,
}

#[derive(Clone, Debug)]
pub struct WitnessVerdict {
    pub m: u32,
    pub r: u32,
    pub degree: u32,
    pub field: Field,
    /// (a): f ∈ I^(m), by vanishing orders at every point.
    pub symbolic: SymbolicCheck,
    /// (b): f ∈ I^r, by a normal form; resource limits land here.
    pub ordinary: std::result::Result<OrdinaryCheck, Error>,
}

impl WitnessVerdict {
    /// f ∈ I^(m) and f ∉ I^r.
    pub fn certifies_non_containment(&self) -> bool {
        self.symbolic.holds && matches!(&self.ordinary, Ok(o) if !o.member)
    }

    pub fn to_json(&self, instance: &str) -> Value {
        let ordinary = match &self.ordinary {
            Ok(o) => json!({
                "member": o.member,
                "normal_form_terms": o.normal_form.len(),
                "normal_form_digest": digest(&o.normal_form),
                "resource_stats": o.basis_stats,
            }),
            Err(e) => json!({ "undecided": e.to_string() }),
        };
        json!({
            "instance": instance,
            "field": self.field.to_string(),
            "prime": match self.field { Field::Prime(p) => Some(p), _ => None },
            "m": self.m,
            "r": self.r,
            "witness_degree": self.degree,
            "in_symbolic_power": self.symbolic.holds,
            "symbolic_failures": self.symbolic.failures.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "in_ordinary_power": ordinary,
            "certifies_non_containment": self.certifies_non_containment(),
            "label": if self.certifies_non_containment() { epistemic_label(self.field, false) } else { "inconclusive" },
        })
    }
}

/// (a) f vanishes to order ≥ m at every point; (b) f ∈ I^r by a normal form
/// against a Gröbner basis of I^r. The two parts are reported separately.
pub fn witness_check(f: &Polynomial, points: &PointSet, m: u32, r: u32, options: &ContainmentOptions) -> Result<WitnessVerdict> {
    if !f.is_homogeneous() {
        return Err(Error::Invalid("witness must be homogeneous".into()));
    }
    let pts = points.points();
    let failures: Vec<ProjectivePoint> = pts
        .par_iter()
        .map(|p| f.vanishing_order_at_least(p.coords(), m).map(|ok| (!ok).then(|| p.clone())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let strategy = options.strategy.unwrap_or(Strategy::default_for(pts.len()));
    let ordinary = ordinary_power_basis(&pts, r, strategy, &options.config).and_then(|(_, _, basis)| {
        let gb = basis.basis().expect("basis");
        let normal_form = gb.normal_form(f)?;
        Ok(OrdinaryCheck {
            member: normal_form.is_zero(),
            normal_form,
            basis_stats: gb.stats().clone(),
        })
    });
    Ok(WitnessVerdict {
        m,
        r,
        degree: f.degree().unwrap_or(0),
        field: f.field(),
        symbolic: SymbolicCheck {
            holds: failures.is_empty(),
            failures,
        },
        ordinary,
    })
}

/// The arrangement whose points a witness is tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessName {
    /// Degree 33 on the 127 points of A313.
    A313,
    /// Degree 31 on the 115 points of B21.
    B21,
}

impl WitnessName {
    pub fn curve(&self) -> NamedCurve {
        match self {
            WitnessName::A313 => NamedCurve::Gamma,
            WitnessName::B21 => NamedCurve::Delta,
        }
    }

    pub fn arrangement(&self) -> &'static str {
        match self {
            WitnessName::A313 => "A313",
            WitnessName::B21 => "B21",
        }
    }
}

impl FromStr for WitnessName {
    type Err = Error;

    fn from_str(s: &str) -> Result<WitnessName> {
        match s {
            "A313" => Ok(WitnessName::A313),
            "B21" => Ok(WitnessName::B21),
            _ => Err(Error::Invalid(format!("no witness for `{s}` (expected A313 or B21)"))),
        }
    }
}

/// The curve part of a witness in the rational model, interpolated over
/// `field`: degree 12 singular at the 12 points A313 \ B21 and through the
/// 72 double points of B21, or degree 10 through those 72 points.
pub fn rational_model_curve(name: NamedCurve, field: Field) -> Result<Polynomial> {
    let a313 = build_named("A313", Model::RationalTable1, field)?;
    let b21 = build_named("B21", Model::RationalTable1, field)?;
    let b21_points = b21.intersection_points()?;
    let mut scheme: Vec<(ProjectivePoint, u32)> = b21_points.with_multiplicity(2).into_iter().map(|p| (p, 1)).collect();
    if name == NamedCurve::Gamma {
        scheme.extend(a313.intersection_points()?.difference(b21_points).into_iter().map(|p| (p, 2)));
    }
    let piece = fat_points_graded_piece(&FatPointScheme::new(field, scheme)?, name.degree());
    match piece.len() {
        0 => Err(Error::EmptyKernel),
        1 => Ok(piece.into_iter().next().expect("one element")),
        k => Err(Error::Invalid(format!("the {name} conditions leave a {k}-dimensional space"))),
    }
}

/// Product of the 21 B21 forms times Γ (for A313, degree 33) or Δ (for B21,
/// degree 31), in the chosen model over `field`.
pub fn build_witness(name: WitnessName, model: Model, field: Field) -> Result<Polynomial> {
    let lines = build_named("B21", model, field)?.product_of_forms();
    let curve = match model {
        Model::Sqrt3 => interpolate_named(name.curve(), field)?.curve.polynomial,
        Model::RationalTable1 => rational_model_curve(name.curve(), field)?,
    };
    Ok(&lines * &curve)
}

/// Points a witness is tested against, in the same model and field.
pub fn witness_points(name: WitnessName, model: Model, field: Field) -> Result<PointSet> {
    Ok(build_named(name.arrangement(), model, field)?.intersection_points()?.clone())
}

/// Checks that p is usable for reducing a ℚ-defined computation on `arr`:
/// p is at least 5, divides no denominator of `polys`, and the reduced
/// arrangement keeps its t-vector (no lines or points collide mod p).
pub fn check_good_prime(p: u64, arr: &Arrangement, polys: &[&Polynomial]) -> Result<()> {
    let bad = |reason: String| Err(Error::BadPrime { p, reason });
    if p < 5 {
        return bad("too small".into());
    }
    let big = num_bigint::BigInt::from(p);
    for f in polys {
        if (f.denominator_lcm() % &big) == num_bigint::BigInt::from(0) {
            return bad("divides a coefficient denominator".into());
        }
    }
    let reduced = match arr.specialize(p) {
        Ok(a) => a,
        Err(e) => return bad(format!("the arrangement does not reduce: {e}")),
    };
    if reduced.t_vector()? != arr.t_vector()? {
        return bad("lines or points collide mod p".into());
    }
    Ok(())
}
