//! Ideals, reduced Gröbner bases and the operations built on them.

mod engine;

use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::rref_in_place;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::scalars::{with_scalars, Scalars};

pub(crate) use engine::{Element, Terms};

/// Resource caps for a Gröbner computation.
#[derive(Clone, Debug)]
pub struct GroebnerConfig {
    /// Largest admissible S-pair queue.
    pub max_pairs: usize,
    /// Largest admissible number of stored basis terms.
    pub max_terms: usize,
    pub time_budget: Option<Duration>,
    /// Checked between S-pairs; setting it aborts with `Resource::Cancelled`.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_pairs: 10_000_000,
            max_terms: 500_000_000,
            time_budget: None,
            cancel: None,
        }
    }
}

impl GroebnerConfig {
    fn limits(&self) -> engine::Limits {
        engine::Limits {
            max_pairs: self.max_pairs,
            max_terms: self.max_terms,
            deadline: self.time_budget.map(|d| Instant::now() + d),
            cancel: self.cancel.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub pairs_processed: usize,
    pub zero_reductions: usize,
    pub max_queue: usize,
    pub basis_size: usize,
    pub basis_terms: usize,
    pub elapsed_ms: u64,
}

/// A reduced Gröbner basis, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<Polynomial>,
    stats: GbStats,
}

impl GroebnerBasis {
    /// The ring carrying the basis order.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(Polynomial::leading_monomial).collect()
    }

    /// Remainder of `f` on division by the basis; `f` may use any order.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().compatible(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let f = f.with_ring(&self.ring);
        let order = self.ring.order();
        let nf = with_scalars!(self.ring.field(), |s| {
            let basis: Vec<Element<_>> = self.elements.iter().map(|g| Element::new(lift(&s, g), 0)).collect();
            lower(&s, engine::normal_form(&s, order, lift(&s, &f), &basis))
        });
        Ok(Polynomial::from_sorted_terms(&self.ring, nf))
    }

    /// Normal forms of many polynomials, sharing the lifted basis.
    pub fn normal_forms(&self, fs: &[Polynomial]) -> Result<Vec<Polynomial>> {
        use rayon::prelude::*;
        if fs.iter().any(|f| !f.ring().compatible(&self.ring)) {
            return Err(Error::RingMismatch);
        }
        let order = self.ring.order();
        let out = with_scalars!(self.ring.field(), |s| {
            let basis: Vec<Element<_>> = self.elements.iter().map(|g| Element::new(lift(&s, g), 0)).collect();
            fs.par_iter()
                .map(|f| {
                    let f = f.with_ring(&self.ring);
                    lower(&s, engine::normal_form(&s, order, lift(&s, &f), &basis))
                })
                .collect::<Vec<_>>()
        });
        Ok(out
            .into_iter()
            .map(|t| Polynomial::from_sorted_terms(&self.ring, t))
            .collect())
    }
}

pub(crate) fn lift<S: Scalars>(s: &S, f: &Polynomial) -> Terms<S::E> {
    f.terms().iter().map(|(m, c)| (*m, s.lift(c))).collect()
}

pub(crate) fn lower<S: Scalars>(s: &S, t: Terms<S::E>) -> Vec<(Monomial, crate::field::FieldElement)> {
    t.into_iter().map(|(m, c)| (m, s.lower(&c))).collect()
}

/// Generators plus an optional cached reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    basis: Option<Arc<GroebnerBasis>>,
}

impl Ideal {
    /// Zero generators are dropped; every generator must live in a ring
    /// compatible with `ring`.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.ring().compatible(ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                out.push(g.with_ring(ring));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            basis: None,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn basis(&self) -> Option<&GroebnerBasis> {
        self.basis.as_deref()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Copy with the reduced basis for `order` cached (reused if present).
    pub fn groebner_basis(&self, order: MonomialOrder, config: &GroebnerConfig) -> Result<Ideal> {
        if self.basis.as_ref().is_some_and(|b| b.order() == order) {
            return Ok(self.clone());
        }
        let ring = self.ring.with_order(order);
        let start = Instant::now();
        let limits = config.limits();
        fn run<S: engine::Coefficients>(
            s: &S,
            ring: &Arc<Ring>,
            gens: &[Polynomial],
            limits: &engine::Limits,
        ) -> Result<(Vec<Vec<(Monomial, crate::field::FieldElement)>>, engine::RunStats)> {
            let input = gens.iter().map(|g| s.lift_poly(g.with_ring(ring).terms())).collect();
            let (basis, run) = engine::buchberger(s, ring.order(), input, limits)?;
            Ok((basis.into_iter().map(|t| s.lower_poly(t)).collect(), run))
        }
        let (elements, run) = match self.ring.field() {
            crate::field::Field::Rational => run(&engine::Integers, &ring, &self.gens, &limits)?,
            crate::field::Field::Prime(p) => run(&crate::scalars::ModP { p }, &ring, &self.gens, &limits)?,
            field => run(&crate::scalars::Exact { field }, &ring, &self.gens, &limits)?,
        };
        let elements: Vec<Polynomial> = elements.into_iter().map(|t| Polynomial::from_sorted_terms(&ring, t)).collect();
        let stats = GbStats {
            pairs_processed: run.pairs_processed,
            zero_reductions: run.zero_reductions,
            max_queue: run.max_queue,
            basis_size: elements.len(),
            basis_terms: run.stored_terms,
            elapsed_ms: start.elapsed().as_millis() as u64,
        };
        Ok(Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            basis: Some(Arc::new(GroebnerBasis { ring, elements, stats })),
        })
    }

    /// Degrevlex basis unless one is cached already.
    pub fn ensure_basis(&self, config: &GroebnerConfig) -> Result<Ideal> {
        match &self.basis {
            Some(_) => Ok(self.clone()),
            None => self.groebner_basis(MonomialOrder::DegRevLex, config),
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let nf = self.basis.as_ref().ok_or(Error::MissingBasis)?.normal_form(f)?;
        Ok(nf.with_ring(f.ring()))
    }

    /// Membership against the cached basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Reduced basis as JSON: `{ring, order, gens}`; `None` without a basis.
    pub fn basis_to_json(&self) -> Option<Value> {
        let b = self.basis.as_ref()?;
        let mut v = ring_json(&self.ring, &b.elements);
        v["order"] = json!(b.order().to_string());
        Some(v)
    }

    pub fn to_json(&self) -> Value {
        ring_json(&self.ring, &self.gens)
    }

    /// Reads `{ "ring": {"vars": [...], "field": ...}, "gens": [...] }`, with an
    /// optional `"order"` tag for the ring order.
    pub fn from_json(v: &Value) -> Result<Ideal> {
        let bad = |m: &str| Error::Parse {
            offset: 0,
            message: m.to_string(),
        };
        let ring_v = v.get("ring").ok_or_else(|| bad("missing `ring`"))?;
        let vars: Vec<String> = ring_v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `ring.vars`"))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("variable names must be strings")))
            .collect::<Result<_>>()?;
        let field: Field = ring_v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing `ring.field`"))?
            .parse()?;
        let order = match v.get("order").and_then(Value::as_str) {
            Some(o) => o.parse()?,
            None => MonomialOrder::DegRevLex,
        };
        let ring = Ring::new(&vars, field, order)?;
        let gens = v
            .get("gens")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `gens`"))?
            .iter()
            .map(|g| {
                let s = g.as_str().ok_or_else(|| bad("generators must be strings"))?;
                Polynomial::parse(&ring, s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }
}

fn ring_json(ring: &Ring, polys: &[Polynomial]) -> Value {
    json!({
        "ring": { "vars": ring.vars(), "field": ring.field().to_string() },
        "gens": polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

/// Reduced basis with respect to `order`.
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder, config: &GroebnerConfig) -> Result<Ideal> {
    ideal.groebner_basis(order, config)
}

pub fn normal_form(f: &Polynomial, ideal: &Ideal) -> Result<Polynomial> {
    ideal.normal_form(f)
}

/// f ∈ I, computing a degrevlex basis if none is cached.
pub fn ideal_membership(f: &Polynomial, ideal: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    ideal.ensure_basis(config)?.contains(f)
}

/// A ⊆ B: every generator of A reduces to zero modulo B.
pub fn ideal_containment(a: &Ideal, b: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    if !a.ring.compatible(&b.ring) {
        return Err(Error::RingMismatch);
    }
    let b = b.ensure_basis(config)?;
    let nfs = b.basis().expect("basis").normal_forms(&a.gens)?;
    Ok(nfs.iter().all(Polynomial::is_zero))
}

/// r-fold products of generators, deduplicated.
pub fn ideal_power(ideal: &Ideal, r: u32) -> Result<Ideal> {
    if r == 0 {
        return Err(Error::Invalid("power must be positive".into()));
    }
    let g = &ideal.gens;
    let mut out: Vec<Polynomial> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut idx = vec![0usize; r as usize];
    if g.is_empty() {
        return Ideal::new(&ideal.ring, vec![]);
    }
    // Non-decreasing index tuples enumerate multisets.
    loop {
        let p = idx.iter().fold(Polynomial::one(&ideal.ring), |acc, &i| &acc * &g[i]);
        if seen.insert(p.clone()) {
            out.push(p);
        }
        let Some(k) = (0..idx.len()).rev().find(|&k| idx[k] + 1 < g.len()) else {
            break;
        };
        let v = idx[k] + 1;
        for slot in idx[k..].iter_mut() {
            *slot = v;
        }
    }
    Ideal::new(&ideal.ring, out)
}

/// I ∩ (subring without the variables in `front`): the basis elements free
/// of those variables, for a block order that puts them first.
pub fn eliminate(ideal: &Ideal, front: &[usize], config: &GroebnerConfig) -> Result<Ideal> {
    let n = ideal.ring.nvars();
    if front.iter().any(|&i| i >= n) {
        return Err(Error::Invalid("elimination variable out of range".into()));
    }
    let mut front: Vec<usize> = front.to_vec();
    front.sort_unstable();
    front.dedup();
    if front.is_empty() {
        let with_basis = ideal.groebner_basis(MonomialOrder::DegRevLex, config)?;
        let gens = with_basis.basis().expect("basis").elements().to_vec();
        return Ideal::new(&ideal.ring, gens.into_iter().map(|g| g.with_ring(&ideal.ring)).collect());
    }
    // Permute so eliminated variables come first.
    let rest: Vec<usize> = (0..n).filter(|i| !front.contains(i)).collect();
    let perm: Vec<usize> = front.iter().chain(&rest).copied().collect();
    let mut to_new = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        to_new[old] = new;
    }
    let names: Vec<&str> = perm.iter().map(|&i| ideal.ring.vars()[i].as_str()).collect();
    let ring = Ring::new(&names, ideal.ring.field(), MonomialOrder::Block { front: front.len() })?;
    let moved = Ideal::new(&ring, ideal.gens.iter().map(|g| g.inject(&ring, &to_new)).collect())?;
    let gb = moved.groebner_basis(ring.order(), config)?;
    let kept: Vec<Polynomial> = gb
        .basis()
        .expect("basis")
        .elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| (0..front.len()).all(|k| m.exp(k) == 0)))
        .map(|g| g.inject(&ideal.ring, &perm))
        .collect();
    Ideal::new(&ideal.ring, kept)
}

/// A ∩ B by eliminating t from t·A + (1 − t)·B.
pub fn ideal_intersection(a: &Ideal, b: &Ideal, config: &GroebnerConfig) -> Result<Ideal> {
    if !a.ring.compatible(&b.ring) {
        return Err(Error::RingMismatch);
    }
    let ring = &a.ring;
    if a.gens.is_empty() || b.gens.is_empty() {
        return Ideal::new(ring, vec![])?.groebner_basis(MonomialOrder::DegRevLex, config);
    }
    let t_name = fresh_name(ring, "t");
    let (ext, map) = ring.extend_front(&[&t_name], MonomialOrder::Block { front: 1 })?;
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens: Vec<Polynomial> = a.gens.iter().map(|g| &t * &g.inject(&ext, &map)).collect();
    gens.extend(b.gens.iter().map(|g| &one_minus_t * &g.inject(&ext, &map)));
    let gb = Ideal::new(&ext, gens)?.groebner_basis(ext.order(), config)?;
    let basis = gb.basis().expect("basis");
    let plain = ring.with_order(MonomialOrder::DegRevLex);
    let kept: Vec<Polynomial> = basis
        .elements()
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| {
            let terms = g.terms().iter().map(|(m, c)| (m.shift_down(1), c.clone())).collect();
            Polynomial::from_terms(&plain, terms)
        })
        .collect();
    // The t-free part of a reduced block-order basis is the reduced degrevlex
    // basis of the intersection.
    let stats = basis.stats().clone();
    let gens: Vec<Polynomial> = kept.iter().map(|g| g.with_ring(ring)).collect();
    Ok(Ideal {
        ring: ring.clone(),
        gens,
        basis: Some(Arc::new(GroebnerBasis {
            ring: plain,
            elements: kept,
            stats,
        })),
    })
}

/// f ∈ √I, by testing 1 ∈ I + (1 − t·f).
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    if !f.ring().compatible(&ideal.ring) {
        return Err(Error::RingMismatch);
    }
    let t_name = fresh_name(&ideal.ring, "t");
    let (ext, map) = ideal.ring.extend_front(&[&t_name], MonomialOrder::DegRevLex)?;
    let t = Polynomial::var(&ext, 0);
    let mut gens: Vec<Polynomial> = ideal.gens.iter().map(|g| g.inject(&ext, &map)).collect();
    gens.push(&Polynomial::one(&ext) - &(&t * &f.inject(&ext, &map)));
    let gb = Ideal::new(&ext, gens)?.groebner_basis(MonomialOrder::DegRevLex, config)?;
    Ok(gb.basis().expect("basis").is_unit())
}

/// (∂f/∂x₀, …, ∂f/∂xₙ₋₁).
pub fn jacobian_ideal(f: &Polynomial) -> Ideal {
    let gens = (0..f.ring().nvars()).map(|i| f.derivative(i)).collect();
    Ideal::new(f.ring(), gens).expect("same ring")
}

/// A graded piece I_d of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    pub dim: usize,
    /// Echelon basis: distinct leading monomials, leading coefficients 1.
    pub basis: Vec<Polynomial>,
}

/// All monomials of degree `d` in `n` variables, descending in degrevlex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(left);
            out.push(Monomial::new(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(n, 0, d, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
    out
}

/// I_d spanned by monomial multiples of the generators.
pub fn graded_piece(ideal: &Ideal, d: u32) -> Result<GradedPiece> {
    if !ideal.is_homogeneous() {
        return Err(Error::Invalid("graded pieces need a homogeneous ideal".into()));
    }
    let ring = ideal.ring.with_order(MonomialOrder::DegRevLex);
    let n = ring.nvars();
    let cols = monomials_of_degree(n, d);
    let index: std::collections::HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let basis = with_scalars!(ring.field(), |s| {
        let mut rows: Vec<Vec<_>> = Vec::new();
        for g in &ideal.gens {
            let Some(dg) = g.degree() else { continue };
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(n, d - dg) {
                let mut row = vec![s.zero(); cols.len()];
                for (gm, gc) in g.terms() {
                    row[index[&gm.mul(&m)]] = s.lift(gc);
                }
                rows.push(row);
            }
        }
        rref_in_place(&s, &mut rows, cols.len());
        rows.into_iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !s.is_zero(c))
                    .map(|(j, c)| (cols[j], s.lower(c)))
                    .collect();
                Polynomial::from_sorted_terms(&ring, terms).with_ring(&ideal.ring)
            })
            .collect::<Vec<_>>()
    });
    Ok(GradedPiece {
        degree: d,
        dim: basis.len(),
        basis,
    })
}

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while ring.var_index(&name).is_some() {
        k += 1;
        name = format!("{base}{k}");
    }
    name
}

#[cfg(test)]
mod tests;
