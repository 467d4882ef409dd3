//! Multivariate polynomials over a [`Field`] with a fixed variable list and
//! monomial order.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{sqrt_in_prime_field, Field, FieldElement};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Variable names, coefficient field and monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], field: Field, order: MonomialOrder) -> Result<Arc<Ring>> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && v != "sqrt"
                && v != "mod";
            if !valid || vars[..i].contains(v) {
                return Err(Error::Invalid(format!("bad variable name `{v}`")));
            }
        }
        if let MonomialOrder::Block { front } = order {
            if front > vars.len() {
                return Err(Error::Invalid(format!("block of {front} exceeds {} variables", vars.len())));
            }
        }
        Ok(Arc::new(Ring { vars, field, order }))
    }

    /// ℚ[x, y, z]-style ring over `field` with degrevlex.
    pub fn xyz(field: Field) -> Arc<Ring> {
        Ring::new(&["x", "y", "z"], field, MonomialOrder::DegRevLex).expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            field: self.field,
            order,
        })
    }

    pub fn with_field(&self, field: Field) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            field,
            order: self.order,
        })
    }

    /// Same variables and field (orders may differ).
    pub fn compatible(&self, other: &Ring) -> bool {
        self.vars == other.vars && self.field == other.field
    }

    /// A ring with `names` prepended to the variable list, plus the injection
    /// map old index → new index.
    pub fn extend_front(&self, names: &[&str], order: MonomialOrder) -> Result<(Arc<Ring>, Vec<usize>)> {
        let mut vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        let ring = Ring::new(&vars, self.field, order)?;
        let map = (0..self.nvars()).map(|i| i + names.len()).collect();
        Ok((ring, map))
    }
}

pub type Term = (Monomial, FieldElement);

/// Terms strictly descending in the ring's order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.compatible(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> Polynomial {
        Polynomial::from_terms(ring, vec![(Monomial::one(), c)])
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Polynomial {
        assert!(i < ring.nvars());
        Polynomial::from_terms(ring, vec![(Monomial::var(i), ring.field.one())])
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: FieldElement) -> Polynomial {
        Polynomial::from_terms(ring, vec![(m, c)])
    }

    /// Canonicalizes an arbitrary term list: sorts, merges equal monomials and
    /// drops zeros. Coefficients must lie in the ring's field.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms.iter().all(|(_, c)| c.field() == ring.field));
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Term list that is already sorted and free of zeros.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Linear form a₀x₀ + a₁x₁ + … in the first variables of `ring`.
    pub fn linear(ring: &Arc<Ring>, coeffs: &[FieldElement]) -> Polynomial {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(i), c.clone()))
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Highest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.compatible(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order;
        let other_terms: Vec<Term>;
        // Equal variables and field but a different order: re-sort first.
        let rhs = if self.ring.order == other.ring.order {
            &other.terms
        } else {
            other_terms = other.with_ring(&self.ring).terms;
            &other_terms
        };
        let (a, b) = (&self.terms, rhs);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { -c } else { c.clone() })));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>();
        let mut p = Polynomial {
            ring: self.ring.clone(),
            terms,
        };
        let order = self.ring.order;
        p.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(p)
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, d)| (tm.mul(m), d * c)).collect(),
        }
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.ring.nvars(), "variable index out of range");
        let field = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(i);
                let lowered = m.lower(i)?;
                let k = c * &field.from_i64(e as i64);
                (!k.is_zero()).then_some((lowered, k))
            })
            .collect();
        // Lowering one exponent keeps the relative order of the survivors.
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// Exact value at a point given by one coordinate per variable.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::Invalid(format!("expected {n} coordinates, got {}", point.len())));
        }
        let field = self.ring.field;
        if let Some(bad) = point.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        let powers: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let top = self.degree_in(i) as usize;
                let mut v = Vec::with_capacity(top + 1);
                v.push(field.one());
                for k in 1..=top {
                    let next = &v[k - 1] * &point[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// True when f and all its partial derivatives of total order below `m`
    /// vanish at `point`. Uses Hasse derivatives (Taylor coefficients), so the
    /// answer means f ∈ 𝔪_P^m in every characteristic.
    pub fn vanishing_order_at_least(&self, point: &[FieldElement], m: u32) -> Result<bool> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::Invalid(format!("expected {n} coordinates, got {}", point.len())));
        }
        let field = self.ring.field;
        if let Some(bad) = point.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        let powers: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let top = self.degree_in(i) as usize;
                let mut v = vec![field.one()];
                for k in 1..=top {
                    let next = &v[k - 1] * &point[i];
                    v.push(next);
                }
                v
            })
            .collect();
        for order in 0..m {
            for alpha in crate::groebner::monomials_of_degree(n, order) {
                let mut acc = field.zero();
                for (mono, c) in &self.terms {
                    if !alpha.divides(mono) {
                        continue;
                    }
                    let mut t = c.clone();
                    for i in 0..n {
                        let (e, a) = (mono.exp(i), alpha.exp(i));
                        if a > 0 {
                            t = &t * &field.from_bigint(&binomial(e, a));
                        }
                        if e > a {
                            t = &t * &powers[i][(e - a) as usize];
                        }
                    }
                    acc = &acc + &t;
                }
                if !acc.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Largest k ≤ `bound` with [`Self::vanishing_order_at_least`]`(point, k)`.
    pub fn vanishing_order(&self, point: &[FieldElement], bound: u32) -> Result<u32> {
        let mut k = 0;
        while k < bound && self.vanishing_order_at_least(point, k + 1)? {
            k += 1;
        }
        Ok(k)
    }

    /// Coefficientwise reduction mod p; √d maps to the smaller square root.
    pub fn specialize(&self, p: u64) -> Result<Polynomial> {
        let sqrt_d = match self.ring.field {
            Field::Quadratic(d) => Some(sqrt_in_prime_field(p, d)?.ok_or_else(|| Error::BadPrime {
                p,
                reason: format!("{d} is not a square mod {p}"),
            })?),
            Field::Rational => None,
            Field::Prime(q) if q == p => return Ok(self.clone()),
            Field::Prime(q) => {
                return Err(Error::FieldMismatch(format!("fp:{q}"), format!("fp:{p}")));
            }
        };
        let target = Field::prime(p).map_err(|_| Error::BadPrime {
            p,
            reason: "not an odd prime below 2^62".into(),
        })?;
        let ring = self.ring.with_field(target);
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let r = c.specialize(p, sqrt_d)?;
            if !r.is_zero() {
                terms.push((*m, r));
            }
        }
        Ok(Polynomial::from_sorted_terms(&ring, terms))
    }

    /// Same polynomial in a ring with the same variables and field but a
    /// possibly different order.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert!(self.ring.compatible(ring), "incompatible ring");
        if self.ring.order == ring.order {
            return Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            };
        }
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Image under a variable injection `map` (old index → new index) into
    /// `ring`, which must share the field.
    pub fn inject(&self, ring: &Arc<Ring>, map: &[usize]) -> Polynomial {
        assert_eq!(self.ring.field, ring.field);
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect())
    }

    /// f(M·v): variable i is replaced by Σ_j M[i][j]·x_j.
    pub fn substitute_linear(&self, matrix: &[Vec<FieldElement>]) -> Polynomial {
        let n = self.ring.nvars();
        assert_eq!(matrix.len(), n);
        let images: Vec<Polynomial> = matrix.iter().map(|row| Polynomial::linear(&self.ring, row)).collect();
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|l| vec![Polynomial::one(&self.ring), l.clone()]).collect();
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&self.ring, c.clone());
            for i in 0..n {
                let e = m.exp(i) as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Common denominator of all coefficients (1 over F_p).
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, (_, c)| acc.lcm(&c.denominator_lcm()))
    }
}

fn binomial(n: u32, k: u32) -> num_bigint::BigInt {
    (0..k).fold(num_bigint::BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    fn ring() -> Arc<Ring> {
        Ring::xyz(Field::Rational)
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(&ring(), s).unwrap()
    }

    #[test]
    fn products_and_powers() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
        assert_eq!(p("x+y").pow(2), p("x^2+2*x*y+y^2"));
        assert!((&p("x+y") * &p("x-y")).is_homogeneous());
        assert_eq!(p("x").pow(0), p("1"));
    }

    #[test]
    fn f10_product_of_initial_lines() {
        let factors = ["x", "x^2-3/4*z^2", "x^2-3*z^2", "x^2-12*z^2", "y", "y^2-z^2"];
        let f10 = factors.iter().fold(p("1"), |acc, f| &acc * &p(f));
        let expected = p("x^7*y^3 - x^7*y*z^2 - 63/4*x^5*y^3*z^2 + 63/4*x^5*y*z^4 \
                          + 189/4*x^3*y^3*z^4 - 189/4*x^3*y*z^6 - 27*x*y^3*z^6 + 27*x*y*z^8");
        assert_eq!(f10, expected);
        assert!(f10.evaluate(&[0, 0, 1].map(|v| Field::Rational.from_i64(v))).unwrap().is_zero());
        // Euler relation
        let euler = (0..3).fold(Polynomial::zero(&ring()), |acc, i| {
            &acc + &(&Polynomial::var(&ring(), i) * &f10.derivative(i))
        });
        assert_eq!(euler, f10.scale(&Field::Rational.from_i64(10)));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^2*y").derivative(0), p("2*x*y"));
        assert!(p("x+y").derivative(2).is_zero());
        // in F_3 the derivative of x^3 vanishes
        let r3 = Ring::xyz(Field::prime(3).unwrap());
        assert!(Polynomial::parse(&r3, "x^3").unwrap().derivative(0).is_zero());
    }

    #[test]
    fn evaluation() {
        let q = |v: i64| Field::Rational.from_i64(v);
        assert!(p("x+y+2*z").evaluate(&[q(1), q(1), q(-1)]).unwrap().is_zero());
        assert!(p("y-z").evaluate(&[q(0), q(1), q(1)]).unwrap().is_zero());
        assert!(p("x").evaluate(&[q(1), q(2)]).is_err());
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(
            p("x").evaluate(&[f7.one(), f7.one(), f7.one()]),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn specialization() {
        let r7 = Ring::xyz(Field::prime(7).unwrap());
        assert_eq!(p("x/2+y").specialize(7).unwrap(), Polynomial::parse(&r7, "4*x+y").unwrap());
        assert!(matches!(p("x/17+y").specialize(17), Err(Error::BadPrime { .. })));
        let k = Ring::xyz(Field::quadratic(3).unwrap());
        let f = Polynomial::parse(&k, "x + 1/2*sqrt(3)*z").unwrap();
        let r11 = Ring::xyz(Field::prime(11).unwrap());
        assert_eq!(f.specialize(11).unwrap(), Polynomial::parse(&r11, "x+8*z").unwrap());
        assert!(matches!(f.specialize(5), Err(Error::BadPrime { .. })));
    }

    #[test]
    fn ring_mismatch() {
        let other = Ring::xyz(Field::prime(7).unwrap());
        assert_eq!(p("x").checked_add(&Polynomial::var(&other, 0)), Err(Error::RingMismatch));
    }

    #[test]
    fn linear_substitution() {
        let f = p("x^2+y^2");
        let swap = vec![
            vec![Field::Rational.zero(), Field::Rational.one(), Field::Rational.zero()],
            vec![Field::Rational.one(), Field::Rational.zero(), Field::Rational.zero()],
            vec![Field::Rational.zero(), Field::Rational.zero(), Field::Rational.one()],
        ];
        assert_eq!(f.substitute_linear(&swap), f);
        assert_eq!(p("x").substitute_linear(&swap), p("y"));
    }

    #[test]
    fn vanishing_orders() {
        let q = |v: [i64; 3]| v.map(|c| Field::Rational.from_i64(c));
        let f = p("(x-z)^2");
        assert!(f.vanishing_order_at_least(&q([1, 0, 1]), 2).unwrap());
        assert!(!f.vanishing_order_at_least(&q([1, 0, 1]), 3).unwrap());
        assert_eq!(f.vanishing_order(&q([1, 0, 1]), 5).unwrap(), 2);
        assert_eq!(p("x*y*(x-y)").vanishing_order(&q([0, 0, 1]), 5).unwrap(), 3);
        assert!(p("x").vanishing_order_at_least(&q([0, 1, 0]), 0).unwrap());

        // in characteristic 3 every first partial of (x + z)^3 is zero, yet it
        // lies in the cube of the maximal ideal and no higher power
        let f3 = Field::Prime(3);
        let cube = Polynomial::parse(&Ring::xyz(f3), "x^3 + z^3").unwrap();
        let pt = [-1, 0, 1].map(|c| f3.from_i64(c));
        assert_eq!(cube.vanishing_order(&pt, 6).unwrap(), 3);
    }

    /// Order test by brute force: every iterated derivative of order < m.
    fn order_by_iterated_derivatives(f: &Polynomial, point: &[FieldElement], m: u32) -> bool {
        let mut layer = vec![f.clone()];
        for _ in 0..m {
            if layer.iter().any(|g| !g.evaluate(point).unwrap().is_zero()) {
                return false;
            }
            layer = layer.iter().flat_map(|g| (0..3).map(move |i| g.derivative(i))).collect();
        }
        true
    }

    fn homogeneous(deg: u32) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((0..=deg, 0..=deg, -9i64..10), 1..8).prop_map(move |ts| {
            let r = Ring::xyz(Field::Rational);
            let terms = ts
                .into_iter()
                .filter(|(a, b, _)| a + b <= deg)
                .map(|(a, b, c)| (Monomial::new(&[a, b, deg - a - b]), Field::Rational.from_i64(c)))
                .collect();
            Polynomial::from_terms(&r, terms)
        })
    }

    proptest! {
        #[test]
        fn euler_relation(f in homogeneous(5)) {
            let r = f.ring().clone();
            let euler = (0..3).fold(Polynomial::zero(&r), |acc, i| &acc + &(&Polynomial::var(&r, i) * &f.derivative(i)));
            prop_assert_eq!(euler, f.scale(&Field::Rational.from_i64(5)));
        }

        #[test]
        fn specialization_is_a_ring_morphism(f in homogeneous(3), g in homogeneous(4), pi in 0usize..4) {
            let prime = [7u64, 11, 101, 65521][pi];
            let lhs = (&f * &g).specialize(prime).unwrap();
            let rhs = &f.specialize(prime).unwrap() * &g.specialize(prime).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn vanishing_order_matches_iterated_derivatives(
            f in homogeneous(4),
            point in prop::collection::vec(-2i64..3, 3),
            other in prop::collection::vec(-2i64..3, 3),
            m in 1u32..4,
        ) {
            prop_assume!(point.iter().any(|&c| c != 0));
            let q = |v: i64| Field::Rational.from_i64(v);
            let pt: Vec<FieldElement> = point.iter().map(|&c| q(c)).collect();
            // a line through the point (cross product with another point)
            let (a, b) = (&point, &other);
            let coeffs = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            let l = Polynomial::linear(f.ring(), &coeffs.map(q));
            let g = &f * &l.pow(2);
            for h in [&f, &g] {
                prop_assert_eq!(h.vanishing_order_at_least(&pt, m).unwrap(), order_by_iterated_derivatives(h, &pt, m));
            }
            prop_assert!(g.vanishing_order_at_least(&pt, 2).unwrap());
            prop_assert_eq!(f.vanishing_order_at_least(&pt, 1).unwrap(), f.evaluate(&pt).unwrap().is_zero());
        }

        #[test]
        fn canonical_form_is_idempotent(f in homogeneous(4)) {
            let again = Polynomial::from_terms(f.ring(), f.terms().to_vec());
            prop_assert_eq!(&again, &f);
            prop_assert!(f.terms().iter().all(|(_, c)| !c.is_zero()));
        }
    }
}
