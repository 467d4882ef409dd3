//! Buchberger's algorithm over an abstract [`Coefficients`] implementation.
//!
//! Pairs are pruned with the Gebauer–Möller criteria and selected by sugar
//! degree, ties broken by the lexicographically smallest lcm and then by the
//! pair indices. The loop is sequential so the sequence of basis insertions is
//! reproducible.

use std::cmp::Reverse;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BinaryHeap};
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Resource, Result};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::FieldElement;
use crate::scalars::{Exact, ModP, Scalars};

pub(crate) type Terms<E> = Vec<(Monomial, E)>;

/// Resource caps for one run.
#[derive(Clone, Debug)]
pub(crate) struct Limits {
    pub max_pairs: usize,
    pub max_terms: usize,
    pub deadline: Option<Instant>,
    pub cancel: Option<Arc<AtomicBool>>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct RunStats {
    pub pairs_processed: usize,
    pub zero_reductions: usize,
    pub max_queue: usize,
    pub stored_terms: usize,
}

/// Coarse divisibility filter: bit (8·i + k) is set when the exponent of
/// variable i reaches `STEPS[k]`.
const STEPS: [u16; 8] = [1, 2, 3, 4, 6, 8, 12, 16];

#[inline]
fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.raw().iter().enumerate().take(MAX_VARS) {
        for (k, &s) in STEPS.iter().enumerate() {
            if e >= s {
                mask |= 1 << (8 * i + k);
            }
        }
    }
    mask
}

/// A monic basis element.
#[derive(Clone, Debug)]
pub(crate) struct Element<E> {
    pub terms: Terms<E>,
    pub sugar: u32,
    lm: Monomial,
    mask: u64,
}

impl<E> Element<E> {
    pub fn new(terms: Terms<E>, sugar: u32) -> Element<E> {
        let lm = terms[0].0;
        Element {
            mask: divmask(&lm),
            lm,
            terms,
            sugar,
        }
    }

}

/// Finds the first element whose leading monomial divides `m`.
#[inline]
fn find_reducer<'a, E>(elems: &'a [Element<E>], active: &[usize], m: &Monomial) -> Option<&'a Element<E>> {
    let mask = divmask(m);
    active
        .iter()
        .map(|&i| &elems[i])
        .find(|g| g.mask & !mask == 0 && g.lm.divides(m))
}

/// Multivariate division of `f` by `elems[active]`, up to a unit: over the
/// integers the result is a multiple of the true remainder.
/// With `full` every term is reduced, otherwise only the leading one.
/// `sugar` is raised by the reducers used.
pub(crate) fn reduce<S: Coefficients>(
    s: &S,
    order: MonomialOrder,
    f: Terms<S::E>,
    elems: &[Element<S::E>],
    active: &[usize],
    full: bool,
    sugar: &mut u32,
) -> Terms<S::E> {
    let mut acc: BTreeMap<[u16; MAX_VARS + 2], (Monomial, S::E)> = BTreeMap::new();
    for (m, c) in f {
        match acc.entry(order.key(&m)) {
            Entry::Vacant(v) => {
                v.insert((m, c));
            }
            Entry::Occupied(mut o) => {
                let sum = s.add(&o.get().1, &c);
                o.get_mut().1 = sum;
            }
        }
    }
    let mut out: Terms<S::E> = Vec::new();
    let mut scaled = 0usize;
    while let Some((_, (m, c))) = acc.pop_last() {
        if s.is_zero(&c) {
            continue;
        }
        let Some(g) = find_reducer(elems, active, &m) else {
            out.push((m, c));
            if !full {
                while let Some((_, t)) = acc.pop_last() {
                    if !s.is_zero(&t.1) {
                        out.push(t);
                    }
                }
                break;
            }
            continue;
        };
        let q = g.lm.quotient_of(&m).expect("reducer divides");
        *sugar = (*sugar).max(g.sugar + q.degree());
        let (u, v) = s.cancel(&c, &g.terms[0].1);
        if let Some(u) = &u {
            for e in acc.values_mut() {
                e.1 = s.mul(&e.1, u);
            }
            for e in out.iter_mut() {
                e.1 = s.mul(&e.1, u);
            }
            scaled += 1;
        }
        for (gm, gc) in &g.terms[1..] {
            let mm = gm.mul(&q);
            let key = order.key(&mm);
            match acc.get_mut(&key) {
                Some(entry) => {
                    entry.1 = s.sub_mul(&entry.1, &v, gc);
                    if s.is_zero(&entry.1) {
                        acc.remove(&key);
                    }
                }
                None => {
                    acc.insert(key, (mm, s.neg(&s.mul(&v, gc))));
                }
            }
        }
        // content removal only between steps, once the subtraction is done
        if u.is_some() && scaled % 8 == 0 {
            s.shrink(acc.values_mut().map(|e| &mut e.1).chain(out.iter_mut().map(|e| &mut e.1)));
        }
    }
    out
}

/// `q·terms`, `q` a monomial; order is preserved by multiplicativity.
fn shift<E: Clone>(terms: &[(Monomial, E)], q: &Monomial) -> Terms<E> {
    terms.iter().map(|(m, c)| (m.mul(q), c.clone())).collect()
}


#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pair {
    sugar: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

impl Pair {
    fn rank(&self) -> (u32, &[u16; MAX_VARS], usize, usize) {
        (self.sugar, self.lcm.raw(), self.i, self.j)
    }
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct State<S: Coefficients> {
    elems: Vec<Element<S::E>>,
    active: Vec<usize>,
    pairs: BinaryHeap<Reverse<Pair>>,
    stats: RunStats,
}

impl<S: Coefficients> State<S> {
    /// Gebauer–Möller update with the new element `h` (already reduced).
    fn update(&mut self, h: Element<S::E>) {
        let hi = self.elems.len();
        let hlm = h.lm;
        self.stats.stored_terms += h.terms.len();
        self.elems.push(h);

        let candidates: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, hlm.lcm(&self.elems[g].lm))).collect();
        // Chain criterion within the new pairs; among equal lcms the last one survives.
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, &(g, l)) in candidates.iter().enumerate() {
            let coprime = hlm.is_coprime(&self.elems[g].lm);
            let dominated = candidates[k + 1..].iter().any(|(_, l2)| l2.divides(&l))
                || kept.iter().any(|(_, l2)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l));
            }
        }
        // Product criterion.
        kept.retain(|&(g, _)| !hlm.is_coprime(&self.elems[g].lm));

        // Old pairs made redundant by h.
        let elems = &self.elems;
        self.pairs.retain(|Reverse(p)| {
            let l = p.lcm;
            let drop = hlm.divides(&l)
                && hlm.lcm(&elems[p.i].lm) != l
                && hlm.lcm(&elems[p.j].lm) != l;
            !drop
        });

        for (g, l) in kept {
            let sugar = (self.elems[g].sugar + l.degree() - self.elems[g].lm.degree())
                .max(self.elems[hi].sugar + l.degree() - hlm.degree());
            self.pairs.push(Reverse(Pair { sugar, lcm: l, i: g, j: hi }));
        }
        let elems = &self.elems;
        self.active.retain(|&g| !hlm.divides(&elems[g].lm));
        self.active.push(hi);
        self.stats.max_queue = self.stats.max_queue.max(self.pairs.len());
    }

    fn check_limits(&self, limits: &Limits) -> Result<()> {
        let resource = if self.pairs.len() > limits.max_pairs {
            Some(Resource::PairQueue)
        } else if self.stats.stored_terms > limits.max_terms {
            Some(Resource::StoredTerms)
        } else if limits.deadline.is_some_and(|d| Instant::now() >= d) {
            Some(Resource::WallTime)
        } else if limits.cancel.as_ref().is_some_and(|c| c.load(AtomicOrdering::Relaxed)) {
            Some(Resource::Cancelled)
        } else {
            None
        };
        match resource {
            None => Ok(()),
            Some(resource) => Err(Error::ResourceLimit {
                resource,
                pairs: self.stats.pairs_processed,
                basis: self.active.len(),
            }),
        }
    }
}

/// Reduced Gröbner basis of the input polynomials (each sorted descending
/// in `order`), returned sorted by ascending leading monomial.
pub(crate) fn buchberger<S: Coefficients>(
    s: &S,
    order: MonomialOrder,
    input: Vec<Terms<S::E>>,
    limits: &Limits,
) -> Result<(Vec<Terms<S::E>>, RunStats)> {
    let mut input: Vec<Terms<S::E>> = input.into_iter().filter(|f| !f.is_empty()).collect();
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));
    let mut st = State::<S> {
        elems: Vec::new(),
        active: Vec::new(),
        pairs: BinaryHeap::new(),
        stats: RunStats::default(),
    };
    for f in input {
        let mut sugar = f.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let mut h = reduce(s, order, f, &st.elems, &st.active, true, &mut sugar);
        if h.is_empty() {
            continue;
        }
        s.normalize(&mut h);
        st.update(Element::new(h, sugar));
        st.check_limits(limits)?;
    }

    let mut last_log = Instant::now();
    while let Some(Reverse(pair)) = st.pairs.pop() {
        st.check_limits(limits)?;
        let lcm = pair.lcm;
        let (gi, gj) = (&st.elems[pair.i], &st.elems[pair.j]);
        let qi = gi.lm.quotient_of(&lcm).expect("lcm");
        let qj = gj.lm.quotient_of(&lcm).expect("lcm");
        let (u, v) = s.cancel(&gi.terms[0].1, &gj.terms[0].1);
        let mut spoly = shift(&gi.terms[1..], &qi);
        if let Some(u) = u {
            for t in spoly.iter_mut() {
                t.1 = s.mul(&t.1, &u);
            }
        }
        spoly.extend(shift(&gj.terms[1..], &qj).into_iter().map(|(m, c)| (m, s.neg(&s.mul(&v, &c)))));
        let mut sugar = pair.sugar;
        let mut h = reduce(s, order, spoly, &st.elems, &st.active, true, &mut sugar);
        st.stats.pairs_processed += 1;
        if h.is_empty() {
            st.stats.zero_reductions += 1;
        } else {
            s.normalize(&mut h);
            st.update(Element::new(h, sugar));
        }
        if last_log.elapsed().as_secs() >= 5 {
            last_log = Instant::now();
            log::info!(
                "groebner: {} pairs processed, {} queued, basis {} (sugar {})",
                st.stats.pairs_processed,
                st.pairs.len(),
                st.active.len(),
                pair.sugar
            );
        }
    }

    // Interreduce the (already minimal) active set.
    let mut active = st.active.clone();
    active.sort_by(|&a, &b| order.cmp(&st.elems[a].lm, &st.elems[b].lm));
    let mut reduced: Vec<Terms<S::E>> = Vec::with_capacity(active.len());
    for (k, &i) in active.iter().enumerate() {
        let others: Vec<usize> = active.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &j)| j).collect();
        let mut sugar = 0;
        let mut terms = reduce(s, order, st.elems[i].terms.clone(), &st.elems, &others, true, &mut sugar);
        s.normalize(&mut terms);
        reduced.push(terms);
    }
    st.stats.stored_terms = reduced.iter().map(Vec::len).sum();
    Ok((reduced, st.stats))
}

/// Normal form against a reduced basis given as term lists.
pub(crate) fn normal_form<S: Coefficients>(s: &S, order: MonomialOrder, f: Terms<S::E>, basis: &[Element<S::E>]) -> Terms<S::E> {
    let all: Vec<usize> = (0..basis.len()).collect();
    let mut sugar = 0;
    reduce(s, order, f, basis, &all, true, &mut sugar)
}

/// Coefficient arithmetic for the engine. Over a field basis elements are
/// monic; over the integers (standing in for the rationals) they are
/// primitive and reduction is fraction-free.
pub(crate) trait Coefficients: Sync + Send {
    type E: Clone + PartialEq + Send + Sync + std::fmt::Debug;

    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// a − b·c
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
    /// (u, v) with u·a = v·b; `u` is `None` when it is one.
    fn cancel(&self, a: &Self::E, b: &Self::E) -> (Option<Self::E>, Self::E);
    /// Canonical associate of a nonzero polynomial.
    fn normalize(&self, t: &mut Terms<Self::E>);
    /// Divides a partial result by a common factor, if worthwhile.
    fn shrink<'a, I: Iterator<Item = &'a mut Self::E>>(&self, _values: I)
    where
        Self::E: 'a,
    {
    }
    fn lift_poly(&self, t: &[(Monomial, FieldElement)]) -> Terms<Self::E>;
    /// Back to field coefficients, made monic.
    fn lower_poly(&self, t: Terms<Self::E>) -> Vec<(Monomial, FieldElement)>;
}

macro_rules! field_coefficients {
    ($t:ty) => {
        impl Coefficients for $t {
            type E = <$t as Scalars>::E;

            fn is_zero(&self, a: &Self::E) -> bool {
                Scalars::is_zero(self, a)
            }
            fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
                Scalars::add(self, a, b)
            }
            fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
                Scalars::mul(self, a, b)
            }
            fn neg(&self, a: &Self::E) -> Self::E {
                Scalars::neg(self, a)
            }
            fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E {
                Scalars::sub_mul(self, a, b, c)
            }
            fn cancel(&self, a: &Self::E, b: &Self::E) -> (Option<Self::E>, Self::E) {
                if self.is_one(b) {
                    (None, a.clone())
                } else {
                    (None, Scalars::mul(self, a, &self.inv(b)))
                }
            }
            fn normalize(&self, t: &mut Terms<Self::E>) {
                let lc = t[0].1.clone();
                if !self.is_one(&lc) {
                    let inv = self.inv(&lc);
                    for e in t.iter_mut() {
                        e.1 = Scalars::mul(self, &e.1, &inv);
                    }
                }
            }
            fn lift_poly(&self, t: &[(Monomial, FieldElement)]) -> Terms<Self::E> {
                t.iter().map(|(m, c)| (*m, self.lift(c))).collect()
            }
            fn lower_poly(&self, mut t: Terms<Self::E>) -> Vec<(Monomial, FieldElement)> {
                if !t.is_empty() {
                    Coefficients::normalize(self, &mut t);
                }
                t.into_iter().map(|(m, c)| (m, self.lower(&c))).collect()
            }
        }
    };
}

field_coefficients!(ModP);
field_coefficients!(Exact);

/// Integer coefficients for Gröbner runs over ℚ.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Integers;

impl Coefficients for Integers {
    type E = BigInt;

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub_mul(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
        a - b * c
    }
    fn cancel(&self, a: &BigInt, b: &BigInt) -> (Option<BigInt>, BigInt) {
        let g = a.gcd(b);
        let mut u = b / &g;
        let mut v = a / &g;
        if u.is_negative() {
            u = -u;
            v = -v;
        }
        (if u.is_one() { None } else { Some(u) }, v)
    }
    fn normalize(&self, t: &mut Terms<BigInt>) {
        let negative = t[0].1.is_negative();
        let g = content(t.iter().map(|e| &e.1));
        if negative || !g.is_one() {
            let g = if negative { -g } else { g };
            for e in t.iter_mut() {
                e.1 = &e.1 / &g;
            }
        }
    }
    fn shrink<'a, I: Iterator<Item = &'a mut BigInt>>(&self, values: I) {
        let mut values: Vec<&mut BigInt> = values.collect();
        let g = content(values.iter().map(|v| &**v));
        if !g.is_one() && !g.is_zero() {
            for v in values.iter_mut() {
                **v = &**v / &g;
            }
        }
    }
    fn lift_poly(&self, t: &[(Monomial, FieldElement)]) -> Terms<BigInt> {
        let rats: Vec<_> = t.iter().map(|(_, c)| c.as_rational().expect("rational coefficient")).collect();
        let den = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        t.iter()
            .zip(rats)
            .map(|((m, _), r)| (*m, r.numer() * (&den / r.denom())))
            .collect()
    }
    fn lower_poly(&self, t: Terms<BigInt>) -> Vec<(Monomial, FieldElement)> {
        let Some(lc) = t.first().map(|e| e.1.clone()) else {
            return Vec::new();
        };
        t.into_iter()
            .map(|(m, c)| (m, FieldElement::Rational(num_rational::BigRational::new(c, lc.clone()))))
            .collect()
    }
}

fn content<'a, I: Iterator<Item = &'a BigInt>>(values: I) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}
