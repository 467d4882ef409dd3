use super::*;
use proptest::prelude::*;
use crate::field::FieldElement;

fn qring() -> Arc<Ring> {
    Ring::xyz(Field::Rational)
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    Polynomial::parse(r, s).unwrap()
}

fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| p(r, g)).collect()).unwrap()
}

fn cfg() -> GroebnerConfig {
    GroebnerConfig::default()
}

fn basis_strings(i: &Ideal) -> Vec<String> {
    let gb = i.groebner_basis(MonomialOrder::DegRevLex, &cfg()).unwrap();
    gb.basis().unwrap().elements().iter().map(|g| g.to_string()).collect()
}

/// Textbook division by an arbitrary list, written against the public
/// polynomial API only.
fn naive_remainder(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let mut f = f.clone();
    let mut rem = Polynomial::zero(f.ring());
    while let Some((m, c)) = f.leading_term().cloned() {
        let hit = divisors.iter().find(|g| g.leading_monomial().unwrap().divides(&m));
        match hit {
            Some(g) => {
                let (gm, gc) = g.leading_term().unwrap();
                let q = gm.quotient_of(&m).unwrap();
                f = &f - &g.mul_term(&q, &c.checked_div(gc).unwrap());
            }
            None => {
                let lt = Polynomial::monomial(f.ring(), m, c);
                rem = &rem + &lt;
                f = &f - &lt;
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    &f.mul_term(&fm.quotient_of(&l).unwrap(), &fc.inv().unwrap())
        - &g.mul_term(&gm.quotient_of(&l).unwrap(), &gc.inv().unwrap())
}

fn assert_reduced_groebner(gb: &GroebnerBasis) {
    let els = gb.elements();
    for (i, f) in els.iter().enumerate() {
        assert!(f.leading_coeff().unwrap().is_one());
        for (j, g) in els.iter().enumerate() {
            if i != j {
                let lm = g.leading_monomial().unwrap();
                assert!(f.terms().iter().all(|(m, _)| !lm.divides(m)), "not reduced");
            }
            if i < j {
                assert!(naive_remainder(&s_polynomial(f, g), els).is_zero(), "S-pair does not reduce to 0");
            }
        }
    }
}

#[test]
fn basic_bases() {
    let r = qring();
    assert_eq!(basis_strings(&ideal(&r, &["x+y", "x-y"])), ["y", "x"]);
    assert_eq!(basis_strings(&ideal(&r, &["x^2-y^2", "x^2+y^2"])), ["y^2", "x^2"]);
    assert_eq!(basis_strings(&ideal(&r, &["x*z-y^2"])), ["y^2 - x*z"]);
    assert_eq!(basis_strings(&ideal(&r, &["x", "x+1"])), ["1"]);
    assert!(basis_strings(&ideal(&r, &[])).is_empty());
}

#[test]
fn normal_forms() {
    let r = qring();
    let with = |gens: &[&str]| ideal(&r, gens).ensure_basis(&cfg()).unwrap();
    assert!(with(&["x"]).normal_form(&p(&r, "x")).unwrap().is_zero());
    assert_eq!(with(&["x-y"]).normal_form(&p(&r, "x^2")).unwrap(), p(&r, "y^2"));
    // y² + x is already reduced modulo x² − y under lex, where x² leads.
    let lex = ideal(&r, &["x^2-y"]).groebner_basis(MonomialOrder::Lex, &cfg()).unwrap();
    assert_eq!(lex.normal_form(&p(&r, "y^2+x")).unwrap(), p(&r, "y^2+x"));
    assert_eq!(ideal(&r, &["x"]).normal_form(&p(&r, "x")), Err(Error::MissingBasis));
}

#[test]
fn membership_and_containment() {
    let r = qring();
    assert!(ideal_membership(&p(&r, "x^2"), &ideal(&r, &["x"]), &cfg()).unwrap());
    assert!(!ideal_membership(&p(&r, "x"), &ideal(&r, &["x^2"]), &cfg()).unwrap());
    let a = ideal(&r, &["x^2", "x*y", "y^2"]);
    let b = ideal(&r, &["x", "y"]);
    assert!(ideal_containment(&a, &b, &cfg()).unwrap());
    assert!(!ideal_containment(&b, &a, &cfg()).unwrap());
}

#[test]
fn intersections() {
    let r = qring();
    let meet = |a: &[&str], b: &[&str]| {
        let i = ideal_intersection(&ideal(&r, a), &ideal(&r, b), &cfg()).unwrap();
        i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>()
    };
    assert_eq!(meet(&["x"], &["y"]), ["x*y"]);
    assert_eq!(meet(&["y", "z"], &["x", "z"]), ["z", "x*y"]);
    assert_eq!(meet(&["x^2", "x*y", "y^2"], &["x", "y"]), ["y^2", "x*y", "x^2"]);
    let i = ideal_intersection(&ideal(&r, &["y", "z"]), &ideal(&r, &["x", "z"]), &cfg()).unwrap();
    assert_reduced_groebner(i.basis().unwrap());
}

#[test]
fn powers() {
    let r = qring();
    let sq = ideal_power(&ideal(&r, &["x", "y"]), 2).unwrap();
    let mut gens: Vec<String> = sq.gens().iter().map(|g| g.to_string()).collect();
    gens.sort();
    assert_eq!(gens, ["x*y", "x^2", "y^2"]);
    let f = "x^2+y*z";
    let cube = ideal_power(&ideal(&r, &[f]), 3).unwrap();
    assert_eq!(cube.gens(), &[p(&r, f).pow(3)]);
    let g = ideal(&r, &["x", "y", "z", "x+y"]);
    assert!(ideal_power(&g, 2).unwrap().gens().len() <= 10);
}

#[test]
fn elimination() {
    let r = Ring::new(&["t", "x", "y"], Field::Rational, MonomialOrder::DegRevLex).unwrap();
    let i = ideal(&r, &["t*x-1", "y-t"]);
    let e = eliminate(&i, &[0], &cfg()).unwrap();
    assert_eq!(e.gens(), &[p(&r, "x*y-1")]);
    assert!(eliminate(&ideal(&r, &["t"]), &[0], &cfg()).unwrap().gens().is_empty());
    let none = eliminate(&ideal(&r, &["x+y", "x-y"]), &[], &cfg()).unwrap();
    assert_eq!(none.gens().len(), 2);
    // eliminating a variable that is not first
    let e = eliminate(&ideal(&r, &["x-t^2", "y-t^3"]), &[0], &cfg()).unwrap();
    assert_eq!(e.gens(), &[p(&r, "x^3-y^2")]);
    let e = eliminate(&ideal(&r, &["x-t^2", "y-x^3"]), &[1], &cfg()).unwrap();
    assert_eq!(e.gens(), &[p(&r, "t^6-y")]);
}

#[test]
fn radicals_and_jacobians() {
    let r = qring();
    let x2 = ideal(&r, &["x^2"]);
    assert!(radical_membership(&p(&r, "x"), &x2, &cfg()).unwrap());
    assert!(!radical_membership(&p(&r, "y"), &x2, &cfg()).unwrap());
    let fermat = jacobian_ideal(&p(&r, "x^3+y^3+z^3"));
    for v in ["x", "y", "z"] {
        assert!(radical_membership(&p(&r, v), &fermat, &cfg()).unwrap());
    }
    let f7 = Ring::xyz(Field::prime(7).unwrap());
    let fermat7 = jacobian_ideal(&p(&f7, "x^3+y^3+z^3"));
    assert!(radical_membership(&p(&f7, "x"), &fermat7, &cfg()).unwrap());
    // characteristic 3: the Jacobian vanishes identically
    let f3 = Ring::xyz(Field::prime(3).unwrap());
    assert!(jacobian_ideal(&p(&f3, "x^3+y^3+z^3")).gens().is_empty());

    let conic = jacobian_ideal(&p(&r, "x^2+y^2+z^2"));
    assert_eq!(basis_strings(&conic), ["z", "y", "x"]);
    let xyz = jacobian_ideal(&p(&r, "x*y*z"));
    assert_eq!(xyz.gens(), &[p(&r, "y*z"), p(&r, "x*z"), p(&r, "x*y")]);
    assert!(!radical_membership(&p(&r, "x"), &xyz, &cfg()).unwrap());
}

#[test]
fn graded_pieces() {
    let r = qring();
    let sq = ideal(&r, &["x^2", "x*y", "y^2"]);
    let d2 = graded_piece(&sq, 2).unwrap();
    assert_eq!(d2.dim, 3);
    assert_eq!(d2.basis, vec![p(&r, "x^2"), p(&r, "x*y"), p(&r, "y^2")]);
    assert_eq!(graded_piece(&sq, 1).unwrap().dim, 0);
    assert_eq!(graded_piece(&sq, 3).unwrap().dim, 10 - 3);
    assert!(graded_piece(&ideal(&r, &["x+1"]), 1).is_err());
    assert_eq!(monomials_of_degree(3, 2).len(), 6);
    assert_eq!(monomials_of_degree(0, 0), vec![Monomial::one()]);
}

#[test]
fn resource_limits_are_reported() {
    let r = qring();
    let i = ideal(&r, &["x^3-y*z^2", "y^3-x*z^2", "z^3-x^2*y"]);
    let tight = GroebnerConfig {
        max_pairs: 0,
        ..GroebnerConfig::default()
    };
    assert!(matches!(
        i.groebner_basis(MonomialOrder::DegRevLex, &tight),
        Err(Error::ResourceLimit { resource: crate::error::Resource::PairQueue, .. })
    ));
    let cancelled = GroebnerConfig {
        cancel: Some(Arc::new(AtomicBool::new(true))),
        ..GroebnerConfig::default()
    };
    assert!(matches!(
        i.groebner_basis(MonomialOrder::DegRevLex, &cancelled),
        Err(Error::ResourceLimit { resource: crate::error::Resource::Cancelled, .. })
    ));
}

#[test]
fn json_round_trip() {
    let r = qring();
    let i = ideal(&r, &["x^2-1/2*y*z", "y^3"]).ensure_basis(&cfg()).unwrap();
    let back = Ideal::from_json(&i.to_json()).unwrap();
    assert_eq!(back.gens(), i.gens());
    let b = i.basis_to_json().unwrap();
    assert_eq!(b["order"], "degrevlex");
    let bi = Ideal::from_json(&b).unwrap();
    assert_eq!(bi.gens(), i.basis().unwrap().elements());
    assert!(matches!(Ideal::from_json(&serde_json::json!({"gens": []})), Err(Error::Parse { .. })));
}

fn small_poly(field: Field) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..2, -4i64..5), 1..4).prop_map(move |ts| {
        let r = Ring::xyz(field);
        let terms = ts
            .into_iter()
            .map(|(a, b, c, k)| (Monomial::new(&[a, b, c]), field.from_i64(k)))
            .collect();
        Polynomial::from_terms(&r, terms)
    })
}

fn small_ideal(field: Field) -> impl Strategy<Value = Ideal> {
    prop::collection::vec(small_poly(field), 1..=3).prop_map(move |gens| Ideal::new(&Ring::xyz(field), gens).unwrap())
}

/// Forms of degree 1..=3 in x, y, z; the shape of fat-point generators.
fn small_form(field: Field) -> impl Strategy<Value = Polynomial> {
    (1u32..4, prop::collection::vec((0u32..4, 0u32..4, -4i64..5), 1..4)).prop_map(move |(d, ts)| {
        let r = Ring::xyz(field);
        let terms = ts
            .into_iter()
            .map(|(a, b, k)| {
                let a = a.min(d);
                let b = b.min(d - a);
                (Monomial::new(&[a, b, d - a - b]), field.from_i64(k))
            })
            .collect();
        Polynomial::from_terms(&r, terms)
    })
}

fn small_homogeneous_ideal(field: Field) -> impl Strategy<Value = Ideal> {
    prop::collection::vec(small_form(field), 1..=3).prop_map(move |gens| Ideal::new(&Ring::xyz(field), gens).unwrap())
}

/// A polynomial that lies in `i`: a combination of generators with small
/// polynomial multipliers, plus optionally a stray term.
fn combination(i: &Ideal, mults: &[Polynomial]) -> Polynomial {
    i.gens()
        .iter()
        .zip(mults)
        .fold(Polynomial::zero(i.ring()), |acc, (g, m)| &acc + &(g * m))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn buchberger_criterion_holds(
        i in prop_oneof![small_homogeneous_ideal(Field::Rational), small_ideal(Field::Prime(32003))],
        pick in 0usize..3,
    ) {
        let order = [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::Block { front: 1 }][pick];
        let gb = i.groebner_basis(order, &cfg()).unwrap();
        let basis = gb.basis().unwrap();
        assert_reduced_groebner(basis);
        for g in i.gens() {
            prop_assert!(gb.normal_form(g).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(
        i in small_ideal(Field::Prime(101)),
        f in small_poly(Field::Prime(101)),
        g in small_poly(Field::Prime(101)),
    ) {
        let i = i.ensure_basis(&cfg()).unwrap();
        let nf = |h: &Polynomial| i.normal_form(h).unwrap();
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
        prop_assert_eq!(nf(&(&f + &g)), nf(&(&nf(&f) + &nf(&g))));
        // f − NF(f) ∈ I
        prop_assert!(nf(&(&f - &nf(&f))).is_zero());
    }

    #[test]
    fn intersection_membership_is_conjunction(
        a in small_homogeneous_ideal(Field::Rational),
        b in small_homogeneous_ideal(Field::Rational),
        m1 in prop::collection::vec(small_form(Field::Rational), 3),
        m2 in prop::collection::vec(small_form(Field::Rational), 3),
        stray in small_poly(Field::Rational),
    ) {
        let meet = ideal_intersection(&a, &b, &cfg()).unwrap();
        let prod = &combination(&a, &m1) * &combination(&b, &m2);
        let candidates = [prod.clone(), &prod + &stray, stray.clone()];
        for f in &candidates {
            let in_a = ideal_membership(f, &a, &cfg()).unwrap();
            let in_b = ideal_membership(f, &b, &cfg()).unwrap();
            prop_assert_eq!(meet.contains(f).unwrap(), in_a && in_b);
        }
        prop_assert!(meet.contains(&prod).unwrap());
    }

    #[test]
    fn modular_intersection_membership_is_conjunction(
        a in small_ideal(Field::Prime(32003)),
        b in small_ideal(Field::Prime(32003)),
        m1 in prop::collection::vec(small_poly(Field::Prime(32003)), 3),
        m2 in prop::collection::vec(small_poly(Field::Prime(32003)), 3),
        stray in small_poly(Field::Prime(32003)),
    ) {
        let meet = ideal_intersection(&a, &b, &cfg()).unwrap();
        let prod = &combination(&a, &m1) * &combination(&b, &m2);
        let candidates = [prod.clone(), &prod + &stray, stray.clone()];
        for f in &candidates {
            let in_a = ideal_membership(f, &a, &cfg()).unwrap();
            let in_b = ideal_membership(f, &b, &cfg()).unwrap();
            prop_assert_eq!(meet.contains(f).unwrap(), in_a && in_b);
        }
        prop_assert!(meet.contains(&prod).unwrap());
    }

    #[test]
    fn verdicts_do_not_depend_on_the_order(
        i in small_homogeneous_ideal(Field::Rational),
        f in small_poly(Field::Rational),
        m in prop::collection::vec(small_form(Field::Rational), 3),
    ) {
        let dp = i.groebner_basis(MonomialOrder::DegRevLex, &cfg()).unwrap();
        let lp = i.groebner_basis(MonomialOrder::Lex, &cfg()).unwrap();
        let inside = combination(&i, &m);
        for h in [&f, &inside, &(&f + &inside)] {
            prop_assert_eq!(dp.contains(h).unwrap(), lp.contains(h).unwrap());
        }
        prop_assert!(dp.contains(&inside).unwrap());
    }

    #[test]
    fn powers_are_nested(i in small_ideal(Field::Prime(31)), r in 1u32..3) {
        let lower = ideal_power(&i, r).unwrap();
        let higher = ideal_power(&i, r + 1).unwrap();
        prop_assert!(ideal_containment(&higher, &lower, &cfg()).unwrap());
        let g = i.gens().len() as u64;
        if r == 1 {
            prop_assert!(higher.gens().len() as u64 <= g * (g + 1) / 2);
        }
    }

    #[test]
    fn fraction_free_path_matches_exact_extension(i in small_homogeneous_ideal(Field::Rational)) {
        // ℚ runs fraction-free over ℤ, ℚ(√3) runs with exact division
        let k = Ring::xyz(Field::quadratic(3).unwrap());
        let lift = |f: &Polynomial| {
            let terms = f.terms().iter().map(|(m, c)| match c {
                FieldElement::Rational(q) => (*m, k.field().from_rational(q).unwrap()),
                _ => unreachable!(),
            });
            Polynomial::from_terms(&k, terms.collect())
        };
        let q = i.groebner_basis(MonomialOrder::DegRevLex, &cfg()).unwrap();
        let lifted = Ideal::new(&k, i.gens().iter().map(lift).collect()).unwrap();
        let e = lifted.groebner_basis(MonomialOrder::DegRevLex, &cfg()).unwrap();
        let expected: Vec<Polynomial> = q.basis().unwrap().elements().iter().map(lift).collect();
        prop_assert_eq!(e.basis().unwrap().elements(), expected.as_slice());
    }

    #[test]
    fn modular_verdicts_match_rational_ones(
        i in small_homogeneous_ideal(Field::Rational),
        f in small_poly(Field::Rational),
        m in prop::collection::vec(small_form(Field::Rational), 3),
        pi in 0usize..4,
    ) {
        let prime = [101u64, 103, 10007, 65521][pi];
        let q = i.ensure_basis(&cfg()).unwrap();
        let qb = q.basis().unwrap();
        // Bad primes: a basis denominator or the input's denominators vanish
        // mod p, or the specialized basis is not the modular one.
        let spec: Option<Vec<Polynomial>> = qb.elements().iter().map(|g| g.specialize(prime).ok()).collect();
        let modular_gens: Option<Vec<Polynomial>> = i.gens().iter().map(|g| g.specialize(prime).ok()).collect();
        let (Some(spec), Some(modular_gens)) = (spec, modular_gens) else { return Ok(()) };
        let Ok(fp_ring) = Ring::new(&["x", "y", "z"], Field::Prime(prime), MonomialOrder::DegRevLex) else { unreachable!() };
        let mi = Ideal::new(&fp_ring, modular_gens).unwrap().ensure_basis(&cfg()).unwrap();
        if mi.basis().unwrap().elements() != spec.as_slice() {
            return Ok(());
        }
        for h in [f.clone(), &f + &combination(&i, &m), combination(&i, &m)] {
            let Ok(hp) = h.specialize(prime) else { continue };
            let nf_q = q.normal_form(&h).unwrap();
            let Ok(nf_q_p) = nf_q.specialize(prime) else { continue };
            if nf_q_p.is_zero() != nf_q.is_zero() {
                continue;
            }
            prop_assert_eq!(mi.contains(&hp).unwrap(), q.contains(&h).unwrap());
        }
    }
}

#[test]
fn block_basis_of_exact_quadratic_field() {
    let k = Ring::xyz(Field::quadratic(3).unwrap());
    let i = ideal(&k, &["x^2 - 3*z^2", "y - sqrt(3)*z"]);
    let gb = i.ensure_basis(&cfg()).unwrap();
    assert_reduced_groebner(gb.basis().unwrap());
    assert!(gb.contains(&p(&k, "x^2 - y^2")).unwrap());
    assert!(gb.contains(&p(&k, "(x - sqrt(3)*z)*(x + y)")).unwrap());
}
