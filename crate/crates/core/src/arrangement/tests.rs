use super::*;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn k() -> Field {
    Field::Quadratic(3)
}

fn named(name: &str) -> Arrangement {
    build_named(name, Model::Sqrt3, k()).unwrap()
}

fn rational(name: &str) -> Arrangement {
    build_named(name, Model::RationalTable1, Field::Rational).unwrap()
}

/// Multiplicities recovered from pair counts alone: a point on m lines is
/// hit by exactly C(m, 2) pairs.
fn multiplicities_by_pair_count(arr: &Arrangement) -> BTreeMap<ProjectivePoint, usize> {
    let mut pairs: BTreeMap<ProjectivePoint, usize> = BTreeMap::new();
    let lines = arr.lines();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            *pairs.entry(lines[i].meet(&lines[j]).unwrap()).or_default() += 1;
        }
    }
    pairs
        .into_iter()
        .map(|(p, c)| {
            let m = (2..).find(|m| m * (m - 1) / 2 >= c).unwrap();
            assert_eq!(m * (m - 1) / 2, c);
            (p, m)
        })
        .collect()
}

#[test]
fn t_vectors_of_the_named_arrangements() {
    for name in ["A313", "A312"] {
        let arr = named(name);
        assert_eq!(arr.len(), 31);
        let t = arr.t_vector().unwrap();
        assert_eq!(t, TVector::a31(), "{name}");
        assert_eq!(t.points(), 127);
        assert_eq!(t.pairs(), 465);
    }
    let b = named("B21");
    assert_eq!(b.len(), 21);
    assert_eq!(b.t_vector().unwrap(), TVector::b21());
    assert_eq!(b.intersection_points().unwrap().len(), 115);
    assert_eq!(named("initial10_A313").len(), 10);
    assert_eq!(named("initial10_A312").len(), 10);
    let tri = build_named("triangle", Model::Sqrt3, Field::Rational).unwrap();
    assert_eq!(tri.t_vector().unwrap().to_string(), "t2=3");
    assert_eq!(TVector::a31().to_string(), "t2=54 t3=42 t4=21 t5=6 t6=1 t8=3");
}

#[test]
fn multiplicities_agree_with_pair_counts() {
    for arr in [named("A313"), named("B21"), rational("A313")] {
        let ps = arr.intersection_points().unwrap();
        let oracle = multiplicities_by_pair_count(&arr);
        assert_eq!(ps.len(), oracle.len());
        for (p, m) in ps.iter() {
            assert_eq!(oracle[p], m);
        }
    }
}

#[test]
fn simple_intersections() {
    let q = Field::Rational;
    let arr = Arrangement::new(vec![LinearForm::from_i64(q, [1, 0, 0]).unwrap(), LinearForm::from_i64(q, [0, 1, 0]).unwrap()]).unwrap();
    let ps = arr.intersection_points().unwrap();
    assert_eq!(ps.iter().collect::<Vec<_>>(), vec![(&ProjectivePoint::from_i64(q, [0, 0, 1]).unwrap(), 2)]);
    let dup = vec![LinearForm::from_i64(q, [1, 2, 3]).unwrap(), LinearForm::from_i64(q, [2, 4, 6]).unwrap()];
    assert_eq!(Arrangement::new(dup).unwrap_err(), Error::DuplicateLines);
    assert!(LinearForm::from_i64(q, [0, 0, 0]).is_err());
    assert_eq!(LinearForm::from_i64(q, [0, 2, -4]).unwrap().coeffs()[2], q.from_i64(-2));
}

#[test]
fn products_of_forms() {
    let ring = Ring::xyz(k());
    let f10 = Polynomial::parse(
        &ring,
        "x^7*y^3 - x^7*y*z^2 - 63/4*x^5*y^3*z^2 + 63/4*x^5*y*z^4 + 189/4*x^3*y^3*z^4 - 189/4*x^3*y*z^6 - 27*x*y^3*z^6 + 27*x*y*z^8",
    )
    .unwrap();
    assert_eq!(named("initial10_A313").product_of_forms(), f10);
    let f31 = named("A313").product_of_forms();
    assert_eq!(f31.degree(), Some(31));
    assert!(f31.is_homogeneous());
    let tri = build_named("triangle", Model::Sqrt3, Field::Rational).unwrap();
    assert_eq!(tri.product_of_forms().to_string(), "x*y*z");
}

#[test]
fn product_vanishes_to_the_exact_multiplicity() {
    // modular copy of A313 keeps the computation light
    for arr in [named("A313").specialize(1009).unwrap(), named("B21")] {
        let f = arr.product_of_forms();
        for (p, m) in arr.intersection_points().unwrap().iter() {
            assert_eq!(f.vanishing_order(p.coords(), m as u32 + 1).unwrap(), m as u32, "{p}");
        }
    }
}

#[test]
fn characteristic_polynomials() {
    let tri = build_named("triangle", Model::Sqrt3, Field::Rational).unwrap().char_poly().unwrap();
    assert_eq!(tri.cubic(), [1, -3, 3, -1]);
    assert_eq!(tri.quotient_string(), "t^2-2t+1");
    assert!(tri.splits_over_z());

    let b = named("B21").char_poly().unwrap();
    assert_eq!(b.linear, 161);
    assert_eq!(b.quotient(), [1, -20, 141]);
    assert_eq!(b.quotient_string(), "t^2-20t+141");
    assert_eq!(b.ascending_string(), "141-20t+t^2");
    assert_eq!(b.cubic_string(), "t^3-21t^2+161t-141");
    assert!(!b.splits_over_z());
    assert_eq!(b.freeness(), "not free");
    // the rational model is combinatorially the same
    assert_eq!(rational("B21").char_poly().unwrap(), b);

    let q = Field::Rational;
    let pencil = Arrangement::new(
        [[1, 0, 0], [0, 1, 0], [1, 1, 0]].iter().map(|&c| LinearForm::from_i64(q, c).unwrap()).collect(),
    )
    .unwrap();
    assert_eq!(pencil.char_poly().unwrap_err(), Error::NonEssential);
}

#[test]
fn the_hexagonal_group_and_its_orbits() {
    let g = hexagonal_group(k()).unwrap();
    assert_eq!(g.order(), 12);
    let a313 = named("A313");
    let ps = a313.intersection_points().unwrap();
    let orbits = g.orbits(ps).unwrap();
    assert_eq!(orbits.iter().map(|o| o.points.len()).sum::<usize>(), 127);
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for o in &orbits {
        assert_eq!(12 % o.points.len(), 0);
        *sizes.entry(o.points.len()).or_default() += 1;
    }
    // computed decomposition: 1 + 2×3 + 8×6 + 6×12
    assert_eq!(sizes, BTreeMap::from([(1, 1), (3, 2), (6, 8), (12, 6)]));
    let fixed: Vec<_> = orbits.iter().filter(|o| o.points.len() == 1).collect();
    assert_eq!(fixed[0].representative, ProjectivePoint::from_i64(k(), [0, 0, 1]).unwrap());

    // every element permutes the point set, keeping multiplicities
    for m in g.elements() {
        for (p, mult) in ps.iter() {
            assert_eq!(ps.multiplicity(&p.transform(m)), Some(mult));
        }
    }

    // A313 minus B21 is the orbit of (9:2u:4u)
    let diff = ps.difference(named("B21").intersection_points().unwrap());
    let special = special_point(k()).unwrap();
    assert_eq!(diff, g.orbit(&special));
    assert_eq!(diff.len(), 12);
}

#[test]
fn orbit_table_representatives() {
    let g = hexagonal_group(k()).unwrap();
    let ps = named("A313").intersection_points().unwrap().clone();
    let table = orbit_table(k()).unwrap();
    let (_, sixes) = &table[1];
    let off: Vec<_> = sixes.iter().filter(|p| !ps.contains(p)).collect();
    assert_eq!(off, vec![&ProjectivePoint::from_i64(k(), [1, 0, 1]).unwrap()]);
    for p in sixes.iter().filter(|p| ps.contains(p)) {
        assert_eq!(g.orbit(p).len(), 6, "{p}");
    }
    for p in &table[2].1 {
        assert!(ps.contains(p));
        assert_eq!(g.orbit(p).len(), 12, "{p}");
    }
}

#[test]
fn rational_realization_matches_the_point_table() {
    let arr = rational("A313");
    assert_eq!(arr.len(), 31);
    let report = verify_realization(&arr, &table2(Field::Rational).unwrap(), &TVector::a31()).unwrap();
    assert!(report.is_consistent(), "{report:?}");
    assert_eq!(report.matched, 127);
    let ps = arr.intersection_points().unwrap();
    assert_eq!(ps.multiplicity(&ProjectivePoint::from_i64(Field::Rational, [0, 1, 0]).unwrap()), Some(8));
    assert_eq!(ps.multiplicity(&ProjectivePoint::from_i64(Field::Rational, [2, -2, -3]).unwrap()), Some(2));

    // a corrupted table is reported, not rejected
    let mut table = table2(Field::Rational).unwrap();
    table[0].1[0] = ProjectivePoint::from_i64(Field::Rational, [1, 1, 1]).unwrap();
    let moved = table[1].1.pop().unwrap();
    table[0].1.push(moved);
    let report = verify_realization(&arr, &table, &TVector::a31()).unwrap();
    assert!(!report.is_consistent());
    assert_eq!(report.spurious.len(), 1);
    assert_eq!(report.unlisted.len(), 1);
    assert_eq!(report.class_mismatches.len(), 1);
}

#[test]
fn rational_sub_arrangement() {
    let a = rational("A313");
    let b = rational("B21");
    assert_eq!(b.len(), 21);
    assert_eq!(b.t_vector().unwrap(), TVector::b21());
    let pa = a.intersection_points().unwrap();
    let pb = b.intersection_points().unwrap();
    assert!(pb.iter().all(|(p, _)| pa.contains(p)));
    assert_eq!(pa.difference(pb).len(), 12);
}

#[test]
fn dual_hesse_and_field_support() {
    let f7 = Field::prime(7).unwrap();
    let h = build_named("dualHesse", Model::Sqrt3, f7).unwrap();
    assert_eq!(h.len(), 9);
    assert_eq!(h.t_vector().unwrap(), TVector::from_pairs(&[(3, 12)]));
    let ring = Ring::xyz(f7);
    let expected = Polynomial::parse(&ring, "(x^3-y^3)*(y^3-z^3)*(z^3-x^3)").unwrap();
    // canonical scaling flips the sign of each z - ω^k x factor
    assert_eq!(h.product_of_forms(), -&expected);

    let unsupported = |r: Result<Arrangement>| matches!(r, Err(Error::UnsupportedFieldForModel { .. }));
    assert!(unsupported(build_named("dualHesse", Model::Sqrt3, Field::Rational)));
    assert!(unsupported(build_named("A313", Model::Sqrt3, Field::Rational)));
    assert!(unsupported(build_named("A313", Model::Sqrt3, Field::prime(5).unwrap())));
    assert!(unsupported(build_named("A312", Model::RationalTable1, Field::Rational)));
    assert!(build_named("nonsense", Model::Sqrt3, k()).is_err());
}

#[test]
fn modular_copies_keep_the_combinatorics() {
    // 1009 and 65521 are ≡ 1 mod 12, so √3 exists
    for p in [1009, 65521] {
        let fp = Field::prime(p).unwrap();
        assert_eq!(build_named("A313", Model::Sqrt3, fp).unwrap().t_vector().unwrap(), TVector::a31());
        assert_eq!(named("A312").specialize(p).unwrap().t_vector().unwrap(), TVector::a31());
        assert_eq!(build_named("B21", Model::RationalTable1, fp).unwrap().t_vector().unwrap(), TVector::b21());
        assert_eq!(hexagonal_group(fp).unwrap().order(), 12);
    }
}

#[test]
fn json_round_trip() {
    let arr = named("B21");
    let back = Arrangement::from_json(&arr.to_json()).unwrap();
    assert_eq!(back.lines(), arr.lines());
    let v = serde_json::json!({"field": "fp:7", "lines": [[1, 0, 0], ["0", "1", "3 mod 7"], ["1/2", 1, 1]]});
    let arr = Arrangement::from_json(&v).unwrap();
    assert_eq!(arr.lines()[2].coeffs()[1], Field::Prime(7).from_i64(2));
    assert!(matches!(Arrangement::from_json(&serde_json::json!({"lines": []})), Err(Error::Parse { .. })));
    assert!(Arrangement::from_json(&serde_json::json!({"field": "q", "lines": [[1, 0]]})).is_err());
}

#[test]
fn group_generation_limits() {
    let q = Field::Rational;
    let diag = Matrix3::from_i64(q, [[2, 0, 0], [0, 1, 0], [0, 0, 1]]);
    assert_eq!(MatrixGroup::generate(&[diag], 50).unwrap_err(), Error::ClosureBoundExceeded(50));
    let singular = Matrix3::from_i64(q, [[0, 0, 0], [0, 1, 0], [0, 0, 1]]);
    assert!(MatrixGroup::generate(&[singular], 50).is_err());
    let swap = Matrix3::from_i64(q, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    let cycle = Matrix3::from_i64(q, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
    let s3 = MatrixGroup::generate(&[swap, cycle], 50).unwrap();
    assert_eq!(s3.order(), 6);
    let m = Matrix3::from_i64(q, [[2, 1, 0], [1, 1, 0], [0, 3, 1]]);
    assert_eq!(m.mul(&m.inverse().unwrap()), Matrix3::identity(q));
}

fn small_line() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-3i64..4).prop_filter("nonzero", |c| c.iter().any(|&v| v != 0))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn random_arrangements_satisfy_the_pair_count(lines in prop::collection::vec(small_line(), 2..9)) {
        let q = Field::Rational;
        let mut forms: Vec<LinearForm> = lines.iter().map(|&c| LinearForm::from_i64(q, c).unwrap()).collect();
        forms.sort();
        forms.dedup();
        prop_assume!(forms.len() >= 2);
        let arr = Arrangement::new(forms).unwrap();
        let ps = arr.intersection_points().unwrap();
        let n = arr.len();
        prop_assert_eq!(ps.t_vector().pairs(), n * (n - 1) / 2);
        prop_assert_eq!(ps.t_vector().points(), ps.len());
        for (p, m) in ps.iter() {
            prop_assert!(m >= 2);
            prop_assert_eq!(arr.lines().iter().filter(|l| l.contains(p)).count(), m);
        }
        let oracle = multiplicities_by_pair_count(&arr);
        prop_assert_eq!(oracle.len(), ps.len());
        let f = arr.product_of_forms();
        for (p, m) in ps.iter() {
            prop_assert_eq!(f.vanishing_order(p.coords(), m as u32 + 1).unwrap(), m as u32);
        }
    }

    #[test]
    fn meeting_is_symmetric(a in small_line(), b in small_line()) {
        let q = Field::Rational;
        let (l, m) = (LinearForm::from_i64(q, a).unwrap(), LinearForm::from_i64(q, b).unwrap());
        prop_assert_eq!(l.meet(&m), m.meet(&l));
        if let Some(p) = l.meet(&m) {
            prop_assert!(l.contains(&p) && m.contains(&p));
        } else {
            prop_assert_eq!(l, m);
        }
    }

    #[test]
    fn transformed_lines_pass_through_transformed_points(a in small_line(), pick in 0usize..12) {
        let g = hexagonal_group(k()).unwrap();
        let m = &g.elements()[pick];
        let l = LinearForm::new(a.map(|v| k().from_i64(v))).unwrap();
        let arr = named("B21");
        for (p, _) in arr.intersection_points().unwrap().iter().take(10) {
            prop_assert_eq!(l.contains(p), l.transform(m).unwrap().contains(&p.transform(m)));
        }
    }
}
