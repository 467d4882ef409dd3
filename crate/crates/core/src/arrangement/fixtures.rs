//! Named arrangements: the √3 models built from initial lines and their
//! rotations, the rational model given by an explicit line table, the dual
//! Hesse arrangement and the coordinate triangle.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::{Arrangement, LinearForm, Matrix3, MatrixGroup, ProjectivePoint, TVector};

pub const NAMES: [&str; 7] = ["A313", "A312", "B21", "initial10_A313", "initial10_A312", "dualHesse", "triangle"];

/// t-vector shared by both 31-line arrangements.
pub const A31_T_VECTOR: [(usize, usize); 6] = [(2, 54), (3, 42), (4, 21), (5, 6), (6, 1), (8, 3)];
pub const B21_T_VECTOR: [(usize, usize); 3] = [(2, 72), (3, 40), (4, 3)];

/// Which coordinates to build a named arrangement in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Model {
    /// Lines x ± a·u·z, y ± b·z with u = √3/2, plus rotations by 60° and 120°.
    #[default]
    Sqrt3,
    /// Integer lines from the rational line table.
    RationalTable1,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Sqrt3 => "sqrt3",
            Model::RationalTable1 => "rational",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Model> {
        match s {
            "sqrt3" => Ok(Model::Sqrt3),
            "rational" | "rationalTable1" | "table1" => Ok(Model::RationalTable1),
            _ => Err(Error::Invalid(format!("unknown model `{s}`"))),
        }
    }
}

/// The 31 rational lines: seven in each of the three rotated pencils of
/// parallel lines, three in each of three further directions, and z = 0.
const TABLE1: [[i64; 3]; 31] = [
    [1, 1, 0],
    [1, 1, 2],
    [1, 1, 3],
    [1, 1, 4],
    [1, 1, 5],
    [1, 1, 6],
    [1, 1, 8],
    [2, -1, 4],
    [2, -1, 6],
    [2, -1, 7],
    [2, -1, 8],
    [2, -1, 9],
    [2, -1, 10],
    [2, -1, 12],
    [3, 0, 8],
    [3, 0, 10],
    [3, 0, 11],
    [3, 0, 12],
    [3, 0, 13],
    [3, 0, 14],
    [3, 0, 16],
    [1, -2, 2],
    [1, -2, 4],
    [1, -2, 6],
    [4, 1, 14],
    [4, 1, 16],
    [4, 1, 18],
    [5, -1, 18],
    [5, -1, 20],
    [5, -1, 22],
    [0, 0, 1],
];

/// Indices into the rational line table of the 21-line sub-arrangement.
pub const B21_TABLE1_LINES: [usize; 21] =
    [0, 2, 4, 6, 7, 9, 11, 13, 14, 16, 18, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29];

const TABLE2_DOUBLE: [[i64; 3]; 54] = [
    [2, -2, -3], [6, -6, -1], [7, -7, -3], [13, -13, -3], [3, -1, -1], [13, -7, -3], [5, 1, -1], [11, 7, -3],
    [22, 2, -3], [2, 6, -1], [17, 7, -3], [11, 13, -3], [7, 2, -3], [3, 0, -1], [14, -5, -3], [16, -7, -3],
    [7, -1, -2], [23, -5, -6], [25, -7, -6], [5, 0, -1], [17, -2, -3], [8, 7, -3], [10, 5, -3], [23, 7, -6],
    [25, 5, -6], [9, 1, -2], [-22, -8, 3], [-22, -5, 6], [-26, -7, 6], [-22, 1, 6], [-26, -1, 6], [-2, 8, 3],
    [-22, 7, 6], [-26, 5, 6], [-6, -8, 1], [-13, -14, 3], [-13, -8, 3], [-11, 8, 3], [-2, 8, 1], [-11, 14, 3],
    [-8, -22, 3], [8, -11, -3], [8, -26, -3], [10, -7, -3], [14, 7, -3], [-16, 22, 3], [16, 11, -3], [16, 26, -3],
    [7, 0, -2], [23, -8, -6], [23, 4, -6], [25, -4, -6], [25, 8, -6], [9, 0, -2],
];

const TABLE2_TRIPLE: [[i64; 3]; 42] = [
    [4, -4, -3], [2, -2, -1], [8, -8, -3], [4, -4, -1], [14, -14, -3], [16, -16, -3], [3, -3, -1], [11, -11, -3],
    [2, 0, -1], [16, -10, -3], [8, 4, -3], [16, -4, -3], [6, 0, -1], [8, 10, -3], [6, 2, -1], [20, 4, -3],
    [4, 4, -1], [16, 8, -3], [8, 16, -3], [10, 14, -3], [5, 3, -1], [13, 11, -3], [8, 1, -3], [5, -2, -1],
    [16, -1, -3], [3, 2, -1], [-16, -5, 3], [-34, -8, 9], [-38, -10, 9], [-32, 2, 9], [-40, -2, 9], [-8, 5, 3],
    [-34, 10, 9], [-38, 8, 9], [-14, -16, 3], [-16, -20, 3], [-11, -10, 3], [-16, -14, 3], [-8, 14, 3],
    [-8, 20, 3], [-10, 16, 3], [-13, 10, 3],
];

const TABLE2_QUADRUPLE: [[i64; 3]; 21] = [
    [2, 1, 0], [-1, 4, 0], [1, 5, 0], [10, -10, -3], [8, -2, -3], [14, -8, -3], [11, -5, -3], [11, 1, -3],
    [13, -1, -3], [16, 2, -3], [10, 8, -3], [13, 5, -3], [14, 10, -3], [10, -1, -3], [4, -1, -1], [11, -2, -3],
    [13, -4, -3], [4, 1, -1], [14, 1, -3], [11, 4, -3], [13, 2, -3],
];

const TABLE2_QUINTUPLE: [[i64; 3]; 6] = [[10, -4, -3], [4, -2, -1], [10, 2, -3], [14, -2, -3], [14, 4, -3], [4, 2, -1]];
const TABLE2_SEXTUPLE: [[i64; 3]; 1] = [[4, 0, -1]];
const TABLE2_OCTUPLE: [[i64; 3]; 3] = [[-1, 1, 0], [1, 2, 0], [0, 1, 0]];

/// Orbit representatives as listed with the hexagonal group's orbit table:
/// each coordinate is a + b·u, u = √3/2, written (a, b).
const ORBIT_TABLE: [(usize, &[[(i64, i64); 3]]); 3] = [
    (1, &[[(0, 0), (0, 0), (1, 0)]]),
    (
        6,
        &[
            [(0, 0), (1, 0), (1, 0)],
            [(1, 0), (0, 0), (0, 1)],
            [(0, 2), (0, 0), (1, 0)],
            [(0, 0), (2, 0), (1, 0)],
            [(0, 4), (0, 0), (1, 0)],
            [(0, 0), (4, 0), (1, 0)],
            [(0, 1), (0, 0), (1, 0)],
            [(0, 8), (0, 0), (1, 0)],
            [(1, 0), (0, 0), (1, 0)],
        ],
    ),
    (
        12,
        &[
            [(0, 6), (1, 0), (4, 0)],
            [(9, 0), (0, 2), (0, 4)],
            [(0, 4), (1, 0), (1, 0)],
            [(15, 0), (0, 6), (0, 4)],
            [(0, 6), (1, 0), (1, 0)],
            [(0, 10), (1, 0), (1, 0)],
        ],
    ),
];

/// u = √3/2 in `field`.
pub fn half_sqrt3(field: Field) -> Result<FieldElement> {
    let unsupported = || Error::UnsupportedFieldForModel {
        model: "sqrt3".into(),
        field: field.to_string(),
    };
    let field_ok = match field {
        Field::Quadratic(3) | Field::Prime(_) => true,
        Field::Quadratic(_) | Field::Rational => false,
    };
    if !field_ok {
        return Err(unsupported());
    }
    let s = field.sqrt_of(3).ok_or_else(unsupported)?;
    if s.is_zero() {
        return Err(unsupported());
    }
    Ok(&s * &field.from_ratio(1, 2)?)
}

fn plus_u(field: Field, u: &FieldElement, (a, b): (i64, i64)) -> FieldElement {
    &field.from_i64(a) + &(&field.from_i64(b) * u)
}

/// Rotation A by 60° about (0:0:1) and the reflection B: x ↦ −x.
pub fn hexagonal_generators(field: Field) -> Result<(Matrix3, Matrix3)> {
    let u = half_sqrt3(field)?;
    let half = field.from_ratio(1, 2)?;
    let (o, z) = (field.one(), field.zero());
    let a = Matrix3::new([
        [half.clone(), -u.clone(), z.clone()],
        [u, half, z.clone()],
        [z.clone(), z.clone(), o.clone()],
    ])?;
    let b = Matrix3::new([[-o.clone(), z.clone(), z.clone()], [z.clone(), o.clone(), z.clone()], [z.clone(), z, o]])?;
    Ok((a, b))
}

/// ⟨A, B⟩, the dihedral group of order 12.
pub fn hexagonal_group(field: Field) -> Result<MatrixGroup> {
    let (a, b) = hexagonal_generators(field)?;
    MatrixGroup::generate(&[a, b], MatrixGroup::DEFAULT_BOUND)
}

/// (9 : 2u : 4u), whose 12-point orbit separates the 127 points from the 115.
pub fn special_point(field: Field) -> Result<ProjectivePoint> {
    let u = half_sqrt3(field)?;
    ProjectivePoint::new([(9, 0), (0, 2), (0, 4)].map(|c| plus_u(field, &u, c)))
}

/// Representatives by orbit length, as listed with the orbit table.
pub fn orbit_table(field: Field) -> Result<Vec<(usize, Vec<ProjectivePoint>)>> {
    let u = half_sqrt3(field)?;
    ORBIT_TABLE
        .iter()
        .map(|(len, reps)| {
            let pts = reps
                .iter()
                .map(|r| ProjectivePoint::new(r.map(|c| plus_u(field, &u, c))))
                .collect::<Result<Vec<_>>>()?;
            Ok((*len, pts))
        })
        .collect()
}

/// The rational line table over `field`.
pub fn table1(field: Field) -> Result<Vec<LinearForm>> {
    TABLE1.iter().map(|&c| LinearForm::from_i64(field, c)).collect()
}

/// The rational point table, grouped by the number of lines through each point.
pub fn table2(field: Field) -> Result<Vec<(usize, Vec<ProjectivePoint>)>> {
    let classes: [(usize, &[[i64; 3]]); 6] = [
        (2, &TABLE2_DOUBLE),
        (3, &TABLE2_TRIPLE),
        (4, &TABLE2_QUADRUPLE),
        (5, &TABLE2_QUINTUPLE),
        (6, &TABLE2_SEXTUPLE),
        (8, &TABLE2_OCTUPLE),
    ];
    classes
        .iter()
        .map(|(m, pts)| {
            let pts = pts.iter().map(|&c| ProjectivePoint::from_i64(field, c)).collect::<Result<Vec<_>>>()?;
            Ok((*m, pts))
        })
        .collect()
}

/// x ± a·u·z for `a`, y ± b·z for `b` (duplicates for a, b = 0 collapse).
fn initial_lines(field: Field, a_values: &[i64], b_values: &[i64]) -> Result<Vec<LinearForm>> {
    let u = half_sqrt3(field)?;
    let (o, z) = (field.one(), field.zero());
    let mut lines: Vec<LinearForm> = Vec::new();
    for &a in a_values {
        for s in [1, -1] {
            let c = &field.from_i64(s * a) * &u;
            lines.push(LinearForm::new([o.clone(), z.clone(), c])?);
        }
    }
    for &b in b_values {
        for s in [1, -1] {
            lines.push(LinearForm::new([z.clone(), o.clone(), field.from_i64(s * b)])?);
        }
    }
    let mut seen = std::collections::HashSet::new();
    lines.retain(|l| seen.insert(l.clone()));
    Ok(lines)
}

/// Initial lines together with their images under A and A².
fn rotated(field: Field, initial: Vec<LinearForm>) -> Result<Vec<LinearForm>> {
    let (a, _) = hexagonal_generators(field)?;
    let a2 = a.mul(&a);
    let mut lines = initial.clone();
    for m in [&a, &a2] {
        for l in &initial {
            lines.push(l.transform(m)?);
        }
    }
    Ok(lines)
}

/// Builds one of [`NAMES`]. The √3 model needs u = √3/2 (ℚ(√3) or F_p with
/// 3 a square); the rational model exists for A313 and B21 only; the dual
/// Hesse arrangement needs a primitive cube root of unity.
pub fn build_named(name: &str, model: Model, field: Field) -> Result<Arrangement> {
    let unsupported = || Error::UnsupportedFieldForModel {
        model: format!("{name} ({model})"),
        field: field.to_string(),
    };
    let line_at_infinity = || LinearForm::from_i64(field, [0, 0, 1]);
    match (name, model) {
        ("triangle", _) => Arrangement::new(
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|&c| LinearForm::from_i64(field, c)).collect::<Result<_>>()?,
        ),
        ("dualHesse", _) => {
            let w = field.primitive_cube_root().ok_or_else(unsupported)?;
            let (o, z) = (field.one(), field.zero());
            let mut lines = Vec::new();
            for k in 0..3 {
                let c = -w.pow(k);
                lines.push(LinearForm::new([o.clone(), c.clone(), z.clone()])?);
                lines.push(LinearForm::new([z.clone(), o.clone(), c.clone()])?);
                lines.push(LinearForm::new([c, z.clone(), o.clone()])?);
            }
            Arrangement::new(lines)
        }
        ("A313", Model::RationalTable1) => Arrangement::new(table1(field)?),
        ("B21", Model::RationalTable1) => {
            let all = table1(field)?;
            Arrangement::new(B21_TABLE1_LINES.iter().map(|&i| all[i].clone()).collect())
        }
        (_, Model::RationalTable1) => Err(unsupported()),
        (_, Model::Sqrt3) => {
            half_sqrt3(field).map_err(|_| unsupported())?;
            match name {
                "A313" | "A312" => {
                    let a_values: &[i64] = if name == "A313" { &[0, 1, 2, 4] } else { &[0, 2, 4, 6] };
                    let mut lines = rotated(field, initial_lines(field, a_values, &[0, 1])?)?;
                    lines.push(line_at_infinity()?);
                    Arrangement::new(lines)
                }
                "B21" => Arrangement::new(rotated(field, initial_lines(field, &[1, 4], &[0, 1])?)?),
                "initial10_A313" => Arrangement::new(initial_lines(field, &[0, 1, 2, 4], &[0, 1])?),
                "initial10_A312" => Arrangement::new(initial_lines(field, &[0, 2, 4, 6], &[0, 1])?),
                _ => Err(Error::Invalid(format!("unknown arrangement `{name}`"))),
            }
        }
    }
}

impl TVector {
    pub fn a31() -> TVector {
        TVector::from_pairs(&A31_T_VECTOR)
    }

    pub fn b21() -> TVector {
        TVector::from_pairs(&B21_T_VECTOR)
    }
}
