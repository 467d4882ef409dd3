//! 3×3 matrices and the finite groups they generate.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::{PointSet, ProjectivePoint};

/// A 3×3 matrix over one field, acting on column vectors of coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix3 {
    rows: [[FieldElement; 3]; 3],
}

impl Matrix3 {
    pub fn new(rows: [[FieldElement; 3]; 3]) -> Result<Matrix3> {
        let field = rows[0][0].field();
        if let Some(bad) = rows.iter().flatten().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Matrix3 { rows })
    }

    pub fn from_i64(field: Field, rows: [[i64; 3]; 3]) -> Matrix3 {
        Matrix3 {
            rows: rows.map(|r| r.map(|v| field.from_i64(v))),
        }
    }

    pub fn identity(field: Field) -> Matrix3 {
        Matrix3::from_i64(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn field(&self) -> Field {
        self.rows[0][0].field()
    }

    pub fn rows(&self) -> &[[FieldElement; 3]; 3] {
        &self.rows
    }

    /// Rows as nested vectors, the shape [`crate::Polynomial::substitute_linear`] takes.
    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix3) -> Matrix3 {
        let field = self.field();
        let rows = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(field.zero(), |acc, k| &acc + &(&self.rows[i][k] * &other.rows[k][j]))
            })
        });
        Matrix3 { rows }
    }

    /// M·v.
    pub fn apply(&self, v: &[FieldElement; 3]) -> [FieldElement; 3] {
        let field = self.field();
        std::array::from_fn(|i| (0..3).fold(field.zero(), |acc, k| &acc + &(&self.rows[i][k] * &v[k])))
    }

    /// vᵀ·M, the action on row vectors.
    pub fn apply_row(&self, v: &[FieldElement; 3]) -> [FieldElement; 3] {
        let field = self.field();
        std::array::from_fn(|j| (0..3).fold(field.zero(), |acc, k| &acc + &(&v[k] * &self.rows[k][j])))
    }

    fn minor(&self, i: usize, j: usize) -> FieldElement {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        &(&self.rows[r[0]][c[0]] * &self.rows[r[1]][c[1]]) - &(&self.rows[r[0]][c[1]] * &self.rows[r[1]][c[0]])
    }

    pub fn det(&self) -> FieldElement {
        let field = self.field();
        (0..3).fold(field.zero(), |acc, j| {
            let term = &self.rows[0][j] * &self.minor(0, j);
            if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        })
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Matrix3> {
        let inv_det = self.det().inv()?;
        let rows = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let c = &self.minor(j, i) * &inv_det;
                if (i + j) % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
        });
        Ok(Matrix3 { rows })
    }

    pub fn specialize(&self, p: u64) -> Result<Matrix3> {
        let sqrt_d = super::sqrt_image(self.field(), p)?;
        let mut rows = self.rows.clone();
        for e in rows.iter_mut().flatten() {
            *e = e.specialize(p, sqrt_d)?;
        }
        Ok(Matrix3 { rows })
    }
}

impl fmt::Display for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[FieldElement; 3]| {
            r.iter().map(crate::text::format_scalar).collect::<Vec<_>>().join(", ")
        };
        write!(f, "[{}; {}; {}]", row(&self.rows[0]), row(&self.rows[1]), row(&self.rows[2]))
    }
}

impl fmt::Debug for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One orbit of a group acting on a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Smallest point of the orbit in the canonical order.
    pub representative: ProjectivePoint,
    pub points: Vec<ProjectivePoint>,
    /// Line multiplicity shared by all points of the orbit.
    pub multiplicity: usize,
}

/// A finite matrix group, stored as its full element list.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<Matrix3>,
}

impl MatrixGroup {
    pub const DEFAULT_BOUND: usize = 1000;

    /// Closure of `gens` under multiplication, by breadth-first search from
    /// the identity. Fails once more than `bound` elements appear.
    pub fn generate(gens: &[Matrix3], bound: usize) -> Result<MatrixGroup> {
        let Some(first) = gens.first() else {
            return Err(Error::Invalid("a group needs at least one generator".into()));
        };
        let field = first.field();
        for g in gens {
            if g.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), g.field().to_string()));
            }
            if g.det().is_zero() {
                return Err(Error::Invalid(format!("generator {g} is singular")));
            }
        }
        let id = Matrix3::identity(field);
        let mut seen: HashSet<Matrix3> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in gens {
                let next = g.mul(&m);
                if seen.insert(next.clone()) {
                    if seen.len() > bound {
                        return Err(Error::ClosureBoundExceeded(bound));
                    }
                    elements.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(MatrixGroup { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Identity first, then breadth-first discovery order.
    pub fn elements(&self) -> &[Matrix3] {
        &self.elements
    }

    pub fn field(&self) -> Field {
        self.elements[0].field()
    }

    pub fn contains(&self, m: &Matrix3) -> bool {
        self.elements.contains(m)
    }

    /// The orbit of `p`, sorted.
    pub fn orbit(&self, p: &ProjectivePoint) -> Vec<ProjectivePoint> {
        let mut out: Vec<ProjectivePoint> = self.elements.iter().map(|g| p.transform(g)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Orbit decomposition of an invariant point set, orbits ordered by their
    /// representatives. Fails if some element moves a point off the set or
    /// changes its multiplicity.
    pub fn orbits(&self, ps: &PointSet) -> Result<Vec<Orbit>> {
        let mut done: HashSet<&ProjectivePoint> = HashSet::new();
        let mut out = Vec::new();
        for (p, m) in ps.iter() {
            if done.contains(p) {
                continue;
            }
            let points = self.orbit(p);
            for q in &points {
                match ps.multiplicity(q) {
                    Some(mq) if mq == m => {}
                    _ => return Err(Error::Invalid(format!("the group does not preserve the point set at {q}"))),
                }
            }
            for q in &points {
                done.insert(ps.get(q).expect("checked above"));
            }
            out.push(Orbit {
                representative: points[0].clone(),
                points,
                multiplicity: m,
            });
        }
        Ok(out)
    }
}
