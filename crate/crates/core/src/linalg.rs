//! Dense exact linear algebra: reduced row echelon form, rank and kernel.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::scalars::{with_scalars, Scalars};

/// Below this many entries elimination stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 16;

/// In-place Gauss–Jordan elimination. Returns the pivot columns; the first
/// `pivots.len()` rows are the nonzero rows of the RREF, with pivot entries 1.
pub(crate) fn rref_in_place<S: Scalars>(s: &S, rows: &mut Vec<Vec<S::E>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let parallel = rows.len() * ncols >= PARALLEL_THRESHOLD;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| !s.is_zero(&rows[k][c])) else {
            continue;
        };
        rows.swap(r, k);
        let inv = s.inv(&rows[r][c]);
        if !s.is_one(&inv) {
            for e in rows[r][c..].iter_mut() {
                *e = s.mul(e, &inv);
            }
        }
        let (above, rest) = rows.split_at_mut(r);
        let (pivot_row, below) = rest.split_first_mut().expect("pivot row");
        let pivot_row: &Vec<S::E> = pivot_row;
        let eliminate = |row: &mut Vec<S::E>| {
            let f = row[c].clone();
            if s.is_zero(&f) {
                return;
            }
            for j in c..ncols {
                if !s.is_zero(&pivot_row[j]) {
                    row[j] = s.sub_mul(&row[j], &f, &pivot_row[j]);
                }
            }
        };
        if parallel {
            above.par_iter_mut().for_each(eliminate);
            below.par_iter_mut().for_each(eliminate);
        } else {
            above.iter_mut().for_each(eliminate);
            below.iter_mut().for_each(eliminate);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

/// Basis of the right kernel {v : M v = 0}, itself in reduced echelon form
/// (so each vector's first nonzero entry is 1).
pub(crate) fn kernel_of<S: Scalars>(s: &S, mut rows: Vec<Vec<S::E>>, ncols: usize) -> Vec<Vec<S::E>> {
    let pivots = rref_in_place(s, &mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis: Vec<Vec<S::E>> = (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![s.zero(); ncols];
            v[f] = s.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = s.neg(&rows[i][f]);
            }
            v
        })
        .collect();
    rref_in_place(s, &mut basis, ncols);
    basis
}

/// A dense matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl Matrix {
    pub fn new(field: Field, ncols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::Invalid(format!("row of length {} in a {ncols}-column matrix", row.len())));
            }
            if let Some(bad) = row.iter().find(|e| e.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
            }
        }
        Ok(Matrix { field, ncols, rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Nonzero rows of the reduced row echelon form and their pivot columns.
    pub fn rref(&self) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
        with_scalars!(self.field, |s| {
            let mut rows = self.lift(&s);
            let pivots = rref_in_place(&s, &mut rows, self.ncols);
            (lower(&s, rows), pivots)
        })
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        with_scalars!(self.field, |s| {
            let rows = self.lift(&s);
            lower(&s, kernel_of(&s, rows, self.ncols))
        })
    }

    fn lift<S: Scalars>(&self, s: &S) -> Vec<Vec<S::E>> {
        self.rows.iter().map(|r| r.iter().map(|e| s.lift(e)).collect()).collect()
    }
}

fn lower<S: Scalars>(s: &S, rows: Vec<Vec<S::E>>) -> Vec<Vec<FieldElement>> {
    rows.into_iter().map(|r| r.iter().map(|e| s.lower(e)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(field: Field, rows: &[&[i64]]) -> Matrix {
        let n = rows[0].len();
        Matrix::new(field, n, rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(Field::Rational, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let q = |v| Field::Rational.from_i64(v);
        assert_eq!(k[0], vec![q(1), q(1), q(-1)]);
        // characteristic matters
        let m = mat(Field::prime(3).unwrap(), &[&[1, 1], &[1, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn shape_errors() {
        let f = Field::Rational;
        assert!(Matrix::new(f, 2, vec![vec![f.one()]]).is_err());
        let g = Field::prime(5).unwrap();
        assert!(matches!(Matrix::new(f, 1, vec![vec![g.one()]]), Err(Error::FieldMismatch(..))));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(-3i64..4, 20), pick in 0usize..3) {
            let field = [Field::Rational, Field::Prime(7), Field::Quadratic(3)][pick];
            let rows: Vec<Vec<FieldElement>> = entries.chunks(5).map(|c| c.iter().map(|&v| field.from_i64(v)).collect()).collect();
            let m = Matrix::new(field, 5, rows.clone()).unwrap();
            let kernel = m.kernel();
            prop_assert_eq!(m.rank() + kernel.len(), 5);
            for v in &kernel {
                for row in &rows {
                    let dot = row.iter().zip(v).fold(field.zero(), |acc, (a, b)| &acc + &(a * b));
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
