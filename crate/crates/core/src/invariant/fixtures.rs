//! The printed coefficients of the two invariant curves, keyed by the
//! exponent triple (a, b, c) of f₁^a f₂^b f₃^c.

use crate::error::Result;
use crate::field::{Field, FieldElement};

type Coefficient = ([u32; 3], i64, i64);

/// Degree-12 curve through the B21 double points, singular along the
/// distinguished 12-point orbit.
pub const GAMMA_PRINTED: [Coefficient; 12] = [
    ([12, 0, 0], 2093688, 17),
    ([10, 1, 0], -9398511, 34),
    ([8, 2, 0], 2995218, 17),
    ([6, 3, 0], -64485153, 1088),
    ([4, 4, 0], 18708003, 4352),
    ([2, 5, 0], 1258659, 4352),
    ([0, 6, 0], -493695, 4352),
    ([6, 0, 1], 2121309, 1088),
    ([4, 1, 1], -402561, 4352),
    ([2, 2, 1], -158697, 4352),
    ([0, 3, 1], 2619, 128),
    ([0, 0, 2], -3979, 4352),
];

/// Degree-10 curve through the B21 double points, as printed.
pub const DELTA_PRINTED: [Coefficient; 9] = [
    ([10, 0, 0], -38320128, 107),
    ([8, 1, 0], 80453952, 107),
    ([6, 2, 0], -42393996, 4107),
    ([4, 3, 0], 50759217, 214),
    ([2, 4, 0], -20519091, 856),
    ([0, 5, 0], 67086, 107),
    ([4, 0, 1], -3811059, 214),
    ([2, 1, 1], 1778227, 856),
    ([0, 2, 1], -6089, 107),
];

/// The f₁⁶f₂² coefficient of the degree-10 curve with the stray digit of the
/// printed denominator removed; the interpolant has this value.
pub const DELTA_F1_6_F2_2_CORRECTED: Coefficient = ([6, 2, 0], -42393996, 107);

/// Coefficients of `table` arranged along `exponents`; monomials absent from
/// the table get zero.
pub fn coefficients_along(table: &[Coefficient], exponents: &[Vec<u32>], field: Field) -> Result<Vec<FieldElement>> {
    exponents
        .iter()
        .map(|e| match table.iter().find(|(k, _, _)| k.as_slice() == e.as_slice()) {
            Some(&(_, n, d)) => field.from_ratio(n, d),
            None => Ok(field.zero()),
        })
        .collect()
}

/// The printed degree-10 coefficients with the corrected f₁⁶f₂² entry.
pub fn delta_corrected() -> [Coefficient; 9] {
    let mut t = DELTA_PRINTED;
    for entry in t.iter_mut() {
        if entry.0 == DELTA_F1_6_F2_2_CORRECTED.0 {
            *entry = DELTA_F1_6_F2_2_CORRECTED;
        }
    }
    t
}
