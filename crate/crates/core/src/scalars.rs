//! Internal coefficient arithmetic for the hot loops (Gröbner reduction,
//! elimination). Prime fields run on bare `u64` residues; every other field
//! goes through [`FieldElement`].

use std::fmt::Debug;

use crate::field::{add_mod, inv_mod, mul_mod, sub_mod, Field, FieldElement};

pub(crate) trait Scalars: Sync + Send {
    type E: Clone + PartialEq + Send + Sync + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Panics on zero; callers only invert pivots.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn lift(&self, c: &FieldElement) -> Self::E;
    fn lower(&self, c: &Self::E) -> FieldElement;

    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }

    /// a − b·c
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E {
        self.sub(a, &self.mul(b, c))
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ModP {
    pub p: u64,
}

impl Scalars for ModP {
    type E = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        inv_mod(*a, self.p)
    }
    fn lift(&self, c: &FieldElement) -> u64 {
        c.as_residue().expect("prime-field element")
    }
    fn lower(&self, c: &u64) -> FieldElement {
        FieldElement::Prime(crate::field::Residue::new(*c, self.p))
    }
    #[inline]
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        sub_mod(*a, mul_mod(*b, *c, self.p), self.p)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Exact {
    pub field: Field,
}

impl Scalars for Exact {
    type E = FieldElement;

    fn zero(&self) -> FieldElement {
        self.field.zero()
    }
    fn one(&self) -> FieldElement {
        self.field.one()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &FieldElement) -> bool {
        a.is_one()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a + b
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a - b
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        a.neg_ref()
    }
    fn inv(&self, a: &FieldElement) -> FieldElement {
        a.inv().expect("inverse of zero")
    }
    fn lift(&self, c: &FieldElement) -> FieldElement {
        c.clone()
    }
    fn lower(&self, c: &FieldElement) -> FieldElement {
        c.clone()
    }
}

/// Runs `$body` with `$s` bound to the fastest [`Scalars`] for `$field`.
macro_rules! with_scalars {
    ($field:expr, |$s:ident| $body:expr) => {
        match $field {
            $crate::field::Field::Prime(p) => {
                let $s = $crate::scalars::ModP { p };
                $body
            }
            other => {
                let $s = $crate::scalars::Exact { field: other };
                $body
            }
        }
    };
}
pub(crate) use with_scalars;
