//! Exact coefficient fields: ℚ, ℚ(√d) for one squarefree d, and prime fields F_p.
//!
//! Every [`FieldElement`] carries enough context (d or p) to do arithmetic on
//! its own. Mixing elements of different fields is a [`Error::FieldMismatch`]
//! through the `checked_*` methods and a panic through the operator impls,
//! which are meant for code paths where a [`crate::poly::Ring`] has already
//! vouched for consistency.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const PRIME_BOUND: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// ℚ(√d), d squarefree and > 1.
    Quadratic(u64),
    /// F_p, p an odd prime below [`PRIME_BOUND`].
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 || p >= PRIME_BOUND || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "fp:{p} (need an odd prime below 2^62)"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn quadratic(d: u64) -> Result<Field> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!(
                "qsqrt:{d} (need a squarefree integer > 1)"
            )));
        }
        Ok(Field::Quadratic(d))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    /// Fields that embed in ℝ (used by the renderer).
    pub fn is_real(&self) -> bool {
        !matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            Field::Quadratic(d) => FieldElement::Quadratic(Box::new(QuadraticElement {
                a: BigRational::from_integer(n.clone()),
                b: BigRational::zero(),
                d,
            })),
            Field::Prime(p) => FieldElement::Prime(Residue::new(reduce_bigint(n, p), p)),
        }
    }

    /// Image of a rational number. Fails with `BadPrime` when p divides the
    /// denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        match *self {
            Field::Rational => Ok(FieldElement::Rational(q.clone())),
            Field::Quadratic(d) => Ok(FieldElement::Quadratic(Box::new(QuadraticElement {
                a: q.clone(),
                b: BigRational::zero(),
                d,
            }))),
            Field::Prime(p) => {
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(Error::BadPrime {
                        p,
                        reason: format!("divides denominator of {q}"),
                    });
                }
                let num = reduce_bigint(q.numer(), p);
                Ok(FieldElement::Prime(Residue::new(
                    mul_mod(num, inv_mod(den, p), p),
                    p,
                )))
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// `a + b√d` in a quadratic field.
    pub fn quadratic_element(&self, a: BigRational, b: BigRational) -> Result<FieldElement> {
        match *self {
            Field::Quadratic(d) => Ok(FieldElement::Quadratic(Box::new(QuadraticElement {
                a,
                b,
                d,
            }))),
            other => Err(Error::FieldMismatch(other.to_string(), "qsqrt".into())),
        }
    }

    /// A square root of the integer `n` in this field, if the field has one.
    ///
    /// In F_p the smaller residue is returned; in ℚ(√d) roots of the form
    /// k√d and k are found.
    pub fn sqrt_of(&self, n: i64) -> Option<FieldElement> {
        match *self {
            Field::Rational => rational_sqrt(n).map(|r| FieldElement::Rational(r)),
            Field::Quadratic(d) => {
                if let Some(r) = rational_sqrt(n) {
                    return Some(self.from_rational(&r).expect("ℚ embeds"));
                }
                // n = d·k² ⇒ √n = k√d
                let di = d as i64;
                if n % di == 0 {
                    rational_sqrt(n / di).map(|k| {
                        FieldElement::Quadratic(Box::new(QuadraticElement {
                            a: BigRational::zero(),
                            b: k,
                            d,
                        }))
                    })
                } else {
                    None
                }
            }
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                if r == 0 {
                    return Some(self.zero());
                }
                sqrt_mod(r, p).map(|s| FieldElement::Prime(Residue::new(s, p)))
            }
        }
    }

    /// Smallest primitive cube root of unity, available only in F_p with
    /// p ≡ 1 (mod 3).
    pub fn primitive_cube_root(&self) -> Option<FieldElement> {
        match *self {
            Field::Prime(p) if p % 3 == 1 => (2..p)
                .find(|&w| pow_mod(w, 3, p) == 1)
                .map(|w| FieldElement::Prime(Residue::new(w, p))),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Quadratic(d) => write!(f, "qsqrt:{d}"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "q" {
            return Ok(Field::Rational);
        }
        let bad = || Error::InvalidField(s.to_string());
        if let Some(rest) = s.strip_prefix("fp:") {
            return Field::prime(rest.trim().parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("qsqrt:") {
            return Field::quadratic(rest.trim().parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticElement {
    pub a: BigRational,
    pub b: BigRational,
    pub d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Residue {
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// An exact scalar in canonical form.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(BigRational),
    Quadratic(Box<QuadraticElement>),
    Prime(Residue),
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Quadratic(q) => Field::Quadratic(q.d),
            FieldElement::Prime(r) => Field::Prime(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Quadratic(q) => q.a.is_zero() && q.b.is_zero(),
            FieldElement::Prime(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Quadratic(q) => q.a.is_one() && q.b.is_zero(),
            FieldElement::Prime(r) => r.value == 1,
        }
    }

    /// The rational value, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Quadratic(q) if q.b.is_zero() => Some(&q.a),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            FieldElement::Prime(r) => Some(r.value),
            _ => None,
        }
    }

    fn mismatch(&self, other: &FieldElement) -> Error {
        Error::FieldMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        use FieldElement::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Ok(Rational(x + y)),
            (Quadratic(x), Quadratic(y)) if x.d == y.d => Ok(Quadratic(Box::new(QuadraticElement {
                a: &x.a + &y.a,
                b: &x.b + &y.b,
                d: x.d,
            }))),
            (Prime(x), Prime(y)) if x.modulus == y.modulus => Ok(Prime(Residue {
                value: add_mod(x.value, y.value, x.modulus),
                modulus: x.modulus,
            })),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        use FieldElement::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Ok(Rational(x * y)),
            (Quadratic(x), Quadratic(y)) if x.d == y.d => {
                let d = BigRational::from_integer(BigInt::from(x.d));
                Ok(Quadratic(Box::new(QuadraticElement {
                    a: &x.a * &y.a + &x.b * &y.b * d,
                    b: &x.a * &y.b + &x.b * &y.a,
                    d: x.d,
                })))
            }
            (Prime(x), Prime(y)) if x.modulus == y.modulus => Ok(Prime(Residue {
                value: mul_mod(x.value, y.value, x.modulus),
                modulus: x.modulus,
            })),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Quadratic(q) => {
                // (a + b√d)⁻¹ = (a − b√d) / (a² − d b²)
                let d = BigRational::from_integer(BigInt::from(q.d));
                let norm = &q.a * &q.a - &q.b * &q.b * d;
                FieldElement::Quadratic(Box::new(QuadraticElement {
                    a: &q.a / &norm,
                    b: -(&q.b / &norm),
                    d: q.d,
                }))
            }
            FieldElement::Prime(r) => FieldElement::Prime(Residue {
                value: inv_mod(r.value, r.modulus),
                modulus: r.modulus,
            }),
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        if self.field() != other.field() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn neg_ref(&self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Quadratic(q) => FieldElement::Quadratic(Box::new(QuadraticElement {
                a: -&q.a,
                b: -&q.b,
                d: q.d,
            })),
            FieldElement::Prime(r) => FieldElement::Prime(Residue {
                value: if r.value == 0 { 0 } else { r.modulus - r.value },
                modulus: r.modulus,
            }),
        }
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Conjugate a + b√d ↦ a − b√d; identity outside quadratic fields.
    pub fn conjugate(&self) -> FieldElement {
        match self {
            FieldElement::Quadratic(q) => FieldElement::Quadratic(Box::new(QuadraticElement {
                a: q.a.clone(),
                b: -&q.b,
                d: q.d,
            })),
            other => other.clone(),
        }
    }

    /// Exact sign for elements of real fields; `None` in F_p.
    pub fn signum(&self) -> Option<Ordering> {
        match self {
            FieldElement::Rational(q) => Some(q.cmp(&BigRational::zero())),
            FieldElement::Quadratic(q) => Some(quadratic_sign(&q.a, &q.b, q.d)),
            FieldElement::Prime(_) => None,
        }
    }

    /// Floating-point approximation, for drawing only.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            FieldElement::Rational(q) => q.to_f64(),
            FieldElement::Quadratic(q) => {
                Some(q.a.to_f64()? + q.b.to_f64()? * (q.d as f64).sqrt())
            }
            FieldElement::Prime(_) => None,
        }
    }

    /// Reduction modulo p. `sqrt_d` supplies the image of √d for quadratic
    /// elements.
    pub fn specialize(&self, p: u64, sqrt_d: Option<u64>) -> Result<FieldElement> {
        let target = Field::Prime(p);
        match self {
            FieldElement::Rational(q) => target.from_rational(q),
            FieldElement::Quadratic(q) => {
                let s = sqrt_d.ok_or_else(|| Error::BadPrime {
                    p,
                    reason: format!("{} has no square root mod {p}", q.d),
                })?;
                let a = target.from_rational(&q.a)?;
                let b = target.from_rational(&q.b)?;
                Ok(&a + &(&b * &FieldElement::Prime(Residue::new(s, p))))
            }
            FieldElement::Prime(r) if r.modulus == p => Ok(self.clone()),
            FieldElement::Prime(_) => Err(Error::FieldMismatch(
                self.field().to_string(),
                target.to_string(),
            )),
        }
    }

    /// Least common multiple of the denominators of the rational parts.
    pub fn denominator_lcm(&self) -> BigInt {
        match self {
            FieldElement::Rational(q) => q.denom().clone(),
            FieldElement::Quadratic(q) => q.a.denom().lcm(q.b.denom()),
            FieldElement::Prime(_) => BigInt::one(),
        }
    }

    fn tag(&self) -> u8 {
        match self {
            FieldElement::Rational(_) => 0,
            FieldElement::Quadratic(_) => 1,
            FieldElement::Prime(_) => 2,
        }
    }
}

fn quadratic_sign(a: &BigRational, b: &BigRational, d: u64) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // opposite signs: compare a² with d b²
    let a2 = a * a;
    let db2 = b * b * BigRational::from_integer(BigInt::from(d));
    match a2.cmp(&db2) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        use FieldElement::*;
        match (self, other) {
            (Rational(x), Rational(y)) => x == y,
            (Quadratic(x), Quadratic(y)) => x == y,
            (Prime(x), Prime(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tag().hash(state);
        match self {
            FieldElement::Rational(q) => q.hash(state),
            FieldElement::Quadratic(q) => q.hash(state),
            FieldElement::Prime(r) => r.hash(state),
        }
    }
}

/// Total order used for deterministic sorting: numeric on ℚ,
/// lexicographic on (a, b) in ℚ(√d), by residue in F_p.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        use FieldElement::*;
        match (self, other) {
            (Rational(x), Rational(y)) => x.cmp(y),
            (Quadratic(x), Quadratic(y)) => (x.d, &x.a, &x.b).cmp(&(y.d, &y.a, &y.b)),
            (Prime(x), Prime(y)) => (x.modulus, x.value).cmp(&(y.modulus, y.value)),
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in +")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in -")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in *")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Text form: `p/q`, `a+b*sqrt(d)` or `n mod p`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => fmt_rational(q, f),
            FieldElement::Quadratic(q) => {
                if q.b.is_zero() {
                    return fmt_rational(&q.a, f);
                }
                if !q.a.is_zero() {
                    fmt_rational(&q.a, f)?;
                    if q.b.is_positive() {
                        f.write_str("+")?;
                    }
                }
                if q.b.is_one() {
                    write!(f, "sqrt({})", q.d)
                } else if (-&q.b).is_one() {
                    write!(f, "-sqrt({})", q.d)
                } else {
                    fmt_rational(&q.b, f)?;
                    write!(f, "*sqrt({})", q.d)
                }
            }
            FieldElement::Prime(r) => write!(f, "{} mod {}", r.value, r.modulus),
        }
    }
}

// ---- modular helpers ----

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (p prime).
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = 1u64;
        let (mut b, mut e) = (a % n, d);
        while e > 0 {
            if e & 1 == 1 {
                x = mulm(x, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_squarefree(mut d: u64) -> bool {
    let mut f = 2u64;
    while f * f <= d {
        if d % (f * f) == 0 {
            return false;
        }
        if d % f == 0 {
            d /= f;
        }
        f += 1;
    }
    true
}

fn rational_sqrt(n: i64) -> Option<BigRational> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r.checked_mul(r)? == n).then(|| BigRational::from_integer(r.into()))
}

/// Tonelli–Shanks; returns the smaller of the two roots of a nonzero residue.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// A square root of `d` modulo the odd prime `p`: the smaller residue when
/// one exists, `None` when `d` is a non-residue.
pub fn sqrt_in_prime_field(p: u64, d: u64) -> Result<Option<u64>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::BadPrime {
            p,
            reason: "not an odd prime".into(),
        });
    }
    if d % p == 0 {
        return Err(Error::BadPrime {
            p,
            reason: format!("divides {d}"),
        });
    }
    Ok(sqrt_mod(d % p, p))
}
