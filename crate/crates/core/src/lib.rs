//! Exact computational commutative algebra for plane line arrangements:
//! coefficient fields, polynomials, Gröbner bases, intersection points and
//! their symbolic powers, invariant-theoretic interpolation of plane curves,
//! and containment checks between symbolic and ordinary powers.

pub mod containment;
pub mod error;
pub mod arrangement;
pub mod field;
pub mod groebner;
pub mod invariant;
pub mod linalg;
pub mod monomial;
pub mod poly;
mod scalars;
pub mod text;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use groebner::{GroebnerConfig, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, Ring};
