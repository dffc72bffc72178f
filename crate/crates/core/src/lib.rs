//! Exact arithmetic over F_q(T) and F_q((T^{-1})), continued fractions,
//! Diophantine approximation exponents and combinatorics on words.

pub mod algebraic;
pub mod cf;
pub mod dense;
pub mod error;
pub mod experiments;
pub mod exponent;
pub mod field;
pub mod liouville;
pub mod poly;
pub mod report;
pub mod roots;
pub mod series;
pub mod words;
pub mod xpoly;

pub use error::{Error, Result};
pub use field::{Fe, FieldSpec, Fq};
pub use poly::{abs_value_rational, AbsValue, Poly};
pub use roots::quadratic_roots;
pub use series::LaurentSeries;
pub use cf::{ContinuedFraction, Period};
pub use xpoly::XPoly;
pub use algebraic::AlgebraicNumber;
pub use words::{GeneratorSpec, Word};
