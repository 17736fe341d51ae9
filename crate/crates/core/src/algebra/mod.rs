//! Polynomials, truncated series and integer lattices over arbitrary-precision integers.

mod alphabet;
pub mod lattice;
mod monomial;
mod poly;
mod ring;
mod series;

pub use alphabet::{Alphabet, Symbol};
pub use lattice::{Lattice, Solve};
pub use monomial::Monomial;
pub use poly::GradedPoly;
pub use ring::Coeff;
pub use series::{LaurentSeries, TruncSeries};
