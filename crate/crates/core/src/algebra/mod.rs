//! Exact arithmetic substrate: rationals, sparse graded polynomials,
//! q-series, truncated series in the times, and linear algebra.

pub mod linalg;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod series;

pub use linalg::{kernel, rank, Echelon};
pub use poly::{
    determinant, monomials_of_degree, CanonicalPoly, CanonicalTerm, Catalog, GradedPoly, Monomial,
};
pub use qseries::QSeries;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use series::{TSeries, TSpace, ZSeries};
