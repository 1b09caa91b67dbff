//! Exact rationals, sparse graded polynomials, symbolic minors and
//! degreewise linear algebra for homogeneous ideals.

mod ideal;
mod linalg;
mod minor;
mod poly;
mod rational;

pub use ideal::{
    ideals_equal_up_to, polynomial_from_row, DegreeSpan, GradedIdeal, GradedQuotient,
    IdealComparison, DEFAULT_DEGREE_PIECE_CAP,
};
pub use linalg::{invert, rank, RowEchelon, SparseRow};
pub use minor::{minor, PolyMatrix};
pub use poly::{Monomial, Polynomial, Variables};
pub use rational::{as_string, frac, parse_rational, q, Rational};
