//! Exact constructions of the graded rings attached to the Hilbert scheme of
//! points in the plane and its relatives, together with machine checks that
//! the rings built in different ways agree.
//!
//! The crate is organised bottom-up:
//!
//! - [`combinatorics`]: partitions, bipartite partitions, guarded factorials
//!   and the coefficient functions the closed formulas are assembled from.
//! - [`exactalg`]: rationals, sparse multivariate polynomials with a grading,
//!   symbolic minors and degreewise exact linear algebra for graded ideals.
//! - [`class_algebra`]: the center of `Q[S_n]` in the class-sum basis, its
//!   convolution product and the associated-graded cup product.
//! - [`macmahon`]: MacMahon symmetric functions in the monomial basis and
//!   the quotient by the off-diagonal generators.
//! - [`fixed_ring`]: the coordinate ring of the torus-fixed subscheme of
//!   `S^n C^2` in its canonical basis, plus an independent oracle built from
//!   invariant theory.
//! - [`duality_iso`]: the explicit isomorphism to the graded class algebra
//!   and the end-to-end check that it is multiplicative.
//! - [`spaltenstein`]: Brundan–Ostrik ideals versus minors of slice matrices.
//! - [`hypertoric`]: Gale duality, circuits, Stanley–Reisner quotients and
//!   the fixed-point ring of the dual hypertoric variety.

pub mod class_algebra;
pub mod combinatorics;
pub mod duality_iso;
pub mod error;
pub mod exactalg;
pub mod fixed_ring;
pub mod hypertoric;
pub mod macmahon;
pub mod spaltenstein;

pub use error::{Error, Result};
