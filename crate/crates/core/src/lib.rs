//! Exact computer algebra for free Poisson algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`multiindex`]: derivative multi-indices with lex and graded orders.
//! - [`polyring`]: sparse rational polynomials over coordinates and jet symbols.
//! - [`freelie`]: the free Lie algebra in the Lyndon basis.
//! - [`freepoisson`]: the free Poisson algebra as the symmetric algebra on Lyndon words.
//! - [`symplectic`]: the symplectic algebras `PS_n`, evaluation homomorphisms and identity tests.
//! - [`series_solver`]: formal power series solutions of implicit PDEs `f(x, ∂^α T) = 0`.
//! - [`freiheitssatz`]: witness homomorphisms separating `(f)` from the subalgebra on `z_1..z_{m-1}`.
//! - [`automorphisms`]: plane endomorphisms, Jacobians, tame decomposition and bracket scaling.

pub mod automorphisms;
pub mod freelie;
pub mod freepoisson;
pub mod freiheitssatz;
pub mod multiindex;
pub mod polyring;
pub mod scalar;
pub mod series_solver;
pub mod symplectic;

pub use automorphisms::{ElementaryMove, PoissonEndo, PolyEndo};
pub use freelie::{LieElement, LyndonWord};
pub use freepoisson::{PoissonElement, PoissonMonomial};
pub use freiheitssatz::{FreiheitssatzWitness, PdeForm};
pub use multiindex::MultiIndex;
pub use polyring::{RationalPolynomial, Variable};
pub use scalar::Scalar;
pub use series_solver::{SeriesProblem, SeriesSession};

pub use symplectic::{GeneratorAssignment, SymplecticElement};
