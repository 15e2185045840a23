//! Two engines for projection comparison and diagonalization.
//!
//! The concrete engine works in finite-dimensional C*-algebras
//! `⊕_k M_{n_k}(ℂ)`: projection comparison by exact per-block ranks
//! ([`projlat`]), maximal abelian subalgebras containing a commuting normal
//! family ([`masa`]), simultaneous diagonalization of commuting normal
//! elements of `M_n(A)` by a unitary of `M_n(A)` ([`diag`]), and unital
//! *-homomorphisms with their entrywise lifts to `M_n` ([`functor`]).
//!
//! The symbolic engine works in atomic models `⊕_i B(H_i)` with infinite
//! cardinal dimensions: exact aleph arithmetic ([`cardinal`]) and the
//! cardinal-valued dimension theory of properly infinite projections —
//! dimensions, equidimensional decompositions, dimension functions, and
//! comparison by dimension ([`dimension`]).
//!
//! Seeded generators for random instances live in [`gen`]; they double as
//! the oracles for the property suites in `tests/`.

pub mod cardinal;
pub mod diag;
pub mod dimension;
pub mod fdalg;
pub mod functor;
pub mod gen;
pub mod linalg;
pub mod masa;
pub mod projlat;
pub mod selftest;

pub use cardinal::Cardinal;
pub use diag::{simultaneous_diagonalize, DiagonalizationResult};
pub use dimension::{AtomicModel, CProjection};
pub use fdalg::{AlgebraShape, Element, Tolerance};
pub use functor::StarHom;
pub use masa::Masa;
