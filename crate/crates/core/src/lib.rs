//! Exact-arithmetic computer algebra for Schubert derivations.
//!
//! The crate models the exterior algebra of the free abelian group with
//! basis `b_i` (`i` ranging over the integers), the fermionic Fock space
//! built on top of it, the ring of symmetric functions in the Schur basis,
//! and the vertex operators that tie the two sides together.  Every operator
//! is realised over arbitrary-precision integers and every generating
//! function is a windowed Laurent series with an explicit exactness
//! contract, so operator identities can be checked coefficient by
//! coefficient with tolerance zero.
//!
//! Module map:
//!
//! * [`partitions`] — integer partitions and their index combinatorics;
//! * [`series`] — exact windowed Laurent series over abelian-group
//!   coefficients, including directed geometric expansions;
//! * [`exterior`] — wedge monomials, contraction, and the four Schubert
//!   derivations on the exterior algebra;
//! * [`fock`] — charge-graded semi-infinite wedges, the extension of the
//!   Schubert derivations, Giambelli determinants and the charge shift;
//! * [`boson`] — the Schur basis, Pieri multiplication, and the
//!   boson–fermion dictionary;
//! * [`vertex`] — the vertex operators, their commutation rules and the
//!   generating function for the `gl_inf` action;
//! * [`glrep`] — the finite `n x n` counterpart acting on box partitions;
//! * [`expr`] — the operator-expression evaluator behind the CLI;
//! * [`suites`] — the identity suites run by `fockcalc check` and the
//!   acceptance tests.

pub mod boson;
pub mod error;
pub mod expr;
pub mod exterior;
pub mod fock;
pub mod glrep;
pub mod json;
pub mod partitions;
pub mod series;
pub mod suites;
pub mod vertex;

pub use error::Error;
pub use partitions::Partition;
pub use series::{LaurentSeries, Window};
