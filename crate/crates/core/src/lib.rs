//! Exact computations in cohomological Hall algebras of quivers.
//!
//! Elements of `H(Q)_d` are polynomials in variables `x_{i,k}` that are
//! symmetric within each vertex block; the product is the shuffle product
//! with kernel given by the Euler form. On top of that the crate builds
//! semistable quotients, the central-slope algebra of the Kronecker quiver
//! with its normal-ordering rules, the braiding operator on its degree-one
//! part, and its action on `Q[w_1, w_2, …]` by differential operators.

pub mod exactpoly;
pub mod symmetric;
pub mod quiver;
pub mod linalg;
pub mod coha;
pub mod series;
pub mod semistable;
pub mod kron;
pub mod braiding;
pub mod diffrep;
