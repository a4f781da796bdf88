//! Exact computations for linear shift behaviors over `N^n` and their dual
//! finitely presented modules over `k[z1..zn]`.
//!
//! A behavior is presented as the kernel `B(G) = { w : w.G = 0 }` of a
//! polynomial matrix `G` acting on vector sequences by shifts. The dual
//! module is `coker(G.)`, and questions about behaviors (inclusion, lifting
//! of homomorphisms, kernel representation complexes) reduce to Groebner
//! basis computations on column modules.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod behavior;
pub mod duality;
pub mod expr;
pub mod freealg;
pub mod groebner;
pub mod linalg;
pub mod polyring;
pub mod scalar;
pub mod smith;

#[cfg(test)]
pub(crate) mod testutil;

pub use polyring::{FreeVector, Monomial, Poly, PolyMatrix, Ring, TermOrder};
pub use scalar::{FieldSpec, Scalar};
