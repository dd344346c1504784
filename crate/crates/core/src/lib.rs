//! Exact crystal combinatorics for the affine type-A letter crystal.
//!
//! The crate covers the tensor powers `B_ℓ(m)` of the cyclic letter crystal,
//! their affinization `B̂_ℓ(m) = B_ℓ(m) × Z` and its decomposition into
//! components labelled by the residue of the `N` statistic, weight
//! multiplicities via q-multinomials and Möbius/Euler closed forms, and an
//! embedding of `B̂_ℓ(m)` into Littelmann's path crystal with exact rational
//! root operators. On top of that sits the decomposition of
//! `B(λ) ⊗ B̂_ℓ(m)` into highest weight path crystals.
//!
//! All arithmetic is exact: integers are `i64`/`BigInt`, everything else is a
//! [`Rat`] (an arbitrary-precision fraction). There is no floating point.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`weight`] | weight lattice, Cartan data, simple roots, reflections |
//! | [`crystal`] | crystal contract, tensor rule engine, orbit BFS, checkers |
//! | [`letters`] | letter crystal, words, descent statistics, raising |
//! | [`affine`] | the affinization and its components |
//! | [`charfun`] | number theory, q-polynomials, closed-form counts |
//! | [`paths`] | piecewise-linear paths, root operators, the embedding ψ |
//! | [`decomp`] | `B(λ) ⊗ B̂_ℓ(m)` highest elements and summands |
//! | [`verify`] | named invariant suites used by the CLI |

pub mod affine;
pub mod charfun;
pub mod crystal;
pub mod decomp;
mod error;
pub mod letters;
pub mod paths;
pub mod rat;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use rat::Rat;
