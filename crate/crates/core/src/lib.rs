//! Exact computations on rational genus-one fibrations over the projective line.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: rationals, prime fields, finite-field extensions, univariate
//!   polynomials, factorisation and residue fields at places.
//! * [`weierstrass`]: Weierstrass models over `k[t]`, their invariants,
//!   admissible coordinate changes and the elliptic / quasi-elliptic test.
//! * [`localfibers`]: minimal models at a place, Tate's algorithm and the global
//!   Euler-number bookkeeping.
//! * [`lattice`]: root lattices, the E8 root system, Smith normal form,
//!   embeddings into E8 and Mordell-Weil groups of extremal configurations.
//! * [`picaction`]: the lattice `I^{1,9}` with the translation action of
//!   sections, reflections and Eichler transvections.
//! * [`catalog`]: the classification tables as data, plus the pipelines that
//!   re-derive them.

pub mod catalog;
pub mod exactalg;
pub mod lattice;
pub mod localfibers;
pub mod picaction;
pub mod weierstrass;

mod error;

pub use error::{Error, Result};
