//! Exact synthesis of single-qubit gates over finite gate sets.
//!
//! Gates are modelled as quaternions over a real quadratic (or rational)
//! coefficient field; synthesising a gate into a word over a finite alphabet
//! becomes factoring a quaternion into elements of prescribed reduced norm,
//! which in turn is driven by the arithmetic of right ideals in a maximal
//! order of a definite quaternion algebra with class number one.  The crate
//! computes with ideals as explicit lattices, walks chains of maximal-index
//! sublattices, and emits canonical gate words.  No floating point is used
//! anywhere.

pub mod cli;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod ideal;
pub mod linalg;
pub mod literal;
pub mod primes;
pub mod quat;
pub mod rings;
pub mod synth;
pub mod unitary;

pub use error::Error;
