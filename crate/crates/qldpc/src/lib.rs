//! Sparse-graph CSS quantum codes built from dual-containing classical codes.
//!
//! The pipeline: GF(2) sparse linear algebra ([`gf2`]), binary-symplectic
//! stabilizer machinery ([`pauli`]), cyclic difference sets ([`designsets`]),
//! the bicycle / unicycle / cyclic-block code families ([`constructions`]),
//! noise models ([`channels`]), sum-product syndrome decoders ([`decoder`]),
//! closed-form rate benchmarks ([`analysis`]), and a reproducible Monte Carlo
//! harness with alist I/O ([`sim`], [`alist`]).
//!
//! Floating-point lanes (decoder messages, channel math, rate curves) are
//! generic over [`num_traits::Float`]; the aliases below pin the default
//! double-precision instantiations.

pub mod alist;
pub mod analysis;
pub mod channels;
pub mod constructions;
pub mod decoder;
pub mod designsets;
pub mod gf2;
pub mod pauli;
pub mod sim;

mod error;

pub use error::{Error, Result};

/// Default message/prior scalar used by the CLI and the simulation harness.
pub type Scalar = f64;

/// Binary sum-product decoder at the default scalar.
pub type BinaryDecoder = decoder::BinarySumProduct<Scalar>;
/// Quaternary (joint X/Z) sum-product decoder at the default scalar.
pub type QuaternaryDecoder = decoder::QuaternarySumProduct<Scalar>;
/// Two-hypothesis decoder for codes with one dense column, default scalar.
pub type UnicycleDecoder = decoder::UnicycleDecoder<Scalar>;
