//! Exact computation of dynamical degrees and relative dynamical degrees of
//! dominant rational self-maps of products of projective spaces, together
//! with certified spectral data for monomial models and pullback actions on
//! cycle lattices.
//!
//! Everything here is `no_std + alloc`: exact integers/rationals from the
//! `num` family, directed-rounding `f64` intervals for the few places where
//! limits have to be enclosed numerically, and seeded ChaCha randomness so
//! every run is reproducible from a single seed.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod cyclelat;
pub mod degseq;
pub mod gcd;
pub mod interval;
pub mod intmat;
pub mod lp;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratmap;
pub mod relative;
pub mod rng;
pub mod roots;
pub mod space;
