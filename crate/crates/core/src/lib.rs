//! Exact computational verification of characteristic-class identities for
//! reduced plane-curve divisors, plus the low-codimension Segre/Chern
//! comparison for complete intersections.
//!
//! The crate is organized around a small exact computer-algebra core:
//! rational multivariate polynomials ([`polyalg`]), a Groebner engine
//! ([`ideals`]), singularity invariants of plane curves ([`localinv`]),
//! Chow-class arithmetic on projective space ([`chow`]), the
//! characteristic-class pipeline ([`charclass`]), the complete-intersection
//! checker ([`codim`]), and the command-line front end ([`cli`]).

pub mod charclass;
pub mod chow;
pub mod cli;
pub mod codim;
pub mod ideals;
pub mod localinv;
pub mod polyalg;
