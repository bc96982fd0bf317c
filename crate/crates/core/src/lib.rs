//! Approximation of almost time- and band-limited functions in Hermite,
//! Legendre and Chebyshev bases.
//!
//! The crate provides stable special-function evaluation ([`orthopoly`]),
//! deterministic quadrature ([`quadrature`]), WKB asymptotics of Hermite
//! functions ([`wkb`]), the Hermite projection kernel against the sinc kernel
//! ([`kernels`]), a catalog of test signals with closed-form Fourier
//! transforms ([`concentration`]), truncated expansions with their error
//! bounds ([`projections`]) and a Legendre-Galerkin solver for the prolate
//! spheroidal spectrum together with its lower bounds ([`pswf`]).

pub mod concentration;
pub mod constants;
pub mod eigen;
pub mod error;
pub mod kernels;
pub mod orthopoly;
pub mod projections;
pub mod pswf;
pub mod quadrature;
pub mod special;
pub mod wkb;

pub use error::{Error, Result};
