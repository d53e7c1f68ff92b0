//! Exact local invariants of polynomial maps over the rationals.
//!
//! The crate computes, with arbitrary-precision rational arithmetic throughout:
//!
//! * diagrams of initial exponents of ideals of formal power series, their
//!   vertices, Hilbert-Samuel functions, and a total order on diagrams
//!   ([`multiindex`]),
//! * Hironaka division of a truncated series by a finite system of divisors,
//!   and reduction of generators to a standard basis ([`series`]),
//! * jet matrices of polynomial maps, stacked over a fiber, and the kernels
//!   that approximate the ideal of formal relations at a point ([`jets`],
//!   [`chevalley`]),
//! * exterior-power operators, kernel transfers between matrix blocks, and
//!   the supporting exact linear algebra ([`linalg`]),
//! * jet-space presentations of finitely generated ideals ([`ideals`]),
//! * sample-level semicontinuity checks of diagrams along arcs of fiber
//!   tuples ([`strata`]).
//!
//! A small session-file format ([`session`]) and a report layer ([`report`])
//! back the `jetdiagram` command-line binary; the `examples/` directory shows
//! the library API for each capability.

pub mod chevalley;
pub mod cli;
pub mod ideals;
pub mod jets;
pub mod linalg;
pub mod multiindex;
pub mod report;
pub mod scalar;
pub mod series;
pub mod session;
pub mod strata;

mod error;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
