//! Exact-arithmetic kernels for truncated p-typical Witt vectors, banal
//! matrix displays with a minuscule weight datum, their slope and nilpotence
//! invariants, lattice-coset point enumeration at finite truncation, and the
//! fixed-point solver for square-zero deformations.
//!
//! Everything is exact: finite coefficient rings are carried in canonical
//! normal form, integer polynomials use arbitrary precision, and all
//! valuation reads assert that the carried Witt precision is sufficient.
//!
//! The data-parallel enumeration kernels fan out over candidates with rayon
//! when the (default) `parallel` feature is enabled; compiled without it,
//! the same code paths run sequentially. Output never depends on the
//! schedule: every enumeration merges into a canonical order.

pub mod deform;
pub mod display;
pub mod error;
pub mod group;
pub mod intpoly;
pub mod matw;
pub mod par;
pub mod rings;
pub mod rz;
pub mod witt;

pub use error::{Error, Result};
