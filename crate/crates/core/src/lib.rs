//! Toric Del-Pezzo surfaces, their Landau-Ginzburg potentials and the
//! monodromy of critical points under coefficient loops.
//!
//! The crate is `no_std` (with `alloc`). Exact lattice computations live in
//! [`toric`]; numerical work (critical points, path tracking) in [`critsolve`]
//! and [`monodromy`]; the exceptional map and line-bundle cohomology in
//! [`hmscheck`].
#![no_std]

extern crate alloc;

pub mod cla;
pub mod critsolve;
pub mod error;
pub mod hmscheck;
pub mod intlin;
pub mod laurent;
pub mod monodromy;
pub mod toric;

pub use error::{CheckError, LatticeError, SolveError, TrackError};
pub use toric::{build_variety, ConeWeight, PicClass, TDivisor, ToricSurfaceData, VarietyKind};
