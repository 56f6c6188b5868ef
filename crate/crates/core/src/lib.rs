//! Exact computations with matroids, valuated matroids, tropical linear
//! spaces and Lorentzian polynomials.
//!
//! Ground sets are `{0, .., n-1}` internally and sets are `u64` bitmasks
//! (see [`subsets`]); all user-facing rendering is 1-based.

pub mod adjoint;
pub mod arith;
pub mod dressian;
pub mod error;
pub mod field;
pub mod gen;
pub mod limits;
pub mod lorentzian;
pub mod matroid;
pub mod subsets;
pub mod valuated;

pub use arith::{det, inertia, parse_rat, rat, trop_min_vanishes, Inertia, LaurentElem, Rat, SymMatrix, TropVal};
pub use error::{Error, Result};
pub use limits::Limits;
pub use lorentzian::{HomPoly, MConvexFn};
pub use matroid::Matroid;
pub use subsets::Mask;
pub use valuated::ValuatedMatroid;
