//! Numerics for Orlicz-space operator bounds at desk scale.
//!
//! The crate has four layers:
//!
//! * [`young`] — Young functions with exact one-sided derivatives, their
//!   Lebesgue exponents, doubling/scaling verdicts, and the equivalent-
//!   function constructions.
//! * [`norms`] — distribution functions, `L^p` / weak `L^p`, Luxemburg and
//!   weak Orlicz norms of functions sampled on uniform periodic grids
//!   ([`gridfn::GridFunction`]).
//! * [`operators`] — discretized Fourier multipliers, pseudo-differential
//!   operators in any matrix quantization, and Fourier integral operators,
//!   together with the symbol/phase catalogs ([`symbols`], [`phases`]) and
//!   the condition functionals ([`conditions`]) that gate their mapping
//!   properties.
//! * [`thresholds`] — the interpolation window and order-threshold
//!   arithmetic connecting exponents to operator continuity.

pub mod conditions;
pub mod error;
pub mod grid;
pub mod gridfn;
pub mod norms;
pub mod operators;
pub mod phases;
pub mod spectral;
pub mod symbols;
pub mod thresholds;
pub mod young;

pub use error::{Error, Result};
pub use gridfn::GridFunction;
pub use young::YoungFunction;
