//! Exact surreal numbers at desk scale.
//!
//! Finite game forms with Conway's order and field operations, the dyadic
//! values they denote, sign expansions, the day-by-day construction, the
//! embeddings of familiar number systems, reciprocal and square-root
//! closures, and a Conway-normal-form layer for infinite and infinitesimal
//! values.

pub mod closure;
pub mod cnf;
pub mod days;
pub mod embed;
pub mod error;
pub mod gameform;
pub mod numeric;
pub mod ordinal;
pub mod signexp;
#[cfg(feature = "testing")]
pub mod testing;

pub use cnf::CnfSurreal;
pub use error::{Error, Result};
pub use gameform::{Context, FormId};
pub use numeric::{simplest_dyadic, BoundedInterval, Dyadic, Rational};
pub use ordinal::Ordinal;
pub use signexp::{Sign, SignExpansion};
