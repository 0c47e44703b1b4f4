//! Exact real root isolation for polynomials with real algebraic coefficients.

pub mod algebraic;
pub mod arith;
pub mod bench;
pub mod bounds;
pub mod direct;
pub mod error;
pub mod extfield;
pub mod indirect;
pub mod instance;
pub mod introot;
pub mod poly;
pub mod solve;

pub use arith::{Dyadic, DyadicInterval, Integer, Rational, Sign};
pub use error::{Error, Result};
pub use poly::{BiPoly, IntPoly, Poly, RatPoly};
pub use solve::{solve, Method, SolveOptions};
