//! Exact q-calculus kernel.
//!
//! The crate works over `Q(q)`, the field of rational functions in an
//! indeterminate `q`, and treats every expression in `[x]_q` as a polynomial
//! in the symbol `U = [x]_q` (see [`exact::UPoly`]). On top of that sit:
//!
//! - [`qcalc`]: q-integers, q-factorials, Gaussian binomials, the
//!   q-difference operator and the competing q-Stirling families;
//! - [`bernstein`]: Kim's q-Bernstein basis, its power-basis conversion
//!   matrices and the q-Bernstein operator;
//! - [`carlitz`]: Carlitz q-Bernoulli numbers as moments of the p-adic
//!   q-integral, and the (inverse) higher-order families;
//! - [`padic`]: truncated p-adic arithmetic and Riemann-sum probes that
//!   corroborate the integral numerically;
//! - [`audit`]: the identity registry and the verdict engine;
//! - [`cli`]: the `qkernel` command-line front end.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod audit;
pub mod bernstein;
pub mod carlitz;
pub mod cli;
pub mod exact;
pub mod padic;
pub mod qcalc;

mod error;

pub use error::{Error, Result};
pub use exact::{QPoly, QRat, Rational, UPoly};
