//! Exact Catalan numbers and a machine-checked convergence bound for their
//! generating function, derived from Segner's recursion alone.
//!
//! * [`exactnum`]: big rationals, certified intervals, harmonic sums, brackets
//!   for `zeta(2)`, `2 + pi^2/3` and `ln`.
//! * [`catalan`]: `C_n` by Segner's recursion, Euler's product and the
//!   central binomial coefficient.
//! * [`oracle`]: brute-force triangulation counts of convex polygons.
//! * [`series`]: truncated power series and Goldbach's quadratic.
//! * [`bounds`]: the induction quotient `g(n)`, its monotonicity, and
//!   [`bounds::BoundCertificate`]s for `C_n <= M^n / n^r`.
//! * [`asymptotics`]: empirical radius, Stirling ratio and exponent fits.

pub mod error;
pub mod asymptotics;
pub mod bounds;
pub mod catalan;
pub mod exactnum;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
