//! Exact computation of logarithmic series solutions of A-hypergeometric
//! (GKZ) systems by Frobenius's method.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! - [`exact`]: big rationals, integer lattices, Hermite/Smith normal forms.
//! - [`poly`]: multivariate polynomials, weight orders, division.
//! - [`groebner`]: Buchberger's algorithm, saturation, membership.
//! - [`toric`]: toric ideals, initial ideals under a weight, g-vectors.
//! - [`pairs`]: standard pairs, the triangulation they induce, `C_w`, Core.
//! - [`exponents`]: fake exponents, negative supports, the `nsupp(v) ⊆ C_w` check.
//! - [`apolar`]: the ideals `P_B`, `P` and their apolar duals.
//! - [`logseries`]: perturbed coefficients, the log-series solutions and the
//!   operator-based verifier.
//!
//! [`pipeline`] wires the modules together for a single problem instance.

pub mod apolar;
pub mod error;
pub mod exact;
pub mod exponents;
pub mod groebner;
pub mod logseries;
pub mod pairs;
pub mod pipeline;
pub mod poly;
pub mod toric;

pub use error::{GkzError, Result};
pub use exact::{Int, IntMatrix, Rat, RatMatrix, RatVector};
pub use poly::{Monomial, Poly, Ring, TermOrder, VarKind};
