//! Computer-algebra toolkit relating rank-2 projective bundles over the
//! projective plane to hypersurfaces of P⁴ containing the line
//! `ℓ = Z(X0, X1, X2)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactpoly`]: rational scalars and sparse multivariate polynomials over
//!   named variable rings, ordered by graded reverse lexicographic order.
//! - [`groebner`]: reduced Gröbner bases, ideal membership, saturation and
//!   Hilbert-series based scheme metrics (emptiness, dimension, length).
//! - [`chow`]: Chern classes from line-bundle presentations, section counts,
//!   stability verdicts and the Chow rings of the two 3-folds compared.
//! - [`geometry`]: section triples `(f, g, h)`, the hypersurface
//!   `F = f + U·g + W·h` and its Jacobian analysis along `ℓ`.
//! - [`blowup`]: the nine-chart atlas of the blow-up of P⁴ along `ℓ`,
//!   strict transforms and chart-local smoothness certificates.

pub mod blowup;
pub mod chow;
pub mod exactpoly;
pub mod geometry;
pub mod groebner;

pub use exactpoly::{Homogeneity, Monomial, Poly, PolyError, RingRef, VarRing};
pub use groebner::{GbOptions, GroebnerBasis, GroebnerError, Ideal, SchemeMetrics};

