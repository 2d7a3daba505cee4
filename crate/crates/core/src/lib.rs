//! Exact computation with periodic standard Young tableaux, seminormal Hecke
//! modules, the double affine Hecke modules `V_lambda`, their weight bases and
//! spherical vector-valued Macdonald polynomials, connecting maps between
//! ranks, Pieri coefficients and truncated `q,t`-series identities.
//!
//! All scalars live in `Q(q,t)` and all arithmetic is exact.

pub mod coeffs;
pub mod daha;
pub mod hecke;
pub mod limits;
pub mod pieri;
pub mod series;
pub mod linalg;
pub mod spherical;
pub mod tableaux;
