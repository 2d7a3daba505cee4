//! Exact scalars: the field `Q(q,t)` and truncated Laurent series in `t` over `Q(q)`.

mod parse;
pub mod poly;
pub mod ratfun;
pub mod series;

pub use poly::PolynomialQT;
pub use ratfun::{ratfun_equal, RationalFunctionQT};
pub use series::{t_series_expand, TLaurentSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand used throughout the crate.
pub type Scalar = RationalFunctionQT;

/// `[k]_t = 1 + t + ... + t^(k-1)`.
pub fn t_integer(k: usize) -> Scalar {
    Scalar::from_poly(PolynomialQT::from_terms((0..k as u32).map(|j| ((0, j), 1))))
}

/// `[k]_t! = [1]_t [2]_t ... [k]_t`.
pub fn t_factorial(k: usize) -> Scalar {
    (1..=k).fold(Scalar::one(), |acc, j| acc * t_integer(j))
}
