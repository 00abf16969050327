//! Shared numeric substrate: simplex quadrature, λ-series summation with
//! tail control, exact rational polynomial and Laurent-series algebra,
//! and special functions.

pub mod gauss;
pub mod mupoly;
pub mod poly;
pub mod series;
pub mod series_sum;
pub mod simplex;
pub mod special;

pub use poly::{MultiPoly, Rational, RingTag};
pub use series::{series_exp, FormalSeries};
pub use series_sum::{sum_lambda_series, SeriesValue};
pub use simplex::{monomial_simplex_integral, simplex_integrate, QuadratureScheme, SimplexRule};
pub use special::{gamma, hurwitz_zeta, reciprocal_gamma, EULER_GAMMA};
