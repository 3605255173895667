//! Exact computations around the p-typical formal group law of height
//! `n + 1`: its congruences, the Weierstrass factorization of its p-series,
//! arithmetic in the resulting discrete valuation ring, the reduced power
//! operation `N̄`, and the weight-descent loop built on it.
//!
//! All arithmetic is exact. The series machinery is generic over the scalar
//! ring (see [`Scalar`]); the aliases below fix the two rings actually used.

pub mod descent;
pub mod dvr;
pub mod error;
pub mod fgl;
pub mod isogeny;
pub mod report;
pub mod scalar;
pub mod series;
pub mod useries;
pub mod weight;

pub use error::{Error, Result};
pub use scalar::{is_p_integral, reduce_mod_p, Fp, PLocalRational, PrimeFieldElement, Scalar};
pub use series::{Layout, Monomial, MultiSeries};
pub use useries::USeries;
pub use weight::WeightValue;

/// Series with exact rational coefficients (the characteristic-zero stage).
pub type RationalSeries = MultiSeries<PLocalRational>;

/// Series with coefficients in 𝔽_P.
pub type ModSeries<const P: u32> = MultiSeries<Fp<P>>;
