//! Exact-arithmetic workbench for degenerate second main theorems.
//!
//! The crate is organised around six subsystems:
//!
//! - [`algebra`]: exact rational multivariate polynomials, Gröbner bases,
//!   Hilbert functions, dimension/degree extraction and elimination.
//! - [`geometry`]: codimension oracle over a projective variety, subgeneral
//!   position and Bézout-property checks, distributive constants, and the
//!   constructive subfamily selections.
//! - [`bounds`]: certified evaluation of the explicit constants `u`, `L`,
//!   `M0`, per-theorem total-defect bounds and error coefficients.
//! - [`weights`]: the embedding of a variety by a hypersurface family,
//!   Hilbert weights, and Chow-weight estimates with margin reports.
//! - [`nevanlinna`]: numerical Nevanlinna functions (characteristic,
//!   proximity, truncated counting) for exponential-polynomial curves on the
//!   plane, discs and annuli, with certified zero counting.
//! - [`heights`]: places, heights and Weil functions over the rationals,
//!   and pointwise Schmidt-type inequality reports.

pub mod algebra;
pub mod bounds;
pub mod geometry;
pub mod heights;
pub mod interval;
pub mod nevanlinna;
pub mod scene;
pub mod surd;
pub mod weights;

pub use algebra::{Ideal, Monomial, Poly, TermOrder};

pub use surd::QuadExt;

/// Workspace-wide rational scalar: arbitrary precision, always reduced.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;

use num_traits::{One, Zero};

/// `n!` as a big integer.
pub fn factorial(n: u64) -> Integer {
    let mut acc = Integer::one();
    for i in 2..=n {
        acc *= Integer::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a big integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * Integer::from(n - i) / Integer::from(i + 1);
    }
    acc
}

/// Rational from an integer pair, reduced.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..12u64 {
            for k in 0..=n {
                let lhs = binomial(n, k);
                let rhs = if k == 0 || k == n {
                    Integer::one()
                } else {
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                };
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), Integer::one());
        assert_eq!(factorial(5), Integer::from(120));
    }

    #[test]
    fn core_values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Poly>();
        assert_send_sync::<Ideal>();
        assert_send_sync::<Monomial>();
        assert_send_sync::<TermOrder>();
        assert_send_sync::<QuadExt>();
        assert_send_sync::<geometry::Variety>();
        assert_send_sync::<geometry::HypersurfaceFamily>();
        assert_send_sync::<geometry::FamilyContext>();
        assert_send_sync::<nevanlinna::expr::UnivariateExpr>();
        assert_send_sync::<nevanlinna::CurveAnalyzer>();
        assert_send_sync::<heights::RationalPoint>();
    }
}
