//! Heights, places and Weil functions over the rationals, and pointwise
//! reports for the Schmidt-type inequality.
//!
//! All local norms of rational data are themselves rational, so sums of
//! Weil functions and the product formula are checked as exact rational
//! products; logarithms appear only at report time.

mod factor;
mod schmidt;
mod weil;

pub use factor::{factorize, valuation};
pub use schmidt::{
    arithmetic_bound_coefficients, check_theorem_1_5, sample_conic_like_points,
    sample_projective_points, SchmidtMode, SchmidtPointRow, SchmidtReport,
};
pub use weil::{
    height, height_exact, norm_at, product_formula_check, sum_over_all_places_identity,
    weil_function, weil_norm_ratio,
};

use crate::algebra::Poly;
use crate::{Integer, Rational};
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HeightsError {
    #[error("input error: {0}")]
    Input(String),
    #[error("point lies on the divisor of {0}")]
    OnDivisor(String),
    #[error("factorization out of range: {0}")]
    FactorRange(String),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Bound(#[from] crate::bounds::BoundError),
}

/// A place of the rationals: the archimedean one or a finite prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl Place {
    pub fn parse(s: &str) -> Result<Self, HeightsError> {
        if s == "inf" || s == "infinity" || s == "oo" {
            return Ok(Place::Infinity);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| HeightsError::Input(format!("bad place `{s}`")))?;
        if !factor::is_prime_u64(p) {
            return Err(HeightsError::Input(format!("{p} is not prime")));
        }
        Ok(Place::Prime(p))
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// A projective rational point in primitive integer coordinates: gcd one,
/// first nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<Integer>,
}

impl RationalPoint {
    pub fn new(raw: Vec<Integer>) -> Result<Self, HeightsError> {
        if raw.iter().all(|c| c.is_zero()) {
            return Err(HeightsError::Input("zero coordinate vector".into()));
        }
        let mut g = Integer::zero();
        for c in &raw {
            g = g.gcd(c);
        }
        let mut coords: Vec<Integer> = raw.into_iter().map(|c| c / &g).collect();
        if coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
        {
            for c in &mut coords {
                *c = -c.clone();
            }
        }
        Ok(RationalPoint { coords })
    }

    pub fn from_rationals(raw: &[Rational]) -> Result<Self, HeightsError> {
        let mut denom = Integer::from(1);
        for r in raw {
            denom = denom.lcm(r.denom());
        }
        let ints = raw
            .iter()
            .map(|r| r.numer() * (&denom / r.denom()))
            .collect();
        Self::new(ints)
    }

    pub fn coords(&self) -> &[Integer] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Exact evaluation of a polynomial with rational coefficients at the
    /// primitive coordinates; integer when the polynomial has integer
    /// coefficients.
    pub fn evaluate(&self, p: &Poly) -> Rational {
        let pts: Vec<Rational> = self
            .coords
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        p.eval_rational(&pts)
    }

    /// Membership in the zero set of every generator.
    pub fn on_variety(&self, v: &crate::geometry::Variety) -> bool {
        v.ideal()
            .generators()
            .iter()
            .all(|g| self.evaluate(g).is_zero())
    }
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Homogeneous polynomial with integer coefficients of content one
/// (constructed from any rational form by clearing denominators).
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerForm {
    poly: Poly,
    degree: u32,
}

impl IntegerForm {
    pub fn new(form: &Poly) -> Result<Self, HeightsError> {
        let degree = form
            .homogeneous_degree()
            .ok_or_else(|| HeightsError::Input("form is not homogeneous".into()))?;
        if form.is_zero() {
            return Err(HeightsError::Input("zero form".into()));
        }
        // clear denominators, then divide by the content
        let mut denom_lcm = Integer::from(1);
        for (_, c) in form.terms() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let scaled = form.scale(&Rational::from_integer(denom_lcm));
        let mut content = Integer::zero();
        for (_, c) in scaled.terms() {
            debug_assert!(c.is_integer());
            content = content.gcd(c.numer());
        }
        let poly = scaled.scale(&Rational::new(Integer::from(1), content));
        Ok(IntegerForm { poly, degree })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Largest absolute coefficient (the archimedean norm of the form).
    pub fn max_abs_coefficient(&self) -> Integer {
        let mut best = Integer::zero();
        for (_, c) in self.poly.terms() {
            let a = c.numer().abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Exact integer value at a primitive point.
    pub fn evaluate(&self, x: &RationalPoint) -> Integer {
        let v = x.evaluate(&self.poly);
        debug_assert!(v.is_integer());
        v.numer().clone()
    }
}
