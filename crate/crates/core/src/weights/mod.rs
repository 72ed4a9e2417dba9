//! Hilbert weights and the Chow-weight machinery over the image of a
//! variety under a hypersurface family.
//!
//! The embedding sends `V` into projective space of dimension `q - 1` by the
//! normalised defining forms; its image ideal comes from block elimination
//! on the graph ideal. Hilbert weights are computed from the standard
//! monomials of a graded weight order, which realises the defining maximum
//! over all monomial bases (matroid greedy: processing monomials by
//! descending weight and keeping those independent modulo the ideal slice is
//! optimal, and that set is exactly the standard monomials of the order that
//! leads with the lowest-weight monomial).

mod chow;
mod curve_weights;
mod embed;

pub use chow::{
    chow_weight_estimate, verify_chow_lower_bound, verify_ef_inequality, ChowEstimate,
    ChowLowerBoundReport, EfMarginReport,
};
pub use curve_weights::{weights_from_curve_point, CurveWeightDiagnostics};
pub use embed::{embed_family, EmbeddedImage};

use crate::algebra::{AlgebraError, Budget, Ideal, QuotientBasis, TermOrder};
use crate::geometry::GeometryError;
use crate::{Rational, rat_int};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeightsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("base locus nonempty: the family has a common zero on the variety")]
    BaseLocusNonempty,
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error("input error: {0}")]
    Input(String),
}

/// Non-negative rational weight vector on the coordinates of the ambient
/// space of the ideal at hand.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, WeightsError> {
        if entries.iter().any(|e| e.is_negative()) {
            return Err(WeightsError::Input("weight entries must be >= 0".into()));
        }
        Ok(WeightVector(entries))
    }

    pub fn zeros(len: usize) -> Self {
        WeightVector(vec![Rational::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn max_entry(&self) -> Rational {
        self.0.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Result<Self, WeightsError> {
        if c.is_negative() {
            return Err(WeightsError::Input("scaling factor must be >= 0".into()));
        }
        Ok(WeightVector(self.0.iter().map(|e| e * c).collect()))
    }
}

/// The `u`-th Hilbert weight `S(u, c)`: the maximal total `c`-weight of a
/// monomial basis of the degree-`u` slice of the quotient ring.
pub fn hilbert_weight(
    ideal: &Ideal,
    u: u32,
    c: &WeightVector,
    budget: &Budget,
) -> Result<Rational, WeightsError> {
    if u == 0 {
        return Err(WeightsError::Input("hilbert_weight needs u >= 1".into()));
    }
    if c.len() != ideal.nvars() {
        return Err(WeightsError::Input(format!(
            "weight vector length {} does not match {} variables",
            c.len(),
            ideal.nvars()
        )));
    }
    let order = max_weight_order(c);
    let qb = QuotientBasis::with_order(ideal, &order, budget)?;
    let mut total = Rational::zero();
    for m in qb.standard_monomials(u, budget)? {
        total += monomial_weight(&m, c);
    }
    Ok(total)
}

/// Term order whose degree-`u` standard monomials form the maximum-weight
/// basis: leading monomials are the `c`-lightest (shifted so the weight
/// vector stays non-negative, which on homogeneous slices is equivalent).
pub(crate) fn max_weight_order(c: &WeightVector) -> TermOrder {
    let negated: Vec<Rational> = c.entries().iter().map(|w| -w.clone()).collect();
    TermOrder::weight_shifted(&negated)
}

pub(crate) fn monomial_weight(m: &crate::algebra::Monomial, c: &WeightVector) -> Rational {
    let mut acc = Rational::zero();
    for (e, w) in m.exponents().iter().zip(c.entries()) {
        if *e > 0 {
            acc += w * rat_int(*e as i64);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::{rat, rat_int};

    fn conic_image() -> Ideal {
        Ideal::new(3, vec![parse_poly("x0*x2 - x1^2", 3).unwrap()]).unwrap()
    }

    fn weights(v: &[i64]) -> WeightVector {
        WeightVector::new(v.iter().map(|&x| rat_int(x)).collect()).unwrap()
    }

    #[test]
    fn full_space_weight() {
        // zero ideal on P^1, u = 2, c = (1,0): basis {x0^2, x0 x1, x1^2} -> 3
        let s = hilbert_weight(&Ideal::zero(2), 2, &weights(&[1, 0]), &Budget::default()).unwrap();
        assert_eq!(s, rat_int(3));
    }

    #[test]
    fn zero_weight_vector() {
        let s = hilbert_weight(&conic_image(), 2, &weights(&[0, 0, 0]), &Budget::default()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn degree_one_is_forced() {
        // no choice in degree 1 on the conic: S = c0 + c1 + c2 restricted to 1
        let s = hilbert_weight(&conic_image(), 1, &weights(&[1, 0, 0]), &Budget::default()).unwrap();
        assert_eq!(s, rat_int(1));
    }

    #[test]
    fn conic_picks_heavier_basis() {
        // u = 2, c = (1,0,0): bases drop either y0y2 (weight 1) or y1^2
        // (weight 0); the maximum keeps y0y2, total 4
        let s = hilbert_weight(&conic_image(), 2, &weights(&[1, 0, 0]), &Budget::default()).unwrap();
        assert_eq!(s, rat_int(4));
    }

    #[test]
    fn weight_homogeneity() {
        // S(u, lambda c) = lambda S(u, c)
        let c = weights(&[2, 1, 0]);
        let s1 = hilbert_weight(&conic_image(), 3, &c, &Budget::default()).unwrap();
        let scaled = c.scale(&rat(7, 3)).unwrap();
        let s2 = hilbert_weight(&conic_image(), 3, &scaled, &Budget::default()).unwrap();
        assert_eq!(s2, rat(7, 3) * s1);
    }
}
