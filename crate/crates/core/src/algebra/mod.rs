//! Exact rational multivariate polynomial algebra.
//!
//! Everything geometric in this workbench reduces to questions about
//! homogeneous ideals over the rationals, answered here: reduced Gröbner
//! bases (Buchberger), Hilbert functions via standard monomials, projective
//! dimension and degree from difference tables, and block elimination.

mod compose;
mod groebner;
mod hilbert;
mod monomial;
mod order;
mod parse;
mod poly;

pub use compose::compose;
pub use groebner::{groebner_basis, reduce_fully, GroebnerBasis};
pub use hilbert::{dimension_and_degree, hilbert_function, QuotientBasis};
pub use monomial::Monomial;
pub use order::TermOrder;
pub use parse::parse_poly;
pub use poly::Poly;

use crate::Rational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("non-homogeneous generator: {0}")]
    NonHomogeneous(String),
    #[error("zero generator at position {0}")]
    ZeroGenerator(usize),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Caps on the exact-algebra engine. Exceeding a cap is a reported
/// [`AlgebraError::Resource`], never silent truncation.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum number of polynomials held in a Gröbner basis under construction.
    pub max_basis: usize,
    /// Maximum plain total degree of any basis element.
    pub max_degree: u32,
    /// Maximum number of monomials enumerated in one graded slice.
    pub max_slice_monomials: u64,
    /// Largest degree probed while hunting for the Hilbert polynomial.
    pub max_hilbert_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis: 5000,
            max_degree: 40,
            max_slice_monomials: 4_000_000,
            max_hilbert_degree: 64,
        }
    }
}

/// A homogeneous ideal: validated generators plus the variable grading.
///
/// Weights default to 1 on every variable; the embedding machinery grades
/// image variables by the common degree of the defining forms.
#[derive(Debug, Clone, PartialEq)]
pub struct Ideal {
    nvars: usize,
    weights: Vec<u32>,
    gens: Vec<Poly>,
}

impl Ideal {
    /// Standard-graded ideal; rejects zero or non-homogeneous generators.
    pub fn new(nvars: usize, gens: Vec<Poly>) -> Result<Self, AlgebraError> {
        Self::new_weighted(nvars, vec![1; nvars], gens)
    }

    pub fn new_weighted(
        nvars: usize,
        weights: Vec<u32>,
        gens: Vec<Poly>,
    ) -> Result<Self, AlgebraError> {
        assert_eq!(weights.len(), nvars);
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() {
                return Err(AlgebraError::ZeroGenerator(i));
            }
            if g.nvars() != nvars {
                return Err(AlgebraError::Input(format!(
                    "generator {i} lives in {} variables, ideal in {nvars}",
                    g.nvars()
                )));
            }
            if g.weighted_degree(&weights).is_none() {
                return Err(AlgebraError::NonHomogeneous(g.to_string()));
            }
        }
        Ok(Ideal {
            nvars,
            weights,
            gens,
        })
    }

    /// The zero ideal (empty generator list).
    pub fn zero(nvars: usize) -> Self {
        Ideal {
            nvars,
            weights: vec![1; nvars],
            gens: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// New ideal with extra generators appended (same ring).
    pub fn extended(&self, extra: impl IntoIterator<Item = Poly>) -> Result<Self, AlgebraError> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new_weighted(self.nvars, self.weights.clone(), gens)
    }

    /// Membership test via full reduction against a Gröbner basis.
    pub fn contains(&self, p: &Poly, budget: &Budget) -> Result<bool, AlgebraError> {
        if p.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        let gb = groebner_basis(self, &TermOrder::Grevlex, budget)?;
        Ok(reduce_fully(p, gb.polys(), &TermOrder::Grevlex).is_zero())
    }
}

/// Mutual helper: normalize a rational to have denominator 1 display form.
pub(crate) fn coeff_to_string(c: &Rational) -> String {
    if c.denom() == &crate::Integer::from(1) {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Eliminate all variables outside `keep`: returns generators of the
/// elimination ideal, still expressed in the full ring.
pub fn eliminate(
    ideal: &Ideal,
    keep: &std::collections::BTreeSet<usize>,
    budget: &Budget,
) -> Result<Ideal, AlgebraError> {
    if keep.is_empty() {
        return Err(AlgebraError::Input("eliminate: empty keep set".into()));
    }
    if keep.iter().any(|&v| v >= ideal.nvars()) {
        return Err(AlgebraError::Input("eliminate: variable out of range".into()));
    }
    let eliminated: Vec<usize> = (0..ideal.nvars()).filter(|v| !keep.contains(v)).collect();
    if eliminated.is_empty() {
        let gb = groebner_basis(ideal, &TermOrder::Grevlex, budget)?;
        return Ideal::new_weighted(ideal.nvars, ideal.weights.clone(), gb.polys().to_vec());
    }
    let order = TermOrder::Elimination {
        eliminated: eliminated.clone(),
    };
    let gb = groebner_basis(ideal, &order, budget)?;
    let kept_gens: Vec<Poly> = gb
        .polys()
        .iter()
        .filter(|p| p.support_within(keep))
        .cloned()
        .collect();
    Ideal::new_weighted(ideal.nvars, ideal.weights.clone(), kept_gens)
}

/// Re-express an ideal whose generators only involve `keep` in a fresh ring
/// on those variables (in ascending index order), regraded to the given
/// weights.
pub fn project_ideal(
    ideal: &Ideal,
    keep: &std::collections::BTreeSet<usize>,
    new_weights: Vec<u32>,
) -> Result<Ideal, AlgebraError> {
    let map: Vec<usize> = keep.iter().copied().collect();
    assert_eq!(map.len(), new_weights.len());
    let mut gens = Vec::new();
    for g in ideal.generators() {
        if !g.support_within(keep) {
            return Err(AlgebraError::Input(
                "project_ideal: generator involves eliminated variable".into(),
            ));
        }
        gens.push(g.project(&map));
    }
    Ideal::new_weighted(map.len(), new_weights, gens)
}
