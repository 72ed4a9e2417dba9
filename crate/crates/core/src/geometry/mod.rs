//! Codimension oracle and the combinatorial layer over it: subgeneral
//! position, Bézout properties, distributive constants, and the two
//! constructive subfamily selections.

mod context;
mod report;
mod select;
pub mod subsets;

pub use context::{Convention, FamilyContext, PositionVerdict};
pub use report::FamilyReport;
pub use select::{
    ceil_card_bound, select_subfamily_bezout, select_subfamily_weak_bezout, tau, BezoutSelection,
    Selection,
};

use crate::algebra::{dimension_and_degree, AlgebraError, Budget, Ideal, Poly};
use crate::Integer;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("variety must have dimension >= 1, got {0}")]
    DimensionTooSmall(i64),
    #[error("hypersurface {index} (1-based) contains the variety")]
    ContainsVariety { index: usize },
    #[error("subset {subset:?} meets the variety in codimension 0; input is likely reducible")]
    ZeroCodimension { subset: Vec<usize> },
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("lemma postcondition failed: {0}")]
    LemmaViolation(String),
}

/// A projective variety `V` in `P^n` given by a homogeneous ideal, with its
/// dimension and degree computed once on construction. Smoothness is caller
/// metadata and is never verified; primality of the ideal is not verified
/// either, so every downstream report carries that caveat.
#[derive(Debug, Clone)]
pub struct Variety {
    ambient: usize,
    ideal: Ideal,
    dim: i64,
    degree: Integer,
    declared_smooth: bool,
}

impl Variety {
    pub fn new(ideal: Ideal, declared_smooth: bool, budget: &Budget) -> Result<Self, GeometryError> {
        let ambient = ideal.nvars() - 1;
        let (dim, degree) = dimension_and_degree(&ideal, budget)?;
        if dim < 1 {
            return Err(GeometryError::DimensionTooSmall(dim));
        }
        Ok(Variety {
            ambient,
            ideal,
            dim,
            degree: degree.expect("nonnegative dimension implies a degree"),
            declared_smooth,
        })
    }

    /// `P^n` itself (zero ideal).
    pub fn projective_space(n: usize) -> Self {
        assert!(n >= 1);
        Variety {
            ambient: n,
            ideal: Ideal::zero(n + 1),
            dim: n as i64,
            degree: Integer::from(1),
            declared_smooth: true,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient + 1
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Projective dimension `k`.
    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn degree(&self) -> &Integer {
        &self.degree
    }

    pub fn declared_smooth(&self) -> bool {
        self.declared_smooth
    }
}

/// A family of hypersurfaces by defining forms, with their degrees and the
/// least common multiple `d` used for normalisation.
#[derive(Debug, Clone)]
pub struct HypersurfaceFamily {
    forms: Vec<Poly>,
    degrees: Vec<u32>,
    lcm_degree: u32,
}

impl HypersurfaceFamily {
    pub fn new(nvars: usize, forms: Vec<Poly>) -> Result<Self, GeometryError> {
        if forms.is_empty() {
            return Err(GeometryError::Input("empty hypersurface family".into()));
        }
        let mut degrees = Vec::with_capacity(forms.len());
        for (i, f) in forms.iter().enumerate() {
            if f.nvars() != nvars {
                return Err(GeometryError::Input(format!(
                    "form {} lives in {} variables, expected {nvars}",
                    i + 1,
                    f.nvars()
                )));
            }
            if f.is_zero() {
                return Err(GeometryError::Input(format!("form {} is zero", i + 1)));
            }
            match f.homogeneous_degree() {
                Some(d) if d > 0 => degrees.push(d),
                _ => {
                    return Err(GeometryError::Input(format!(
                        "form {} is not homogeneous of positive degree",
                        i + 1
                    )))
                }
            }
        }
        let lcm_degree = degrees.iter().fold(1u32, |acc, &d| num_integer::lcm(acc, d));
        Ok(HypersurfaceFamily {
            forms,
            degrees,
            lcm_degree,
        })
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[Poly] {
        &self.forms
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `d = lcm(d_1, ..., d_q)`.
    pub fn lcm_degree(&self) -> u32 {
        self.lcm_degree
    }

    /// Forms raised to `d/d_i` so all share degree `d`.
    pub fn normalized_forms(&self) -> Vec<Poly> {
        self.forms
            .iter()
            .zip(&self.degrees)
            .map(|(f, &d)| f.pow(self.lcm_degree / d))
            .collect()
    }
}
