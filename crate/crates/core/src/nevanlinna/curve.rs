use super::expr::UnivariateExpr;
use super::NevanlinnaError;
use crate::algebra::compose;
use crate::geometry::Variety;

/// Where the curve lives: the plane, a finite disc, or an annulus
/// `1/R0 < |z| < R0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Plane,
    Disc { radius: f64 },
    Annulus { r0: f64 },
}

impl Domain {
    /// Base radius of the counting integrals: 1 on the plane and the
    /// annulus, `R/2` on a disc of radius `R` (recorded in every report).
    pub fn base_radius(&self) -> f64 {
        match self {
            Domain::Plane | Domain::Annulus { .. } => 1.0,
            Domain::Disc { radius } => radius / 2.0,
        }
    }

    /// Is `r` a legal evaluation radius?
    pub fn admits(&self, r: f64) -> bool {
        match self {
            Domain::Plane => r > 0.0,
            Domain::Disc { radius } => r > 0.0 && r < *radius,
            Domain::Annulus { r0 } => r > 1.0 && r < *r0,
        }
    }
}

/// A holomorphic curve in reduced representation: `n+1` exponential
/// polynomial components on a domain, optionally constrained to a target
/// variety (membership checked symbolically on construction).
#[derive(Debug, Clone)]
pub struct CurveSpec {
    components: Vec<UnivariateExpr>,
    domain: Domain,
    variety: Option<Variety>,
}

impl CurveSpec {
    pub fn new(
        components: Vec<UnivariateExpr>,
        domain: Domain,
        variety: Option<Variety>,
    ) -> Result<Self, NevanlinnaError> {
        if components.len() < 2 {
            return Err(NevanlinnaError::Input(
                "a curve needs at least two components".into(),
            ));
        }
        if components.iter().all(|c| c.is_zero()) {
            return Err(NevanlinnaError::Input(
                "all components are identically zero".into(),
            ));
        }
        match domain {
            Domain::Disc { radius } if !(radius.is_finite() && radius > 0.0) => {
                return Err(NevanlinnaError::Input("disc radius must be positive".into()));
            }
            Domain::Annulus { r0 } if !(r0.is_finite() && r0 > 1.0) => {
                return Err(NevanlinnaError::Input(
                    "annulus parameter must satisfy R0 > 1".into(),
                ));
            }
            _ => {}
        }
        if !matches!(domain, Domain::Annulus { .. })
            && components.iter().any(|c| !c.is_entire())
        {
            return Err(NevanlinnaError::Input(
                "Laurent components are only allowed on an annulus".into(),
            ));
        }
        if let Some(v) = &variety {
            if v.nvars() != components.len() {
                return Err(NevanlinnaError::Input(format!(
                    "curve has {} components but the variety lives in P^{}",
                    components.len(),
                    v.ambient()
                )));
            }
            for g in v.ideal().generators() {
                let pulled = compose(g, &components)?;
                if !pulled.is_zero() {
                    return Err(NevanlinnaError::Input(format!(
                        "curve does not map into the variety: generator {g} pulls back to {pulled}"
                    )));
                }
            }
        }
        Ok(CurveSpec {
            components,
            domain,
            variety,
        })
    }

    pub fn components(&self) -> &[UnivariateExpr] {
        &self.components
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn variety(&self) -> Option<&Variety> {
        self.variety.as_ref()
    }

    /// Ambient projective dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.components.len() - 1
    }
}
