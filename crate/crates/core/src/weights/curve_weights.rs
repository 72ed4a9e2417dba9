use super::WeightsError;
use crate::algebra::compose;
use crate::geometry::HypersurfaceFamily;
use crate::nevanlinna::expr::UnivariateExpr;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Default, Serialize)]
pub struct CurveWeightDiagnostics {
    /// Indices (1-based) where the raw weight came out negative and was
    /// clamped to zero; a representation-scaling anomaly worth inspecting.
    pub clamped_negative: Vec<usize>,
    /// Raw values before clamping.
    pub raw: Vec<f64>,
}

/// Pointwise weight vector `c_j = log( ||f(z)||^d / |D_j(f)(z)| )` from a
/// curve and a family at one point of the domain.
///
/// Entries are non-negative when the norm dominates the normalised forms;
/// negative values are clamped to zero and reported in the diagnostics.
pub fn weights_from_curve_point(
    components: &[UnivariateExpr],
    family: &HypersurfaceFamily,
    z: Complex64,
) -> Result<(Vec<f64>, CurveWeightDiagnostics), WeightsError> {
    let d = family.lcm_degree();
    let norm_sq: f64 = components.iter().map(|f| f.eval(z).norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(WeightsError::Input(
            "all curve components vanish at the point (not a reduced representation)".into(),
        ));
    }
    let log_norm = 0.5 * norm_sq.ln();
    let mut weights = Vec::with_capacity(family.len());
    let mut diag = CurveWeightDiagnostics::default();
    for (j, form) in family.normalized_forms().iter().enumerate() {
        let value = compose(form, components)?.eval(z);
        let abs = value.norm();
        if abs == 0.0 {
            return Err(WeightsError::Input(format!(
                "point lies on the pullback of hypersurface {} (D_j(f)(z) = 0)",
                j + 1
            )));
        }
        let c = d as f64 * log_norm - abs.ln();
        diag.raw.push(c);
        if c < 0.0 {
            diag.clamped_negative.push(j + 1);
            weights.push(0.0);
        } else {
            weights.push(c);
        }
    }
    Ok((weights, diag))
}
