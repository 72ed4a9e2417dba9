use super::curve::{CurveSpec, Domain};
use super::expr::UnivariateExpr;
use super::quadrature::circle_average;
use super::zeros::{count_zeros, DivisorSample, Region};
use super::NevanlinnaError;
use crate::algebra::{compose, Poly};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Sampled function of the radius with the per-point quadrature tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct RadialSeries {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub achieved_tol: Vec<f64>,
}

impl RadialSeries {
    /// Least-squares slope of `value` against `ln r` over the upper half of
    /// the grid (the tail, where asymptotics dominate).
    pub fn tail_slope(&self) -> f64 {
        let n = self.grid.len();
        let start = n / 2;
        let xs: Vec<f64> = self.grid[start..].iter().map(|r| r.ln()).collect();
        let ys = &self.values[start..];
        let m = xs.len() as f64;
        let mean_x = xs.iter().sum::<f64>() / m;
        let mean_y = ys.iter().sum::<f64>() / m;
        let mut num = 0.0;
        let mut den = 0.0;
        for (x, y) in xs.iter().zip(ys) {
            num += (x - mean_x) * (y - mean_y);
            den += (x - mean_x) * (x - mean_x);
        }
        num / den
    }
}

/// Log-spaced grid of `steps` points in `[a, b]`.
pub fn log_grid(a: f64, b: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2 && a > 0.0 && b > a);
    let la = a.ln();
    let lb = b.ln();
    (0..steps)
        .map(|i| (la + (lb - la) * i as f64 / (steps - 1) as f64).exp())
        .collect()
}

/// Settings for the numerical layer.
#[derive(Debug, Clone)]
pub struct AnalyzerSettings {
    pub tolerance: f64,
    pub max_quad_points: usize,
}

impl Default for AnalyzerSettings {
    fn default() -> Self {
        AnalyzerSettings {
            tolerance: 1e-6,
            max_quad_points: 1 << 20,
        }
    }
}

/// Numerical Nevanlinna functions of one curve, with divisor samples cached
/// per composed expression and reused across radii.
pub struct CurveAnalyzer {
    curve: CurveSpec,
    settings: AnalyzerSettings,
    divisors: Mutex<HashMap<String, Arc<DivisorSample>>>,
}

/// A value together with the quadrature tolerance it achieved.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Measured {
    pub value: f64,
    pub achieved_tol: f64,
}

impl CurveAnalyzer {
    pub fn new(curve: CurveSpec) -> Self {
        Self::with_settings(curve, AnalyzerSettings::default())
    }

    pub fn with_settings(curve: CurveSpec, settings: AnalyzerSettings) -> Self {
        CurveAnalyzer {
            curve,
            settings,
            divisors: Mutex::new(HashMap::new()),
        }
    }

    pub fn curve(&self) -> &CurveSpec {
        &self.curve
    }

    pub fn settings(&self) -> &AnalyzerSettings {
        &self.settings
    }

    fn log_norm(&self, z: Complex64) -> f64 {
        let s: f64 = self
            .curve
            .components()
            .iter()
            .map(|c| c.eval(z).norm_sqr())
            .sum();
        0.5 * s.ln()
    }

    fn check_radius(&self, r: f64) -> Result<(), NevanlinnaError> {
        if !self.curve.domain().admits(r) {
            return Err(NevanlinnaError::Input(format!(
                "radius {r} outside the domain {:?}",
                self.curve.domain()
            )));
        }
        Ok(())
    }

    /// Characteristic function by circle averages of `log ||f||`:
    /// plane/disc `T(r) = avg_r - avg_{r0}`, annulus
    /// `T0(r) = avg_r + avg_{1/r} - 2 avg_1`.
    pub fn characteristic(&self, r: f64) -> Result<Measured, NevanlinnaError> {
        self.check_radius(r)?;
        let g = |z: Complex64| self.log_norm(z);
        let tol = self.settings.tolerance;
        let maxp = self.settings.max_quad_points;
        match self.curve.domain() {
            Domain::Plane | Domain::Disc { .. } => {
                let base = self.curve.domain().base_radius();
                let a = circle_average(&g, r, tol, maxp)?;
                let b = circle_average(&g, base, tol, maxp)?;
                Ok(Measured {
                    value: a.value - b.value,
                    achieved_tol: a.achieved_tol + b.achieved_tol,
                })
            }
            Domain::Annulus { .. } => {
                let a = circle_average(&g, r, tol, maxp)?;
                let b = circle_average(&g, 1.0 / r, tol, maxp)?;
                let c = circle_average(&g, 1.0, tol, maxp)?;
                Ok(Measured {
                    value: a.value + b.value - 2.0 * c.value,
                    achieved_tol: a.achieved_tol + b.achieved_tol + 2.0 * c.achieved_tol,
                })
            }
        }
    }

    pub fn characteristic_series(&self, grid: &[f64]) -> Result<RadialSeries, NevanlinnaError> {
        let mut values = Vec::with_capacity(grid.len());
        let mut tols = Vec::with_capacity(grid.len());
        for &r in grid {
            let m = self.characteristic(r)?;
            values.push(m.value);
            tols.push(m.achieved_tol);
        }
        Ok(RadialSeries {
            grid: grid.to_vec(),
            values,
            achieved_tol: tols,
        })
    }

    /// Pull back a defining form through the curve; degeneracy error when
    /// the curve lies inside the hypersurface.
    pub fn pullback(&self, q: &Poly) -> Result<UnivariateExpr, NevanlinnaError> {
        let composed = compose(q, self.curve.components())?;
        if composed.is_zero() {
            return Err(NevanlinnaError::Degenerate(format!(
                "curve is contained in the hypersurface {q}"
            )));
        }
        Ok(composed)
    }

    /// Divisor of an expression on the region needed to analyse radius `r`,
    /// cached and grown on demand.
    pub fn divisor_for(
        &self,
        expr: &UnivariateExpr,
        r: f64,
    ) -> Result<Arc<DivisorSample>, NevanlinnaError> {
        let key = expr.cache_key();
        {
            let cache = self.divisors.lock().unwrap();
            if let Some(sample) = cache.get(&key) {
                if sample.certification.effective_region.outer() >= r {
                    return Ok(sample.clone());
                }
            }
        }
        let outer = r * 1.05 + 0.1;
        let region = match self.curve.domain() {
            Domain::Plane | Domain::Disc { .. } => Region::Disc { radius: outer },
            Domain::Annulus { .. } => Region::Band {
                inner: 1.0 / outer,
                outer,
            },
        };
        let sample = Arc::new(count_zeros(expr, region)?);
        self.divisors.lock().unwrap().insert(key, sample.clone());
        Ok(sample)
    }

    /// Truncated counting function `N^[M]` of the pullback divisor of `q`,
    /// integrated exactly between zero radii (piecewise logarithm).
    pub fn counting(&self, q: &Poly, trunc: Option<u64>, r: f64) -> Result<f64, NevanlinnaError> {
        let composed = self.pullback(q)?;
        self.counting_of_expr(&composed, trunc, r)
    }

    pub fn counting_of_expr(
        &self,
        expr: &UnivariateExpr,
        trunc: Option<u64>,
        r: f64,
    ) -> Result<f64, NevanlinnaError> {
        self.check_radius(r)?;
        let sample = self.divisor_for(expr, r)?;
        let mut total = 0.0;
        match self.curve.domain() {
            Domain::Plane | Domain::Disc { .. } => {
                let base = self.curve.domain().base_radius();
                for z in &sample.zeros {
                    let rho = z.location.norm();
                    if rho <= r {
                        let mult = truncated(z.multiplicity, trunc) as f64;
                        total += mult * (r / rho.max(base)).ln().max(0.0);
                    }
                }
            }
            Domain::Annulus { .. } => {
                for z in &sample.zeros {
                    let rho = z.location.norm();
                    let mult = truncated(z.multiplicity, trunc) as f64;
                    if (1.0..=r).contains(&rho) {
                        total += mult * (r / rho).ln();
                    } else if rho < 1.0 && rho >= 1.0 / r {
                        total += mult * (r * rho).ln();
                    }
                }
            }
        }
        Ok(total)
    }

    /// Nudge `r` away from divisor points of the given expressions so the
    /// proximity integrand stays regular on the integration circles
    /// (at most three steps of `1e-6 max(1, r)`, recorded by the caller).
    pub fn safe_radius(
        &self,
        exprs: &[&UnivariateExpr],
        r: f64,
    ) -> Result<(f64, u32), NevanlinnaError> {
        let mut r_eff = r;
        let mut moves = 0u32;
        'outer: for _ in 0..3 {
            for expr in exprs {
                let sample = self.divisor_for(expr, r_eff * 1.01)?;
                let near = sample.zeros.iter().any(|z| {
                    let rho = z.location.norm();
                    (rho - r_eff).abs() < 1e-7
                        || (matches!(self.curve.domain(), Domain::Annulus { .. })
                            && (rho - 1.0 / r_eff).abs() < 1e-7)
                });
                if near {
                    r_eff += 1e-6 * r_eff.max(1.0);
                    moves += 1;
                    continue 'outer;
                }
            }
            return Ok((r_eff, moves));
        }
        Ok((r_eff, moves))
    }

    /// Proximity function of `q` at radius `r` per the circle-average
    /// definitions (base circle subtracted on plane/disc; the three-circle
    /// combination on the annulus, with the norm raised to `deg q`
    /// throughout so the first main theorem is an identity).
    pub fn proximity(&self, q: &Poly, r: f64) -> Result<Measured, NevanlinnaError> {
        let composed = self.pullback(q)?;
        self.proximity_of_expr(&composed, q.homogeneous_degree().unwrap_or(0), r)
    }

    pub fn proximity_of_expr(
        &self,
        expr: &UnivariateExpr,
        degree: u32,
        r: f64,
    ) -> Result<Measured, NevanlinnaError> {
        self.check_radius(r)?;
        let d = degree as f64;
        let g = |z: Complex64| d * self.log_norm(z) - expr.eval(z).norm().ln();
        let tol = self.settings.tolerance;
        let maxp = self.settings.max_quad_points;
        match self.curve.domain() {
            Domain::Plane | Domain::Disc { .. } => {
                let base = self.curve.domain().base_radius();
                let a = circle_average(&g, r, tol, maxp)?;
                let b = circle_average(&g, base, tol, maxp)?;
                Ok(Measured {
                    value: a.value - b.value,
                    achieved_tol: a.achieved_tol + b.achieved_tol,
                })
            }
            Domain::Annulus { .. } => {
                let a = circle_average(&g, r, tol, maxp)?;
                let b = circle_average(&g, 1.0 / r, tol, maxp)?;
                let c = circle_average(&g, 1.0, tol, maxp)?;
                Ok(Measured {
                    value: a.value + b.value - 2.0 * c.value,
                    achieved_tol: a.achieved_tol + b.achieved_tol + 2.0 * c.achieved_tol,
                })
            }
        }
    }
}

fn truncated(mult: u32, trunc: Option<u64>) -> u64 {
    match trunc {
        Some(m) => (mult as u64).min(m),
        None => mult as u64,
    }
}

/// One row of a first-main-theorem check.
#[derive(Debug, Clone, Serialize)]
pub struct FmtRow {
    pub r: f64,
    pub t: f64,
    pub m: f64,
    pub n: f64,
    pub residual: f64,
    pub quad_tol: f64,
}

/// First-main-theorem verification: `residual = d T - m - N` per grid point.
/// On the plane and discs the pass criterion is the residual's range; on the
/// annulus the identity is exact, so each point must vanish individually.
#[derive(Debug, Clone, Serialize)]
pub struct FmtReport {
    pub rows: Vec<FmtRow>,
    pub base_radius: f64,
    pub radius_perturbations: u32,
    pub residual_range: f64,
    pub max_abs_residual: f64,
    pub allowance: f64,
    pub pass: bool,
}

pub fn verify_fmt(
    analyzer: &CurveAnalyzer,
    q: &Poly,
    grid: &[f64],
) -> Result<FmtReport, NevanlinnaError> {
    let composed = analyzer.pullback(q)?;
    let d = q
        .homogeneous_degree()
        .ok_or_else(|| NevanlinnaError::Input("inhomogeneous defining form".into()))? as f64;
    let mut rows = Vec::with_capacity(grid.len());
    let mut perturbations = 0;
    for &r in grid {
        let (r_eff, moves) = analyzer.safe_radius(&[&composed], r)?;
        perturbations += moves;
        let t = analyzer.characteristic(r_eff)?;
        let m = analyzer.proximity_of_expr(&composed, d as u32, r_eff)?;
        let n = analyzer.counting_of_expr(&composed, None, r_eff)?;
        rows.push(FmtRow {
            r: r_eff,
            t: t.value,
            m: m.value,
            n,
            residual: d * t.value - m.value - n,
            quad_tol: t.achieved_tol * d + m.achieved_tol,
        });
    }
    let max_res = rows.iter().map(|x| x.residual.abs()).fold(0.0, f64::max);
    let min_res = rows.iter().map(|x| x.residual).fold(f64::INFINITY, f64::min);
    let max_plain = rows.iter().map(|x| x.residual).fold(f64::NEG_INFINITY, f64::max);
    let range = max_plain - min_res;
    let worst_tol = rows.iter().map(|x| x.quad_tol).fold(0.0, f64::max);
    let allowance = 1e-2 + 2.0 * worst_tol.max(analyzer.settings().tolerance);
    let pass = match analyzer.curve().domain() {
        Domain::Plane | Domain::Disc { .. } => range <= allowance,
        Domain::Annulus { .. } => max_res <= allowance,
    };
    Ok(FmtReport {
        rows,
        base_radius: analyzer.curve().domain().base_radius(),
        radius_perturbations: perturbations,
        residual_range: range,
        max_abs_residual: max_res,
        allowance,
        pass,
    })
}
