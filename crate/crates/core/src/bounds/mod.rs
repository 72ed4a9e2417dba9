//! Certified evaluation of the explicit constants in the second main
//! theorems: the auxiliary levels `u` and `L`, the truncation constant `M0`,
//! per-theorem total-defect bounds, the Remark inequality chains, and the
//! error coefficients of the disc and Kähler variants.
//!
//! Quadratic surds stay symbolic through every floor and ceiling; Euler's
//! number is enclosed in a rational interval, and each emitted integer must
//! be stable under widening that enclosure by `1e-30`.

mod defects;
mod levels;

pub use defects::{
    defect_bound, remark_inequalities, DefectTheorem, Regime, RemarkVerdict,
};
pub use levels::{l_level, m0_theorem_d, u_level};

use crate::interval::IntervalError;
use crate::surd::QuadExt;
use crate::{Integer, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("precision failure: {0}")]
    Precision(String),
}

/// Inputs to the explicit-constant calculators. `d`, `k`, `v` are positive
/// integers, `eps > 0`; `tau` is exact (rational or quadratic surd and must
/// exceed 1 wherever `tau - 1` is a divisor). The optional block carries the
/// parameters of the disc/Kähler variants.
#[derive(Debug, Clone)]
pub struct BoundParams {
    pub d: u32,
    pub k: u32,
    pub v: u64,
    pub tau: QuadExt,
    pub eps: Rational,
    pub n: Option<u32>,
    pub q: Option<u64>,
    /// Growth index of the disc curve (Ru–Sibony), user-supplied.
    pub cf: Option<Rational>,
    /// The second epsilon of the disc variant.
    pub eps2: Option<Rational>,
    /// Curvature comparison constant of the Kähler variant.
    pub rho: Option<Rational>,
    /// Distributive constant for the Kähler additive term; defaults to tau.
    pub delta: Option<Rational>,
}

impl BoundParams {
    pub fn new(d: u32, k: u32, v: u64, tau: QuadExt, eps: Rational) -> Result<Self, BoundError> {
        if d == 0 || k == 0 || v == 0 {
            return Err(BoundError::Input("d, k, v must be positive".into()));
        }
        if !eps.is_positive() {
            return Err(BoundError::Input("eps must be positive".into()));
        }
        if tau.signum() <= 0 {
            return Err(BoundError::Input("tau must be positive".into()));
        }
        Ok(BoundParams {
            d,
            k,
            v,
            tau,
            eps,
            n: None,
            q: None,
            cf: None,
            eps2: None,
            rho: None,
            delta: None,
        })
    }
}

/// Which theorem's error coefficient to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCoefficientTheorem {
    /// Disc curves with growth index, subfamily route: coefficient of
    /// `T_f(r)` equal to `(tau(k+1)+eps)(c_f+eps')(L-1) / (2 d u)`.
    Disc13,
    /// Kähler non-integrated defects: additive term
    /// `rho (L-1) (Delta (k+1) + eps) / (u d)`.
    Kaehler14,
    /// Disc curves, distributive-constant route (tau plays Delta).
    GrowthIndexG,
}

/// Exact error coefficient; rational when `tau` is rational.
pub fn error_coefficients(
    theorem: ErrorCoefficientTheorem,
    params: &BoundParams,
) -> Result<QuadExt, BoundError> {
    let l = l_level(params)?;
    let u = u_level(params)?;
    let kp1 = QuadExt::from_int(params.k as i64 + 1);
    let eps = QuadExt::from_rational(params.eps.clone());
    let l_minus_1 = QuadExt::from_rational(Rational::from_integer(l - Integer::from(1)));
    let u_q = QuadExt::from_rational(Rational::from_integer(u));
    let d_q = QuadExt::from_int(params.d as i64);
    match theorem {
        ErrorCoefficientTheorem::Disc13 | ErrorCoefficientTheorem::GrowthIndexG => {
            let cf = params.cf.clone().ok_or_else(|| {
                BoundError::Input("growth index c_f is required for the disc coefficient".into())
            })?;
            let eps2 = params.eps2.clone().ok_or_else(|| {
                BoundError::Input("eps' is required for the disc coefficient".into())
            })?;
            if cf.is_negative() || !eps2.is_positive() {
                return Err(BoundError::Input(
                    "need c_f >= 0 and eps' > 0 for the disc coefficient".into(),
                ));
            }
            let front = &(&params.tau * &kp1) + &eps;
            let growth = QuadExt::from_rational(cf + eps2);
            let num = &(&front * &growth) * &l_minus_1;
            let den = &(&QuadExt::from_int(2) * &d_q) * &u_q;
            Ok(&num / &den)
        }
        ErrorCoefficientTheorem::Kaehler14 => {
            let rho = params.rho.clone().ok_or_else(|| {
                BoundError::Input(
                    "Kähler curvature parameter rho is required for the additive term".into(),
                )
            })?;
            if rho.is_negative() {
                return Err(BoundError::Input("rho must be non-negative".into()));
            }
            if rho.is_zero() {
                return Ok(QuadExt::from_int(0));
            }
            let delta = params
                .delta
                .clone()
                .map(QuadExt::from_rational)
                .unwrap_or_else(|| params.tau.clone());
            let front = &(&delta * &kp1) + &eps;
            let num = &(&QuadExt::from_rational(rho) * &l_minus_1) * &front;
            let den = &u_q * &d_q;
            Ok(&num / &den)
        }
    }
}

/// One row of the comparison table across theorems.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub k: u32,
    pub n: u32,
    pub bound_d: f64,
    pub bound_f: f64,
    pub bound_11: f64,
    pub bound_hl: f64,
    pub l: String,
    pub u: String,
    pub m0: Option<String>,
}

/// Comparison table over a `(k, N)` range at fixed `d`, `v`, `eps` (and `q`
/// for the `M0` column). `tau(N, k)` is recomputed per row.
pub fn comparison_table(
    k_max: u32,
    n_max: u32,
    d: u32,
    v: u64,
    eps: &Rational,
    q: Option<u64>,
) -> Result<Vec<ComparisonRow>, BoundError> {
    let mut rows = Vec::new();
    for k in 1..=k_max {
        for n in (k + 1)..=n_max {
            let tau = crate::geometry::tau(n, k).map_err(|e| BoundError::Input(e.to_string()))?;
            let mut params = BoundParams::new(d, k, v, tau, eps.clone())?;
            params.n = Some(n);
            params.q = q;
            let l = l_level(&params)?;
            let u = u_level(&params)?;
            let m0 = match q {
                Some(qv) => Some(m0_theorem_d(v, k, d, n, qv, eps)?.to_string()),
                None => None,
            };
            rows.push(ComparisonRow {
                k,
                n,
                bound_d: defect_bound(DefectTheorem::D, n, k)?.to_f64(),
                bound_f: defect_bound(DefectTheorem::F, n, k)?.to_f64(),
                bound_11: defect_bound(DefectTheorem::OneOneNew, n, k)?.to_f64(),
                bound_hl: defect_bound(DefectTheorem::HeierLevin, n, k)?.to_f64(),
                l: l.to_string(),
                u: u.to_string(),
                m0,
            });
        }
    }
    Ok(rows)
}

/// Structured bound report for one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub d: u32,
    pub k: u32,
    pub v: u64,
    pub tau: String,
    pub tau_f64: f64,
    pub eps: String,
    pub u: String,
    pub l: String,
    pub m0: Option<String>,
    pub defect_d: Option<f64>,
    pub defect_f: Option<f64>,
    pub defect_11new: Option<f64>,
    pub defect_heier_levin: Option<f64>,
    pub remark: Option<RemarkVerdict>,
    pub error_coefficient_disc: Option<String>,
    pub error_coefficient_kaehler: Option<String>,
}

impl BoundReport {
    pub fn build(params: &BoundParams) -> Result<Self, BoundError> {
        let u = u_level(params)?;
        let l = l_level(params)?;
        let m0 = match (params.n, params.q) {
            (Some(n), Some(q)) => Some(m0_theorem_d(params.v, params.k, params.d, n, q, &params.eps)?.to_string()),
            _ => None,
        };
        let (defect_d, defect_f, defect_11, defect_hl, remark) = match params.n {
            Some(n) if n > params.k => (
                Some(defect_bound(DefectTheorem::D, n, params.k)?.to_f64()),
                Some(defect_bound(DefectTheorem::F, n, params.k)?.to_f64()),
                Some(defect_bound(DefectTheorem::OneOneNew, n, params.k)?.to_f64()),
                Some(defect_bound(DefectTheorem::HeierLevin, n, params.k)?.to_f64()),
                Some(remark_inequalities(params.k, n)?),
            ),
            _ => (None, None, None, None, None),
        };
        let disc = if params.cf.is_some() && params.eps2.is_some() {
            Some(error_coefficients(ErrorCoefficientTheorem::Disc13, params)?.to_string())
        } else {
            None
        };
        let kaehler = if params.rho.is_some() {
            Some(error_coefficients(ErrorCoefficientTheorem::Kaehler14, params)?.to_string())
        } else {
            None
        };
        Ok(BoundReport {
            d: params.d,
            k: params.k,
            v: params.v,
            tau: params.tau.to_string(),
            tau_f64: params.tau.to_f64(),
            eps: params.eps.to_string(),
            u: u.to_string(),
            l: l.to_string(),
            m0,
            defect_d,
            defect_f,
            defect_11new: defect_11,
            defect_heier_levin: defect_hl,
            remark,
            error_coefficient_disc: disc,
            error_coefficient_kaehler: kaehler,
        })
    }
}
