use super::{hilbert_weight, EmbeddedImage, WeightVector, WeightsError};
use crate::algebra::{Budget, Ideal, QuotientBasis};
use crate::geometry::{Convention, FamilyContext, HypersurfaceFamily, Variety};
use crate::interval::rational_to_f64;
use crate::{rat_int, Integer, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Samples of `(k+1) * delta * S(u, c) / (u * H(u))` along a `u`-list; the
/// sequence converges to the Chow weight as `u` grows.
#[derive(Debug, Clone, Serialize)]
pub struct ChowEstimate {
    /// `(u, sample)` pairs, exact rationals rendered as strings plus floats.
    pub samples: Vec<(u32, String, f64)>,
    /// The sample at the largest `u`.
    pub estimate: String,
    pub estimate_f64: f64,
    /// True when the value is exact (zero ideal), not an asymptotic sample.
    pub exact: bool,
}

/// Chow weight of projective space is available exactly: each coordinate
/// contributes its weight once.
pub fn exact_chow_weight_if_available(ideal: &Ideal, c: &WeightVector) -> Option<Rational> {
    if ideal.is_zero() {
        Some(c.sum())
    } else {
        None
    }
}

/// Sample the normalised Hilbert weights along `u_list` (all entries must
/// exceed the degree of the variety) and report the last sample as the
/// Chow-weight estimate.
pub fn chow_weight_estimate(
    ideal: &Ideal,
    c: &WeightVector,
    u_list: &[u32],
    budget: &Budget,
) -> Result<ChowEstimate, WeightsError> {
    if u_list.is_empty() {
        return Err(WeightsError::Input("empty u list".into()));
    }
    if u_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(WeightsError::Input("u list must be strictly increasing".into()));
    }
    let (dim, degree) = crate::algebra::dimension_and_degree(ideal, budget)?;
    if dim < 0 {
        return Err(WeightsError::Input("empty variety has no Chow weight".into()));
    }
    let delta = degree.expect("degree exists for nonnegative dimension");
    let delta_u32: u32 = delta
        .clone()
        .try_into()
        .map_err(|_| WeightsError::Input("degree too large".into()))?;
    if u_list[0] <= delta_u32 {
        return Err(WeightsError::Input(format!(
            "all u must exceed the degree {delta}; got {}",
            u_list[0]
        )));
    }
    let exact = exact_chow_weight_if_available(ideal, c);
    let qb = QuotientBasis::from_ideal(ideal, budget)?;
    let factor = rat_int(dim + 1) * Rational::from_integer(delta.clone());
    let mut samples = Vec::new();
    let mut last = Rational::zero();
    for &u in u_list {
        let s = hilbert_weight(ideal, u, c, budget)?;
        let h = qb.hilbert(u, budget)?;
        let value = &factor * s / (rat_int(u as i64) * rat_int(h as i64));
        samples.push((u, value.to_string(), rational_to_f64(&value)));
        last = value;
    }
    let (estimate, is_exact) = match exact {
        Some(e) => (e, true),
        None => (last, false),
    };
    Ok(ChowEstimate {
        samples,
        estimate: estimate.to_string(),
        estimate_f64: rational_to_f64(&estimate),
        exact: is_exact,
    })
}

/// Margin report for the Hilbert-weight lower bound
/// `S(u,c)/(u H(u)) >= e/( (k+1) delta ) - (2k+1) delta max_i c_i / u`.
#[derive(Debug, Clone, Serialize)]
pub struct EfMarginReport {
    pub u: u32,
    pub lhs: String,
    pub rhs: String,
    pub margin: String,
    pub margin_f64: f64,
    /// Exact `e` (zero ideal) or high-`u` estimate (flagged approximate).
    pub e_exact: bool,
    /// Asserted only when `e_exact`; otherwise diagnostic.
    pub pass: Option<bool>,
}

pub fn verify_ef_inequality(
    ideal: &Ideal,
    u: u32,
    c: &WeightVector,
    budget: &Budget,
) -> Result<EfMarginReport, WeightsError> {
    let (dim, degree) = crate::algebra::dimension_and_degree(ideal, budget)?;
    if dim < 0 {
        return Err(WeightsError::Input("empty variety".into()));
    }
    let delta = degree.expect("degree exists");
    let delta_u32: u32 = delta
        .clone()
        .try_into()
        .map_err(|_| WeightsError::Input("degree too large".into()))?;
    if u <= delta_u32 {
        return Err(WeightsError::Input(format!(
            "u must exceed the degree {delta}, got {u}"
        )));
    }
    let qb = QuotientBasis::from_ideal(ideal, budget)?;
    let s = hilbert_weight(ideal, u, c, budget)?;
    let h = qb.hilbert(u, budget)?;
    let lhs = s / (rat_int(u as i64) * rat_int(h as i64));

    let (e_star, e_exact) = match exact_chow_weight_if_available(ideal, c) {
        Some(e) => (e, true),
        None => {
            // asymptotic estimate at a few degrees past u, flagged approximate
            let list: Vec<u32> = (1..=3).map(|i| u + i).collect();
            let est = chow_weight_estimate(ideal, c, &list, budget)?;
            (
                est.samples
                    .last()
                    .map(|(_, s, _)| s.parse::<Rational>().unwrap_or_else(|_| Rational::zero()))
                    .unwrap_or_else(Rational::zero),
                false,
            )
        }
    };
    let kp1_delta = rat_int(dim + 1) * Rational::from_integer(delta.clone());
    let penalty = rat_int(2 * dim + 1) * Rational::from_integer(delta) * c.max_entry()
        / rat_int(u as i64);
    let rhs = e_star / kp1_delta - penalty;
    let margin = &lhs - &rhs;
    Ok(EfMarginReport {
        u,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        margin: margin.to_string(),
        margin_f64: rational_to_f64(&margin),
        e_exact,
        pass: e_exact.then(|| !margin.is_negative()),
    })
}

/// Margin report for the distributive-constant lower bound on the Chow
/// weight over a coordinate-hyperplane tuple.
#[derive(Debug, Clone, Serialize)]
pub struct ChowLowerBoundReport {
    pub tuple: Vec<usize>,
    pub delta_family: String,
    pub lower_bound: String,
    pub e_value: String,
    pub margin: String,
    pub margin_f64: f64,
    pub e_exact: bool,
    pub pass: Option<bool>,
}

/// Check `e(c) >= (deg Y / Delta_H) (c_{i_1} + ... + c_{i_l})` for a tuple of
/// coordinate indices on the embedded image, after validating the three
/// hypotheses: the last weight is the tuple minimum, the first `l - 1`
/// hyperplanes meet the image, and no hyperplane contains it.
pub fn verify_chow_lower_bound(
    image: &EmbeddedImage,
    c: &WeightVector,
    tuple: &[usize],
    budget: &Budget,
) -> Result<ChowLowerBoundReport, WeightsError> {
    let q = image.ideal().nvars();
    if c.len() != q {
        return Err(WeightsError::Input(format!(
            "weight vector length {} does not match image coordinates {q}",
            c.len()
        )));
    }
    if tuple.is_empty() || tuple.iter().any(|&i| i >= q) {
        return Err(WeightsError::Input("tuple indices out of range".into()));
    }
    // (1) the last index carries the minimal weight of the tuple
    let weights: Vec<&Rational> = tuple.iter().map(|&i| &c.entries()[i]).collect();
    let min = weights.iter().min().unwrap();
    if weights.last().unwrap() != min {
        return Err(WeightsError::Input(format!(
            "hypothesis (1) fails: last tuple weight {} is not the minimum {min}",
            weights.last().unwrap()
        )));
    }

    let y_variety = if image.ideal().is_zero() {
        Variety::projective_space(q - 1)
    } else {
        Variety::new(image.ideal().clone(), false, budget)?
    };
    let forms: Vec<crate::algebra::Poly> = tuple
        .iter()
        .map(|&i| crate::algebra::Poly::variable(q, i))
        .collect();
    let family = HypersurfaceFamily::new(q, forms)?;
    // (3) no hyperplane contains Y: FamilyContext construction checks it
    let ctx = FamilyContext::new(y_variety, family, budget.clone())
        .map_err(|e| WeightsError::Input(format!("hypothesis (3) fails: {e}")))?;
    // (2) the first l-1 hyperplanes meet Y
    if tuple.len() > 1 {
        let head: Vec<usize> = (0..tuple.len() - 1).collect();
        if !ctx.trace_nonempty(&head)? {
            return Err(WeightsError::Input(
                "hypothesis (2) fails: leading hyperplanes have empty trace on the image".into(),
            ));
        }
    }
    let (delta_family, _) = ctx.distributive_constant(Convention::SkipEmpty)?;

    let tuple_sum: Rational = tuple.iter().map(|&i| c.entries()[i].clone()).sum();
    let lower = Rational::from_integer(image.degree().clone()) * &tuple_sum / &delta_family;

    let (e_value, e_exact) = match exact_chow_weight_if_available(image.ideal(), c) {
        Some(e) => (e, true),
        None => {
            let delta_u32: u32 = image
                .degree()
                .clone()
                .try_into()
                .map_err(|_| WeightsError::Input("degree too large".into()))?;
            let list: Vec<u32> = (1..=3).map(|i| delta_u32 + 1 + i).collect();
            let est = chow_weight_estimate(image.ideal(), c, &list, budget)?;
            let last = est
                .samples
                .last()
                .map(|(_, s, _)| s.parse::<Rational>().unwrap_or_else(|_| Rational::zero()))
                .unwrap_or_else(Rational::zero);
            (last, false)
        }
    };
    let margin = &e_value - &lower;
    Ok(ChowLowerBoundReport {
        tuple: tuple.iter().map(|i| i + 1).collect(),
        delta_family: delta_family.to_string(),
        lower_bound: lower.to_string(),
        e_value: e_value.to_string(),
        margin: margin.to_string(),
        margin_f64: rational_to_f64(&margin),
        e_exact,
        pass: e_exact.then(|| !margin.is_negative()),
    })
}

#[allow(dead_code)]
fn integer_from(v: u64) -> Integer {
    Integer::from(v)
}
