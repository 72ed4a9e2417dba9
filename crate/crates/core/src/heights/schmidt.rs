use super::weil::{height, height_exact, weil_norm_ratio};
use super::{HeightsError, IntegerForm, Place, RationalPoint};
use crate::geometry::FamilyContext;
use crate::interval::rational_to_f64;
use crate::surd::QuadExt;
use crate::{rat, rat_int, Integer, Rational};
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

/// Which branch of the arithmetic inequality to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SchmidtMode {
    /// Weak-Bézout coefficient `floor((l-n+3)/2) + (l-n+2)(n+1)/2 + eps`.
    WeakBezoutA,
    /// Bézout coefficient `ceil((l-n) tau/(tau-1)) - 1 + tau(n+1) + eps`.
    BezoutB,
}

impl SchmidtMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "a" | "weak" => Some(SchmidtMode::WeakBezoutA),
            "b" | "bezout" => Some(SchmidtMode::BezoutB),
            _ => None,
        }
    }
}

/// Exact coefficients of both branches at `(l, n)`, mirroring the analytic
/// defect bounds with the arithmetic naming. The branch boundary here is
/// `n < l <= (5n+1)/4` (inclusive), which is value-irrelevant because the
/// two branch formulas agree at the boundary.
pub fn arithmetic_bound_coefficients(
    ell: u32,
    n: u32,
    eps: &Rational,
) -> Result<(Rational, QuadExt, QuadExt), HeightsError> {
    if ell <= n || n < 1 {
        return Err(HeightsError::Input(format!(
            "need l > n >= 1, got l = {ell}, n = {n}"
        )));
    }
    if eps.is_negative() {
        return Err(HeightsError::Input("eps must be non-negative".into()));
    }
    let ln = (ell - n) as i64;
    let np1 = n as i64 + 1;
    let bound_a = rat_int((ln + 3).div_euclid(2)) + rat(ln + 2, 2) * rat_int(np1) + eps.clone();

    let tau1 = if 4 * ell <= 5 * n + 1 {
        &QuadExt::from_int(1) + &QuadExt::sqrt_rational(rat(ln, np1))
    } else {
        QuadExt::from_rational(rat_int(1) + rat(2 * ln, np1))
    };
    let card = crate::geometry::ceil_card_bound(ell, n, &tau1);
    let bound_b = &(&QuadExt::from_int(card - 1) + &(&tau1 * &QuadExt::from_int(np1)))
        + &QuadExt::from_rational(eps.clone());
    Ok((bound_a, bound_b, tau1))
}

/// One point of the pointwise Schmidt report.
#[derive(Debug, Clone, Serialize)]
pub struct SchmidtPointRow {
    pub point: String,
    pub height: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub excess: f64,
    /// Candidate for the exceptional set: `lhs > rhs` with positive height.
    pub flagged: bool,
}

/// Pointwise report for the arithmetic inequality over a sample of points.
#[derive(Debug, Clone, Serialize)]
pub struct SchmidtReport {
    pub mode: SchmidtMode,
    pub ell: u32,
    pub n: u32,
    pub eps: String,
    pub coefficient: f64,
    pub places: Vec<String>,
    pub points_checked: usize,
    pub points_skipped_off_variety: usize,
    pub flagged: Vec<SchmidtPointRow>,
    pub flagged_count: usize,
    /// Every flagged point re-verified by an independent floating-point
    /// recomputation of the same inequality.
    pub reverified: bool,
    pub rows: Vec<SchmidtPointRow>,
}

/// Evaluate the inequality
/// `sum_{v in S} sum_j lambda_{Q_j,v}(x)/deg Q_j <= coeff * h(x)`
/// pointwise over the sample, flagging exceedances as exceptional-set
/// candidates (points of height zero are excluded from flagging).
#[allow(clippy::too_many_arguments)]
pub fn check_theorem_1_5(
    ctx: &FamilyContext,
    forms: &[IntegerForm],
    places: &[Place],
    points: &[RationalPoint],
    eps: &Rational,
    mode: SchmidtMode,
    ell_override: Option<u32>,
    keep_rows: bool,
) -> Result<SchmidtReport, HeightsError> {
    if forms.len() != ctx.q() {
        return Err(HeightsError::Input(
            "integer forms do not match the family".into(),
        ));
    }
    let n = ctx.k() as u32; // dim V in the arithmetic naming
    let ell = match ell_override {
        Some(l) => l,
        None => ctx.position_level()?.max(n + 1),
    };
    let verdict = ctx.check_subgeneral_position(ell)?;
    if !verdict.holds {
        return Err(HeightsError::Input(format!(
            "family is not in {ell}-subgeneral position: witness {:?}",
            verdict.witness
        )));
    }
    let (bound_a, bound_b, _) = arithmetic_bound_coefficients(ell, n, eps)?;
    let coefficient = match mode {
        SchmidtMode::WeakBezoutA => rational_to_f64(&bound_a),
        SchmidtMode::BezoutB => bound_b.to_f64(),
    };

    let mut rows = Vec::new();
    let mut flagged = Vec::new();
    let mut skipped = 0usize;
    let mut checked = 0usize;
    for x in points {
        if !x.on_variety(ctx.variety()) {
            skipped += 1;
            continue;
        }
        let mut lhs = 0.0f64;
        let mut on_divisor = false;
        for form in forms {
            let mut per_form = 0.0;
            for &v in places {
                match weil_norm_ratio(form, v, x) {
                    Ok(ratio) => per_form += rational_to_f64(&ratio).ln(),
                    Err(HeightsError::OnDivisor(_)) => {
                        on_divisor = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if on_divisor {
                break;
            }
            lhs += per_form / form.degree() as f64;
        }
        if on_divisor {
            skipped += 1;
            continue;
        }
        checked += 1;
        let h = height(x);
        let rhs = coefficient * h;
        let excess = lhs - rhs;
        let is_flagged = excess > 1e-9 && h > 0.0;
        let row = SchmidtPointRow {
            point: x.to_string(),
            height: h,
            lhs,
            rhs,
            excess,
            flagged: is_flagged,
        };
        if is_flagged {
            flagged.push(row.clone());
        }
        if keep_rows {
            rows.push(row);
        }
    }

    // independent recomputation of every flagged point in plain floating
    // point, straight from the definitions
    let mut reverified = true;
    for row in &flagged {
        let x = parse_point(&row.point)?;
        let lhs2 = float_lhs(forms, places, &x)?;
        let h2 = rational_to_f64(&Rational::from_integer(height_exact(&x))).ln();
        let violated = lhs2 > coefficient * h2 + 1e-9;
        if !violated {
            reverified = false;
        }
    }

    Ok(SchmidtReport {
        mode,
        ell,
        n,
        eps: eps.to_string(),
        coefficient,
        places: places.iter().map(|p| p.to_string()).collect(),
        points_checked: checked,
        points_skipped_off_variety: skipped,
        flagged_count: flagged.len(),
        flagged,
        reverified,
        rows,
    })
}

fn parse_point(s: &str) -> Result<RationalPoint, HeightsError> {
    let inner = s.trim_start_matches('(').trim_end_matches(')');
    let coords: Result<Vec<Integer>, _> = inner.split(':').map(|c| c.parse::<Integer>()).collect();
    RationalPoint::new(coords.map_err(|e| HeightsError::Input(format!("bad point `{s}`: {e}")))?)
}

/// Floating-point route for re-verification: norms computed numerically,
/// valuations by repeated division, no exact rational bookkeeping shared
/// with the primary path.
fn float_lhs(
    forms: &[IntegerForm],
    places: &[Place],
    x: &RationalPoint,
) -> Result<f64, HeightsError> {
    let coords_f: Vec<f64> = x
        .coords()
        .iter()
        .map(|c| rational_to_f64(&Rational::from_integer(c.clone())))
        .collect();
    let hx = coords_f.iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut lhs = 0.0;
    for form in forms {
        let qx = form.evaluate(x);
        if qx == Integer::from(0) {
            return Err(HeightsError::OnDivisor(form.poly().to_string()));
        }
        let qx_f = rational_to_f64(&Rational::from_integer(qx.clone()));
        let hq = rational_to_f64(&Rational::from_integer(form.max_abs_coefficient()));
        let mut per_form = 0.0;
        for &v in places {
            per_form += match v {
                Place::Infinity => form.degree() as f64 * hx.ln() + hq.ln() - qx_f.abs().ln(),
                Place::Prime(p) => {
                    super::factor::valuation(&qx, p) as f64 * (p as f64).ln()
                }
            };
        }
        lhs += per_form / form.degree() as f64;
    }
    Ok(lhs)
}

/// Uniform sample of primitive points with coordinates bounded by `bound`.
pub fn sample_projective_points(
    nvars: usize,
    bound: i64,
    count: usize,
    rng: &mut impl Rng,
) -> Vec<RationalPoint> {
    let mut out = Vec::with_capacity(count);
    let mut guard = 0usize;
    while out.len() < count && guard < count * 100 {
        guard += 1;
        let coords: Vec<Integer> = (0..nvars)
            .map(|_| Integer::from(rng.gen_range(-bound..=bound)))
            .collect();
        if let Ok(p) = RationalPoint::new(coords) {
            out.push(p);
        }
    }
    out
}

/// Points on the image of a 2-variable parametrization (the conic-style
/// `(s^2 : st : t^2)` and friends): coprime parameter pairs pushed through
/// the forms, keeping points of height at most `height_bound`.
pub fn sample_conic_like_points(
    parametrization: &[crate::algebra::Poly],
    param_bound: i64,
    height_bound: &Integer,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<RationalPoint>, HeightsError> {
    for p in parametrization {
        if p.nvars() != 2 {
            return Err(HeightsError::Input(
                "parametrization polynomials must use two variables".into(),
            ));
        }
    }
    let mut out = Vec::with_capacity(count);
    let mut guard = 0usize;
    while out.len() < count && guard < count * 200 {
        guard += 1;
        let s = rng.gen_range(-param_bound..=param_bound);
        let t = rng.gen_range(-param_bound..=param_bound);
        if s == 0 && t == 0 {
            continue;
        }
        let sv = Rational::from_integer(Integer::from(s));
        let tv = Rational::from_integer(Integer::from(t));
        let coords: Vec<Rational> = parametrization
            .iter()
            .map(|p| p.eval_rational(&[sv.clone(), tv.clone()]))
            .collect();
        if coords.iter().all(|c| c.is_zero()) {
            continue;
        }
        let point = RationalPoint::from_rationals(&coords)?;
        if &height_exact(&point) <= height_bound {
            out.push(point);
        }
    }
    Ok(out)
}
