use super::expr::UnivariateExpr;
use super::NevanlinnaError;
use num_complex::Complex64;
use std::f64::consts::PI;

/// One zero with its multiplicity, certified by a small-circle winding.
#[derive(Debug, Clone, Copy)]
pub struct Zero {
    pub location: Complex64,
    pub multiplicity: u32,
}

/// The region a divisor was sampled on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Disc { radius: f64 },
    Band { inner: f64, outer: f64 },
}

impl Region {
    pub fn outer(&self) -> f64 {
        match self {
            Region::Disc { radius } => *radius,
            Region::Band { outer, .. } => *outer,
        }
    }

    pub fn inner(&self) -> f64 {
        match self {
            Region::Disc { .. } => 0.0,
            Region::Band { inner, .. } => *inner,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        r >= self.inner() && r <= self.outer()
    }
}

/// Certification record: the worst winding residual observed, boundary
/// perturbations applied, and the effective (possibly perturbed) region.
#[derive(Debug, Clone, Copy)]
pub struct Certification {
    pub max_winding_residual: f64,
    pub boundary_perturbations: u32,
    pub effective_region: Region,
}

/// Zeros with multiplicities in a region, with the boundary argument
/// principle cross-check already performed.
#[derive(Debug, Clone)]
pub struct DivisorSample {
    pub zeros: Vec<Zero>,
    pub certification: Certification,
}

impl DivisorSample {
    /// Total multiplicity truncated at `m` of zeros with modulus `<= t`
    /// (and `>= lower` for bands).
    pub fn truncated_count(&self, lower: f64, t: f64, trunc: Option<u64>) -> u64 {
        self.zeros
            .iter()
            .filter(|z| {
                let r = z.location.norm();
                r >= lower && r <= t
            })
            .map(|z| match trunc {
                Some(m) => (z.multiplicity as u64).min(m),
                None => z.multiplicity as u64,
            })
            .sum()
    }
}

#[derive(Debug)]
enum ContourFailure {
    ZeroOnContour,
    TooDeep,
    /// Accumulated winding landed more than 0.25 away from an integer.
    Residual,
}

struct Tracker<'a> {
    f: &'a dyn Fn(Complex64) -> Complex64,
    evals: usize,
    budget: usize,
}

impl<'a> Tracker<'a> {
    fn eval(&mut self, z: Complex64) -> Result<Complex64, ContourFailure> {
        self.evals += 1;
        if self.evals > self.budget {
            return Err(ContourFailure::TooDeep);
        }
        let v = (self.f)(z);
        if !v.is_finite() || v.norm() < 1e-295 {
            return Err(ContourFailure::ZeroOnContour);
        }
        Ok(v)
    }

    /// Accumulated argument change along the segment `a -> b`, refining
    /// until each step turns by at most pi/2.
    fn arg_change_segment(
        &mut self,
        a: Complex64,
        fa: Complex64,
        b: Complex64,
        fb: Complex64,
        depth: u32,
    ) -> Result<f64, ContourFailure> {
        let step = (fb / fa).arg();
        if step.abs() <= PI / 2.0 && depth >= 3 {
            return Ok(step);
        }
        if depth > 48 {
            return Err(ContourFailure::TooDeep);
        }
        let mid = 0.5 * (a + b);
        let fm = self.eval(mid)?;
        Ok(self.arg_change_segment(a, fa, mid, fm, depth + 1)?
            + self.arg_change_segment(mid, fm, b, fb, depth + 1)?)
    }

    /// Same along a circular arc of radius `r` between angles `t0 < t1`.
    fn arg_change_arc(
        &mut self,
        r: f64,
        t0: f64,
        f0: Complex64,
        t1: f64,
        f1: Complex64,
        depth: u32,
    ) -> Result<f64, ContourFailure> {
        let step = (f1 / f0).arg();
        if step.abs() <= PI / 2.0 && depth >= 1 {
            return Ok(step);
        }
        if depth > 48 {
            return Err(ContourFailure::TooDeep);
        }
        let tm = 0.5 * (t0 + t1);
        let fm = self.eval(Complex64::from_polar(r, tm))?;
        Ok(self.arg_change_arc(r, t0, f0, tm, fm, depth + 1)?
            + self.arg_change_arc(r, tm, fm, t1, f1, depth + 1)?)
    }
}

/// Winding number of `f` along the circle of radius `r`, by certified
/// argument tracking: every step turns less than pi/2 and the total must
/// land within 0.25 of an integer.
///
/// `rate` bounds the phase rotation per unit arc length away from zeros
/// (for exponential polynomials, max |lambda| plus a Laurent-degree term);
/// the initial sample density is scaled by `r * rate` so a fast-turning
/// factor like exp(2z) on a large circle cannot alias a full turn into an
/// apparently small step.
fn circle_winding(
    f: &dyn Fn(Complex64) -> Complex64,
    r: f64,
    rate: f64,
    budget: usize,
) -> Result<(i64, f64), ContourFailure> {
    let mut tracker = Tracker { f, evals: 0, budget };
    let n0 = ((8.0 * r * rate).ceil() as usize).clamp(16, 1 << 20);
    let mut total = 0.0;
    let mut prev_t = 0.0;
    let mut prev_f = tracker.eval(Complex64::from_polar(r, 0.0))?;
    let first = prev_f;
    for j in 1..=n0 {
        let t = 2.0 * PI * j as f64 / n0 as f64;
        let fv = if j == n0 {
            first
        } else {
            tracker.eval(Complex64::from_polar(r, t))?
        };
        total += tracker.arg_change_arc(r, prev_t, prev_f, t, fv, 0)?;
        prev_t = t;
        prev_f = fv;
    }
    let w = total / (2.0 * PI);
    let rounded = w.round();
    let residual = (w - rounded).abs();
    if residual > 0.25 {
        return Err(ContourFailure::Residual);
    }
    Ok((rounded as i64, residual))
}

/// Winding along a rectangle boundary (counter-clockwise), with the edge
/// pre-split density scaled by the rotation rate.
fn box_winding(
    f: &dyn Fn(Complex64) -> Complex64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    rate: f64,
    budget: usize,
) -> Result<(i64, f64), ContourFailure> {
    let corners = [
        Complex64::new(x0, y0),
        Complex64::new(x1, y0),
        Complex64::new(x1, y1),
        Complex64::new(x0, y1),
        Complex64::new(x0, y0),
    ];
    let mut tracker = Tracker { f, evals: 0, budget };
    let mut total = 0.0;
    // pre-split each edge so phase tracking starts from a sane density
    for w in corners.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = (b - a).norm();
        let pieces = ((len * rate * 4.0 / PI).ceil() as usize).clamp(8, 1 << 18);
        let mut pa = a;
        let mut fa = tracker.eval(pa)?;
        for j in 1..=pieces {
            let pb = a + (b - a) * (j as f64 / pieces as f64);
            let fb = tracker.eval(pb)?;
            total += tracker.arg_change_segment(pa, fa, pb, fb, 0)?;
            pa = pb;
            fa = fb;
        }
    }
    let wn = total / (2.0 * PI);
    let rounded = wn.round();
    let residual = (wn - rounded).abs();
    if residual > 0.25 {
        return Err(ContourFailure::Residual);
    }
    Ok((rounded as i64, residual))
}

struct BoxSearch<'a> {
    f: &'a dyn Fn(Complex64) -> Complex64,
    df: &'a dyn Fn(Complex64) -> Complex64,
    rate: f64,
    budget_per_contour: usize,
    newton_side: f64,
    min_side: f64,
    zeros: Vec<Zero>,
    max_residual: f64,
}

impl<'a> BoxSearch<'a> {
    fn search(&mut self, x0: f64, x1: f64, y0: f64, y1: f64, count: i64) -> Result<(), NevanlinnaError> {
        if count <= 0 {
            return Ok(());
        }
        let side = (x1 - x0).max(y1 - y0);
        if side <= self.newton_side {
            if let Some(z) = self.try_polish(x0, x1, y0, y1, count as u32) {
                self.zeros.push(z);
                return Ok(());
            }
            if side <= self.min_side {
                // unresolved cluster: report the box center with total count
                self.zeros.push(Zero {
                    location: Complex64::new(0.5 * (x0 + x1), 0.5 * (y0 + y1)),
                    multiplicity: count as u32,
                });
                return Ok(());
            }
        }
        // split the longer axis; cuts are deliberately off-centre so axis
        // aligned zeros (very common in practice) never lie on a cut line,
        // with jitter retries as a fallback
        let vertical = (x1 - x0) >= (y1 - y0);
        let fractions = [0.503717, 0.51371, 0.47693, 0.53241];
        for (attempt, frac) in fractions.iter().enumerate() {
            let result = if vertical {
                let xm = x0 + (x1 - x0) * frac;
                box_winding(self.f, x0, xm, y0, y1, self.rate, self.budget_per_contour)
                    .map(|(w, res)| (xm, w, res))
            } else {
                let ym = y0 + (y1 - y0) * frac;
                box_winding(self.f, x0, x1, y0, ym, self.rate, self.budget_per_contour)
                    .map(|(w, res)| (ym, w, res))
            };
            match result {
                Ok((cut, w_first, res)) => {
                    self.max_residual = self.max_residual.max(res);
                    let w_second = count - w_first;
                    if vertical {
                        self.search(x0, cut, y0, y1, w_first)?;
                        self.search(cut, x1, y0, y1, w_second)?;
                    } else {
                        self.search(x0, x1, y0, cut, w_first)?;
                        self.search(x0, x1, cut, y1, w_second)?;
                    }
                    return Ok(());
                }
                Err(ContourFailure::TooDeep) if attempt + 1 < fractions.len() => continue,
                Err(ContourFailure::ZeroOnContour) if attempt + 1 < fractions.len() => continue,
                Err(ContourFailure::Residual) if attempt + 1 < fractions.len() => continue,
                Err(_) => {
                    return Err(NevanlinnaError::ZeroSearch(format!(
                        "could not certify a cut of box [{x0},{x1}]x[{y0},{y1}]"
                    )))
                }
            }
        }
        unreachable!("loop returns or errors");
    }

    /// Newton polish from the box center using the multiplicity-aware step
    /// `z - m f/f'`, then certify with a small-circle winding.
    fn try_polish(&mut self, x0: f64, x1: f64, y0: f64, y1: f64, m: u32) -> Option<Zero> {
        let mut z = Complex64::new(0.5 * (x0 + x1), 0.5 * (y0 + y1));
        let scale = (x1 - x0).max(y1 - y0);
        for _ in 0..80 {
            let fv = (self.f)(z);
            let dv = (self.df)(z);
            if dv.norm() == 0.0 {
                return None;
            }
            let step = fv / dv * m as f64;
            z -= step;
            if step.norm() <= 1e-14 * z.norm().max(1.0) {
                break;
            }
        }
        // reject escapes far outside the box
        if z.re < x0 - 2.0 * scale || z.re > x1 + 2.0 * scale || z.im < y0 - 2.0 * scale
            || z.im > y1 + 2.0 * scale
        {
            return None;
        }
        // certify multiplicity on a small circle around the polished point
        let f = self.f;
        let radius = (scale * 0.5).max(1e-9);
        let shifted = move |w: Complex64| f(w + z);
        let local_rate = self.rate.max(1.0);
        match circle_winding(&shifted, radius, local_rate, self.budget_per_contour) {
            Ok((w, res)) if w == m as i64 => {
                self.max_residual = self.max_residual.max(res);
                Some(Zero {
                    location: z,
                    multiplicity: m,
                })
            }
            _ => None,
        }
    }
}

/// Certified zero counting in a disc or annulus band.
///
/// The expression is first made entire by clearing any pole at the origin
/// (only legal for band regions, where the origin is outside). The boundary
/// winding gives the certified total; box subdivision with jittered cuts
/// locates individual zeros; multiplicities come from small-circle windings
/// around each polished zero, and the two counts must agree.
///
/// Boundary zeros are handled by expanding the region outward (shrinking
/// inward for the band's inner circle) in steps of `1e-6 * max(1, t)`, at
/// most three times, recorded in the certification.
pub fn count_zeros(expr: &UnivariateExpr, region: Region) -> Result<DivisorSample, NevanlinnaError> {
    if expr.is_zero() {
        return Err(NevanlinnaError::Degenerate(
            "cannot count zeros of the zero function".into(),
        ));
    }
    if let Some(c) = expr.as_constant() {
        if !c.is_zero() {
            return Ok(DivisorSample {
                zeros: Vec::new(),
                certification: Certification {
                    max_winding_residual: 0.0,
                    boundary_perturbations: 0,
                    effective_region: region,
                },
            });
        }
    }
    // clear a pole at the origin (annulus-only Laurent parts)
    let min_pow = expr
        .parts()
        .map(|(_, p)| p.min_power().unwrap_or(0))
        .min()
        .unwrap_or(0);
    let working;
    let origin_cleared: &UnivariateExpr = if min_pow < 0 {
        if matches!(region, Region::Disc { .. }) {
            return Err(NevanlinnaError::Degenerate(
                "expression has a pole at the origin; disc regions need entire expressions".into(),
            ));
        }
        let z_pow = UnivariateExpr::from_laurent(super::expr::LaurentPoly::monomial(
            -min_pow,
            super::expr::GaussianRational::one(),
        ));
        working = expr.mul(&z_pow);
        &working
    } else {
        expr
    };

    let deriv = origin_cleared.derivative();
    let f = |z: Complex64| origin_cleared.eval(z);
    let df = |z: Complex64| deriv.eval(z);
    let contour_budget = 4_000_000usize;
    // rotation bound away from zeros: frequencies plus the polynomial part
    let rate = {
        let mut lambda_max: f64 = 0.0;
        let mut deg_max: f64 = 0.0;
        for (lambda, p) in origin_cleared.parts() {
            lambda_max = lambda_max.max(lambda.to_complex().norm());
            for (pw, _) in p.terms() {
                deg_max = deg_max.max(pw.unsigned_abs() as f64);
            }
        }
        (lambda_max + deg_max).max(1.0)
    };

    // certified boundary winding, with outward perturbation on failure
    let mut outer = region.outer();
    let mut perturbations = 0u32;
    let mut max_residual = 0.0f64;
    let outer_count = loop {
        match circle_winding(&f, outer, rate, contour_budget) {
            Ok((w, res)) => {
                max_residual = max_residual.max(res);
                break w;
            }
            Err(_) if perturbations < 3 => {
                perturbations += 1;
                outer += 1e-6 * outer.max(1.0);
            }
            Err(_) => {
                return Err(NevanlinnaError::Geometry(format!(
                    "boundary zero unresolved after 3 perturbations at radius {outer}"
                )))
            }
        }
    };
    let mut inner = region.inner();
    let inner_count = if inner > 0.0 {
        loop {
            match circle_winding(&f, inner, rate / inner.min(1.0), contour_budget) {
                Ok((w, res)) => {
                    max_residual = max_residual.max(res);
                    break w;
                }
                Err(_) if perturbations < 6 => {
                    perturbations += 1;
                    inner -= 1e-6 * inner.max(1.0);
                }
                Err(_) => {
                    return Err(NevanlinnaError::Geometry(format!(
                        "boundary zero unresolved after perturbations at inner radius {inner}"
                    )))
                }
            }
        }
    } else {
        0
    };
    let expected_in_region = outer_count - inner_count;

    // locate zeros inside |z| <= outer by box subdivision
    let mut search = BoxSearch {
        f: &f,
        df: &df,
        rate,
        budget_per_contour: contour_budget,
        newton_side: 1e-3 * outer.max(1.0),
        min_side: 1e-9 * outer.max(1.0),
        zeros: Vec::new(),
        max_residual,
    };
    // asymmetric root box: no zero of interest sits on its boundary, and
    // descendants inherit no symmetry axis
    let x0 = -(outer * 1.000431 + 2.3e-4);
    let x1 = outer * 1.000717 + 1.1e-4;
    let y0 = -(outer * 1.000219 + 3.1e-4);
    let y1 = outer * 1.000911 + 1.7e-4;
    let (root_count, root_res) = box_winding(&f, x0, x1, y0, y1, rate, contour_budget)
        .map_err(|_| NevanlinnaError::ZeroSearch("root box winding failed".into()))?;
    search.max_residual = search.max_residual.max(root_res);
    search.search(x0, x1, y0, y1, root_count)?;

    let effective = match region {
        Region::Disc { .. } => Region::Disc { radius: outer },
        Region::Band { .. } => Region::Band { inner, outer },
    };
    let mut zeros: Vec<Zero> = search
        .zeros
        .into_iter()
        .filter(|z| effective.contains(z.location))
        .collect();
    zeros.sort_by(|a, b| {
        a.location
            .norm()
            .partial_cmp(&b.location.norm())
            .unwrap()
            .then(a.location.re.partial_cmp(&b.location.re).unwrap())
            .then(a.location.im.partial_cmp(&b.location.im).unwrap())
    });
    let located: i64 = zeros.iter().map(|z| z.multiplicity as i64).sum();
    if located != expected_in_region {
        return Err(NevanlinnaError::ZeroSearch(format!(
            "located total {located} disagrees with boundary winding {expected_in_region} \
             on {effective:?}"
        )));
    }
    Ok(DivisorSample {
        zeros,
        certification: Certification {
            max_winding_residual: search.max_residual,
            boundary_perturbations: perturbations,
            effective_region: effective,
        },
    })
}
