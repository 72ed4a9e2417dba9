use super::NevanlinnaError;
use num_complex::Complex64;

/// One circle-average result with the error estimate it achieved.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub achieved_tol: f64,
    pub evaluations: usize,
}

/// Adaptive trapezoid average `(1/2pi) \int_0^{2pi} g(r e^{i theta}) dtheta`.
///
/// The periodic trapezoid rule is doubled until two consecutive refinements
/// agree within `tol` (Richardson-style difference as the error estimate).
/// Non-convergence reports the achieved bound instead of silently returning.
pub fn circle_average(
    g: &dyn Fn(Complex64) -> f64,
    radius: f64,
    tol: f64,
    max_points: usize,
) -> Result<QuadResult, NevanlinnaError> {
    assert!(radius > 0.0);
    let mut n: usize = 32;
    let mut values: Vec<f64> = (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            g(Complex64::from_polar(radius, theta))
        })
        .collect();
    let mut prev = values.iter().sum::<f64>() / n as f64;
    let mut agreements = 0;
    let mut last_err = f64::INFINITY;
    while n < max_points {
        // midpoints only; previous samples are reused
        let mut next = Vec::with_capacity(2 * n);
        for j in 0..n {
            let theta = 2.0 * std::f64::consts::PI * (2 * j + 1) as f64 / (2 * n) as f64;
            next.push(values[j]);
            next.push(g(Complex64::from_polar(radius, theta)));
        }
        values = next;
        n *= 2;
        let current = values.iter().sum::<f64>() / n as f64;
        last_err = (current - prev).abs();
        if last_err <= tol {
            agreements += 1;
            if agreements >= 2 {
                return Ok(QuadResult {
                    value: current,
                    achieved_tol: last_err,
                    evaluations: n,
                });
            }
        } else {
            agreements = 0;
        }
        prev = current;
    }
    Err(NevanlinnaError::Quadrature {
        achieved: last_err,
        requested: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_average() {
        let r = circle_average(&|_| 3.5, 2.0, 1e-10, 1 << 16).unwrap();
        assert!((r.value - 3.5).abs() < 1e-12);
    }

    #[test]
    fn log_modulus_of_linear() {
        // (1/2pi) int log|z - a| = log max(r, |a|) by Jensen
        let a = Complex64::new(0.5, 0.25);
        let g = move |z: Complex64| (z - a).norm().ln();
        let r = circle_average(&g, 2.0, 1e-9, 1 << 18).unwrap();
        assert!((r.value - 2.0f64.ln()).abs() < 1e-8, "got {}", r.value);
        let r = circle_average(&g, 0.25, 1e-9, 1 << 18).unwrap();
        assert!((r.value - a.norm().ln()).abs() < 1e-8);
    }

    #[test]
    fn smooth_integrand_converges_fast() {
        let g = |z: Complex64| (1.0 + z.norm_sqr() + z.re * z.re).ln();
        let r = circle_average(&g, 1.5, 1e-10, 1 << 14).unwrap();
        assert!(r.evaluations <= 1 << 12);
    }
}
