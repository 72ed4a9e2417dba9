//! Shared fixtures for the criterion benchmarks.

use defectlab_core::algebra::{parse_poly, Ideal, Poly};
use defectlab_core::geometry::{HypersurfaceFamily, Variety};
use defectlab_core::nevanlinna::expr::{GaussianRational, LaurentPoly, UnivariateExpr};

pub fn twisted_cubic() -> Ideal {
    Ideal::new(
        4,
        vec![
            parse_poly("x0*x2 - x1^2", 4).unwrap(),
            parse_poly("x0*x3 - x1*x2", 4).unwrap(),
            parse_poly("x1*x3 - x2^2", 4).unwrap(),
        ],
    )
    .unwrap()
}

pub fn six_lines() -> (Variety, HypersurfaceFamily) {
    let forms: Vec<Poly> = [
        "x1",
        "x2",
        "x1 + x2",
        "x0 - x2",
        "x0 + 2*x1 + 3*x2",
        "x0 - 5*x1",
    ]
    .iter()
    .map(|s| parse_poly(s, 3).unwrap())
    .collect();
    (
        Variety::projective_space(2),
        HypersurfaceFamily::new(3, forms).unwrap(),
    )
}

pub fn exponential_sum() -> UnivariateExpr {
    let one = UnivariateExpr::one();
    let ez = UnivariateExpr::exp_term(
        GaussianRational::from_int(1),
        LaurentPoly::constant(GaussianRational::one()),
    );
    let e2z = ez.mul(&ez);
    one.add(&ez).add(&e2z)
}
