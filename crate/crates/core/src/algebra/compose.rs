use super::{AlgebraError, Poly};
use crate::nevanlinna::expr::{GaussianRational, UnivariateExpr};

/// Exact substitution of curve components into a polynomial: `D(f0,...,fn)`
/// as an exponential polynomial in one variable.
pub fn compose(d: &Poly, components: &[UnivariateExpr]) -> Result<UnivariateExpr, AlgebraError> {
    if d.nvars() != components.len() {
        return Err(AlgebraError::Input(format!(
            "compose: polynomial in {} variables, {} components supplied",
            d.nvars(),
            components.len()
        )));
    }
    let mut acc = UnivariateExpr::zero();
    for (mono, coeff) in d.terms() {
        let mut term = UnivariateExpr::constant(GaussianRational::from_rational(coeff.clone()));
        for (idx, &e) in mono.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&components[idx].pow(e));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::nevanlinna::expr::LaurentPoly;

    fn rational_curve() -> Vec<UnivariateExpr> {
        // (1, z, z^2)
        let one = UnivariateExpr::one();
        let z = UnivariateExpr::var();
        let z2 = z.mul(&z);
        vec![one, z, z2]
    }

    #[test]
    fn projection_component() {
        let d = parse_poly("x1", 3).unwrap();
        let got = compose(&d, &rational_curve()).unwrap();
        assert_eq!(got, UnivariateExpr::var());
    }

    #[test]
    fn curve_on_conic_composes_to_zero() {
        let d = parse_poly("x0*x2 - x1^2", 3).unwrap();
        let got = compose(&d, &rational_curve()).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn exponential_components() {
        // D = x0 + x1 on (1, e^z, e^{2z}) -> 1 + e^z
        let d = parse_poly("x0 + x1", 3).unwrap();
        let one = UnivariateExpr::one();
        let ez = UnivariateExpr::exp_term(
            GaussianRational::from_int(1),
            LaurentPoly::constant(GaussianRational::one()),
        );
        let e2z = ez.mul(&ez);
        let got = compose(&d, &[one.clone(), ez.clone(), e2z]).unwrap();
        assert_eq!(got, one.add(&ez));
    }

    #[test]
    fn arity_mismatch() {
        let d = parse_poly("x0", 2).unwrap();
        assert!(compose(&d, &rational_curve()).is_err());
    }
}
