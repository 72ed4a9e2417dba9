use super::factor::{factorize, valuation};
use super::{HeightsError, IntegerForm, Place, RationalPoint};
use crate::interval::rational_to_f64;
use crate::{Integer, Rational};
use num_traits::{One, Signed, Zero};

/// `||x||_v` of a nonzero rational, exactly: absolute value at infinity,
/// `p^{-v_p(x)}` at a finite place.
pub fn norm_at(x: &Rational, v: Place) -> Rational {
    assert!(!x.is_zero());
    match v {
        Place::Infinity => x.abs(),
        Place::Prime(p) => {
            let vp = valuation(x.numer(), p) as i64 - valuation(x.denom(), p) as i64;
            let p_big = Integer::from(p);
            if vp >= 0 {
                Rational::new(Integer::one(), p_big.pow(vp as u32))
            } else {
                Rational::from_integer(p_big.pow((-vp) as u32))
            }
        }
    }
}

/// Exact height numerator: `max_i |x_i|` for primitive coordinates (the
/// non-archimedean norms are all 1 there).
pub fn height_exact(x: &RationalPoint) -> Integer {
    x.coords()
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("nonempty coordinates")
}

/// Absolute logarithmic height, cross-checked between the archimedean
/// shortcut and the full sum over places.
pub fn height(x: &RationalPoint) -> f64 {
    let h = height_exact(x);
    debug_assert!({
        // full route: product over infinity and all primes dividing any
        // coordinate of max_i ||x_i||_v equals h exactly
        let mut product = Rational::from_integer(h.clone());
        let mut primes = std::collections::BTreeSet::new();
        for c in x.coords().iter().filter(|c| !c.is_zero()) {
            for (p, _) in factorize(c).unwrap() {
                primes.insert(p);
            }
        }
        for p in primes {
            let best = x
                .coords()
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| norm_at(&Rational::from_integer(c.clone()), Place::Prime(p)))
                .max()
                .unwrap();
            product *= best;
        }
        product == Rational::from_integer(h.clone())
    });
    rational_to_f64(&Rational::from_integer(h)).ln()
}

/// Exact local ratio `||x||_v^d * ||Q||_v / ||Q(x)||_v` whose logarithm is
/// the Weil function.
pub fn weil_norm_ratio(
    q: &IntegerForm,
    v: Place,
    x: &RationalPoint,
) -> Result<Rational, HeightsError> {
    if x.dim() != q.poly().nvars() {
        return Err(HeightsError::Input("point/form arity mismatch".into()));
    }
    let qx = q.evaluate(x);
    if qx.is_zero() {
        return Err(HeightsError::OnDivisor(q.poly().to_string()));
    }
    let qx_rat = Rational::from_integer(qx);
    match v {
        Place::Infinity => {
            let hx = Rational::from_integer(height_exact(x));
            let hq = Rational::from_integer(q.max_abs_coefficient());
            Ok(hx.pow(q.degree() as i32) * hq / norm_at(&qx_rat, v))
        }
        Place::Prime(_) => {
            // primitive x and content-one Q have unit norms at finite places
            Ok(norm_at(&qx_rat, v).recip())
        }
    }
}

/// Weil function `lambda_{Q,v}(x) = log(||x||_v^d ||Q||_v / ||Q(x)||_v)`.
pub fn weil_function(q: &IntegerForm, v: Place, x: &RationalPoint) -> Result<f64, HeightsError> {
    Ok(rational_to_f64(&weil_norm_ratio(q, v, x)?).ln())
}

/// Product formula `prod_v ||x||_v = 1` checked exactly; returns the product
/// so callers can assert it is one.
pub fn product_formula_check(x: &Rational) -> Result<Rational, HeightsError> {
    if x.is_zero() {
        return Err(HeightsError::Input("product formula needs x != 0".into()));
    }
    let mut product = norm_at(x, Place::Infinity);
    let mut primes = std::collections::BTreeSet::new();
    for (p, _) in factorize(x.numer())? {
        primes.insert(p);
    }
    for (p, _) in factorize(x.denom())? {
        primes.insert(p);
    }
    for p in primes {
        product *= norm_at(x, Place::Prime(p));
    }
    Ok(product)
}

/// The exact identity `sum_v lambda_{Q,v}(x) = d h(x) + sum_v log||Q||_v`,
/// verified multiplicatively: returns both sides as exact rationals.
pub fn sum_over_all_places_identity(
    q: &IntegerForm,
    x: &RationalPoint,
) -> Result<(Rational, Rational), HeightsError> {
    let qx = q.evaluate(x);
    if qx.is_zero() {
        return Err(HeightsError::OnDivisor(q.poly().to_string()));
    }
    // places contributing: infinity plus primes dividing Q(x)
    let mut lhs = weil_norm_ratio(q, Place::Infinity, x)?;
    for (p, _) in factorize(&qx)? {
        lhs *= weil_norm_ratio(q, Place::Prime(p), x)?;
    }
    let rhs = Rational::from_integer(height_exact(x)).pow(q.degree() as i32)
        * Rational::from_integer(q.max_abs_coefficient());
    Ok((lhs, rhs))
}
