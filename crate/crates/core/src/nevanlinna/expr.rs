use crate::{Integer, Rational};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Gaussian rational `re + im*i`, the coefficient field for curve data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(crate::rat_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        GaussianRational::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GaussianRational::new(&self.re * c, &self.im * c)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

/// Laurent polynomial in one variable over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(0, &c);
        p
    }

    pub fn monomial(power: i64, c: GaussianRational) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(power, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, power: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(power)
            .or_insert_with(GaussianRational::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&power);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(*p, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(p, c)| (*p, c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &o.terms {
                out.add_term(pa + pb, &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(p, k)| (*p, k.mul(c))).collect(),
        }
    }

    /// d/dz; kills constants, maps z^k to k z^(k-1).
    pub fn derivative(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (p, c) in &self.terms {
            if *p != 0 {
                let k = GaussianRational::from_rational(Rational::from_integer(Integer::from(*p)));
                out.add_term(p - 1, &c.mul(&k));
            }
        }
        out
    }

    pub fn min_power(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, c) in &self.terms {
            acc += c.to_complex() * z.powi(*p as i32);
        }
        acc
    }
}

/// Exponential polynomial `sum_j p_j(z) * exp(lambda_j z)` with Laurent
/// coefficients and Gaussian-rational frequencies, in canonical form
/// (distinct frequencies, nonzero coefficient polynomials). Closed under
/// addition, multiplication and `d/dz`, all exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UnivariateExpr {
    terms: BTreeMap<GaussianRational, LaurentPoly>,
}

impl UnivariateExpr {
    pub fn zero() -> Self {
        UnivariateExpr::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn var() -> Self {
        Self::from_laurent(LaurentPoly::monomial(1, GaussianRational::one()))
    }

    /// `p(z) * exp(lambda z)`.
    pub fn exp_term(lambda: GaussianRational, p: LaurentPoly) -> Self {
        let mut out = UnivariateExpr::zero();
        out.add_part(lambda, p);
        out
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::exp_term(GaussianRational::zero(), p)
    }

    fn add_part(&mut self, lambda: GaussianRational, p: LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(lambda.clone())
            .or_insert_with(LaurentPoly::zero);
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&GaussianRational, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_parts(&self) -> usize {
        self.terms.len()
    }

    /// True when no negative powers of z occur (entire on the plane).
    pub fn is_entire(&self) -> bool {
        self.terms
            .values()
            .all(|p| p.min_power().map_or(true, |m| m >= 0))
    }

    /// Constant value if the expression is a constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (lambda, p) = self.terms.iter().next().unwrap();
        if !lambda.is_zero() {
            return None;
        }
        let mut iter = p.terms();
        match (iter.next(), iter.next()) {
            (Some((&0, c)), None) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, p) in &o.terms {
            out.add_part(l.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UnivariateExpr {
            terms: self.terms.iter().map(|(l, p)| (l.clone(), p.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = UnivariateExpr::zero();
        for (la, pa) in &self.terms {
            for (lb, pb) in &o.terms {
                out.add_part(la.add(lb), pa.mul(pb));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return UnivariateExpr::zero();
        }
        UnivariateExpr {
            terms: self
                .terms
                .iter()
                .map(|(l, p)| (l.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = UnivariateExpr::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact derivative: `(p e^{lz})' = (p' + l p) e^{lz}`.
    pub fn derivative(&self) -> Self {
        let mut out = UnivariateExpr::zero();
        for (l, p) in &self.terms {
            let dp = p.derivative().add(&p.scale(l));
            out.add_part(l.clone(), dp);
        }
        out
    }

    pub fn derivative_n(&self, n: usize) -> Self {
        let mut acc = self.clone();
        for _ in 0..n {
            acc = acc.derivative();
        }
        acc
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, p) in &self.terms {
            let lz = l.to_complex() * z;
            acc += p.eval(z) * lz.exp();
        }
        acc
    }

    /// Stable structural key for divisor caches.
    pub fn cache_key(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for UnivariateExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[")?;
            let mut t_first = true;
            for (pw, c) in p.terms() {
                if !t_first {
                    write!(f, " + ")?;
                }
                t_first = false;
                write!(f, "{c}*z^{pw}")?;
            }
            write!(f, "]")?;
            if !l.is_zero() {
                write!(f, "*exp({l}*z)")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn z() -> UnivariateExpr {
        UnivariateExpr::var()
    }

    fn exp_z(mult: i64) -> UnivariateExpr {
        UnivariateExpr::exp_term(
            GaussianRational::from_int(mult),
            LaurentPoly::constant(GaussianRational::one()),
        )
    }

    #[test]
    fn canonical_cancellation() {
        let a = exp_z(1).add(&z());
        let b = a.sub(&exp_z(1));
        assert_eq!(b, z());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn derivative_rules() {
        // (z^2)' = 2z
        let z2 = z().mul(&z());
        let expected = z().scale(&GaussianRational::from_int(2));
        assert_eq!(z2.derivative(), expected);
        // (e^{2z})' = 2 e^{2z}
        let d = exp_z(2).derivative();
        assert_eq!(d, exp_z(2).scale(&GaussianRational::from_int(2)));
        // (z e^z)' = (1 + z) e^z
        let ze = z().mul(&exp_z(1));
        let expected = exp_z(1).add(&ze);
        assert_eq!(ze.derivative(), expected);
    }

    #[test]
    fn laurent_derivative() {
        // (z^-1)' = -z^-2
        let inv = UnivariateExpr::from_laurent(LaurentPoly::monomial(-1, GaussianRational::one()));
        let d = inv.derivative();
        let expected = UnivariateExpr::from_laurent(LaurentPoly::monomial(
            -2,
            GaussianRational::from_int(-1),
        ));
        assert_eq!(d, expected);
    }

    #[test]
    fn evaluation_matches_closed_form() {
        let f = exp_z(2).add(&z()); // e^{2z} + z
        let zpt = Complex64::new(0.3, -0.7);
        let expected = (2.0 * zpt).exp() + zpt;
        let got = f.eval(zpt);
        assert!((got - expected).norm() < 1e-12);
    }

    #[test]
    fn products_merge_frequencies() {
        // (e^z)^2 = e^{2z}
        assert_eq!(exp_z(1).mul(&exp_z(1)), exp_z(2));
        let gauss = GaussianRational::new(rat_int(0), rat_int(1));
        let rot = UnivariateExpr::exp_term(gauss, LaurentPoly::constant(GaussianRational::one()));
        let sq = rot.mul(&rot);
        assert_eq!(sq.num_parts(), 1);
    }
}
