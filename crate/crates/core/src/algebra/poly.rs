use super::{coeff_to_string, Monomial, TermOrder};
use crate::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Sparse multivariate polynomial over the rationals.
///
/// Zero coefficients are never stored; the zero polynomial has an empty term
/// map. Homogeneity is a query, not a stored flag: `weighted_degree` returns
/// the common weighted degree when all terms share one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn variable(nvars: usize, idx: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, idx), Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: &Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(m);
        }
    }

    /// Plain total degree of the highest term (None when zero).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Common weighted degree when homogeneous, else None.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut iter = self.terms.keys();
        let first = iter.next()?.weighted_degree(weights);
        for m in iter {
            if m.weighted_degree(weights) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Degree under the all-ones grading when homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.weighted_degree(&vec![1; self.nvars]).map(|d| d as u32)
    }

    pub fn leading_term<'a>(&'a self, order: &TermOrder) -> Option<(&'a Monomial, &'a Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp_monomials(a, b))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(&ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    /// `self * c * x^m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading coefficient scaled to 1 under the given order.
    pub fn monic(&self, order: &TermOrder) -> Poly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// True when every monomial only uses variables from `keep`.
    pub fn support_within(&self, keep: &BTreeSet<usize>) -> bool {
        self.terms.keys().all(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(v, &e)| e == 0 || keep.contains(&v))
        })
    }

    /// Re-express in the smaller ring given by `map` (list of old variable
    /// indices in new order); caller guarantees the support lies in `map`.
    pub fn project(&self, map: &[usize]) -> Poly {
        Poly {
            nvars: map.len(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.project(map), c.clone()))
                .collect(),
        }
    }

    /// Same polynomial viewed in a larger ring (new variables appended).
    pub fn extend_vars(&self, total: usize) -> Poly {
        assert!(total >= self.nvars);
        Poly {
            nvars: total,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(total, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Substitute numeric rational values for all variables.
    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term *= &point[v];
                }
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // render descending by grevlex for readability
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| TermOrder::Grevlex.cmp_monomials(b, a));
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", coeff_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{}", coeff_to_string(&abs), m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    #[test]
    fn arithmetic_and_homogeneity() {
        let x0 = Poly::variable(3, 0);
        let x1 = Poly::variable(3, 1);
        let x2 = Poly::variable(3, 2);
        let conic = x0.mul(&x2).sub(&x1.mul(&x1));
        assert_eq!(conic.homogeneous_degree(), Some(2));
        assert_eq!(conic.num_terms(), 2);
        let mixed = conic.add(&x0);
        assert_eq!(mixed.homogeneous_degree(), None);
        // cancellation drops terms
        let diff = conic.sub(&conic);
        assert!(diff.is_zero());
    }

    #[test]
    fn weighted_homogeneity() {
        // y - x^2 with weights (1, 2) is weighted-homogeneous of degree 2
        let x = Poly::variable(2, 0);
        let y = Poly::variable(2, 1);
        let g = y.sub(&x.mul(&x));
        assert_eq!(g.weighted_degree(&[1, 2]), Some(2));
        assert_eq!(g.weighted_degree(&[1, 1]), None);
    }

    #[test]
    fn evaluation() {
        let x0 = Poly::variable(2, 0);
        let x1 = Poly::variable(2, 1);
        let p = x0.mul(&x0).add(&x1.scale(&rat(3, 2)));
        assert_eq!(
            p.eval_rational(&[rat_int(2), rat_int(4)]),
            rat_int(10)
        );
    }

    #[test]
    fn display_roundtrip_shape() {
        let x0 = Poly::variable(3, 0);
        let x1 = Poly::variable(3, 1);
        let p = x0.mul(&x0).scale(&rat(3, 2)).sub(&x1);
        assert_eq!(p.to_string(), "3/2*x0^2 - x1");
    }
}
