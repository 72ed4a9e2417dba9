use serde::{Deserialize, Serialize};
use std::fmt;

/// Exponent vector over `x0..x(n-1)`. The derived `Ord` is only the
/// canonical map key; term comparisons go through [`super::TermOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient(&self, other: &Self) -> Self {
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Restriction to the variables listed in `map` (new ring order).
    pub fn project(&self, map: &[usize]) -> Self {
        Monomial(map.iter().map(|&v| self.0[v]).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of plain total degree `d` in `nvars` variables,
/// lexicographically by exponent vector.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(nvars: usize, pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == nvars - 1 {
            current[pos] = remaining;
            out.push(Monomial(current.clone()));
            current[pos] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e;
            rec(nvars, pos + 1, remaining - e, current, out);
        }
        current[pos] = 0;
    }
    if nvars == 0 {
        return out;
    }
    rec(nvars, 0, d, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotient() {
        let a = Monomial(vec![1, 2, 0]);
        let b = Monomial(vec![2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient(&b), Monomial(vec![1, 0, 1]));
        assert_eq!(a.lcm(&b), Monomial(vec![2, 2, 1]));
    }

    #[test]
    fn slice_enumeration_count() {
        // C(d + n - 1, n - 1) monomials of degree d in n variables
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(monomials_of_degree(2, 4).len(), 5);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
    }
}
