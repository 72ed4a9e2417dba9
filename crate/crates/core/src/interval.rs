//! Rational interval arithmetic with directed rounding.
//!
//! Euler's number enters the truncation-level formulas through `e^k`; it is
//! enclosed by exact rational bounds from the Taylor series, and every floor
//! emitted from an interval is certified: the integer must be stable both
//! across the enclosure and under widening the enclosure of `e` by `1e-30`.

use crate::{factorial, Integer, Rational};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IntervalError {
    #[error("floor not certified: enclosure [{lo}, {hi}] straddles an integer")]
    UncertifiedFloor { lo: f64, hi: f64 },
    #[error("ceiling not certified: enclosure [{lo}, {hi}] straddles an integer")]
    UncertifiedCeil { lo: f64, hi: f64 },
}

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = RatInterval::point(Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Widen by an absolute margin on both sides.
    pub fn widen(&self, margin: &Rational) -> Self {
        RatInterval::new(&self.lo - margin, &self.hi + margin)
    }

    /// The unique floor of every point in the interval, if it exists.
    pub fn certified_floor(&self) -> Result<Integer, IntervalError> {
        let flo = self.lo.floor().to_integer();
        let fhi = self.hi.floor().to_integer();
        if flo == fhi {
            Ok(flo)
        } else {
            Err(IntervalError::UncertifiedFloor {
                lo: rational_to_f64(&self.lo),
                hi: rational_to_f64(&self.hi),
            })
        }
    }

    pub fn certified_ceil(&self) -> Result<Integer, IntervalError> {
        let clo = self.lo.ceil().to_integer();
        let chi = self.hi.ceil().to_integer();
        if clo == chi {
            Ok(clo)
        } else {
            Err(IntervalError::UncertifiedCeil {
                lo: rational_to_f64(&self.lo),
                hi: rational_to_f64(&self.hi),
            })
        }
    }
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

/// Enclosure of Euler's number from `terms` Taylor terms:
/// `sum_{i<=terms} 1/i! < e < sum + 2/(terms+1)!`.
pub fn euler_enclosure(terms: u64) -> RatInterval {
    let mut sum = Rational::zero();
    let mut fact = Integer::one();
    for i in 0..=terms {
        if i > 0 {
            fact *= Integer::from(i);
        }
        sum += Rational::new(Integer::one(), fact.clone());
    }
    let tail = Rational::new(Integer::from(2), factorial(terms + 1));
    RatInterval::new(sum.clone(), sum + tail)
}

/// Enclosure of `sqrt(x)` for non-negative rational `x`, with width about
/// `2^-bits` relative to the integer-square-root scaling.
pub fn sqrt_enclosure(x: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    // sqrt(p/q) = sqrt(p*q)/q; isqrt of the scaled integer gives directed bounds
    let p = x.numer().clone();
    let q = x.denom().clone();
    let t = (&p * &q) << (2 * bits as usize);
    let s = t.sqrt(); // floor integer square root
    let denom = q * (Integer::one() << bits as usize);
    let lo = Rational::new(s.clone(), denom.clone());
    let hi = Rational::new(s + 1, denom);
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    #[test]
    fn euler_enclosure_brackets_e() {
        let enc = euler_enclosure(30);
        let e = std::f64::consts::E;
        assert!(rational_to_f64(&enc.lo) <= e && e <= rational_to_f64(&enc.hi));
        assert!(enc.width() < rat(1, 1_000_000_000_000_000_000));
    }

    #[test]
    fn sqrt_enclosure_brackets() {
        let (lo, hi) = sqrt_enclosure(&rat(7, 3), 64);
        let v = (7.0f64 / 3.0).sqrt();
        assert!(rational_to_f64(&lo) <= v && v <= rational_to_f64(&hi));
        assert!(&hi - &lo < rat(1, 1_000_000_000));
        // exact square
        let (lo, hi) = sqrt_enclosure(&rat(9, 4), 16);
        assert!(lo <= rat(3, 2) && rat(3, 2) <= hi);
    }

    #[test]
    fn certified_floor_detects_straddle() {
        let good = RatInterval::new(rat(29, 10), rat(299, 100));
        assert_eq!(good.certified_floor().unwrap(), Integer::from(2));
        let bad = RatInterval::new(rat(29, 10), rat(31, 10));
        assert!(bad.certified_floor().is_err());
    }

    #[test]
    fn interval_products_are_directed() {
        let a = RatInterval::new(rat(-2, 1), rat(3, 1));
        let b = RatInterval::new(rat(5, 1), rat(7, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat_int(-14));
        assert_eq!(p.hi, rat_int(21));
    }
}
