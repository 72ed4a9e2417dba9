//! Exact arithmetic in real quadratic extensions `a + b*sqrt(c)`.
//!
//! Values of this shape arise from the branch `tau = 1 + sqrt((N-k)/(k+1))`
//! and must survive ceilings, floors and comparisons without rounding. All
//! comparisons reduce to rational sign tests via squaring.

use crate::{Integer, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `a + b * sqrt(c)` with `a, b` rational and `c` a non-negative rational.
///
/// When `c` is a perfect square (of a rational) the value is normalised to a
/// purely rational one (`b = 0`, `c = 0`). Mixed-radicand arithmetic is
/// rejected: a single computation sticks to one `c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    c: Rational,
}

/// Exact square root of a rational if it is a perfect square.
fn exact_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    if &(&num * &num) == x.numer() && &(&den * &den) == x.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

impl QuadExt {
    pub fn from_rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            c: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(crate::rat_int(n))
    }

    /// `a + b*sqrt(c)`; collapses to a rational when `c` is a perfect square
    /// or `b = 0`. Panics on negative radicand.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        assert!(!c.is_negative(), "negative radicand");
        if b.is_zero() || c.is_zero() {
            return Self::from_rational(a);
        }
        if let Some(root) = exact_sqrt(&c) {
            return Self::from_rational(a + b * root);
        }
        QuadExt { a, b, c }
    }

    /// `sqrt(x)` for a non-negative rational `x`.
    pub fn sqrt_rational(x: Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), x)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Rational part; the full value when `is_rational`.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn radicand(&self) -> Option<&Rational> {
        if self.is_rational() {
            None
        } else {
            Some(&self.c)
        }
    }

    fn check_compatible(&self, other: &Self) -> Rational {
        if self.is_rational() {
            return other.c.clone();
        }
        if other.is_rational() {
            return self.c.clone();
        }
        assert_eq!(self.c, other.c, "mixed radicands in QuadExt arithmetic");
        self.c.clone()
    }

    pub fn is_zero(&self) -> bool {
        // b*sqrt(c) rational only in the normalised b = 0 case
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign of the value: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.b.is_zero() {
            return match self.a.cmp(&Rational::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            };
        }
        // a + b*sqrt(c), b != 0, c > 0 irrational: never zero
        let a_neg = self.a.is_negative();
        let b_neg = self.b.is_negative();
        match (self.a.is_zero(), a_neg, b_neg) {
            (true, _, false) => 1,
            (true, _, true) => -1,
            (false, false, false) => 1,
            (false, true, true) => -1,
            // opposite signs: compare a^2 vs b^2 c
            (false, false, true) => {
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * &self.c;
                if lhs > rhs {
                    1
                } else {
                    -1
                }
            }
            (false, true, false) => {
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * &self.c;
                if lhs > rhs {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn recip(&self) -> Self {
        if self.is_rational() {
            assert!(!self.a.is_zero(), "division by zero");
            return Self::from_rational(self.a.recip());
        }
        // 1/(a+b*sqrt(c)) = (a - b*sqrt(c)) / (a^2 - b^2 c)
        let norm = &self.a * &self.a - &self.b * &self.b * &self.c;
        assert!(!norm.is_zero(), "division by zero norm");
        QuadExt::new(&self.a / &norm, -(&self.b / &norm), self.c.clone())
    }

    /// Largest integer `<=` the value.
    pub fn floor_int(&self) -> Integer {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        let approx = self.to_f64();
        let mut n = Integer::from(approx.floor() as i64);
        // exact adjustment around the float guess
        while self < &QuadExt::from_rational(Rational::from_integer(n.clone())) {
            n -= 1;
        }
        loop {
            let next: Integer = &n + Integer::one();
            if self >= &QuadExt::from_rational(Rational::from_integer(next.clone())) {
                n = next;
            } else {
                break;
            }
        }
        n
    }

    /// Smallest integer `>=` the value.
    pub fn ceil_int(&self) -> Integer {
        let f = self.floor_int();
        if self == &QuadExt::from_rational(Rational::from_integer(f.clone())) {
            f
        } else {
            f + 1
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        a + b * c.sqrt()
    }

    /// Non-negative integer power.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadExt::from_rational(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Rational enclosure `[lo, hi]` with `hi - lo <= 2^-bits * scale`.
    pub fn enclose(&self, bits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.a.clone(), self.a.clone());
        }
        let (rlo, rhi) = crate::interval::sqrt_enclosure(&self.c, bits);
        let (blo, bhi) = if self.b.is_negative() {
            (&self.b * &rhi, &self.b * &rlo)
        } else {
            (&self.b * &rlo, &self.b * &rhi)
        };
        (&self.a + blo, &self.a + bhi)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.c)
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self - other;
        match diff.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        let c = self.check_compatible(rhs);
        QuadExt::new(&self.a + &rhs.a, &self.b + &rhs.b, c)
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        let c = self.check_compatible(rhs);
        QuadExt::new(&self.a - &rhs.a, &self.b - &rhs.b, c)
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let c = self.check_compatible(rhs);
        // (a1 + b1 r)(a2 + b2 r) = a1 a2 + b1 b2 c + (a1 b2 + a2 b1) r
        QuadExt::new(
            &self.a * &rhs.a + &self.b * &rhs.b * &c,
            &self.a * &rhs.b + &rhs.a * &self.b,
            c,
        )
    }
}

impl Div for &QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self * &rhs.recip()
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a.clone(), -self.b.clone(), self.c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn surd(a: i64, b: i64, c: i64) -> QuadExt {
        QuadExt::new(rat_int(a), rat_int(b), rat_int(c))
    }

    #[test]
    fn perfect_square_collapses() {
        let x = QuadExt::new(rat_int(1), rat_int(3), rat(1, 4));
        assert!(x.is_rational());
        assert_eq!(x.rational_part(), &rat(5, 2));
    }

    #[test]
    fn ordering_by_squaring() {
        // 1 + sqrt(2) vs 2 + sqrt(2)/2: 2.4142 vs 2.7071
        let x = surd(1, 1, 2);
        let y = QuadExt::new(rat_int(2), rat(1, 2), rat_int(2));
        assert!(x < y);
        // sqrt(20) vs 4.5 exactly (Remark-style comparison)
        let s = QuadExt::sqrt_rational(rat_int(20));
        assert!(s < QuadExt::from_rational(rat(9, 2)));
        assert!(s > QuadExt::from_rational(rat(44, 10)));
    }

    #[test]
    fn floor_and_ceil() {
        let s = QuadExt::sqrt_rational(rat_int(20)); // 4.4721...
        assert_eq!(s.floor_int(), Integer::from(4));
        assert_eq!(s.ceil_int(), Integer::from(5));
        let neg = -&s;
        assert_eq!(neg.floor_int(), Integer::from(-5));
        assert_eq!(neg.ceil_int(), Integer::from(-4));
        let exact = QuadExt::from_rational(rat_int(7));
        assert_eq!(exact.ceil_int(), Integer::from(7));
    }

    #[test]
    fn field_identities() {
        let x = surd(3, -2, 5);
        let prod = &x * &x.recip();
        assert!(prod.is_rational());
        assert_eq!(prod.rational_part(), &rat_int(1));
        let sum = &x + &(-&x);
        assert!(sum.is_zero());
    }

    #[test]
    fn enclosure_brackets_value() {
        let x = surd(1, 3, 7);
        let (lo, hi) = x.enclose(80);
        // the enclosure is far narrower than an f64 ulp; allow float slack
        let v = x.to_f64();
        assert!(lo.to_f64().unwrap() - 1e-12 <= v && v <= hi.to_f64().unwrap() + 1e-12);
        assert!((&hi - &lo) < rat(1, 1_000_000_000_000));
    }
}
