use super::HeightsError;
use crate::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `v_p(n)` for a nonzero integer.
pub fn valuation(n: &Integer, p: u64) -> u32 {
    assert!(!n.is_zero());
    let p_big = Integer::from(p);
    let mut m = n.abs();
    let mut v = 0;
    while (&m % &p_big).is_zero() {
        m /= &p_big;
        v += 1;
    }
    v
}

/// Prime factorization of a nonzero integer by trial division with a
/// primality check on the cofactor. Intended for the moderate magnitudes
/// this workbench produces; larger inputs report a range error instead of
/// stalling.
pub fn factorize(n: &Integer) -> Result<Vec<(u64, u32)>, HeightsError> {
    if n.is_zero() {
        return Err(HeightsError::Input("cannot factor zero".into()));
    }
    let mut m = n.abs();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in std::iter::once(2u64).chain((3..=1_000_003u64).step_by(2)) {
        if m == Integer::from(1) {
            break;
        }
        let p_big = Integer::from(p);
        if (&p_big * &p_big) > m {
            break;
        }
        let mut v = 0;
        while (&m % &p_big).is_zero() {
            m /= &p_big;
            v += 1;
        }
        if v > 0 {
            out.push((p, v));
        }
    }
    if m > Integer::from(1) {
        match m.to_u64() {
            Some(c) if is_prime_u64(c) => out.push((c, 1)),
            Some(c) => {
                // composite cofactor past the trial bound: split by rho
                let (a, b) = pollard_rho(c)
                    .ok_or_else(|| HeightsError::FactorRange(format!("cofactor {c}")))?;
                for part in [a, b] {
                    let mut sub = factorize(&Integer::from(part))?;
                    out.append(&mut sub);
                }
                out = merge(out);
            }
            None => return Err(HeightsError::FactorRange(m.to_string())),
        }
    }
    out.sort_unstable();
    Ok(merge(out))
}

fn merge(mut factors: Vec<(u64, u32)>) -> Vec<(u64, u32)> {
    factors.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for (p, v) in factors {
        match out.last_mut() {
            Some((q, w)) if *q == p => *w += v,
            _ => out.push((p, v)),
        }
    }
    out
}

fn pollard_rho(n: u64) -> Option<(u64, u64)> {
    if n % 2 == 0 {
        return Some((2, n / 2));
    }
    for c in 1..20u64 {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let f = |v: u64| (mul_mod(v, v, n) + c) % n;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return Some((d, n / d));
        }
    }
    None
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert_eq!(factorize(&Integer::from(360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(&Integer::from(-7)).unwrap(), vec![(7, 1)]);
        assert_eq!(factorize(&Integer::from(1)).unwrap(), vec![]);
    }

    #[test]
    fn large_semiprime() {
        // 1000003 * 1000033 straddles the trial bound
        let n = Integer::from(1_000_003u64) * Integer::from(1_000_033u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f, vec![(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&Integer::from(48), 2), 4);
        assert_eq!(valuation(&Integer::from(48), 3), 1);
        assert_eq!(valuation(&Integer::from(48), 5), 0);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_033));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(1_000_035));
    }
}
