use super::{AlgebraError, Monomial, Poly};
use crate::{Integer, Rational};
use num_traits::One;

/// Parse the plain-text polynomial grammar: terms like `3/2*x0^2*x1 - x2^3`,
/// variables `x0..xN`. This is the canonical on-disk and CLI representation.
pub fn parse_poly(input: &str, nvars: usize) -> Result<Poly, AlgebraError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        nvars,
    };
    let poly = p.parse_sum()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(AlgebraError::Parse(format!(
            "unexpected character `{}` at offset {} in `{input}`",
            p.chars[p.pos], p.pos
        )));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<Poly, AlgebraError> {
        let mut negate = false;
        if let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                negate = c == '-';
            }
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let t = self.parse_term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Poly, AlgebraError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one(self.nvars);
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.parse_rational()?;
                    saw_factor = true;
                }
                Some('x') => {
                    let (idx, exp) = self.parse_var_power()?;
                    let mut e = mono.0.clone();
                    e[idx] += exp;
                    mono = Monomial(e);
                    saw_factor = true;
                }
                Some('(') => {
                    return Err(AlgebraError::Parse(
                        "parentheses are not part of the polynomial grammar".into(),
                    ))
                }
                _ => break,
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if !saw_factor {
            return Err(AlgebraError::Parse(format!(
                "expected term at offset {}",
                self.pos
            )));
        }
        Ok(Poly::from_terms(self.nvars, [(mono, coeff)]))
    }

    fn parse_uint(&mut self) -> Result<Integer, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(AlgebraError::Parse(format!(
                "expected number at offset {start}"
            )));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<Integer>()
            .map_err(|e| AlgebraError::Parse(format!("bad integer `{s}`: {e}")))
    }

    fn parse_rational(&mut self) -> Result<Rational, AlgebraError> {
        let num = self.parse_uint()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.parse_uint()?;
            if den == Integer::from(0) {
                return Err(AlgebraError::Parse("zero denominator".into()));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn parse_var_power(&mut self) -> Result<(usize, u32), AlgebraError> {
        self.skip_ws();
        debug_assert_eq!(self.chars[self.pos], 'x');
        self.pos += 1;
        let idx_big = self.parse_uint()?;
        let idx: usize = idx_big
            .try_into()
            .map_err(|_| AlgebraError::Parse("variable index too large".into()))?;
        if idx >= self.nvars {
            return Err(AlgebraError::Parse(format!(
                "variable x{idx} out of range (expected x0..x{})",
                self.nvars - 1
            )));
        }
        let mut exp = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.parse_uint()?;
            exp = e
                .try_into()
                .map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
        }
        Ok((idx, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn parses_spec_grammar() {
        let p = parse_poly("3/2*x0^2*x1 - x2^3", 3).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.homogeneous_degree(), Some(3));
        assert_eq!(
            p.coefficient(&Monomial(vec![2, 1, 0])),
            rat(3, 2)
        );
        assert_eq!(p.to_string(), "3/2*x0^2*x1 - x2^3");
    }

    #[test]
    fn parses_signs_and_constants() {
        let p = parse_poly("-x0 + 2", 2).unwrap();
        assert_eq!(p.num_terms(), 2);
        let q = parse_poly("x0*x2 - x1^2", 3).unwrap();
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x3", 3).is_err());
        assert!(parse_poly("x0 +", 3).is_err());
        assert!(parse_poly("1/0*x0", 3).is_err());
        assert!(parse_poly("y0", 3).is_err());
    }
}
