use super::expr::{GaussianRational, LaurentPoly, UnivariateExpr};
use super::NevanlinnaError;
use crate::{Integer, Rational};

/// Parse curve-component expressions: rationals, `i`, `z`, `exp(c*z)`,
/// products, sums, integer powers (negative powers of `z` only, for
/// annulus components). Examples: `1`, `exp(z)`, `exp(2*z)`, `z^2 - 1`,
/// `3/2*z`, `(1+i)*z^-1`.
pub fn parse_expr(input: &str) -> Result<UnivariateExpr, NevanlinnaError> {
    let mut p = ExprParser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(NevanlinnaError::Input(format!(
            "unexpected `{}` at offset {} in `{input}`",
            p.chars[p.pos], p.pos
        )));
    }
    Ok(e)
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> Result<(), NevanlinnaError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(NevanlinnaError::Input(format!(
                "expected `{c}` at offset {}",
                self.pos
            )))
        }
    }

    fn sum(&mut self) -> Result<UnivariateExpr, NevanlinnaError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let t = self.term()?;
                acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<UnivariateExpr, NevanlinnaError> {
        let mut negate = false;
        while let Some(c) = self.peek() {
            if c == '-' {
                negate = !negate;
                self.pos += 1;
            } else if c == '+' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        if negate {
            acc = acc.neg();
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<UnivariateExpr, NevanlinnaError> {
        let base_is_z = self.peek() == Some('z');
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let mut neg = false;
            if self.peek() == Some('-') {
                neg = true;
                self.pos += 1;
            }
            let e = self.uint()? as u32;
            if neg {
                if !base_is_z {
                    return Err(NevanlinnaError::Input(
                        "negative powers are only supported on z".into(),
                    ));
                }
                return Ok(UnivariateExpr::from_laurent(LaurentPoly::monomial(
                    -(e as i64),
                    GaussianRational::one(),
                )));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<UnivariateExpr, NevanlinnaError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.eat(')')?;
                Ok(e)
            }
            Some('z') => {
                self.pos += 1;
                Ok(UnivariateExpr::var())
            }
            Some('i') => {
                self.pos += 1;
                Ok(UnivariateExpr::constant(GaussianRational::i()))
            }
            Some('e') => {
                for (off, ch) in "exp".chars().enumerate() {
                    if self.chars.get(self.pos + off) != Some(&ch) {
                        return Err(NevanlinnaError::Input(format!(
                            "unknown symbol at offset {}",
                            self.pos
                        )));
                    }
                }
                self.pos += 3;
                self.eat('(')?;
                let arg = self.sum()?;
                self.eat(')')?;
                let lambda = linear_coefficient(&arg).ok_or_else(|| {
                    NevanlinnaError::Input(
                        "exp argument must be c*z with a Gaussian rational c".into(),
                    )
                })?;
                Ok(UnivariateExpr::exp_term(
                    lambda,
                    LaurentPoly::constant(GaussianRational::one()),
                ))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let rat = if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.uint()?;
                    if den == 0 {
                        return Err(NevanlinnaError::Input("zero denominator".into()));
                    }
                    Rational::new(Integer::from(num), Integer::from(den))
                } else {
                    Rational::from_integer(Integer::from(num))
                };
                Ok(UnivariateExpr::constant(GaussianRational::from_rational(
                    rat,
                )))
            }
            other => Err(NevanlinnaError::Input(format!(
                "unexpected token {other:?} at offset {}",
                self.pos
            ))),
        }
    }

    fn uint(&mut self) -> Result<u64, NevanlinnaError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(NevanlinnaError::Input(format!(
                "expected number at offset {start}"
            )));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|e| NevanlinnaError::Input(format!("bad integer `{s}`: {e}")))
    }
}

/// Extract `c` from an expression equal to `c*z`, if it has that shape.
fn linear_coefficient(e: &UnivariateExpr) -> Option<GaussianRational> {
    let mut parts = e.parts();
    let (lambda, poly) = parts.next()?;
    if parts.next().is_some() || !lambda.is_zero() {
        return None;
    }
    let mut terms = poly.terms();
    match (terms.next(), terms.next()) {
        (Some((&1, c)), None) => Some(c.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn parses_curve_components() {
        let one = parse_expr("1").unwrap();
        assert_eq!(one, UnivariateExpr::one());
        let e2z = parse_expr("exp(2*z)").unwrap();
        assert_eq!(e2z, parse_expr("exp(z)").unwrap().pow(2));
        let poly = parse_expr("z^2 - 1").unwrap();
        let z = Complex64::new(1.5, 0.5);
        assert!((poly.eval(z) - (z * z - 1.0)).norm() < 1e-14);
    }

    #[test]
    fn parses_gaussian_and_laurent() {
        let f = parse_expr("(1+i)*z^-1").unwrap();
        let z = Complex64::new(2.0, 1.0);
        let expected = Complex64::new(1.0, 1.0) / z;
        assert!((f.eval(z) - expected).norm() < 1e-14);
        assert!(!f.is_entire());
    }

    #[test]
    fn exp_wants_linear_argument() {
        assert!(parse_expr("exp(z^2)").is_err());
        assert!(parse_expr("exp(1 + z)").is_err());
        let ok = parse_expr("exp(1/2*z)").unwrap();
        let z = Complex64::new(0.4, -0.3);
        assert!((ok.eval(z) - (0.5 * z).exp()).norm() < 1e-14);
        let spin = parse_expr("exp(i*z)").unwrap();
        assert!((spin.eval(z) - (Complex64::i() * z).exp()).norm() < 1e-14);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("w").is_err());
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("(1").is_err());
        assert!(parse_expr("(1+z)^-1").is_err());
    }
}
