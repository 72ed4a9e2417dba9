use super::monomial::monomials_of_degree;
use super::{groebner_basis, AlgebraError, Budget, Ideal, Monomial, TermOrder};
use crate::Integer;

/// Standard-monomial oracle for a homogeneous ideal: monomials outside the
/// initial ideal of a fixed Gröbner basis form a basis of each graded slice
/// of the quotient (Macaulay).
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    nvars: usize,
    leads: Vec<Monomial>,
}

impl QuotientBasis {
    /// Build from a grevlex basis (any order gives the same Hilbert data).
    pub fn from_ideal(ideal: &Ideal, budget: &Budget) -> Result<Self, AlgebraError> {
        Self::with_order(ideal, &TermOrder::Grevlex, budget)
    }

    pub fn with_order(
        ideal: &Ideal,
        order: &TermOrder,
        budget: &Budget,
    ) -> Result<Self, AlgebraError> {
        if ideal.is_zero() {
            return Ok(QuotientBasis {
                nvars: ideal.nvars(),
                leads: Vec::new(),
            });
        }
        let gb = groebner_basis(ideal, order, budget)?;
        Ok(QuotientBasis {
            nvars: ideal.nvars(),
            leads: gb.leading_monomials().to_vec(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    /// Degree-`u` monomials outside the initial ideal, lexicographic order.
    pub fn standard_monomials(
        &self,
        u: u32,
        budget: &Budget,
    ) -> Result<Vec<Monomial>, AlgebraError> {
        let total = slice_size(self.nvars, u);
        if total > budget.max_slice_monomials {
            return Err(AlgebraError::Resource(format!(
                "degree-{u} slice has {total} monomials, budget {}",
                budget.max_slice_monomials
            )));
        }
        Ok(monomials_of_degree(self.nvars, u)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect())
    }

    pub fn hilbert(&self, u: u32, budget: &Budget) -> Result<u64, AlgebraError> {
        Ok(self.standard_monomials(u, budget)?.len() as u64)
    }
}

fn slice_size(nvars: usize, u: u32) -> u64 {
    // C(u + nvars - 1, nvars - 1), saturating
    let mut acc: u128 = 1;
    for i in 0..(nvars as u64 - 1) {
        acc = acc * (u as u128 + i as u128 + 1) / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Dimension of the degree-`u` slice of the quotient ring.
pub fn hilbert_function(ideal: &Ideal, u: u32) -> Result<u64, AlgebraError> {
    if u == 0 {
        return Err(AlgebraError::Input(
            "hilbert_function requires a positive degree".into(),
        ));
    }
    let budget = Budget::default();
    QuotientBasis::from_ideal(ideal, &budget)?.hilbert(u, &budget)
}

/// Projective dimension and degree extracted from the Hilbert polynomial.
///
/// The Hilbert function of the quotient agrees with a degree-`k` polynomial
/// past the regularity; we detect stabilisation by constant `k`-th finite
/// differences over a sliding window and verify the interpolation against
/// two extra sample degrees. Returns `(-1, None)` for an empty projective
/// set and `(k, Some(degree))` otherwise, where the degree is the `k`-th
/// difference (i.e. `k!` times the leading coefficient).
pub fn dimension_and_degree(
    ideal: &Ideal,
    budget: &Budget,
) -> Result<(i64, Option<Integer>), AlgebraError> {
    let qb = QuotientBasis::from_ideal(ideal, budget)?;
    dimension_and_degree_from(&qb, budget)
}

pub fn dimension_and_degree_from(
    qb: &QuotientBasis,
    budget: &Budget,
) -> Result<(i64, Option<Integer>), AlgebraError> {
    let window = qb.nvars() + 2;
    let needed = window as u32 + 2;
    let mut u0: u32 = 1;
    while u0 + needed <= budget.max_hilbert_degree {
        let values: Vec<i128> = (u0..u0 + needed)
            .map(|u| qb.hilbert(u, budget).map(|h| h as i128))
            .collect::<Result<_, _>>()?;
        let (win, extra) = values.split_at(window);
        if let Some((k, delta)) = stabilized_polynomial(win, extra) {
            if k < 0 {
                return Ok((-1, None));
            }
            return Ok((k, Some(Integer::from(delta))));
        }
        u0 += 1;
    }
    Err(AlgebraError::Resource(format!(
        "Hilbert polynomial did not stabilise below degree {}",
        budget.max_hilbert_degree
    )))
}

/// Detect that `win` lies on a polynomial (constant finite differences) and
/// that the Newton extrapolation reproduces the two extra values.
fn stabilized_polynomial(win: &[i128], extra: &[i128]) -> Option<(i64, i128)> {
    let mut rows: Vec<Vec<i128>> = vec![win.to_vec()];
    while rows.last().unwrap().len() > 1 {
        let prev = rows.last().unwrap();
        let next: Vec<i128> = prev.windows(2).map(|w| w[1] - w[0]).collect();
        rows.push(next);
    }
    // smallest order whose row is constant with at least 2 entries
    let mut order = None;
    for (j, row) in rows.iter().enumerate() {
        if row.len() >= 2 && row.iter().all(|&v| v == row[0]) {
            order = Some(j);
            break;
        }
    }
    let j0 = order?;
    // Newton extrapolation for the two verification degrees
    let mut tails: Vec<i128> = rows[..=j0].iter().map(|r| *r.last().unwrap()).collect();
    let mut predicted = Vec::new();
    for _ in 0..extra.len() {
        for j in (0..j0).rev() {
            tails[j] += tails[j + 1];
        }
        predicted.push(tails[0]);
    }
    if predicted != extra {
        return None;
    }
    if win.iter().all(|&v| v == 0) && extra.iter().all(|&v| v == 0) {
        return Some((-1, 0));
    }
    // minimality of j0 means the constant is nonzero unless everything was zero
    let lead = rows[j0][0];
    debug_assert!(lead > 0, "Hilbert leading difference must be positive");
    Some((j0 as i64, lead))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::binomial;

    fn ideal(nvars: usize, gens: &[&str]) -> Ideal {
        let polys = gens.iter().map(|s| parse_poly(s, nvars).unwrap()).collect();
        Ideal::new(nvars, polys).unwrap()
    }

    #[test]
    fn full_polynomial_space() {
        // zero ideal in 3 variables, u = 3: C(5, 2) = 10
        assert_eq!(hilbert_function(&Ideal::zero(3), 3).unwrap(), 10);
    }

    #[test]
    fn conic_slice() {
        let id = ideal(3, &["x0*x2 - x1^2"]);
        assert_eq!(hilbert_function(&id, 2).unwrap(), 5);
        assert_eq!(hilbert_function(&id, 1).unwrap(), 3);
    }

    #[test]
    fn twisted_cubic_linear_slice() {
        let id = ideal(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        assert_eq!(hilbert_function(&id, 1).unwrap(), 4);
        // 3u + 1 for the twisted cubic
        for u in 1..=6 {
            assert_eq!(hilbert_function(&id, u).unwrap(), 3 * u as u64 + 1);
        }
    }

    #[test]
    fn rejects_degree_zero() {
        assert!(hilbert_function(&Ideal::zero(2), 0).is_err());
    }

    #[test]
    fn binomial_oracle_for_zero_ideal() {
        // C(n + u, n) for all u <= 10, n <= 4
        for n in 1..=4usize {
            let id = Ideal::zero(n + 1);
            for u in 1..=10u32 {
                let expected = binomial(n as u64 + u as u64, n as u64);
                assert_eq!(
                    Integer::from(hilbert_function(&id, u).unwrap()),
                    expected,
                    "n={n} u={u}"
                );
            }
        }
    }

    #[test]
    fn dimensions_and_degrees() {
        let budget = Budget::default();
        // projective space itself
        assert_eq!(
            dimension_and_degree(&Ideal::zero(4), &budget).unwrap(),
            (3, Some(Integer::from(1)))
        );
        // conic: dimension 1, degree 2
        let conic = ideal(3, &["x0*x2 - x1^2"]);
        assert_eq!(
            dimension_and_degree(&conic, &budget).unwrap(),
            (1, Some(Integer::from(2)))
        );
        // irrelevant ideal: empty projective set
        let irrelevant = ideal(3, &["x0", "x1", "x2"]);
        assert_eq!(dimension_and_degree(&irrelevant, &budget).unwrap(), (-1, None));
        // twisted cubic: dimension 1, degree 3
        let tc = ideal(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        assert_eq!(
            dimension_and_degree(&tc, &budget).unwrap(),
            (1, Some(Integer::from(3)))
        );
    }

    #[test]
    fn hypersurface_dimension_degree() {
        // degree-d hypersurface in P^n has dimension n-1 and degree d
        let cubic = ideal(3, &["x0^3 + x1^3 + x2^3"]);
        assert_eq!(
            dimension_and_degree(&cubic, &Budget::default()).unwrap(),
            (1, Some(Integer::from(3)))
        );
        let quadric = ideal(4, &["x0*x3 - x1*x2"]);
        assert_eq!(
            dimension_and_degree(&quadric, &Budget::default()).unwrap(),
            (2, Some(Integer::from(2)))
        );
    }
}
