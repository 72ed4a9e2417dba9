use super::{AlgebraError, Budget, Ideal, Monomial, Poly, TermOrder};
use std::cmp::Ordering;

/// A reduced Gröbner basis: monic, auto-reduced, deterministically sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    order: TermOrder,
    polys: Vec<Poly>,
    leads: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Leading monomials, i.e. the minimal generators of the initial ideal.
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }
}

/// Fully reduce `p` modulo `basis` under `order` (every term of the result
/// is outside the initial ideal of the basis).
pub fn reduce_fully(p: &Poly, basis: &[Poly], order: &TermOrder) -> Poly {
    let nvars = p.nvars();
    let mut work = p.clone();
    let mut remainder = Poly::zero(nvars);
    let leads: Vec<(Monomial, crate::Rational)> = basis
        .iter()
        .filter_map(|b| b.leading_term(order).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    while let Some((m, c)) = work.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let mut reduced = false;
        for (i, (lm, lc)) in leads.iter().enumerate() {
            if lm.divides(&m) {
                let factor = lm.quotient(&m);
                let scale = &c / lc;
                work = work.sub(&basis[i].mul_term(&factor, &scale));
                reduced = true;
                break;
            }
        }
        if !reduced {
            remainder.add_term(&m, &c);
            work.add_term(&m, &(-&c));
        }
    }
    remainder
}

fn s_polynomial(f: &Poly, g: &Poly, order: &TermOrder) -> Poly {
    let (lmf, lcf) = f.leading_term(order).expect("nonzero");
    let (lmg, lcg) = g.leading_term(order).expect("nonzero");
    let lcm = lmf.lcm(lmg);
    let pf = f.mul_term(&lmf.quotient(&lcm), &lcf.recip());
    let pg = g.mul_term(&lmg.quotient(&lcm), &lcg.recip());
    pf.sub(&pg)
}

/// Buchberger with the normal selection strategy (smallest lcm degree first),
/// the coprimality criterion, and full reduction; the result is the unique
/// reduced basis for the order.
pub fn groebner_basis(
    ideal: &Ideal,
    order: &TermOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, AlgebraError> {
    for g in ideal.generators() {
        if g.weighted_degree(ideal.weights()).is_none() {
            return Err(AlgebraError::NonHomogeneous(g.to_string()));
        }
        if g.is_zero() {
            return Err(AlgebraError::Input("zero generator".into()));
        }
    }
    let mut basis: Vec<Poly> = Vec::new();
    for g in ideal.generators() {
        let r = reduce_fully(g, &basis, order);
        if !r.is_zero() {
            check_budget(&r, basis.len(), budget)?;
            basis.push(r.monic(order));
        }
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }

    let mut steps: u64 = 0;
    while !pairs.is_empty() {
        steps += 1;
        if steps > 500_000 {
            return Err(AlgebraError::Resource(
                "Buchberger pair budget exhausted".into(),
            ));
        }
        // normal strategy: minimal lcm degree, then index order for determinism
        let (best_idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = pair_lcm_degree(&basis, **a, order);
                let lb = pair_lcm_degree(&basis, **b, order);
                la.cmp(&lb).then_with(|| a.cmp(b))
            })
            .map(|(i, p)| (i, *p))
            .unwrap();
        let (i, j) = pairs.swap_remove(best_idx);

        let (lmi, _) = basis[i].leading_term(order).unwrap();
        let (lmj, _) = basis[j].leading_term(order).unwrap();
        if lmi.is_coprime_with(lmj) {
            continue; // Buchberger's first criterion
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_fully(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        check_budget(&r, basis.len(), budget)?;
        let new_idx = basis.len();
        basis.push(r.monic(order));
        for k in 0..new_idx {
            pairs.push((k, new_idx));
        }
    }

    Ok(finalize(basis, order.clone()))
}

fn pair_lcm_degree(basis: &[Poly], (i, j): (usize, usize), order: &TermOrder) -> u32 {
    let (lmi, _) = basis[i].leading_term(order).unwrap();
    let (lmj, _) = basis[j].leading_term(order).unwrap();
    lmi.lcm(lmj).degree()
}

fn check_budget(p: &Poly, basis_len: usize, budget: &Budget) -> Result<(), AlgebraError> {
    if basis_len + 1 > budget.max_basis {
        return Err(AlgebraError::Resource(format!(
            "basis size would exceed {}",
            budget.max_basis
        )));
    }
    if let Some(d) = p.total_degree() {
        if d > budget.max_degree {
            return Err(AlgebraError::Resource(format!(
                "polynomial degree {d} exceeds budget {}",
                budget.max_degree
            )));
        }
    }
    Ok(())
}

/// Minimalize and tail-reduce to the unique reduced basis.
fn finalize(mut basis: Vec<Poly>, order: TermOrder) -> GroebnerBasis {
    // drop elements whose lead is divisible by another's lead
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (lmi, _) = basis[i].leading_term(&order).unwrap();
        let lmi = lmi.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (lmj, _) = basis[j].leading_term(&order).unwrap();
            if lmj.divides(&lmi) && (lmj != &lmi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Poly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();

    // tail-reduce each against the others
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, p)| (j != i).then(|| p.clone()))
            .collect();
        let r = reduce_fully(&minimal[i], &others, &order);
        debug_assert!(!r.is_zero());
        reduced.push(r.monic(&order));
    }

    reduced.sort_by(|a, b| {
        let (la, _) = a.leading_term(&order).unwrap();
        let (lb, _) = b.leading_term(&order).unwrap();
        match order.cmp_monomials(la, lb) {
            Ordering::Equal => Ordering::Equal,
            ord => ord,
        }
    });
    let leads = reduced
        .iter()
        .map(|p| p.leading_term(&order).unwrap().0.clone())
        .collect();
    GroebnerBasis {
        order,
        polys: reduced,
        leads,
    }
}

/// Convenience: basis of the ideal generated by `gens` in `nvars` variables.
#[allow(dead_code)]
pub(crate) fn basis_of(
    nvars: usize,
    gens: Vec<Poly>,
    order: &TermOrder,
) -> Result<GroebnerBasis, AlgebraError> {
    let ideal = Ideal::new(nvars, gens)?;
    groebner_basis(&ideal, order, &Budget::default())
}

#[allow(unused_imports)]
use num_traits::Zero;
