use super::Monomial;
use crate::Rational;
use num_traits::Zero;
use std::cmp::Ordering;

/// Term orders on monomials. `Greater` means "closer to the leading term".
///
/// All variants are multiplicative total orders with 1 minimal, hence
/// well-orders. `Weight` compares the weight form first (ties by grevlex),
/// so it refines the weight preorder; on homogeneous input this realizes
/// the graded weight order used by the Hilbert-weight machinery.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
    Lex,
    /// Non-negative rational weights, compared first; grevlex tie-break.
    Weight(Vec<Rational>),
    /// Block order eliminating the listed variables: their grevlex block
    /// dominates, remaining variables compared grevlex afterwards.
    Elimination { eliminated: Vec<usize> },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // larger = last nonzero difference negative
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for i in 0..a.len() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => grevlex(&a.0, &b.0),
            TermOrder::Lex => lex(&a.0, &b.0),
            TermOrder::Weight(w) => {
                debug_assert_eq!(w.len(), a.nvars());
                let wa = weight_form(w, &a.0);
                let wb = weight_form(w, &b.0);
                match wa.cmp(&wb) {
                    Ordering::Equal => grevlex(&a.0, &b.0),
                    ord => ord,
                }
            }
            TermOrder::Elimination { eliminated } => {
                let pa: Vec<u32> = eliminated.iter().map(|&v| a.0[v]).collect();
                let pb: Vec<u32> = eliminated.iter().map(|&v| b.0[v]).collect();
                match grevlex(&pa, &pb) {
                    Ordering::Equal => grevlex(&a.0, &b.0),
                    ord => ord,
                }
            }
        }
    }

    /// Weight order built from a weight vector that may fail non-negativity
    /// only by a uniform shift: callers pass the raw vector, we shift all
    /// entries by the minimum so the invariant holds.
    pub fn weight_shifted(raw: &[Rational]) -> TermOrder {
        let min = raw.iter().min().cloned().unwrap_or_else(Rational::zero);
        let shifted = raw.iter().map(|w| w - &min).collect();
        TermOrder::Weight(shifted)
    }
}

fn weight_form(w: &[Rational], exps: &[u32]) -> Rational {
    let mut acc = Rational::zero();
    for (wi, &e) in w.iter().zip(exps) {
        if e != 0 {
            acc += wi * Rational::from_integer(crate::Integer::from(e));
        }
    }
    acc
}
