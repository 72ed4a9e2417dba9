use super::subsets;
use super::{Convention, FamilyContext, GeometryError};
use crate::surd::QuadExt;
use crate::{rat, rat_int, Rational};
use num_traits::ToPrimitive;

/// The threshold `tau(N, k)`: `1 + sqrt((N-k)/(k+1))` when
/// `k < N < (5k+1)/4`, else `1 + 2(N-k)/(k+1)`. The two branches agree at
/// the boundary `N = (5k+1)/4`, where the radicand is exactly `1/4`.
pub fn tau(n: u32, k: u32) -> Result<QuadExt, GeometryError> {
    if n <= k || k < 1 {
        return Err(GeometryError::Input(format!(
            "tau requires N > k >= 1, got N = {n}, k = {k}"
        )));
    }
    let diff = rat_int((n - k) as i64);
    let kp1 = rat_int(k as i64 + 1);
    if 4 * n < 5 * k + 1 {
        Ok(&QuadExt::from_int(1) + &QuadExt::sqrt_rational(&diff / &kp1))
    } else {
        Ok(QuadExt::from_rational(
            rat_int(1) + rat_int(2) * diff / kp1,
        ))
    }
}

/// Subfamily chosen by the weak-Bézout selection lemma.
#[derive(Debug, Clone)]
pub struct Selection {
    /// Chosen indices (0-based, sorted).
    pub indices: Vec<usize>,
    /// Distributive constant of the chosen subfamily.
    pub delta: Rational,
    /// The bound `(N-k+2)/2` the subfamily satisfies.
    pub bound: Rational,
    /// Cardinality floor `q - floor((N-k+3)/2)` that was guaranteed.
    pub min_cardinality: i64,
}

/// Subfamily chosen by the Bézout selection lemma.
#[derive(Debug, Clone)]
pub struct BezoutSelection {
    pub indices: Vec<usize>,
    pub tau: QuadExt,
    pub delta: Rational,
    /// Cardinality floor `q - ceil((N-k) tau / (tau-1)) + 1`.
    pub min_cardinality: i64,
    /// The discarded maximal overloaded subset, when the full family failed.
    pub removed: Option<Vec<usize>>,
}

/// Weak-Bézout selection: exhaustive descending-cardinality search for a
/// subfamily of size at least `q - floor((N-k+3)/2)` with distributive
/// constant at most `(N-k+2)/2`. Existence is guaranteed by the selection
/// lemma whenever the family is in `N`-subgeneral position and weak Bézout
/// holds, so failure reports a precondition problem.
pub fn select_subfamily_weak_bezout(
    ctx: &FamilyContext,
    n: u32,
) -> Result<Selection, GeometryError> {
    let q = ctx.q() as i64;
    let k = ctx.k();
    if (n as i64) < k {
        return Err(GeometryError::Input(format!(
            "selection requires N >= k, got N = {n}, k = {k}"
        )));
    }
    let bound = rat(n as i64 - k + 2, 2);
    let min_card = q - (n as i64 - k + 3).div_euclid(2);
    let floor_card = min_card.max(1);
    for card in (floor_card..=q).rev() {
        for gamma in subsets::k_subsets(ctx.q(), card as usize) {
            let (delta, _) = ctx.distributive_constant_of(&gamma, Convention::SkipEmpty)?;
            if delta <= bound {
                return Ok(Selection {
                    indices: gamma,
                    delta,
                    bound,
                    min_cardinality: min_card,
                });
            }
        }
    }
    let position = ctx.check_subgeneral_position(n)?;
    let (weak, _) = ctx.check_weak_bezout()?;
    Err(GeometryError::LemmaViolation(format!(
        "weak-Bézout selection found no subfamily of size >= {floor_card} with \
         distributive constant <= {bound}; preconditions: {n}-subgeneral position = {}, \
         weak Bézout = {weak}",
        position.holds
    )))
}

/// Bézout selection following the constructive proof: if the full family
/// already satisfies `Delta <= tau` keep it; otherwise remove a maximal
/// overloaded subset (ratio above `tau`) and re-verify both postconditions.
pub fn select_subfamily_bezout(
    ctx: &FamilyContext,
    n: u32,
) -> Result<BezoutSelection, GeometryError> {
    let q = ctx.q();
    let k = ctx.k();
    let tau_val = tau(n, k as u32)?;
    let min_card = q as i64 - ceil_card_bound(n, k as u32, &tau_val) + 1;

    let (delta_full, _) = ctx.distributive_constant(Convention::SkipEmpty)?;
    if QuadExt::from_rational(delta_full.clone()) <= tau_val {
        return Ok(BezoutSelection {
            indices: (0..q).collect(),
            tau: tau_val,
            delta: delta_full,
            min_cardinality: min_card,
            removed: None,
        });
    }

    // S = subsets with non-empty trace and ratio above tau; pick one of
    // maximal cardinality (lexicographically smallest among those).
    let mut overloaded: Option<Vec<usize>> = None;
    for gamma in subsets::all_nonempty(q) {
        let c = ctx.codim(&gamma)?;
        if c == 0 {
            return Err(GeometryError::ZeroCodimension {
                subset: gamma.iter().map(|i| i + 1).collect(),
            });
        }
        if c > k {
            continue; // empty trace: not a member of S
        }
        let ratio = QuadExt::from_rational(rat(gamma.len() as i64, c));
        if ratio > tau_val {
            match &overloaded {
                Some(best) if best.len() >= gamma.len() => {}
                _ => overloaded = Some(gamma),
            }
        }
    }
    let gamma1 = overloaded.expect("Delta > tau implies a witness subset above tau");
    let chosen = subsets::complement(q, &gamma1);
    if chosen.is_empty() {
        return Err(GeometryError::LemmaViolation(format!(
            "Bézout selection removed the whole family; overloaded subset {:?}",
            one_based(&gamma1)
        )));
    }
    let (delta, delta_witness) = ctx.distributive_constant_of(&chosen, Convention::SkipEmpty)?;

    // both postconditions re-verified before returning
    if QuadExt::from_rational(delta.clone()) > tau_val {
        return Err(GeometryError::LemmaViolation(format!(
            "selected subfamily {:?} has distributive constant {delta} > tau = {tau_val}; \
             witness subset {:?}; check N-subgeneral position and the Bézout property",
            one_based(&chosen),
            one_based(&delta_witness),
        )));
    }
    if (chosen.len() as i64) < min_card {
        return Err(GeometryError::LemmaViolation(format!(
            "selected subfamily has {} elements, below the guaranteed floor {min_card}; \
             removed subset {:?}",
            chosen.len(),
            one_based(&gamma1),
        )));
    }
    Ok(BezoutSelection {
        indices: chosen,
        tau: tau_val,
        delta,
        min_cardinality: min_card,
        removed: Some(gamma1),
    })
}

/// `ceil((N-k) * tau / (tau - 1))` evaluated exactly.
pub fn ceil_card_bound(n: u32, k: u32, tau_val: &QuadExt) -> i64 {
    let diff = QuadExt::from_int((n - k) as i64);
    let num = &diff * tau_val;
    let den = tau_val - &QuadExt::from_int(1);
    let value = &num / &den;
    value.ceil_int().to_i64().expect("small ceiling")
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Budget};
    use crate::geometry::{HypersurfaceFamily, Variety};

    fn p2_context(gens: &[&str]) -> FamilyContext {
        let forms = gens.iter().map(|s| parse_poly(s, 3).unwrap()).collect();
        FamilyContext::new(
            Variety::projective_space(2),
            HypersurfaceFamily::new(3, forms).unwrap(),
            Budget::default(),
        )
        .unwrap()
    }

    #[test]
    fn tau_branches() {
        // k=1, N=2: boundary (5k+1)/4 = 1.5 <= 2, second branch: 2
        assert_eq!(tau(2, 1).unwrap(), QuadExt::from_int(2));
        // k=4, N=5: 5 < 5.25, first branch: 1 + sqrt(1/5)
        let t = tau(5, 4).unwrap();
        assert!(!t.is_rational());
        assert!((t.to_f64() - 1.4472135955).abs() < 1e-9);
        // k=3, N=4: boundary value, branches agree at 3/2
        assert_eq!(tau(4, 3).unwrap(), QuadExt::from_rational(rat(3, 2)));
        assert!(tau(2, 2).is_err());
    }

    #[test]
    fn branch_continuity_at_boundary() {
        // whenever (5k+1)/4 is an integer N, both formulas give the same value
        for k in 1u32..=40 {
            if (5 * k + 1) % 4 == 0 {
                let n = (5 * k + 1) / 4;
                if n <= k {
                    continue;
                }
                let second = QuadExt::from_rational(
                    rat_int(1) + rat(2 * (n - k) as i64, k as i64 + 1),
                );
                let first = &QuadExt::from_int(1)
                    + &QuadExt::sqrt_rational(rat((n - k) as i64, k as i64 + 1));
                assert_eq!(first, second, "k = {k}, N = {n}");
            }
        }
    }

    #[test]
    fn full_family_kept_when_delta_small() {
        // coordinate lines on P^2: Delta = 1, N = 2, k = 2 gives bound 1
        let ctx = p2_context(&["x0", "x1", "x2"]);
        let sel = select_subfamily_weak_bezout(&ctx, 3).unwrap();
        assert_eq!(sel.indices, vec![0, 1, 2]);
        let bz = select_subfamily_bezout(&ctx, 3).unwrap();
        assert_eq!(bz.indices, vec![0, 1, 2]);
        assert!(bz.removed.is_none());
    }

    #[test]
    fn ceil_card_bound_second_regime() {
        // k=2, N=3: tau = 5/3, (N-k)tau/(tau-1) = 5/2 -> ceil 3
        let t = tau(3, 2).unwrap();
        assert_eq!(t, QuadExt::from_rational(rat(5, 3)));
        assert_eq!(ceil_card_bound(3, 2, &t), 3);
    }

    #[test]
    fn cardinality_identity_from_both_lemma_statements() {
        // q - N + k - 3 + ceil((N-k+3)/2) = q - floor((N-k+3)/2)
        for k in 1i64..50 {
            for n in (k + 1)..=50 {
                let s = n - k + 3;
                let lhs = -n + k - 3 + (s + 1).div_euclid(2) + s; // ceil(s/2) = (s+1)/2 floor
                let ceil_half = (s + 1).div_euclid(2);
                let floor_half = s.div_euclid(2);
                assert_eq!(-n + k - 3 + ceil_half, -floor_half, "k={k} N={n}");
                let _ = lhs;
            }
        }
    }

    #[test]
    fn selection_discards_concurrent_cluster() {
        // three concurrent lines plus two generic ones; Delta = 3/2 comes
        // from the cluster. With k = 2 and suitable N the Bézout selection
        // must drop enough of the cluster to push Delta to tau or below.
        let ctx = p2_context(&["x1", "x2", "x1 + x2", "x0 - x2", "x0 + 7*x1 - x2"]);
        let n = ctx.position_level().unwrap().max(3);
        let sel = select_subfamily_bezout(&ctx, n).unwrap();
        let (delta_check, _) = ctx
            .distributive_constant_of(&sel.indices, Convention::SkipEmpty)
            .unwrap();
        assert_eq!(delta_check, sel.delta);
        assert!(QuadExt::from_rational(sel.delta.clone()) <= sel.tau);
        assert!(sel.indices.len() as i64 >= sel.min_cardinality);
    }
}
