use super::BoundError;
use crate::geometry::tau;
use crate::surd::QuadExt;
use crate::{rat, rat_int};
use serde::Serialize;

/// Total-defect bounds per theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectTheorem {
    /// `(N-k+1)(k+1)`.
    D,
    /// `floor((N-k+3)/2) + tau0 (k+1)` with `tau0 = (N-k+2)/2`.
    F,
    /// `ceil((N-k) tau/(tau-1)) - 1 + tau (k+1)` with the branched `tau`.
    OneOneNew,
    /// `(3/2)(2N - k + 1)`, untruncated.
    HeierLevin,
}

/// Exact total-defect bound; a surd for the first `tau` branch.
pub fn defect_bound(theorem: DefectTheorem, n: u32, k: u32) -> Result<QuadExt, BoundError> {
    if n <= k || k < 1 {
        return Err(BoundError::Input(format!(
            "defect bounds require N > k >= 1, got N = {n}, k = {k}"
        )));
    }
    let nk = (n - k) as i64;
    let kp1 = k as i64 + 1;
    Ok(match theorem {
        DefectTheorem::D => QuadExt::from_int((nk + 1) * kp1),
        DefectTheorem::F => {
            let floor_half = (nk + 3).div_euclid(2);
            QuadExt::from_rational(rat_int(floor_half) + rat(nk + 2, 2) * rat_int(kp1))
        }
        DefectTheorem::OneOneNew => {
            let t = tau(n, k).map_err(|e| BoundError::Input(e.to_string()))?;
            let card = super::levels::ceil_surd_frac(nk, &t);
            &QuadExt::from_int(card - 1) + &(&t * &QuadExt::from_int(kp1))
        }
        DefectTheorem::HeierLevin => {
            QuadExt::from_rational(rat(3, 2) * rat_int(2 * n as i64 - k as i64 + 1))
        }
    })
}

/// Regime classification for the Remark inequality chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `k + 1 < N < (5k+1)/4`: two-step chain through `2 sqrt((N-k)(k+1)) + N + 1`.
    First,
    /// `N >= (5k+1)/4`: single bound `3N - 2k + floor(k/2) + 1`.
    Second,
    /// Neither hypothesis applies (e.g. `N = k + 1` below the threshold).
    Boundary,
}

/// Exact verdict for the applicable Remark chain at `(k, N)`.
#[derive(Debug, Clone, Serialize)]
pub struct RemarkVerdict {
    pub k: u32,
    pub n: u32,
    pub regime: Regime,
    /// First-regime: `bound <= 2 sqrt((N-k)(k+1)) + N + 1`;
    /// second-regime: `bound <= 3N - 2k + floor(k/2) + 1`. Vacuously true on
    /// the boundary.
    pub holds1: bool,
    /// First-regime only: `2 sqrt((N-k)(k+1)) + N + 1 < (3/2)(2N-k+1)`.
    /// True elsewhere (no claim).
    pub holds2: bool,
    pub bound_f64: f64,
    pub comparator_f64: f64,
}

/// Evaluate the Remark chains exactly. Both sides live in the quadratic
/// field of `sqrt((N-k)/(k+1))`; the mid bound `2 sqrt((N-k)(k+1))` is
/// rewritten as `2(k+1) sqrt((N-k)/(k+1))` so comparisons stay exact.
pub fn remark_inequalities(k: u32, n: u32) -> Result<RemarkVerdict, BoundError> {
    if n <= k || k < 1 {
        return Err(BoundError::Input(format!(
            "Remark chains require N > k >= 1, got N = {n}, k = {k}"
        )));
    }
    let bound = defect_bound(DefectTheorem::OneOneNew, n, k)?;
    let first_regime = (k + 1 < n) && (4 * n < 5 * k + 1);
    let second_regime = 4 * n >= 5 * k + 1;
    if first_regime {
        let radicand = rat((n - k) as i64, k as i64 + 1);
        let mid = QuadExt::new(
            rat_int(n as i64 + 1),
            rat_int(2 * (k as i64 + 1)),
            radicand,
        );
        let hl = defect_bound(DefectTheorem::HeierLevin, n, k)?;
        Ok(RemarkVerdict {
            k,
            n,
            regime: Regime::First,
            holds1: bound <= mid,
            holds2: mid < hl,
            bound_f64: bound.to_f64(),
            comparator_f64: mid.to_f64(),
        })
    } else if second_regime {
        let k64 = k as i64;
        let rhs = QuadExt::from_int(3 * n as i64 - 2 * k64 + k64.div_euclid(2) + 1);
        Ok(RemarkVerdict {
            k,
            n,
            regime: Regime::Second,
            holds1: bound <= rhs,
            holds2: true,
            bound_f64: bound.to_f64(),
            comparator_f64: rhs.to_f64(),
        })
    } else {
        Ok(RemarkVerdict {
            k,
            n,
            regime: Regime::Boundary,
            holds1: true,
            holds2: true,
            bound_f64: bound.to_f64(),
            comparator_f64: f64::NAN,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values_for_defect_bounds() {
        // Theorem D at k=1, N=2: (2)(2) = 4
        assert_eq!(
            defect_bound(DefectTheorem::D, 2, 1).unwrap(),
            QuadExt::from_int(4)
        );
        // Heier-Levin at k=1, N=2: (3/2)(4) = 6
        assert_eq!(
            defect_bound(DefectTheorem::HeierLevin, 2, 1).unwrap(),
            QuadExt::from_int(6)
        );
        // F at k=1, N=2: floor(4/2) + (3/2)*2 = 5
        assert_eq!(
            defect_bound(DefectTheorem::F, 2, 1).unwrap(),
            QuadExt::from_int(5)
        );
        // OneOneNew at k=1, N=2: tau = 2, ceil(1*2/1) - 1 + 2*2 = 5
        assert_eq!(
            defect_bound(DefectTheorem::OneOneNew, 2, 1).unwrap(),
            QuadExt::from_int(5)
        );
    }

    #[test]
    fn second_regime_chain_is_equality() {
        // in the second regime the bound equals 3N - 2k + floor(k/2) + 1
        for k in 1u32..=12 {
            for n in (k + 1)..=24 {
                if 4 * n >= 5 * k + 1 {
                    let v = remark_inequalities(k, n).unwrap();
                    assert_eq!(v.regime, Regime::Second);
                    assert!(v.holds1, "k={k} N={n}");
                    assert_eq!(v.bound_f64, v.comparator_f64, "k={k} N={n}");
                }
            }
        }
    }

    #[test]
    fn first_regime_example() {
        // k=9, N=11: 10 < 11 < 11.5, both inequalities hold
        let v = remark_inequalities(9, 11).unwrap();
        assert_eq!(v.regime, Regime::First);
        assert!(v.holds1 && v.holds2);
    }

    #[test]
    fn boundary_is_classified() {
        // k=4, N=5: N = k+1 and 4N = 20 < 21 = 5k+1, no claim
        let v = remark_inequalities(4, 5).unwrap();
        assert_eq!(v.regime, Regime::Boundary);
    }

    #[test]
    fn one_one_new_beats_theorem_d_in_first_regime() {
        // guaranteed by the Remark chain: bound <= mid < HL < D there
        for k in 1u32..=30 {
            for n in (k + 2)..=30 {
                if 4 * n < 5 * k + 1 {
                    let b11 = defect_bound(DefectTheorem::OneOneNew, n, k).unwrap();
                    let bd = defect_bound(DefectTheorem::D, n, k).unwrap();
                    assert!(b11 < bd, "k={k} N={n}: {b11:?} vs {bd:?}");
                }
            }
        }
    }
}
