use super::subsets;
use super::{GeometryError, HypersurfaceFamily, Variety};
use crate::algebra::{dimension_and_degree, Budget};
use crate::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Mutex;

/// How subsets with empty trace on `V` enter the distributive constant.
///
/// `SkipEmpty` (default) drops them; `Literal` applies the `dim Ø = -1`
/// convention, giving them codimension `k + 1`. The literal reading makes
/// the constant degenerate to `q/(k+1)` for large families in general
/// position, so it is kept only for auditing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    SkipEmpty,
    Literal,
}

/// Verdict of an `N`-subgeneral-position check.
#[derive(Debug, Clone, Serialize)]
pub struct PositionVerdict {
    pub n: u32,
    pub holds: bool,
    /// True when `q <= N`: the defining condition quantifies over
    /// `(N+1)`-subsets, so it holds vacuously.
    pub vacuous: bool,
    /// An `(N+1)`-subset (1-based) with non-empty trace, when `holds` fails.
    pub witness: Option<Vec<usize>>,
}

/// Variety + family with a shared memoised codimension oracle.
///
/// Every combinatorial question (position level, Bézout properties,
/// distributive constants of the family and of all its subfamilies) reduces
/// to `codim` calls, which are cached by sorted index subset.
pub struct FamilyContext {
    variety: Variety,
    family: HypersurfaceFamily,
    budget: Budget,
    max_subsets_q: usize,
    memo: Mutex<HashMap<Vec<usize>, i64>>,
}

impl FamilyContext {
    pub fn new(
        variety: Variety,
        family: HypersurfaceFamily,
        budget: Budget,
    ) -> Result<Self, GeometryError> {
        if family.forms()[0].nvars() != variety.nvars() {
            return Err(GeometryError::Input(
                "family and variety live in different ambient spaces".into(),
            ));
        }
        // no hypersurface may contain V
        for (i, f) in family.forms().iter().enumerate() {
            if variety.ideal().contains(f, &budget)? {
                return Err(GeometryError::ContainsVariety { index: i + 1 });
            }
        }
        Ok(FamilyContext {
            variety,
            family,
            budget,
            max_subsets_q: 20,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// Override the exhaustive-enumeration cap on the family size.
    pub fn with_subset_budget(mut self, q: usize) -> Self {
        self.max_subsets_q = q;
        self
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn family(&self) -> &HypersurfaceFamily {
        &self.family
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn q(&self) -> usize {
        self.family.len()
    }

    pub fn k(&self) -> i64 {
        self.variety.dim()
    }

    fn check_subset_budget(&self) -> Result<(), GeometryError> {
        if self.q() > self.max_subsets_q {
            return Err(GeometryError::Resource(format!(
                "subset enumeration limited to q <= {}, family has q = {}",
                self.max_subsets_q,
                self.q()
            )));
        }
        Ok(())
    }

    /// `codim_V(Q_Gamma) = k - dim(V ∩ ⋂_{j in Gamma} Q_j)`, in `[0, k+1]`
    /// with `k+1` meaning empty trace (`dim Ø = -1` convention).
    pub fn codim(&self, gamma: &[usize]) -> Result<i64, GeometryError> {
        if gamma.is_empty() {
            return Err(GeometryError::Input("codim of the empty index set".into()));
        }
        let mut key: Vec<usize> = gamma.to_vec();
        key.sort_unstable();
        key.dedup();
        if key.iter().any(|&i| i >= self.q()) {
            return Err(GeometryError::Input(format!(
                "index out of range in subset {key:?}"
            )));
        }
        if let Some(&c) = self.memo.lock().unwrap().get(&key) {
            return Ok(c);
        }
        let extra: Vec<_> = key.iter().map(|&i| self.family.forms()[i].clone()).collect();
        let cut = self.variety.ideal().extended(extra)?;
        let (dim, _) = dimension_and_degree(&cut, &self.budget)?;
        let codim = self.variety.dim() - dim;
        self.memo.lock().unwrap().insert(key, codim);
        Ok(codim)
    }

    /// True when the trace of the subset on `V` is non-empty.
    pub fn trace_nonempty(&self, gamma: &[usize]) -> Result<bool, GeometryError> {
        Ok(self.codim(gamma)? <= self.variety.dim())
    }

    /// Smallest `N` for which the family is in `N`-subgeneral position,
    /// i.e. the largest subset cardinality with non-empty trace on `V`.
    pub fn position_level(&self) -> Result<u32, GeometryError> {
        self.check_subset_budget()?;
        let mut level = 0u32;
        for gamma in subsets::all_nonempty(self.q()) {
            if self.trace_nonempty(&gamma)? {
                level = level.max(gamma.len() as u32);
            }
        }
        Ok(level)
    }

    /// `N`-subgeneral position: every `(N+1)`-subset has empty trace on `V`.
    pub fn check_subgeneral_position(&self, n: u32) -> Result<PositionVerdict, GeometryError> {
        if (n as i64) < self.variety.dim() {
            return Err(GeometryError::Input(format!(
                "subgeneral position level N = {n} must be at least dim V = {} \
                 (N = k is general position)",
                self.variety.dim()
            )));
        }
        let take = n as usize + 1;
        if self.q() < take {
            return Ok(PositionVerdict {
                n,
                holds: true,
                vacuous: true,
                witness: None,
            });
        }
        self.check_subset_budget()?;
        for gamma in subsets::k_subsets(self.q(), take) {
            if self.trace_nonempty(&gamma)? {
                return Ok(PositionVerdict {
                    n,
                    holds: false,
                    vacuous: false,
                    witness: Some(gamma.iter().map(|i| i + 1).collect()),
                });
            }
        }
        Ok(PositionVerdict {
            n,
            holds: true,
            vacuous: false,
            witness: None,
        })
    }

    /// Weak Bézout property, read literally: for every pair of subsets with
    /// `c(I) = c(J) = 1`, the union satisfies `c(I ∪ J) <= 2`.
    pub fn check_weak_bezout(&self) -> Result<(bool, Option<(Vec<usize>, Vec<usize>)>), GeometryError> {
        self.check_subset_budget()?;
        let mut divisor_like: Vec<Vec<usize>> = Vec::new();
        for gamma in subsets::all_nonempty(self.q()) {
            if self.codim(&gamma)? == 1 {
                divisor_like.push(gamma);
            }
        }
        for i in &divisor_like {
            for j in &divisor_like {
                let u = subsets::union(i, j);
                if self.codim(&u)? > 2 {
                    return Ok((false, Some((i.clone(), j.clone()))));
                }
            }
        }
        Ok((true, None))
    }

    /// Bézout property: `c(I ∪ J) <= c(I) + c(J)` for all non-empty subset
    /// pairs (the empty subset has codimension 0 and is trivially fine).
    pub fn check_bezout(&self) -> Result<(bool, Option<(Vec<usize>, Vec<usize>)>), GeometryError> {
        self.check_subset_budget()?;
        let subs = subsets::all_nonempty(self.q());
        let mut codims = Vec::with_capacity(subs.len());
        for gamma in &subs {
            codims.push(self.codim(gamma)?);
        }
        for (a, i) in subs.iter().enumerate() {
            for (b, j) in subs.iter().enumerate() {
                if b < a {
                    continue;
                }
                let u = subsets::union(i, j);
                if self.codim(&u)? > codims[a] + codims[b] {
                    return Ok((false, Some((i.clone(), j.clone()))));
                }
            }
        }
        Ok((true, None))
    }

    /// Distributive constant of the whole family.
    pub fn distributive_constant(
        &self,
        convention: Convention,
    ) -> Result<(Rational, Vec<usize>), GeometryError> {
        self.distributive_constant_of(&(0..self.q()).collect::<Vec<_>>(), convention)
    }

    /// Distributive constant of the subfamily indexed by `support`: the
    /// maximum of `#Gamma / codim(Gamma)` over subsets of the support, with
    /// ties broken by smallest cardinality then lexicographic order.
    pub fn distributive_constant_of(
        &self,
        support: &[usize],
        convention: Convention,
    ) -> Result<(Rational, Vec<usize>), GeometryError> {
        self.check_subset_budget()?;
        if support.is_empty() {
            return Err(GeometryError::Input(
                "distributive constant of an empty family".into(),
            ));
        }
        let k = self.variety.dim();
        let mut best: Option<(Rational, Vec<usize>)> = None;
        for pattern in subsets::all_nonempty(support.len()) {
            let gamma: Vec<usize> = pattern.iter().map(|&p| support[p]).collect();
            let c = self.codim(&gamma)?;
            if c == 0 {
                return Err(GeometryError::ZeroCodimension {
                    subset: gamma.iter().map(|i| i + 1).collect(),
                });
            }
            if c == k + 1 && convention == Convention::SkipEmpty {
                continue;
            }
            let ratio = Rational::new(Integer::from(gamma.len()), Integer::from(c));
            match &best {
                Some((cur, _)) if *cur >= ratio => {}
                _ => best = Some((ratio, gamma)),
            }
        }
        best.ok_or_else(|| {
            GeometryError::Input(
                "all subsets have empty trace on V; distributive constant undefined under skip-empty"
                    .into(),
            )
        })
    }

    /// Positional sanity assertion used by the property suites: in
    /// `N`-subgeneral position, every subset with non-empty trace satisfies
    /// `#Gamma <= N` and `c(Gamma) >= #Gamma - (N - k)`.
    pub fn position_inequalities_hold(&self, n: u32) -> Result<bool, GeometryError> {
        let k = self.variety.dim();
        for gamma in subsets::all_nonempty(self.q()) {
            let c = self.codim(&gamma)?;
            if c <= k {
                let card = gamma.len() as i64;
                if card > n as i64 || c < card - (n as i64 - k) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn lines_family(gens: &[&str]) -> HypersurfaceFamily {
        let forms = gens.iter().map(|s| parse_poly(s, 3).unwrap()).collect();
        HypersurfaceFamily::new(3, forms).unwrap()
    }

    fn p2_context(gens: &[&str]) -> FamilyContext {
        FamilyContext::new(
            Variety::projective_space(2),
            lines_family(gens),
            Budget::default(),
        )
        .unwrap()
    }

    #[test]
    fn codim_of_divisor_and_empty() {
        let ctx = p2_context(&["x0", "x1", "x2"]);
        assert_eq!(ctx.codim(&[0]).unwrap(), 1);
        // all three coordinate lines: empty intersection, codim k+1 = 3
        assert_eq!(ctx.codim(&[0, 1, 2]).unwrap(), 3);
    }

    #[test]
    fn concurrent_lines_codim() {
        // x1, x2, x1 + x2 all pass through (1:0:0)
        let ctx = p2_context(&["x1", "x2", "x1 + x2"]);
        assert_eq!(ctx.codim(&[0, 1, 2]).unwrap(), 2);
    }

    #[test]
    fn subgeneral_position_checks() {
        let coord = p2_context(&["x0", "x1", "x2"]);
        assert!(coord.check_subgeneral_position(2).unwrap().holds);
        let concurrent = p2_context(&["x1", "x2", "x1 + x2"]);
        let verdict = concurrent.check_subgeneral_position(2).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.witness, Some(vec![1, 2, 3]));
        // four concurrent lines are not in 3-subgeneral position
        let four = p2_context(&["x1", "x2", "x1 + x2", "x1 - x2"]);
        assert!(!four.check_subgeneral_position(3).unwrap().holds);
        // vacuous case: q = 3 <= N = 5
        let verdict = coord.check_subgeneral_position(5).unwrap();
        assert!(verdict.holds && verdict.vacuous);
    }

    #[test]
    fn distributive_constant_examples() {
        // single hypersurface
        let single = p2_context(&["x0"]);
        let (delta, witness) = single.distributive_constant(Convention::SkipEmpty).unwrap();
        assert_eq!(delta, crate::rat_int(1));
        assert_eq!(witness, vec![0]);
        // three concurrent lines: pairs 2/2, triple 3/2
        let concurrent = p2_context(&["x1", "x2", "x1 + x2"]);
        let (delta, witness) = concurrent
            .distributive_constant(Convention::SkipEmpty)
            .unwrap();
        assert_eq!(delta, crate::rat(3, 2));
        assert_eq!(witness, vec![0, 1, 2]);
        // coordinate lines: every non-empty-trace subset has ratio 1
        let coord = p2_context(&["x0", "x1", "x2"]);
        let (delta, _) = coord.distributive_constant(Convention::SkipEmpty).unwrap();
        assert_eq!(delta, crate::rat_int(1));
        // literal convention counts empty traces with codim k+1
        let (lit, _) = coord.distributive_constant(Convention::Literal).unwrap();
        assert_eq!(lit, crate::rat_int(1));
    }

    #[test]
    fn bezout_on_projective_space() {
        let ctx = p2_context(&["x1", "x2", "x1 + x2", "x0 - x2"]);
        assert!(ctx.check_bezout().unwrap().0);
        assert!(ctx.check_weak_bezout().unwrap().0);
    }

    #[test]
    fn monotonicity_of_distributive_constant() {
        let ctx = p2_context(&["x1", "x2", "x1 + x2", "x0 - x2"]);
        let full = ctx
            .distributive_constant_of(&[0, 1, 2, 3], Convention::SkipEmpty)
            .unwrap()
            .0;
        let sub = ctx
            .distributive_constant_of(&[0, 1], Convention::SkipEmpty)
            .unwrap()
            .0;
        assert!(sub <= full);
    }

    #[test]
    fn position_level_matches_definition() {
        let concurrent = p2_context(&["x1", "x2", "x1 + x2"]);
        assert_eq!(concurrent.position_level().unwrap(), 3);
        let coord = p2_context(&["x0", "x1", "x2"]);
        assert_eq!(coord.position_level().unwrap(), 2);
    }

    #[test]
    fn containment_is_rejected() {
        // the conic contains the curve V(conic), so the family is invalid
        let conic_ideal =
            crate::algebra::Ideal::new(3, vec![parse_poly("x0*x2 - x1^2", 3).unwrap()]).unwrap();
        let v = Variety::new(conic_ideal, true, &Budget::default()).unwrap();
        let fam = lines_family(&["x0*x2 - x1^2"]);
        assert!(matches!(
            FamilyContext::new(v, fam, Budget::default()),
            Err(GeometryError::ContainsVariety { index: 1 })
        ));
    }
}
