use super::{Convention, FamilyContext, GeometryError};
use crate::interval::rational_to_f64;
use serde::Serialize;

/// Full combinatorial report for a scene: codimension table, position level,
/// Bézout verdicts, distributive constant with witness, and both subfamily
/// selections when the corresponding property holds.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub ambient: usize,
    pub variety_dim: i64,
    pub variety_degree: String,
    pub q: usize,
    pub degrees: Vec<u32>,
    pub lcm_degree: u32,
    pub convention: Convention,
    /// `(subset (1-based), codim)` for every non-empty subset evaluated.
    pub codim_table: Vec<(Vec<usize>, i64)>,
    pub position_level: u32,
    pub position_verdicts: Vec<super::PositionVerdict>,
    pub weak_bezout: bool,
    pub bezout: bool,
    pub distributive_constant: String,
    pub distributive_constant_f64: f64,
    pub witness: Vec<usize>,
    pub weak_bezout_selection: Option<SelectionReport>,
    pub bezout_selection: Option<SelectionReport>,
    /// Conventions and unverified hypotheses affecting interpretation.
    pub caveats: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelectionReport {
    pub n: u32,
    pub indices: Vec<usize>,
    pub delta: String,
    pub delta_f64: f64,
    pub bound: String,
    pub bound_f64: f64,
    pub min_cardinality: i64,
}

impl FamilyReport {
    /// Run the whole analysis pipeline at position level `n` (or the
    /// detected level when absent).
    pub fn build(
        ctx: &FamilyContext,
        n: Option<u32>,
        convention: Convention,
    ) -> Result<Self, GeometryError> {
        let level = ctx.position_level()?;
        let k = ctx.k();
        let n_eff = n.unwrap_or_else(|| level.max(k as u32));
        let mut verdicts = Vec::new();
        for cand in [n_eff, n_eff + 1] {
            if cand as i64 >= k {
                verdicts.push(ctx.check_subgeneral_position(cand)?);
            }
        }
        let (weak, _) = ctx.check_weak_bezout()?;
        let (bez, _) = ctx.check_bezout()?;
        let (delta, witness) = ctx.distributive_constant(convention)?;

        let mut codim_table = Vec::new();
        for gamma in super::subsets::all_nonempty(ctx.q()) {
            let c = ctx.codim(&gamma)?;
            codim_table.push((gamma.iter().map(|i| i + 1).collect(), c));
        }

        let position_ok = n_eff as i64 >= k && ctx.check_subgeneral_position(n_eff)?.holds;
        let weak_selection = if weak && position_ok {
            let sel = super::select_subfamily_weak_bezout(ctx, n_eff)?;
            Some(SelectionReport {
                n: n_eff,
                indices: sel.indices.iter().map(|i| i + 1).collect(),
                delta: sel.delta.to_string(),
                delta_f64: rational_to_f64(&sel.delta),
                bound: sel.bound.to_string(),
                bound_f64: rational_to_f64(&sel.bound),
                min_cardinality: sel.min_cardinality,
            })
        } else {
            None
        };
        let bez_selection = if bez && position_ok && n_eff as i64 > k {
            let sel = super::select_subfamily_bezout(ctx, n_eff)?;
            Some(SelectionReport {
                n: n_eff,
                indices: sel.indices.iter().map(|i| i + 1).collect(),
                delta: sel.delta.to_string(),
                delta_f64: rational_to_f64(&sel.delta),
                bound: sel.tau.to_string(),
                bound_f64: sel.tau.to_f64(),
                min_cardinality: sel.min_cardinality,
            })
        } else {
            None
        };

        let mut caveats = vec![
            "ideal primality is assumed, not verified".to_string(),
            "smoothness is caller metadata, not verified".to_string(),
            "weak Bézout follows the literal codim <= 2 reading".to_string(),
        ];
        if convention == Convention::Literal {
            caveats.push("literal dim Ø = -1 convention in the distributive constant".into());
        }

        Ok(FamilyReport {
            ambient: ctx.variety().ambient(),
            variety_dim: k,
            variety_degree: ctx.variety().degree().to_string(),
            q: ctx.q(),
            degrees: ctx.family().degrees().to_vec(),
            lcm_degree: ctx.family().lcm_degree(),
            convention,
            codim_table,
            position_level: level,
            position_verdicts: verdicts,
            weak_bezout: weak,
            bezout: bez,
            distributive_constant: delta.to_string(),
            distributive_constant_f64: rational_to_f64(&delta),
            witness: witness.iter().map(|i| i + 1).collect(),
            weak_bezout_selection: weak_selection,
            bezout_selection: bez_selection,
            caveats,
        })
    }

    /// Stable human-readable rendering (reports must be byte-identical for
    /// identical scenes).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        use std::fmt::Write;
        let _ = writeln!(out, "family analysis on P^{} (dim V = {}, deg V = {})", self.ambient, self.variety_dim, self.variety_degree);
        let _ = writeln!(out, "  q = {}, degrees = {:?}, d = {}", self.q, self.degrees, self.lcm_degree);
        let _ = writeln!(out, "  position level N = {}", self.position_level);
        for v in &self.position_verdicts {
            let _ = writeln!(
                out,
                "  {}-subgeneral: {}{}",
                v.n,
                v.holds,
                if v.vacuous { " (vacuous)" } else { "" }
            );
        }
        let _ = writeln!(out, "  weak Bézout = {}, Bézout = {}", self.weak_bezout, self.bezout);
        let _ = writeln!(
            out,
            "  distributive constant = {} (witness subset {:?}, convention {:?})",
            self.distributive_constant, self.witness, self.convention
        );
        if let Some(sel) = &self.weak_bezout_selection {
            let _ = writeln!(
                out,
                "  weak-Bézout selection (N={}): subset {:?}, Delta = {} <= {}",
                sel.n, sel.indices, sel.delta, sel.bound
            );
        }
        if let Some(sel) = &self.bezout_selection {
            let _ = writeln!(
                out,
                "  Bézout selection (N={}): subset {:?}, Delta = {} <= tau = {}",
                sel.n, sel.indices, sel.delta, sel.bound
            );
        }
        for c in &self.caveats {
            let _ = writeln!(out, "  caveat: {c}");
        }
        out
    }
}
