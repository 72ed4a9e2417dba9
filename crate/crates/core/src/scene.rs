//! Versioned JSON scene files: the on-disk interface between the CLI and
//! the computational layers. A scene bundles a variety, a hypersurface
//! family, and optional curve and point blocks, plus options (epsilon,
//! grids, budgets, tolerances). Reports embed the conventions in force.

use crate::algebra::{parse_poly, Budget, Ideal};
use crate::geometry::{Convention, FamilyContext, GeometryError, HypersurfaceFamily, Variety};
use crate::nevanlinna::curve::{CurveSpec, Domain};
use crate::nevanlinna::parse::parse_expr;
use crate::nevanlinna::NevanlinnaError;
use crate::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

pub const SCENE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Nevanlinna(#[from] NevanlinnaError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneFile {
    #[serde(default = "default_version")]
    pub version: u32,
    pub ambient: usize,
    #[serde(default)]
    pub variety: Vec<String>,
    #[serde(default)]
    pub family: Vec<String>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n_subgeneral: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<Convention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_smooth: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<PointsBlock>,
    #[serde(default)]
    pub options: SceneOptions,
}

fn default_version() -> u32 {
    SCENE_VERSION
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveBlock {
    pub components: Vec<String>,
    pub domain: DomainBlock,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainBlock {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointsBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub list: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SceneOptions {
    /// Rational epsilon as a string, e.g. "1/2".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_subsets: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
}

/// A validated scene: every referenced polynomial parsed, the variety's
/// dimension/degree computed, curve membership checked.
pub struct LoadedScene {
    pub raw: SceneFile,
    pub variety: Variety,
    pub family: Option<HypersurfaceFamily>,
    pub curve: Option<CurveSpec>,
    pub convention: Convention,
    pub budget: Budget,
    pub eps: Rational,
}

impl LoadedScene {
    pub fn family_context(&self) -> Result<FamilyContext, SceneError> {
        let family = self
            .family
            .clone()
            .ok_or_else(|| SceneError::Schema("scene has no family block".into()))?;
        Ok(FamilyContext::new(
            self.variety.clone(),
            family,
            self.budget.clone(),
        )?)
    }
}

pub fn parse_scene(json: &str) -> Result<SceneFile, SceneError> {
    let scene: SceneFile = serde_json::from_str(json)?;
    if scene.version != SCENE_VERSION {
        return Err(SceneError::Schema(format!(
            "unsupported scene version {} (expected {SCENE_VERSION})",
            scene.version
        )));
    }
    Ok(scene)
}

pub fn load_scene(json: &str) -> Result<LoadedScene, SceneError> {
    let raw = parse_scene(json)?;
    let nvars = raw.ambient + 1;
    if raw.ambient < 1 {
        return Err(SceneError::Schema("ambient dimension must be >= 1".into()));
    }

    let mut budget = Budget::default();
    if let Some(d) = raw.options.budget_degree {
        budget.max_degree = d;
    }

    let variety = if raw.variety.is_empty() {
        Variety::projective_space(raw.ambient)
    } else {
        let gens = raw
            .variety
            .iter()
            .map(|s| parse_poly(s, nvars))
            .collect::<Result<Vec<_>, _>>()?;
        Variety::new(
            Ideal::new(nvars, gens)?,
            raw.declared_smooth.unwrap_or(false),
            &budget,
        )?
    };

    let family = if raw.family.is_empty() {
        None
    } else {
        let forms = raw
            .family
            .iter()
            .map(|s| parse_poly(s, nvars))
            .collect::<Result<Vec<_>, _>>()?;
        Some(HypersurfaceFamily::new(nvars, forms)?)
    };

    let curve = match &raw.curve {
        None => None,
        Some(block) => {
            let comps = block
                .components
                .iter()
                .map(|s| parse_expr(s))
                .collect::<Result<Vec<_>, _>>()?;
            let domain = match block.domain.kind.as_str() {
                "plane" => Domain::Plane,
                "disc" => Domain::Disc {
                    radius: block
                        .domain
                        .r
                        .ok_or_else(|| SceneError::Schema("disc domain needs R".into()))?,
                },
                "annulus" => Domain::Annulus {
                    r0: block
                        .domain
                        .r
                        .ok_or_else(|| SceneError::Schema("annulus domain needs R".into()))?,
                },
                other => {
                    return Err(SceneError::Schema(format!(
                        "unknown domain type `{other}` (plane|disc|annulus)"
                    )))
                }
            };
            Some(CurveSpec::new(comps, domain, Some(variety.clone()))?)
        }
    };

    let eps = match &raw.options.eps {
        None => crate::rat(1, 2),
        Some(s) => parse_rational(s)
            .ok_or_else(|| SceneError::Schema(format!("bad eps `{s}` (want e.g. 1/2)")))?,
    };

    let convention = raw.convention.unwrap_or_default();
    Ok(LoadedScene {
        raw,
        variety,
        family,
        curve,
        convention,
        budget,
        eps,
    })
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    Rational::from_str(s.trim()).ok().or_else(|| {
        // allow decimal shorthand like 0.5
        let f: f64 = s.trim().parse().ok()?;
        let scaled = (f * 1_000_000.0).round() as i64;
        Some(Rational::new(
            Integer::from(scaled),
            Integer::from(1_000_000),
        ))
    })
}

/// Grid specification `a:b:steps[,log]`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, SceneError> {
    let (range, log) = match spec.split_once(',') {
        Some((r, flag)) if flag.trim() == "log" => (r, true),
        Some((r, flag)) if flag.trim() == "lin" => (r, false),
        Some(_) => return Err(SceneError::Schema(format!("bad grid suffix in `{spec}`"))),
        None => (spec, false),
    };
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(SceneError::Schema(format!(
            "grid must be a:b:steps[,log], got `{spec}`"
        )));
    }
    let a: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| SceneError::Schema(format!("bad grid start `{}`", parts[0])))?;
    let b: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| SceneError::Schema(format!("bad grid end `{}`", parts[1])))?;
    let steps: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| SceneError::Schema(format!("bad grid steps `{}`", parts[2])))?;
    if steps < 2 || b <= a || (log && a <= 0.0) {
        return Err(SceneError::Schema(format!("degenerate grid `{spec}`")));
    }
    if log {
        Ok(crate::nevanlinna::log_grid(a, b, steps))
    } else {
        Ok((0..steps)
            .map(|i| a + (b - a) * i as f64 / (steps - 1) as f64)
            .collect())
    }
}
