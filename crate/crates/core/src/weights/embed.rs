use super::WeightsError;
use crate::algebra::{
    dimension_and_degree, eliminate, project_ideal, Budget, Ideal, Poly,
};
use crate::geometry::{HypersurfaceFamily, Variety};
use crate::Integer;
use std::collections::BTreeSet;

/// The image of `V` under the morphism defined by the degree-normalised
/// family, as a subvariety of projective `(q-1)`-space.
#[derive(Debug, Clone)]
pub struct EmbeddedImage {
    source_dim: i64,
    source_degree: Integer,
    common_degree: u32,
    ideal: Ideal,
    dim: i64,
    degree: Integer,
}

impl EmbeddedImage {
    /// Image ideal in the `q` image coordinates, standard grading.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn degree(&self) -> &Integer {
        &self.degree
    }

    pub fn common_degree(&self) -> u32 {
        self.common_degree
    }

    pub fn source_dim(&self) -> i64 {
        self.source_dim
    }

    pub fn source_degree(&self) -> &Integer {
        &self.source_degree
    }

    /// The bound `deg Y <= d^k deg V` the construction guarantees.
    pub fn degree_bound(&self) -> Integer {
        Integer::from(self.common_degree).pow(self.source_dim as u32) * &self.source_degree
    }
}

/// Compute the image `Y` of `V` under `x -> (D_1(x) : ... : D_q(x))` with
/// the forms normalised to the common degree `d`.
///
/// Requires an empty base locus on `V` (the map must be a morphism there);
/// the image ideal is the elimination of the source variables from the graph
/// ideal `I_V + <y_j - D_j(x)>`, graded with weight `d` on each `y_j`.
pub fn embed_family(
    variety: &Variety,
    family: &HypersurfaceFamily,
    budget: &Budget,
) -> Result<EmbeddedImage, WeightsError> {
    let nx = variety.nvars();
    let q = family.len();
    let d = family.lcm_degree();
    let normalized = family.normalized_forms();

    // base locus must be empty: V cut by all forms has dimension -1
    let cut = variety.ideal().extended(normalized.clone())?;
    let (base_dim, _) = dimension_and_degree(&cut, budget)?;
    if base_dim >= 0 {
        return Err(WeightsError::BaseLocusNonempty);
    }

    let total = nx + q;
    let mut weights = vec![1u32; nx];
    weights.extend(vec![d; q]);

    let mut gens: Vec<Poly> = variety
        .ideal()
        .generators()
        .iter()
        .map(|g| g.extend_vars(total))
        .collect();
    for (j, form) in normalized.iter().enumerate() {
        let y = Poly::variable(total, nx + j);
        gens.push(y.sub(&form.extend_vars(total)));
    }
    let graph = Ideal::new_weighted(total, weights, gens)?;

    let keep: BTreeSet<usize> = (nx..total).collect();
    let eliminated = eliminate(&graph, &keep, budget)?;
    let image_ideal = project_ideal(&eliminated, &keep, vec![1; q])?;

    let (dim, degree) = dimension_and_degree(&image_ideal, budget)?;
    if dim != variety.dim() {
        return Err(WeightsError::Consistency(format!(
            "image dimension {dim} differs from source dimension {}; \
             the map should be finite on V",
            variety.dim()
        )));
    }
    let degree = degree.expect("positive-dimensional image has a degree");
    let bound = Integer::from(d).pow(variety.dim() as u32) * variety.degree();
    if degree > bound {
        return Err(WeightsError::Consistency(format!(
            "image degree {degree} exceeds the bound d^k deg V = {bound}"
        )));
    }
    Ok(EmbeddedImage {
        source_dim: variety.dim(),
        source_degree: variety.degree().clone(),
        common_degree: d,
        ideal: image_ideal,
        dim,
        degree,
    })
}
