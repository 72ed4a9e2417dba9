use super::expr::{GaussianRational, UnivariateExpr};
use super::NevanlinnaError;
use std::collections::BTreeSet;

/// Exact Wronskian `det(f_j^{(i)})`, or the linear dependence that makes it
/// vanish identically.
pub fn wronskian(components: &[UnivariateExpr]) -> Result<UnivariateExpr, NevanlinnaError> {
    match wronskian_or_dependence(components)? {
        Ok(w) => Ok(w),
        Err(dep) => {
            let rendered: Vec<String> = dep.iter().map(|c| c.to_string()).collect();
            Err(NevanlinnaError::Degenerate(format!(
                "components are linearly dependent: coefficients ({})",
                rendered.join(", ")
            )))
        }
    }
}

/// Inner form returning either the Wronskian or a nonzero kernel vector of
/// the component family.
pub fn wronskian_or_dependence(
    components: &[UnivariateExpr],
) -> Result<Result<UnivariateExpr, Vec<GaussianRational>>, NevanlinnaError> {
    if components.is_empty() {
        return Err(NevanlinnaError::Input("no components".into()));
    }
    let n = components.len();
    let mut rows: Vec<Vec<UnivariateExpr>> = Vec::with_capacity(n);
    let mut current: Vec<UnivariateExpr> = components.to_vec();
    for _ in 0..n {
        rows.push(current.clone());
        current = current.iter().map(|f| f.derivative()).collect();
    }
    let w = determinant(&rows);
    if w.is_zero() {
        let dep = dependence(components).ok_or_else(|| {
            NevanlinnaError::ZeroSearch(
                "Wronskian vanishes but no rational dependence was found".into(),
            )
        })?;
        return Ok(Err(dep));
    }
    Ok(Ok(w))
}

fn determinant(m: &[Vec<UnivariateExpr>]) -> UnivariateExpr {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UnivariateExpr::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<UnivariateExpr>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(c, e)| (c != j).then(|| e.clone()))
                    .collect()
            })
            .collect();
        let term = entry.mul(&determinant(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Find a nonzero Gaussian-rational kernel vector of the components, viewed
/// as vectors of canonical-form coefficients.
fn dependence(components: &[UnivariateExpr]) -> Option<Vec<GaussianRational>> {
    let mut keys: BTreeSet<(GaussianRational, i64)> = BTreeSet::new();
    for f in components {
        for (lambda, p) in f.parts() {
            for (pw, _) in p.terms() {
                keys.insert((lambda.clone(), *pw));
            }
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let ncols = components.len();
    let mut matrix: Vec<Vec<GaussianRational>> = keys
        .iter()
        .map(|(lambda, pw)| {
            components
                .iter()
                .map(|f| {
                    f.parts()
                        .find(|(l, _)| *l == lambda)
                        .and_then(|(_, p)| p.terms().find(|(q, _)| *q == pw).map(|(_, c)| c.clone()))
                        .unwrap_or_else(GaussianRational::zero)
                })
                .collect()
        })
        .collect();

    // Gaussian elimination tracking pivot columns
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..matrix.len()).find(|&r| !matrix[r][col].is_zero());
        let Some(p) = pivot else { continue };
        matrix.swap(row, p);
        let inv = matrix[row][col].recip();
        for c in 0..ncols {
            matrix[row][c] = matrix[row][c].mul(&inv);
        }
        for r in 0..matrix.len() {
            if r != row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for c in 0..ncols {
                    let sub = matrix[row][c].mul(&factor);
                    matrix[r][c] = matrix[r][c].sub(&sub);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == matrix.len() {
            break;
        }
    }
    let free_col = (0..ncols).find(|c| !pivot_cols.contains(c))?;
    let mut kernel = vec![GaussianRational::zero(); ncols];
    kernel[free_col] = GaussianRational::one();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        kernel[pc] = matrix[r][free_col].neg();
    }
    Some(kernel)
}
