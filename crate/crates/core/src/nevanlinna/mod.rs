pub mod curve;
pub mod expr;
pub mod parse;
pub mod quadrature;
pub mod radial;
pub mod smt;
pub mod wronskian;
pub mod zeros;

pub use curve::{CurveSpec, Domain};
pub use radial::{log_grid, verify_fmt, CurveAnalyzer, FmtReport, RadialSeries};
pub use smt::{verify_smt_general, verify_smt_hypersurfaces, SmtError, SmtMode};
pub use wronskian::wronskian;
pub use zeros::{count_zeros, DivisorSample, Region};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NevanlinnaError {
    #[error("degeneracy: {0}")]
    Degenerate(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },
    #[error("zero search failed: {0}")]
    ZeroSearch(String),
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}
