//! Best uniform approximation of a continuous function on the unit cube by
//! sums `φ(x) + ψ(y) + ω(z)`.
//!
//! Two independent routes to the error `E(f)` are provided:
//!
//! * the closed-form finite procedure ([`candidate`] + [`catalog`]): build the
//!   candidate set `U` from maximizers of auxiliary functions, instantiate the
//!   123 minimal projection-cycle families over `U` and take the best weighted
//!   ratio;
//! * a Chebyshev linear program on finite grids ([`lp`]), whose optimal value is
//!   a lower bound on `E(f)` and whose dual is an optimal weak projection cycle.
//!
//! The linear algebra ([`linalg`]) and the simplex solver ([`simplex`]) are
//! generic over [`Scalar`], so the same code runs in `f64` and in exact
//! rational arithmetic.

pub mod candidate;
pub mod catalog;
pub mod cycle;
pub mod error;
pub mod function;
pub mod golden;
pub mod linalg;
pub mod lp;
pub mod point;
pub mod scalar;
pub mod simplex;

pub use crate::error::{Error, Result};
pub use crate::point::{Axis, Point3};
pub use crate::scalar::Scalar;

/// Exact arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Finite point set with exact rational weights.
pub type WeightedPointSet = cycle::WeightedPointSet<Rational>;

/// Projection cycle-vector with exact rational weights.
pub type CycleVector = cycle::CycleVector<Rational>;

/// Weighted point set with floating-point weights, as produced by LP duals.
pub type FloatPointSet = cycle::WeightedPointSet<f64>;

/// Dense matrix over exact rationals.
pub type RationalMatrix = linalg::Matrix<Rational>;

/// Dense matrix over `f64`.
pub type RealMatrix = linalg::Matrix<f64>;

/// Floating-point simplex used by the grid LP oracle.
pub type Simplex = simplex::Simplex<f64>;

/// Exact rational simplex, for small instances and cross-checks.
pub type ExactSimplex = simplex::Simplex<Rational>;

/// Candidate set, catalog evaluation and the resulting error value.
#[derive(Debug, Clone)]
pub struct FormulaResult {
    pub candidates: candidate::CandidateSet,
    pub evaluation: catalog::CatalogEvaluation,
}

impl FormulaResult {
    pub fn error(&self) -> f64 {
        self.evaluation.best_ratio
    }

    pub fn best_entry(&self) -> &str {
        &self.evaluation.best_id
    }
}

/// The error of best approximation by the finite formula: maximize the
/// auxiliary functions, then take the best catalog ratio over `U`.
pub fn formula_error(f: &function::FunctionSource, cfg: &candidate::OptimizerConfig) -> Result<FormulaResult> {
    let candidates = candidate::build_candidate_set(f, cfg);
    let evaluation = catalog::evaluate_catalog(f, &candidates, &catalog::catalog())?;
    Ok(FormulaResult {
        candidates,
        evaluation,
    })
}
