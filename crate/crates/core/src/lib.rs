//! Exact symbolic + numeric engine for Walker-type Lorentzian metrics.
//!
//! The crate computes curvature of metrics of the form
//! `h = 2 dx dz + f dz^2 + 2 sum_i u_i dy_i dz + sum_ij g_ij dy_i dy_j`,
//! classifies them (Brinkmann / pp-wave / pr-wave / light-like hypersurface
//! curvature / plane wave / Cahen-Wallach), computes screen holonomy algebras
//! by exact spans of curvature derivatives, and constructs metrics realizing
//! a prescribed screen holonomy from Lie-algebraic data.

pub mod classify;
pub mod error;
pub mod holonomy;
pub mod liealg;
pub mod linalg;
pub mod metric;
pub mod numeric;
pub mod poly;
pub mod scalar;
pub mod tensor;

pub use classify::{check_pp_equivalences, classify, flatten_closed_phi, restricted_screen_flatness, ClassificationReport, PpEquivalences};
pub use error::CoreError;
pub use holonomy::{algebra_props, default_max_order, infinitesimal_holonomy, screen_projection, AlgebraProps, HolonomySpan, ParabolicElement, ScreenAlgebra};
pub use liealg::{bracket_endomorphisms, bspace, builtin_example, builtin_rep, galaev_metric, is_berger, is_weak_berger, killing_form, kspace, pair_index, rspace, structure_constants, symmetric_metric, weak_bianchi_holds, CurvatureSpace, LieAlgebraRep, SymmetricPair, WeakCurvatureSpace};
pub use linalg::{span_dim, QMatrix, SpanBasis};
pub use metric::{adapted_frame, christoffel, inverse_metric, metric_matrix, recurrence_form, AdaptedFrame, RecurrenceForm, WalkerMetric};
pub use numeric::{fd_curvature, loop_transport, span_residual, EvaluatedMetric, LoopSpec, LoopTransport};
pub use poly::{parse_polynomial, Polynomial, Var};
pub use scalar::Scalar;
pub use tensor::{codifferential_check, cov_deriv, cov_deriv_with, ricci, riemann, PhiFamily, Tensor, TraceConditions};
