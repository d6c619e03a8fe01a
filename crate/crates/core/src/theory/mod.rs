//! Closed-form and quadrature quantities, bound formulas, and the phase
//! diagram.

mod angle;
mod bounds;
mod dotproduct;
mod moments;
mod phase;
mod wishart;

pub use angle::{eta_d, eta_second_moment, gamma_d, log_zeta, sin2_cos_identity, AngleDensity};
pub use bounds::{
    measured_triangle_constant, signed_triangle_mean_bounds, tv_bound_report, BoundReport, ConstantSource, MeanBounds,
    MixtureBounds,
};
pub use dotproduct::{dotproduct_bound_predicates, estimate_dotproduct_events, DotProductEstimates, DotProductReport};
pub use moments::{half_moment_table, HalfMomentTable, Interval};
pub use phase::{phase_classify, PhaseLabel, PhasePoint, BOUNDARY_TOLERANCE};
pub use wishart::{sample_logdet, wishart_logdet_mean, WishartLogDet};
