//! Fuzzy limits of functions: exact (q,r)-limits on finite domains and
//! grid-refinement estimators for expression-defined models.

pub mod discrete;
pub mod estimate;
pub mod expr;
pub mod model;
pub mod schedule;

pub use discrete::{
    admissible_set, best_limit, is_qr_limit_discrete, is_weak_qr_limit_discrete, qr_defect_discrete,
    qr_limit_set, weak_qr_defect_discrete, Table,
};
pub use estimate::{
    almost_constant_check, cluster_values_estimate, local_spread, region_defect_estimate,
    weak_region_defect_estimate, AlmostConstant, Cluster, ClusterReport, LocalSpread, RegionEstimate,
};
pub use expr::Expr;
pub use model::{FunctionModel, Generator, GeneratorDomain};
pub use schedule::GridSchedule;
