//! Checkable certificates for (q,r)-limits and the rules that derive new ones.

pub mod certificate;
pub mod map;
pub mod model_ref;
pub mod prover;
mod term;

pub use certificate::{Evidence, LimitCertificate, LimitKind, Provenance, Rule};
pub use map::MonotoneMap;
pub use model_ref::{ModelRef, ModelRegistry};
pub use prover::{rule_consistent, BoundClaim, CombineOp, Prover, VerificationLevel};
