//! Exact fuzzy-limit analysis.
//!
//! * [`seqlim`]: r-limits, weak and infinite limits of sequences, sets of sequences.
//! * [`funlim`]: (q,r)-limits of functions, exact on finite domains and estimated on generators.
//! * [`certalg`]: checkable limit certificates and the rules that derive new ones.
//! * [`omegalim`]: Büchi and Muller acceptance of lasso words, computed directly and via weak limits.
//! * [`oracle`]: brute-force definitional checks used to cross-validate the closed forms.
//! * [`format`] and [`cli`]: file grammars, reports and command dispatch for the `fuzzylim` tool.

pub mod certalg;
pub mod cli;
pub mod error;
pub mod format;
pub mod funlim;
pub mod omegalim;
pub mod oracle;
pub mod scalar;
pub mod seqlim;

pub use error::{Error, Result};
pub use scalar::{Interval, Scalar, XScalar};
