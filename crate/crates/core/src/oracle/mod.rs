//! Independent verification: injectivity checks, exhaustive enumeration of
//! small instances, relabeling, trace statistics and a from-scratch game
//! auditor.
//!
//! Nothing here calls into the engine. The auditor re-derives every round
//! from the rules by scanning whole positions.

mod audit;
mod enumerate;
mod injective;
mod relabel;
mod stats;

use thiserror::Error;

pub use audit::{audit_game, replay, GameAudit, Violation, ViolationKind};
pub use enumerate::{enumerate_instances, injection_count, InstanceIter, ENUMERATION_LIMIT};
pub use injective::{check_injective, Collision};
pub use relabel::{relabel, Relabeling};
pub use stats::{trace_stats, PlayerStats, TraceStats};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration too large ({count:?} instances, limit {ENUMERATION_LIMIT})")]
    TooLarge { count: Option<u128> },
    #[error("the suit count must be at least 1")]
    NoSuits,
    #[error("relabeling of {0} is not a bijection")]
    NotBijective(&'static str),
}
