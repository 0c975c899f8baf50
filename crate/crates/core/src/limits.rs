//! Process-wide size caps.
//!
//! Everything in this crate is exponential in the carrier size somewhere, so
//! constructors refuse inputs past these bounds with [`Error::SizeLimit`].
//! The caps are atomics so a front end can raise them once at startup.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 256;
pub const DEFAULT_MAX_ORACLE_ORDER: usize = 4096;
pub const DEFAULT_MAX_FRONTIER: usize = 1 << 22;

static MAX_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ORDER);
static MAX_ORACLE_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ORACLE_ORDER);
static MAX_FRONTIER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_FRONTIER);

/// Largest ring or module carrier accepted.
pub fn max_order() -> usize {
    MAX_ORDER.load(Ordering::Relaxed)
}

pub fn set_max_order(n: usize) {
    MAX_ORDER.store(n, Ordering::Relaxed);
}

/// Largest carrier the tensor-ring oracle may materialize.
pub fn max_oracle_order() -> usize {
    MAX_ORACLE_ORDER.load(Ordering::Relaxed)
}

pub fn set_max_oracle_order(n: usize) {
    MAX_ORACLE_ORDER.store(n, Ordering::Relaxed);
}

/// Bound on search frontiers (backtracking nodes, enumerated solution sets).
pub fn max_frontier() -> usize {
    MAX_FRONTIER.load(Ordering::Relaxed)
}

pub fn set_max_frontier(n: usize) {
    MAX_FRONTIER.store(n, Ordering::Relaxed);
}

pub(crate) fn check_order(what: &'static str, size: usize) -> Result<()> {
    check(what, size, max_order())
}

pub(crate) fn check_frontier(what: &'static str, size: usize) -> Result<()> {
    check(what, size, max_frontier())
}

pub(crate) fn check(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimit { what, size, limit })
    } else {
        Ok(())
    }
}
