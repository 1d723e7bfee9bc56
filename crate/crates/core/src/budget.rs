//! Process-wide cap on the number of elements any enumeration may touch.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 20;

static MAX_ELEMENTS: AtomicU64 = AtomicU64::new(DEFAULT_MAX_ELEMENTS);

pub fn max_elements() -> u64 {
    MAX_ELEMENTS.load(Ordering::Relaxed)
}

pub fn set_max_elements(limit: u64) {
    MAX_ELEMENTS.store(limit, Ordering::Relaxed);
}

pub fn ensure(needed: u64) -> Result<()> {
    let limit = max_elements();
    if needed > limit {
        Err(Error::Budget { needed, limit })
    } else {
        Ok(())
    }
}
