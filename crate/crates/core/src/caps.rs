//! Process-wide enumeration caps.
//!
//! Enumerating all set partitions is Bell-number work, so every enumerating
//! entry point checks a cap before starting: `general` for categories that
//! range over arbitrary partitions, `pairing` for categories restricted to
//! pairings (with or without singletons), which are generated directly and
//! stay tractable a little longer. Defaults are 10 and 14; `set` raises or
//! lowers both (the CLI wires this to the `WG_MAX_K` environment variable).

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_GENERAL: usize = 10;
pub const DEFAULT_PAIRING: usize = 14;

static GENERAL: AtomicUsize = AtomicUsize::new(DEFAULT_GENERAL);
static PAIRING: AtomicUsize = AtomicUsize::new(DEFAULT_PAIRING);

pub fn general() -> usize {
    GENERAL.load(Ordering::Relaxed)
}

pub fn pairing() -> usize {
    PAIRING.load(Ordering::Relaxed)
}

pub fn set(general: usize, pairing: usize) {
    GENERAL.store(general, Ordering::Relaxed);
    PAIRING.store(pairing, Ordering::Relaxed);
}

pub(crate) fn check_general(k: usize, what: &'static str) -> Result<()> {
    let cap = general();
    if k > cap {
        return Err(Error::LimitExceeded { k, cap, what });
    }
    Ok(())
}

pub(crate) fn check_pairing(k: usize, what: &'static str) -> Result<()> {
    let cap = pairing();
    if k > cap {
        return Err(Error::LimitExceeded { k, cap, what });
    }
    Ok(())
}
