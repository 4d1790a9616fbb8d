use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_TERM_CEILING: usize = 100_000;
pub const TERM_CEILING_ENV: &str = "ENGELKIT_TERM_CEILING";

// 0 = not yet initialised from the environment.
static CEILING: AtomicUsize = AtomicUsize::new(0);

/// Maximum number of terms any polynomial produced by a checked operation may have.
pub fn term_ceiling() -> usize {
    match CEILING.load(Ordering::Relaxed) {
        0 => {
            let value = std::env::var(TERM_CEILING_ENV)
                .ok()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .filter(|&n| n > 0)
                .unwrap_or(DEFAULT_TERM_CEILING);
            CEILING.store(value, Ordering::Relaxed);
            value
        }
        n => n,
    }
}

pub fn set_term_ceiling(ceiling: usize) {
    CEILING.store(ceiling.max(1), Ordering::Relaxed);
}

pub(crate) fn check_terms(terms: usize) -> Result<()> {
    let ceiling = term_ceiling();
    if terms > ceiling {
        return Err(Error::TermCeiling { terms, ceiling });
    }
    Ok(())
}
