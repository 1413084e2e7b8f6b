//! Counters for proof branches that the girth precondition makes
//! unreachable. They stay zero on every valid run; the acceptance suite
//! asserts this across the whole random corpus.

use std::sync::atomic::{AtomicU64, Ordering};

/// Times the absorption engine saw `N(w) = {s_2, s_k}`, which would close a
/// square and contradict girth >= 5.
pub static SQUARE_CASE: AtomicU64 = AtomicU64::new(0);

/// Times the linker entered its k <= 4 fallback while called with k >= 5.
pub static LINKER_SMALL_K: AtomicU64 = AtomicU64::new(0);

pub fn reset_counters() {
    SQUARE_CASE.store(0, Ordering::SeqCst);
    LINKER_SMALL_K.store(0, Ordering::SeqCst);
}

/// (square case, linker small-k) counts since the last reset.
pub fn counters() -> (u64, u64) {
    (
        SQUARE_CASE.load(Ordering::SeqCst),
        LINKER_SMALL_K.load(Ordering::SeqCst),
    )
}
