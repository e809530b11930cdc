//! Tolerance policy shared by every approximate predicate.
//!
//! Two reals agree when `|a - b| <= atol + rtol * max(|a|, |b|)`. The
//! defaults (`1e-9` for both) can be replaced process-wide with
//! [`Tolerance::set_global`]; values passed explicitly always win.

use std::sync::atomic::{AtomicU64, Ordering};

const DEFAULT_ATOL: f64 = 1e-9;
const DEFAULT_RTOL: f64 = 1e-9;

static GLOBAL_ATOL: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9
static GLOBAL_RTOL: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Tolerance {
    pub const fn new(atol: f64, rtol: f64) -> Self {
        Self { atol, rtol }
    }

    /// Same absolute and relative bound.
    pub const fn uniform(tol: f64) -> Self {
        Self { atol: tol, rtol: tol }
    }

    /// Replaces the process-wide default returned by `Tolerance::default()`.
    pub fn set_global(tol: Tolerance) {
        GLOBAL_ATOL.store(tol.atol.to_bits(), Ordering::Relaxed);
        GLOBAL_RTOL.store(tol.rtol.to_bits(), Ordering::Relaxed);
    }

    pub fn reset_global() {
        Self::set_global(Self::new(DEFAULT_ATOL, DEFAULT_RTOL));
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.atol + self.rtol * a.abs().max(b.abs())
    }

    /// `|x| <= atol + rtol * scale`.
    pub fn is_small(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.atol + self.rtol * scale.abs()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            atol: f64::from_bits(GLOBAL_ATOL.load(Ordering::Relaxed)),
            rtol: f64::from_bits(GLOBAL_RTOL.load(Ordering::Relaxed)),
        }
    }
}
