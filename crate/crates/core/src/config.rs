//! Runtime-tunable limits.

/// Default cap on the candidate count for factorial enumerations.
pub const DEFAULT_ORBIT_CAP: usize = 8;

/// Cap on `n` for whole-orbit enumeration (`n!` permutations).
///
/// Overridable through the `MF_ORBIT_CAP` environment variable. Stabilizer
/// enumerations fixing `k` points are allowed up to `n - k <= cap - 2`, so the
/// default admits `6! = 720` stabilizer elements.
pub fn orbit_cap() -> usize {
    std::env::var("MF_ORBIT_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORBIT_CAP)
}

/// Cap on `n` for scans over all `2^n` candidate subsets.
pub const SUBSET_SCAN_CAP: usize = 20;

/// Cap on `n` for exhaustive enumeration sweeps.
pub const ENUMERATION_CAP: usize = 5;
