//! Shared fixtures for the benchmarks.

/// `(p, n)` pairs swept by the prime-power benchmarks.
pub const PRIME_POWERS: &[(u64, u32)] = &[(5, 2), (7, 4), (13, 5), (19, 6)];

/// `(p, q)` pairs with `p, q = 1 mod 12`.
pub const PQ_LEVELS: &[(u64, u64)] = &[(13, 37), (37, 61)];
