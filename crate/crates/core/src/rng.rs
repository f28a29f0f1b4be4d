//! Deterministic seed derivation.
//!
//! Every randomized operation in this crate derives per-item values from a
//! user seed through a counter-based hash, so results are independent of
//! evaluation order and safe to compute in parallel.

/// Combines a seed with a counter into a well-mixed 64-bit value
/// (splitmix64 finalizer over the xored pair).
pub fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps 64 random bits to a uniform f64 in [0, 1).
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
