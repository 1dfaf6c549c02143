//! Seed derivation for reproducible parallel Monte Carlo work.

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a master seed with a path of identifiers into a child seed. The
/// result depends only on the inputs, never on evaluation order.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |acc, &p| {
        splitmix64(acc ^ splitmix64(p))
    })
}

/// Seed component for a real-valued coordinate such as an azimuth or a
/// sweep value.
pub fn coordinate(x: f64) -> u64 {
    // Normalize -0.0 so mirrored zero coordinates share a stream.
    (if x == 0.0 { 0.0 } else { x }).to_bits()
}
