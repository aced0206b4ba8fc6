//! Known counts used by the verification suites.

/// Heights on H^n for n = 1..=6.
pub const HEIGHT_COUNTS: [u64; 6] = [2, 6, 38, 990, 395_094, 33_433_683_534];

/// Proper 3-colorings of H^n for n = 1..=6.
pub const COLORING_COUNTS: [u64; 6] = [6, 18, 114, 2_970, 1_185_282, 100_301_050_602];

/// Frequencies of a = 0, 1, ..., 8 on E_1 over all heights on H^5; symmetric in a.
pub const E1_CENSUS: [u64; 9] = [83_830, 72_384, 47_200, 23_392, 9_048, 2_752, 704, 128, 24];

/// Lowering steps from fully extended to the valise, (N − 1)·2^{N − 2}.
pub fn schedule_length(n: u8) -> u64 {
    u64::from(n - 1) << (n - 2)
}
