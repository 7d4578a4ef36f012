use super::Permutation;

/// `sgn η · (−1)^{δ_zb + δ_0b}`.
pub fn sign(eta: Permutation, z: u8, b: u8) -> i8 {
    let flips = u8::from(z == b) + u8::from(b == 0);
    let base = if flips % 2 == 0 { 1 } else { -1 };
    base * eta.sign()
}

// Rows follow Permutation::ALL; columns are pq = 00, 01, 10, 11.
const OUTCOME_TABLE: [[u8; 4]; 6] = [
    [2, 1, 3, 0], // 123
    [3, 0, 2, 1], // 231
    [0, 3, 1, 2], // 312
    [0, 3, 1, 2], // 132
    [0, 3, 1, 2], // 213
    [1, 2, 0, 3], // 321
];

/// Witness outcome `b` for the measured `P,Q` bits, `pq = 2p + q`.
///
/// # Panics
/// If `pq > 3`.
pub fn outcome_map(eta: Permutation, pq: u8) -> u8 {
    OUTCOME_TABLE[eta.index()][pq as usize]
}
