use rayon::prelude::*;
use serde::Serialize;

use crate::witness::{sign, Permutation};

/// Which functional the enumeration maximises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LvmMode {
    Full,
    /// Only the terms of one `η`.
    SingleEta(Permutation),
    /// Every sign forced to `+1` (diagnostic).
    AllPositive,
}

/// Deterministic assignment: `A_x = a[x−1]`, `C_z = c[z−1]`, and `B_η`
/// answering `b[η.index()]` with certainty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LvmStrategy {
    pub a: [i8; 3],
    pub c: [i8; 3],
    pub b: [u8; 6],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LvmResult {
    pub value: i64,
    pub strategy: LvmStrategy,
    pub strategies_examined: u64,
}

pub const LVM_STRATEGY_COUNT: u64 = 8 * 8 * 4096;

fn strategy(index: u64) -> LvmStrategy {
    let bit = |v: u64, k: u32| if (v >> k) & 1 == 0 { 1 } else { -1 };
    let ai = index & 7;
    let ci = (index >> 3) & 7;
    let bi = index >> 6;
    LvmStrategy {
        a: [bit(ai, 0), bit(ai, 1), bit(ai, 2)],
        c: [bit(ci, 0), bit(ci, 1), bit(ci, 2)],
        b: std::array::from_fn(|e| ((bi >> (2 * e)) & 3) as u8),
    }
}

/// `F` of a deterministic strategy under the given mode.
pub fn lvm_value(s: &LvmStrategy, mode: LvmMode) -> i64 {
    let mut total = 0i64;
    for eta in Permutation::ALL {
        if let LvmMode::SingleEta(only) = mode {
            if eta != only {
                continue;
            }
        }
        let b = s.b[eta.index()];
        for z in 1..=3u8 {
            let sg = match mode {
                LvmMode::AllPositive => 1,
                _ => i64::from(sign(eta, z, b)),
            };
            total += sg * i64::from(s.a[(eta.apply(z) - 1) as usize]) * i64::from(s.c[(z - 1) as usize]);
        }
    }
    total
}

/// Exhaustive maximum over all `8 · 8 · 4⁶` deterministic strategies; ties go
/// to the first strategy in enumeration order.
pub fn lvm_max(mode: LvmMode) -> LvmResult {
    let (value, index) = (0..LVM_STRATEGY_COUNT)
        .into_par_iter()
        .map(|i| (lvm_value(&strategy(i), mode), i))
        .reduce(
            || (i64::MIN, u64::MAX),
            |x, y| if x.0 > y.0 || (x.0 == y.0 && x.1 < y.1) { x } else { y },
        );
    LvmResult {
        value,
        strategy: strategy(index),
        strategies_examined: LVM_STRATEGY_COUNT,
    }
}
