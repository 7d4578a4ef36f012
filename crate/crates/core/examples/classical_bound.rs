//! Exhaustive search over deterministic local strategies.

use qreal::bounds::{lvm_max, LvmMode};
use qreal::witness::Permutation;

fn main() {
    let full = lvm_max(LvmMode::Full);
    println!("classical maximum {} over {} strategies", full.value, full.strategies_examined);
    println!("  attained by {:?}", full.strategy);

    let single = lvm_max(LvmMode::SingleEta(Permutation::IDENTITY));
    let positive = lvm_max(LvmMode::AllPositive);
    println!("single eta: {}, all signs positive: {}", single.value, positive.value);
}
