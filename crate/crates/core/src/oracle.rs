//! Classical reference evaluators. These never touch the transport
//! machinery; they exist so the quantum engines have something independent
//! to be checked against.

use crate::graph::Bit;

/// Fold a NAND tree over its leaf bits: pair up, NAND, repeat. The slice
/// length must be a power of two.
pub fn nand_tree_value(bits: &[Bit]) -> Bit {
    assert!(
        !bits.is_empty() && bits.len().is_power_of_two(),
        "leaf count must be a nonzero power of two"
    );
    let mut level: Vec<bool> = bits.iter().map(|b| b.as_bool()).collect();
    while level.len() > 1 {
        level = level
            .chunks_exact(2)
            .map(|pair| !(pair[0] && pair[1]))
            .collect();
    }
    Bit::from(level[0])
}
