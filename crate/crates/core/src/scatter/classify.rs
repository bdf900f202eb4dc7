//! Bit classification from the E -> 0+ behaviour of y(E).
//!
//! A diverging |y| ~ 1/E is the reflected output (bit 0), a vanishing
//! |y| ~ E is the transmitted output (bit 1). The numeric classifier checks
//! which scaling is stable across a ladder of small energies instead of
//! claiming exact limits in floating point; the exact-rational classifier in
//! `exact` reads the limit off leading Laurent coefficients.

use super::{tree_output_y, ScatterError};
use crate::graph::TightBindingGraph;
use crate::negf::LeadModel;
use crate::ratio::AmplitudeRatio;
use std::fmt;

/// Energies at which the trend classifier samples y(E), largest first.
pub const DEFAULT_LADDER: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// A sample is accepted as cleanly scaling when the compensated values
/// agree within this factor across the ladder.
const STABILITY_FACTOR: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitValue {
    Zero,
    One,
    Indeterminate,
}

impl BitValue {
    pub fn from_bit(bit: crate::graph::Bit) -> BitValue {
        match bit {
            crate::graph::Bit::Zero => BitValue::Zero,
            crate::graph::Bit::One => BitValue::One,
        }
    }
}

impl fmt::Display for BitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BitValue::Zero => write!(f, "0"),
            BitValue::One => write!(f, "1"),
            BitValue::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Classification of a gate graph, with the limiting ratio and, for
/// diagnostics, the classification when approaching E = 0 from below.
#[derive(Clone, Copy, Debug)]
pub struct GateBit {
    pub value: BitValue,
    pub y_limit: AmplitudeRatio,
    pub value_below: BitValue,
}

/// Classify with the default ladder and the uniform-lead root coupling.
pub fn classify_bit(g: &TightBindingGraph) -> Result<GateBit, ScatterError> {
    classify_bit_with(g, LeadModel::uniform().beta, &DEFAULT_LADDER)
}

pub fn classify_bit_with(
    g: &TightBindingGraph,
    root_coupling: f64,
    ladder: &[f64],
) -> Result<GateBit, ScatterError> {
    assert!(
        ladder.len() >= 2 && ladder.iter().all(|&e| e > 0.0),
        "classification ladder needs at least two positive energies"
    );
    let above = classify_side(g, root_coupling, ladder, 1.0)?;
    let below = classify_side(g, root_coupling, ladder, -1.0)?;
    Ok(GateBit {
        value: above.0,
        y_limit: above.1,
        value_below: below.0,
    })
}

fn classify_side(
    g: &TightBindingGraph,
    root_coupling: f64,
    ladder: &[f64],
    sign: f64,
) -> Result<(BitValue, AmplitudeRatio), ScatterError> {
    let mut samples = Vec::with_capacity(ladder.len());
    for &eps in ladder {
        samples.push(tree_output_y(g, sign * eps, root_coupling)?);
    }
    let finest = samples[samples.len() - 1];

    // |y| * eps stable  =>  y ~ c/E: bit 0.
    let grows = stable(samples.iter().zip(ladder).map(|(y, &eps)| y.abs() * eps));
    // |y| / eps stable  =>  y ~ c E: bit 1.
    let shrinks = stable(samples.iter().zip(ladder).map(|(y, &eps)| y.abs() / eps));
    let value = match (grows, shrinks) {
        (true, false) => BitValue::Zero,
        (false, true) => BitValue::One,
        _ => BitValue::Indeterminate,
    };
    let y_limit = match value {
        BitValue::Zero => AmplitudeRatio::infinite(finest.value()),
        BitValue::One => AmplitudeRatio::zero(),
        BitValue::Indeterminate => finest,
    };
    Ok((value, y_limit))
}

fn stable(values: impl Iterator<Item = f64>) -> bool {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for v in values {
        if !v.is_finite() || v == 0.0 {
            return false;
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    hi <= STABILITY_FACTOR * lo
}
