//! Truth-table enumeration of lowered circuits through the two transport
//! engines, always alongside the classical reference evaluation.

use super::lower::{LowerError, LoweredCircuit};
use super::BoolExpr;
use crate::graph::Bit;
use crate::negf::{LeadModel, NegfError};
use crate::scatter::{classify_bit, BitValue, ScatterError};
use std::collections::BTreeMap;
use thiserror::Error;

/// Enumeration cap: 2^12 assignments.
pub const MAX_VARIABLES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Qst,
    Negf,
}

impl Engine {
    pub fn parse(text: &str) -> Option<Engine> {
        match text {
            "qst" => Some(Engine::Qst),
            "negf" => Some(Engine::Negf),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Engine::Qst => "qst",
            Engine::Negf => "negf",
        }
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("{0} variables exceed the enumeration cap of {MAX_VARIABLES}")]
    VariableBudget(usize),
    #[error(transparent)]
    Lower(#[from] LowerError),
    #[error(transparent)]
    Scatter(#[from] ScatterError),
    #[error(transparent)]
    Negf(#[from] NegfError),
}

#[derive(Clone, Debug)]
pub struct TruthTableRow {
    pub assignment: Vec<Bit>,
    /// Classical evaluation of the expression, when one is attached.
    pub oracle: Option<Bit>,
    pub output: BitValue,
    /// T at the band centre for the NEGF engine.
    pub transmission: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct TruthTable {
    pub variables: Vec<String>,
    pub engine: Engine,
    pub rows: Vec<TruthTableRow>,
    /// True when every row with an oracle value matches it.
    pub matches_oracle: bool,
}

/// Enumerate all assignments of the circuit's variables in binary order
/// (first variable is the most significant bit).
pub fn truth_table(
    circuit: &LoweredCircuit,
    expr: Option<&BoolExpr>,
    engine: Engine,
    lead: &LeadModel,
) -> Result<TruthTable, TableError> {
    let variables = circuit.variables().to_vec();
    if variables.len() > MAX_VARIABLES {
        return Err(TableError::VariableBudget(variables.len()));
    }
    let mut rows = Vec::with_capacity(1 << variables.len());
    let mut matches_oracle = true;
    for pattern in 0..(1u32 << variables.len()) {
        let assignment: Vec<Bit> = (0..variables.len())
            .map(|k| Bit::from(pattern >> (variables.len() - 1 - k) & 1 == 1))
            .collect();
        let env: BTreeMap<String, Bit> = variables
            .iter()
            .cloned()
            .zip(assignment.iter().copied())
            .collect();
        let graph = circuit.instantiate(&env)?;
        let (output, transmission) = match engine {
            Engine::Qst => (classify_bit(&graph)?.value, None),
            Engine::Negf => {
                let (value, t0) = crate::negf::classify_bit_negf(&graph, lead, 2)?;
                (value, Some(t0))
            }
        };
        let oracle = expr.map(|e| e.eval(&|name| env[name]));
        if let Some(bit) = oracle {
            matches_oracle &= output == BitValue::from_bit(bit);
        }
        rows.push(TruthTableRow {
            assignment,
            oracle,
            output,
            transmission,
        });
    }
    Ok(TruthTable {
        variables,
        engine,
        rows,
        matches_oracle,
    })
}
